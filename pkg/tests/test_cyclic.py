import itertools

import pytest
from hypothesis import given, settings, strategies as st
from sympy.utilities.iterables import multiset_partitions

from dualmat.cyclic import (
    CyclicOrder,
    CyclicOrderError,
    exchange,
    fluctuation,
    interval_class,
    is_cyclic_suborder,
    is_improving,
    is_interval,
    separates,
    separation_violations,
)


def test_canonical_rotation_and_equality():
    a = CyclicOrder(("c", "a", "b"))
    assert a.canonical() == ("a", "b", "c")
    assert a == CyclicOrder(("b", "c", "a")) and a != CyclicOrder(("a", "c", "b"))
    with pytest.raises(CyclicOrderError):
        CyclicOrder(("a", "a"))


def test_separates():
    o = CyclicOrder(("a", "x", "b", "y"))
    assert separates(o, "a", "b", {"x", "y"})
    assert not separates(o, "a", "b", {"x"})
    assert not separates(o, "a", "b", {"a", "x", "y"})


def test_interval_class_examples():
    o = CyclicOrder(("a", "a'", "b", "b'"))
    cls, bad = interval_class(o, [{"a", "a'"}, {"b", "b'"}])
    assert cls == frozenset({"b", "b'"}) and not bad
    alt = CyclicOrder(("a", "b", "a'", "b'"))
    cls, bad = interval_class(alt, [{"a", "a'"}, {"b", "b'"}])
    assert cls is None and bad


def test_interval_class_is_deterministic():
    o = CyclicOrder(tuple(range(6)))
    part = [{0, 1}, {2, 3}, {4, 5}]
    assert interval_class(o, part) == interval_class(CyclicOrder((3, 4, 5, 0, 1, 2)), part)


def test_exchange_formula():
    o = CyclicOrder(("x1", "a", "x2", "b", "x3", "c", "x4", "d"))
    assert exchange(o, "x1", "x2", "x3", "x4") == CyclicOrder(("x3", "c", "x4", "x2", "b", "a", "d", "x1"))
    bare = CyclicOrder(("x1", "x2", "x3", "x4"))
    assert exchange(bare, "x1", "x2", "x3", "x4") == CyclicOrder(("x3", "x4", "x2", "x1"))
    with pytest.raises(CyclicOrderError):
        exchange(bare, "x1", "x3", "x2", "x4")


def test_exchange_can_be_undone():
    for n in range(4, 7):
        o = CyclicOrder(tuple(range(n)))
        for q in itertools.permutations(range(n), 4):
            if not is_cyclic_suborder(o, q):
                continue
            p = exchange(o, *q)
            assert any(exchange(p, *r) == o for r in itertools.permutations(range(n), 4) if is_cyclic_suborder(p, r))


def test_fluctuation_examples():
    assert fluctuation(CyclicOrder(tuple("abcd")), [set("abcd")]) == 0
    assert fluctuation(CyclicOrder(("a", "b", "a'", "b'")), [{"a", "a'"}, {"b", "b'"}]) == 4


@pytest.mark.parametrize("n", range(1, 7))
def test_interval_lemma_exhaustive_small(n):
    o = CyclicOrder(tuple(range(n)))
    for part in multiset_partitions(list(range(n))):
        cls, bad = interval_class(o, part)
        if not bad:
            assert cls is not None and is_interval(o, cls)


@pytest.mark.parametrize("n", range(4, 7))
def test_improving_exchanges_exhaustive_small(n):
    o = CyclicOrder(tuple(range(n)))
    quads = [q for q in itertools.permutations(range(n), 4) if is_cyclic_suborder(o, q)]
    for part in multiset_partitions(list(range(n))):
        f = fluctuation(o, part)
        for q in quads:
            if is_improving(o, *q, part):
                assert fluctuation(exchange(o, *q), part) < f


orders = st.integers(4, 9).flatmap(lambda n: st.permutations(list(range(n))))


@settings(max_examples=200, deadline=None)
@given(orders, st.data())
def test_exchange_is_a_permutation_and_rotation_invariant(perm, data):
    o = CyclicOrder(tuple(perm))
    idx = sorted(data.draw(st.lists(st.integers(0, len(perm) - 1), min_size=4, max_size=4, unique=True)))
    q = [perm[i] for i in idx]
    p = exchange(o, *q)
    assert sorted(p.elements) == sorted(perm)
    k = data.draw(st.integers(0, len(perm) - 1))
    rotated = CyclicOrder(tuple(perm[k:] + perm[:k]))
    assert exchange(rotated, *q) == p


@settings(max_examples=200, deadline=None)
@given(orders, st.data())
def test_interval_lemma_random(perm, data):
    o = CyclicOrder(tuple(perm))
    labels = data.draw(st.lists(st.integers(0, 3), min_size=len(perm), max_size=len(perm)))
    part = [{x for x, c in zip(perm, labels) if c == k} for k in set(labels)]
    cls, bad = interval_class(o, part)
    assert (not bad) == (not separation_violations(o, part))
    if not bad:
        assert is_interval(o, cls)


@settings(max_examples=200, deadline=None)
@given(orders, st.data())
def test_improving_random(perm, data):
    o = CyclicOrder(tuple(perm))
    labels = data.draw(st.lists(st.integers(0, 2), min_size=len(perm), max_size=len(perm)))
    part = [{x for x, c in zip(perm, labels) if c == k} for k in set(labels)]
    idx = sorted(data.draw(st.lists(st.integers(0, len(perm) - 1), min_size=4, max_size=4, unique=True)))
    q = [perm[i] for i in idx]
    # steer x2 and x4 into one class so improving quadruples are common
    part = [c - {q[1], q[3]} for c in part]
    part = [c for c in part if c] + [{q[1], q[3]}]
    if is_improving(o, *q, part):
        assert fluctuation(exchange(o, *q), part) < fluctuation(o, part)
