"""Cyclic orders: separation, interval classes, exchanges and fluctuation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence


class CyclicOrderError(ValueError):
    pass


@dataclass(frozen=True)
class CyclicOrder:
    """Distinct elements up to rotation; ``canonical()`` is the least rotation."""

    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(set(self.elements)) != len(self.elements):
            raise CyclicOrderError("elements of a cyclic order must be distinct")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return isinstance(other, CyclicOrder) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def canonical(self) -> tuple:
        n = len(self.elements)
        if n == 0:
            return ()
        rots = [self.elements[i:] + self.elements[:i] for i in range(n)]
        return min(rots, key=lambda r: [repr(x) for x in r])

    def position(self, x) -> int:
        try:
            return self.elements.index(x)
        except ValueError:
            raise CyclicOrderError(f"unknown element {x!r}") from None

    def succ(self, x):
        return self.elements[(self.position(x) + 1) % len(self)]

    def pred(self, x):
        return self.elements[(self.position(x) - 1) % len(self)]

    def segment(self, a, b) -> list:
        """a sigma b: the elements from a forward to b, both included."""
        i, j = self.position(a), self.position(b)
        n = len(self)
        return [self.elements[(i + k) % n] for k in range((j - i) % n + 1)]

    def open_arc(self, a, b) -> list:
        return self.segment(a, b)[1:-1] if a != b else []

    def pairs(self) -> list[tuple]:
        n = len(self)
        return [(self.elements[i], self.elements[(i + 1) % n]) for i in range(n)] if n > 1 else []


def separates(o: CyclicOrder, y1, y2, x: Iterable[Hashable]) -> bool:
    x = set(x)
    o.position(y1)
    o.position(y2)
    if y1 == y2:
        raise CyclicOrderError("separating elements must differ")
    if y1 in x or y2 in x:
        return False
    return bool(x & set(o.open_arc(y1, y2))) and bool(x & set(o.open_arc(y2, y1)))


def _check_partition(o: CyclicOrder, partition: Sequence[Iterable]) -> list[frozenset]:
    classes = [frozenset(p) for p in partition]
    seen: set = set()
    for p in classes:
        if not p or p & seen:
            raise CyclicOrderError("classes must be nonempty and disjoint")
        seen |= p
    if seen != set(o.elements):
        raise CyclicOrderError("partition does not cover the elements exactly")
    return classes


def separation_violations(o: CyclicOrder, partition: Sequence[Iterable]) -> list[tuple]:
    """Triples (y1, y2, j) where two elements of one class separate class j."""
    classes = _check_partition(o, partition)
    out = []
    for i, p in enumerate(classes):
        members = sorted(p, key=o.position)
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                for j, q in enumerate(classes):
                    if j != i and separates(o, members[a], members[b], q):
                        out.append((members[a], members[b], j))
    return out


def closure(o: CyclicOrder, cls: Iterable, anchor) -> list:
    """Elements from the first member of ``cls`` after ``anchor`` up to the last one before it."""
    cls = set(cls)
    walk = o.segment(o.succ(anchor), anchor)[:-1] if len(o) > 1 else []
    hits = [k for k, x in enumerate(walk) if x in cls]
    return walk[hits[0]:hits[-1] + 1]


def interval_class(o: CyclicOrder, partition: Sequence[Iterable]) -> tuple[frozenset | None, list]:
    """A class forming a contiguous interval, chosen by minimal closure.

    The anchor is the first element of the canonical rotation. Returns the
    class (or None) together with the list of hypothesis violations.
    """
    classes = _check_partition(o, partition)
    bad = separation_violations(o, classes)
    if bad:
        return None, bad
    anchor = o.canonical()[0]
    others = [p for p in classes if anchor not in p]
    if not others:
        return classes[0], []
    closures = [(len(closure(o, p, anchor)), min(o.position(x) for x in p), p) for p in others]
    _, _, best = min(closures, key=lambda t: (t[0], t[1]))
    if set(closure(o, best, anchor)) != set(best):
        return None, []
    return best, []


def is_interval(o: CyclicOrder, cls: Iterable) -> bool:
    cls = set(cls)
    n = len(o)
    if not cls or len(cls) == n:
        return bool(cls)
    inside = [o.elements[i] in cls for i in range(n)]
    starts = sum(1 for i in range(n) if inside[i] and not inside[i - 1])
    return starts == 1


def is_cyclic_suborder(o: CyclicOrder, xs: Sequence) -> bool:
    if len(set(xs)) != len(xs):
        return False
    pos = [o.position(x) for x in xs]
    k = pos.index(min(pos))
    rotated = pos[k:] + pos[:k]
    return rotated == sorted(rotated)


def exchange(o: CyclicOrder, x1, x2, x3, x4) -> CyclicOrder:
    """x3 s x4, (x2 s x3 - x3), (x1 s x2 - x1 - x2), (x4+1) s x1; x2 follows x4."""
    if not is_cyclic_suborder(o, [x1, x2, x3, x4]):
        raise CyclicOrderError("(x1 x2 x3 x4) is not a cyclic suborder")
    out = o.segment(x3, x4) + o.segment(x2, x3)[:-1] + o.open_arc(x1, x2)
    out += o.segment(x4, x1)[1:]
    return CyclicOrder(tuple(out))


def fluctuation(o: CyclicOrder, partition: Sequence[Iterable]) -> int:
    classes = _check_partition(o, partition)
    where = {x: i for i, p in enumerate(classes) for x in p}
    return sum(1 for a, b in o.pairs() if where[a] != where[b])


def is_improving(o: CyclicOrder, x1, x2, x3, x4, partition: Sequence[Iterable]) -> bool:
    classes = _check_partition(o, partition)
    if not is_cyclic_suborder(o, [x1, x2, x3, x4]):
        raise CyclicOrderError("(x1 x2 x3 x4) is not a cyclic suborder")
    where = {x: i for i, p in enumerate(classes) for x in p}
    same = lambda a, b: where[a] == where[b]
    if not same(x2, x4):
        return False
    pairs = [(x4, o.succ(x4)), (x2, o.pred(x2)), (x1, o.succ(x1)), (x3, o.pred(x3))]
    return not any(same(a, b) for a, b in pairs)
