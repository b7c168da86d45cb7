import pytest

from dualmat.embedding import NOT_EMBEDDABLE, EMBEDDABLE, decide_embeddability
from dualmat.matroid import Matroid, MatroidSizeError, dual_matroid, matroid_equals
from dualmat.obstructions import (
    ConstrainedMatroid,
    an_constraint_report,
    an_postconditions,
    constraint_minor,
    constraints_satisfiable,
    cycle_plus_loop,
    enumerate_graph_realizations,
    generate_An,
    make_Mn_with_constraints,
    verify_An_facts,
)
from dualmat.realize import cycle_matroid, edge_set_connected


def constraints(cm):
    return dict(cm.constraints)


def test_constraint_sets_small_n():
    cm = make_Mn_with_constraints(4)
    assert len(cm.matroid.ground) == 5
    assert constraints(cm)["X[1,4]"] == {"e3", "e4", "l"}
    c3 = constraints(make_Mn_with_constraints(3))
    assert all(c3[f"X[{i},3]"] == {f"e{(i + 1) % 3 + 1}", "l"} for i in range(1, 4))
    with pytest.raises(ValueError):
        make_Mn_with_constraints(2)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("mode", ["exact", "adjusted"])
def test_dual_matroid_of_an_is_mn(n, mode):
    assert matroid_equals(dual_matroid(generate_An(n, mode)), make_Mn_with_constraints(n).matroid)


def test_realization_classes():
    assert len(enumerate_graph_realizations(cycle_plus_loop(5))) == 2
    cycle = cycle_matroid([(f"e{i}", f"v{i}", f"v{i % 5 + 1}") for i in range(1, 6)])
    only = enumerate_graph_realizations(cycle)
    assert len(only) == 1 and len(only[0].vertices) == 5
    two_loops = Matroid(("a", "b"), ((1, 0), (0, 1)), 3)
    shapes = sorted(len(g.vertices) for g in enumerate_graph_realizations(two_loops))
    assert shapes == [1, 2]


def test_satisfiability_basics():
    loop = Matroid(("l",), ((1,),), 3)
    assert constraints_satisfiable(ConstrainedMatroid(loop, (("X", frozenset({"l"})),)))["satisfiable"]
    for n in (3, 4, 5):
        cm = make_Mn_with_constraints(n)
        assert not constraints_satisfiable(cm)["satisfiable"]
        for label, _ in cm.constraints:
            w = constraints_satisfiable(cm.without(label))
            assert w["satisfiable"]


def test_witness_really_satisfies_constraints():
    from dualmat.realize import GraphRealization

    cm = make_Mn_with_constraints(5).without("X[1,5]")
    w = constraints_satisfiable(cm)["witness"]
    g = GraphRealization(tuple(w["vertices"]), tuple((d["element"], *d["endpoints"]) for d in w["edges"]))
    assert all(edge_set_connected(g, x) for _, x in cm.constraints)


def test_all_mode_lists_every_class():
    rep = constraints_satisfiable(make_Mn_with_constraints(5), mode="all")
    assert not rep["satisfiable"] and len(rep["realizations"]) == 2
    assert all(r["violated"] for r in rep["realizations"])


def test_constraint_minor():
    cm = make_Mn_with_constraints(4)
    free = ConstrainedMatroid(Matroid(("a", "b"), ((1, 1),), 3), (("X", frozenset({"a"})),))
    assert constraint_minor(free, delete=["b"]).constraints == free.constraints
    con = constraint_minor(cm, contract=["e1"])
    assert all("e1" not in x for _, x in con.constraints)
    assert constraints_satisfiable(con)["satisfiable"]
    with pytest.raises(ValueError, match="constraint"):
        constraint_minor(cm, delete=["l"])


@pytest.mark.parametrize("n", [3, 5])
def test_facts_hold(n):
    rep = verify_An_facts(n)
    assert rep["all_pass"]
    assert set(rep["summary"]) == {"not_met", "all_but_one", "deletion", "contraction"}


def test_verify_guard():
    with pytest.raises(MatroidSizeError):
        verify_An_facts(9)


def test_an_constraints_per_mode():
    assert an_constraint_report(4, "adjusted")["matches_stated_constraints"]
    exact = an_constraint_report(4, "exact")
    assert not exact["matches_stated_constraints"]
    # with the identification as literally described, the constraints are C_n - e_i + l
    assert exact["found"] == sorted(sorted({f"e{j}" for j in range(1, 5)} - {f"e{i}"} | {"l"}) for i in range(1, 5))


@pytest.mark.parametrize("mode", ["exact", "adjusted"])
def test_an_postconditions(mode):
    assert all(an_postconditions(4, mode).values())


def test_an_verdicts():
    assert decide_embeddability(generate_An(4, "adjusted"), True).status == NOT_EMBEDDABLE
    assert decide_embeddability(generate_An(4, "exact"), True).status == EMBEDDABLE
    with pytest.raises(ValueError):
        generate_An(4, "other")
