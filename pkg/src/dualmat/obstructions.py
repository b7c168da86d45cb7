"""The cycle-plus-loop obstruction family and its walk-complex realisation A_n.

M_n is the disjoint union of an n-cycle e1..en and a loop l, with the
constraint sets X[i,n] = {e_j : j not in {i, i+1}} + {l} (indices mod n).
"""
from __future__ import annotations

from dataclasses import dataclass

from .complex import Complex2, homology_check
from .corpus import AN_MODES, an_complex, an_prime
from .embedding import constraint_sets
from .isomorphism import complexes_isomorphic
from .matroid import Matroid, MatroidSizeError, dual_matroid, matroid_equals
from .realize import GraphRealization, edge_set_connected, iter_realizations, realize_graph
from .splitting import split_complex

MAX_N = 8
REALIZATION_GUARD = 200000


@dataclass(frozen=True)
class ConstrainedMatroid:
    matroid: Matroid
    constraints: tuple[tuple[str, frozenset], ...]  # (label, element set)

    def __post_init__(self):
        ground = set(self.matroid.ground)
        for label, x in self.constraints:
            if not set(x) <= ground:
                raise ValueError(f"constraint {label} leaves the ground set")

    def without(self, label: str) -> "ConstrainedMatroid":
        return ConstrainedMatroid(self.matroid, tuple(k for k in self.constraints if k[0] != label))

    def to_dict(self) -> dict:
        return {
            "matroid": self.matroid.to_dict(),
            "constraints": {label: sorted(x) for label, x in self.constraints},
        }


def _check_n(n: int, upper: int | None = None) -> None:
    if n < 3:
        raise ValueError("n must be at least 3")
    if upper is not None and n > upper:
        raise MatroidSizeError(f"n = {n} exceeds the supported bound {upper}")


def cycle_plus_loop(n: int) -> Matroid:
    ground = tuple(f"e{i}" for i in range(1, n + 1)) + ("l",)
    return Matroid(ground, ((1,) * n + (0,), (0,) * n + (1,)), 3)


def make_Mn_with_constraints(n: int) -> ConstrainedMatroid:
    _check_n(n)
    cons = []
    for i in range(1, n + 1):
        skip = {i, i % n + 1}
        cons.append((f"X[{i},{n}]", frozenset({f"e{j}" for j in range(1, n + 1) if j not in skip} | {"l"})))
    return ConstrainedMatroid(cycle_plus_loop(n), tuple(cons))


def enumerate_graph_realizations(m: Matroid) -> list[GraphRealization]:
    """All realizations up to isomorphism, without isolated vertices."""
    return realize_graph(m, "all")


def _violations(g: GraphRealization, cm: ConstrainedMatroid) -> list[str]:
    return [label for label, x in cm.constraints if x and not edge_set_connected(g, x)]


def constraints_satisfiable(cm: ConstrainedMatroid, mode: str = "first", guard: int = REALIZATION_GUARD) -> dict:
    """Does some realization make every constraint a connected edge set?

    ``first`` stops at the first witness; ``all`` also maps every
    isomorphism class of realization to the constraints it violates.
    """
    if mode == "all":
        per = []
        witness = None
        for g in enumerate_graph_realizations(cm.matroid):
            bad = _violations(g, cm)
            per.append({"graph": g.to_dict(), "violated": bad})
            if not bad and witness is None:
                witness = g
        return {"satisfiable": witness is not None, "witness": witness.to_dict() if witness else None,
                "realizations": per}
    checked = 0
    for g in iter_realizations(cm.matroid):
        checked += 1
        if checked > guard:
            raise MatroidSizeError("realization enumeration exceeded its guard")
        if not _violations(g, cm):
            return {"satisfiable": True, "witness": g.to_dict(), "checked": checked}
    return {"satisfiable": False, "witness": None, "checked": checked}


def constraint_minor(cm: ConstrainedMatroid, delete=(), contract=()) -> ConstrainedMatroid:
    delete, contract = set(delete), set(contract)
    if delete & contract:
        raise ValueError("delete and contract sets must be disjoint")
    for label, x in cm.constraints:
        if delete & x:
            raise ValueError(f"cannot delete {sorted(delete & x)[0]}: it lies in constraint {label}")
    m = cm.matroid
    if contract:
        m = m.contract(sorted(contract))
    if delete:
        m = m.delete(sorted(delete))
    gone = delete | contract
    return ConstrainedMatroid(m, tuple((label, x - gone) for label, x in cm.constraints))


def _remove_element(cm: ConstrainedMatroid, e: str, how: str) -> ConstrainedMatroid:
    # deletion here is the plain minor M - e with constraints X - e, which the
    # constraint-minor rule would forbid for elements inside some X
    m = cm.matroid.delete([e]) if how == "delete" else cm.matroid.contract([e])
    return ConstrainedMatroid(m, tuple((label, x - {e}) for label, x in cm.constraints))


# -- the walk-complexes ---------------------------------------------------------------------

def generate_An(n: int, mode: str, verify: bool = False) -> Complex2:
    """The A_n walk-complex; ``mode`` is 'exact' or 'adjusted' (see corpus.an_identifications)."""
    _check_n(n)
    if mode not in AN_MODES:
        raise ValueError(f"mode must be one of {AN_MODES}")
    c = an_complex(n, mode)
    if verify:
        report = an_postconditions(n, mode, c)
        failed = [k for k, v in report.items() if v is False]
        if failed:
            raise AssertionError(f"A_{n} postconditions failed: {failed}")
    return c


def an_constraint_report(n: int, mode: str, c: Complex2 | None = None) -> dict:
    """Compare the nontrivial constraint sets of A_n with X[i,n]."""
    c = c or an_complex(n, mode)
    expected = {x for _, x in make_Mn_with_constraints(n).constraints}
    # face ids double as element ids
    found = {frozenset(k.faces) for k in constraint_sets(c) if not k.trivial}
    return {
        "mode": mode,
        "matches_stated_constraints": found == expected,
        "found": sorted(sorted(x) for x in found),
        "stated": sorted(sorted(x) for x in expected),
    }


def an_postconditions(n: int, mode: str, c: Complex2 | None = None, check_split: bool = True) -> dict:
    c = c or an_complex(n, mode)
    out = {"dual_matroid_is_Mn": matroid_equals(dual_matroid(c), cycle_plus_loop(n))}
    if check_split:
        hat = split_complex(c).complex
        out["split_is_A_prime"] = complexes_isomorphic(hat, an_prime(n), fix_faces=True)
        out["split_nullhomologous"] = homology_check(hat)["nullhomologous"]
    out["A_prime_nullhomologous"] = homology_check(an_prime(n))["nullhomologous"]
    return out


def verify_An_facts(n: int) -> dict:
    """Machine check of the non-satisfiability fact and all three minimality items."""
    _check_n(n, MAX_N)
    cm = make_Mn_with_constraints(n)
    checks = []

    def record(name, result, expect):
        checks.append({"check": name, "satisfiable": result["satisfiable"], "expected": expect,
                       "pass": result["satisfiable"] == expect, "witness": result.get("witness")})

    record("all constraints", constraints_satisfiable(cm), False)
    for label, _ in cm.constraints:
        record(f"drop {label}", constraints_satisfiable(cm.without(label)), True)
    for e in cm.matroid.ground:
        record(f"delete {e}", constraints_satisfiable(_remove_element(cm, e, "delete")), True)
        record(f"contract {e}", constraints_satisfiable(_remove_element(cm, e, "contract")), True)
    groups = {
        "not_met": [c for c in checks if c["check"] == "all constraints"],
        "all_but_one": [c for c in checks if c["check"].startswith("drop")],
        "deletion": [c for c in checks if c["check"].startswith("delete")],
        "contraction": [c for c in checks if c["check"].startswith("contract")],
    }
    summary = {k: all(c["pass"] for c in v) for k, v in groups.items()}
    return {"n": n, "summary": summary, "all_pass": all(summary.values()), "checks": checks}
