"""The acceptance suite: twelve exact checks, each with a runtime budget."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from . import algebra as alg
from .bg import (BGComplex, BoundedTraceModel, FiniteGroupAction, dual_numbers_sign_action,
                 graded_sign_action, permuted_idempotents_action, random_gset, verify_inertia)
from .exact import AbelianGroupStructure
from .groups import (FiniteGroup, central_sequence_check, product_formula_check,
                     cohomology, schur_multiplier, group_claims_report, semidirect_sequence_check,
                     sl3_weight_lattice)
from .hochschild import hochschild_homology
from .koszul import koszul_length, verify_dual_ext, verify_kos_acyclic
from .nilpotent import (BUILTIN_DIAGRAMS, centralizer_dim, grading_profile, partition_diagram,
                        partitions, type_A_rank_oracle)
from .rootdata import (CyclotomicNumber, RootDatum, RootSystem, brion_peyre_check,
                       parabolic_pairs, product_multiplier, splitting_criterion)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    budget: float
    failures: List[str] = field(default_factory=list)
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def within_budget(self) -> bool:
        return self.seconds <= self.budget

    @property
    def ok(self) -> bool:
        return self.passed and self.within_budget

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = "" if self.within_budget else " (over budget)"
        return (f"[{status}] criterion {self.number:2d}: {self.title} "
                f"({self.seconds:.2f}s / {self.budget:g}s){extra}")

    def to_json(self):
        return {"criterion": self.number, "title": self.title, "pass": self.ok,
                "checks_pass": self.passed, "seconds": round(self.seconds, 3),
                "budget_seconds": self.budget, "tolerance": "exact equality",
                "failures": self.failures, "details": self.details}


class _Checker:
    def __init__(self):
        self.failures: List[str] = []
        self.details: Dict[str, object] = {}

    def expect(self, label: str, ok: bool, value=None):
        if value is not None:
            self.details[label] = value
        if not ok:
            self.failures.append(label)


def koszul_suite() -> Dict[str, alg.GradedAlgebra]:
    return {"kxk": alg.semisimple(2), "A2": alg.path_algebra_An(2),
            "dual numbers": alg.dual_numbers(), "A3": alg.path_algebra_An(3)}


def finite_gldim_suite() -> Dict[str, alg.GradedAlgebra]:
    return {"kxk": alg.semisimple(2), "A2": alg.path_algebra_An(2),
            "A3": alg.path_algebra_An(3), "A3 zero relation": alg.An_with_zero_relation()}


def degree_zero_bimodules(A: alg.GradedAlgebra) -> Dict[str, alg.GradedBimodule]:
    n = len(A.vertices)
    out = {"A": alg.diagonal_bimodule(A), "DA": alg.dual_bimodule(A)}
    for i in range(n):
        for j in range(n):
            out[f"free({i},{j})"] = alg.free_bimodule(A, i, j)
            out[f"simple({i},{j})"] = alg.simple_bimodule(A, i, j)
    out["A + DA"] = alg.bimodule_direct_sum([out["A"], out["DA"]])
    out["sum of simples"] = alg.bimodule_direct_sum(
        [alg.simple_bimodule(A, i, i) for i in range(n)])
    return out


# ---------------------------------------------------------------------------


def criterion_1(c: _Checker):
    for name, A in koszul_suite().items():
        rep = verify_kos_acyclic(A, 5)
        c.expect(f"{name} acyclic", rep.acyclic, rep.to_json())
    rep = verify_kos_acyclic(alg.truncated_polynomial(3), 5)
    c.expect("k<x>/(x^3) first failure reported",
             not rep.acyclic and rep.first_failure is not None, rep.to_json())


def criterion_2(c: _Checker):
    for name, A in koszul_suite().items():
        rep = verify_dual_ext(A, 5)
        c.expect(f"{name} dual spaces match Ext", rep["holds"])


def fiber_suite() -> Dict[str, FiniteGroupAction]:
    z3_perm = FiniteGroup.from_permutations(3, [(1, 2, 0)], name="Z/3")
    return {
        "Z/2 on k[x]/(x^2), F = id": dual_numbers_sign_action("id"),
        "Z/2 on k[x]/(x^2), F = x -> 2x": dual_numbers_sign_action("scale2"),
        "Z/3 on k^3, F = id": permuted_idempotents_action(z3_perm),
        "Z/3 on k^3, F = cycle": permuted_idempotents_action(z3_perm, (1, 2, 0)),
        "S3 on k^3, F = id": permuted_idempotents_action(FiniteGroup.symmetric(3)),
    }


def criterion_3(c: _Checker):
    degrees = list(range(-4, 1))
    for name, action in fiber_suite().items():
        bg = BGComplex(action, 5)
        for h in range(action.group.order):
            fiber = bg.fiber_at(h).cohomology_dims(degrees)
            hh = hochschild_homology(action.algebra, action.module, action.fiber_twist(h),
                                     min_degree=-4).dims
            c.expect(f"{name}, h = {action.group.labels[h]}",
                     all(fiber[d] == hh[d] for d in degrees),
                     {"fiber": fiber, "hochschild": hh})


def _compare_bounded(c: _Checker, label: str, action: FiniteGroupAction):
    model = BoundedTraceModel(action)
    N = model.length
    degrees = list(range(-N - 1, 1))
    bg = BGComplex(action, N + 2)
    want = bg.global_sections().cohomology_dims(degrees)
    got = model.global_sections().cohomology_dims(degrees)
    ok = got == want
    for h in range(action.group.order):
        ok &= model.fiber(h).cohomology_dims(degrees) == bg.fiber_at(h).cohomology_dims(degrees)
    c.expect(label, ok, {"bounded": got, "pre-BG": want})


def criterion_4(c: _Checker):
    for name, A in finite_gldim_suite().items():
        _compare_bounded(c, f"{name}, trivial group", FiniteGroupAction.trivial(A))
        _compare_bounded(c, f"{name}, weight sign action", graded_sign_action(A))


def criterion_5(c: _Checker):
    for name, A in finite_gldim_suite().items():
        N, _ = koszul_length(A)
        for bname, M in degree_zero_bimodules(A).items():
            rep = hochschild_homology(A, M, min_degree=-N - 2)
            live = [d for d, v in rep.dims.items() if v]
            bounded = BoundedTraceModel(FiniteGroupAction.trivial(A, M))
            cx = bounded.complex()
            top = cx.hi
            positive = cx.cohomology_dims([d for d in range(1, top + 1)]) if top > 0 else {}
            same = bounded.complex().cohomology_dims(range(-N - 2, 1)) == rep.dims
            c.expect(f"{name} with {bname}",
                     all(-N <= d <= 0 for d in live) and not any(positive.values()) and same,
                     {"support": [min(live), max(live)] if live else None, "bound": [-N, 0]})


def criterion_6(c: _Checker, seed: int = 20240601):
    rng = random.Random(seed)
    groups = [FiniteGroup.symmetric(3), FiniteGroup.dihedral(8), FiniteGroup.alternating(4),
              FiniteGroup.cyclic(6), FiniteGroup.quaternion()]
    for G in groups:
        assert G.order <= 12
        perms = random_gset(G, 8, rng)
        rep = verify_inertia(G, perms)
        c.expect(f"{G.name}, |X| = {len(perms[0])}", rep.holds,
                 {"global_H0": rep.global_h0, "orbit_count": rep.orbit_count})


def _claims(names: Sequence[str]) -> Dict[str, dict]:
    return {r["claim"]: r for r in group_claims_report() if r["claim"] in names}


_Z2 = AbelianGroupStructure(0, (2,))


def criterion_7(c: _Checker):
    names = ["M(A4) = Z/2", "M(S4) = Z/2", "M(S4) -> M(A4) is an isomorphism",
             "M(S4) -> M(non-normal Klein) is an isomorphism", "M(Klein) = Z/2"]
    for name, r in _claims(names).items():
        c.expect(name, r["pass"], r.get("value"))
    for n in range(1, 13):
        m = schur_multiplier(FiniteGroup.cyclic(n))
        c.expect(f"M(Z/{n}) = 0", m.is_trivial())


def criterion_8(c: _Checker):
    s3 = FiniteGroup.symmetric(3)
    lam = sl3_weight_lattice(s3, s3.labels)
    for label, gen, expected in [("H1(<(123)>, Lambda) = Z/3", (1, 2, 0), 3),
                                 ("H1(<(12)>, Lambda) = Z/2", (1, 0, 2), 2)]:
        sub, inc = s3.subgroup([s3.labels.index(gen)])
        h1 = cohomology(sub, lam.restrict(sub, inc), 1)
        c.expect(label, h1 == AbelianGroupStructure(0, (expected,)), str(h1))


def criterion_9(c: _Checker):
    pgl3 = RootDatum.adjoint("A2").schur_multiplier()
    sl3 = RootDatum.simply_connected("A2").schur_multiplier()
    c.expect("M(PGL3) = Z/3", pgl3 == AbelianGroupStructure(0, (3,)), str(pgl3))
    c.expect("M(SL3) = 0", sl3.is_trivial(), str(sl3))


def criterion_10(c: _Checker):
    res = splitting_criterion("A1", [], None, CyclotomicNumber.root_of_unity(4, 1))
    c.expect("A1 at a primitive 4th root: no splitting", not res.splits)
    for t in ["A1", "A2", "A3", "B2", "G2"]:
        rs = RootSystem(t)
        one = splitting_criterion(t, [], None, 1)
        c.expect(f"{t} at q = 1 gives |W|", one.splits and one.value == rs.weyl_order(),
                 str(one.value))
        c.expect(f"{t} Brion-Peyre divisibility",
                 all(brion_peyre_check(t, p, q) for p, q in parabolic_pairs(rs.rank)))


def criterion_11(c: _Checker):
    for n in range(1, 7):
        for p in partitions(n):
            oracle = type_A_rank_oracle(p)
            formula = centralizer_dim(grading_profile(f"A{n - 1}", partition_diagram(p))) \
                if n > 1 else 0
            c.expect(f"partition {p}", oracle == formula)
    for name, (t, d) in BUILTIN_DIAGRAMS.items():
        prof = grading_profile(t, d)
        expected = {"E6": 78, "E8": 248}[t]
        c.expect(f"{name} profile", prof.is_symmetric() and sum(prof.dims.values()) == expected,
                 prof.to_json()["dims"])


def criterion_12(c: _Checker):
    z2, z3 = FiniteGroup.cyclic(2), FiniteGroup.cyclic(3)
    for a, b in [(z2, z2), (z2, z3), (FiniteGroup.symmetric(3), z2)]:
        r = product_formula_check(a, b)
        c.expect(f"product {a.name} x {b.name}", r["holds"], {"lhs": r["lhs"], "rhs": r["rhs"]})
    r = product_multiplier(RootDatum.simply_connected("A1"), RootDatum.adjoint("A1"))
    c.expect("M(SL2 x PGL2) = Z/2", r["total"] == _Z2, str(r["total"]))
    r = product_multiplier(RootDatum.simply_connected("A1"), RootDatum.simply_connected("A1"),
                           [2], [2])
    c.expect("component data Z/2, Z/2 adds Z/2", r["bimultiplicative"] == _Z2)
    for label, orders, gamma, action in [
        ("Z/3 by Z/2 inverting", [3], z2, [[[2]]]),
        ("Klein by Z/3 cycling", [2, 2], z3, [[[0, 1], [1, 1]]]),
        ("Z/2 by Z/2 trivially", [2], z2, [[[1]]]),
    ]:
        r = semidirect_sequence_check(orders, gamma, action)
        c.expect(f"semidirect {label}", r["holds"],
                 {k: v for k, v in r.items() if k.startswith("|")})
    q8 = FiniteGroup.quaternion()
    z4 = FiniteGroup.cyclic(4)
    d8 = FiniteGroup.dihedral(8)
    for label, G, Z in [("Q8 over its center", q8, q8.center()),
                        ("Z/4 over Z/2", z4, [0, z4.power(z4.generators[0], 2)]),
                        ("D8 over its center", d8, d8.center())]:
        r = central_sequence_check(G, Z)
        c.expect(f"central {label}", r["holds"],
                 {k: v for k, v in r.items() if k.startswith("|")})


CRITERIA: Dict[int, tuple] = {
    1: ("Koszul complex acyclicity", criterion_1, 5),
    2: ("quadratic dual matches Ext of simples", criterion_2, 10),
    3: ("fibers compute twisted Hochschild homology", criterion_3, 30),
    4: ("bounded model matches the truncated complex", criterion_4, 10),
    5: ("amplitude of class complexes", criterion_5, 5),
    6: ("inertia count", criterion_6, 10),
    7: ("Schur multipliers of finite groups", criterion_7, 120),
    8: ("lattice cohomology", criterion_8, 1),
    9: ("multipliers of connected groups", criterion_9, 1),
    10: ("splitting criterion and divisibility", criterion_10, 5),
    11: ("nilpotent gradings", criterion_11, 5),
    12: ("exact-sequence bookkeeping", criterion_12, 60),
}


def run_criterion(number: int) -> CriterionResult:
    if number not in CRITERIA:
        raise KeyError(f"unknown criterion {number}; choose from 1-{len(CRITERIA)}")
    title, fn, budget = CRITERIA[number]
    c = _Checker()
    start = time.perf_counter()
    try:
        fn(c)
    except Exception as e:  # a crash is a failure of the criterion, reported as such
        c.failures.append(f"raised {type(e).__name__}: {e}")
    seconds = time.perf_counter() - start
    return CriterionResult(number, title, not c.failures, seconds, budget,
                           c.failures, c.details)


def run_suite(selection: Optional[Sequence[int]] = None) -> List[CriterionResult]:
    numbers = sorted(CRITERIA) if not selection else list(selection)
    for n in numbers:
        if n not in CRITERIA:
            raise KeyError(f"unknown criterion {n}; choose from 1-{len(CRITERIA)}")
    return [run_criterion(n) for n in numbers]
