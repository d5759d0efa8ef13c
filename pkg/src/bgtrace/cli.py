"""Command-line frontend.  Every subcommand prints one JSON document on stdout.

Exit codes: 0 when every checked property held, 1 when a check came out false,
2 for malformed input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from . import algebra as alg
from .exact import AbelianGroupStructure

CACHE_ENV = "BGTRACE_CACHE_DIR"


class InputError(ValueError):
    """Malformed user input; the message names the offending field."""


# ---------------------------------------------------------------------------
# input parsing


def load_json(path: str, what: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"{what}: cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{what}: {path}: line {e.lineno} column {e.colno}: {e.msg}") from None


def _json_or_file(value: str, what: str):
    if value.lstrip().startswith(("{", "[", '"')):
        try:
            return json.loads(value)
        except json.JSONDecodeError as e:
            raise InputError(f"{what}: column {e.colno}: {e.msg}") from None
    if os.path.exists(value):
        return load_json(value, what)
    return value


BUILTIN_ALGEBRAS: Dict[str, Callable[[], alg.GradedAlgebra]] = {
    "kxk": lambda: alg.semisimple(2),
    "k3": lambda: alg.semisimple(3),
    "dual": alg.dual_numbers,
    "x3": lambda: alg.truncated_polynomial(3),
    "A2": lambda: alg.path_algebra_An(2),
    "A3": lambda: alg.path_algebra_An(3),
    "A3z": alg.An_with_zero_relation,
}


def parse_algebra(value: str) -> Tuple[alg.GradedAlgebra, Any]:
    """A built-in name or a JSON quiver description; also returns the canonical source."""
    if value in BUILTIN_ALGEBRAS:
        return BUILTIN_ALGEBRAS[value](), value
    obj = _json_or_file(value, "algebra")
    if isinstance(obj, str):
        raise InputError(f"algebra: unknown name {obj!r}; built-ins are "
                         + ", ".join(BUILTIN_ALGEBRAS))
    try:
        return alg.algebra_from_json(obj), obj
    except alg.QuiverError as e:
        raise InputError(f"algebra.{e}") from None


def parse_bimodule(A: alg.GradedAlgebra, value: Optional[str]):
    if value is None:
        return alg.diagonal_bimodule(A), "A"
    obj = _json_or_file(value, "bimodule")
    try:
        return alg.bimodule_from_json(A, obj), obj
    except (alg.QuiverError, ValueError, KeyError, TypeError) as e:
        raise InputError(f"bimodule: {e}") from None


def parse_twist(A: alg.GradedAlgebra, value: Optional[str]) -> alg.AlgebraMap:
    """"id", "scale:t" (x -> t^weight x) or "perm:1,2,0" on the idempotents of k^n."""
    if value in (None, "id"):
        return alg.AlgebraMap.identity(A)
    kind, _, arg = value.partition(":")
    try:
        if kind == "scale":
            return alg.AlgebraMap.weight_scaling(A, Fraction(arg))
        if kind == "perm":
            return alg.AlgebraMap.vertex_permutation(A, [int(x) for x in arg.split(",")])
    except (ValueError, ZeroDivisionError, IndexError) as e:
        raise InputError(f"twist: {e}") from None
    raise InputError("twist: expected id, scale:<t> or perm:<i,j,...>")


def _int_list(value: Optional[str], what: str, one_based: bool = False) -> Optional[List[int]]:
    if value is None:
        return None
    if value.strip() == "":
        return []
    try:
        out = [int(x) for x in value.split(",")]
    except ValueError:
        raise InputError(f"{what}: expected comma separated integers") from None
    return [x - 1 for x in out] if one_based else out


def parse_group(value: str):
    from .groups import FiniteGroup

    simple = {"S3": lambda: FiniteGroup.symmetric(3), "S4": lambda: FiniteGroup.symmetric(4),
              "A4": lambda: FiniteGroup.alternating(4), "D8": lambda: FiniteGroup.dihedral(8),
              "Q8": FiniteGroup.quaternion, "Klein": lambda: FiniteGroup.abelian([2, 2]),
              "trivial": FiniteGroup.trivial}
    if value in simple:
        return simple[value](), value
    if value.startswith("Z") and value[1:].lstrip("/").isdigit():
        n = int(value[1:].lstrip("/"))
        return FiniteGroup.cyclic(n), f"Z{n}"
    obj = _json_or_file(value, "group")
    if not isinstance(obj, dict):
        raise InputError(f"group: unknown group {value!r}")
    if "degree" not in obj:
        raise InputError("group.degree: missing field")
    if "generators" not in obj or not isinstance(obj["generators"], list):
        raise InputError("group.generators: expected a list")
    try:
        return FiniteGroup.from_permutations(int(obj["degree"]), obj["generators"]), obj
    except (ValueError, TypeError) as e:
        raise InputError(f"group.generators: {e}") from None


def parse_gmodule(group, value: Optional[str]):
    from .groups import GModule, sl3_weight_lattice

    if value in (None, "Z"):
        return GModule.trivial(group), "Z"
    if value == "sl3-lattice":
        if len(group.labels[0]) != 3:
            raise InputError("module: sl3-lattice needs a permutation group of degree 3")
        return sl3_weight_lattice(group, group.labels), value
    obj = _json_or_file(value, "module")
    if not isinstance(obj, dict):
        raise InputError(f"module: unknown module {value!r}")
    free = obj.get("free_rank", 0)
    torsion = obj.get("torsion", [])
    action = obj.get("action")
    if not isinstance(action, (dict, list)):
        raise InputError("module.action: expected one matrix per generator")
    mats = [action[str(k)] if isinstance(action, dict) else action[k]
            for k in range(len(group.generators))] if action else []
    try:
        return GModule.from_generators(group, free, torsion, mats), obj
    except (KeyError, IndexError):
        raise InputError("module.action: one matrix per generator is required") from None
    except ValueError as e:
        raise InputError(f"module.action: {e}") from None


def parse_q(value: str):
    from .rootdata import CyclotomicNumber

    if value.startswith("cyclotomic:"):
        try:
            return CyclotomicNumber.parse(value)
        except ValueError as e:
            raise InputError(f"q: {e}") from None
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise InputError("q: expected a rational number or cyclotomic:<n>:<k>") from None


# ---------------------------------------------------------------------------
# output helpers


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, AbelianGroupStructure):
        return {"group": str(x), "free_rank": x.free_rank, "torsion": list(x.torsion)}
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def render(report: dict) -> str:
    return json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n"


def canonical(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# cache


def cache_dir() -> Path:
    root = os.environ.get(CACHE_ENV)
    if root:
        return Path(root)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "bgtrace"


def cache_key(command: str, inputs: dict) -> str:
    payload = canonical({"command": command, "inputs": inputs, "version": __version__})
    return hashlib.sha256(payload.encode()).hexdigest()


def cache_lookup(key: str) -> Optional[Tuple[str, int]]:
    path = cache_dir() / f"{key}.json"
    try:
        entry = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return None
    if entry.get("version") != __version__:
        return None
    return entry["output"], entry["exit"]


def cache_store(key: str, output: str, code: int):
    d = cache_dir()
    try:
        d.mkdir(parents=True, exist_ok=True)
        tmp = d / f"{key}.tmp"
        tmp.write_text(json.dumps({"version": __version__, "output": output, "exit": code}))
        tmp.replace(d / f"{key}.json")
    except OSError:
        pass


# ---------------------------------------------------------------------------
# subcommands; each returns (report, exit code) and the canonical inputs


def _koszul_check(a):
    from .koszul import is_koszul, verify_kos_acyclic

    A, src = parse_algebra(a.algebra)
    cert = is_koszul(A, a.depth)
    acyc = verify_kos_acyclic(A, a.depth)
    report = {"koszul": cert.koszul, "violation": cert.violation,
              "verified_to_degree": cert.verified_to, "koszul_complex": acyc.to_json()}
    return report, 0 if cert.koszul and acyc.acyclic else 1


def _koszul_resolve(a):
    from .resolution import minimal_resolution

    A, src = parse_algebra(a.algebra)
    n = len(A.vertices)
    if not 0 <= a.simple < n:
        raise InputError(f"simple: vertex index must lie in 0..{n - 1}")
    res = minimal_resolution(alg.simple_module(A, a.simple), a.length)
    return {"terms": [{"weights": t.gen_weights, "vertices": t.gen_blocks} for t in res.terms],
            "complete": res.complete, "minimal": res.is_minimal()}, 0


def _koszul_dual(a):
    from .koszul import quadratic_dual_spaces, verify_dual_ext

    A, _ = parse_algebra(a.algebra)
    duals = quadratic_dual_spaces(A, a.max_n)
    dims = {str(n): {f"{i},{j}": d for (i, j), d in sorted(duals.dims(n).items())}
            for n in range(a.max_n + 1)}
    comp = verify_dual_ext(A, a.max_n)
    return {"dims": dims, "matches_ext": comp["holds"], "table": comp["table"]}, \
        0 if comp["holds"] else 1


def _hh_compute(a):
    from .hochschild import compare_models, cyclic_bar, hochschild_homology

    A, _ = parse_algebra(a.algebra)
    M, _ = parse_bimodule(A, a.bimodule)
    F = parse_twist(A, a.twist)
    rep = hochschild_homology(A, M, F, min_degree=a.min_degree)
    out = {"hochschild": rep.to_json(), "dims": rep.dims}
    code = 0
    if a.compare:
        cmp = compare_models(A, M, F, -a.min_degree + 1)
        out["models_agree"] = cmp["agree"]
        code = 0 if cmp["agree"] else 1
    return out, code


BUILTIN_ACTIONS = {
    "dual-sign": lambda: _bg().dual_numbers_sign_action("id"),
    "dual-sign-scale2": lambda: _bg().dual_numbers_sign_action("scale2"),
    "z3-cycle": lambda: _bg().permuted_idempotents_action(
        _groups().FiniteGroup.from_permutations(3, [(1, 2, 0)])),
    "z3-cycle-twisted": lambda: _bg().permuted_idempotents_action(
        _groups().FiniteGroup.from_permutations(3, [(1, 2, 0)]), (1, 2, 0)),
    "s3-permute": lambda: _bg().permuted_idempotents_action(_groups().FiniteGroup.symmetric(3)),
}


def _bg():
    from . import bg
    return bg


def _groups():
    from . import groups
    return groups


def parse_action(a):
    bg = _bg()
    if a.action in BUILTIN_ACTIONS:
        return BUILTIN_ACTIONS[a.action](), a.action
    if a.action == "sign":
        A, src = parse_algebra(a.algebra)
        return bg.graded_sign_action(A), {"sign": src}
    if a.action == "trivial":
        A, src = parse_algebra(a.algebra)
        M, msrc = parse_bimodule(A, a.bimodule)
        return bg.FiniteGroupAction.trivial(A, M, parse_twist(A, a.twist)), \
            {"trivial": src, "bimodule": msrc, "twist": a.twist}
    raise InputError(f"action: unknown action {a.action!r}; choose from "
                     + ", ".join(list(BUILTIN_ACTIONS) + ["sign", "trivial"]))


def _bg_trace(a):
    bg = _bg()
    action, _ = parse_action(a)
    G = action.group
    degrees = list(range(-a.depth + 1, 1))
    if a.bounded:
        try:
            model = bg.bounded_trace_model(action)
        except bg.PreconditionError as e:
            raise InputError(f"action: {e}") from None
        fibers = {str(G.labels[h]): model.fiber(h).cohomology_dims(range(-model.length, 1))
                  for h in range(G.order)}
        glob = model.global_sections().cohomology_dims(range(-model.length, 1))
        return {"model": "bounded", "length": model.length, "fibers": fibers,
                "global_sections": glob}, 0
    cx = bg.BGComplex(action, a.depth)
    fibers = {str(G.labels[h]): cx.fiber_at(h).cohomology_dims(degrees) for h in range(G.order)}
    equiv = cx.is_equivariant()
    glob = cx.global_sections().cohomology_dims(degrees)
    return {"model": "pre-BG", "reliable_degrees": degrees, "fibers": fibers,
            "global_sections": glob, "equivariant": equiv,
            "term_dims": {str(-n): cx.term_dim(n) for n in range(a.depth + 1)}}, \
        0 if equiv else 1


def _bg_inertia(a):
    bg = _bg()
    G, _ = parse_group(a.group)
    if a.perms is not None:
        perms = _json_or_file(a.perms, "perms")
        if not isinstance(perms, list):
            raise InputError("perms: expected one permutation per generator")
    else:
        import random
        perms = bg.random_gset(G, a.max_points, random.Random(a.seed))
    if len(perms) != len(G.generators):
        raise InputError(f"perms: expected {len(G.generators)} permutations, one per generator")
    for k, p in enumerate(perms):
        if not (isinstance(p, (list, tuple)) and all(isinstance(x, int) for x in p)
                and sorted(p) == list(range(len(perms[0])))):
            raise InputError(f"perms[{k}]: expected the images of 0..n-1 as a list of integers")
    try:
        rep = bg.verify_inertia(G, perms)
    except bg.PreconditionError as e:
        raise InputError(f"perms: {e}") from None
    return {"generator_permutations": perms, **rep.to_json()}, 0 if rep.holds else 1


def _bg_homotopy(a):
    bg = _bg()
    action, _ = parse_action(a)
    A = action.algebra
    r = _json_or_file(a.r, "r") if a.r else None
    if r is None:
        vec = A.unit()
    elif isinstance(r, dict):
        try:
            vec = {int(k): Fraction(v) for k, v in r.items()}
        except (ValueError, TypeError):
            raise InputError("r: expected {basis index: coefficient}") from None
    else:
        raise InputError("r: expected {basis index: coefficient}")
    try:
        rep = bg.verify_homotopy(action, vec, a.depth)
    except bg.PreconditionError as e:
        raise InputError(f"r: {e}") from None
    return rep.to_json(), 0 if rep.holds else 1


def _type_and_parabolics(a):
    from .rootdata import RootDataError, RootSystem

    try:
        rs = RootSystem(a.type)
    except RootDataError as e:
        raise InputError(f"type: {e}") from None
    P = _int_list(a.P, "P", one_based=True) or []
    Q = _int_list(a.Q, "Q", one_based=True)
    return rs, P, Q


def parse_datum(a):
    from .rootdata import RootDataError, RootDatum, RootSystem

    try:
        RootSystem(a.type)
    except RootDataError as e:
        raise InputError(f"type: {e}") from None
    obj = _json_or_file(a.X, "X")
    try:
        return RootDatum.from_json(a.type, obj)
    except RootDataError as e:
        raise InputError(f"X: {e}") from None
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"X: malformed character lattice ({e})") from None


def _rootdata_group(a):
    d = parse_datum(a)
    g = d.schur_multiplier() if a.which == "schur" else d.fundamental_group()
    return {"type": a.type, "group": g}, 0


def _rootdata_poincare(a):
    from .rootdata import RootDataError, poincare_W, poincare_flag, weight_shear_cohomology

    rs, P, Q = _type_and_parabolics(a)
    try:
        flag = poincare_flag(a.type, P, Q)
        betti = weight_shear_cohomology(a.type, P, Q)
    except RootDataError as e:
        raise InputError(str(e)) from None
    return {"P_W": poincare_W(a.type), "P_flag_in_q": flag, "even_betti": betti}, 0


def _rootdata_split(a):
    from .rootdata import RootDataError, splitting_criterion

    rs, P, Q = _type_and_parabolics(a)
    try:
        res = splitting_criterion(a.type, P, Q, parse_q(a.q))
    except (RootDataError, ValueError) as e:
        raise InputError(f"q: {e}" if "invertible" in str(e) else str(e)) from None
    return {"splits": res.splits, "value": res.value, "polynomial": res.polynomial}, 0


def _rootdata_brionpeyre(a):
    from .rootdata import RootDataError, brion_peyre_check, parabolic_pairs

    rs, P, Q = _type_and_parabolics(a)
    pairs = [(P, Q if Q is not None else list(range(rs.rank)))] if a.P or a.Q else \
        parabolic_pairs(rs.rank)
    try:
        results = [{"P": [i + 1 for i in p], "Q": [i + 1 for i in q],
                    "divides": brion_peyre_check(a.type, p, q)} for p, q in pairs]
    except RootDataError as e:
        raise InputError(str(e)) from None
    ok = all(r["divides"] for r in results)
    return {"holds": ok, "pairs": results}, 0 if ok else 1


def _rootdata_minuscule(a):
    from .rootdata import RootDataError, minuscule_lift

    d = parse_datum(a)
    w = _int_list(a.weight, "weight")
    try:
        lift = minuscule_lift(d, w)
    except RootDataError as e:
        raise InputError(f"weight: {e}") from None
    return {"weight": w, "minuscule_lift": list(lift)}, 0


def _orbit_diagram(a):
    from .nilpotent import BUILTIN_DIAGRAMS

    if a.builtin:
        if a.builtin not in BUILTIN_DIAGRAMS:
            raise InputError("builtin: choose from " + ", ".join(BUILTIN_DIAGRAMS))
        return BUILTIN_DIAGRAMS[a.builtin]
    if a.partition:
        from .nilpotent import partition_diagram
        p = _int_list(a.partition, "partition")
        try:
            return f"A{sum(p) - 1}", partition_diagram(p)
        except ValueError as e:
            raise InputError(f"partition: {e}") from None
    if not a.type or a.weights is None:
        raise InputError("weights: give --type with --weights, --partition or --builtin")
    return a.type, _int_list(a.weights, "weights")


def _orbit(a):
    from .nilpotent import orbit_report
    from .rootdata import RootDataError

    t, d = _orbit_diagram(a)
    levi = None
    if a.which == "slicedim":
        levi = _int_list(a.P, "P", one_based=True) or []
    try:
        rep = orbit_report(t, d, levi)
    except RootDataError as e:
        raise InputError(f"weights: {e}") from None
    except ArithmeticError as e:
        raise InputError(f"weights: {e}") from None
    if a.which == "grading":
        rep = {"grading": rep["grading"]}
    elif a.which == "slicedim":
        rep = {"partial_resolution_slice": rep["partial_resolution_slice"],
               "orbit_dim": rep["orbit_dim"]}
    if a.partition:
        from .nilpotent import type_A_rank_oracle
        rep["type_A_rank_oracle"] = type_A_rank_oracle(_int_list(a.partition, "partition"))
    return rep, 0


def _gcoh_compute(a):
    from .groups import CapExceeded, cohomology

    G, _ = parse_group(a.group)
    M, _ = parse_gmodule(G, a.module)
    if not 0 <= a.degree <= 3:
        raise InputError("degree: must lie in 0..3")
    try:
        h = cohomology(G, M, a.degree)
    except CapExceeded as e:
        raise InputError(str(e)) from None
    return {"group_order": G.order, "degree": a.degree, "cohomology": h}, 0


def _gcoh_schur(a):
    from .groups import CapExceeded, schur_multiplier

    G, _ = parse_group(a.group)
    try:
        m = schur_multiplier(G)
    except CapExceeded as e:
        raise InputError(str(e)) from None
    return {"group_order": G.order, "schur_multiplier": m}, 0


def _gcoh_claims(a):
    from .groups import group_claims_report

    claims = group_claims_report()
    ok = all(c["pass"] is not False for c in claims)
    return {"claims": claims, "all_pass": ok}, 0 if ok else 1


def _gcoh_product(a):
    from .groups import product_formula_check

    A, _ = parse_group(a.first)
    B, _ = parse_group(a.second)
    rep = product_formula_check(A, B)
    return rep, 0 if rep["holds"] else 1


def _gcoh_semidirect(a):
    from .groups import semidirect_sequence_check

    orders = _int_list(a.orders, "orders")
    gamma, _ = parse_group(a.gamma)
    action = _json_or_file(a.action, "action")
    if not isinstance(action, list) or len(action) != len(gamma.generators):
        raise InputError("action: expected one matrix per generator of gamma")
    try:
        rep = semidirect_sequence_check(orders, gamma, action)
    except ValueError as e:
        raise InputError(f"action: {e}") from None
    return rep, 0 if rep["holds"] else 1


def _gcoh_central(a):
    from .groups import central_sequence_check

    G, _ = parse_group(a.group)
    Z = G.center() if a.central in (None, "center") else _int_list(a.central, "central")
    try:
        rep = central_sequence_check(G, Z)
    except ValueError as e:
        raise InputError(f"central: {e}") from None
    return rep, 0 if rep["holds"] else 1


def _accept(a):
    from .acceptance import run_suite

    sel = _int_list(a.only, "only")
    try:
        results = run_suite(sel)
    except KeyError as e:
        raise InputError(f"only: {e.args[0]}") from None
    for r in results:
        print(r.line(), file=sys.stderr)
    ok = all(r.ok for r in results)
    return {"all_pass": ok, "criteria": [r.to_json() for r in results]}, 0 if ok else 1


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bgtrace", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    p.add_argument("--json", action="store_true", default=True,
                   help="JSON output (the only format; kept for compatibility)")
    p.add_argument("--output", "-o", help="also write the report to this file")
    top = p.add_subparsers(dest="group", required=True)

    def algebra_arg(sp, default=None):
        sp.add_argument("--algebra", default=default, required=default is None,
                        help="built-in name (" + ", ".join(BUILTIN_ALGEBRAS) + ") or JSON file")

    k = top.add_parser("koszul", help="Koszul checks").add_subparsers(dest="cmd", required=True)
    sp = k.add_parser("check")
    algebra_arg(sp)
    sp.add_argument("--depth", type=_nonneg, default=5)
    sp.set_defaults(func=_koszul_check)
    sp = k.add_parser("resolve")
    algebra_arg(sp)
    sp.add_argument("--simple", type=int, default=0, help="vertex index of the simple module")
    sp.add_argument("--length", type=_nonneg, default=4)
    sp.set_defaults(func=_koszul_resolve)
    sp = k.add_parser("dual")
    algebra_arg(sp)
    sp.add_argument("--max-n", dest="max_n", type=_nonneg, default=4)
    sp.set_defaults(func=_koszul_dual)

    h = top.add_parser("hh", help="Hochschild homology").add_subparsers(dest="cmd", required=True)
    sp = h.add_parser("compute")
    algebra_arg(sp)
    sp.add_argument("--bimodule", help='"A", "DA", {"free": [i, j]}, {"simple": [i, j]} or a list')
    sp.add_argument("--twist", default="id", help="id, scale:<t> or perm:<i,j,...>")
    sp.add_argument("--min-degree", dest="min_degree", type=_nonpos, default=-3)
    sp.add_argument("--compare", action="store_true", help="cross-check with the cyclic bar model")
    sp.set_defaults(func=_hh_compute)

    b = top.add_parser("bg", help="equivariant trace complexes").add_subparsers(
        dest="cmd", required=True)
    for name, func in [("trace", _bg_trace), ("homotopy", _bg_homotopy)]:
        sp = b.add_parser(name)
        sp.add_argument("--action", default="dual-sign",
                        help=", ".join(list(BUILTIN_ACTIONS) + ["sign", "trivial"]))
        algebra_arg(sp, default="dual")
        sp.add_argument("--bimodule")
        sp.add_argument("--twist", default="id")
        sp.add_argument("--depth", type=_positive, default=4)
        if name == "trace":
            sp.add_argument("--bounded", action="store_true", help="use the bounded Koszul model")
        else:
            sp.add_argument("--r", help="central invariant element {basis index: coefficient}")
        sp.set_defaults(func=func)
    sp = b.add_parser("inertia")
    sp.add_argument("--group", required=True)
    sp.add_argument("--perms", help="generator permutations of X (JSON)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-points", dest="max_points", type=_positive, default=8)
    sp.set_defaults(func=_bg_inertia)

    r = top.add_parser("rootdata", help="root data and flag varieties").add_subparsers(
        dest="cmd", required=True)
    for name in ["schur", "pi1", "poincare", "split", "brionpeyre", "minuscule"]:
        sp = r.add_parser(name)
        sp.add_argument("--type", required=True)
        if name in ("schur", "pi1", "minuscule"):
            sp.add_argument("--X", default="weight", help="weight, root or a JSON lattice")
        if name in ("poincare", "split", "brionpeyre"):
            sp.add_argument("--P", help="simple roots of the smaller Levi (1-based)")
            sp.add_argument("--Q", help="simple roots of the larger Levi (1-based)")
        if name == "split":
            sp.add_argument("--q", required=True, help="rational or cyclotomic:<n>:<k>")
        if name == "minuscule":
            sp.add_argument("--weight", required=True, help="fundamental-weight coordinates")
        func = {"poincare": _rootdata_poincare, "split": _rootdata_split,
                "brionpeyre": _rootdata_brionpeyre, "minuscule": _rootdata_minuscule}
        sp.set_defaults(func=func.get(name, _rootdata_group), which=name)

    o = top.add_parser("orbit", help="nilpotent orbit gradings").add_subparsers(
        dest="cmd", required=True)
    for name in ["grading", "dims", "slicedim"]:
        sp = o.add_parser(name)
        sp.add_argument("--type")
        sp.add_argument("--weights", help="diagram weights in Bourbaki order")
        sp.add_argument("--builtin")
        sp.add_argument("--partition", help="Jordan type in type A")
        if name == "slicedim":
            sp.add_argument("--P", help="simple roots of the Levi (1-based)")
        sp.set_defaults(func=_orbit, which=name)

    g = top.add_parser("gcoh", help="finite group cohomology").add_subparsers(
        dest="cmd", required=True)
    sp = g.add_parser("compute")
    sp.add_argument("--group", required=True)
    sp.add_argument("--module", help="Z, sl3-lattice or a JSON module")
    sp.add_argument("--degree", type=int, required=True)
    sp.set_defaults(func=_gcoh_compute)
    sp = g.add_parser("schur")
    sp.add_argument("--group", required=True)
    sp.set_defaults(func=_gcoh_schur)
    sp = g.add_parser("claims", aliases=["section4"], help="finite group multiplier claims")
    sp.set_defaults(func=_gcoh_claims)
    sp = g.add_parser("product")
    sp.add_argument("--first", required=True)
    sp.add_argument("--second", required=True)
    sp.set_defaults(func=_gcoh_product)
    sp = g.add_parser("semidirect")
    sp.add_argument("--orders", required=True, help="invariant factors of N")
    sp.add_argument("--gamma", required=True)
    sp.add_argument("--action", required=True, help="one integer matrix per generator of gamma")
    sp.set_defaults(func=_gcoh_semidirect)
    sp = g.add_parser("central")
    sp.add_argument("--group", required=True)
    sp.add_argument("--central", help="element indices, or center")
    sp.set_defaults(func=_gcoh_central)

    sp = top.add_parser("accept", help="run the acceptance suite")
    sp.add_argument("--only", help="comma separated criterion numbers")
    sp.set_defaults(func=_accept, cmd="run")
    return p


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonpos(text):
    v = int(text)
    if v > 0:
        raise argparse.ArgumentTypeError("must be at most 0")
    return v


def _file_contents(args: argparse.Namespace) -> dict:
    """Arguments with file paths replaced by their parsed contents."""
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in ("func", "no_cache", "output", "json"):
            continue
        if isinstance(v, str) and os.path.isfile(v):
            v = {"file": load_json(v, k)}
        out[k] = v
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = f"{args.group} {args.cmd}"
    use_cache = not args.no_cache and args.group != "accept"
    try:
        key = cache_key(command, _file_contents(args)) if use_cache else None
        hit = cache_lookup(key) if key else None
        if hit:
            text, code = hit
            print("cached", file=sys.stderr)
        else:
            report, code = args.func(args)
            text = render(report)
            if key:
                cache_store(key, text, code)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    if args.output:
        Path(args.output).write_text(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
