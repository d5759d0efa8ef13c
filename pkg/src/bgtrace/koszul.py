"""Bar and Koszul complexes, quadratic dual spaces and Koszulity certificates.

Tensors are tuples of algebra basis indices ``(a_0, ..., a_k)`` read as
``a_0 (x) ... (x) a_k``; contracting neighbours means multiplying
``a_i * a_{i+1}``.  Over the semisimple ring k^I only composable tuples
(``source(a_i) == target(a_{i+1})``) survive.

All complexes are cohomologically indexed; the degree-1 term, when present,
is the augmentation target A.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import GradedAlgebra, _axpy, simple_module
from .exact import QQ, ChainComplex, ExactMatrix, Subspace
from .resolution import minimal_resolution

Vec = Dict[int, object]
Tensor = Tuple[int, ...]


# ---------------------------------------------------------------------------
# tensor bookkeeping


def _tensors(A: GradedAlgebra, length: int, composable: bool,
             middle: Optional[Sequence[int]] = None) -> List[Tensor]:
    """All tensors of the given length; ``middle`` restricts interior factors."""
    full = list(range(A.dim))
    slots = [full] + [list(middle) if middle is not None else full] * (length - 2) + [full]
    if length == 1:
        slots = [full]
    if not composable:
        return list(itertools.product(*slots))
    out = []

    def extend(prefix, k):
        if k == length:
            out.append(tuple(prefix))
            return
        for b in slots[k]:
            if prefix and A.basis[prefix[-1]].source != A.basis[b].target:
                continue
            prefix.append(b)
            extend(prefix, k + 1)
            prefix.pop()

    extend([], 0)
    return out


def _contract(A: GradedAlgebra, t: Tensor, i: int) -> Dict[Tensor, object]:
    """Multiply factors i and i+1."""
    out = {}
    for c, v in A.product_basis(t[i], t[i + 1]).items():
        out[t[:i] + (c,) + t[i + 2:]] = v
    return out


def _tensor_weight(A: GradedAlgebra, t: Tensor) -> int:
    return sum(A.basis[a].weight for a in t)


def _face_complex(A: GradedAlgebra, depth: int, composable: bool,
                  middle: Optional[Sequence[int]] = None) -> ChainComplex:
    """Degrees -depth..1: term(-m) = (m+2)-fold tensors, term(1) = A."""
    terms: Dict[int, List[Tensor]] = {1: [(a,) for a in range(A.dim)]}
    for m in range(depth + 1):
        terms[-m] = _tensors(A, m + 2, composable, middle)
    index = {d: {t: k for k, t in enumerate(ts)} for d, ts in terms.items()}
    diffs = {}
    for m in range(depth + 1):
        src, d = terms[-m], -m
        tgt_index = index[d + 1]
        ents: Dict[Tuple[int, int], object] = {}
        for col, t in enumerate(src):
            for i in range(m + 1):
                sign = -1 if i % 2 else 1
                for u, v in _contract(A, t, i).items():
                    row = tgt_index.get(u)
                    if row is None:
                        raise ArithmeticError("face map leaves the complex")
                    ents[(row, col)] = ents.get((row, col), 0) + sign * v
        diffs[d] = ExactMatrix(QQ, len(terms[d + 1]), len(src), ents)
    dims = {d: len(ts) for d, ts in terms.items()}
    weights = {d: [_tensor_weight(A, t) for t in ts] for d, ts in terms.items()}
    c = ChainComplex(QQ, dims, diffs, weights=weights)
    c.bases = terms
    return c


def bar_complex(A: GradedAlgebra, depth: int) -> ChainComplex:
    """term(-m) = A^{(x)(m+2)} over k, differential the alternating sum of contractions."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    return _face_complex(A, depth, composable=False)


def projective_bar_complex(A: GradedAlgebra, depth: int) -> ChainComplex:
    """Tensors over k^I: composable tuples only.  Equals the bar complex when |I| = 1
    and is a quasi-isomorphic subcomplex in general."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    return _face_complex(A, depth, composable=True)


def normalized_bar(A: GradedAlgebra, depth: int) -> ChainComplex:
    """Composable tensors whose interior factors lie in the radical."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    return _face_complex(A, depth, composable=True, middle=A.radical())


def bar_inclusion(A: GradedAlgebra, sub: ChainComplex, big: ChainComplex) -> Dict[int, ExactMatrix]:
    """Degreewise inclusion matrices of one tensor complex into another."""
    out = {}
    for d in sub.dims:
        idx = {t: k for k, t in enumerate(big.bases[d])}
        out[d] = ExactMatrix(QQ, big.term(d), sub.term(d),
                             {(idx[t], k): 1 for k, t in enumerate(sub.bases[d])})
    return out


def simple_bar_complex(A: GradedAlgebra, i: int, j: int, depth: int) -> ChainComplex:
    """L_i (x)_A NBar (x)_A L_j: composable radical tensors r_1 ... r_n with
    target(r_1) = i, source(r_n) = j and only interior contractions."""
    rad = A.radical()
    terms: Dict[int, List[Tensor]] = {}
    for n in range(depth + 1):
        if n == 0:
            terms[0] = [()] if i == j else []
            continue
        ts = [t for t in _tensors(A, n, True, rad) if all(A.basis[a].weight > 0 for a in t)]
        terms[-n] = [t for t in ts if A.basis[t[0]].target == i and A.basis[t[-1]].source == j]
    index = {d: {t: k for k, t in enumerate(ts)} for d, ts in terms.items()}
    diffs = {}
    for n in range(1, depth + 1):
        d = -n
        ents = {}
        for col, t in enumerate(terms[d]):
            for k in range(n - 1):
                sign = -1 if (k + 1) % 2 else 1
                for u, v in _contract(A, t, k).items():
                    row = index[d + 1][u]
                    ents[(row, col)] = ents.get((row, col), 0) + sign * v
        diffs[d] = ExactMatrix(QQ, len(terms[d + 1]), len(terms[d]), ents)
    dims = {d: len(ts) for d, ts in terms.items()}
    weights = {d: [_tensor_weight(A, t) for t in ts] for d, ts in terms.items()}
    return ChainComplex(QQ, dims, diffs, weights=weights)


# ---------------------------------------------------------------------------
# quadratic dual spaces


@dataclass
class QuadraticDualSpaces:
    """Bases of (A^!_n)_{ij} inside composable tensors of weight-one elements.

    ``spaces[n]`` is a Subspace of the span of ``tensors[n]``; every basis
    vector lies in a single block (i, j) with i the target of the first factor
    and j the source of the last.  For n = 0 the tensors are the vertices.
    """

    algebra: GradedAlgebra
    tensors: Dict[int, List[Tensor]]
    spaces: Dict[int, Subspace]
    blocks: Dict[int, List[Tuple[int, int]]]
    max_n: int

    def dims(self, n: int) -> Dict[Tuple[int, int], int]:
        out: Dict[Tuple[int, int], int] = {}
        for b in self.blocks.get(n, []):
            out[b] = out.get(b, 0) + 1
        return out

    def dim(self, n: int, i: Optional[int] = None, j: Optional[int] = None) -> int:
        return sum(v for (a, b), v in self.dims(n).items()
                   if (i is None or a == i) and (j is None or b == j))

    def length(self) -> int:
        """Largest n <= max_n with A^!_n nonzero."""
        return max(n for n in self.spaces if self.spaces[n].dim)

    def vector(self, n: int, k: int) -> Dict[Tensor, object]:
        ts = self.tensors[n]
        return {ts[c]: v for c, v in self.spaces[n].basis[k].items()}

    def coordinates(self, n: int, vec: Dict[Tensor, object]) -> Vec:
        idx = self._index(n)
        return self.spaces[n].coordinates({idx[t]: v for t, v in vec.items()})

    def _index(self, n):
        cache = self.__dict__.setdefault("_idx", {})
        if n not in cache:
            cache[n] = {t: k for k, t in enumerate(self.tensors[n])}
        return cache[n]


def quadratic_dual_spaces(A: GradedAlgebra, max_n: int) -> QuadraticDualSpaces:
    """A^!_n = intersection of the kernels of all interior contractions on A_1^{(x)n}.

    Built as W_n = {v in W_{n-1} (x) A_1 : contracting the last two factors gives 0};
    the other contractions vanish because W_{n-1} already lies in their kernels.
    """
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    verts = range(len(A.vertices))
    a1 = A.component(weight=1)
    tensors: Dict[int, List[Tensor]] = {0: [(i,) for i in verts]}
    spaces: Dict[int, Subspace] = {0: Subspace(QQ, len(A.vertices),
                                               [{i: 1} for i in verts])}
    blocks: Dict[int, List[Tuple[int, int]]] = {0: [(i, i) for i in verts]}
    tensors[1] = [(a,) for a in a1]
    spaces[1] = Subspace(QQ, len(a1), [{k: 1} for k in range(len(a1))])
    blocks[1] = [(A.basis[a].target, A.basis[a].source) for a in a1]
    for n in range(2, max_n + 1):
        ts = [t for t in _tensors(A, n, True, a1) if all(A.basis[x].weight == 1 for x in t)]
        tensors[n] = ts
        index = {t: k for k, t in enumerate(ts)}
        prev = spaces[n - 1]
        cands = []
        for k in range(prev.dim):
            w = {tensors[n - 1][c]: v for c, v in prev.basis[k].items()}
            last_source = A.basis[next(iter(w))[-1]].source
            for a in a1:
                if A.basis[a].target == last_source:
                    cands.append({index[t + (a,)]: v for t, v in w.items()})
        # contract the last two factors; the image lives in tensors with an A_2 entry
        img_index: Dict[Tensor, int] = {}
        cols = []
        for vec in cands:
            col: Vec = {}
            for c, v in vec.items():
                for u, x in _contract(A, ts[c], n - 2).items():
                    r = img_index.setdefault(u, len(img_index))
                    _axpy(col, {r: 1}, v * x)
            cols.append(col)
        mat = ExactMatrix.from_columns(QQ, len(img_index), cols)
        ker = mat.kernel_basis().column_dicts()
        vecs = []
        for kv in ker:
            out: Vec = {}
            for ci, coef in kv.items():
                _axpy(out, cands[ci], coef)
            if out:
                vecs.append(out)
        # RREF over lexicographically ordered tensors, split into blocks
        space = Subspace(QQ, len(ts), vecs)
        spaces[n] = space
        bl = []
        for row in space.basis:
            t = ts[min(row)]
            bl.append((A.basis[t[0]].target, A.basis[t[-1]].source))
        blocks[n] = bl
        _check_interior_kernels(A, ts, space, n)
    return QuadraticDualSpaces(A, tensors, spaces, blocks, max_n)


def _check_interior_kernels(A, ts, space, n):
    for row in space.basis:
        blocks = {(A.basis[ts[c][0]].target, A.basis[ts[c][-1]].source) for c in row}
        if len(blocks) != 1:
            raise ArithmeticError("dual space basis vector mixes blocks")
        for k in range(n - 1):
            acc: Dict[Tensor, object] = {}
            for c, v in row.items():
                for u, x in _contract(A, ts[c], k).items():
                    acc[u] = acc.get(u, 0) + v * x
            if any(acc.values()):
                raise ArithmeticError(f"dual space is not killed by contraction {k}")


# ---------------------------------------------------------------------------
# Koszul complex


@dataclass
class KoszulComplex:
    """Kos^{-n} = sum over blocks of A e_i (x) (A^!_n)_{ij} (x) e_j A."""

    complex: ChainComplex
    duals: QuadraticDualSpaces
    length: int
    stabilized: bool
    bases: Dict[int, List[Tuple[int, int, int]]]  # degree -> (a, dual index, b)
    warning: Optional[str] = None


def _split_first(duals: QuadraticDualSpaces, n: int, k: int) -> Dict[int, Vec]:
    """w = sum_x x (x) w_x with w_x in A^!_{n-1}; returns {x: coords of w_x}."""
    A = duals.algebra
    vec = duals.vector(n, k)
    if n == 1:
        (x,) = next(iter(vec))
        return {x: {A.basis[x].source: vec[(x,)]}}
    parts: Dict[int, Dict[Tensor, object]] = {}
    for t, v in vec.items():
        parts.setdefault(t[0], {})[t[1:]] = v
    return {x: duals.coordinates(n - 1, rest) for x, rest in parts.items()}


def _split_last(duals: QuadraticDualSpaces, n: int, k: int) -> Dict[int, Vec]:
    """w = sum_y w'_y (x) y."""
    A = duals.algebra
    vec = duals.vector(n, k)
    if n == 1:
        (y,) = next(iter(vec))
        return {y: {A.basis[y].target: vec[(y,)]}}
    parts: Dict[int, Dict[Tensor, object]] = {}
    for t, v in vec.items():
        parts.setdefault(t[-1], {})[t[:-1]] = v
    return {y: duals.coordinates(n - 1, rest) for y, rest in parts.items()}


def koszul_complex(A: GradedAlgebra, cap: int = 8, augmented: bool = False) -> KoszulComplex:
    """The Koszul bimodule complex on degrees [-N, 0] (plus A in degree 1 if augmented).

    N is the largest n <= cap with A^!_n nonzero; if A^!_cap is still nonzero the
    complex is truncated at the cap and a warning is attached.
    """
    duals = quadratic_dual_spaces(A, max(cap, 1))
    nonzero = [n for n in range(cap + 1) if duals.spaces[n].dim]
    N = max(nonzero)
    stabilized = N < cap or cap == 0
    warning = None if stabilized else f"A^!_{cap} is nonzero: complex truncated at cap {cap}"
    bases: Dict[int, List[Tuple[int, int, int]]] = {}
    for n in range(N + 1):
        basis = []
        for k, (i, j) in enumerate(duals.blocks[n]):
            for a in A.component(source=i):
                for b in A.component(target=j):
                    basis.append((a, k, b))
        bases[-n] = basis
    index = {d: {t: k for k, t in enumerate(ts)} for d, ts in bases.items()}
    diffs = {}
    for n in range(1, N + 1):
        d = -n
        sign_last = -1 if n % 2 else 1
        first = {k: _split_first(duals, n, k) for k in range(duals.spaces[n].dim)}
        last = {k: _split_last(duals, n, k) for k in range(duals.spaces[n].dim)}
        ents: Dict[Tuple[int, int], object] = {}
        for col, (a, k, b) in enumerate(bases[d]):
            for x, coords in first[k].items():
                for ax, c1 in A.product_basis(a, x).items():
                    for k2, c2 in coords.items():
                        row = index[d + 1][(ax, k2, b)]
                        ents[(row, col)] = ents.get((row, col), 0) + c1 * c2
            for y, coords in last[k].items():
                for yb, c1 in A.product_basis(y, b).items():
                    for k2, c2 in coords.items():
                        row = index[d + 1][(a, k2, yb)]
                        ents[(row, col)] = ents.get((row, col), 0) + sign_last * c1 * c2
        diffs[d] = ExactMatrix(QQ, len(bases[d + 1]), len(bases[d]), ents)
    dims = {d: len(ts) for d, ts in bases.items()}
    weights = {d: [A.basis[a].weight - d + A.basis[b].weight for a, _, b in ts]
               for d, ts in bases.items()}
    if augmented:
        ents = {}
        for col, (a, k, b) in enumerate(bases[0]):
            for c, v in A.product_basis(a, b).items():
                ents[(c, col)] = ents.get((c, col), 0) + v
        diffs[0] = ExactMatrix(QQ, A.dim, len(bases[0]), ents)
        dims[1] = A.dim
        weights[1] = A.weights()
    cx = ChainComplex(QQ, dims, diffs, weights=weights)
    return KoszulComplex(cx, duals, N, stabilized, bases, warning)


def koszul_length(A: GradedAlgebra, cap: int = 8) -> Tuple[int, bool]:
    """(largest n <= cap with A^!_n nonzero, whether A^! vanished before the cap)."""
    duals = quadratic_dual_spaces(A, max(cap, 1))
    N = max(n for n in range(cap + 1) if duals.spaces[n].dim)
    return N, N < cap


@dataclass
class AcyclicityReport:
    acyclic: bool
    first_failure: Optional[int]
    checked_degrees: List[int]
    verified_to_depth: int
    finite: bool
    cohomology: Dict[int, int] = field(default_factory=dict)

    def to_json(self):
        return {"acyclic": self.acyclic, "first_failure": self.first_failure,
                "checked_degrees": self.checked_degrees,
                "verified_to_depth": self.verified_to_depth, "finite": self.finite,
                "cohomology": {str(d): v for d, v in self.cohomology.items()}}


def verify_kos_acyclic(A: GradedAlgebra, depth: int) -> AcyclicityReport:
    """Check exactness of ... -> Kos^{-1} -> Kos^0 -> A -> 0.

    When the complex is truncated at ``depth`` its bottom degree is not checked.
    The first failure is the highest degree with nonzero cohomology.
    """
    kos = koszul_complex(A, cap=depth, augmented=True)
    cx = kos.complex
    lo = -kos.length if kos.stabilized else -kos.length + 1
    degrees = list(range(1, lo - 1, -1))
    coh = cx.cohomology_dims(degrees)
    failure = next((d for d in degrees if coh[d]), None)
    return AcyclicityReport(failure is None, failure, degrees,
                            depth if not kos.stabilized else kos.length,
                            kos.stabilized, coh)


# ---------------------------------------------------------------------------
# Ext of simples and Koszulity


def ext_simples(A: GradedAlgebra, i: int, j: int, max_n: int) -> Dict[int, Dict[int, int]]:
    """n -> {internal weight: dim Ext^n(L_i, L_j)} from a minimal resolution of L_i.

    Internal weight +n corresponds to weight -n in the sign convention where
    Ext of a Koszul algebra is concentrated in weight -n.
    """
    res = minimal_resolution(simple_module(A, i), max_n)
    out: Dict[int, Dict[int, int]] = {n: {} for n in range(max_n + 1)}
    for n, term in enumerate(res.terms):
        for w, b in zip(term.gen_weights, term.gen_blocks):
            if b == j:
                out[n][w] = out[n].get(w, 0) + 1
    return out


def ext_table(A: GradedAlgebra, max_n: int) -> Dict[Tuple[int, int], Dict[int, Dict[int, int]]]:
    verts = range(len(A.vertices))
    out = {}
    for i in verts:
        res = minimal_resolution(simple_module(A, i), max_n)
        for j in verts:
            row: Dict[int, Dict[int, int]] = {n: {} for n in range(max_n + 1)}
            for n, term in enumerate(res.terms):
                for w, b in zip(term.gen_weights, term.gen_blocks):
                    if b == j:
                        row[n][w] = row[n].get(w, 0) + 1
            out[(i, j)] = row
    return out


@dataclass
class KoszulCertificate:
    koszul: bool
    verified_to: int
    violation: Optional[dict]
    ext: Dict[Tuple[int, int], Dict[int, Dict[int, int]]]

    def to_json(self):
        return {
            "koszul": self.koszul,
            "verified_to_degree": self.verified_to,
            "violation": self.violation,
            "ext": {f"{i},{j}": {str(n): {str(w): d for w, d in row.items()}
                                 for n, row in tab.items()}
                    for (i, j), tab in self.ext.items()},
        }


def is_koszul(A: GradedAlgebra, max_n: int) -> KoszulCertificate:
    """Ext^n(L_i, L_j) pure of internal weight n for all n <= max_n."""
    tab = ext_table(A, max_n)
    for n in range(max_n + 1):
        for (i, j), row in sorted(tab.items()):
            for w in sorted(row[n]):
                if w != n:
                    return KoszulCertificate(False, max_n, {
                        "degree": n, "internal_weight": w, "cohomological_weight": -w,
                        "expected_internal_weight": n, "i": i, "j": j}, tab)
    return KoszulCertificate(True, max_n, None, tab)


def verify_dual_ext(A: GradedAlgebra, max_n: int) -> dict:
    """Compare dim (A^!_n)_{ij} with dim Ext^n(L_i, L_j) for n <= max_n."""
    duals = quadratic_dual_spaces(A, max(max_n, 1))
    tab = ext_table(A, max_n)
    rows = []
    ok = True
    for n in range(max_n + 1):
        for (i, j), ext in sorted(tab.items()):
            a = duals.dim(n, i, j)
            e = sum(ext[n].values())
            rows.append({"n": n, "i": i, "j": j, "dual": a, "ext": e})
            ok &= a == e
    return {"holds": ok, "max_n": max_n, "table": rows}
