"""Twisted Hochschild homology of graded algebras.

Two independent models are provided:

* the cyclic bar complex ``A^{(x)n} (x) M`` over the ground field, and
* a minimal projective resolution of A as a bimodule, tensored with M.

For an algebra map F the twisted bimodule ``_F M`` has left action
``a . m = F(a) m``.  Chains ``(x_1, ..., x_n, m)`` are composable morphisms
read right to left, so the faces are

    d_0 = (x_2, ..., x_n, F(x_1) m)
    d_i = (..., x_{i+1} x_i, ...)          for 0 < i < n
    d_n = (x_1, ..., x_{n-1}, m x_n)

and the degeneracy ``s_j`` inserts the unit in position ``j + 1``.
All complexes are cohomologically indexed: chains of length n sit in degree -n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (AlgebraMap, GradedAlgebra, GradedBimodule, GradedModule, _axpy,
                      diagonal_bimodule)
from .exact import QQ, ChainComplex, ExactMatrix, Subspace, solve
from .resolution import (MinimalResolution, bimodule_as_right_module, enveloping_algebra,
                         minimal_resolution)

Vec = Dict[int, object]


# ---------------------------------------------------------------------------
# twisted actions


def twisted_left(M: GradedBimodule, f: AlgebraMap) -> List[ExactMatrix]:
    """Matrices of m -> F(a) m for every basis element a."""
    A = M.algebra
    out = []
    for a in range(A.dim):
        mat = ExactMatrix.zero(QQ, M.dim, M.dim)
        for k, c in f.apply({a: 1}).items():
            mat = mat + M.left[k].scale(c)
        out.append(mat)
    return out


def coinvariants_dim(M: GradedBimodule, f: AlgebraMap) -> int:
    """dim M / span{F(a) m - m a}, computed as a plain cokernel."""
    left = twisted_left(M, f)
    vecs = []
    for a in range(M.algebra.dim):
        diff = left[a] - M.right[a]
        vecs.extend(v for v in diff.column_dicts() if v)
    return M.dim - Subspace(QQ, M.dim, vecs).dim


# ---------------------------------------------------------------------------
# cyclic bar complex


class CyclicBar:
    """Basis and face maps of the twisted cyclic bar complex up to a given depth."""

    def __init__(self, A: GradedAlgebra, M: GradedBimodule, f: AlgebraMap, depth: int):
        if depth < 0:
            raise ValueError("depth must be non-negative")
        if M.algebra is not A or f.source is not A:
            raise ValueError("bimodule and twist must live over the same algebra")
        self.algebra = A
        self.module = M
        self.twist = f
        self.depth = depth
        self.left = twisted_left(M, f)
        self.bases: Dict[int, List[Tuple[int, ...]]] = {}
        self.index: Dict[int, Dict[Tuple[int, ...], int]] = {}
        for n in range(depth + 1):
            basis = [xs + (m,) for xs in itertools.product(range(A.dim), repeat=n)
                     for m in range(M.dim)]
            self.bases[-n] = basis
            self.index[-n] = {t: k for k, t in enumerate(basis)}

    def weight(self, t: Tuple[int, ...]) -> int:
        A = self.algebra
        return sum(A.basis[x].weight for x in t[:-1]) + self.module.weights[t[-1]]

    def face(self, i: int, t: Tuple[int, ...]) -> Dict[Tuple[int, ...], object]:
        """The i-th face of a basis chain of length n = len(t) - 1."""
        A, M = self.algebra, self.module
        n = len(t) - 1
        xs, m = t[:-1], t[-1]
        out: Dict[Tuple[int, ...], object] = {}
        if i == 0:
            for mm, c in self.left[xs[0]].apply({m: 1}).items():
                out[xs[1:] + (mm,)] = c
        elif i == n:
            for mm, c in M.right[xs[-1]].apply({m: 1}).items():
                out[xs[:-1] + (mm,)] = c
        else:
            for y, c in A.product_basis(xs[i], xs[i - 1]).items():
                out[xs[:i - 1] + (y,) + xs[i + 1:] + (m,)] = c
        return out

    def degeneracy(self, j: int, t: Tuple[int, ...], insert: Optional[Vec] = None
                   ) -> Dict[Tuple[int, ...], object]:
        """Insert ``insert`` (default the unit) in position j + 1."""
        A = self.algebra
        elem = A.unit() if insert is None else insert
        xs, m = t[:-1], t[-1]
        return {xs[:j] + (y,) + xs[j:] + (m,): c for y, c in elem.items()}

    def _matrix(self, src_deg: int, tgt_deg: int, fn) -> ExactMatrix:
        tgt = self.index[tgt_deg]
        ents: Dict[Tuple[int, int], object] = {}
        for col, t in enumerate(self.bases[src_deg]):
            for u, v in fn(t).items():
                key = (tgt[u], col)
                s = ents.get(key, 0) + v
                if s:
                    ents[key] = s
                else:
                    ents.pop(key, None)
        return ExactMatrix(QQ, len(self.bases[tgt_deg]), len(self.bases[src_deg]), ents)

    def face_matrix(self, i: int, n: int) -> ExactMatrix:
        return self._matrix(-n, -n + 1, lambda t: self.face(i, t))

    def degeneracy_matrix(self, j: int, n: int, insert: Optional[Vec] = None) -> ExactMatrix:
        """s_j from chains of length n to length n + 1."""
        return self._matrix(-n, -n - 1, lambda t: self.degeneracy(j, t, insert))

    def differential(self, n: int) -> ExactMatrix:
        """sum_i (-1)^i d_i from degree -n to -n + 1."""

        def d(t):
            out: Dict[Tuple[int, ...], object] = {}
            for i in range(n + 1):
                sign = -1 if i % 2 else 1
                for u, v in self.face(i, t).items():
                    out[u] = out.get(u, 0) + sign * v
            return out

        return self._matrix(-n, -n + 1, d)

    def complex(self) -> ChainComplex:
        dims = {d: len(b) for d, b in self.bases.items()}
        diffs = {-n: self.differential(n) for n in range(1, self.depth + 1)}
        weights = {d: [self.weight(t) for t in b] for d, b in self.bases.items()}
        return ChainComplex(QQ, dims, diffs, weights=weights)


def cyclic_bar(A: GradedAlgebra, M: GradedBimodule, f: Optional[AlgebraMap] = None,
               depth: int = 3) -> ChainComplex:
    """Twisted cyclic bar complex on degrees [-depth, 0]; only degrees above -depth
    are reliable."""
    f = f or AlgebraMap.identity(A)
    return CyclicBar(A, M, f, depth).complex()


# ---------------------------------------------------------------------------
# resolution model


@dataclass
class BimoduleResolution:
    algebra: GradedAlgebra
    enveloping: GradedAlgebra
    resolution: MinimalResolution
    augmented: ChainComplex

    @property
    def length(self) -> int:
        return self.resolution.length

    @property
    def complete(self) -> bool:
        return self.resolution.complete

    def generators(self) -> Dict[int, Dict[Tuple[int, int, int], int]]:
        """n -> {(i, j, weight): multiplicity} for summands A e_i (x) e_j A."""
        nv = len(self.algebra.vertices)
        out = {}
        for n, row in self.resolution.generator_table().items():
            out[n] = {(v // nv, v % nv, w): k for (v, w), k in row.items()}
        return out


def minimal_bimodule_resolution(A: GradedAlgebra, length_cap: int) -> BimoduleResolution:
    """Minimal graded projective resolution of A as a bimodule, checked to be exact."""
    Ae = enveloping_algebra(A)
    D = diagonal_bimodule(A)
    module = bimodule_as_right_module(Ae, A, D.weights, D.left_blocks, D.right_blocks,
                                      D.left, D.right)
    res = minimal_resolution(module, length_cap)
    L = res.length
    dims = {1: A.dim}
    diffs = {0: res.maps[0]} if res.terms else {}
    weights = {1: A.weights()}
    for n, term in enumerate(res.terms):
        dims[-n] = term.dim
        weights[-n] = [term.weight(k) for k in range(term.dim)]
        if n:
            diffs[-n] = res.maps[n]
    aug = ChainComplex(QQ, dims, diffs, weights=weights)
    lo = -L if res.complete else -L + 1
    coh = aug.cohomology_dims(range(lo, 2))
    bad = [d for d, v in coh.items() if v]
    if bad:
        raise ArithmeticError(f"bimodule resolution is not exact in degrees {bad}")
    if not res.is_minimal():
        raise ArithmeticError("bimodule resolution is not minimal")
    return BimoduleResolution(A, Ae, res, aug)


def _tensor_with_resolution(bres: BimoduleResolution, M: GradedBimodule, f: AlgebraMap,
                            length: int) -> ChainComplex:
    """P (x)_{A^e} _F M on degrees [-length, 0]."""
    A, Ae = bres.algebra, bres.enveloping
    res = bres.resolution
    nv = len(A.vertices)
    left = twisted_left(M, f)
    # (a (x) b) . m = F(b) m a
    def act(c: int, vec: Vec) -> Vec:
        a, b = divmod(c, A.dim)
        return left[b].apply(M.right[a].apply(vec))

    blocks = {}
    for v in range(nv * nv):
        e = Ae.idempotents[v]
        blocks[v] = [k for k in range(M.dim) if act(e, {k: 1}) == {k: 1}]
    bases: Dict[int, List[Tuple[int, int]]] = {}
    index: Dict[int, Dict[Tuple[int, int], int]] = {}
    weights: Dict[int, List[int]] = {}
    top = min(length, len(res.terms) - 1)
    for n in range(top + 1):
        term = res.terms[n]
        basis = [(g, k) for g, v in enumerate(term.gen_blocks) for k in blocks[v]]
        bases[-n] = basis
        index[-n] = {p: i for i, p in enumerate(basis)}
        weights[-n] = [term.gen_weights[g] + M.weights[k] for g, k in basis]
    diffs = {}
    for n in range(1, top + 1):
        term, prev = res.terms[n], res.terms[n - 1]
        mat = res.maps[n]
        cols = mat.column_dicts()
        ents: Dict[Tuple[int, int], object] = {}
        for col, (g, k) in enumerate(bases[-n]):
            e = Ae.idempotents[term.gen_blocks[g]]
            for r, coef in cols[term.index[(g, e)]].items():
                h, c = prev.basis[r]
                for kk, v in act(c, {k: 1}).items():
                    key = (index[-n + 1][(h, kk)], col)
                    s = ents.get(key, 0) + coef * v
                    if s:
                        ents[key] = s
                    else:
                        ents.pop(key, None)
        diffs[-n] = ExactMatrix(QQ, len(bases[-n + 1]), len(bases[-n]), ents)
    dims = {d: len(b) for d, b in bases.items()} or {0: 0}
    return ChainComplex(QQ, dims, diffs, weights=weights if bases else None)


@dataclass
class HochschildReport:
    """Hochschild homology dimensions keyed by cohomological degree and weight."""

    by_weight: Dict[int, Dict[int, int]]
    reliable_from: int
    resolution_length: int
    resolution_complete: bool

    @property
    def dims(self) -> Dict[int, int]:
        return {d: sum(r.values()) for d, r in self.by_weight.items()}

    def to_json(self):
        return {"degrees": {str(d): {str(w): v for w, v in row.items()}
                            for d, row in sorted(self.by_weight.items())},
                "reliable_from": self.reliable_from,
                "resolution_length": self.resolution_length,
                "resolution_complete": self.resolution_complete}


def hochschild_homology(A: GradedAlgebra, M: Optional[GradedBimodule] = None,
                        f: Optional[AlgebraMap] = None, min_degree: int = -3,
                        resolution: Optional[BimoduleResolution] = None) -> HochschildReport:
    """HH of A with coefficients in _F M in degrees [min_degree, 0] via a minimal
    bimodule resolution."""
    M = M or diagonal_bimodule(A)
    f = f or AlgebraMap.identity(A)
    length = -min_degree + 1
    bres = resolution or minimal_bimodule_resolution(A, length)
    cx = _tensor_with_resolution(bres, M, f, length)
    degrees = range(min_degree, 1)
    split = cx.cohomology_by_weight([d for d in degrees if d >= cx.lo]) if cx.dims else {}
    by_weight = {d: dict(split.get(d, {})) for d in degrees}
    return HochschildReport(by_weight, min_degree, bres.length, bres.complete)


def compare_models(A: GradedAlgebra, M: GradedBimodule, f: AlgebraMap, depth: int) -> dict:
    """Cyclic bar versus resolution model in degrees [-depth + 1, 0], weight by weight."""
    bar = cyclic_bar(A, M, f, depth)
    degrees = list(range(-depth + 1, 1))
    left = bar.cohomology_by_weight(degrees)
    right = hochschild_homology(A, M, f, -depth + 1).by_weight
    rows = {d: {"bar": left[d], "resolution": right[d]} for d in degrees}
    return {"agree": all(left[d] == right[d] for d in degrees), "degrees": rows}


# ---------------------------------------------------------------------------
# Hochschild classes


@dataclass
class HochschildClass:
    """The image of a trace element of A in A/[A, A]."""

    trace: Vec
    coordinates: Vec

    def __eq__(self, other):
        return isinstance(other, HochschildClass) and self.coordinates == other.coordinates

    def __add__(self, other):
        t: Vec = dict(self.trace)
        _axpy(t, other.trace, 1)
        c: Vec = dict(self.coordinates)
        _axpy(c, other.coordinates, 1)
        return HochschildClass(t, c)

    def is_zero(self):
        return not self.coordinates


def commutator_space(A: GradedAlgebra) -> Subspace:
    vecs = []
    for a in range(A.dim):
        for b in range(A.dim):
            v = dict(A.product_basis(a, b))
            _axpy(v, A.product_basis(b, a), -1)
            if v:
                vecs.append(v)
    return Subspace(QQ, A.dim, vecs)


def class_of_element(A: GradedAlgebra, x: Vec) -> HochschildClass:
    return HochschildClass(dict(x), commutator_space(A).reduce(x))


def hochschild_class(p: GradedModule, theta: ExactMatrix) -> HochschildClass:
    """Dual-basis trace of an endomorphism of a projective right module."""
    A = p.algebra
    if p.side != "right":
        raise ValueError("expected a right module")
    if theta.shape != (p.dim, p.dim):
        raise ValueError("endomorphism has the wrong shape")
    for a in range(A.dim):
        if theta @ p.action[a] != p.action[a] @ theta:
            raise ValueError("endomorphism is not A-linear")
    res = minimal_resolution(p, 1)
    if res.length > 0 or not res.terms:
        if p.dim == 0:
            return HochschildClass({}, {})
        raise ValueError("module is not projective")
    term, cover = res.terms[0], res.maps[0]
    trace: Vec = {}
    for g, j in enumerate(term.gen_blocks):
        gen = cover.column_dicts()[term.index[(g, A.idempotents[j])]]
        x = solve(cover, theta.apply(gen))
        for k, v in x.items():
            h, b = term.basis[k]
            if h == g:
                _axpy(trace, {b: 1}, v)
    return class_of_element(A, trace)
