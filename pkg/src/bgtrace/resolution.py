"""Minimal graded projective resolutions of right modules over basic graded algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import BasisElement, GradedAlgebra, GradedModule, _axpy
from .exact import QQ, ExactMatrix, Subspace

Vec = Dict[int, object]


class ResolutionCapExceeded(RuntimeError):
    pass


@dataclass
class FreeTerm:
    """P = sum over generators g of e_{block(g)} B, shifted by weight(g).

    Basis: pairs (g, b) with b a basis element of B and target(b) = block(g).
    """

    algebra: GradedAlgebra
    gen_weights: List[int]
    gen_blocks: List[int]
    basis: List[Tuple[int, int]] = field(default_factory=list)
    index: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        B = self.algebra
        for g, j in enumerate(self.gen_blocks):
            for b in B.component(target=j):
                self.index[(g, b)] = len(self.basis)
                self.basis.append((g, b))

    @property
    def dim(self):
        return len(self.basis)

    @property
    def rank(self):
        return len(self.gen_blocks)

    def weight(self, k) -> int:
        g, b = self.basis[k]
        return self.gen_weights[g] + self.algebra.basis[b].weight

    def block(self, k) -> int:
        return self.algebra.basis[self.basis[k][1]].source

    def act(self, vec: Vec, c: int) -> Vec:
        """vec . c for a basis element c of B."""
        B = self.algebra
        out: Vec = {}
        for k, v in vec.items():
            g, b = self.basis[k]
            for bc, coef in B.product_basis(b, c).items():
                _axpy(out, {self.index[(g, bc)]: 1}, v * coef)
        return out

    def components(self) -> Dict[Tuple[int, int], List[int]]:
        out: Dict[Tuple[int, int], List[int]] = {}
        for k in range(self.dim):
            out.setdefault((self.weight(k), self.block(k)), []).append(k)
        return out


@dataclass
class MinimalResolution:
    """P_n -> ... -> P_0 -> X with ``maps[n]`` the matrix of P_n -> P_{n-1}
    (``maps[0]`` is P_0 -> X)."""

    algebra: GradedAlgebra
    terms: List[FreeTerm]
    maps: List[ExactMatrix]
    complete: bool  # True when the last kernel vanished

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def generator_table(self) -> Dict[int, Dict[Tuple[int, int], int]]:
        """n -> {(block, weight): multiplicity}."""
        out = {}
        for n, t in enumerate(self.terms):
            row: Dict[Tuple[int, int], int] = {}
            for w, j in zip(t.gen_weights, t.gen_blocks):
                row[(j, w)] = row.get((j, w), 0) + 1
            out[n] = row
        return out

    def is_minimal(self) -> bool:
        """Every differential lands in P J (coefficients in the radical)."""
        B = self.algebra
        for n in range(1, len(self.terms)):
            t = self.terms[n - 1]
            for (r, c), _ in self.maps[n].entries():
                if B.basis[t.basis[r][1]].weight == 0:
                    return False
        return True


def _kernel_by_component(mat: ExactMatrix, src_components, tgt_components) -> List[Vec]:
    """Homogeneous kernel basis of a map that preserves (weight, block)."""
    out = []
    for key, cols in sorted(src_components.items()):
        rows = tgt_components.get(key, [])
        sub = mat.submatrix(rows, cols)
        for v in sub.kernel_basis().column_dicts():
            out.append({cols[k]: x for k, x in v.items()})
    return out


def _minimal_generators(act, comps: Dict[Tuple[int, int], List[Vec]], radical: Sequence[int],
                        key_of, dim: int) -> List[Tuple[Tuple[int, int], Vec]]:
    """Vectors spanning K modulo K J, one component (weight, block) at a time."""
    kj: Dict[Tuple[int, int], List[Vec]] = {}
    for vecs in comps.values():
        for v in vecs:
            for r in radical:
                img = act(v, r)
                if img:
                    kj.setdefault(key_of(next(iter(img))), []).append(img)
    gens = []
    for key in sorted(comps):
        chosen = list(kj.get(key, []))
        span = Subspace(QQ, dim, chosen)
        for v in comps[key]:
            if not span.contains(v):
                gens.append((key, v))
                chosen.append(v)
                span = Subspace(QQ, dim, chosen)
    return gens


def minimal_resolution(module: GradedModule, length: int,
                       max_generators: int = 10_000) -> MinimalResolution:
    """Minimal graded projective resolution of a right module, up to P_length."""
    B = module.algebra
    if module.side != "right":
        raise ValueError("resolutions are computed for right modules")
    radical = B.radical()

    def mod_act(v, r):
        return module.action[r].apply(v)

    comps: Dict[Tuple[int, int], List[Vec]] = {}
    for k in range(module.dim):
        comps.setdefault((module.weights[k], module.blocks[k]), []).append({k: 1})

    def mod_key(k):
        return (module.weights[k], module.blocks[k])

    gens = _minimal_generators(mod_act, comps, radical, mod_key, module.dim)
    terms: List[FreeTerm] = []
    maps: List[ExactMatrix] = []
    target_dim = module.dim
    target_components = {key: [next(iter(v)) for v in vs] for key, vs in comps.items()}
    target_act = mod_act
    complete = False
    for n in range(length + 1):
        if not gens:
            complete = True
            break
        if len(gens) > max_generators:
            raise ResolutionCapExceeded(f"more than {max_generators} generators at step {n}")
        term = FreeTerm(B, [key[0] for key, _ in gens], [key[1] for key, _ in gens])
        cols = []
        for g, b in term.basis:
            cols.append(target_act(gens[g][1], b))
        mat = ExactMatrix.from_columns(QQ, target_dim, cols)
        terms.append(term)
        maps.append(mat)
        src_components = term.components()
        kern = _kernel_by_component(mat, src_components, target_components)
        kcomps: Dict[Tuple[int, int], List[Vec]] = {}
        for v in kern:
            k0 = next(iter(v))
            kcomps.setdefault((term.weight(k0), term.block(k0)), []).append(v)
        gens = (_minimal_generators(term.act, kcomps, radical,
                                    lambda k, t=term: (t.weight(k), t.block(k)), term.dim)
                if kern else [])
        target_dim = term.dim
        target_components = src_components
        target_act = term.act
    else:
        complete = not gens
    return MinimalResolution(B, terms, maps, complete)


# ---------------------------------------------------------------------------
# enveloping algebra


def enveloping_algebra(A: GradedAlgebra) -> GradedAlgebra:
    """A^e = A^op (x) A with (a (x) b)(a' (x) b') = a'a (x) bb'.

    Vertex (i, j) is e_i (x) e_j; a right A^e-module is an A-bimodule via
    m . (a (x) b) = a m b.
    """
    n = len(A.vertices)
    pairs = [(a, b) for a in range(A.dim) for b in range(A.dim)]
    index = {p: k for k, p in enumerate(pairs)}
    basis = []
    for a, b in pairs:
        ba, bb = A.basis[a], A.basis[b]
        src = ba.target * n + bb.source
        tgt = ba.source * n + bb.target
        basis.append(BasisElement(ba.weight + bb.weight, src, tgt, f"{ba.name}|{bb.name}"))
    prods: Dict[Tuple[int, int], Vec] = {}
    for (a, b), k in index.items():
        for (a2, b2), k2 in index.items():
            left = A.product_basis(a2, a)
            if not left:
                continue
            right = A.product_basis(b, b2)
            if not right:
                continue
            out = {}
            for x, cx in left.items():
                for y, cy in right.items():
                    out[index[(x, y)]] = out.get(index[(x, y)], 0) + cx * cy
            prods[(k, k2)] = {z: v for z, v in out.items() if v}
    verts = [f"{A.vertices[i]}|{A.vertices[j]}" for i in range(n) for j in range(n)]
    return GradedAlgebra(verts, basis, prods, check=False)


def bimodule_as_right_module(Ae: GradedAlgebra, A: GradedAlgebra, weights, left_blocks,
                             right_blocks, left, right) -> GradedModule:
    """View an A-bimodule as a right A^e-module: m . (a (x) b) = a m b."""
    n = len(A.vertices)
    action = []
    for a in range(A.dim):
        for b in range(A.dim):
            action.append(left[a] @ right[b])
    blocks = [lb * n + rb for lb, rb in zip(left_blocks, right_blocks)]
    return GradedModule(Ae, "right", weights, blocks, action, check=False)
