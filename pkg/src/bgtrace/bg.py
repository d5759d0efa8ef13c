"""Equivariant trace complexes for finite groups acting on graded algebras.

A finite group G acts on A by weight-preserving automorphisms and compatibly on
a bimodule M; F is an algebra map commuting with the action.  The complex has
terms ``A^{(x)n} (x) M (x) O(G)`` with basis ``(x_1, ..., x_n, m, delta_h)``.
Its faces are those of the cyclic bar complex, except that the wrap-around
face uses the coaction ``v -> (h -> h^-1 v)``: on the ``delta_h`` summand the
left action on M is twisted by ``h^-1 o F``.  G acts diagonally, conjugating
the ``O(G)`` leg: ``g . delta_h = delta_{g h g^-1}``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (AlgebraMap, GradedAlgebra, GradedBimodule, _axpy, diagonal_bimodule,
                      function_algebra)
from .exact import QQ, ChainComplex, ExactMatrix, Subspace
from .groups import FiniteGroup
from .hochschild import CyclicBar, twisted_left
from .koszul import _split_first, _split_last, is_koszul, koszul_length, quadratic_dual_spaces

Vec = Dict[int, object]


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# group actions


def _bfs_order(group: FiniteGroup) -> List[int]:
    return list(group._word)


class FiniteGroupAction:
    """Automorphisms ``maps[g]`` of A, matrices ``module_maps[g]`` on M, and a twist F."""

    def __init__(self, group: FiniteGroup, algebra: GradedAlgebra, maps: Sequence[AlgebraMap],
                 module: GradedBimodule, module_maps: Sequence[ExactMatrix],
                 twist: Optional[AlgebraMap] = None, check: bool = True):
        self.group = group
        self.algebra = algebra
        self.maps = list(maps)
        self.module = module
        self.module_maps = list(module_maps)
        self.twist = twist or AlgebraMap.identity(algebra)
        if check:
            self.check()

    @classmethod
    def from_generators(cls, group: FiniteGroup, algebra: GradedAlgebra,
                        generator_maps: Sequence[AlgebraMap],
                        module: Optional[GradedBimodule] = None,
                        generator_module_maps: Optional[Sequence[ExactMatrix]] = None,
                        twist: Optional[AlgebraMap] = None, check: bool = True):
        """Extend generator images along shortest words; with no module given the
        diagonal bimodule is used and G acts on it through the algebra maps."""
        if len(generator_maps) != len(group.generators):
            raise ValueError("need one algebra map per generator")
        if module is None:
            module = diagonal_bimodule(algebra)
            generator_module_maps = [f.matrix for f in generator_maps]
        elif generator_module_maps is None:
            raise ValueError("module maps are required for a non-diagonal bimodule")
        ident = ExactMatrix.identity(QQ, algebra.dim)
        maps: List[Optional[ExactMatrix]] = [None] * group.order
        mmaps: List[Optional[ExactMatrix]] = [None] * group.order
        maps[0] = ident
        mmaps[0] = ExactMatrix.identity(QQ, module.dim)
        for x in _bfs_order(group):
            if x == 0:
                continue
            prev, k = group._word[x]
            maps[x] = maps[prev] @ generator_maps[k].matrix
            mmaps[x] = mmaps[prev] @ generator_module_maps[k]
        algebra_maps = [AlgebraMap(algebra, m, check=False, name=str(group.labels[g]))
                        for g, m in enumerate(maps)]
        return cls(group, algebra, algebra_maps, module, mmaps, twist, check)

    @classmethod
    def trivial(cls, algebra: GradedAlgebra, module: Optional[GradedBimodule] = None,
                twist: Optional[AlgebraMap] = None):
        module = module or diagonal_bimodule(algebra)
        return cls(FiniteGroup.trivial(), algebra, [AlgebraMap.identity(algebra)], module,
                   [ExactMatrix.identity(QQ, module.dim)], twist)

    def check(self):
        G, A, M = self.group, self.algebra, self.module
        for g in range(G.order):
            self.maps[g].check()
            for h in range(G.order):
                gh = G.mul(g, h)
                if self.maps[g].matrix @ self.maps[h].matrix != self.maps[gh].matrix:
                    raise PreconditionError("algebra action is not a homomorphism")
                if self.module_maps[g] @ self.module_maps[h] != self.module_maps[gh]:
                    raise PreconditionError("module action is not a homomorphism")
            if not self.maps[g].commutes_with(self.twist):
                raise PreconditionError("twist does not commute with the group action")
            rho = self.module_maps[g]
            for a in range(A.dim):
                ga = self.maps[g].apply({a: 1})
                lhs_l = ExactMatrix.zero(QQ, M.dim, M.dim)
                lhs_r = ExactMatrix.zero(QQ, M.dim, M.dim)
                for k, c in ga.items():
                    lhs_l = lhs_l + M.left[k].scale(c)
                    lhs_r = lhs_r + M.right[k].scale(c)
                if rho @ M.left[a] != lhs_l @ rho or rho @ M.right[a] != lhs_r @ rho:
                    raise PreconditionError("module action is not compatible with the algebra action")

    def fiber_twist(self, h: int) -> AlgebraMap:
        """h^-1 o F"""
        return self.maps[self.group.inverse[h]].compose(self.twist)


@dataclass
class FunctionsOnG:
    """O(G) with basis delta_h and the coaction v -> (h -> h^-1 v)."""

    group: FiniteGroup

    def coaction(self, rep: Sequence[ExactMatrix], v: Vec) -> Dict[int, Vec]:
        G = self.group
        return {h: rep[G.inverse[h]].apply(v) for h in range(G.order)}

    def check(self, rep: Sequence[ExactMatrix]) -> bool:
        """Counit: the value at e is v.  Coassociativity: coacting on the value at b
        and evaluating at a gives the value at b a."""
        G = self.group
        n = rep[0].rows
        for k in range(n):
            v = {k: 1}
            rho = self.coaction(rep, v)
            if rho[0] != v:
                return False
            for a in range(G.order):
                for b in range(G.order):
                    if self.coaction(rep, rho[b])[a] != rho[G.mul(b, a)]:
                        return False
        return True


# ---------------------------------------------------------------------------
# the pre-Block-Getzler complex


class BGComplex:
    """Truncated complex on degrees [-depth, 0]; the summand of delta_h is the
    cyclic bar complex twisted by h^-1 o F."""

    def __init__(self, action: FiniteGroupAction, depth: int):
        self.action = action
        self.depth = depth
        G = action.group
        self.fibers = [CyclicBar(action.algebra, action.module, action.fiber_twist(h), depth)
                       for h in range(G.order)]
        self._complex: Optional[ChainComplex] = None
        self._fiber_complexes: Dict[int, ChainComplex] = {}

    # basis: index = h * dim(fiber term) + k
    def term_dim(self, n: int) -> int:
        return len(self.fibers[0].bases[-n]) * self.action.group.order

    def fiber_at(self, h: int) -> ChainComplex:
        if not 0 <= h < self.action.group.order:
            raise ValueError("element not in the group")
        if h not in self._fiber_complexes:
            self._fiber_complexes[h] = self.fibers[h].complex()
        return self._fiber_complexes[h]

    def face_matrix(self, i: int, n: int) -> ExactMatrix:
        return ExactMatrix.block_diagonal([f.face_matrix(i, n) for f in self.fibers])

    def complex(self) -> ChainComplex:
        if self._complex is None:
            G = self.action.group
            fibs = [self.fiber_at(h) for h in range(G.order)]
            dims = {d: sum(f.term(d) for f in fibs) for d in range(-self.depth, 1)}
            diffs = {d: ExactMatrix.block_diagonal([f.differential(d) for f in fibs])
                     for d in range(-self.depth, 0)}
            weights = {d: [w for f in fibs for w in f.weights[d]] for d in dims}
            self._complex = ChainComplex(QQ, dims, diffs, check=False, weights=weights)
        return self._complex

    def group_matrix(self, g: int, n: int) -> ExactMatrix:
        """Diagonal action of g on degree -n."""
        act = self.action
        G = act.group
        fib = self.fibers[0]
        size = len(fib.bases[-n])
        amaps = [act.maps[g].apply({a: 1}) for a in range(act.algebra.dim)]
        mmap = act.module_maps[g]
        ents = {}
        for k, t in enumerate(fib.bases[-n]):
            images = [amaps[x] for x in t[:-1]] + [mmap.apply({t[-1]: 1})]
            for combo in itertools.product(*[list(im.items()) for im in images]):
                coef = 1
                for _, c in combo:
                    coef *= c
                u = fib.index[-n][tuple(y for y, _ in combo)]
                for h in range(G.order):
                    ents[(G.conj(g, h) * size + u, h * size + k)] = coef
        return ExactMatrix(QQ, size * G.order, size * G.order, ents)

    def is_equivariant(self) -> bool:
        G = self.action.group
        cx = self.complex()
        for g in G.generators:
            for n in range(1, self.depth + 1):
                if (cx.differential(-n) @ self.group_matrix(g, n)
                        != self.group_matrix(g, n - 1) @ cx.differential(-n)):
                    return False
        return True

    def global_sections(self) -> ChainComplex:
        """The G-invariant subcomplex."""
        return _invariant_subcomplex(self.complex(),
                                     {-n: [self.group_matrix(g, n) for g in self.action.group.generators]
                                      for n in range(self.depth + 1)},
                                     self.action.group)

    # homotopy ---------------------------------------------------------------

    def homotopy_matrix(self, n: int, r: Vec) -> ExactMatrix:
        """s = sum_j (-1)^j s_j from degree -n to -n - 1, each s_j inserting r."""
        blocks = []
        for fib in self.fibers:
            total = None
            for j in range(n + 1):
                m = fib.degeneracy_matrix(j, n, r)
                m = m if j % 2 == 0 else -m
                total = m if total is None else total + m
            blocks.append(total)
        return ExactMatrix.block_diagonal(blocks)

    def action_difference(self, n: int, r: Vec) -> ExactMatrix:
        """On the delta_h summand: m -> (h^-1 F)(r) m - m r in degree -n."""
        blocks = []
        for fib in self.fibers:
            left = fib.left  # already twisted by h^-1 o F
            M = fib.module
            diff = ExactMatrix.zero(QQ, M.dim, M.dim)
            for k, c in r.items():
                diff = diff + (left[k] - M.right[k]).scale(c)
            ents = {}
            idx = fib.index[-n]
            for col, t in enumerate(fib.bases[-n]):
                for mm, v in diff.apply({t[-1]: 1}).items():
                    ents[(idx[t[:-1] + (mm,)], col)] = v
            size = len(fib.bases[-n])
            blocks.append(ExactMatrix(QQ, size, size, ents))
        return ExactMatrix.block_diagonal(blocks)


def _invariant_subcomplex(cx: ChainComplex, generator_mats: Dict[int, List[ExactMatrix]],
                          group: FiniteGroup) -> ChainComplex:
    """Invariants of a complex under a group given by generator matrices per degree.

    Invariant vectors are the orbit sums of basis vectors; orbits are traced by
    applying the generators until closure.
    """
    spaces: Dict[int, Subspace] = {}
    for d in range(cx.lo, cx.hi + 1):
        gens = generator_mats.get(d, [])
        n = cx.term(d)
        sums = []
        for k in range(n):
            seen = {}
            frontier = [{k: 1}]
            key = lambda v: tuple(sorted(v.items()))
            seen[key(frontier[0])] = frontier[0]
            while frontier:
                nxt = []
                for v in frontier:
                    for m in gens:
                        w = m.apply(v)
                        kw = key(w)
                        if kw not in seen:
                            seen[kw] = w
                            nxt.append(w)
                frontier = nxt
            if len(seen) > group.order:
                raise ArithmeticError("orbit larger than the group")
            # the orbit of a basis vector under a linear action: average over it
            total: Vec = {}
            for v in seen.values():
                _axpy(total, v, 1)
            if total:
                sums.append(total)
        spaces[d] = Subspace(QQ, n, sums)
    dims = {d: s.dim for d, s in spaces.items()}
    diffs = {}
    weights = None
    if cx.weights is not None:
        weights = {d: [cx.weights[d][c] for c in spaces[d].pivots] for d in spaces}
    for d in range(cx.lo, cx.hi):
        src, tgt = spaces[d], spaces[d + 1]
        m = cx.differential(d)
        cols = [tgt.coordinates(m.apply(v)) for v in src.basis]
        diffs[d] = ExactMatrix.from_columns(QQ, tgt.dim, cols)
    return ChainComplex(QQ, dims, diffs, weights=weights)


def pre_bg_complex(action: FiniteGroupAction, depth: int) -> BGComplex:
    if depth < 0:
        raise ValueError("depth must be non-negative")
    return BGComplex(action, depth)


def fiber_at(bg: BGComplex, h: int) -> ChainComplex:
    return bg.fiber_at(h)


def global_sections(bg: BGComplex) -> ChainComplex:
    return bg.global_sections()


@dataclass
class HomotopyReport:
    holds: bool
    degrees: Dict[int, bool]
    difference_is_zero: bool

    def to_json(self):
        return {"holds": self.holds, "degrees": {str(d): v for d, v in self.degrees.items()},
                "difference_is_zero": self.difference_is_zero}


def verify_homotopy(action: FiniteGroupAction, r: Vec, depth: int) -> HomotopyReport:
    """d s + s d equals the difference of the twisted left and the right action of r."""
    A = action.algebra
    if not A.is_central(r):
        raise PreconditionError("r must be central")
    for f in action.maps:
        if f.apply(r) != {k: v for k, v in r.items() if v}:
            raise PreconditionError("r must be invariant under the group")
    bg = BGComplex(action, depth + 1)
    cx = bg.complex()
    degrees = {}
    all_zero = True
    for n in range(depth + 1):
        s_out = bg.homotopy_matrix(n, r)
        lhs = cx.differential(-n - 1) @ s_out
        if n > 0:
            lhs = lhs + bg.homotopy_matrix(n - 1, r) @ cx.differential(-n)
        rhs = bg.action_difference(n, r)
        degrees[-n] = lhs == rhs
        all_zero &= rhs.is_zero()
    return HomotopyReport(all(degrees.values()), degrees, all_zero)


# ---------------------------------------------------------------------------
# inertia


def inertia_count(group: FiniteGroup, perms: Sequence[Sequence[int]]) -> int:
    """Number of G-orbits on {(x, g) : g x = x} under (x, g) -> (k x, k g k^-1).

    ``perms[g]`` is the permutation of X induced by the element g.
    """
    pairs = {(x, g) for g in range(group.order) for x in range(len(perms[0]))
             if perms[g][x] == x}
    orbits = 0
    while pairs:
        x, g = pairs.pop()
        orbits += 1
        for k in range(group.order):
            pairs.discard((perms[k][x], group.conj(k, g)))
    return orbits


def element_permutations(group: FiniteGroup, generator_perms: Sequence[Sequence[int]]
                         ) -> List[Tuple[int, ...]]:
    """Extend generator permutations of X to all group elements."""
    size = len(generator_perms[0]) if generator_perms else 0
    out: List[Optional[Tuple[int, ...]]] = [None] * group.order
    out[0] = tuple(range(size))
    for x in _bfs_order(group):
        if x == 0:
            continue
        prev, k = group._word[x]
        p, q = out[prev], generator_perms[k]
        out[x] = tuple(p[q[i]] for i in range(size))
    for g in range(group.order):
        for h in range(group.order):
            gh = group.mul(g, h)
            if out[gh] != tuple(out[g][out[h][i]] for i in range(size)):
                raise PreconditionError("permutations do not define an action")
    return out


def set_action(group: FiniteGroup, generator_perms: Sequence[Sequence[int]]) -> FiniteGroupAction:
    """G acting on k^X by permuting idempotents: g e_x = e_{g x}."""
    size = len(generator_perms[0]) if generator_perms else 1
    A = function_algebra(size)
    maps = [AlgebraMap.vertex_permutation(A, p) for p in generator_perms]
    return FiniteGroupAction.from_generators(group, A, maps)


@dataclass
class InertiaReport:
    holds: bool
    global_h0: int
    orbit_count: int
    fiber_h0: Dict[int, int]

    def to_json(self):
        return {"holds": self.holds, "global_H0": self.global_h0,
                "orbit_count": self.orbit_count,
                "fiber_H0": {str(k): v for k, v in self.fiber_h0.items()}}


def verify_inertia(group: FiniteGroup, generator_perms: Sequence[Sequence[int]]) -> InertiaReport:
    """dim H^0 of the invariant complex for A = k^X against a brute-force orbit count."""
    perms = element_permutations(group, generator_perms)
    if not generator_perms:
        perms = [tuple(range(len(perms[0])))] * group.order
    action = set_action(group, generator_perms) if generator_perms else \
        FiniteGroupAction.trivial(function_algebra(len(perms[0])))
    bg = BGComplex(action, 1)
    h0 = bg.global_sections().cohomology_dims([0])[0]
    fibers = {h: bg.fiber_at(h).cohomology_dims([0])[0] for h in range(group.order)}
    count = inertia_count(group, perms)
    return InertiaReport(h0 == count, h0, count, fibers)


def random_gset(group: FiniteGroup, max_points: int, rng: random.Random
                ) -> List[Tuple[int, ...]]:
    """Generator permutations of a disjoint union of random coset spaces G/H."""
    cosets_all: List[List[int]] = []
    total = 0
    while True:
        sub = group.closure([rng.randrange(group.order) for _ in range(rng.randint(0, 2))])
        index = group.order // len(sub)
        if total + index > max_points:
            break
        # left cosets g H
        seen, cosets = set(), []
        for g in range(group.order):
            if g in seen:
                continue
            c = sorted(group.mul(g, h) for h in sub)
            seen.update(c)
            cosets.append(c)
        cosets_all.append(cosets)
        total += index
        if rng.random() < 0.3:
            break
    if not cosets_all:
        cosets_all.append([list(range(group.order))])
        total = 1
    points = [(i, c) for i, cs in enumerate(cosets_all) for c in cs]
    where = {}
    for p, (i, c) in enumerate(points):
        for g in c:
            where[(i, g)] = p
    gens = []
    for s in group.generators:
        perm = []
        for i, c in points:
            perm.append(where[(i, group.mul(s, c[0]))])
        gens.append(tuple(perm))
    return gens


# ---------------------------------------------------------------------------
# bounded model


class BoundedTraceModel:
    """Kos (x)_{A^e} of the coaction-twisted M (x) O(G): on the delta_h summand,
    basis pairs (w, m) with w in (A^!_n)_{ij} and m in (h^-1 F)(e_j) M e_i."""

    def __init__(self, action: FiniteGroupAction, cap: int = 8):
        A = action.algebra
        N, finite = koszul_length(A, cap)
        if not finite:
            raise PreconditionError(
                f"the quadratic dual does not vanish below {cap}; check is_koszul and raise the cap")
        cert = is_koszul(A, N + 1)
        if not cert.koszul:
            raise PreconditionError("algebra is not Koszul; see is_koszul for the violation")
        self.action = action
        self.length = N
        self.duals = quadratic_dual_spaces(A, max(N, 1))
        G = action.group
        M = action.module
        self.lefts = [twisted_left(M, action.fiber_twist(h)) for h in range(G.order)]
        self.bases: Dict[int, List[Tuple[int, int, int]]] = {}
        for n in range(N + 1):
            basis = []
            for h in range(G.order):
                left = self.lefts[h]
                for k, (i, j) in enumerate(self.duals.blocks[n]):
                    ej, ei = A.idempotents[j], A.idempotents[i]
                    for m in range(M.dim):
                        v = {m: 1}
                        if left[ej].apply(v) == v and M.right[ei].apply(v) == v:
                            basis.append((h, k, m))
            self.bases[-n] = basis
        self.index = {d: {t: k for k, t in enumerate(b)} for d, b in self.bases.items()}

    def complex(self) -> ChainComplex:
        A, M = self.action.algebra, self.action.module
        diffs = {}
        for n in range(1, self.length + 1):
            d = -n
            sign = -1 if n % 2 else 1
            first = {k: _split_first(self.duals, n, k) for k in range(self.duals.spaces[n].dim)}
            last = {k: _split_last(self.duals, n, k) for k in range(self.duals.spaces[n].dim)}
            ents: Dict[Tuple[int, int], object] = {}
            tgt = self.index[d + 1]

            def add(key, v):
                s = ents.get(key, 0) + v
                if s:
                    ents[key] = s
                else:
                    ents.pop(key, None)

            for col, (h, k, m) in enumerate(self.bases[d]):
                for x, coords in first[k].items():
                    for mm, c1 in M.right[x].apply({m: 1}).items():
                        for k2, c2 in coords.items():
                            add((tgt[(h, k2, mm)], col), c1 * c2)
                for y, coords in last[k].items():
                    for mm, c1 in self.lefts[h][y].apply({m: 1}).items():
                        for k2, c2 in coords.items():
                            add((tgt[(h, k2, mm)], col), sign * c1 * c2)
            diffs[d] = ExactMatrix(QQ, len(self.bases[d + 1]), len(self.bases[d]), ents)
        dims = {d: len(b) for d, b in self.bases.items()}
        weights = {d: [-d + M.weights[m] for _, _, m in b] for d, b in self.bases.items()}
        return ChainComplex(QQ, dims, diffs, weights=weights)

    def fiber(self, h: int) -> ChainComplex:
        cx = self.complex()
        dims, diffs, weights = {}, {}, {}
        keep = {d: [k for k, t in enumerate(b) if t[0] == h] for d, b in self.bases.items()}
        for d, ks in keep.items():
            dims[d] = len(ks)
            weights[d] = [cx.weights[d][k] for k in ks]
            if d < 0:
                diffs[d] = cx.differential(d).submatrix(keep[d + 1], ks)
        return ChainComplex(QQ, dims, diffs, weights=weights)

    def group_matrix(self, g: int, n: int) -> ExactMatrix:
        act = self.action
        G = act.group
        A = act.algebra
        duals = self.duals
        amaps = [act.maps[g].apply({a: 1}) for a in range(A.dim)]
        mmap = act.module_maps[g]
        ents = {}
        tgt = self.index[-n]
        for col, (h, k, m) in enumerate(self.bases[-n]):
            vec = duals.vector(n, k) if n else {duals.tensors[0][k]: 1}
            image: Dict[Tuple[int, ...], object] = {}
            if n == 0:
                (i,) = duals.tensors[0][k]
                image = {(act.maps[g].vertex_image(i),): 1}
            else:
                for t, c in vec.items():
                    for combo in itertools.product(*[list(amaps[x].items()) for x in t]):
                        coef = c
                        for _, cc in combo:
                            coef *= cc
                        key = tuple(y for y, _ in combo)
                        image[key] = image.get(key, 0) + coef
                image = {t: c for t, c in image.items() if c}
            coords = duals.coordinates(n, image)
            hh = G.conj(g, h)
            for mm, cm in mmap.apply({m: 1}).items():
                for k2, ck in coords.items():
                    ents[(tgt[(hh, k2, mm)], col)] = ck * cm
        size = len(self.bases[-n])
        return ExactMatrix(QQ, size, size, ents)

    def global_sections(self) -> ChainComplex:
        G = self.action.group
        mats = {-n: [self.group_matrix(g, n) for g in G.generators]
                for n in range(self.length + 1)}
        return _invariant_subcomplex(self.complex(), mats, G)


def bounded_trace_model(action: FiniteGroupAction, cap: int = 8) -> BoundedTraceModel:
    return BoundedTraceModel(action, cap)


def amplitude(cx: ChainComplex, degrees: Optional[Sequence[int]] = None
              ) -> Optional[Tuple[int, int]]:
    """[lo, hi] of the nonvanishing cohomology, or None when it vanishes."""
    dims = cx.cohomology_dims(degrees)
    live = [d for d, v in dims.items() if v]
    return (min(live), max(live)) if live else None


# ---------------------------------------------------------------------------
# standard actions used throughout the checks


def dual_numbers_sign_action(twist: str = "id") -> FiniteGroupAction:
    """Z/2 acting on k[x]/(x^2) by x -> -x; twist "id" or "scale2" (x -> 2x)."""
    from .algebra import dual_numbers

    A = dual_numbers()
    G = FiniteGroup.cyclic(2)
    sign = AlgebraMap.weight_scaling(A, -1)
    F = AlgebraMap.weight_scaling(A, 2) if twist == "scale2" else AlgebraMap.identity(A)
    return FiniteGroupAction.from_generators(G, A, [sign], twist=F)


def permuted_idempotents_action(group: FiniteGroup, twist_perm: Optional[Sequence[int]] = None
                                ) -> FiniteGroupAction:
    """A permutation group of degree n acting on k^n; optional twist by a permutation."""
    size = len(group.labels[0])
    A = function_algebra(size)
    maps = [AlgebraMap.vertex_permutation(A, group.labels[s]) for s in group.generators]
    F = AlgebraMap.vertex_permutation(A, twist_perm) if twist_perm else None
    return FiniteGroupAction.from_generators(group, A, maps, twist=F)


def graded_sign_action(A: GradedAlgebra, module: Optional[GradedBimodule] = None
                       ) -> FiniteGroupAction:
    """Z/2 acting by (-1)^weight on A and on M."""
    G = FiniteGroup.cyclic(2)
    sign = AlgebraMap.weight_scaling(A, -1)
    if module is None:
        return FiniteGroupAction.from_generators(G, A, [sign])
    mm = ExactMatrix(QQ, module.dim, module.dim,
                     {(k, k): (-1) ** w for k, w in enumerate(module.weights)})
    return FiniteGroupAction.from_generators(G, A, [sign], module, [mm])
