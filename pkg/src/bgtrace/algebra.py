"""Basic non-negatively graded finite-dimensional algebras and their modules.

Conventions
-----------
* Every basis element ``x`` carries ``(weight, source, target)`` with
  ``e_target * x * e_source = x``.  A product ``x * y`` can be nonzero only
  when ``source(x) == target(y)``: elements compose like functions.
* An arrow ``src -> dst`` of a quiver is the element ``e_dst * a * e_src``.
  Paths in JSON are listed in the order the arrows are traversed, so the path
  ``[a, b]`` is the product ``b * a``.
* Right modules are column vectors with ``action[a]`` the matrix of ``v -> v.a``;
  a vector ``v`` with ``v.e_j = v`` lies in block ``j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import QQ, ExactMatrix, Subspace, rref

Vec = Dict[int, object]


@dataclass(frozen=True)
class BasisElement:
    weight: int
    source: int
    target: int
    name: str


def _axpy(target: Vec, source: Vec, c):
    if not c:
        return
    for k, v in source.items():
        s = target.get(k, 0) + c * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)


def _norm(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


class GradedAlgebra:
    """Finite-dimensional basic graded algebra over Q given by structure constants."""

    def __init__(self, vertices: Sequence[str], basis: Sequence[BasisElement],
                 products: Dict[Tuple[int, int], Vec], check: bool = True):
        if not vertices:
            raise ValueError("an algebra needs at least one idempotent")
        self.vertices = list(vertices)
        self.basis = list(basis)
        self.dim = len(self.basis)
        self._mult = {k: dict(v) for k, v in products.items() if v}
        self.idempotents: List[int] = [-1] * len(self.vertices)
        for k, b in enumerate(self.basis):
            if b.weight == 0:
                if b.source != b.target:
                    raise ValueError("weight-0 part must be spanned by the idempotents")
                if self.idempotents[b.source] != -1:
                    raise ValueError("weight-0 part must be spanned by the idempotents")
                self.idempotents[b.source] = k
            elif b.weight < 0:
                raise ValueError("weights must be non-negative")
        if -1 in self.idempotents:
            raise ValueError("every vertex needs an idempotent basis element")
        self._left_cache: Dict[int, ExactMatrix] = {}
        self._right_cache: Dict[int, ExactMatrix] = {}
        if check:
            self.check()

    # products -------------------------------------------------------------

    def product_basis(self, a: int, b: int) -> Vec:
        return self._mult.get((a, b), {})

    def mul(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for a, ca in x.items():
            for b, cb in y.items():
                p = self._mult.get((a, b))
                if p:
                    _axpy(out, p, ca * cb)
        return {k: _norm(v) for k, v in out.items()}

    def unit(self) -> Vec:
        return {k: 1 for k in self.idempotents}

    def left_matrix(self, a: int) -> ExactMatrix:
        """Matrix of y -> a*y."""
        m = self._left_cache.get(a)
        if m is None:
            ents = {}
            for b in range(self.dim):
                for c, v in self._mult.get((a, b), {}).items():
                    ents[(c, b)] = v
            m = self._left_cache[a] = ExactMatrix(QQ, self.dim, self.dim, ents)
        return m

    def right_matrix(self, a: int) -> ExactMatrix:
        """Matrix of y -> y*a."""
        m = self._right_cache.get(a)
        if m is None:
            ents = {}
            for b in range(self.dim):
                for c, v in self._mult.get((b, a), {}).items():
                    ents[(c, b)] = v
            m = self._right_cache[a] = ExactMatrix(QQ, self.dim, self.dim, ents)
        return m

    # structure ------------------------------------------------------------

    def check(self):
        n = self.dim
        for (a, b), p in self._mult.items():
            ba, bb = self.basis[a], self.basis[b]
            if ba.source != bb.target:
                raise ValueError(f"product {ba.name}*{bb.name} is not composable")
            for c in p:
                bc = self.basis[c]
                if bc.weight != ba.weight + bb.weight:
                    raise ValueError("multiplication is not weight additive")
                if (bc.source, bc.target) != (bb.source, ba.target):
                    raise ValueError("multiplication does not respect idempotent blocks")
        one = self.unit()
        for k in range(n):
            if self.mul(one, {k: 1}) != {k: 1} or self.mul({k: 1}, one) != {k: 1}:
                raise ValueError("unit does not act as identity")
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.basis[a].source != self.basis[b].target:
                continue
            if self.basis[b].source != self.basis[c].target:
                continue
            lhs = self.mul(self.mul({a: 1}, {b: 1}), {c: 1})
            rhs = self.mul({a: 1}, self.mul({b: 1}, {c: 1}))
            if lhs != rhs:
                raise ValueError("multiplication is not associative")

    def weights(self) -> List[int]:
        return [b.weight for b in self.basis]

    def max_weight(self) -> int:
        return max(b.weight for b in self.basis)

    def radical(self) -> List[int]:
        """Basis indices spanning J(A) = A_{>0}."""
        return [k for k, b in enumerate(self.basis) if b.weight > 0]

    def component(self, weight: Optional[int] = None, source: Optional[int] = None,
                  target: Optional[int] = None) -> List[int]:
        return [k for k, b in enumerate(self.basis)
                if (weight is None or b.weight == weight)
                and (source is None or b.source == source)
                and (target is None or b.target == target)]

    def block_dims(self) -> Dict[Tuple[int, int, int], int]:
        """dim e_i A_w e_j keyed by (i, w, j)."""
        out: Dict[Tuple[int, int, int], int] = {}
        for b in self.basis:
            key = (b.target, b.weight, b.source)
            out[key] = out.get(key, 0) + 1
        return out

    def is_commutative(self) -> bool:
        return all(self._mult.get((a, b), {}) == self._mult.get((b, a), {})
                   for a in range(self.dim) for b in range(a))

    def center(self) -> Subspace:
        """Z(A) as a subspace of A."""
        rows = []
        for b in range(self.dim):
            rows.append(self.left_matrix(b) - self.right_matrix(b))
        stacked = ExactMatrix.vstack(rows)
        return Subspace(QQ, self.dim, stacked.kernel_basis().column_dicts())

    def is_central(self, x: Vec) -> bool:
        return all(self.mul(x, {b: 1}) == self.mul({b: 1}, x) for b in range(self.dim))

    def opposite(self) -> "GradedAlgebra":
        basis = [BasisElement(b.weight, b.target, b.source, b.name) for b in self.basis]
        prods = {(b, a): p for (a, b), p in self._mult.items()}
        return GradedAlgebra(self.vertices, basis, prods, check=False)

    def to_json(self) -> dict:
        return {
            "vertices": self.vertices,
            "basis": [{"weight": b.weight, "source": b.source, "target": b.target,
                       "name": b.name} for b in self.basis],
        }

    def __repr__(self):
        return f"GradedAlgebra(dim={self.dim}, vertices={self.vertices})"

    # modules --------------------------------------------------------------

    def simple_modules(self) -> List["GradedModule"]:
        return [simple_module(self, i) for i in range(len(self.vertices))]

    def indecomposable_projectives(self, side: str = "right") -> List["GradedModule"]:
        return [indecomposable_projective(self, i, side) for i in range(len(self.vertices))]


# ---------------------------------------------------------------------------
# quivers


class QuiverError(ValueError):
    pass


def from_quiver(vertices: Sequence[str], arrows: Sequence, relations: Sequence = (),
                weight_cap: int = 64) -> GradedAlgebra:
    """Path algebra of a quiver modulo homogeneous relations.

    ``arrows`` are ``(source, target, weight, name)`` tuples or dicts with keys
    ``src, dst, weight, name``.  Each relation is a list of ``(coeff, path)``
    terms (or dicts ``{coeff, path}``) with paths given as arrow names in
    traversal order.
    """
    vertices = [str(v) for v in vertices]
    if not vertices:
        raise QuiverError("vertices: at least one vertex is required")
    vindex = {v: i for i, v in enumerate(vertices)}
    arr = []
    for k, a in enumerate(arrows):
        if isinstance(a, dict):
            src, dst, w, name = a["src"], a["dst"], a.get("weight", 1), a.get("name", f"a{k}")
        else:
            src, dst, w, name = a
        src, dst = str(src), str(dst)
        if src not in vindex or dst not in vindex:
            raise QuiverError(f"arrows[{k}]: unknown vertex")
        if int(w) < 1:
            raise QuiverError(f"arrows[{k}].weight: arrows need positive weight")
        arr.append((vindex[src], vindex[dst], int(w), str(name)))
    names = {a[3]: k for k, a in enumerate(arr)}
    if len(names) != len(arr):
        raise QuiverError("arrows: names must be unique")
    rels = []
    for ri, rel in enumerate(relations):
        terms = []
        for ti, t in enumerate(rel):
            if isinstance(t, dict):
                c, path = t.get("coeff", 1), t["path"]
            else:
                c, path = t
            if not path:
                raise QuiverError(f"relations[{ri}][{ti}].path: empty path")
            try:
                idx = [names[p] for p in path]
            except KeyError as e:
                raise QuiverError(f"relations[{ri}][{ti}].path: unknown arrow {e}") from None
            for x, y in zip(idx, idx[1:]):
                if arr[x][1] != arr[y][0]:
                    raise QuiverError(f"relations[{ri}][{ti}].path: arrows do not compose")
            terms.append((Fraction(c), idx))
        if terms:
            ws = {sum(arr[i][2] for i in p) for _, p in terms}
            ends = {(arr[p[0]][0], arr[p[-1]][1]) for _, p in terms}
            if len(ws) != 1:
                raise QuiverError(f"relations[{ri}]: relation is not homogeneous in weight")
            if len(ends) != 1:
                raise QuiverError(f"relations[{ri}]: terms have different endpoints")
            rels.append((ws.pop(), terms))
    return _QuiverBuilder(vertices, arr, rels, weight_cap).build()


class _QuiverBuilder:
    """Builds A_w = (sum_a a * A_{w - wt a}) / relations, weight by weight.

    Elements of the ambient space U_w are pairs (arrow a, basis element z of
    A_{w - wt a}) standing for the product a*z.  The kernel of U_w -> A_w is
    spanned by the relations of weight w and by K_{w'} * b for smaller w'.
    """

    def __init__(self, vertices, arrows, relations, cap):
        self.vertices = vertices
        self.arrows = arrows
        self.relations = relations
        self.cap = cap
        self.maxw = max((a[2] for a in arrows), default=1)
        self.basis: List[BasisElement] = []
        self.by_weight: Dict[int, List[int]] = {}
        # normal form: weight -> (ambient index map, pivots, reduced rows, nonpivot -> basis)
        self.ambient: Dict[int, List[Tuple[int, int]]] = {}
        self.amb_index: Dict[int, Dict[Tuple[int, int], int]] = {}
        self.kernel: Dict[int, List[Vec]] = {}
        self.reduce_info: Dict[int, Tuple[List[int], Dict[int, Vec], Dict[int, int]]] = {}

    def build(self) -> GradedAlgebra:
        for i, v in enumerate(self.vertices):
            self.basis.append(BasisElement(0, i, i, f"e_{v}"))
        self.by_weight[0] = list(range(len(self.vertices)))
        zeros = 0
        w = 0
        while zeros < self.maxw:
            w += 1
            if w > self.cap:
                raise QuiverError(f"quotient is not finite-dimensional below weight cap "
                                  f"{self.cap}: weight {w - zeros} is still nonzero")
            self._build_weight(w)
            zeros = zeros + 1 if not self.by_weight[w] else 0
        prods = self._products()
        return GradedAlgebra(self.vertices, self.basis, prods)

    def _build_weight(self, w):
        amb = []
        for ai, (src, dst, aw, _) in enumerate(self.arrows):
            if aw > w:
                continue
            for z in self.by_weight.get(w - aw, []):
                if self.basis[z].target == src:
                    amb.append((ai, z))
        index = {p: k for k, p in enumerate(amb)}
        self.ambient[w] = amb
        self.amb_index[w] = index
        kern: List[Vec] = []
        for rw, terms in self.relations:
            if rw != w:
                continue
            vec: Vec = {}
            for c, path in terms:
                _axpy(vec, self._path_ambient(path, w), c)
            if vec:
                kern.append(vec)
        for bi, (bsrc, bdst, bw, _) in enumerate(self.arrows):
            wp = w - bw
            if wp < 1:
                continue
            for kv in self.kernel.get(wp, []):
                vec = {}
                for k, c in kv.items():
                    ai, z = self.ambient[wp][k]
                    zb = self._times_arrow(z, bi)
                    for y, cy in zb.items():
                        _axpy(vec, {index[(ai, y)]: 1}, c * cy)
                if vec:
                    kern.append(vec)
        m = ExactMatrix.from_columns(QQ, len(amb), kern).T if kern else ExactMatrix(QQ, 0, len(amb))
        piv, red = rref(m)
        self.kernel[w] = [red[c] for c in piv]
        pivset = set(piv)
        nonpiv = {}
        ids = []
        for k, (ai, z) in enumerate(amb):
            if k in pivset:
                continue
            src = self.basis[z].source
            dst = self.arrows[ai][1]
            name = self.basis[z].name
            name = (self.arrows[ai][3] if name.startswith("e_")
                    else f"{name}.{self.arrows[ai][3]}")
            nonpiv[k] = len(self.basis)
            ids.append(len(self.basis))
            self.basis.append(BasisElement(w, src, dst, name))
        self.by_weight[w] = ids
        self.reduce_info[w] = (piv, {c: red[c] for c in piv}, nonpiv)

    def _reduce(self, w, vec: Vec) -> Vec:
        """Normal form in A_w of an ambient vector in U_w."""
        piv, red, nonpiv = self.reduce_info[w]
        vec = dict(vec)
        for c in piv:
            f = vec.get(c)
            if f:
                _axpy(vec, red[c], -f)
        return {nonpiv[k]: _norm(v) for k, v in vec.items()}

    def _path_ambient(self, path, w) -> Vec:
        """Ambient vector of the product of a traversal-ordered path of weight w."""
        last = path[-1]
        rest = path[:-1]
        if rest:
            wr = w - self.arrows[last][2]
            z = self._reduce(wr, self._path_ambient(rest, wr))
        else:
            z = {self.basis.index(BasisElement(0, self.arrows[last][0], self.arrows[last][0],
                                               f"e_{self.vertices[self.arrows[last][0]]}")): 1}
        index = self.amb_index[w]
        return {index[(last, y)]: c for y, c in z.items()}

    def _left_arrow(self, ai, vec: Vec) -> Vec:
        """a * vec for an arrow a and a homogeneous vector in A."""
        if not vec:
            return {}
        w = self.basis[next(iter(vec))].weight + self.arrows[ai][2]
        if w not in self.reduce_info:
            return {}
        index = self.amb_index[w]
        amb = {}
        for y, c in vec.items():
            if self.basis[y].target != self.arrows[ai][0]:
                continue
            amb[index[(ai, y)]] = c
        return self._reduce(w, amb)

    def _times_arrow(self, z, bi) -> Vec:
        """z * b for a basis element z and an arrow b."""
        bz = self.basis[z]
        src, dst, bw, _ = self.arrows[bi]
        if bz.source != dst:
            return {}
        if bz.weight == 0:
            index = self.amb_index[bw]
            return self._reduce(bw, {index[(bi, self.by_weight[0][src])]: 1})
        # z = a * z' for its defining ambient pair
        ai, zp = self._defining_pair(z)
        return self._left_arrow(ai, self._times_arrow(zp, bi))

    def _defining_pair(self, z):
        w = self.basis[z].weight
        _, _, nonpiv = self.reduce_info[w]
        for k, bidx in nonpiv.items():
            if bidx == z:
                return self.ambient[w][k]
        raise KeyError(z)

    def _products(self) -> Dict[Tuple[int, int], Vec]:
        prods: Dict[Tuple[int, int], Vec] = {}
        n = len(self.basis)
        order = sorted(range(n), key=lambda k: self.basis[k].weight)
        for x in order:
            bx = self.basis[x]
            for y in range(n):
                by = self.basis[y]
                if bx.source != by.target:
                    continue
                if bx.weight == 0:
                    prods[(x, y)] = {y: 1}
                    continue
                if by.weight == 0:
                    prods[(x, y)] = {x: 1}
                    continue
                ai, zp = self._defining_pair(x)
                inner = prods.get((zp, y), {})
                if bx.weight + by.weight > max(self.by_weight):
                    continue
                val = self._left_arrow(ai, inner) if inner else {}
                if val:
                    prods[(x, y)] = val
        return prods


def algebra_from_json(obj: dict, weight_cap: int = 64) -> GradedAlgebra:
    """Parse the JSON algebra format; errors name the offending field."""
    if not isinstance(obj, dict):
        raise QuiverError("algebra: expected an object")
    for key in ("vertices", "arrows"):
        if key not in obj:
            raise QuiverError(f"{key}: missing field")
    if not isinstance(obj["vertices"], list):
        raise QuiverError("vertices: expected a list")
    if not isinstance(obj["arrows"], list):
        raise QuiverError("arrows: expected a list")
    for k, a in enumerate(obj["arrows"]):
        if not isinstance(a, dict):
            raise QuiverError(f"arrows[{k}]: expected an object")
        for f in ("src", "dst"):
            if f not in a:
                raise QuiverError(f"arrows[{k}].{f}: missing field")
    rels = obj.get("relations", [])
    if not isinstance(rels, list):
        raise QuiverError("relations: expected a list")
    for ri, rel in enumerate(rels):
        if not isinstance(rel, list):
            raise QuiverError(f"relations[{ri}]: expected a list of terms")
        for ti, t in enumerate(rel):
            if not isinstance(t, dict) or "path" not in t:
                raise QuiverError(f"relations[{ri}][{ti}].path: missing field")
    return from_quiver(obj["vertices"], obj["arrows"], rels, weight_cap)


# ---------------------------------------------------------------------------
# standard examples


def semisimple(n: int) -> GradedAlgebra:
    """k x ... x k with n factors."""
    return from_quiver([str(i + 1) for i in range(n)], [])


def truncated_polynomial(k: int, weight: int = 1) -> GradedAlgebra:
    """k[x]/(x^k)."""
    return from_quiver(["1"], [("1", "1", weight, "x")], [[(1, ["x"] * k)]])


def path_algebra_An(n: int) -> GradedAlgebra:
    """Path algebra of the linearly oriented A_n quiver 1 -> 2 -> ... -> n."""
    verts = [str(i + 1) for i in range(n)]
    arrows = [(str(i + 1), str(i + 2), 1, f"a{i + 1}") for i in range(n - 1)]
    return from_quiver(verts, arrows)


def An_with_zero_relation() -> GradedAlgebra:
    """1 -> 2 -> 3 with the composite of the two arrows set to zero."""
    return from_quiver(["1", "2", "3"], [("1", "2", 1, "a"), ("2", "3", 1, "b")],
                       [[(1, ["a", "b"])]])


def dual_numbers() -> GradedAlgebra:
    return truncated_polynomial(2)


def function_algebra(n: int) -> GradedAlgebra:
    """k^X for a finite set X = {0, ..., n-1}."""
    return semisimple(n)


# ---------------------------------------------------------------------------
# modules


class GradedModule:
    """Graded one-sided module with a homogeneous basis.

    ``action[a]`` is the matrix of the algebra basis element ``a``:
    ``v -> v.a`` for right modules, ``v -> a.v`` for left modules.
    """

    def __init__(self, algebra: GradedAlgebra, side: str, weights: Sequence[int],
                 blocks: Sequence[int], action: Sequence[ExactMatrix], check: bool = True):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.algebra = algebra
        self.side = side
        self.weights = list(weights)
        self.blocks = list(blocks)
        self.dim = len(self.weights)
        self.action = list(action)
        if check:
            self.check()

    def check(self):
        A = self.algebra
        n = self.dim
        for a, m in enumerate(self.action):
            if m.shape != (n, n):
                raise ValueError("action matrix has wrong shape")
            wa = A.basis[a].weight
            for (r, c), _ in m.entries():
                if self.weights[r] != self.weights[c] + wa:
                    raise ValueError("action does not add weights")
        ident = ExactMatrix.identity(QQ, n)
        total = ExactMatrix.zero(QQ, n, n)
        for i in A.idempotents:
            total = total + self.action[i]
        if total != ident:
            raise ValueError("unit does not act as identity")
        for a in range(A.dim):
            for b in range(A.dim):
                p = A.product_basis(a, b)
                lhs = ExactMatrix.zero(QQ, n, n)
                for c, v in p.items():
                    lhs = lhs + self.action[c].scale(v)
                if self.side == "right":
                    rhs = self.action[b] @ self.action[a]
                else:
                    rhs = self.action[a] @ self.action[b]
                if lhs != rhs:
                    raise ValueError("action is not associative")

    def radical_image(self) -> Subspace:
        vecs = []
        for a in self.algebra.radical():
            vecs.extend(self.action[a].column_dicts())
        return Subspace(QQ, self.dim, [v for v in vecs if v])

    def top_dim(self) -> int:
        return self.dim - self.radical_image().dim

    def graded_dims(self) -> Dict[Tuple[int, int], int]:
        out: Dict[Tuple[int, int], int] = {}
        for w, b in zip(self.weights, self.blocks):
            out[(w, b)] = out.get((w, b), 0) + 1
        return out


def simple_module(A: GradedAlgebra, i: int, side: str = "right") -> GradedModule:
    action = []
    for k, b in enumerate(A.basis):
        v = 1 if k == A.idempotents[i] else 0
        action.append(ExactMatrix(QQ, 1, 1, {(0, 0): v} if v else None))
    return GradedModule(A, side, [0], [i], action)


def indecomposable_projective(A: GradedAlgebra, i: int, side: str = "right") -> GradedModule:
    """E_i = e_i A (right) or A e_i (left) with the restricted regular action."""
    if side == "right":
        idx = A.component(target=i)
        blocks = [A.basis[k].source for k in idx]
        mats = [A.right_matrix(a) for a in range(A.dim)]
    else:
        idx = A.component(source=i)
        blocks = [A.basis[k].target for k in idx]
        mats = [A.left_matrix(a) for a in range(A.dim)]
    action = [m.submatrix(idx, idx) for m in mats]
    return GradedModule(A, side, [A.basis[k].weight for k in idx], blocks, action)


def regular_module(A: GradedAlgebra, side: str = "right") -> GradedModule:
    if side == "right":
        mats = [A.right_matrix(a) for a in range(A.dim)]
        blocks = [b.source for b in A.basis]
    else:
        mats = [A.left_matrix(a) for a in range(A.dim)]
        blocks = [b.target for b in A.basis]
    return GradedModule(A, side, A.weights(), blocks, mats)


def direct_sum(mods: Sequence[GradedModule]) -> GradedModule:
    A = mods[0].algebra
    action = [ExactMatrix.block_diagonal([m.action[a] for m in mods]) for a in range(A.dim)]
    return GradedModule(A, mods[0].side, [w for m in mods for w in m.weights],
                        [b for m in mods for b in m.blocks], action)


@dataclass
class HomSpace:
    """Hom(m, n) split by weight; each map is a matrix n.dim x m.dim."""

    source: GradedModule
    target: GradedModule
    components: Dict[int, List[ExactMatrix]]

    def dim(self, weight: Optional[int] = None) -> int:
        if weight is None:
            return sum(len(v) for v in self.components.values())
        return len(self.components.get(weight, []))


def graded_hom(m: GradedModule, n: GradedModule) -> HomSpace:
    """Module maps of each weight, found by solving the intertwining equations."""
    if m.side != n.side or m.algebra is not n.algebra:
        raise ValueError("modules must share algebra and side")
    A = m.algebra
    weights = sorted({wn - wm for wn in set(n.weights) for wm in set(m.weights)})
    comps: Dict[int, List[ExactMatrix]] = {}
    for w in weights:
        # unknowns: entries (r, c) with weight(n_r) = weight(m_c) + w and same block
        cells = [(r, c) for r in range(n.dim) for c in range(m.dim)
                 if n.weights[r] == m.weights[c] + w and n.blocks[r] == m.blocks[c]]
        if not cells:
            continue
        cell_index = {rc: k for k, rc in enumerate(cells)}
        eqs = []
        for a in range(A.dim):
            # f.act_m(a) - act_n(a).f = 0
            am, an = m.action[a], n.action[a]
            eq: Dict[Tuple[int, int], Vec] = {}
            for (r, c), k in cell_index.items():
                # contribution of f[r, c] to (f am)[r, c'] = f[r, c] am[c, c']
                for c2, v in am.row(c).items():
                    _axpy(eq.setdefault((r, c2), {}), {k: v}, 1)
                # contribution to (an f)[r', c] = an[r', r] f[r, c]
                for r2 in range(n.dim):
                    v = an[r2, r]
                    if v:
                        _axpy(eq.setdefault((r2, c), {}), {k: v}, -1)
            eqs.extend(e for e in eq.values() if e)
        mat = (ExactMatrix.from_columns(QQ, len(cells), eqs).T if eqs
               else ExactMatrix(QQ, 0, len(cells)))
        ker = mat.kernel_basis().column_dicts()
        maps = []
        for vec in ker:
            maps.append(ExactMatrix(QQ, n.dim, m.dim, {cells[k]: v for k, v in vec.items()}))
        if maps:
            comps[w] = maps
    return HomSpace(m, n, comps)


# ---------------------------------------------------------------------------
# bimodules


class GradedBimodule:
    """Graded A-bimodule with a homogeneous basis tagged (weight, left block, right block).

    ``left[a]`` is the matrix of ``m -> a.m`` and ``right[a]`` of ``m -> m.a``.
    """

    def __init__(self, algebra: GradedAlgebra, weights: Sequence[int],
                 left_blocks: Sequence[int], right_blocks: Sequence[int],
                 left: Sequence[ExactMatrix], right: Sequence[ExactMatrix],
                 check: bool = True, name: str = ""):
        self.algebra = algebra
        self.weights = list(weights)
        self.left_blocks = list(left_blocks)
        self.right_blocks = list(right_blocks)
        self.dim = len(self.weights)
        self.left = list(left)
        self.right = list(right)
        self.name = name
        if check:
            self.check()

    def check(self):
        A = self.algebra
        GradedModule(A, "left", self.weights, self.left_blocks, self.left)
        GradedModule(A, "right", self.weights, self.right_blocks, self.right)
        for a in range(A.dim):
            for b in range(A.dim):
                if self.left[a] @ self.right[b] != self.right[b] @ self.left[a]:
                    raise ValueError("left and right actions do not commute")
        for k in range(self.dim):
            e_l = self.algebra.idempotents[self.left_blocks[k]]
            e_r = self.algebra.idempotents[self.right_blocks[k]]
            if self.left[e_l].apply({k: 1}) != {k: 1} or self.right[e_r].apply({k: 1}) != {k: 1}:
                raise ValueError("basis is not compatible with the idempotent blocks")

    def left_apply(self, a: Vec, m: Vec) -> Vec:
        out: Vec = {}
        for k, c in a.items():
            _axpy(out, self.left[k].apply(m), c)
        return out

    def right_apply(self, m: Vec, a: Vec) -> Vec:
        out: Vec = {}
        for k, c in a.items():
            _axpy(out, self.right[k].apply(m), c)
        return out

    def twisted(self, f: "AlgebraMap") -> "GradedBimodule":
        """The bimodule _F M: left action precomposed with F."""
        if f.source is not self.algebra:
            raise ValueError("twist is over a different algebra")
        A = self.algebra
        left = []
        for a in range(A.dim):
            img = f.apply({a: 1})
            m = ExactMatrix.zero(QQ, self.dim, self.dim)
            for k, c in img.items():
                m = m + self.left[k].scale(c)
            left.append(m)
        # left blocks move with the permutation of idempotents
        lb = [f.vertex_preimage(b) for b in self.left_blocks]
        return GradedBimodule(A, self.weights, lb, self.right_blocks, left, self.right,
                              check=False, name=f"twisted {self.name}")

    def is_zero(self):
        return self.dim == 0

    def __repr__(self):
        return f"GradedBimodule({self.name or '?'}, dim={self.dim})"


def diagonal_bimodule(A: GradedAlgebra) -> GradedBimodule:
    return GradedBimodule(A, A.weights(), [b.target for b in A.basis],
                          [b.source for b in A.basis],
                          [A.left_matrix(a) for a in range(A.dim)],
                          [A.right_matrix(a) for a in range(A.dim)], name="A")


def dual_bimodule(A: GradedAlgebra) -> GradedBimodule:
    """Hom_k(A, k) with (a.f.b)(x) = f(b x a), placed in weights -wt so that
    the actions raise weight; shifted to be non-negative."""
    top = A.max_weight()
    weights = [top - b.weight for b in A.basis]
    left, right = [], []
    for a in range(A.dim):
        # (a.f)(x) = f(x a): matrix is transpose of right mult by a
        left.append(A.right_matrix(a).T)
        right.append(A.left_matrix(a).T)
    return GradedBimodule(A, weights, [b.source for b in A.basis],
                          [b.target for b in A.basis], left, right, name="DA")


def free_bimodule(A: GradedAlgebra, i: int, j: int) -> GradedBimodule:
    """A e_i (x) e_j A."""
    left_idx = A.component(source=i)
    right_idx = A.component(target=j)
    pairs = [(x, y) for x in left_idx for y in right_idx]
    index = {p: k for k, p in enumerate(pairs)}
    n = len(pairs)
    left, right = [], []
    for a in range(A.dim):
        le, re = {}, {}
        for (x, y), k in index.items():
            for z, c in A.product_basis(a, x).items():
                le[(index[(z, y)], k)] = c
            for z, c in A.product_basis(y, a).items():
                re[(index[(x, z)], k)] = c
        left.append(ExactMatrix(QQ, n, n, le))
        right.append(ExactMatrix(QQ, n, n, re))
    return GradedBimodule(A, [A.basis[x].weight + A.basis[y].weight for x, y in pairs],
                          [A.basis[x].target for x, _ in pairs],
                          [A.basis[y].source for _, y in pairs], left, right,
                          name=f"Ae{i}(x)e{j}A")


def simple_bimodule(A: GradedAlgebra, i: int, j: int) -> GradedBimodule:
    """The one-dimensional bimodule L_i (x) L_j^l: e_i acts on the left, e_j on the right."""
    left, right = [], []
    for a in range(A.dim):
        left.append(ExactMatrix(QQ, 1, 1, {(0, 0): 1} if a == A.idempotents[i] else None))
        right.append(ExactMatrix(QQ, 1, 1, {(0, 0): 1} if a == A.idempotents[j] else None))
    return GradedBimodule(A, [0], [i], [j], left, right, name=f"L{i}L{j}")


def bimodule_direct_sum(mods: Sequence[GradedBimodule]) -> GradedBimodule:
    A = mods[0].algebra
    return GradedBimodule(
        A, [w for m in mods for w in m.weights],
        [b for m in mods for b in m.left_blocks], [b for m in mods for b in m.right_blocks],
        [ExactMatrix.block_diagonal([m.left[a] for m in mods]) for a in range(A.dim)],
        [ExactMatrix.block_diagonal([m.right[a] for m in mods]) for a in range(A.dim)],
        name=" + ".join(m.name for m in mods))


def bimodule_from_json(A: GradedAlgebra, obj) -> GradedBimodule:
    """Named bimodules: "A", "DA", {"free": [i, j]}, {"simple": [i, j]}, or a list (direct sum)."""
    if isinstance(obj, list):
        return bimodule_direct_sum([bimodule_from_json(A, o) for o in obj])
    if obj == "A" or obj == {"kind": "diagonal"}:
        return diagonal_bimodule(A)
    if obj == "DA":
        return dual_bimodule(A)
    if isinstance(obj, dict) and "free" in obj:
        i, j = obj["free"]
        return free_bimodule(A, A.vertices.index(str(i)), A.vertices.index(str(j)))
    if isinstance(obj, dict) and "simple" in obj:
        i, j = obj["simple"]
        return simple_bimodule(A, A.vertices.index(str(i)), A.vertices.index(str(j)))
    raise QuiverError("bimodule: expected \"A\", \"DA\", {\"free\": [i, j]}, "
                      "{\"simple\": [i, j]} or a list of these")


# ---------------------------------------------------------------------------
# algebra maps


class AlgebraMap:
    """A weight-preserving algebra endomorphism given by its matrix on the basis."""

    def __init__(self, source: GradedAlgebra, matrix: ExactMatrix, check: bool = True,
                 name: str = ""):
        self.source = source
        self.matrix = matrix
        self.name = name
        A = source
        self._vertex = {}
        for i, e in enumerate(A.idempotents):
            img = matrix.apply({e: 1})
            for j, e2 in enumerate(A.idempotents):
                if img == {e2: 1}:
                    self._vertex[i] = j
        if check:
            self.check()

    @classmethod
    def identity(cls, A: GradedAlgebra) -> "AlgebraMap":
        return cls(A, ExactMatrix.identity(QQ, A.dim), check=False, name="id")

    @classmethod
    def from_images(cls, A: GradedAlgebra, images: Dict[int, Vec], name="") -> "AlgebraMap":
        """Basis images given explicitly for every basis element."""
        ents = {}
        for k in range(A.dim):
            for r, v in images.get(k, {}).items():
                ents[(r, k)] = v
        return cls(A, ExactMatrix(QQ, A.dim, A.dim, ents), name=name)

    @classmethod
    def weight_scaling(cls, A: GradedAlgebra, t) -> "AlgebraMap":
        """x -> t^wt(x) x."""
        ents = {(k, k): Fraction(t) ** b.weight for k, b in enumerate(A.basis)}
        return cls(A, ExactMatrix(QQ, A.dim, A.dim, ents), name=f"scale {t}")

    @classmethod
    def vertex_permutation(cls, A: GradedAlgebra, perm: Sequence[int]) -> "AlgebraMap":
        """Permutation of the idempotents of a semisimple algebra k^n."""
        if A.dim != len(A.vertices):
            raise ValueError("vertex permutations are only defined on k^n here")
        ents = {(A.idempotents[perm[i]], A.idempotents[i]): 1 for i in range(len(perm))}
        return cls(A, ExactMatrix(QQ, A.dim, A.dim, ents), name=f"perm {list(perm)}")

    def apply(self, x: Vec) -> Vec:
        return self.matrix.apply(x)

    def vertex_image(self, i: int) -> int:
        return self._vertex[i]

    def vertex_preimage(self, j: int) -> int:
        for i, k in self._vertex.items():
            if k == j:
                return i
        raise KeyError(j)

    def compose(self, other: "AlgebraMap") -> "AlgebraMap":
        """self o other"""
        return AlgebraMap(self.source, self.matrix @ other.matrix, check=False,
                          name=f"{self.name} o {other.name}")

    def inverse(self) -> "AlgebraMap":
        n = self.source.dim
        cols = []
        for k in range(n):
            from .exact import solve
            x = solve(self.matrix, {k: 1})
            if x is None:
                raise ValueError("map is not invertible")
            cols.append(x)
        return AlgebraMap(self.source, ExactMatrix.from_columns(QQ, n, cols), check=False,
                          name=f"{self.name}^-1")

    def check(self):
        A = self.source
        if len(self._vertex) != len(A.idempotents) or len(set(self._vertex.values())) != len(A.idempotents):
            raise ValueError("map must permute the idempotents")
        for (r, c), _ in self.matrix.entries():
            if A.basis[r].weight != A.basis[c].weight:
                raise ValueError("map is not weight preserving")
        for a in range(A.dim):
            for b in range(A.dim):
                lhs = self.apply(A.product_basis(a, b))
                rhs = A.mul(self.apply({a: 1}), self.apply({b: 1}))
                if {k: v for k, v in lhs.items() if v} != rhs:
                    raise ValueError("map is not multiplicative")

    def commutes_with(self, other: "AlgebraMap") -> bool:
        return self.matrix @ other.matrix == other.matrix @ self.matrix

    def __eq__(self, other):
        return isinstance(other, AlgebraMap) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)
