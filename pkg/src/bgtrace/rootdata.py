"""Root systems, Weyl groups, lattice sandwiches and Poincare polynomials of flag varieties.

Conventions
-----------
* Simple roots are numbered as in Bourbaki.  The Cartan matrix has entries
  ``a[i][j] = <alpha_i^vee, alpha_j>``, so column j holds the coordinates of
  ``alpha_j`` in the basis of fundamental weights.
* Weights are written in fundamental-weight coordinates, roots in simple-root
  coordinates.  A weight is dominant when all its coordinates are non-negative;
  with the roots of B taken negative this is dominance for the opposite Borel.
* Polynomials are coefficient lists, lowest degree first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy

from .exact import ZZ, AbelianGroupStructure, ExactMatrix, smith_normal_form, solve, QQ

WEYL_CAP = 10 ** 6

_DEGREES = {
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
    "F4": (2, 6, 8, 12),
    "G2": (2, 6),
}


class RootDataError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Cartan matrices


def _simple_cartan(kind: str, n: int) -> List[List[int]]:
    if n < 1:
        raise RootDataError(f"rank must be positive in {kind}{n}")
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j], a[j][i] = aij, aji

    if kind == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif kind == "B":
        if n < 2:
            raise RootDataError("B_n needs n >= 2")
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -1, -2)  # alpha_n short
    elif kind == "C":
        if n < 2:
            raise RootDataError("C_n needs n >= 2")
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -2, -1)  # alpha_n long
    elif kind == "D":
        if n < 3:
            raise RootDataError("D_n needs n >= 3")
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif kind == "E":
        if n not in (6, 7, 8):
            raise RootDataError("E_n needs n in 6, 7, 8")
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif kind == "F":
        if n != 4:
            raise RootDataError("only F4 exists")
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif kind == "G":
        if n != 2:
            raise RootDataError("only G2 exists")
        link(0, 1, -3, -1)  # alpha_1 short
    else:
        raise RootDataError(f"unknown Cartan type {kind}{n}")
    return a


def parse_type(spec: str) -> List[Tuple[str, int]]:
    """"A2", "A1xB2" or "A1+A1" -> [("A", 1), ("B", 2)]."""
    parts = [p for p in re.split(r"[x+ ]+", spec.strip()) if p]
    out = []
    for p in parts:
        m = re.fullmatch(r"([A-Ga-g])_?(\d+)", p)
        if not m:
            raise RootDataError(f"cannot parse Cartan type {p!r}")
        out.append((m.group(1).upper(), int(m.group(2))))
    if not out:
        raise RootDataError("empty Cartan type")
    for kind, n in out:
        _simple_cartan(kind, n)
    return out


# ---------------------------------------------------------------------------
# root systems


class RootSystem:
    """A (possibly reducible) finite root system given by a Cartan type."""

    def __init__(self, cartan_type: str):
        self.name = cartan_type
        self.factors = parse_type(cartan_type)
        blocks = [_simple_cartan(k, n) for k, n in self.factors]
        rank = sum(len(b) for b in blocks)
        a = [[0] * rank for _ in range(rank)]
        off = 0
        for b in blocks:
            for i, row in enumerate(b):
                for j, v in enumerate(row):
                    a[off + i][off + j] = v
            off += len(b)
        self.cartan = a
        self.rank = rank
        self.positive_roots = _positive_roots(a)
        self.positive_coroots = _positive_roots([list(r) for r in zip(*a)])

    @property
    def dim(self) -> int:
        """Dimension of the Lie algebra."""
        return 2 * len(self.positive_roots) + self.rank

    def roots(self) -> List[Tuple[int, ...]]:
        return self.positive_roots + [tuple(-c for c in r) for r in self.positive_roots]

    def root_to_weight(self, root: Sequence[int]) -> Tuple[int, ...]:
        a = self.cartan
        return tuple(sum(a[i][j] * root[j] for j in range(self.rank)) for i in range(self.rank))

    def reflect(self, i: int, weight: Sequence[int]) -> Tuple[int, ...]:
        """s_i on fundamental-weight coordinates."""
        li = weight[i]
        a = self.cartan
        return tuple(weight[k] - li * a[k][i] for k in range(self.rank))

    def highest_root(self) -> Tuple[int, ...]:
        return max(self.positive_roots, key=sum)

    def positive_roots_of(self, subset: Iterable[int]) -> List[Tuple[int, ...]]:
        s = set(subset)
        return [r for r in self.positive_roots
                if all(c == 0 for i, c in enumerate(r) if i not in s)]

    def degrees(self) -> List[int]:
        out = []
        for kind, n in self.factors:
            key = f"{kind}{n}"
            if key in _DEGREES:
                out.extend(_DEGREES[key])
            elif kind == "A":
                out.extend(range(2, n + 2))
            elif kind in "BC":
                out.extend(range(2, 2 * n + 1, 2))
            elif kind == "D":
                out.extend(list(range(2, 2 * n - 1, 2)) + [n])
        return out

    def weyl_order(self) -> int:
        out = 1
        for d in self.degrees():
            out *= d
        return out


def _positive_roots(a: List[List[int]]) -> List[Tuple[int, ...]]:
    """Positive roots in simple-root coordinates by root strings."""
    n = len(a)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                if beta == simple[i]:
                    continue
                # p = how far beta - k alpha_i stays a root
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                pairing = sum(a[i][j] * beta[j] for j in range(n))
                q = p - pairing
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    t = tuple(up)
                    if t not in roots:
                        roots.add(t)
                        nxt.append(t)
        layer = nxt
    return sorted(roots, key=lambda r: (sum(r), r))


# ---------------------------------------------------------------------------
# Weyl groups and Poincare polynomials


def reflect_root(rs: RootSystem, i: int, root: Sequence[int]) -> Tuple[int, ...]:
    """s_i on simple-root coordinates."""
    pairing = sum(rs.cartan[i][j] * root[j] for j in range(rs.rank))
    out = list(root)
    out[i] -= pairing
    return tuple(out)


def inversion_count(rs: RootSystem, word: Sequence[int]) -> int:
    """Number of positive roots the product of simple reflections sends negative."""
    count = 0
    for beta in rs.positive_roots:
        img = beta
        for i in reversed(word):
            img = reflect_root(rs, i, img)
        count += any(c < 0 for c in img)
    return count


def reduced_words(rs: RootSystem, cap: int = WEYL_CAP) -> Dict[Tuple[int, ...], Tuple[int, ...]]:
    """One reduced word per element of W, keyed by the image of rho."""
    rho = tuple([1] * rs.rank)
    words = {rho: ()}
    layer = [rho]
    while layer:
        nxt = []
        for mu in layer:
            for i in range(rs.rank):
                if mu[i] > 0:
                    nu = rs.reflect(i, mu)
                    if nu not in words:
                        words[nu] = (i,) + words[mu]
                        nxt.append(nu)
                        if len(words) > cap:
                            raise RootDataError(f"Weyl group exceeds the enumeration cap {cap}")
        layer = nxt
    return words


def _orbit_lengths(rs: RootSystem, generators: Sequence[int], cap: int = WEYL_CAP
                   ) -> List[Tuple[Tuple[int, ...], int]]:
    """Orbit of rho under the parabolic subgroup generated by ``generators``,
    each point with the length of the unique element sending rho there."""
    rho = tuple([1] * rs.rank)
    seen = {rho: 0}
    layer = [rho]
    length = 0
    while layer:
        length += 1
        nxt = []
        for mu in layer:
            for i in generators:
                if mu[i] > 0:  # s_i lengthens
                    nu = rs.reflect(i, mu)
                    if nu not in seen:
                        seen[nu] = length
                        nxt.append(nu)
                        if len(seen) > cap:
                            raise RootDataError(f"Weyl group exceeds the enumeration cap {cap}")
        layer = nxt
    return list(seen.items())


def _poly_from_lengths(lengths: Iterable[int], step: int = 1) -> List[int]:
    out: List[int] = []
    for l in lengths:
        k = l * step
        if k >= len(out):
            out.extend([0] * (k + 1 - len(out)))
        out[k] += 1
    return out


def _poly_mul(p: Sequence[int], q: Sequence[int]) -> List[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_divmod(p: Sequence[int], q: Sequence[int]) -> Tuple[List[int], List[int]]:
    x = sympy.Symbol("x")
    P = sympy.Poly(list(reversed(p)), x, domain="QQ")
    Q = sympy.Poly(list(reversed(q)), x, domain="QQ")
    quo, rem = P.div(Q)
    conv = lambda poly: [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    return conv(quo), ([] if rem.is_zero else conv(rem))


def poincare_product_formula(rs: RootSystem, step: int = 1) -> List[int]:
    """prod_i (1 + t + ... + t^{d_i - 1}) in the variable t^step."""
    out = [1]
    for d in rs.degrees():
        out = _poly_mul(out, _poly_from_lengths(range(d), step))
    return out


def poincare_W(cartan_type: str, cap: int = WEYL_CAP) -> List[int]:
    """sum over W of t^length; enumerated when |W| <= cap and checked against the
    degrees product formula, otherwise the product formula alone."""
    rs = RootSystem(cartan_type)
    formula = poincare_product_formula(rs)
    if rs.weyl_order() > cap:
        return formula
    counted = _poly_from_lengths(l for _, l in _orbit_lengths(rs, range(rs.rank), cap))
    if counted != formula:
        raise ArithmeticError("Weyl group enumeration disagrees with the product formula")
    return counted


def _check_parabolic(rs: RootSystem, P: Sequence[int], Q: Sequence[int]):
    for i in list(P) + list(Q):
        if not 0 <= i < rs.rank:
            raise RootDataError(f"simple root index {i + 1} out of range")
    if not set(P) <= set(Q):
        raise RootDataError("P must be contained in Q")


def minimal_coset_lengths(rs: RootSystem, P: Sequence[int], Q: Sequence[int],
                          cap: int = WEYL_CAP) -> List[int]:
    """Lengths of the minimal representatives of W_P \\ W_Q.

    w is minimal in W_P w iff w rho pairs positively with every alpha_i^vee, i in P.
    """
    _check_parabolic(rs, P, Q)
    pts = _orbit_lengths(rs, sorted(Q), cap)
    return [l for mu, l in pts if all(mu[i] > 0 for i in P)]


def poincare_flag(cartan_type: str, P: Sequence[int] = (), Q: Optional[Sequence[int]] = None,
                  cap: int = WEYL_CAP) -> List[int]:
    """Poincare polynomial of Q/P in q (only even degrees occur)."""
    rs = RootSystem(cartan_type)
    Q = list(range(rs.rank)) if Q is None else list(Q)
    _check_parabolic(rs, P, Q)
    # order check through the product formula: |W_Q| from the parabolic subsystem
    lengths = minimal_coset_lengths(rs, P, Q, cap)
    poly = _poly_from_lengths(lengths, step=2)
    top = 2 * (len(rs.positive_roots_of(Q)) - len(rs.positive_roots_of(P)))
    if len(poly) - 1 != top or poly[0] != 1:
        raise ArithmeticError("flag variety Poincare polynomial has the wrong degree")
    return poly


def weight_shear_cohomology(cartan_type: str, P: Sequence[int] = (),
                            Q: Optional[Sequence[int]] = None) -> List[int]:
    """dim H^{2m}(Q/P) for m = 0, 1, ...; palindromic by Poincare duality."""
    poly = poincare_flag(cartan_type, P, Q)
    dims = poly[::2]
    if dims != dims[::-1]:
        raise ArithmeticError("Betti numbers violate Poincare duality")
    return dims


# ---------------------------------------------------------------------------
# exact evaluation at roots of unity


@dataclass(frozen=True)
class CyclotomicNumber:
    """sum_k coefficients[k] zeta_n^k in Q(zeta_n)."""

    conductor: int
    coefficients: Tuple = (0, 1)

    @classmethod
    def root_of_unity(cls, n: int, k: int = 1) -> "CyclotomicNumber":
        if n < 1:
            raise ValueError("conductor must be positive")
        k %= n
        return cls(n, tuple([0] * k + [1]))

    @classmethod
    def parse(cls, text: str) -> "CyclotomicNumber":
        """"cyclotomic:n:k" is zeta_n^k."""
        parts = text.split(":")
        if len(parts) != 3 or parts[0] != "cyclotomic":
            raise ValueError("expected cyclotomic:<conductor>:<exponent>")
        return cls.root_of_unity(int(parts[1]), int(parts[2]))

    def to_json(self):
        return {"conductor": self.conductor, "coefficients": [str(c) for c in self.coefficients]}


def _cyclotomic_poly(n: int, x) -> "sympy.Poly":
    return sympy.Poly(sympy.cyclotomic_poly(n, x), x, domain="QQ")


def evaluate(poly: Sequence[int], q) -> object:
    """Exact value of a polynomial at q: an int/Fraction, a CyclotomicNumber
    (returned reduced modulo the cyclotomic polynomial), or a sympy expression."""
    if isinstance(q, CyclotomicNumber):
        x = sympy.Symbol("x")
        phi = _cyclotomic_poly(q.conductor, x)
        qx = sympy.Poly(list(reversed([sympy.Rational(str(c)) for c in q.coefficients])) or [0],
                        x, domain="QQ")
        acc = sympy.Poly(0, x, domain="QQ")
        for c in reversed(poly):
            acc = (acc * qx + c).rem(phi)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(acc.all_coeffs())]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return CyclotomicNumber(q.conductor, tuple(int(c) if c.denominator == 1 else c
                                                   for c in coeffs))
    if isinstance(q, sympy.Basic) and not q.is_number:
        return sympy.expand(sum(c * q ** k for k, c in enumerate(poly)))
    q = Fraction(q)
    return sum(c * q ** k for k, c in enumerate(poly))


def _is_zero(value) -> bool:
    if isinstance(value, CyclotomicNumber):
        return not any(value.coefficients)
    if isinstance(value, sympy.Basic):
        return value == 0
    return value == 0


@dataclass
class SplittingResult:
    splits: bool
    value: object
    polynomial: List[int]


def splitting_criterion(cartan_type: str, P: Sequence[int], Q: Optional[Sequence[int]],
                        q) -> SplittingResult:
    """True iff the Poincare polynomial of Q/P does not vanish at q."""
    if not isinstance(q, (CyclotomicNumber, sympy.Basic)) and Fraction(q) == 0:
        raise ValueError("q must be invertible")
    if isinstance(q, CyclotomicNumber) and not any(q.coefficients):
        raise ValueError("q must be invertible")
    poly = poincare_flag(cartan_type, P, Q)
    value = evaluate(poly, q)
    return SplittingResult(not _is_zero(value), value, poly)


def brion_peyre_check(cartan_type: str, P: Sequence[int], Q: Sequence[int]) -> bool:
    """P_{Q/P} divides P_{G/B} exactly."""
    rs = RootSystem(cartan_type)
    full = poincare_flag(cartan_type, [], list(range(rs.rank)))
    part = poincare_flag(cartan_type, P, Q)
    _, rem = _poly_divmod(full, part)
    return not rem


def parabolic_pairs(rank: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    subsets = [tuple(i for i in range(rank) if mask >> i & 1) for mask in range(1 << rank)]
    return [(p, q) for q in subsets for p in subsets if set(p) <= set(q)]


# ---------------------------------------------------------------------------
# root data


def _lattice_contains(gens: ExactMatrix, vectors: ExactMatrix) -> bool:
    """Every column of ``vectors`` lies in the Z-span of the columns of ``gens``."""
    base = smith_normal_form(gens, left=False, right=False)
    both = smith_normal_form(ExactMatrix.hstack([gens, vectors], rows=gens.rows, ring=ZZ),
                             left=False, right=False)
    return base.invariant_factors == both.invariant_factors


class RootDatum:
    """Lattices <Phi> inside X inside Lambda + Z^torus.

    ``character_generators`` are columns in coordinates (fundamental weights of the
    semisimple part, then the torus characters).
    """

    def __init__(self, cartan_type: str, character_generators: Sequence[Sequence[int]],
                 torus_rank: int = 0, name: str = ""):
        self.roots = RootSystem(cartan_type)
        self.torus_rank = torus_rank
        self.name = name or cartan_type
        r = self.roots.rank
        n = r + torus_rank
        gens = [list(g) for g in character_generators]
        for g in gens:
            if len(g) != n:
                raise RootDataError(f"character generator {g} should have length {n}")
        self.X = ExactMatrix.from_columns(ZZ, n, [{i: v for i, v in enumerate(g) if v}
                                                  for g in gens])
        roots = ExactMatrix.from_columns(
            ZZ, n, [{i: self.roots.cartan[i][j] for i in range(r) if self.roots.cartan[i][j]}
                    for j in range(r)])
        if not _lattice_contains(self.X, roots):
            raise RootDataError("the character lattice must contain the root lattice")

    @classmethod
    def simply_connected(cls, cartan_type: str, torus_rank: int = 0):
        rs = RootSystem(cartan_type)
        n = rs.rank + torus_rank
        return cls(cartan_type, [[int(i == j) for i in range(n)] for j in range(n)], torus_rank,
                   name=f"sc {cartan_type}")

    @classmethod
    def adjoint(cls, cartan_type: str, torus_rank: int = 0):
        rs = RootSystem(cartan_type)
        r = rs.rank
        gens = [[rs.cartan[i][j] for i in range(r)] + [0] * torus_rank for j in range(r)]
        gens += [[0] * r + [int(i == k) for i in range(torus_rank)] for k in range(torus_rank)]
        return cls(cartan_type, gens, torus_rank, name=f"ad {cartan_type}")

    @classmethod
    def from_json(cls, cartan_type: str, obj, torus_rank: int = 0):
        if obj in ("weight", "sc"):
            return cls.simply_connected(cartan_type, torus_rank)
        if obj in ("root", "adjoint"):
            return cls.adjoint(cartan_type, torus_rank)
        if isinstance(obj, dict):
            return cls(cartan_type, obj["generators"], obj.get("torus_rank", torus_rank))
        return cls(cartan_type, obj, torus_rank)

    def derived_characters(self) -> ExactMatrix:
        """Restriction of X to the derived torus: projection to the semisimple coordinates."""
        r = self.roots.rank
        return ExactMatrix.from_columns(ZZ, r, [{i: v for i, v in col.items() if i < r}
                                                for col in self.X.column_dicts()])

    def fundamental_group(self) -> AbelianGroupStructure:
        """Invariant factors of Lambda / X_der."""
        r = self.roots.rank
        if r == 0:
            return AbelianGroupStructure(0, ())
        sf = smith_normal_form(self.derived_characters(), left=False, right=False)
        if sf.rank < r:
            raise ArithmeticError("derived character lattice is not of full rank")
        return AbelianGroupStructure.from_cyclic_orders(sf.invariant_factors)

    def schur_multiplier(self) -> AbelianGroupStructure:
        out = self.fundamental_group()
        if out.free_rank:
            raise ArithmeticError("the multiplier of a connected group must be finite")
        return out


def fundamental_group(datum: RootDatum) -> AbelianGroupStructure:
    return datum.fundamental_group()


def schur_multiplier_connected(datum: RootDatum) -> AbelianGroupStructure:
    return datum.schur_multiplier()


def connection_index(cartan_type: str) -> int:
    rs = RootSystem(cartan_type)
    m = ExactMatrix.from_dense(ZZ, rs.cartan)
    out = 1
    for d in smith_normal_form(m, left=False, right=False).invariant_factors:
        out *= d
    return out


def minuscule_weights(rs: RootSystem) -> List[Tuple[int, ...]]:
    """Zero and the dominant weights pairing with every coroot in {-1, 0, 1}."""
    out = [tuple([0] * rs.rank)]
    for i in range(rs.rank):
        w = tuple(int(i == j) for j in range(rs.rank))
        if all(sum(c * w[k] for k, c in enumerate(cr)) <= 1 for cr in rs.positive_coroots):
            out.append(w)
    return out


def in_root_lattice(rs: RootSystem, weight: Sequence[int]) -> bool:
    m = ExactMatrix.from_dense(QQ, rs.cartan)
    x = solve(m, {i: v for i, v in enumerate(weight) if v})
    return x is not None and all(Fraction(v).denominator == 1 for v in x.values())


def minuscule_lift(datum: RootDatum, weight: Sequence[int]) -> Tuple[int, ...]:
    """The minuscule dominant weight (or zero) in the class of ``weight`` mod <Phi>."""
    rs = datum.roots
    if len(weight) != rs.rank:
        raise RootDataError(f"expected a weight with {rs.rank} coordinates")
    if any(not isinstance(v, int) for v in weight):
        raise RootDataError("the class must be represented by an integral weight")
    hits = [mu for mu in minuscule_weights(rs)
            if in_root_lattice(rs, [a - b for a, b in zip(weight, mu)])]
    if len(hits) != 1:
        raise ArithmeticError("classes and minuscule weights are not in bijection")
    return hits[0]


def product_multiplier(first: RootDatum, second: RootDatum,
                       components_first: Sequence[int] = (),
                       components_second: Sequence[int] = ()) -> dict:
    """M(G x H) = M(G) x M(H) x Hom(pi_0(G^ab), pi_0(H^ab)^vee); the last factor is
    given by the invariant factors of finite component-group data and vanishes
    when either side is connected."""
    mg, mh = first.schur_multiplier(), second.schur_multiplier()
    cross = [gcd(a, b) for a in components_first for b in components_second]
    extra = AbelianGroupStructure.from_cyclic_orders(cross)
    total = AbelianGroupStructure.from_cyclic_orders(list(mg.torsion) + list(mh.torsion) + cross)
    return {"first": mg, "second": mh, "bimultiplicative": extra, "total": total}
