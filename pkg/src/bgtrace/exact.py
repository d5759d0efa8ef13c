"""Exact sparse linear algebra over Z, Q and Z/p, and bounded cochain complexes.

Matrices act on column vectors: an ``ExactMatrix`` of shape ``(rows, cols)``
maps a space of dimension ``cols`` to one of dimension ``rows``.  Entries are
Python ints (over Z and Z/p) or ints/Fractions (over Q); nothing here ever
touches floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple


# ---------------------------------------------------------------------------
# rings


@dataclass(frozen=True)
class Ring:
    kind: str  # "Z", "Q" or "Zmod"
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Zmod"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Zmod" and self.modulus < 2:
            raise ValueError("Z/n needs n >= 2")

    @property
    def is_field(self) -> bool:
        return self.kind == "Q" or (self.kind == "Zmod" and _is_prime(self.modulus))

    def normalize(self, v):
        if self.kind == "Zmod":
            return int(v) % self.modulus
        if self.kind == "Z":
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError(f"{v} is not an integer")
                return v.numerator
            return int(v)
        if isinstance(v, Fraction) and v.denominator == 1:
            return v.numerator
        if isinstance(v, int):
            return v
        return Fraction(v)

    def inverse(self, v):
        if self.kind == "Q":
            return Fraction(1) / v
        if self.kind == "Zmod":
            return pow(int(v), -1, self.modulus)
        if v in (1, -1):
            return v
        raise ZeroDivisionError(f"{v} is not a unit in Z")

    def __str__(self):
        return f"Z/{self.modulus}" if self.kind == "Zmod" else self.kind


ZZ = Ring("Z")
QQ = Ring("Q")


def Zmod(n: int) -> Ring:
    return Ring("Zmod", n)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


# ---------------------------------------------------------------------------
# matrices


class ExactMatrix:
    """Sparse exact matrix; immutable after construction."""

    __slots__ = ("ring", "rows", "cols", "_rows", "_col_cache")

    def __init__(self, ring: Ring, rows: int, cols: int, entries=None):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        data: Dict[int, Dict[int, object]] = {}
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for (r, c), v in items:
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
                v = ring.normalize(v)
                if v == 0:
                    continue
                row = data.setdefault(r, {})
                v = ring.normalize(row.get(c, 0) + v)
                if v == 0:
                    del row[c]
                    if not row:
                        del data[r]
                else:
                    row[c] = v
        self._rows = data
        self._col_cache = None

    # construction helpers -------------------------------------------------

    @classmethod
    def _from_rows(cls, ring, rows, cols, data):
        m = cls.__new__(cls)
        m.ring, m.rows, m.cols = ring, rows, cols
        m._rows = {r: dict(row) for r, row in data.items() if row}
        m._col_cache = None
        return m

    @classmethod
    def zero(cls, ring, rows, cols):
        return cls(ring, rows, cols)

    @classmethod
    def identity(cls, ring, n):
        return cls._from_rows(ring, n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def from_dense(cls, ring, dense: Sequence[Sequence], cols: Optional[int] = None):
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        entries = {}
        for r, line in enumerate(dense):
            if len(line) != cols:
                raise ValueError("ragged dense matrix")
            for c, v in enumerate(line):
                if v:
                    entries[(r, c)] = v
        return cls(ring, rows, cols, entries)

    @classmethod
    def from_columns(cls, ring, rows: int, columns: Sequence[Dict[int, object]]):
        entries = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                entries[(r, c)] = entries.get((r, c), 0) + v
        return cls(ring, rows, len(columns), entries)

    @classmethod
    def diagonal(cls, ring, values, rows=None, cols=None):
        n = len(values)
        rows = n if rows is None else rows
        cols = n if cols is None else cols
        return cls(ring, rows, cols, {(i, i): v for i, v in enumerate(values)})

    # access ---------------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, rc):
        r, c = rc
        return self._rows.get(r, {}).get(c, 0)

    def entries(self):
        for r in sorted(self._rows):
            row = self._rows[r]
            for c in sorted(row):
                yield (r, c), row[c]

    def row(self, r) -> Dict[int, object]:
        return dict(self._rows.get(r, {}))

    def column_dicts(self) -> List[Dict[int, object]]:
        cols = [dict() for _ in range(self.cols)]
        for r, row in self._rows.items():
            for c, v in row.items():
                cols[c][r] = v
        return cols

    @property
    def nnz(self):
        return sum(len(row) for row in self._rows.values())

    def is_zero(self):
        return not self._rows

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, row in self._rows.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def __repr__(self):
        return f"ExactMatrix({self.ring}, {self.rows}x{self.cols}, nnz={self.nnz})"

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.shape == other.shape and self.ring == other.ring
                and self._rows == other._rows)

    def __hash__(self):
        return hash((self.ring, self.shape, tuple(self.entries())))

    # arithmetic -----------------------------------------------------------

    def _check_same(self, other):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch {self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check_same(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        data = {r: dict(row) for r, row in self._rows.items()}
        norm = self.ring.normalize
        for r, row in other._rows.items():
            target = data.setdefault(r, {})
            for c, v in row.items():
                s = norm(target.get(c, 0) + v)
                if s == 0:
                    target.pop(c, None)
                else:
                    target[c] = s
        return ExactMatrix._from_rows(self.ring, self.rows, self.cols, data)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        norm = self.ring.normalize
        data = {}
        for r, row in self._rows.items():
            new = {c: norm(v * k) for c, v in row.items()}
            new = {c: v for c, v in new.items() if v != 0}
            if new:
                data[r] = new
        return ExactMatrix._from_rows(self.ring, self.rows, self.cols, data)

    def __matmul__(self, other):
        self._check_same(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        norm = self.ring.normalize
        orows = other._rows
        data = {}
        for r, row in self._rows.items():
            acc: Dict[int, object] = {}
            for k, a in row.items():
                brow = orows.get(k)
                if not brow:
                    continue
                for c, b in brow.items():
                    acc[c] = acc.get(c, 0) + a * b
            acc = {c: norm(v) for c, v in acc.items()}
            acc = {c: v for c, v in acc.items() if v != 0}
            if acc:
                data[r] = acc
        return ExactMatrix._from_rows(self.ring, self.rows, other.cols, data)

    def apply(self, vec: Dict[int, object]) -> Dict[int, object]:
        """Multiply by a sparse column vector ``{index: value}``."""
        norm = self.ring.normalize
        cols = self._col_cache
        if cols is None:
            cols = {}
            for r, row in self._rows.items():
                for c, v in row.items():
                    cols.setdefault(c, []).append((r, v))
            self._col_cache = cols
        acc: Dict[int, object] = {}
        for c, x in vec.items():
            if not x:
                continue
            for r, v in cols.get(c, ()):
                acc[r] = acc.get(r, 0) + v * x
        out = {}
        for r, s in acc.items():
            s = norm(s)
            if s != 0:
                out[r] = s
        return out

    def transpose(self):
        data: Dict[int, Dict[int, object]] = {}
        for r, row in self._rows.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return ExactMatrix._from_rows(self.ring, self.cols, self.rows, data)

    @property
    def T(self):
        return self.transpose()

    def change_ring(self, ring: Ring):
        data = {}
        for r, row in self._rows.items():
            new = {c: ring.normalize(v) for c, v in row.items()}
            new = {c: v for c, v in new.items() if v != 0}
            if new:
                data[r] = new
        return ExactMatrix._from_rows(ring, self.rows, self.cols, data)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]):
        rmap = {r: i for i, r in enumerate(rows)}
        cmap = {c: j for j, c in enumerate(cols)}
        data = {}
        for r, row in self._rows.items():
            if r not in rmap:
                continue
            new = {cmap[c]: v for c, v in row.items() if c in cmap}
            if new:
                data[rmap[r]] = new
        return ExactMatrix._from_rows(self.ring, len(rows), len(cols), data)

    @staticmethod
    def hstack(mats: Sequence["ExactMatrix"], rows=None, ring=None):
        if not mats:
            return ExactMatrix(ring or QQ, rows or 0, 0)
        ring = mats[0].ring
        rows = mats[0].rows
        data: Dict[int, Dict[int, object]] = {}
        off = 0
        for m in mats:
            if m.rows != rows:
                raise ValueError("hstack row mismatch")
            for r, row in m._rows.items():
                target = data.setdefault(r, {})
                for c, v in row.items():
                    target[c + off] = v
            off += m.cols
        return ExactMatrix._from_rows(ring, rows, off, data)

    @staticmethod
    def vstack(mats: Sequence["ExactMatrix"]):
        return ExactMatrix.hstack([m.T for m in mats]).T

    @staticmethod
    def block_diagonal(mats: Sequence["ExactMatrix"], ring=None):
        ring = mats[0].ring if mats else (ring or QQ)
        data = {}
        ro = co = 0
        for m in mats:
            for r, row in m._rows.items():
                data[r + ro] = {c + co: v for c, v in row.items()}
            ro += m.rows
            co += m.cols
        return ExactMatrix._from_rows(ring, ro, co, data)

    # linear algebra -------------------------------------------------------

    def rank(self) -> int:
        if self.ring.kind == "Z":
            return self.change_ring(QQ).rank()
        return len(_echelon(self))

    def kernel_basis(self) -> "ExactMatrix":
        return kernel_basis(self)

    def image_basis(self) -> "ExactMatrix":
        """Columns forming a basis of the column space (over a field)."""
        ech = _echelon(self.T)
        cols = [dict(row) for _, row in sorted(ech.items())]
        return ExactMatrix.from_columns(self.ring, self.rows, cols)

    # serialization --------------------------------------------------------

    def to_json(self) -> dict:
        quads = []
        for (r, c), v in self.entries():
            v = Fraction(v)
            quads.append([r, c, v.numerator, v.denominator])
        ring = {"kind": self.ring.kind}
        if self.ring.kind == "Zmod":
            ring["modulus"] = self.ring.modulus
        return {"ring": ring, "rows": self.rows, "cols": self.cols, "entries": quads}

    @classmethod
    def from_json(cls, obj) -> "ExactMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        ring = Ring(obj["ring"]["kind"], obj["ring"].get("modulus", 0))
        entries = {}
        for r, c, num, den in obj["entries"]:
            entries[(r, c)] = Fraction(num, den)
        return cls(ring, obj["rows"], obj["cols"], entries)


# ---------------------------------------------------------------------------
# elimination over fields


def _echelon(m: ExactMatrix) -> Dict[int, Dict[int, object]]:
    """Row echelon form of the row space, keyed by pivot column.

    Over Q the rows are kept integral (fraction free, content removed); over
    Z/p pivots are normalized to 1.
    """
    ring = m.ring
    if not ring.is_field:
        raise ValueError(f"elimination needs a field, got {ring}")
    pivots: Dict[int, Dict[int, object]] = {}
    if ring.kind == "Q":
        for r in sorted(m._rows):
            row = _integral_row(m._rows[r])
            while row:
                c = min(row)
                p = pivots.get(c)
                if p is None:
                    pivots[c] = row
                    break
                a, b = p[c], row[c]
                new = {k: v * a for k, v in row.items()}
                for k, v in p.items():
                    s = new.get(k, 0) - b * v
                    if s:
                        new[k] = s
                    else:
                        new.pop(k, None)
                row = _primitive(new)
    else:
        n = ring.modulus
        for r in sorted(m._rows):
            row = dict(m._rows[r])
            while row:
                c = min(row)
                p = pivots.get(c)
                if p is None:
                    inv = pow(row[c], -1, n)
                    pivots[c] = {k: v * inv % n for k, v in row.items()}
                    break
                b = row[c]
                for k, v in p.items():
                    s = (row.get(k, 0) - b * v) % n
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
    return pivots


def _integral_row(row):
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    out = {c: int(v * den) for c, v in row.items()}
    return _primitive(out)


def _primitive(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


def rref(m: ExactMatrix) -> Tuple[List[int], Dict[int, Dict[int, object]]]:
    """Reduced row echelon form over a field: (pivot columns, rows by pivot)."""
    ring = m.ring
    ech = _echelon(m)
    piv = sorted(ech)
    red: Dict[int, Dict[int, object]] = {}
    for c in piv:
        inv = ring.inverse(ech[c][c])
        red[c] = {k: ring.normalize(v * inv) for k, v in ech[c].items()}
    for c in reversed(piv):
        row = red[c]
        for c2 in piv:
            if c2 >= c:
                break
            r2 = red[c2]
            f = r2.get(c)
            if f:
                for k, v in row.items():
                    s = ring.normalize(r2.get(k, 0) - f * v)
                    if s:
                        r2[k] = s
                    else:
                        r2.pop(k, None)
    return piv, red


def kernel_basis(m: ExactMatrix) -> ExactMatrix:
    """Columns spanning the kernel; over Z the span is saturated."""
    if m.ring.kind == "Z":
        sf = smith_normal_form(m, left=False, right=True)
        r = len(sf.invariant_factors) + sf.unit_count
        cols = sf.right.column_dicts()[r:]
        return ExactMatrix.from_columns(ZZ, m.cols, cols)
    piv, red = rref(m)
    pivset = set(piv)
    cols = []
    for f in range(m.cols):
        if f in pivset:
            continue
        vec = {f: 1}
        for c in piv:
            v = red[c].get(f)
            if v:
                vec[c] = m.ring.normalize(-v)
        cols.append(vec)
    return ExactMatrix.from_columns(m.ring, m.cols, cols)


def solve(m: ExactMatrix, rhs: Dict[int, object]) -> Optional[Dict[int, object]]:
    """One solution of ``m x = rhs`` over a field, or None."""
    aug = ExactMatrix.hstack([m, ExactMatrix.from_columns(m.ring, m.rows, [rhs])])
    piv, red = rref(aug)
    if m.cols in piv:
        return None
    x = {}
    for c in piv:
        v = red[c].get(m.cols)
        if v:
            x[c] = v
    return x


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """``left @ m @ right`` is diagonal with entries ``1,...,1, d_1, ..., d_k, 0...``.

    ``invariant_factors`` lists the nonunit factors d_1 | d_2 | ...; ``unit_count``
    the number of leading 1s.  Transforms are None when not requested.
    """

    invariant_factors: Tuple[int, ...]
    unit_count: int
    left: Optional[ExactMatrix] = None
    right: Optional[ExactMatrix] = None
    left_inverse: Optional[ExactMatrix] = None

    @property
    def rank(self):
        return self.unit_count + len(self.invariant_factors)

    @property
    def diagonal(self):
        return (1,) * self.unit_count + self.invariant_factors


def _xgcd(a, b):
    x, nx, y, ny = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
    if a < 0:
        a, x, y = -a, -x, -y
    return a, x, y


class _SparseSNF:
    """Sparse elimination engine behind :func:`smith_normal_form`.

    Unit pivots are taken first, chosen to limit fill-in; otherwise the
    pivot is the entry of smallest absolute value, ties broken by (row, col).
    """

    def __init__(self, m: ExactMatrix, left: bool, left_inv: bool, right: bool):
        self.rows = {r: dict(row) for r, row in m._rows.items()}
        self.cols: Dict[int, set] = {}
        for r, row in self.rows.items():
            for c in row:
                self.cols.setdefault(c, set()).add(r)
        self.nrows, self.ncols = m.rows, m.cols
        self.U = {i: {i: 1} for i in range(m.rows)} if left else None
        self.Uinv_cols = {i: {i: 1} for i in range(m.rows)} if left_inv else None
        self.V_cols = {i: {i: 1} for i in range(m.cols)} if right else None

    # bookkeeping ----------------------------------------------------------

    def _set(self, r, c, v):
        row = self.rows.setdefault(r, {})
        if v:
            if c not in row:
                self.cols.setdefault(c, set()).add(r)
            row[c] = v
        else:
            if c in row:
                del row[c]
                s = self.cols.get(c)
                if s is not None:
                    s.discard(r)
                    if not s:
                        del self.cols[c]
            if not row:
                del self.rows[r]

    @staticmethod
    def _combine(target: Dict[int, int], source: Dict[int, int], q):
        """target += q * source (dict vectors)."""
        for k, v in source.items():
            s = target.get(k, 0) + q * v
            if s:
                target[k] = s
            else:
                target.pop(k, None)

    def row_addmul(self, k, r, q):
        """row_k += q * row_r."""
        if not q:
            return
        src = self.rows.get(r, {})
        target = self.rows.setdefault(k, {})
        cols = self.cols
        for c, v in src.items():
            old = target.get(c)
            if old is None:
                target[c] = q * v
                s = cols.get(c)
                if s is None:
                    cols[c] = {k}
                else:
                    s.add(k)
            else:
                s = old + q * v
                if s:
                    target[c] = s
                else:
                    del target[c]
                    cset = cols[c]
                    cset.discard(k)
                    if not cset:
                        del cols[c]
        if not target:
            del self.rows[k]
        if self.U is not None:
            self._combine(self.U.setdefault(k, {}), self.U[r], q)
        if self.Uinv_cols is not None:
            # U' = (I + q e_k e_r^T) U  =>  U'^{-1} = U^{-1} (I - q e_k e_r^T)
            self._combine(self.Uinv_cols[r], self.Uinv_cols[k], -q)

    def col_addmul(self, k, c, q):
        """col_k += q * col_c."""
        if not q:
            return
        for r in list(self.cols.get(c, ())):
            v = self.rows[r][c]
            self._set(r, k, self.rows.get(r, {}).get(k, 0) + q * v)
        if self.V_cols is not None:
            self._combine(self.V_cols[k], self.V_cols[c], q)

    def row_bezout(self, r, k, c):
        """Replace rows r, k so that row r holds gcd at column c and row k holds 0."""
        a = self.rows[r][c]
        b = self.rows[k][c]
        g, x, y = _xgcd(a, b)
        ra, rb = dict(self.rows.get(r, {})), dict(self.rows.get(k, {}))
        newr: Dict[int, int] = {}
        newk: Dict[int, int] = {}
        self._combine(newr, ra, x)
        self._combine(newr, rb, y)
        self._combine(newk, ra, -b // g)
        self._combine(newk, rb, a // g)
        for cc in set(ra) | set(rb):
            self._set(r, cc, newr.get(cc, 0))
            self._set(k, cc, newk.get(cc, 0))
        if self.U is not None:
            ua, ub = self.U.get(r, {}), self.U.get(k, {})
            nr: Dict[int, int] = {}
            nk: Dict[int, int] = {}
            self._combine(nr, ua, x)
            self._combine(nr, ub, y)
            self._combine(nk, ua, -b // g)
            self._combine(nk, ub, a // g)
            self.U[r], self.U[k] = nr, nk
        if self.Uinv_cols is not None:
            # inverse of [[x, y], [-b/g, a/g]] is [[a/g, -y], [b/g, x]]
            ca, cb = self.Uinv_cols[r], self.Uinv_cols[k]
            nr, nk = {}, {}
            self._combine(nr, ca, a // g)
            self._combine(nr, cb, b // g)
            self._combine(nk, ca, -y)
            self._combine(nk, cb, x)
            self.Uinv_cols[r], self.Uinv_cols[k] = nr, nk

    def col_bezout(self, c, k, r):
        """Replace cols c, k so that col c holds gcd at row r and col k holds 0."""
        a = self.rows[r][c]
        b = self.rows[r][k]
        g, x, y = _xgcd(a, b)
        ca = {rr: self.rows[rr][c] for rr in self.cols.get(c, ())}
        cb = {rr: self.rows[rr][k] for rr in self.cols.get(k, ())}
        for rr in set(ca) | set(cb):
            va, vb = ca.get(rr, 0), cb.get(rr, 0)
            self._set(rr, c, x * va + y * vb)
            self._set(rr, k, (-b // g) * va + (a // g) * vb)
        if self.V_cols is not None:
            va, vb = self.V_cols[c], self.V_cols[k]
            nc: Dict[int, int] = {}
            nk: Dict[int, int] = {}
            self._combine(nc, va, x)
            self._combine(nc, vb, y)
            self._combine(nk, va, -b // g)
            self._combine(nk, vb, a // g)
            self.V_cols[c], self.V_cols[k] = nc, nk

    def negate_row(self, r):
        for c, v in list(self.rows[r].items()):
            self.rows[r][c] = -v
        if self.U is not None:
            self.U[r] = {k: -v for k, v in self.U[r].items()}
        if self.Uinv_cols is not None:
            self.Uinv_cols[r] = {k: -v for k, v in self.Uinv_cols[r].items()}

    # pivoting -------------------------------------------------------------

    def _next_unit(self):
        """A unit entry chosen to limit fill-in (deterministic).

        Scans the smaller of the active row and column sets for the shortest
        line holding a unit; within it the unit whose crossing line is
        shortest is taken, ties broken by (row, col).
        """
        rows, cols = self.rows, self.cols
        best = None
        if len(cols) <= len(rows):
            for c, rs in cols.items():
                n = len(rs)
                if best is not None and n > best[0]:
                    continue
                for r in rs:
                    v = rows[r][c]
                    if v == 1 or v == -1:
                        key = (n, len(rows[r]), r, c)
                        if best is None or key < best:
                            best = key
        else:
            for r, row in rows.items():
                n = len(row)
                if best is not None and n > best[0]:
                    continue
                for c, v in row.items():
                    if v == 1 or v == -1:
                        key = (n, len(cols[c]), r, c)
                        if best is None or key < best:
                            best = key
        if best is None:
            return None
        return best[2], best[3]

    def _min_entry(self):
        best = None
        for r, row in self.rows.items():
            for c, v in row.items():
                key = (abs(v), r, c)
                if best is None or key < best:
                    best = key
        return best

    def _clear_unit(self, r, c):
        p = self.rows[r][c]
        if p == -1:
            self.negate_row(r)
        for k in sorted(self.cols[c] - {r}):
            q = -self.rows[k][c]
            self.row_addmul(k, r, q)
        # column c is now supported on row r only; clearing row r by column
        # operations leaves every other row untouched.
        for k in sorted(set(self.rows[r]) - {c}):
            q = -self.rows[r][k]
            if self.V_cols is not None:
                self._combine(self.V_cols[k], self.V_cols[c], q)
        for k in list(self.rows[r]):
            self._set(r, k, 0)

    def _clear_general(self, r, c):
        while True:
            changed = False
            a = self.rows[r][c]
            for k in sorted(self.cols[c] - {r}):
                b = self.rows[k][c]
                if b % a == 0:
                    self.row_addmul(k, r, -(b // a))
                else:
                    self.row_bezout(r, k, c)
                    changed = True
                    break
            if changed:
                continue
            a = self.rows[r][c]
            for k in sorted(set(self.rows[r]) - {c}):
                b = self.rows[r][k]
                if b % a == 0:
                    self.col_addmul(k, c, -(b // a))
                else:
                    self.col_bezout(c, k, r)
                    changed = True
                    break
            if changed:
                continue
            a = self.rows[r][c]
            bad = None
            for rr in sorted(self.rows):
                if rr == r:
                    continue
                for cc, v in self.rows[rr].items():
                    if v % a:
                        bad = rr
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            self.row_addmul(r, bad, 1)
        if self.rows[r][c] < 0:
            self.negate_row(r)
        d = self.rows[r][c]
        self._set(r, c, 0)
        return d

    def run(self):
        pivots = []  # (row, col, d)
        while self.rows:
            u = self._next_unit()
            if u is not None:
                r, c = u
                self._clear_unit(r, c)
                pivots.append((r, c, 1))
                continue
            _, r, c = self._min_entry()
            d = self._clear_general(r, c)
            pivots.append((r, c, d))
        return pivots


def smith_normal_form(m: ExactMatrix, left: bool = True, right: bool = True,
                      left_inverse: bool = False) -> SmithForm:
    """Smith normal form of an integer matrix.

    Transforms are optional because the large bar-resolution boundaries only
    need the invariant factors (and at most the row side).
    """
    if m.ring.kind != "Z":
        raise ValueError("smith_normal_form needs an integer matrix")
    eng = _SparseSNF(m, left, left_inverse, right)
    pivots = eng.run()
    # extraction order already respects divisibility; only units are hoisted
    units = [p for p in pivots if p[2] == 1]
    rest = [p for p in pivots if p[2] != 1]
    ordered = units + rest
    used_r = [p[0] for p in ordered]
    used_c = [p[1] for p in ordered]
    row_order = used_r + [r for r in range(m.rows) if r not in set(used_r)]
    col_order = used_c + [c for c in range(m.cols) if c not in set(used_c)]
    L = R = Linv = None
    if left:
        L = ExactMatrix._from_rows(ZZ, m.rows, m.rows,
                                   {i: eng.U.get(r, {}) for i, r in enumerate(row_order)})
    if left_inverse:
        cols = [eng.Uinv_cols[r] for r in row_order]
        Linv = ExactMatrix.from_columns(ZZ, m.rows, cols)
    if right:
        cols = [eng.V_cols[c] for c in col_order]
        R = ExactMatrix.from_columns(ZZ, m.cols, cols)
    return SmithForm(tuple(p[2] for p in rest), len(units), L, R, Linv)


def invariant_factors(m: ExactMatrix) -> Tuple[int, ...]:
    return smith_normal_form(m, left=False, right=False).invariant_factors


# ---------------------------------------------------------------------------
# abelian groups


@dataclass(frozen=True)
class AbelianGroupStructure:
    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        if any(d <= 1 for d in t):
            raise ValueError(f"torsion factors must exceed 1: {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion factors must form a divisibility chain: {t}")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int], free_rank: int = 0):
        """Normalize an arbitrary list of cyclic orders into invariant factors."""
        orders = [o for o in orders if o != 1]
        if not orders:
            return cls(free_rank, ())
        if any(o <= 0 for o in orders):
            raise ValueError("cyclic orders must be positive")
        sf = smith_normal_form(ExactMatrix.diagonal(ZZ, orders), left=False, right=False)
        return cls(free_rank, sf.invariant_factors)

    @property
    def order(self) -> Optional[int]:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


class Subquotient:
    """The abelian group ``span(numerator) / span(denominator)`` inside Z^n.

    ``numerator`` columns must be linearly independent and the denominator
    lattice must lie inside the numerator lattice.  Provides the group
    structure together with coordinates of classes and representatives of
    the standard generators.
    """

    def __init__(self, numerator: ExactMatrix, denominator: ExactMatrix):
        if numerator.ring.kind != "Z" or denominator.ring.kind != "Z":
            raise ValueError("Subquotient works over Z")
        self.ambient = numerator.rows
        self.numerator = numerator
        self._nsf = smith_normal_form(numerator, left=True, right=True)
        if self._nsf.rank != numerator.cols:
            raise ValueError("numerator columns are dependent")
        k = numerator.cols
        rel_cols = []
        for col in denominator.column_dicts():
            coords = self.lattice_coordinates(col)
            if coords is None:
                raise ValueError("denominator is not inside the numerator")
            rel_cols.append(coords)
        rel = ExactMatrix.from_columns(ZZ, k, rel_cols)
        self._rsf = smith_normal_form(rel, left=True, right=False, left_inverse=True)
        diag = self._rsf.diagonal
        self.orders = list(diag) + [0] * (k - len(diag))  # 1 = trivial, 0 = free
        self.structure = AbelianGroupStructure(
            free_rank=k - len(diag), torsion=self._rsf.invariant_factors)

    def lattice_coordinates(self, vec: Dict[int, int]) -> Optional[Dict[int, int]]:
        """Integer coordinates of ``vec`` in the numerator basis, or None."""
        sf = self._nsf
        y = sf.left.apply(vec)
        diag = sf.diagonal
        z = {}
        for i, v in y.items():
            if i >= len(diag):
                return None
            d = diag[i]
            if v % d:
                return None
            z[i] = v // d
        return sf.right.apply(z)

    def class_of(self, vec: Dict[int, int]) -> Tuple[int, ...]:
        """Coordinates of the class of ``vec``: torsion coordinates reduced mod
        their orders, then free coordinates."""
        c = self.lattice_coordinates(vec)
        if c is None:
            raise ValueError("vector is not in the numerator lattice")
        y = self._rsf.left.apply(c)
        tors, free = [], []
        for i, order in enumerate(self.orders):
            v = y.get(i, 0)
            if order == 0:
                free.append(v)
            elif order > 1:
                tors.append(v % order)
        return tuple(tors + free)

    def generators(self) -> List[Dict[int, int]]:
        """Ambient vectors representing the standard generators (torsion first)."""
        Linv = self._rsf.left_inverse.column_dicts()
        tors, free = [], []
        for i, order in enumerate(self.orders):
            if order == 1:
                continue
            vec = self.numerator.apply(Linv[i])
            (free if order == 0 else tors).append(vec)
        return tors + free


# ---------------------------------------------------------------------------
# cochain complexes


class ChainComplex:
    """Bounded cochain complex of free modules of finite rank.

    ``dims[d]`` is the rank of term(d) for ``lo <= d <= hi``;
    ``diffs[d]`` is the matrix term(d) -> term(d + 1).  Optional ``weights[d]``
    tags each basis vector of term(d) with an internal weight preserved by
    the differential; cohomology can then be computed weight by weight.
    """

    def __init__(self, ring: Ring, dims: Dict[int, int], diffs: Dict[int, ExactMatrix],
                 check: bool = True, weights: Optional[Dict[int, List[int]]] = None):
        if not dims:
            raise ValueError("empty complex")
        self.ring = ring
        self.lo = min(dims)
        self.hi = max(dims)
        self.dims = {d: dims.get(d, 0) for d in range(self.lo, self.hi + 1)}
        self.diffs: Dict[int, ExactMatrix] = {}
        for d in range(self.lo, self.hi):
            m = diffs.get(d)
            if m is None:
                m = ExactMatrix.zero(ring, self.dims[d + 1], self.dims[d])
            if m.shape != (self.dims[d + 1], self.dims[d]):
                raise ValueError(f"differential {d} has shape {m.shape}, expected "
                                 f"{(self.dims[d + 1], self.dims[d])}")
            if m.ring != ring:
                raise ValueError("differential ring mismatch")
            self.diffs[d] = m
        self.weights = None
        if weights is not None:
            self.weights = {d: list(weights.get(d, [0] * n)) for d, n in self.dims.items()}
            for d, n in self.dims.items():
                if len(self.weights[d]) != n:
                    raise ValueError(f"weight labels of degree {d} have wrong length")
            if check:
                for d, m in self.diffs.items():
                    wsrc, wtgt = self.weights[d], self.weights[d + 1]
                    for (r, c), _ in m.entries():
                        if wsrc[c] != wtgt[r]:
                            raise ArithmeticError(f"differential {d} does not preserve weight")
        if check:
            self.check_square_zero()

    @property
    def support(self):
        return (self.lo, self.hi)

    def term(self, d) -> int:
        return self.dims.get(d, 0)

    def differential(self, d) -> ExactMatrix:
        if d in self.diffs:
            return self.diffs[d]
        return ExactMatrix.zero(self.ring, self.term(d + 1), self.term(d))

    def check_square_zero(self):
        for d in range(self.lo, self.hi - 1):
            prod = self.diffs[d + 1] @ self.diffs[d]
            if not prod.is_zero():
                raise ArithmeticError(f"d^2 != 0 at degree {d}")

    def euler_characteristic(self) -> int:
        return sum((-1) ** (d % 2) * n for d, n in self.dims.items())

    def ranks(self) -> Dict[int, int]:
        return {d: m.rank() for d, m in self.diffs.items()}

    def cohomology(self, d) -> AbelianGroupStructure:
        return cohomology(self, d)

    def cohomology_dims(self, degrees=None) -> Dict[int, int]:
        """Free ranks of H^d over the base field (or Q for Z complexes)."""
        degrees = range(self.lo, self.hi + 1) if degrees is None else degrees
        if self.weights is not None and self.ring.is_field:
            split = self.cohomology_by_weight(degrees)
            return {d: sum(row.values()) for d, row in split.items()}
        ranks = {}

        def rk(k):
            if k not in ranks:
                ranks[k] = self.differential(k).rank() if self.term(k) and self.term(k + 1) else 0
            return ranks[k]

        return {d: self.term(d) - rk(d) - rk(d - 1) for d in degrees}

    def cohomology_by_weight(self, degrees=None) -> Dict[int, Dict[int, int]]:
        """Dimensions of H^d split by weight (field coefficients only)."""
        if not self.ring.is_field:
            raise ValueError("weight-split cohomology needs a field")
        degrees = list(range(self.lo, self.hi + 1)) if degrees is None else list(degrees)
        labels = self.weights or {d: [0] * n for d, n in self.dims.items()}

        def split(d):
            out: Dict[int, List[int]] = {}
            for i, w in enumerate(labels.get(d, [])):
                out.setdefault(w, []).append(i)
            return out

        cache: Dict[int, Dict[int, int]] = {}

        def ranks(k):
            if k not in cache:
                res: Dict[int, int] = {}
                if self.term(k) and self.term(k + 1):
                    m = self.diffs[k]
                    src, tgt = split(k), split(k + 1)
                    for w, cols in src.items():
                        rows = tgt.get(w)
                        if rows:
                            res[w] = m.submatrix(rows, cols).rank()
                cache[k] = res
            return cache[k]

        out = {}
        for d in degrees:
            row = {}
            for w, idx in sorted(split(d).items()):
                h = len(idx) - ranks(d).get(w, 0) - ranks(d - 1).get(w, 0)
                if h:
                    row[w] = h
            out[d] = row
        return out

    def to_json(self):
        return {"ring": {"kind": self.ring.kind, "modulus": self.ring.modulus},
                "dims": {str(d): n for d, n in self.dims.items()},
                "diffs": {str(d): m.to_json() for d, m in self.diffs.items()}}

    @classmethod
    def from_json(cls, obj):
        ring = Ring(obj["ring"]["kind"], obj["ring"].get("modulus", 0))
        dims = {int(d): n for d, n in obj["dims"].items()}
        diffs = {int(d): ExactMatrix.from_json(m) for d, m in obj["diffs"].items()}
        return cls(ring, dims, diffs)


def cohomology(c: ChainComplex, d: int) -> AbelianGroupStructure:
    if c.ring.is_field:
        return AbelianGroupStructure(c.cohomology_dims([d])[d], ())
    if c.ring.kind != "Z":
        raise ValueError(f"cohomology over {c.ring} is not supported")
    n = c.term(d)
    if n == 0:
        return AbelianGroupStructure()
    out = c.differential(d)
    inc = c.differential(d - 1)
    r_out = out.rank() if out.rows else 0
    if inc.cols:
        sf = smith_normal_form(inc, left=False, right=False)
        r_in, tors = sf.rank, sf.invariant_factors
    else:
        r_in, tors = 0, ()
    return AbelianGroupStructure(n - r_out - r_in, tors)


# ---------------------------------------------------------------------------
# subspaces of K^n


class Subspace:
    """A subspace of ``ring^n`` over a field, held in reduced row echelon form."""

    def __init__(self, ring: Ring, n: int, vectors: Iterable[Dict[int, object]]):
        self.ring = ring
        self.ambient = n
        vecs = list(vectors)
        m = ExactMatrix.from_columns(ring, n, vecs).T if vecs else ExactMatrix(ring, 0, n)
        piv, red = rref(m)
        self.pivots = piv
        self.basis = [red[c] for c in piv]

    @property
    def dim(self):
        return len(self.basis)

    def coordinates(self, vec: Dict[int, object]) -> Dict[int, object]:
        """Coordinates of a vector known to lie in the subspace."""
        out = {}
        for k, c in enumerate(self.pivots):
            v = vec.get(c)
            if v:
                out[k] = v
        return out

    def contains(self, vec: Dict[int, object]) -> bool:
        return not self.reduce(vec)

    def reduce(self, vec: Dict[int, object]) -> Dict[int, object]:
        """Normal form of ``vec`` modulo the subspace: no pivot coordinates remain."""
        rest = dict(vec)
        norm = self.ring.normalize
        for k, c in enumerate(self.pivots):
            f = rest.get(c)
            if not f:
                continue
            for j, v in self.basis[k].items():
                s = norm(rest.get(j, 0) - f * v)
                if s:
                    rest[j] = s
                else:
                    rest.pop(j, None)
        return rest

    def matrix(self) -> ExactMatrix:
        """Basis vectors as columns."""
        return ExactMatrix.from_columns(self.ring, self.ambient, self.basis)


def lattice_basis(gens: ExactMatrix) -> ExactMatrix:
    """Columns forming a Z-basis of the lattice spanned by the columns of ``gens``."""
    if gens.cols == 0:
        return gens
    sf = smith_normal_form(gens, left=False, right=False, left_inverse=True)
    linv = sf.left_inverse.column_dicts()
    cols = [{r: d * v for r, v in linv[i].items()} for i, d in enumerate(sf.diagonal)]
    return ExactMatrix.from_columns(ZZ, gens.rows, cols)


def quotient_order(orders: Sequence[int], gens: Sequence[Dict[int, int]]) -> int:
    """Order of (Z/o_1 + ... + Z/o_k) modulo the subgroup generated by ``gens``.

    All ``orders`` must be positive.
    """
    k = len(orders)
    cols = [{i: o} for i, o in enumerate(orders)] + [dict(g) for g in gens]
    rel = ExactMatrix.from_columns(ZZ, k, cols)
    sf = smith_normal_form(rel, left=False, right=False)
    if sf.rank < k:
        raise ValueError("quotient is infinite")
    n = 1
    for d in sf.invariant_factors:
        n *= d
    return n
