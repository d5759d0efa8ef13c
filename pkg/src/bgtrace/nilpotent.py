"""Gradings of simple Lie algebras attached to weighted Dynkin diagrams."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import QQ, ExactMatrix
from .rootdata import RootDataError, RootSystem

# Bourbaki numbering: the 2 sits on the trivalent node for E6, and for E8 on the
# single node (alpha_2) hanging off the trivalent node.
BUILTIN_DIAGRAMS = {
    "E6-trivalent": ("E6", (0, 0, 0, 2, 0, 0)),
    "E8-branch": ("E8", (0, 2, 0, 0, 0, 0, 0, 0)),
}


@dataclass(frozen=True)
class GradingProfile:
    cartan_type: str
    diagram: Tuple[int, ...]
    dims: Dict[int, int]
    lie_dim: int
    rank: int

    def __getitem__(self, w: int) -> int:
        return self.dims.get(w, 0)

    def is_symmetric(self) -> bool:
        return all(self[w] == self[-w] for w in self.dims)

    def to_json(self):
        return {"type": self.cartan_type, "diagram": list(self.diagram),
                "dims": {str(w): d for w, d in sorted(self.dims.items())}}


def check_diagram(rs: RootSystem, diagram: Sequence[int]) -> Tuple[int, ...]:
    d = tuple(int(x) for x in diagram)
    if len(d) != rs.rank:
        raise RootDataError(f"{rs.name} needs {rs.rank} diagram weights, got {len(d)}")
    if any(x not in (0, 1, 2) for x in d):
        raise RootDataError("diagram weights must lie in {0, 1, 2}")
    return d


def jm_pairing(diagram: Sequence[int], root: Sequence[int]) -> int:
    """Pairing of the cocharacter with a root (or weight) in simple-root coordinates."""
    if len(root) != len(diagram):
        raise ValueError("length mismatch")
    return sum(int(a) * int(b) for a, b in zip(diagram, root))


def grading_profile(cartan_type: str, diagram: Sequence[int]) -> GradingProfile:
    rs = RootSystem(cartan_type)
    d = check_diagram(rs, diagram)
    dims = Counter()
    dims[0] += rs.rank
    for r in rs.positive_roots:
        w = jm_pairing(d, r)
        dims[w] += 1
        dims[-w] += 1
    prof = GradingProfile(cartan_type, d, dict(sorted(dims.items())), rs.dim, rs.rank)
    assert prof.is_symmetric() and sum(dims.values()) == rs.dim and dims[0] >= rs.rank
    return prof


def centralizer_dim(profile: GradingProfile) -> int:
    return profile[0] + profile[1]


def orbit_dim(profile: GradingProfile) -> int:
    out = profile.lie_dim - centralizer_dim(profile)
    if out % 2:
        raise ArithmeticError(f"odd orbit dimension {out}: diagram is not a nilpotent orbit")
    return out


def slodowy_slice_dim(profile: GradingProfile) -> int:
    return centralizer_dim(profile)


@dataclass(frozen=True)
class SliceDimension:
    value: int
    orbit_in_image: bool

    def to_json(self):
        out = {"dim": self.value}
        if not self.orbit_in_image:
            out["note"] = "orbit not in N_P"
        return out


def partial_resolution_slice_dim(cartan_type: str, levi: Sequence[int],
                                 diagram: Sequence[int]) -> SliceDimension:
    """2 * #(positive roots outside the Levi) - orbit dimension."""
    rs = RootSystem(cartan_type)
    if any(not 0 <= i < rs.rank for i in levi):
        raise RootDataError("Levi subset out of range")
    outside = len(rs.positive_roots) - len(rs.positive_roots_of(levi))
    value = 2 * outside - orbit_dim(grading_profile(cartan_type, diagram))
    return SliceDimension(value, value >= 0)


# ---------------------------------------------------------------------------
# type A


def check_partition(partition: Sequence[int]) -> Tuple[int, ...]:
    p = tuple(int(x) for x in partition)
    if not p or any(x <= 0 for x in p):
        raise ValueError(f"invalid partition {partition}")
    return tuple(sorted(p, reverse=True))


def partitions(n: int) -> List[Tuple[int, ...]]:
    out: List[Tuple[int, ...]] = []

    def rec(left, bound, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        for k in range(min(left, bound), 0, -1):
            rec(left - k, k, acc + [k])

    rec(n, n, [])
    return out


def partition_diagram(partition: Sequence[int]) -> Tuple[int, ...]:
    """Weighted diagram of the nilpotent with the given Jordan type in sl_n."""
    p = check_partition(partition)
    h = sorted((k - 1 - 2 * j for k in p for j in range(k)), reverse=True)
    return tuple(h[i] - h[i + 1] for i in range(len(h) - 1))


def jordan_nilpotent(partition: Sequence[int]) -> ExactMatrix:
    p = check_partition(partition)
    n = sum(p)
    entries = {}
    start = 0
    for k in p:
        for j in range(k - 1):
            entries[(start + j, start + j + 1)] = 1
        start += k
    return ExactMatrix(QQ, n, n, entries)


def type_A_rank_oracle(partition: Sequence[int]) -> int:
    """dim of the centralizer of e in sl_n via the exact rank of ad_e on gl_n."""
    e = jordan_nilpotent(partition)
    n = e.rows
    idx = lambda i, j: i * n + j
    entries: Dict[Tuple[int, int], object] = {}
    rows_e = {r: e.row(r) for r in range(n)}
    cols_e = e.column_dicts()
    for i in range(n):
        for j in range(n):
            # ad_e(E_ij) = e E_ij - E_ij e
            src = idx(i, j)
            for r, v in cols_e[i].items():
                key = (idx(r, j), src)
                entries[key] = entries.get(key, 0) + v
            for c, v in rows_e[j].items():
                key = (idx(i, c), src)
                entries[key] = entries.get(key, 0) - v
    ad = ExactMatrix(QQ, n * n, n * n, {k: v for k, v in entries.items() if v})
    return n * n - ad.rank() - 1


def dominates(p: Sequence[int], q: Sequence[int]) -> bool:
    """Dominance order on partitions of the same size."""
    p, q = check_partition(p), check_partition(q)
    if sum(p) != sum(q):
        raise ValueError("partitions of different sizes")
    a = b = 0
    for k in range(max(len(p), len(q))):
        a += p[k] if k < len(p) else 0
        b += q[k] if k < len(q) else 0
        if a < b:
            return False
    return True


def orbit_report(cartan_type: str, diagram: Sequence[int],
                 levi: Optional[Sequence[int]] = None) -> dict:
    prof = grading_profile(cartan_type, diagram)
    out = {"grading": prof.to_json(), "centralizer_dim": centralizer_dim(prof),
           "orbit_dim": orbit_dim(prof), "slice_dim": slodowy_slice_dim(prof)}
    if levi is not None:
        out["partial_resolution_slice"] = partial_resolution_slice_dim(
            cartan_type, levi, diagram).to_json()
    if not cartan_type.upper().startswith("A"):
        out["centralizer_witness"] = "grading formula only"
    return out
