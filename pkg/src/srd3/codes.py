"""Fq-linear symmetric rank-distance codes in M3(Fq).

A code is a subspace of the 6-dimensional space of symmetric 3x3 matrices;
its minimum distance equals the minimum rank over nonzero codewords, which
equals the minimum point rank of the associated subspace of PG(5,q).

Completeness (no extension preserving the minimum distance) is decided by
coverage: a candidate extension point Q fails iff the span of the code with
Q contains a point of rank < d, i.e. iff Q lies in the span of the code
with some low-rank point v.  Marking those spans over the handful of
low-rank points is an order of magnitude cheaper than testing every Q
directly and gives the same answer.

Classification of complete codes into equivalence classes goes by rank
distribution signatures, which separate all classes; the d = 3 split into
field-type and twisted-type is decided by counting rank-1 points after
scalar extension to GF(q^3) (3 for field type, 0 for twisted type).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from srd3.gf import FieldCtx, parse_field_spec
from srd3.invariants import rank_distribution, tables
from srd3.pg import Subspace, canonicalize, coefficient_vectors, rref, subspace_points
from srd3.veronese import as_matrix, coords_of_matrix


class CodeFormatError(ValueError):
    """Malformed code input (JSON shape, symmetry, independence, range)."""


@dataclass(frozen=True)
class SrdCode:
    """An Fq-linear code of symmetric 3x3 matrices, dim >= 1."""
    F: FieldCtx
    basis: tuple[tuple[tuple[int, ...], ...], ...]   # matrices
    subspace: Subspace = field(compare=False)

    @classmethod
    def from_matrices(cls, F: FieldCtx, mats: Iterable) -> "SrdCode":
        mats = tuple(tuple(tuple(int(x) for x in row) for row in M) for M in mats)
        if not mats:
            raise CodeFormatError("empty basis")
        for i, M in enumerate(mats):
            if len(M) != 3 or any(len(r) != 3 for r in M):
                raise CodeFormatError(f"matrix {i} is not 3x3")
            for r in range(3):
                for c in range(3):
                    if not 0 <= M[r][c] < F.q:
                        raise CodeFormatError(
                            f"matrix {i} entry {M[r][c]} outside [0, {F.q})")
            if any(M[r][c] != M[c][r] for r in range(3) for c in range(3)):
                raise CodeFormatError(f"matrix {i} not symmetric")
        rows = [coords_of_matrix(M) for M in mats]
        red, rank = rref(F, rows)
        if rank != len(mats):
            raise CodeFormatError("basis matrices are linearly dependent")
        return cls(F, mats, Subspace(F, red))

    @classmethod
    def from_subspace(cls, W: Subspace) -> "SrdCode":
        mats = tuple(as_matrix(r) for r in W.rows)
        return cls(W.F, mats, W)

    @property
    def dim(self) -> int:
        return self.subspace.k

    @cached_property
    def point_ranks(self) -> tuple[int, int, int]:
        return rank_distribution(self.subspace)

    def __repr__(self):
        return f"SrdCode(dim={self.dim}, q={self.F.q})"


def min_distance(C: SrdCode) -> int:
    r = C.point_ranks
    return next(i + 1 for i, c in enumerate(r) if c)


def code_rank_distribution(C: SrdCode) -> tuple[int, int, int, int]:
    """(r0, r1, r2, r3) over all q^k codewords."""
    s = C.point_ranks
    m = C.F.q - 1
    return (1, m * s[0], m * s[1], m * s[2])


def dim_bound(n: int, d: int) -> int:
    """Largest possible Fq-dimension of a symmetric rank-distance code of
    n x n matrices with minimum distance d."""
    if not 1 <= d <= n:
        raise ValueError(f"d={d} out of range [1, {n}]")
    if (n - d) % 2 == 0:
        return n * (n - d + 2) // 2
    return (n + 1) * (n - d + 1) // 2


def is_msrd(C: SrdCode) -> bool:
    return C.dim == dim_bound(3, min_distance(C))


def _low_rank_points(F: FieldCtx, d: int) -> list[tuple[int, ...]]:
    t = tables(F)
    out = []
    for v in coefficient_vectors(F.q, 6):
        code = 0
        for x in v:
            code = code * F.q + x
        if 1 <= t.rank_code[code] < d:
            out.append(v)
    return out


def is_complete(C: SrdCode) -> bool:
    """No point of PG(5,q) extends the code at its minimum distance."""
    F = C.F
    d = min_distance(C)
    q = F.q
    total = (q ** 6 - 1) // (q - 1)
    W = C.subspace
    if d == 1:
        return W.k == 6
    if W.k == 6:
        return True
    covered: set[tuple[int, ...]] = set()
    for v in _low_rank_points(F, d):
        span = canonicalize(F, W.rows + (v,))
        covered.update(subspace_points(span))
    # every point outside W must be covered by some low-rank extension
    return len(covered) >= total  # covered includes the points of W itself


def extension_points(C: SrdCode) -> list[tuple[int, ...]]:
    """Points Q whose adjunction preserves the minimum distance, in
    lexicographic order."""
    F = C.F
    d = min_distance(C)
    W = C.subspace
    if d == 1:
        out = []
        for v in coefficient_vectors(F.q, 6):
            if not W.contains_point(v):
                out.append(v)
        return out
    covered: set[tuple[int, ...]] = set(subspace_points(W))
    for v in _low_rank_points(F, d):
        span = canonicalize(F, W.rows + (v,))
        covered.update(subspace_points(span))
    return [v for v in coefficient_vectors(F.q, 6) if v not in covered]


def extend_to_complete(C: SrdCode) -> SrdCode:
    """Greedy completion: repeatedly adjoin the first extension point.

    Monotone (the result contains the input) and idempotent; the scan order
    is the lexicographic point order, so the result is deterministic.
    """
    cur = C
    while True:
        pts = extension_points(cur)
        if not pts:
            return cur
        cur = SrdCode.from_subspace(canonicalize(cur.F, cur.subspace.rows + (pts[0],)))


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

CLASS_LABELS_D2_SOLID = {"odd": ("Omega8_2", "Omega14_2", "Omega15_2"),
                         "even": ("Omega7", "Omega13", "Omega14")}
CLASS_LABELS_D2_PLANE = ("Sigma_N", "Sigma_16", "Sigma_18")


def classify(C: SrdCode) -> str:
    """Equivalence class of a complete code; "NotComplete" otherwise.

    d=2 solids are split by their rank-3 point count (q^3-q, q^3-2q, q^3);
    d=2 planes (q even) by the same count (0, q^2, q^2+q); d=3 codes by the
    rank-1 count of the scalar extension to GF(q^3).
    """
    F = C.F
    q = F.q
    d = min_distance(C)
    if not is_complete(C):
        return "NotComplete"
    if d == 1:
        return "WholeSpace"
    r1, r2, r3 = C.point_ranks
    if d == 2:
        parity = "even" if F.p == 2 else "odd"
        if C.dim == 4:
            names = CLASS_LABELS_D2_SOLID[parity]
            table = {q ** 3 - q: names[0], q ** 3 - 2 * q: names[1], q ** 3: names[2]}
            if r3 in table:
                return table[r3]
        if C.dim == 3 and parity == "even":
            table = {0: "Sigma_N", q * q: "Sigma_16", q * q + q: "Sigma_18"}
            if r3 in table:
                return table[r3]
        raise ClassSignatureError(C)
    # d == 3: complete implies a plane (the bound is saturated)
    if C.dim == 3:
        from srd3.atlas import rank1_points_over_cubic_extension
        n = rank1_points_over_cubic_extension(F, C.subspace)
        if n == 3:
            return "GF_type"
        if n == 0:
            return "TF_type"
    raise ClassSignatureError(C)


class ClassSignatureError(RuntimeError):
    def __init__(self, C: SrdCode):
        super().__init__(
            f"no class matches: dim={C.dim}, d={min_distance(C)}, "
            f"rank distribution={code_rank_distribution(C)}, q={C.F.q}")


def describe(C: SrdCode) -> dict:
    """All cached invariants of a code, JSON-ready."""
    d = min_distance(C)
    return {
        "field": C.F.spec,
        "dim": C.dim,
        "size": C.F.q ** C.dim,
        "min_distance": d,
        "rank_distribution": list(code_rank_distribution(C)),
        "is_msrd": is_msrd(C),
        "is_complete": is_complete(C),
        "label": classify(C),
    }


# ---------------------------------------------------------------------------
# JSON round trip
# ---------------------------------------------------------------------------

def code_to_json(C: SrdCode) -> str:
    return json.dumps({"field": C.F.spec,
                       "basis": [[list(r) for r in M] for M in C.basis]})


def code_from_json(text: str) -> SrdCode:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise CodeFormatError(f"invalid JSON: {e}") from e
    if not isinstance(obj, dict) or "field" not in obj or "basis" not in obj:
        raise CodeFormatError('expected {"field": ..., "basis": [...]}')
    F = parse_field_spec(str(obj["field"]))
    basis = obj["basis"]
    if not isinstance(basis, list) or not basis:
        raise CodeFormatError("basis must be a nonempty list of 3x3 matrices")
    return SrdCode.from_matrices(F, basis)
