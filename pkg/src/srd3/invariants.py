"""Orbit invariants: point and hyperplane classification, distributions.

Points of PG(5,q) fall into six classes under the congruence action of
PGL(3,q): the rank-1 points P1, the rank-3 points P3, and two rank-2
classes that depend on the parity of q.

    q even:  P2n  rank-2 points with zero diagonal (the nucleus plane),
             P2s  all other rank-2 points;
    q odd:   P2e  rank-2 points exterior to their conic,
             P2i  rank-2 points interior to their conic.

The exterior test used everywhere is algebraic: for a rank-2 symmetric M
pick the first nonsingular principal 2x2 block, with determinant D well
defined modulo squares; the point is exterior iff -D is a nonzero square.
The D values are the diagonal entries of adj(M), which for rank-2 M equals
lambda * k k^T with k spanning the kernel, so a nonzero diagonal entry
always exists when q is odd.  The geometric tangent-count oracle lives in
exterior_by_tangents and the test suite checks the two agree.

Hyperplanes fall into four classes H1/H2r/H2i/H3 according to the conic
they correspond to (double line, real pair, imaginary pair, nonsingular),
detected through the size and collinearity of the conic's zero set in
PG(2,q).

A per-field cache (tables) holds dense code-indexed class tables so the
enumeration drivers can classify millions of points via numpy gathers.
"""

from __future__ import annotations

import numpy as np

from srd3 import bulk
from srd3.gf import FieldCtx, FieldError, is_square
from srd3.pg import (BudgetExceeded, Subspace, duals_through, matrix_rank,
                     normalize_vec, rref)
from srd3.veronese import (conic_plane_of, h1_duals, in_nucleus_plane,
                           lift, pg2_points, point_rank, veronese)

POINT_CLASSES_EVEN = ("P1", "P2n", "P2s", "P3")
POINT_CLASSES_ODD = ("P1", "P2e", "P2i", "P3")
HYPERPLANE_CLASSES = ("H1", "H2r", "H2i", "H3")


class ClassificationError(RuntimeError):
    """A computed signature matches no known class (implementation bug)."""


def point_classes(F: FieldCtx) -> tuple[str, str, str, str]:
    return POINT_CLASSES_EVEN if F.p == 2 else POINT_CLASSES_ODD


# ---------------------------------------------------------------------------
# Scalar classification
# ---------------------------------------------------------------------------

def _adj_diagonal(F: FieldCtx, y) -> tuple[int, int, int]:
    m, s = F.mul, F.sub
    y0, y1, y2, y3, y4, y5 = y
    return (s(m(y3, y5), m(y4, y4)),
            s(m(y0, y5), m(y2, y2)),
            s(m(y0, y3), m(y1, y1)))


def classify_point(F: FieldCtx, y) -> str:
    """Class of a nonzero point of PG(5,q); scale-invariant."""
    r = point_rank(F, y)
    if r == 1:
        return "P1"
    if r == 3:
        return "P3"
    if F.p == 2:
        return "P2n" if in_nucleus_plane(y) else "P2s"
    d = next(v for v in _adj_diagonal(F, y) if v)
    return "P2e" if is_square(F, F.neg(d)) else "P2i"


def exterior_by_tangents(F: FieldCtx, y) -> bool:
    """Geometric oracle: a rank-2 point (q odd) is exterior iff exactly two
    tangent lines of its conic pass through it inside the conic plane."""
    if F.p == 2:
        raise FieldError("exterior/interior split requires odd q")
    y = normalize_vec(F, tuple(y))
    _, conic = conic_plane_of(F, y)
    tangents = 0
    seen = set()
    for t in conic:
        line = rref(F, (y, t))[0]
        if line in seen:
            continue
        seen.add(line)
        sub = Subspace(F, line)
        hits = sum(1 for c in conic if sub.contains_point(c))
        if hits == 1:
            tangents += 1
    if tangents not in (0, 2):
        raise ClassificationError(f"tangent count {tangents} for {y}")
    return tangents == 2


def classify_hyperplane(F: FieldCtx, dual) -> str:
    """Class of the hyperplane with the given dual vector.

    Works through the conic with the same coefficient vector: its zero set
    S in PG(2,q) has size 1 (imaginary pair), 2q+1 (real pair) or q+1
    (double line when collinear, nonsingular conic otherwise).
    """
    dual = normalize_vec(F, tuple(dual))
    zeros = []
    for u in pg2_points(F):
        v = veronese(F, u)
        s = 0
        for a, x in zip(dual, v):
            if a and x:
                s = F.add(s, F.mul(a, x))
        if s == 0:
            zeros.append(u)
    n = len(zeros)
    if n == 1:
        return "H2i"
    if n == 2 * F.q + 1:
        return "H2r"
    if n == F.q + 1:
        return "H1" if matrix_rank(F, zeros) == 2 else "H3"
    raise ClassificationError(f"conic zero set of size {n} for dual {dual}")


# ---------------------------------------------------------------------------
# Per-field dense tables
# ---------------------------------------------------------------------------

class GeomTables:
    """Code-indexed classification tables for one field (q <= 16).

    point codes run over all of F_q^6 (not just normalized vectors); both
    rank and class are scale invariant so no normalization is needed at
    lookup time.
    """

    def __init__(self, F: FieldCtx):
        if F.q > 16:
            raise BudgetExceeded(F.q ** 6, 16 ** 6)
        self.F = F
        q = F.q
        self.kit = bulk.kit_for(F)
        vecs = bulk.decode(np.arange(q ** 6, dtype=np.int64), q, 6)
        mats = vecs[:, [0, 1, 2, 1, 3, 4, 2, 4, 5]].reshape(-1, 3, 3)
        self.rank_code = bulk.rank_batch(self.kit, mats).astype(np.uint8)
        self.class_code = self._build_classes(vecs)
        self.pg2 = pg2_points(F)
        self.v6 = np.array([veronese(F, u) for u in self.pg2], dtype=np.uint8)
        self.h1 = np.array(h1_duals(F), dtype=np.uint8)
        self._coeffs: dict[int, np.ndarray] = {}
        self._hclass: dict[tuple, str] = {}

    def _build_classes(self, vecs: np.ndarray) -> np.ndarray:
        kit, F = self.kit, self.F
        cls = np.zeros(len(vecs), dtype=np.uint8)
        cls[self.rank_code == 1] = 1
        cls[self.rank_code == 3] = 4
        r2 = self.rank_code == 2
        if F.p == 2:
            diag0 = (vecs[:, 0] == 0) & (vecs[:, 3] == 0) & (vecs[:, 5] == 0)
            cls[r2 & diag0] = 2
            cls[r2 & ~diag0] = 3
        else:
            y = [vecs[:, i] for i in range(6)]
            adj0 = kit.sub(kit.mul(y[3], y[5]), kit.mul(y[4], y[4]))
            adj1 = kit.sub(kit.mul(y[0], y[5]), kit.mul(y[2], y[2]))
            adj2 = kit.sub(kit.mul(y[0], y[3]), kit.mul(y[1], y[1]))
            d = np.where(adj0 != 0, adj0, np.where(adj1 != 0, adj1, adj2))
            sq = np.zeros(F.q, dtype=bool)
            for a in F.nonzero():
                sq[F.mul(a, a)] = True
            ext = sq[kit.NEG[d]]
            cls[r2 & ext] = 2
            cls[r2 & ~ext] = 3
        return cls

    def coeffs(self, k: int) -> np.ndarray:
        """Normalized coefficient vectors of F_q^k as one (m, k) array."""
        arr = self._coeffs.get(k)
        if arr is None:
            from srd3.pg import coefficient_vectors
            arr = np.array(list(coefficient_vectors(self.F.q, k)), dtype=np.uint8)
            self._coeffs[k] = arr
        return arr

    def od0_batch(self, bases: np.ndarray) -> np.ndarray:
        """Point-orbit distributions of a batch of subspaces: (N,k,6) -> (N,4)."""
        k = bases.shape[1]
        pts = bulk.combine(self.kit, self.coeffs(k), bases)
        codes = bulk.encode(pts, self.F.q)
        cls = self.class_code[codes]
        out = np.empty((len(bases), 4), dtype=np.int64)
        for i in range(4):
            out[:, i] = (cls == i + 1).sum(axis=1)
        return out

    def hclass(self, dual) -> str:
        dual = normalize_vec(self.F, tuple(dual))
        got = self._hclass.get(dual)
        if got is None:
            got = self._hclass[dual] = classify_hyperplane(self.F, dual)
        return got

    def hclass_table(self) -> np.ndarray:
        """Dense dual-code -> hyperplane class (1..4 as in
        HYPERPLANE_CLASSES, 0 for the zero vector), all scalar multiples
        filled so lookups skip normalization."""
        t = getattr(self, "_hclass_arr", None)
        if t is not None:
            return t
        from srd3.pg import coefficient_vectors
        F, q = self.F, self.F.q
        t = np.zeros(q ** 6, dtype=np.uint8)
        vecs = []
        vals = []
        for dual in coefficient_vectors(q, 6):
            vecs.append(dual)
            vals.append(HYPERPLANE_CLASSES.index(self.hclass(dual)) + 1)
        vecs = np.array(vecs, dtype=np.uint8)
        vals = np.array(vals, dtype=np.uint8)
        for c in range(1, q):
            scaled = self.kit.MUL[np.uint8(c), vecs]
            t[bulk.encode(scaled, q)] = vals
        self._hclass_arr = t
        return t

    def od4_batch(self, bases: np.ndarray, pattern: tuple[int, ...]) -> np.ndarray:
        """Hyperplane-orbit distributions for RREF bases sharing one pivot
        pattern: (N,k,6) -> (N,4)."""
        duals = bulk.nullspace_fixed(self.kit, bases, pattern)
        combos = bulk.combine(self.kit, self.coeffs(duals.shape[1]), duals)
        cls = self.hclass_table()[bulk.encode(combos, self.F.q)]
        out = np.empty((len(bases), 4), dtype=np.int64)
        for i in range(4):
            out[:, i] = (cls == i + 1).sum(axis=1)
        return out


_tables: dict[int, GeomTables] = {}


def tables(F: FieldCtx) -> GeomTables:
    t = _tables.get(id(F))
    if t is None:
        t = _tables[id(F)] = GeomTables(F)
    return t


# ---------------------------------------------------------------------------
# Distributions
# ---------------------------------------------------------------------------

def rank_distribution(W: Subspace) -> tuple[int, int, int]:
    """[r1, r2, r3] over the points of W."""
    t = tables(W.F)
    bases = np.array([W.rows], dtype=np.uint8)
    pts = bulk.combine(t.kit, t.coeffs(W.k), bases)
    ranks = t.rank_code[bulk.encode(pts, W.F.q)][0]
    return (int((ranks == 1).sum()), int((ranks == 2).sum()), int((ranks == 3).sum()))


def minimum_rank(W: Subspace) -> int:
    r = rank_distribution(W)
    return next(i + 1 for i, c in enumerate(r) if c)


def od0(W: Subspace) -> tuple[int, int, int, int]:
    """[r1, r2a, r2b, r3] with (a,b) = (n,s) for q even, (e,i) for q odd."""
    t = tables(W.F)
    out = t.od0_batch(np.array([W.rows], dtype=np.uint8))[0]
    return tuple(int(x) for x in out)


def od4(W: Subspace) -> tuple[int, int, int, int]:
    """[h1, h2r, h2i, h3] over the hyperplanes containing W."""
    t = tables(W.F)
    counts = dict.fromkeys(HYPERPLANE_CLASSES, 0)
    for dual in duals_through(W):
        counts[t.hclass(dual)] += 1
    return tuple(counts[c] for c in HYPERPLANE_CLASSES)


def point_census(F: FieldCtx) -> dict[str, int]:
    """Counts of the point classes over all of PG(5,q)."""
    t = tables(F)
    counts = np.bincount(t.class_code, minlength=5)
    names = point_classes(F)
    # table indexes every vector; each projective point has q-1 nonzero codes
    return {names[i]: int(counts[i + 1]) // (F.q - 1) for i in range(4)}


def hyperplane_census(F: FieldCtx) -> dict[str, int]:
    """Counts of the hyperplane classes over all of PG(5,q)."""
    t = tables(F)
    kit = t.kit
    counts = dict.fromkeys(HYPERPLANE_CLASSES, 0)
    q = F.q
    total = (q ** 6 - 1) // (q - 1)
    for _, _, block in bulk.iter_subspace_blocks(5, q, 0, block=1 << 14):
        duals = block[:, 0, :]
        dots = np.zeros((len(duals), len(t.v6)), dtype=np.uint8)
        for i in range(6):
            dots = kit.add(dots, kit.mul(duals[:, i][:, None], t.v6[:, i][None, :]))
        nz = (dots == 0).sum(axis=1)
        counts["H2i"] += int((nz == 1).sum())
        counts["H2r"] += int((nz == 2 * q + 1).sum())
        amb = np.nonzero(nz == q + 1)[0]
        for j in amb:
            zeros = [t.pg2[i] for i in np.nonzero(dots[j] == 0)[0]]
            cl = "H1" if matrix_rank(F, zeros) == 2 else "H3"
            counts[cl] += 1
    assert sum(counts.values()) == total
    return counts


# ---------------------------------------------------------------------------
# The group and its orbits
# ---------------------------------------------------------------------------

def pgl3_order(q: int) -> int:
    return q ** 3 * (q ** 3 - 1) * (q ** 2 - 1)


def k_generators(F: FieldCtx) -> list[tuple[tuple[int, ...], ...]]:
    """Three matrices whose projectivities generate PGL(3,q):
    a transvection, the 3-cycle, and a primitive-scalar diagonal."""
    gens = [((1, 1, 0), (0, 1, 0), (0, 0, 1)),
            ((0, 1, 0), (0, 0, 1), (1, 0, 0))]
    if F.q > 2:
        g = F.generator
        gens.append(((g, 0, 0), (0, 1, 0), (0, 0, 1)))
    return gens


def group_order_bfs(F: FieldCtx, budget: int = 10 ** 6) -> int:
    """Order of the generated projective group by closure (small q only)."""
    from srd3.veronese import mat_mul
    gens = k_generators(F)

    def norm(M):
        flat = [x for row in M for x in row]
        lead = next(x for x in flat if x)
        if lead == 1:
            return tuple(flat)
        inv = F.inv(lead)
        return tuple(F.mul(inv, x) for x in flat)

    def unflat(t):
        return (t[0:3], t[3:6], t[6:9])

    start = norm(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for el in frontier:
            for g in gens:
                img = norm(mat_mul(F, unflat(el), g))
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        if len(seen) > budget:
            raise BudgetExceeded(len(seen), budget)
        frontier = nxt
    return len(seen)


def orbit_of(W: Subspace, budget: int = 2 * 10 ** 6) -> list[tuple[tuple[int, ...], ...]]:
    """The full orbit of W under the congruence group, as a sorted list of
    canonical RREF row tuples.  BFS with batched transforms."""
    F = W.F
    t = tables(F)
    kit = t.kit
    lifts = [np.array(lift(F, A), dtype=np.uint8) for A in k_generators(F)]
    k = W.k
    start = np.array([W.rows], dtype=np.uint8)
    visited = {start[0].tobytes()}
    frontier = start
    while len(frontier):
        images = np.concatenate([bulk.transform(kit, frontier, L) for L in lifts])
        red, rk = bulk.rref_batch(kit, images)
        assert int(rk.min()) == k
        fresh = []
        for row in red:
            key = row.tobytes()
            if key not in visited:
                visited.add(key)
                fresh.append(row)
        if len(visited) > budget:
            raise BudgetExceeded(len(visited), budget)
        frontier = np.array(fresh, dtype=np.uint8) if fresh else np.empty((0, k, 6), np.uint8)
    out = [tuple(tuple(int(x) for x in r) for r in np.frombuffer(key, np.uint8).reshape(k, 6))
           for key in visited]
    return sorted(out)


def stabilizer_order(W: Subspace, budget: int = 2 * 10 ** 6) -> int:
    orbit = orbit_of(W, budget=budget)
    order = pgl3_order(W.F.q)
    assert order % len(orbit) == 0
    return order // len(orbit)
