"""Finite free cochain complexes and their jump ideals.

A :class:`FreeComplex` is a bounded complex of finite free modules over a
polynomial (quotient) context or an Artin local algebra.  ``diffs[j]`` is
the matrix of ``d`` out of degree ``lo + j``, with rows indexed by the
target basis; ``d . d = 0`` is checked on construction.

The jump ideal in degree ``i`` at level ``k`` is the determinantal ideal
of the two-block matrix ``d(i-1) (+) d(i)`` at size ``rank(i) - k + 1``.
Its vanishing locus is where the degree-``i`` cohomology of the fiber has
dimension at least ``k``; the conventions for out-of-range sizes (unit
ideal at size <= 0, zero ideal past the shape) make that statement true
verbatim at the edges of the window.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .artin import ArtinLocalAlgebra
from .errors import InternalCheckError, RingMismatchError, ValidationError
from .linalg import rank as field_rank
from .poly import RingContext


def ring_same(r1, r2) -> bool:
    return r1 is r2 or r1.same(r2)


class FreeComplex:
    """Bounded cochain complex of free modules with explicit matrices."""

    def __init__(self, ring, lo: int, hi: int, ranks: Sequence[int],
                 diffs: Sequence, check: bool = True):
        if hi < lo:
            raise ValidationError("window is empty (hi < lo)")
        self.ring = ring
        self.lo = lo
        self.hi = hi
        self.ranks = tuple(int(r) for r in ranks)
        if len(self.ranks) != hi - lo + 1:
            raise ValidationError("ranks length disagrees with the window")
        if any(r < 0 for r in self.ranks):
            raise ValidationError("negative rank")
        self.diffs = tuple(tuple(tuple(row) for row in m) for m in diffs)
        if len(self.diffs) != hi - lo:
            raise ValidationError("need one differential per adjacent pair")
        for j, m in enumerate(self.diffs):
            if len(m) != self.ranks[j + 1] or any(len(r) != self.ranks[j] for r in m):
                raise ValidationError(
                    f"differential {j} has shape {len(m)}x?, expected "
                    f"{self.ranks[j + 1]}x{self.ranks[j]}")
        if check:
            self._check_dd()

    def _check_dd(self):
        R = self.ring
        for j in range(len(self.diffs) - 1):
            A, B = self.diffs[j + 1], self.diffs[j]
            for r in range(self.ranks[j + 2]):
                for c in range(self.ranks[j]):
                    s = R.zero()
                    for t in range(self.ranks[j + 1]):
                        s = R.add(s, R.mul(A[r][t], B[t][c]))
                    if not R.is_zero(s):
                        raise ValidationError(
                            f"d.d != 0 at degrees {self.lo + j} -> {self.lo + j + 2}, "
                            f"entry ({r},{c})")

    # -- window access -------------------------------------------------

    def rank(self, i: int) -> int:
        if self.lo <= i <= self.hi:
            return self.ranks[i - self.lo]
        return 0

    def diff(self, i: int):
        """Matrix of d out of degree i (zero-shaped outside the window)."""
        if self.lo <= i < self.hi:
            return self.diffs[i - self.lo]
        rows = self.rank(i + 1)
        return tuple(() for _ in range(rows)) if self.rank(i) == 0 \
            else tuple((self.ring.zero(),) * self.rank(i) for _ in range(rows))

    @staticmethod
    def zero(ring) -> "FreeComplex":
        return FreeComplex(ring, 0, 0, (0,), ())

    def is_zero_complex(self) -> bool:
        return all(r == 0 for r in self.ranks)

    def total_rank(self) -> int:
        return sum(self.ranks)

    def __repr__(self):
        return f"FreeComplex([{self.lo},{self.hi}], ranks={self.ranks})"


# ---------------------------------------------------------------------------
# determinantal ideals
# ---------------------------------------------------------------------------

def _minor(ring, mat, rows: tuple, cols: tuple, cache: dict):
    """Determinant of the submatrix, by Laplace expansion along the first
    listed row with memoized sub-minors (division-free, any ring)."""
    if not rows:
        return ring.one()
    key = (rows, cols)
    hit = cache.get(key)
    if hit is not None:
        return hit
    r0 = rows[0]
    rest = rows[1:]
    total = ring.zero()
    for pos, c in enumerate(cols):
        a = mat[r0][c]
        if ring.is_zero(a):
            continue
        sub = _minor(ring, mat, rest, cols[:pos] + cols[pos + 1:], cache)
        term = ring.mul(a, sub)
        total = ring.add(total, term) if pos % 2 == 0 else ring.sub(total, term)
    cache[key] = total
    return total


def matrix_minors(ring, mat, r: int, nrows: int, ncols: int) -> list:
    """All r x r minors in row-major lexicographic order of index sets."""
    cache: dict = {}
    out = []
    for rows in itertools.combinations(range(nrows), r):
        for cols in itertools.combinations(range(ncols), r):
            out.append(_minor(ring, mat, rows, cols, cache))
    return out


def determinantal_ideal(ring, mat, r: int, nrows: int | None = None,
                        ncols: int | None = None):
    """Ideal of r x r minors with the boundary conventions: size <= 0
    gives the unit ideal, size beyond the shape gives the zero ideal."""
    if nrows is None:
        nrows = len(mat)
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    if r <= 0:
        return ring.unit_ideal()
    if r > min(nrows, ncols):
        return ring.zero_ideal()
    return ring.ideal(matrix_minors(ring, mat, r, nrows, ncols))


def block_diag(ring, A, B, ra: int, ca: int, rb: int, cb: int):
    z = ring.zero()
    top = tuple(tuple(A[i]) + (z,) * cb for i in range(ra))
    bot = tuple((z,) * ca + tuple(B[i]) for i in range(rb))
    return top + bot


def block_diag_determinantal(ring, A, B, r: int, ra: int, ca: int,
                             rb: int, cb: int):
    """Minor ideal of the block-diagonal matrix, computed two ways: from
    the assembled matrix, and as the convolution sum of the blocks' minor
    ideals.  The two must agree (they are compared on every call)."""
    M = block_diag(ring, A, B, ra, ca, rb, cb)
    direct = determinantal_ideal(ring, M, r, ra + rb, ca + cb)
    if r <= 0:
        conv = ring.unit_ideal()
    else:
        conv = ring.zero_ideal()
        for j in range(0, r + 1):
            piece = determinantal_ideal(ring, A, j, ra, ca).times(
                determinantal_ideal(ring, B, r - j, rb, cb))
            conv = conv.plus(piece)
    if not direct.equals(conv):
        raise InternalCheckError(
            "block-diagonal minor ideal disagrees with the convolution of "
            f"the blocks' minor ideals at size {r}")
    return direct


# ---------------------------------------------------------------------------
# jump ideals
# ---------------------------------------------------------------------------

def jump_ideal(E: FreeComplex, i: int, k: int):
    """Jump ideal in degree ``i`` at level ``k >= 1``.

    Over an Artin ring the complex is minimized first (the ideal is
    invariant under that, and the matrices shrink); over a polynomial
    context the minors are taken as-is and the ideal is represented by
    its full preimage upstairs when the context is a quotient.
    """
    if k < 1:
        raise ValidationError(f"jump level must be >= 1, got {k}")
    if isinstance(E.ring, ArtinLocalAlgebra):
        E = minimize_complex(E)
    r = E.rank(i) - k + 1
    dp = E.diff(i - 1)
    di = E.diff(i)
    return block_diag_determinantal(
        E.ring, dp, di, r,
        E.rank(i), E.rank(i - 1), E.rank(i + 1), E.rank(i))


def jump_table(E: FreeComplex, degrees=None, max_k: int | None = None) -> dict:
    """Jump ideals for each degree and each level up to rank+1."""
    out = {}
    rng = range(E.lo, E.hi + 1) if degrees is None else degrees
    for i in rng:
        top = E.rank(i) + 1 if max_k is None else max_k
        for k in range(1, top + 1):
            out[(i, k)] = jump_ideal(E, i, k)
    return out


# ---------------------------------------------------------------------------
# minimization over Artin rings
# ---------------------------------------------------------------------------

def minimize_complex(E: FreeComplex) -> FreeComplex:
    """Split off unit pivots until every differential entry lies in the
    maximal ideal.  The result is the minimal model of the complex; over
    an Artin local ring it exists and is unique up to isomorphism.
    """
    A = E.ring
    if not isinstance(A, ArtinLocalAlgebra):
        raise ValidationError("minimization needs Artin local coefficients")
    ranks = list(E.ranks)
    diffs = [[list(row) for row in m] for m in E.diffs]

    def find_unit():
        for j, m in enumerate(diffs):
            for r, row in enumerate(m):
                for c, a in enumerate(row):
                    if A.is_unit(a):
                        return j, r, c
        return None

    while True:
        spot = find_unit()
        if spot is None:
            break
        j, r, c = spot
        d = diffs[j]
        ainv = A.inverse(d[r][c])
        # clear the pivot row via column ops; mirror as row ops on d(j-1)
        for c2 in range(ranks[j]):
            if c2 == c or A.is_zero(d[r][c2]):
                continue
            lam = A.neg(A.mul(d[r][c2], ainv))     # col c2 += lam * col c
            for r2 in range(ranks[j + 1]):
                d[r2][c2] = A.add(d[r2][c2], A.mul(lam, d[r2][c]))
            if j > 0:
                prev = diffs[j - 1]                # row c -= lam * row c2
                for t in range(ranks[j - 1]):
                    prev[c][t] = A.sub(prev[c][t], A.mul(lam, prev[c2][t]))
        # clear the pivot column via row ops; mirror as column ops on d(j+1)
        for r2 in range(ranks[j + 1]):
            if r2 == r or A.is_zero(d[r2][c]):
                continue
            lam = A.neg(A.mul(d[r2][c], ainv))     # row r2 += lam * row r
            for c2 in range(ranks[j]):
                d[r2][c2] = A.add(d[r2][c2], A.mul(lam, d[r][c2]))
            if j + 1 < len(diffs):
                nxt = diffs[j + 1]                 # col r -= lam * col r2
                for t in range(ranks[j + 2]):
                    nxt[t][r] = A.sub(nxt[t][r], A.mul(lam, nxt[t][r2]))
        # the cleared row/column of the neighbors must now vanish (d.d = 0)
        if j > 0:
            for t in range(ranks[j - 1]):
                if not A.is_zero(diffs[j - 1][c][t]):
                    raise InternalCheckError("pivot row of previous "
                                             "differential did not clear")
        if j + 1 < len(diffs):
            for t in range(ranks[j + 2]):
                if not A.is_zero(diffs[j + 1][t][r]):
                    raise InternalCheckError("pivot column of next "
                                             "differential did not clear")
        # drop basis vector c in degree j and r in degree j+1
        for r2 in range(ranks[j + 1]):
            del d[r2][c]
        del d[r]
        if j > 0:
            del diffs[j - 1][c]
        if j + 1 < len(diffs):
            for row in diffs[j + 1]:
                del row[r]
        ranks[j] -= 1
        ranks[j + 1] -= 1

    return FreeComplex(A, E.lo, E.hi,
                       ranks, [tuple(tuple(row) for row in m) for m in diffs])


# ---------------------------------------------------------------------------
# base change, fibers, maps of complexes
# ---------------------------------------------------------------------------

def base_change(E: FreeComplex, ring_map) -> FreeComplex:
    """Apply a ring map entry-wise; the result is validated again."""
    if not ring_same(E.ring, ring_map.source):
        raise RingMismatchError("complex is not over the map's source ring")
    new = [tuple(tuple(ring_map.apply(a) for a in row) for row in m)
           for m in E.diffs]
    return FreeComplex(ring_map.target, E.lo, E.hi, E.ranks, new)


def fiber_cohomology_rank(E: FreeComplex, i: int) -> int:
    """dim of degree-i cohomology of the residue-field fiber (Artin ring)."""
    A = E.ring
    if not isinstance(A, ArtinLocalAlgebra):
        raise ValidationError("fiber ranks need Artin local coefficients")
    F = A.field

    def res_rank(mat, ncols: int) -> int:
        rows = [tuple(A.residue(a) for a in row) for row in mat]
        return field_rank(F, rows)

    r_prev = res_rank(E.diff(i - 1), E.rank(i - 1))
    r_here = res_rank(E.diff(i), E.rank(i))
    return E.rank(i) - r_prev - r_here


class ComplexMap:
    """Degreewise map of complexes over a shared ring; the squares with
    the differentials are checked on construction."""

    def __init__(self, source: FreeComplex, target: FreeComplex, comps: dict):
        if not ring_same(source.ring, target.ring):
            raise RingMismatchError("source and target over different rings")
        self.ring = source.ring
        self.source = source
        self.target = target
        self.comps = {}
        for i, m in comps.items():
            m = tuple(tuple(row) for row in m)
            if len(m) != target.rank(i) or any(len(r) != source.rank(i) for r in m):
                raise ValidationError(f"component {i} has the wrong shape")
            self.comps[i] = m
        self._check_squares()

    def comp(self, i: int):
        if i in self.comps:
            return self.comps[i]
        rows = self.target.rank(i)
        cols = self.source.rank(i)
        return tuple((self.ring.zero(),) * cols for _ in range(rows))

    def _check_squares(self):
        R = self.ring
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        for i in range(lo, hi):
            ds = self.source.diff(i)
            dt = self.target.diff(i)
            gi = self.comp(i)
            gi1 = self.comp(i + 1)
            for r in range(self.target.rank(i + 1)):
                for c in range(self.source.rank(i)):
                    lhs = R.zero()
                    for t in range(self.source.rank(i + 1)):
                        lhs = R.add(lhs, R.mul(gi1[r][t], ds[t][c]))
                    rhs = R.zero()
                    for t in range(self.target.rank(i)):
                        rhs = R.add(rhs, R.mul(dt[r][t], gi[t][c]))
                    if not R.is_zero(R.sub(lhs, rhs)):
                        raise ValidationError(
                            f"map does not commute with d at degree {i}, "
                            f"entry ({r},{c})")


def _flatten_matrix(A: ArtinLocalAlgebra, mat, nrows: int, ncols: int):
    """Expand an Artin-entry matrix to a field matrix, each entry becoming
    its multiplication matrix."""
    n = A.dim
    F = A.field
    out = [[F.zero] * (ncols * n) for _ in range(nrows * n)]
    for r in range(nrows):
        for c in range(ncols):
            block = A.mult_matrix(mat[r][c])
            for a in range(n):
                for b in range(n):
                    out[r * n + a][c * n + b] = block[a][b]
    return tuple(tuple(row) for row in out)


def _homology_map_ranks(F, src_diffs, tgt_diffs, comps, degrees):
    """For each degree: (h_src, h_tgt, rank of the induced map on
    cohomology).  All matrices are over the field F."""
    from .linalg import Echelon, mat_vec, nullspace

    out = {}
    for i in degrees:
        ds_prev, ds_here, ncols_s_prev, ncols_s = src_diffs(i)
        dt_prev, dt_here, ncols_t_prev, ncols_t = tgt_diffs(i)
        g = comps(i)

        zs = nullspace(F, ds_here, ncols_s)
        bs = Echelon(F, ncols_s)
        for j in range(ncols_s_prev):
            bs.add(tuple(row[j] for row in ds_prev))
        zt = nullspace(F, dt_here, ncols_t)
        bt = Echelon(F, ncols_t)
        for j in range(ncols_t_prev):
            bt.add(tuple(row[j] for row in dt_prev))

        h_s = len(zs) - bs.rank
        h_t = len(zt) - bt.rank
        span = Echelon(F, ncols_t)
        for row in bt.basis():
            span.add(row)
        base = span.rank
        for z in zs:
            span.add(mat_vec(F, g, z))
        out[i] = (h_s, h_t, span.rank - base)
    return out


def homology_map_profile(gmap: ComplexMap) -> dict:
    """Flatten to the ground field and measure the induced maps on
    cohomology, degree by degree."""
    S, T = gmap.source, gmap.target
    ring = gmap.ring
    if isinstance(ring, ArtinLocalAlgebra):
        A = ring
        F = A.field
        n = A.dim

        def src(i):
            return (_flatten_matrix(A, S.diff(i - 1), S.rank(i), S.rank(i - 1)),
                    _flatten_matrix(A, S.diff(i), S.rank(i + 1), S.rank(i)),
                    S.rank(i - 1) * n, S.rank(i) * n)

        def tgt(i):
            return (_flatten_matrix(A, T.diff(i - 1), T.rank(i), T.rank(i - 1)),
                    _flatten_matrix(A, T.diff(i), T.rank(i + 1), T.rank(i)),
                    T.rank(i - 1) * n, T.rank(i) * n)

        def comps(i):
            return _flatten_matrix(A, gmap.comp(i), T.rank(i), S.rank(i))
    else:
        raise ValidationError("homology profiles need Artin local coefficients")

    lo = min(S.lo, T.lo)
    hi = max(S.hi, T.hi)
    return _homology_map_ranks(F, src, tgt, comps, range(lo, hi + 1))


def is_q_equivalence(gmap: ComplexMap, q: int | None) -> bool:
    """Isomorphism on cohomology in degrees <= q and injection in degree
    q + 1 (``q = None`` asks for all degrees)."""
    prof = homology_map_profile(gmap)
    for i, (h_s, h_t, r) in sorted(prof.items()):
        if q is not None and i > q + 1:
            continue
        if q is None or i <= q:
            if not (h_s == h_t == r):
                return False
        elif i == q + 1:
            if r != h_s:
                return False
    return True
