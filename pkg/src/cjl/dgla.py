"""Graded Lie structures with a module, and their cohomology.

Conventions (checked, not assumed, by the validators):

* grading is cohomological, brackets add degrees;
* skew symmetry is graded:  [x,y] = -(-1)^{|x||y|} [y,x];
* the Jacobi identity is checked in Leibniz form
  [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]];
* d is a degree +1 derivation of the bracket and of the action;
* the action is a graded Lie action: [x,y].m = x.(y.m) - (-1)^{|x||y|} y.(x.m).

Bracket and action tables are sparse: only nonzero structure vectors are
stored; a missing orientation of a bracket entry is derived by skew
symmetry, so inputs need not duplicate symmetric data.
"""

from __future__ import annotations

from typing import Sequence

from .errors import AxiomError, ValidationError
from .field import QQ, field_from_json
from .linalg import Echelon, mat_vec, nullspace, solve, vec_is_zero


class GradedVectorSpace:
    def __init__(self, lo: int, hi: int, dims: Sequence[int],
                 labels: Sequence[Sequence[str]] | None = None):
        if hi < lo:
            raise ValidationError("empty degree window")
        self.lo = lo
        self.hi = hi
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != hi - lo + 1 or any(d < 0 for d in self.dims):
            raise ValidationError("dims do not fit the degree window")
        if labels is None:
            labels = [[f"e{i}_{a}" for a in range(self.dim(i))]
                      for i in range(lo, hi + 1)]
        self.labels = tuple(tuple(l) for l in labels)
        if any(len(self.labels[i - lo]) != self.dim(i) for i in range(lo, hi + 1)):
            raise ValidationError("labels do not match dims")

    def dim(self, i: int) -> int:
        if self.lo <= i <= self.hi:
            return self.dims[i - self.lo]
        return 0

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def label(self, i: int, a: int) -> str:
        return self.labels[i - self.lo][a]


def _check_matrices(field, gvs: GradedVectorSpace, mats, what: str):
    if len(mats) != gvs.hi - gvs.lo:
        raise ValidationError(f"{what}: need one matrix per adjacent degree pair")
    out = []
    for idx, m in enumerate(mats):
        rows = gvs.dim(gvs.lo + idx + 1)
        cols = gvs.dim(gvs.lo + idx)
        m = tuple(tuple(r) for r in m)
        if len(m) != rows or any(len(r) != cols for r in m):
            raise ValidationError(
                f"{what}: matrix {idx} must be {rows}x{cols}")
        out.append(m)
    return tuple(out)


class _GradedTable:
    """Sparse bilinear table (i,a) x (j,b) -> vector in degree i+j."""

    def __init__(self, field, entries: dict):
        self.field = field
        self.entries = dict(entries)

    def get(self, i: int, a: int, j: int, b: int, out_dim: int, skew: bool):
        v = self.entries.get((i, a, j, b))
        if v is not None:
            return v
        if skew:
            w = self.entries.get((j, b, i, a))
            if w is not None:
                F = self.field
                sgn = -1 if (i * j) % 2 == 0 else 1
                # [x,y] = -(-1)^{ij}[y,x]
                if sgn < 0:
                    return tuple(F.neg(c) for c in w)
                return tuple(w)
        return (self.field.zero,) * out_dim


class Dgla:
    """Finite-dimensional graded Lie algebra with differential."""

    def __init__(self, field, gvs: GradedVectorSpace, d, bracket: dict):
        self.field = field
        self.gvs = gvs
        self.d = _check_matrices(field, gvs, d, "lie differential")
        for (i, a, j, b), v in bracket.items():
            if not (gvs.lo <= i <= gvs.hi and 0 <= a < gvs.dim(i)
                    and gvs.lo <= j <= gvs.hi and 0 <= b < gvs.dim(j)):
                raise ValidationError(f"bracket entry at bad index {(i, a, j, b)}")
            if len(v) != gvs.dim(i + j):
                raise ValidationError(
                    f"bracket value at {(i, a, j, b)} has wrong length")
        self.bracket = _GradedTable(field, bracket)

    def dim(self, i: int) -> int:
        return self.gvs.dim(i)

    def d_mat(self, i: int):
        if self.gvs.lo <= i < self.gvs.hi:
            return self.d[i - self.gvs.lo]
        return tuple((self.field.zero,) * self.dim(i)
                     for _ in range(self.dim(i + 1)))

    def d_apply(self, i: int, u):
        return mat_vec(self.field, self.d_mat(i), u)

    def bracket_vec(self, i: int, a: int, j: int, b: int):
        return self.bracket.get(i, a, j, b, self.dim(i + j), skew=True)

    def bracket_elem(self, i: int, u, j: int, v):
        F = self.field
        out = [F.zero] * self.dim(i + j)
        for a, x in enumerate(u):
            if F.is_zero(x):
                continue
            for b, y in enumerate(v):
                if F.is_zero(y):
                    continue
                c = F.mul(x, y)
                for k, t in enumerate(self.bracket_vec(i, a, j, b)):
                    if not F.is_zero(t):
                        out[k] = F.add(out[k], F.mul(c, t))
        return tuple(out)


class DglaPair:
    """A graded Lie algebra together with a graded module over it."""

    def __init__(self, lie: Dgla, m_gvs: GradedVectorSpace, m_d, action: dict):
        self.field = lie.field
        self.lie = lie
        self.m_gvs = m_gvs
        self.m_d = _check_matrices(lie.field, m_gvs, m_d, "module differential")
        for (i, a, j, b), v in action.items():
            if not (lie.gvs.lo <= i <= lie.gvs.hi and 0 <= a < lie.dim(i)
                    and m_gvs.lo <= j <= m_gvs.hi and 0 <= b < m_gvs.dim(j)):
                raise ValidationError(f"action entry at bad index {(i, a, j, b)}")
            if len(v) != m_gvs.dim(i + j):
                raise ValidationError(
                    f"action value at {(i, a, j, b)} has wrong length")
        self.action = _GradedTable(lie.field, action)

    def m_dim(self, i: int) -> int:
        return self.m_gvs.dim(i)

    def m_d_mat(self, i: int):
        if self.m_gvs.lo <= i < self.m_gvs.hi:
            return self.m_d[i - self.m_gvs.lo]
        return tuple((self.field.zero,) * self.m_dim(i)
                     for _ in range(self.m_dim(i + 1)))

    def m_d_apply(self, i: int, u):
        return mat_vec(self.field, self.m_d_mat(i), u)

    def action_vec(self, i: int, a: int, j: int, b: int):
        return self.action.get(i, a, j, b, self.m_dim(i + j), skew=False)

    def action_elem(self, i: int, u, j: int, v):
        F = self.field
        out = [F.zero] * self.m_dim(i + j)
        for a, x in enumerate(u):
            if F.is_zero(x):
                continue
            for b, y in enumerate(v):
                if F.is_zero(y):
                    continue
                c = F.mul(x, y)
                for k, t in enumerate(self.action_vec(i, a, j, b)):
                    if not F.is_zero(t):
                        out[k] = F.add(out[k], F.mul(c, t))
        return tuple(out)

    def has_zero_differentials(self) -> bool:
        F = self.field
        return all(all(F.is_zero(x) for row in m for x in row) for m in self.lie.d) \
            and all(all(F.is_zero(x) for row in m for x in row) for m in self.m_d)

    def validate(self):
        """Raise AxiomError on the first violated identity."""
        bad = check_dgla(self.lie) + check_pair(self)
        if bad:
            raise AxiomError(f"{len(bad)} axiom violations; first: "
                             f"{bad[0]['axiom']} at {bad[0].get('at')}", bad[0])


# ---------------------------------------------------------------------------
# axiom checkers
# ---------------------------------------------------------------------------

def _sign(field, n: int):
    return field.one if n % 2 == 0 else field.neg(field.one)


def check_dgla(C: Dgla) -> list:
    """All violations of the graded-Lie axioms, as witness dicts."""
    F = C.field
    g = C.gvs
    bad = []
    # d squares to zero
    for i in range(g.lo, g.hi - 1):
        for c in range(C.dim(i)):
            u = tuple(F.one if t == c else F.zero for t in range(C.dim(i)))
            if not vec_is_zero(F, C.d_apply(i + 1, C.d_apply(i, u))):
                bad.append({"axiom": "d_squared", "at": (i, c)})
    # graded skew symmetry, including the even diagonal
    for i in g.degrees():
        for j in g.degrees():
            if not g.lo <= i + j <= g.hi:
                continue
            for a in range(C.dim(i)):
                for b in range(C.dim(j)):
                    lhs = C.bracket_vec(i, a, j, b)
                    rhs = C.bracket_vec(j, b, i, a)
                    sgn = _sign(F, i * j)
                    s = tuple(F.add(x, F.mul(sgn, y)) for x, y in zip(lhs, rhs))
                    if not vec_is_zero(F, s):
                        bad.append({"axiom": "skew", "at": (i, a, j, b)})
    # Jacobi in Leibniz form
    for i in g.degrees():
        for j in g.degrees():
            for k in g.degrees():
                for a in range(C.dim(i)):
                    ua = tuple(F.one if t == a else F.zero
                               for t in range(C.dim(i)))
                    for b in range(C.dim(j)):
                        ub = tuple(F.one if t == b else F.zero
                                   for t in range(C.dim(j)))
                        for c in range(C.dim(k)):
                            uc = tuple(F.one if t == c else F.zero
                                       for t in range(C.dim(k)))
                            lhs = C.bracket_elem(i, ua, j + k,
                                                 C.bracket_elem(j, ub, k, uc))
                            t1 = C.bracket_elem(i + j,
                                                C.bracket_elem(i, ua, j, ub),
                                                k, uc)
                            t2 = C.bracket_elem(j, ub, i + k,
                                                C.bracket_elem(i, ua, k, uc))
                            sgn = _sign(F, i * j)
                            rhs = tuple(F.add(x, F.mul(sgn, y))
                                        for x, y in zip(t1, t2))
                            if not vec_is_zero(
                                    F, tuple(F.sub(x, y)
                                             for x, y in zip(lhs, rhs))):
                                bad.append({"axiom": "jacobi",
                                            "at": (i, a, j, b, k, c)})
    # d is a derivation of the bracket
    for i in g.degrees():
        for j in g.degrees():
            for a in range(C.dim(i)):
                ua = tuple(F.one if t == a else F.zero for t in range(C.dim(i)))
                for b in range(C.dim(j)):
                    ub = tuple(F.one if t == b else F.zero
                               for t in range(C.dim(j)))
                    lhs = C.d_apply(i + j, C.bracket_elem(i, ua, j, ub))
                    t1 = C.bracket_elem(i + 1, C.d_apply(i, ua), j, ub)
                    t2 = C.bracket_elem(i, ua, j + 1, C.d_apply(j, ub))
                    sgn = _sign(F, i)
                    rhs = tuple(F.add(x, F.mul(sgn, y)) for x, y in zip(t1, t2))
                    if not vec_is_zero(F, tuple(F.sub(x, y)
                                                for x, y in zip(lhs, rhs))):
                        bad.append({"axiom": "leibniz", "at": (i, a, j, b)})
    return bad


def check_pair(P: DglaPair) -> list:
    """Violations of the module axioms over the (already checked) algebra."""
    F = P.field
    C = P.lie
    g = C.gvs
    m = P.m_gvs
    bad = []
    for i in range(m.lo, m.hi - 1):
        for c in range(P.m_dim(i)):
            u = tuple(F.one if t == c else F.zero for t in range(P.m_dim(i)))
            if not vec_is_zero(F, P.m_d_apply(i + 1, P.m_d_apply(i, u))):
                bad.append({"axiom": "module_d_squared", "at": (i, c)})
    # Lie action: [x,y].m = x.(y.m) - (-1)^{|x||y|} y.(x.m)
    for i in g.degrees():
        for j in g.degrees():
            for k in m.degrees():
                for a in range(C.dim(i)):
                    ua = tuple(F.one if t == a else F.zero
                               for t in range(C.dim(i)))
                    for b in range(C.dim(j)):
                        ub = tuple(F.one if t == b else F.zero
                                   for t in range(C.dim(j)))
                        br = C.bracket_elem(i, ua, j, ub)
                        for c in range(P.m_dim(k)):
                            uc = tuple(F.one if t == c else F.zero
                                       for t in range(P.m_dim(k)))
                            lhs = P.action_elem(i + j, br, k, uc)
                            t1 = P.action_elem(i, ua, j + k,
                                               P.action_elem(j, ub, k, uc))
                            t2 = P.action_elem(j, ub, i + k,
                                               P.action_elem(i, ua, k, uc))
                            sgn = _sign(F, i * j)
                            rhs = tuple(F.sub(x, F.mul(sgn, y))
                                        for x, y in zip(t1, t2))
                            if not vec_is_zero(
                                    F, tuple(F.sub(x, y)
                                             for x, y in zip(lhs, rhs))):
                                bad.append({"axiom": "lie_action",
                                            "at": (i, a, j, b, k, c)})
    # d is a derivation of the action
    for i in g.degrees():
        for k in m.degrees():
            for a in range(C.dim(i)):
                ua = tuple(F.one if t == a else F.zero for t in range(C.dim(i)))
                for c in range(P.m_dim(k)):
                    uc = tuple(F.one if t == c else F.zero
                               for t in range(P.m_dim(k)))
                    lhs = P.m_d_apply(i + k, P.action_elem(i, ua, k, uc))
                    t1 = P.action_elem(i + 1, C.d_apply(i, ua), k, uc)
                    t2 = P.action_elem(i, ua, k + 1, P.m_d_apply(k, uc))
                    sgn = _sign(F, i)
                    rhs = tuple(F.add(x, F.mul(sgn, y)) for x, y in zip(t1, t2))
                    if not vec_is_zero(F, tuple(F.sub(x, y)
                                                for x, y in zip(lhs, rhs))):
                        bad.append({"axiom": "action_leibniz", "at": (i, a, k, c)})
    return bad


# ---------------------------------------------------------------------------
# cohomology
# ---------------------------------------------------------------------------

class _DegreeHomology:
    """Cocycle/boundary bookkeeping for one graded piece."""

    def __init__(self, F, d_in, d_out, dim: int, dim_prev: int):
        self.F = F
        self.dim = dim
        self.boundaries = Echelon(F, dim)
        for j in range(dim_prev):
            self.boundaries.add(tuple(row[j] for row in d_in))
        self.cocycles = nullspace(F, d_out, dim)
        ech = Echelon(F, dim)
        for row in self.boundaries.basis():
            ech.add(row)
        self.reps = []
        for z in self.cocycles:
            r = ech.reduce(z)
            if not vec_is_zero(F, r):
                ech.add(r)
                self.reps.append(r)
        self.h = len(self.reps)
        # solve matrix: columns are boundary basis then reps
        cols = list(self.boundaries.basis()) + self.reps
        self.solve_mat = tuple(tuple(col[r] for col in cols)
                               for r in range(dim)) if cols else ()
        self.n_b = self.boundaries.rank

    def classify(self, v):
        """Coordinates of the class of the cocycle ``v`` on the chosen reps."""
        if vec_is_zero(self.F, v):
            return (self.F.zero,) * self.h
        x = solve(self.F, self.solve_mat, v, self.n_b + self.h)
        if x is None:
            raise AxiomError("vector is not a cocycle modulo boundaries "
                             "(expected one by the Leibniz rule)")
        return tuple(x[self.n_b:])


def cohomology_pair(P: DglaPair) -> DglaPair:
    """The induced pair on cohomology: zero differentials, bracket and
    action induced on chosen representatives."""
    F = P.field
    C = P.lie
    g = C.gvs
    m = P.m_gvs

    ch = {i: _DegreeHomology(F, C.d_mat(i - 1), C.d_mat(i), C.dim(i),
                             C.dim(i - 1)) for i in g.degrees()}
    mh = {i: _DegreeHomology(F, P.m_d_mat(i - 1), P.m_d_mat(i), P.m_dim(i),
                             P.m_dim(i - 1)) for i in m.degrees()}

    new_g = GradedVectorSpace(g.lo, g.hi, [ch[i].h for i in g.degrees()])
    new_m = GradedVectorSpace(m.lo, m.hi, [mh[i].h for i in m.degrees()])

    bracket = {}
    for i in g.degrees():
        for j in g.degrees():
            if not g.lo <= i + j <= g.hi:
                continue
            for a, u in enumerate(ch[i].reps):
                for b, v in enumerate(ch[j].reps):
                    w = C.bracket_elem(i, u, j, v)
                    coords = ch[i + j].classify(w)
                    if not vec_is_zero(F, coords):
                        bracket[(i, a, j, b)] = coords
    action = {}
    for i in g.degrees():
        for j in m.degrees():
            if not m.lo <= i + j <= m.hi:
                continue
            for a, u in enumerate(ch[i].reps):
                for b, v in enumerate(mh[j].reps):
                    w = P.action_elem(i, u, j, v)
                    coords = mh[i + j].classify(w)
                    if not vec_is_zero(F, coords):
                        action[(i, a, j, b)] = coords

    zero_d_g = [tuple((F.zero,) * new_g.dim(i) for _ in range(new_g.dim(i + 1)))
                for i in range(g.lo, g.hi)]
    zero_d_m = [tuple((F.zero,) * new_m.dim(i) for _ in range(new_m.dim(i + 1)))
                for i in range(m.lo, m.hi)]
    lie = Dgla(F, new_g, zero_d_g, bracket)
    return DglaPair(lie, new_m, zero_d_m, action)


def module_betti(P: DglaPair) -> tuple:
    """Cohomology dimensions of the module complex over its window."""
    F = P.field
    out = []
    for i in P.m_gvs.degrees():
        dh = _DegreeHomology(F, P.m_d_mat(i - 1), P.m_d_mat(i), P.m_dim(i),
                             P.m_dim(i - 1))
        out.append(dh.h)
    return tuple(out)


# ---------------------------------------------------------------------------
# maps of pairs
# ---------------------------------------------------------------------------

class DglaPairMap:
    """Degreewise maps (on the algebra and the module) that intertwine the
    differentials, brackets, and actions."""

    def __init__(self, source: DglaPair, target: DglaPair, lie_comps: dict,
                 mod_comps: dict, check: bool = True):
        self.source = source
        self.target = target
        self.F = source.field
        self.lie_comps = {i: tuple(tuple(r) for r in m)
                          for i, m in lie_comps.items()}
        self.mod_comps = {i: tuple(tuple(r) for r in m)
                          for i, m in mod_comps.items()}
        for i, m in self.lie_comps.items():
            if len(m) != target.lie.dim(i) or \
                    any(len(r) != source.lie.dim(i) for r in m):
                raise ValidationError(f"lie component {i} has wrong shape")
        for i, m in self.mod_comps.items():
            if len(m) != target.m_dim(i) or \
                    any(len(r) != source.m_dim(i) for r in m):
                raise ValidationError(f"module component {i} has wrong shape")
        if check:
            self._check()

    def lie_comp(self, i: int):
        if i in self.lie_comps:
            return self.lie_comps[i]
        return tuple((self.F.zero,) * self.source.lie.dim(i)
                     for _ in range(self.target.lie.dim(i)))

    def mod_comp(self, i: int):
        if i in self.mod_comps:
            return self.mod_comps[i]
        return tuple((self.F.zero,) * self.source.m_dim(i)
                     for _ in range(self.target.m_dim(i)))

    def apply_lie(self, i: int, u):
        return mat_vec(self.F, self.lie_comp(i), u)

    def apply_mod(self, i: int, u):
        return mat_vec(self.F, self.mod_comp(i), u)

    def _check(self):
        F = self.F
        S, T = self.source, self.target
        lo = min(S.lie.gvs.lo, T.lie.gvs.lo)
        hi = max(S.lie.gvs.hi, T.lie.gvs.hi)
        for i in range(lo, hi):
            for c in range(S.lie.dim(i)):
                u = tuple(F.one if t == c else F.zero
                          for t in range(S.lie.dim(i)))
                lhs = self.apply_lie(i + 1, S.lie.d_apply(i, u))
                rhs = T.lie.d_apply(i, self.apply_lie(i, u))
                if not vec_is_zero(F, tuple(F.sub(x, y)
                                            for x, y in zip(lhs, rhs))):
                    raise ValidationError(f"lie map fails d-chain rule at {i}")
        mlo = min(S.m_gvs.lo, T.m_gvs.lo)
        mhi = max(S.m_gvs.hi, T.m_gvs.hi)
        for i in range(mlo, mhi):
            for c in range(S.m_dim(i)):
                u = tuple(F.one if t == c else F.zero
                          for t in range(S.m_dim(i)))
                lhs = self.apply_mod(i + 1, S.m_d_apply(i, u))
                rhs = T.m_d_apply(i, self.apply_mod(i, u))
                if not vec_is_zero(F, tuple(F.sub(x, y)
                                            for x, y in zip(lhs, rhs))):
                    raise ValidationError(f"module map fails d-chain rule at {i}")
        # bracket preservation
        for i in S.lie.gvs.degrees():
            for j in S.lie.gvs.degrees():
                for a in range(S.lie.dim(i)):
                    ua = tuple(F.one if t == a else F.zero
                               for t in range(S.lie.dim(i)))
                    for b in range(S.lie.dim(j)):
                        ub = tuple(F.one if t == b else F.zero
                                   for t in range(S.lie.dim(j)))
                        lhs = self.apply_lie(i + j, S.lie.bracket_elem(i, ua, j, ub))
                        rhs = T.lie.bracket_elem(i, self.apply_lie(i, ua),
                                                 j, self.apply_lie(j, ub))
                        if not vec_is_zero(F, tuple(F.sub(x, y)
                                                    for x, y in zip(lhs, rhs))):
                            raise ValidationError(
                                f"map fails bracket preservation at {(i, a, j, b)}")
        # action equivariance
        for i in S.lie.gvs.degrees():
            for j in S.m_gvs.degrees():
                for a in range(S.lie.dim(i)):
                    ua = tuple(F.one if t == a else F.zero
                               for t in range(S.lie.dim(i)))
                    for b in range(S.m_dim(j)):
                        ub = tuple(F.one if t == b else F.zero
                                   for t in range(S.m_dim(j)))
                        lhs = self.apply_mod(i + j, S.action_elem(i, ua, j, ub))
                        rhs = T.action_elem(i, self.apply_lie(i, ua),
                                            j, self.apply_mod(j, ub))
                        if not vec_is_zero(F, tuple(F.sub(x, y)
                                                    for x, y in zip(lhs, rhs))):
                            raise ValidationError(
                                f"map fails action equivariance at {(i, a, j, b)}")


def pair_map_profiles(gmap: DglaPairMap) -> tuple:
    """Per-degree (h_source, h_target, induced rank) for the algebra and
    the module components of a pair map."""
    from .complexes import _homology_map_ranks
    F = gmap.F
    S, T = gmap.source, gmap.target

    def mk(dfun, dim_prev, dim_here):
        def at(i):
            return (dfun(i - 1), dfun(i), dim_prev(i), dim_here(i))
        return at

    lie_degrees = range(min(S.lie.gvs.lo, T.lie.gvs.lo),
                        max(S.lie.gvs.hi, T.lie.gvs.hi) + 1)
    mod_degrees = range(min(S.m_gvs.lo, T.m_gvs.lo),
                        max(S.m_gvs.hi, T.m_gvs.hi) + 1)
    lie_prof = _homology_map_ranks(
        F,
        mk(S.lie.d_mat, lambda i: S.lie.dim(i - 1), S.lie.dim),
        mk(T.lie.d_mat, lambda i: T.lie.dim(i - 1), T.lie.dim),
        gmap.lie_comp, lie_degrees)
    mod_prof = _homology_map_ranks(
        F,
        mk(S.m_d_mat, lambda i: S.m_dim(i - 1), S.m_dim),
        mk(T.m_d_mat, lambda i: T.m_dim(i - 1), T.m_dim),
        gmap.mod_comp, mod_degrees)
    return lie_prof, mod_prof


def _level_ok(prof: dict, q: int | None) -> bool:
    """Isomorphism on cohomology through degree q, injection in degree
    q+1 (q=None: isomorphism everywhere)."""
    for i, (hs, ht, r) in sorted(prof.items()):
        if q is not None and i > q + 1:
            continue
        if q is None or i <= q:
            if not (hs == ht == r):
                return False
        elif r != hs:
            return False
    return True


def pair_map_equivalence(gmap: DglaPairMap, i: int | None) -> bool:
    """Whether the map induces an isomorphism on algebra cohomology
    through degree 1 (injection in 2) and on module cohomology through
    degree i (injection in i+1)."""
    lie_prof, mod_prof = pair_map_profiles(gmap)
    return _level_ok(lie_prof, 1) and _level_ok(mod_prof, i)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def _parse_scalar(F, s, path):
    if isinstance(s, str):
        return F.parse(s)
    if isinstance(s, int):
        return F.from_int(s)
    raise ValidationError("scalar must be a string or integer", path)


def _gvs_from_json(obj, path):
    degs = obj.get("degrees")
    dims = obj.get("dims")
    if not (isinstance(degs, list) and len(degs) == 2
            and all(isinstance(x, int) for x in degs)):
        raise ValidationError("degrees must be [lo, hi]", path + "/degrees")
    if not (isinstance(dims, list) and all(isinstance(x, int) for x in dims)):
        raise ValidationError("dims must be a list of ints", path + "/dims")
    return GradedVectorSpace(degs[0], degs[1], dims)


def _mats_from_json(F, obj, gvs, path):
    raw = obj.get("d")
    if raw is None:
        raw = []
    if not isinstance(raw, list):
        raise ValidationError("d must be a list of matrices", path + "/d")
    want = gvs.hi - gvs.lo
    if len(raw) != want:
        raise ValidationError(f"d must contain {want} matrices", path + "/d")
    out = []
    for idx, m in enumerate(raw):
        if not isinstance(m, list):
            raise ValidationError("matrix must be a list of rows",
                                  f"{path}/d/{idx}")
        out.append(tuple(tuple(_parse_scalar(F, x, f"{path}/d/{idx}/{r}/{c}")
                               for c, x in enumerate(row))
                         for r, row in enumerate(m)))
    return out


def _table_from_json(F, obj, key, path):
    raw = obj.get(key, [])
    if not isinstance(raw, list):
        raise ValidationError(f"{key} must be a list", path + "/" + key)
    table = {}
    for idx, e in enumerate(raw):
        p = f"{path}/{key}/{idx}"
        if not isinstance(e, dict):
            raise ValidationError("table entry must be an object", p)
        try:
            i, a, j, b = int(e["i"]), int(e["a"]), int(e["j"]), int(e["b"])
        except (KeyError, TypeError, ValueError):
            raise ValidationError("table entry needs integer i, a, j, b", p)
        out = e.get("out")
        if not isinstance(out, list):
            raise ValidationError("table entry needs an out vector", p + "/out")
        if (i, a, j, b) in table:
            raise ValidationError(f"duplicate table entry {(i, a, j, b)}", p)
        table[(i, a, j, b)] = tuple(_parse_scalar(F, x, f"{p}/out/{c}")
                                    for c, x in enumerate(out))
    return table


def pair_from_json(obj: dict, path: str = "", check: bool = True) -> DglaPair:
    if not isinstance(obj, dict):
        raise ValidationError("pair must be an object", path or "/")
    F = field_from_json(obj, path + "/field") if "field" in obj else QQ()
    lie_obj = obj.get("lie")
    mod_obj = obj.get("module")
    if not isinstance(lie_obj, dict) or not isinstance(mod_obj, dict):
        raise ValidationError("pair needs lie and module objects", path or "/")
    g = _gvs_from_json(lie_obj, path + "/lie")
    m = _gvs_from_json(mod_obj, path + "/module")
    lie = Dgla(F, g, _mats_from_json(F, lie_obj, g, path + "/lie"),
               _table_from_json(F, lie_obj, "bracket", path + "/lie"))
    pair = DglaPair(lie, m, _mats_from_json(F, mod_obj, m, path + "/module"),
                    _table_from_json(F, mod_obj, "action", path + "/module"))
    if check:
        pair.validate()
    return pair


def pair_to_json(P: DglaPair) -> dict:
    F = P.field
    g, m = P.lie.gvs, P.m_gvs

    def mats(d):
        return [[[F.format(x) for x in row] for row in mat] for mat in d]

    def table(t):
        out = []
        for (i, a, j, b), v in sorted(t.entries.items()):
            out.append({"i": i, "a": a, "j": j, "b": b,
                        "out": [F.format(x) for x in v]})
        return out

    obj = {"lie": {"degrees": [g.lo, g.hi], "dims": list(g.dims),
                   "d": mats(P.lie.d), "bracket": table(P.lie.bracket)},
           "module": {"degrees": [m.lo, m.hi], "dims": list(m.dims),
                      "d": mats(P.m_d), "action": table(P.action)}}
    if F.char:
        obj["field"] = "Fp"
        obj["p"] = F.char
    return obj
