"""Flatness equation, gauge series, and twisted complexes over an
Artinian local base.

Elements of ``C^i (x) A`` (or ``M^i (x) A``) are tuples of algebra
elements, one per basis vector of the graded piece.  All power series
(exponentials of adjoint or module action) are exact finite sums: each
application of a coefficient in the maximal ideal climbs the m-adic
filtration, which terminates at the nilpotency index.
"""

from __future__ import annotations

from .artin import ArtinLocalAlgebra
from .dgla import Dgla, DglaPair
from .errors import InternalCheckError, ValidationError


def _lie(P):
    return P.lie if isinstance(P, DglaPair) else P


def zero_tensor(A: ArtinLocalAlgebra, n: int):
    return tuple(A.zero() for _ in range(n))


def tensor_is_zero(A, u) -> bool:
    return all(A.is_zero(x) for x in u)


def tensor_add(A, u, v):
    return tuple(A.add(x, y) for x, y in zip(u, v))


def tensor_sub(A, u, v):
    return tuple(A.sub(x, y) for x, y in zip(u, v))


def tensor_scale(A, c, u):
    """Scale by a ground-field constant."""
    return tuple(A.scale(x, c) for x in u)


def tensor_eq(A, u, v) -> bool:
    return len(u) == len(v) and all(A.eq(x, y) for x, y in zip(u, v))


def tensor_in_max_ideal(A, u) -> bool:
    return all(A.in_max_ideal(x) for x in u)


def apply_scalar_matrix(A: ArtinLocalAlgebra, mat, u):
    """Apply a matrix of ground-field scalars to a vector of algebra
    elements (the differential extended along the base)."""
    F = A.field
    out = []
    for row in mat:
        acc = A.zero()
        for c, x in zip(row, u):
            if not F.is_zero(c):
                acc = A.add(acc, A.scale(x, c))
        out.append(acc)
    return tuple(out)


def bracket_tensor(C: Dgla, A: ArtinLocalAlgebra, i: int, u, j: int, v):
    """[x (x) a, y (x) b] = [x,y] (x) ab — the base is commutative and
    sits in degree zero, so no extra sign appears."""
    F = C.field
    out = [A.zero()] * C.dim(i + j)
    for a, xa in enumerate(u):
        if A.is_zero(xa):
            continue
        for b, yb in enumerate(v):
            if A.is_zero(yb):
                continue
            prod = A.mul(xa, yb)
            for k, t in enumerate(C.bracket_vec(i, a, j, b)):
                if not F.is_zero(t):
                    out[k] = A.add(out[k], A.scale(prod, t))
    return tuple(out)


def action_tensor(P: DglaPair, A: ArtinLocalAlgebra, i: int, u, j: int, v):
    """(x (x) a).(m (x) b) = x.m (x) ab."""
    F = P.field
    out = [A.zero()] * P.m_dim(i + j)
    for a, xa in enumerate(u):
        if A.is_zero(xa):
            continue
        for b, yb in enumerate(v):
            if A.is_zero(yb):
                continue
            prod = A.mul(xa, yb)
            for k, t in enumerate(P.action_vec(i, a, j, b)):
                if not F.is_zero(t):
                    out[k] = A.add(out[k], A.scale(prod, t))
    return tuple(out)


def _check_shape(P, A, u, n, what: str, in_m: bool):
    if len(u) != n:
        raise ValidationError(f"{what} must have {n} entries, got {len(u)}")
    for idx, x in enumerate(u):
        if len(x) != A.dim:
            raise ValidationError(
                f"{what} entry {idx} must have {A.dim} coefficients")
    if in_m and not tensor_in_max_ideal(A, u):
        raise ValidationError(
            f"{what} must have coefficients in the maximal ideal")


def _inv_int(F, n: int):
    if F.char and n % F.char == 0:
        raise ValidationError(
            f"series term needs {n} invertible in the ground field "
            f"(characteristic {F.char} too small)")
    return F.inv(F.from_int(n))


def mc_defect(P, A: ArtinLocalAlgebra, omega):
    """d(omega) + (1/2)[omega, omega], an element of C^2 (x) A."""
    C = _lie(P)
    F = C.field
    _check_shape(P, A, omega, C.dim(1), "connection coefficients", in_m=True)
    if F.char == 2:
        raise ValidationError(
            "the structure equation needs 2 invertible; characteristic 2 "
            "is not supported")
    d_omega = apply_scalar_matrix(A, C.d_mat(1), omega)
    sq = bracket_tensor(C, A, 1, omega, 1, omega)
    half = _inv_int(F, 2)
    return tensor_add(A, d_omega, tensor_scale(A, half, sq))


def maurer_cartan_check(P, A: ArtinLocalAlgebra, omega) -> bool:
    """Exact evaluation of the flatness equation in C^2 (x) m."""
    return tensor_is_zero(A, mc_defect(P, A, omega))


def bracket_exp(P, A: ArtinLocalAlgebra, lam, i: int, u):
    """exp(ad lam) applied to an element of C^i (x) A, as an exact
    finite sum (lam has nilpotent coefficients)."""
    C = _lie(P)
    _check_shape(P, A, lam, C.dim(0), "gauge coefficients", in_m=True)
    acc = u
    term = u
    n = 0
    fuel = A.nilpotency_index + 1
    while not tensor_is_zero(A, term):
        n += 1
        if n > fuel:
            raise InternalCheckError(
                "adjoint series failed to terminate within the nilpotency "
                "bound")
        term = bracket_tensor(C, A, 0, lam, i, term)
        term = tensor_scale(A, _inv_int(C.field, n), term)
        acc = tensor_add(A, acc, term)
    return acc


def gauge_correction(P, A: ArtinLocalAlgebra, lam):
    """((1 - exp(ad lam)) / ad lam)(d lam) ∈ C^1 (x) m, i.e.
    -sum_{n>=0} ad_lam^n(d lam) / (n+1)!."""
    C = _lie(P)
    _check_shape(P, A, lam, C.dim(0), "gauge coefficients", in_m=True)
    term = apply_scalar_matrix(A, C.d_mat(0), lam)
    acc = zero_tensor(A, C.dim(1))
    n = 0
    fuel = A.nilpotency_index + 1
    while not tensor_is_zero(A, term):
        acc = tensor_sub(A, acc, term)
        n += 1
        if n > fuel:
            raise InternalCheckError(
                "gauge correction series failed to terminate within the "
                "nilpotency bound")
        term = bracket_tensor(C, A, 0, lam, 1, term)
        term = tensor_scale(A, _inv_int(C.field, n + 1), term)
    return acc


def gauge_act(P, A: ArtinLocalAlgebra, lam, omega):
    """The gauge action  exp(ad lam)(omega) + ((1-exp(ad lam))/ad lam)(d lam).

    For an abelian bracket this collapses to omega - d(lam).
    """
    C = _lie(P)
    _check_shape(P, A, omega, C.dim(1), "connection coefficients", in_m=True)
    out = tensor_add(A, bracket_exp(P, A, lam, 1, omega),
                     gauge_correction(P, A, lam))
    if not tensor_in_max_ideal(A, out):
        raise InternalCheckError("gauge action left the maximal ideal")
    return out


def module_transport(P: DglaPair, A: ArtinLocalAlgebra, lam, xi,
                     degree: int):
    """exp(lam) applied to an element of M^degree (x) A:
    sum_n act_lam^n(xi) / n!."""
    _check_shape(P, A, lam, P.lie.dim(0), "gauge coefficients", in_m=True)
    _check_shape(P, A, xi, P.m_dim(degree), "module element", in_m=False)
    acc = xi
    term = xi
    n = 0
    fuel = A.nilpotency_index + 1
    while not tensor_is_zero(A, term):
        n += 1
        if n > fuel:
            raise InternalCheckError(
                "transport series failed to terminate within the nilpotency "
                "bound")
        term = action_tensor(P, A, 0, lam, degree, term)
        term = tensor_scale(A, _inv_int(P.field, n), term)
        acc = tensor_add(A, acc, term)
    return acc


def twisted_differential(P: DglaPair, A: ArtinLocalAlgebra, omega,
                         degree: int, xi):
    """d_M(xi) + omega.xi on M^degree (x) A."""
    return tensor_add(A, apply_scalar_matrix(A, P.m_d_mat(degree), xi),
                      action_tensor(P, A, 1, omega, degree, xi))


def aomoto_complex(P: DglaPair, A: ArtinLocalAlgebra, omega):
    """The module complex twisted by a flat connection: free over A with
    ranks dim M^i and differential d_M (x) id + omega-action."""
    from .complexes import FreeComplex

    if not maurer_cartan_check(P, A, omega):
        raise ValidationError(
            "connection is not flat (fails the structure equation); "
            "no twisted complex exists")
    m = P.m_gvs
    ranks = [P.m_dim(i) for i in m.degrees()]
    diffs = []
    for j in range(m.lo, m.hi):
        rows = P.m_dim(j + 1)
        cols = P.m_dim(j)
        d_m = P.m_d_mat(j)
        mat = []
        for c in range(rows):
            row = []
            for b in range(cols):
                entry = A.from_scalar(d_m[c][b])
                for a in range(P.lie.dim(1)):
                    t = P.action_vec(1, a, j, b)[c]
                    if not P.field.is_zero(t):
                        entry = A.add(entry, A.scale(omega[a], t))
                row.append(entry)
            mat.append(tuple(row))
        diffs.append(tuple(mat))
    return FreeComplex(A, m.lo, m.hi, ranks, diffs)


def def_jump_test(P: DglaPair, A: ArtinLocalAlgebra, omega, i: int,
                  k: int) -> bool:
    """Whether the (i,k) jump ideal of the twisted complex vanishes
    identically over A — membership in the jump subcategory."""
    from .complexes import jump_ideal

    return jump_ideal(aomoto_complex(P, A, omega), i, k).is_zero()


def square_zero_mc_points(P, A: ArtinLocalAlgebra):
    """All basis solutions of the flatness equation when m^2 = 0 (it is
    then the linear equation d omega = 0): one connection per pair
    (kernel vector of d^1, maximal-ideal basis vector)."""
    from .linalg import nullspace

    C = _lie(P)
    F = C.field
    for x in A.max_ideal_basis():
        for y in A.max_ideal_basis():
            if not A.is_zero(A.mul(x, y)):
                raise ValidationError(
                    "square-zero solver needs m^2 = 0 in the base algebra")
    out = []
    kernel = nullspace(F, C.d_mat(1), C.dim(1))
    for z in kernel:
        for mb in A.max_ideal_basis():
            out.append(tuple(A.scale(mb, c) for c in z))
    return out


# ---------------------------------------------------------------------------
# JSON for tensor elements
# ---------------------------------------------------------------------------

def tensor_from_json(A: ArtinLocalAlgebra, n: int, rows, path: str,
                     in_m: bool):
    """Rows are coefficient lists: either full coordinates on the algebra
    basis, or (for maximal-ideal elements) coordinates on the basis of m
    alone (one shorter, unit coefficient implied zero)."""
    F = A.field
    if not isinstance(rows, list) or len(rows) != n:
        raise ValidationError(f"need a list of {n} coefficient rows", path)
    out = []
    for idx, row in enumerate(rows):
        p = f"{path}/{idx}"
        if not isinstance(row, list):
            raise ValidationError("coefficient row must be a list", p)
        vals = []
        for c, x in enumerate(row):
            if isinstance(x, int):
                vals.append(F.from_int(x))
            elif isinstance(x, str):
                try:
                    vals.append(F.parse(x))
                except (ValueError, ZeroDivisionError):
                    raise ValidationError(f"bad scalar {x!r}", f"{p}/{c}")
            else:
                raise ValidationError("scalar must be a string or integer",
                                      f"{p}/{c}")
        if len(vals) == A.dim - 1:
            vals = [F.zero] + vals
        elif len(vals) != A.dim:
            raise ValidationError(
                f"row must have {A.dim} coefficients "
                f"(or {A.dim - 1} on the maximal-ideal basis)", p)
        out.append(tuple(vals))
    elem = tuple(out)
    if in_m and not tensor_in_max_ideal(A, elem):
        raise ValidationError("coefficients must lie in the maximal ideal",
                              path)
    return elem


def tensor_to_json(A: ArtinLocalAlgebra, u, in_m: bool):
    F = A.field
    if in_m:
        return [[F.format(c) for c in x[1:]] for x in u]
    return [[F.format(c) for c in x] for x in u]
