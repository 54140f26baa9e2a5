from fractions import Fraction

import pytest

from cjl.dgla import Dgla, DglaPair, GradedVectorSpace, check_dgla, check_pair
from cjl.errors import AxiomError, ValidationError
from cjl.field import QQ
from cjl.models import exterior_pair
from cjl.resonance import (Augmentation, augmented_resonance,
                           flat_connection_ideal, pointwise_resonance,
                           quadratic_cone_ideal, resonance_ideal,
                           universal_aomoto)
from cjl.groebner import krull_dimension

F = QQ()
ONE = F.one
HALF = Fraction(1, 2)


def heis_dgla():
    """H^1 = <e1,e2>, H^2 = <f>, [e1,e2] = f, zero differential."""
    gvs = GradedVectorSpace(1, 2, (2, 1), (("e1", "e2"), ("f",)))
    zero_d = (((F.zero, F.zero),),)
    bracket = {(1, 0, 1, 1): (ONE,)}
    return Dgla(F, gvs, zero_d, bracket)


def heis_pair():
    """heis_dgla acting on a three-step module m0 -> m1 -> m2."""
    C = heis_dgla()
    m = GradedVectorSpace(0, 2, (1, 1, 1))
    m_d = (((F.zero,),), ((F.zero,),))
    action = {
        (1, 0, 0, 0): (ONE,),   # e1.m0 = m1
        (1, 1, 1, 0): (ONE,),   # e2.m1 = m2
        (2, 0, 0, 0): (ONE,),   # f.m0 = m2, forced by the pair axiom
    }
    return DglaPair(C, m, m_d, action)


def torus_with_acyclic_module():
    """exterior_pair(2) with an extra acyclic summand glued to M."""
    P = exterior_pair(2)
    m = GradedVectorSpace(0, 2, (2, 3, 1))
    # basis: (m0, s) in degree 0, (m1a, m1b, ds) in degree 1, (m2,) on top
    Z = F.zero
    m_d = (
        ((Z, Z), (Z, Z), (Z, ONE)),
        ((Z, Z, Z),),
    )
    action = {}
    for (i, a, j, b), vec in P.action.entries.items():
        out = m.dim(i + j)
        action[(i, a, j, b)] = tuple(vec) + (Z,) * (out - len(vec))
    return DglaPair(P.lie, m, m_d, action)


def test_cone_of_torus_is_zero():
    P = exterior_pair(2)
    S, IQ = quadratic_cone_ideal(P.lie)
    assert S.names == ("x0", "x1")
    assert IQ.is_zero()


def test_cone_heisenberg():
    S, IQ = quadratic_cone_ideal(heis_dgla())
    assert len(IQ.gens) == 1
    x0, x1 = S.gens()
    # the self-bracket picks up both orientations: coefficient 2, as-is
    assert IQ.gens[0].terms == (x0 * x1 * S.from_int(2)).terms
    assert IQ.equals(S.ideal([x0 * x1]))


def test_cone_computed_on_cohomology():
    # same structure with an acyclic arm u -> v added in degrees 0 -> 1
    Z = F.zero
    gvs = GradedVectorSpace(0, 2, (1, 3, 1))
    d = (
        ((Z,), (Z,), (ONE,)),
        ((Z, Z, Z),),
    )
    bracket = {(1, 0, 1, 1): (ONE,)}
    C = Dgla(F, gvs, d, bracket)
    assert check_dgla(C) == []
    S, IQ = quadratic_cone_ideal(C)
    assert S.nvars == 2
    x0, x1 = S.gens()
    assert IQ.equals(S.ideal([x0 * x1]))


def test_flat_connection_linear_part():
    Z = F.zero
    gvs = GradedVectorSpace(1, 2, (2, 2))
    d = (((ONE, Z), (Z, ONE)),)
    C = Dgla(F, gvs, d, {})
    S, I = flat_connection_ideal(C)
    assert I.equals(S.ideal(list(S.gens())))


def test_flat_connection_on_zero_d_matches_cone():
    C = heis_dgla()
    S1, flat = flat_connection_ideal(C)
    S2, cone = quadratic_cone_ideal(C)
    assert flat.equals(S1.ideal([g.cast(S1) for g in cone.gens]))
    # the flat equation carries the 1/2: single generator x0*x1
    assert flat.gens[0].terms == (S1.gens()[0] * S1.gens()[1]).terms


def test_universal_aomoto_torus():
    E = universal_aomoto(exterior_pair(2))
    S = E.ring
    assert not S.has_quotient()
    x0, x1 = S.gens()
    assert E.diff(0) == (((x0,)), ((x1,)))
    assert E.diff(1) == (((x1 * S.from_int(-1), x0)),)
    assert [E.rank(i) for i in (0, 1, 2)] == [1, 2, 1]


def test_universal_aomoto_needs_zero_differentials():
    with pytest.raises(ValidationError):
        universal_aomoto(torus_with_acyclic_module())


def test_universal_aomoto_on_quotient():
    P = heis_pair()
    assert check_dgla(P.lie) == []
    assert check_pair(P) == []
    E = universal_aomoto(P)
    # d1 . d0 = x0*x1, which only dies modulo the cone relation
    assert E.ring.has_quotient()
    x0, x1 = (E.ring.var(0), E.ring.var(1))
    assert E.diff(0) == ((x0,),)
    assert E.diff(1) == ((x1,),)


def test_resonance_torus_frozen_values():
    P = exterior_pair(2)
    S = resonance_ideal(P, 0, 1).ctx
    x0, x1 = S.gens()
    want = {
        (1, 1): S.ideal([x0 * x0, x0 * x1, x1 * x1]),
        (1, 2): S.ideal([x0, x1]),
        (0, 1): S.ideal([x0, x1]),
        (2, 1): S.ideal([x0, x1]),
    }
    for (i, k), J in want.items():
        assert resonance_ideal(P, i, k).equals(J), (i, k)
    assert resonance_ideal(P, 1, 3).is_unit()
    assert resonance_ideal(P, 0, 2).is_unit()


def test_resonance_monotone_in_k():
    P = exterior_pair(2)
    a = resonance_ideal(P, 1, 1)
    b = resonance_ideal(P, 1, 2)
    assert b.contains_ideal(a)
    assert not a.contains_ideal(b)


def test_resonance_contains_cone_relations():
    P = heis_pair()
    R = resonance_ideal(P, 0, 1)
    S = R.ctx
    assert not S.has_quotient()
    x0, x1 = S.gens()
    assert R.contains(x0 * x1 * S.from_int(2))
    assert R.equals(S.ideal([x0]))


def test_resonance_computes_cohomology_first():
    P = exterior_pair(2)
    Q = torus_with_acyclic_module()
    for i in (0, 1, 2):
        for k in (1, 2):
            assert resonance_ideal(Q, i, k).equals(resonance_ideal(P, i, k))


def test_pointwise_at_zero_is_betti():
    P = exterior_pair(2)
    assert pointwise_resonance(P, (0, 0), 0) == 1
    assert pointwise_resonance(P, (0, 0), 1) == 2
    assert pointwise_resonance(P, (0, 0), 2) == 1


def test_pointwise_torus_vanishing():
    P = exterior_pair(2)
    for i in (0, 1, 2):
        assert pointwise_resonance(P, (ONE, F.zero), i) == 0
        assert pointwise_resonance(P, (Fraction(2), Fraction(-3)), i) == 0


def test_pointwise_checks_cone():
    P = heis_pair()
    assert pointwise_resonance(P, (ONE, F.zero), 0) == 0
    with pytest.raises(ValidationError):
        pointwise_resonance(P, (ONE, ONE), 0)
    with pytest.raises(ValidationError):
        pointwise_resonance(P, (ONE,), 0)


def test_pointwise_consistency_with_ideal():
    P = exterior_pair(2)
    R = resonance_ideal(P, 1, 1)
    for eta in [(0, 0), (1, 0), (0, 1), (2, 3), (-1, 5)]:
        pt = tuple(Fraction(x) for x in eta)
        vanishes = all(F.is_zero(g.evaluate(pt)) for g in R.gens)
        assert vanishes == (pointwise_resonance(P, pt, 1) >= 1)


def three_step_pair():
    """Abelian pair whose C^0 is bigger than H^0: u1, u2 die into C^1."""
    Z = F.zero
    T = exterior_pair(2)
    gvs = GradedVectorSpace(0, 2, (3, 4, 1))
    # degree-1 basis: (e1, e2, v1, v2); d(u1) = v1, d(u2) = v2
    d = (
        ((Z, Z, Z), (Z, Z, Z), (Z, ONE, Z), (Z, Z, ONE)),
        ((Z, Z, Z, Z),),
    )
    C = Dgla(F, gvs, d, {})
    m = T.m_gvs
    action = {}
    for (i, a, j, b), vec in T.action.entries.items():
        if i == 1:
            action[(i, a, j, b)] = vec     # e1, e2 act as before
        elif i == 0:
            action[(0, 0, j, b)] = vec     # unit keeps acting as identity
    P = DglaPair(C, m, T.m_d, action)
    assert check_dgla(C) == []
    assert check_pair(P) == []
    return P


def identity_aug(g_dim, n0):
    rows = [[ONE if c == r else F.zero for c in range(n0)]
            for r in range(g_dim)]
    return Augmentation(F, g_dim, rows, {})


def test_augmented_adds_free_variables():
    P = three_step_pair()
    aug = identity_aug(3, 3)
    R = resonance_ideal(P, 1, 1)
    Rg = augmented_resonance(P, aug, 1, 1)
    assert Rg.ctx.names == ("x0", "x1", "y0", "y1")
    assert len(Rg.gens) == len(R.gens)
    assert krull_dimension(Rg) == krull_dimension(R) + 2


def test_augmented_no_new_variables():
    P = three_step_pair()
    aug = identity_aug(1, 3)
    R = augmented_resonance(P, aug, 1, 1)
    assert R.ctx.names == ("x0", "x1")
    assert R.equals(resonance_ideal(P, 1, 1))


def test_augmented_rejects_non_surjective():
    P = three_step_pair()
    rows = [[ONE, F.zero, F.zero], [Fraction(2), F.zero, F.zero]]
    with pytest.raises(ValidationError, match="surjective"):
        augmented_resonance(P, Augmentation(F, 2, rows, {}), 1, 1)


def test_augmented_rejects_non_injective_on_h0():
    P = three_step_pair()
    # kills u0, the only degree-0 cohomology class
    rows = [[F.zero, ONE, F.zero], [F.zero, F.zero, ONE]]
    with pytest.raises(ValidationError, match="injective"):
        augmented_resonance(P, Augmentation(F, 2, rows, {}), 1, 1)


def test_augmented_rejects_non_lie_map():
    # heisenberg Lie algebra concentrated in degree 0, trivial module
    Z = F.zero
    gvs = GradedVectorSpace(0, 0, (3,))
    bracket = {(0, 0, 0, 1): (Z, Z, ONE)}
    C = Dgla(F, gvs, (), bracket)
    m = GradedVectorSpace(0, 0, (1,))
    P = DglaPair(C, m, (), {(0, 0, 0, 0): (ONE,)})
    aug = identity_aug(3, 3)  # abelian target: cannot respect [u0,u1]=u2
    with pytest.raises(AxiomError, match="bracket"):
        augmented_resonance(P, aug, 0, 1)


def test_augmentation_json():
    obj = {
        "g_dim": 2,
        "eps0": [[1, 0], [0, "1/2"]],
        "g_bracket": [{"a": 0, "b": 1, "out": [0, 0]}],
    }
    aug = Augmentation.from_json(F, obj)
    assert aug.g_dim == 2
    assert aug.eps0[1][1] == HALF
    assert aug.bracket_vec(1, 0) == (F.zero, F.zero)
    with pytest.raises(ValidationError):
        Augmentation.from_json(F, {"g_dim": 1, "eps0": [[1]]})
    with pytest.raises(ValidationError):
        Augmentation.from_json(F, {"g_dim": 1, "eps0": [[1]],
                                   "g_bracket": [{"a": 0}]})
    with pytest.raises(ValidationError):
        Augmentation.from_json(F, "nope")
