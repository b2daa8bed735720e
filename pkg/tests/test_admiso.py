import pytest

from hamlie.gfield import GF
from hamlie.divpow import Poly, divided_power, iter_monomials
from hamlie.sforms import builtin_form, differential, solve_exact
from hamlie.admiso import (
    AddSubGen,
    Admissible,
    LinearGen,
    check_admissible,
    elimination_automorphism,
    normalization_scaling,
    omega4_scaling,
    scaling_automorphism,
    swap_automorphism,
)

K2 = GF(1)
K4 = GF(2)


def general_family(K, h, c13, c23):
    # dx1dx2 + (dx3)^(2) + c13 xbar1 x3 dx1dx3 + c23 xbar2 x3 dx2dx3
    from hamlie.sforms import Form2
    z = Poly.zero(K, h)
    one = Poly.one(K, h)
    a = Poly.monomial(K, h, ((1 << h[0]) - 1, 0, 1))
    b = Poly.monomial(K, h, (0, (1 << h[1]) - 1, 1))
    return Form2((z, z, one), (one, a.scale(c13), b.scale(c23)))


@pytest.mark.parametrize("h", [(1, 1, 1), (2, 1, 1), (1, 2, 1)])
def test_apply_poly_is_multiplicative(h):
    sigma = elimination_automorphism(K2, h, 1, 1)
    monos = list(iter_monomials(h, min_degree=1))
    for a in monos[:8]:
        for b in monos[:8]:
            f = Poly.monomial(K2, h, a)
            g = Poly.monomial(K2, h, b)
            assert sigma.apply_poly(f * g) == sigma.apply_poly(f) * sigma.apply_poly(g)


def test_apply_poly_commutes_with_divided_powers():
    h = (2, 2, 1)
    sigma = Admissible.from_generators(K2, h, [AddSubGen(1, 2, 0, 1)])
    x1 = Poly.variable(K2, h, 1)
    x2 = Poly.variable(K2, h, 2)
    for f in (x1, x2, x1 + x2):
        for r in (2, 3):
            assert sigma.apply_poly(divided_power(f, r)) == \
                divided_power(sigma.apply_poly(f), r)


def test_apply_commutes_with_d():
    h = (2, 1, 1)
    sigma = elimination_automorphism(K4, h, 2, 3)
    monos = list(iter_monomials(h, min_degree=1))
    for a in monos:
        f = Poly.monomial(K4, h, a)
        lhs = sigma.apply_form1(differential(f))
        rhs = differential(sigma.apply_poly(f))
        assert (lhs + rhs).is_zero()


def test_compose_and_invert():
    h = (1, 2, 1)
    s1 = Admissible.from_generators(K2, h, [AddSubGen(1, 2, 1, 1)])
    s2 = swap_automorphism(K2, h)
    comp = s2.compose(s1)
    x1 = Poly.variable(K2, h, 1)
    assert comp.apply_poly(x1) == s2.apply_poly(s1.apply_poly(x1))
    inv = s1.invert()
    for i in (1, 2, 3):
        xi = Poly.variable(K2, h, i)
        assert inv.apply_poly(s1.apply_poly(xi)) == xi


def test_admissibility_rejects_height_violations():
    # x1 (height 2) may not absorb x2 (height 1) without a lifting exponent
    ok, reason = check_admissible(AddSubGen(1, 2, 0, 1), K2, (2, 1, 1))
    assert not ok and "height" in reason
    # with t raising the degree appropriately it becomes admissible
    ok, _ = check_admissible(AddSubGen(1, 2, 1, 1), K2, (1, 2, 1))
    assert ok
    with pytest.raises(ValueError):
        Admissible.from_generators(K2, (2, 1, 1), [AddSubGen(1, 2, 0, 1)])


@pytest.mark.parametrize("h", [(1, 1, 1), (2, 1, 1), (1, 2, 1)])
@pytest.mark.parametrize("K", [K2, K4])
def test_elimination_kills_one_coefficient_up_to_exact(h, K):
    for c13 in range(1, K.order):
        for c23 in range(1, K.order):
            w = general_family(K, h, c13, c23)
            sigma = elimination_automorphism(K, h, c13, c23)
            img = sigma.apply_form2(w)
            if h[0] <= h[1]:
                target = general_family(K, h, c13, 0)
            else:
                target = general_family(K, h, 0, c23)
            residual = img + target
            assert solve_exact(residual) is not None


def test_elimination_requires_nonzero_coefficients():
    with pytest.raises(ValueError):
        elimination_automorphism(K2, (1, 1, 1), 0, 1)
    with pytest.raises(ValueError):
        elimination_automorphism(K2, (1, 1, 1), 1, 0)


def test_swap_carries_omega1_across_heights():
    h = (2, 1, 1)
    sigma = swap_automorphism(K2, h)
    assert sigma.target == (1, 2, 1)
    img = sigma.apply_form2(builtin_form("omega1", K2, h))
    assert (img + builtin_form("omega1", K2, sigma.target)).is_zero()


@pytest.mark.parametrize("a", [1, 2, 3])
def test_omega4_scaling_is_exact(a):
    h = (2, 1, 1)
    w = builtin_form("omega4", K4, h)
    img = omega4_scaling(K4, h, a).apply_form2(w)
    assert (img + w.scale(a)).is_zero()


@pytest.mark.parametrize("c", [2, 3])
def test_normalization_scaling_reaches_omega4(c):
    h = (2, 1, 1)
    w = general_family(K4, h, c, 0)
    img = normalization_scaling(K4, h, c).apply_form2(w)
    assert (img + builtin_form("omega4", K4, h)).is_zero()


def test_scaling_automorphism_on_monomials():
    h = (1, 1, 1)
    sigma = scaling_automorphism(K4, h, (2, 3, 1))
    f = Poly.monomial(K4, h, (1, 1, 0))
    assert sigma.apply_poly(f) == f.scale(K4.mul(2, 3))


def test_json_round_trip():
    h = (1, 2, 1)
    sigma = swap_automorphism(K4, h).compose(
        Admissible.from_generators(K4, h, [AddSubGen(1, 2, 1, 3)]))
    back = Admissible.from_json_dict(sigma.to_json_dict())
    for i in (1, 2, 3):
        xi = Poly.variable(K4, h, i)
        assert back.apply_poly(xi) == sigma.apply_poly(xi)
