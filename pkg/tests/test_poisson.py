import itertools
import random

import pytest

from hamlie.gfield import GF
from hamlie.divpow import Poly, algebra_dimension
from hamlie.sforms import builtin_form, gram_inverse
from hamlie.poisson import (
    AlgebraSpec,
    LieAlg,
    build_algebra,
    derived_rows,
    hamiltonian_field,
    poisson,
    subalgebra,
)

K2 = GF(1)
K4 = GF(2)


def spec(h, form, K=K2, variant="P"):
    return AlgebraSpec(tuple(h), form, K, variant)


def heights_up_to(total):
    for m1 in range(1, total - 1):
        for m2 in range(1, total - m1):
            for m3 in range(1, total - m1 - m2 + 1):
                yield (m1, m2, m3)


def valid_forms(h):
    for tag in ("omega1", "omega2", "omega3", "omega4"):
        try:
            builtin_form(tag, K2, h)
        except ValueError:
            continue
        yield tag


def test_bracket_is_alternating_in_char2():
    L = build_algebra(spec((1, 1, 1), "omega4"))
    for v in itertools.product(range(2), repeat=L.dim):
        if any(v):
            assert not any(L.bracket_vec(v, v))


@pytest.mark.parametrize("h,tag,K", [
    ((1, 1, 1), "omega1", K2),
    ((2, 1, 1), "omega4", K2),
    ((1, 2, 1), "omega1", K4),
    ((1, 1, 1), "omega3", K4),
])
def test_jacobi_on_all_basis_triples(h, tag, K):
    L = build_algebra(spec(h, tag, K))
    d = L.dim
    units = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    for a in range(d):
        for b in range(a + 1, d):
            for c in range(b + 1, d):
                x = L.bracket_vec(L.bracket_vec(units[a], units[b]), units[c])
                y = L.bracket_vec(L.bracket_vec(units[b], units[c]), units[a])
                z = L.bracket_vec(L.bracket_vec(units[c], units[a]), units[b])
                assert not any(p ^ q ^ r for p, q, r in zip(x, y, z))


def test_dimension_formula_sweep():
    for h in heights_up_to(6):
        for tag in valid_forms(h):
            L = build_algebra(spec(h, tag))
            assert L.dim == (1 << sum(h)) - 1 == algebra_dimension(h) - 1


def test_ptilde_adds_three_top_powers():
    L = build_algebra(spec((2, 1, 1), "omega1", K2, "Ptilde"))
    assert L.dim == 15 + 3
    tops = [b for b in L.basis if any(a == 1 << m for a, m in zip(b, (2, 1, 1)))]
    assert len(tops) == 3


@pytest.mark.parametrize("h,expect", [((1, 1, 1), 6), ((2, 1, 1), 14)])
def test_derived_subalgebra_of_omega1(h, expect):
    for K in (K2, K4):
        L = build_algebra(spec(h, "omega1", K, "P1"))
        assert L.dim == expect == (1 << (h[0] + h[1] + 1)) - 2


def test_omega4_is_perfect():
    for h in ((1, 1, 1), (2, 1, 1)):
        P = build_algebra(spec(h, "omega4"))
        P1 = build_algebra(spec(h, "omega4", K2, "P1"))
        assert P1.dim == P.dim


def test_omega4_brackets_with_variables():
    # adjoint action of x1, x2, x3 on functions, heights (1,1,1):
    # {x1, f} = d f/dx2, {x2, f} = df/dx1 + xbar1 x3 df/dx3,
    # {x3, f} = df/dx3 + xbar1 x3 df/dx2
    h = (1, 1, 1)
    w = builtin_form("omega4", K2, h)
    wbar = gram_inverse(w)
    x1 = Poly.variable(K2, h, 1)
    x2 = Poly.variable(K2, h, 2)
    x3 = Poly.variable(K2, h, 3)
    x1x3 = x1 * x3
    for f in (x1, x2, x3, x1 * x2, x1x3, x1 * x2 * x3):
        assert poisson(x1, f, wbar) == f.partial(2).drop_constant()
        expect2 = (f.partial(1) + x1x3 * f.partial(3)).drop_constant()
        assert poisson(x2, f, wbar) == expect2
        expect3 = (f.partial(3) + x1x3 * f.partial(2)).drop_constant()
        assert poisson(x3, f, wbar) == expect3


def test_hamiltonian_field_matches_poisson():
    h = (2, 1, 1)
    wbar = gram_inverse(builtin_form("omega1", K2, h))
    f = Poly.monomial(K2, h, (1, 1, 0))
    g = Poly.monomial(K2, h, (2, 0, 1))
    D = hamiltonian_field(f, wbar)
    assert D(g).drop_constant() == poisson(f, g, wbar)


def test_structure_constants_symmetry_and_degrees():
    L = build_algebra(spec((2, 1, 1), "omega3"))
    for (a, b), v in L.sc.items():
        assert a < b
        assert v == L.bracket_basis(b, a)
    # Lie degree = monomial degree - 2
    for lab, deg in zip(L.basis, L.degrees):
        assert deg == sum(lab) - 2


def test_subalgebra_rejects_non_closed_spans():
    L = build_algebra(spec((1, 1, 1), "omega1"))
    # {x1, x1x2x3} = x1x3 falls outside the span of x1 and x1x2x3
    rows = [[0] * L.dim for _ in range(2)]
    rows[0][L.basis.index((1, 0, 0))] = 1
    rows[1][L.basis.index((1, 1, 1))] = 1
    with pytest.raises(ValueError):
        subalgebra(L, rows)


def test_derived_rows_span_brackets():
    L = build_algebra(spec((1, 1, 1), "omega1"))
    rows = derived_rows(L)
    assert len(rows) == 6


def test_custom_form_spec_validation():
    w = builtin_form("omega1", K2, (1, 1, 1))
    L = build_algebra(spec((1, 1, 1), w))
    M = build_algebra(spec((1, 1, 1), "omega1"))
    assert L.sc == M.sc
    with pytest.raises(ValueError):
        AlgebraSpec((1, 1, 1), "omega7", K2, "P")
    with pytest.raises(ValueError):
        AlgebraSpec((1, 1, 1), "omega1", K2, "Q")


def test_algebra_json_round_trip():
    L = build_algebra(spec((1, 2, 1), "omega1", K4, "P1"))
    M = LieAlg.from_json_dict(L.to_json_dict())
    assert M.basis == L.basis
    assert M.sc == L.sc
    assert M.degrees == L.degrees
    assert M.field == L.field


def test_bracket_vec_random_bilinearity():
    rng = random.Random(0)
    L = build_algebra(spec((2, 3, 1), "omega2", K4))
    d = L.dim
    for _ in range(20):
        u = [rng.randrange(4) for _ in range(d)]
        v = [rng.randrange(4) for _ in range(d)]
        w = [x ^ y for x, y in zip(u, v)]
        lhs = L.bracket_vec(w, u)
        rhs = [x ^ y for x, y in zip(L.bracket_vec(u, u), L.bracket_vec(v, u))]
        assert lhs == rhs
