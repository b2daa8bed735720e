import random

import pytest

from hamlie.gfield import GF
from hamlie.linalg import mat_inverse
from hamlie.poisson import AlgebraSpec, build_algebra
from hamlie import lstruct

K2 = GF(1)
K4 = GF(2)


def alg(h, tag, K=K2, variant="P"):
    return build_algebra(AlgebraSpec(tuple(h), tag, K, variant))


def unit(d, i):
    v = [0] * d
    v[i] = 1
    return v


def xbar_vec(L):
    xbar = tuple((1 << m) - 1 for m in L.heights)
    return unit(L.dim, L.basis.index(xbar))


def test_ad_rank_and_witness_rank():
    L = alg((1, 1, 2), "omega1")
    v = xbar_vec(L)
    full = lstruct.ad_rank(L, v)
    assert full == 4
    d = L.dim
    witnesses = [unit(d, i) for i in range(4)]
    assert lstruct.witness_rank(L, v, witnesses) <= full


def test_derived_series_values():
    dims, bases = lstruct.derived_series(alg((1, 1, 1), "omega1"))
    assert dims == [7, 6, 6]
    assert len(bases[1]) == 6
    dims, _ = lstruct.derived_series(alg((1, 1, 1), "omega4"))
    assert dims == [7, 7]


def test_center_is_trivial_for_these_algebras():
    for tag in ("omega1", "omega3", "omega4"):
        assert lstruct.center(alg((1, 1, 1), tag)) == []


def test_center_of_abelian_quotient_demo():
    # the derived subalgebra of omega1 at (1,1,1) contains the abelian
    # ideal spanned by x1, x2, x3; its closure is proper
    L = alg((1, 1, 1), "omega1", K2, "P1")
    v = [0] * L.dim
    v[L.basis.index((1, 0, 0))] = 1
    ideal = lstruct.ideal_closure(L, v)
    assert 0 < len(ideal) < L.dim


def test_simplicity_facts_cross_checked():
    simple_cases = [
        ((1, 1, 2), "omega1", "P"),
        ((2, 1, 1), "omega3", "P"),
        ((1, 1, 1), "omega4", "P"),
        ((2, 1, 1), "omega1", "P1"),
    ]
    for h, tag, var in simple_cases:
        L = alg(h, tag, K2, var)
        assert lstruct.is_simple(L, "auto") is True
    not_simple = [
        ((1, 1, 1), "omega3", "P"),
        ((2, 1, 1), "omega1", "P"),
        ((1, 2, 1), "omega1", "P"),
        ((1, 1, 1), "omega1", "P1"),
    ]
    for h, tag, var in not_simple:
        L = alg(h, tag, K2, var)
        assert lstruct.is_simple(L, "auto") is False


def test_norton_certifier_on_dim63():
    L = alg((1, 2, 3), "omega2")
    assert L.dim == 63
    assert lstruct.is_simple(L, "norton", seed=0) is True


def test_norton_agrees_with_exhaustive_over_gf4():
    L = alg((1, 1, 1), "omega4", K4)
    assert lstruct.is_simple(L, "norton", seed=1) is True
    L = alg((1, 1, 1), "omega3", K4)
    assert lstruct.is_simple(L, "norton", seed=1) is False


MIN_RANK_GOLDEN = [
    ((2, 1, 1), "omega1", 3),
    ((1, 2, 1), "omega1", 3),
    ((1, 1, 2), "omega1", 4),
    ((2, 1, 1), "omega3", 4),
    ((1, 2, 1), "omega3", 4),
    ((1, 1, 2), "omega3", 4),
    ((2, 1, 1), "omega4", 3),
    ((1, 2, 1), "omega4", 3),
]


@pytest.mark.parametrize("h,tag,R", MIN_RANK_GOLDEN)
def test_min_rank_exhaustive_golden(h, tag, R):
    L = alg(h, tag)
    res = lstruct.min_ad_rank(L, "exhaustive")
    assert res.R == R and res.exact
    assert list(res.argmin) == [tuple(xbar_vec(L))]


def test_min_rank_all_ones_heights_argmin_not_unique():
    L = alg((1, 1, 1), "omega1")
    res = lstruct.min_ad_rank(L, "exhaustive")
    assert res.R == 3 and len(res.argmin) == 9
    assert tuple(xbar_vec(L)) in res.argmin
    L = alg((1, 1, 1), "omega4")
    res = lstruct.min_ad_rank(L, "exhaustive")
    assert res.R == 3 and len(res.argmin) == 3


def test_min_rank_homogeneous_matches_exhaustive_value():
    for h, tag, R in MIN_RANK_GOLDEN[:3]:
        L = alg(h, tag)
        res = lstruct.min_ad_rank(L, "homogeneous")
        assert res.R == R


def test_min_rank_sampled_is_upper_bound():
    L = alg((2, 1, 1), "omega1")
    res = lstruct.min_ad_rank(L, "sampled", seed=5, samples=200)
    assert res.R >= 3 and not res.exact


def test_min_rank_mode_guards():
    L = alg((1, 2, 3), "omega2")  # dim 63
    with pytest.raises(ValueError):
        lstruct.min_ad_rank(L, "exhaustive")
    with pytest.raises(ValueError):
        lstruct.min_ad_rank(L, "bogus")


def test_grading_and_filtration():
    L = alg((1, 1, 1), "omega1")
    assert lstruct.grading_profile(L) == {-1: 3, 0: 3, 1: 1}
    filt = lstruct.filtration(L)
    assert filt[(1, 1, 1)] == 1 and filt[(1, 0, 0)] == -1


def test_graded_of_omega4_is_omega1():
    for h in ((1, 1, 1), (2, 1, 1)):
        g = lstruct.graded_algebra(alg(h, "omega4"))
        w1 = alg(h, "omega1")
        assert g.basis == w1.basis and g.sc == w1.sc


def test_normalizer_of_top_line():
    for tag in ("omega1", "omega3"):
        L = alg((2, 1, 1), tag)
        nb = lstruct.normalizer_of_span(L, lstruct.top_line(L))
        assert len(nb) == 12


def test_fingerprints_distinguish_forms_at_211():
    fps = {tag: lstruct.fingerprint(alg((2, 1, 1), tag)) for tag in
           ("omega1", "omega3", "omega4")}
    assert lstruct.fingerprints_distinct(fps["omega1"], fps["omega3"])
    assert lstruct.fingerprints_distinct(fps["omega1"], fps["omega4"])
    assert lstruct.fingerprints_distinct(fps["omega3"], fps["omega4"])


def test_fingerprint_core_is_basis_independent():
    rng = random.Random(11)
    L = alg((1, 1, 1), "omega3")
    d = L.dim
    while True:
        P = [[rng.randrange(2) for _ in range(d)] for _ in range(d)]
        if mat_inverse(K2, P) is not None:
            break
    M = lstruct.transform_algebra(L, P)
    fa, fb = lstruct.fingerprint(L), lstruct.fingerprint(M)
    assert fa.core() == fb.core()
    assert not lstruct.fingerprints_distinct(fa, fb)


def test_exhaustive_simple_guards():
    L = alg((1, 2, 3), "omega2")
    with pytest.raises(ValueError):
        lstruct.is_simple(L, "exhaustive")
    with pytest.raises(ValueError):
        lstruct.is_simple(L, "bogus")
