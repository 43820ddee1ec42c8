"""Tests for the Cremona involution and the Moebius calculus."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from autcert.cremona import (
    Failure,
    MoebiusMap,
    QuadricForm,
    RationalMapP3,
    conjugate_translation,
    contraction_check,
    coordinate_swap,
    cremona_map,
    cross_ratio,
    cross_ratio_equivalent,
    cross_ratio_orbit,
    find_swap_specializations,
    identity_map,
    involution_cofactor,
    preserves_quadric,
    reciprocal_display,
    scaling,
    translate,
    verify_pij_swap,
)
from autcert.scalars import (
    INFINITY,
    MultiPoly,
    ProjValue,
    RatFunc,
    matrix_rank_det,
    parse_poly,
)

COFACTOR = parse_poly("a1*a2*a3*x1*x2*x3*x4")


def fin(v) -> ProjValue:
    return ProjValue.finite(v if isinstance(v, RatFunc) else RatFunc(v))


T = RatFunc.var("t")
S = RatFunc.var("s")


# -- the involution, generically over the parameters -----------------------------------


def test_preserves_quadric_cofactor():
    got = preserves_quadric(cremona_map(), QuadricForm.standard().poly)
    assert got == COFACTOR


def test_involution_cofactor_is_square_of_quadric_cofactor():
    got = involution_cofactor(cremona_map())
    assert got == COFACTOR * COFACTOR


def test_identity_involution():
    assert involution_cofactor(identity_map()) == MultiPoly.const(1)


def test_contraction_of_all_four_planes():
    tau = cremona_map()
    for i in range(1, 5):
        point = contraction_check(tau, i)
        assert point == tuple(
            Fraction(int(k == i - 1)) for k in range(4)
        )
    with pytest.raises(ValueError):
        contraction_check(tau, 5)


def test_coordinate_swap_breaks_the_quadric():
    res = preserves_quadric(coordinate_swap(1, 2), QuadricForm.standard().poly)
    assert isinstance(res, Failure)
    assert res.kind == "quadric-not-preserved"
    assert res.witness


def test_swap_does_not_contract():
    res = contraction_check(coordinate_swap(1, 2), 1)
    assert isinstance(res, Failure)
    assert res.kind == "plane-not-contracted"


def test_quadric_matrix_agrees_with_polynomial():
    q = QuadricForm.standard()
    xs = [MultiPoly.var(f"x{k}") for k in range(1, 5)]
    acc = MultiPoly.const(0)
    for r in range(4):
        for c in range(4):
            acc = acc + xs[r] * q.matrix()[r][c] * xs[c]
    assert acc == q.poly


def test_quadric_determinant_is_nonzero_polynomial():
    rank, det = matrix_rank_det([list(r) for r in QuadricForm.standard().matrix()])
    assert rank == 4
    assert det == parse_poly(
        "1/16*a1^2 - 1/8*a1*a2 - 1/8*a1*a3 + 1/16*a2^2 - 1/8*a2*a3 + 1/16*a3^2"
    )


def test_cofactor_multiplicative_under_composition():
    # q(f.g) = (c_f composed with g) * c_g * q, checked on tau with itself
    tau = cremona_map()
    q = QuadricForm.standard().poly
    c_tau = preserves_quadric(tau, q)
    raw = q.substitute(dict(zip(("x1", "x2", "x3", "x4"), tau.substituted(tau))))
    lifted = c_tau.substitute(dict(zip(("x1", "x2", "x3", "x4"), tau.components)))
    assert raw == lifted * c_tau * q


def test_map_validation():
    x = [MultiPoly.var(f"x{k}") for k in range(1, 5)]
    with pytest.raises(ValueError, match="share one degree"):
        RationalMapP3((x[0], x[1], x[2], x[3] * x[3]))
    with pytest.raises(ValueError, match="polynomial factor"):
        RationalMapP3((x[0] * x[0], x[0] * x[1], x[0] * x[2], x[0] * x[3]))
    with pytest.raises(ValueError, match="homogeneous"):
        RationalMapP3((x[0] + MultiPoly.const(1), x[1], x[2], x[3]))


def test_reciprocal_display_mentions_all_coordinates():
    text = reciprocal_display()
    assert all(f"x{k}" in text for k in range(1, 5))


# -- specialization and ruling swap -------------------------------------------------------


def test_swap_at_9_2_2():
    report = verify_pij_swap((9, 2, 2))
    assert report.passed
    assert report.swaps_checked == 12
    assert not report.used_extension
    assert report.discriminants == ("9/4", "9/4", "9/4", "9")
    assert len(report.family_a) == 4 and len(report.family_b) == 4


def test_swap_at_permutations_of_9_2_2():
    for alpha in ((2, 9, 2), (2, 2, 9)):
        assert verify_pij_swap(alpha).passed


def test_swap_irrational_without_extension():
    report = verify_pij_swap((1, 1, 1))
    assert not report.passed
    assert all(f["kind"] == "irrational-ruling" for f in report.failures)


def test_swap_with_quadratic_extension():
    report = verify_pij_swap((1, 1, 1), allow_quadratic_extension=True)
    assert report.passed
    assert report.used_extension
    assert report.extension_square == "-3"
    assert report.swaps_checked == 12


def test_swap_rejects_degenerate_parameters():
    with pytest.raises(ValueError, match="nonzero"):
        verify_pij_swap((0, 1, 1))
    # a1 = 4, a2 = a3 = 1 makes the discriminant zero: degenerate quadric
    report = verify_pij_swap((4, 1, 1))
    assert not report.passed
    assert report.failures[0]["kind"] == "degenerate-quadric"


def test_find_swap_specializations_deterministic():
    found = find_swap_specializations(seed=0, want=3)
    assert found == find_swap_specializations(seed=0, want=3)
    assert len(found) == 3
    assert len(set(found)) == 3
    for alpha in found:
        report = verify_pij_swap(alpha)
        assert report.passed and not report.used_extension


# -- Moebius maps ---------------------------------------------------------------------------


def test_moebius_normalization_and_equality():
    double = MoebiusMap(RatFunc(2), RatFunc(0), RatFunc(0), RatFunc(2))
    assert double == MoebiusMap(RatFunc(1), RatFunc(0), RatFunc(0), RatFunc(1))
    assert scaling(RatFunc(3)).a == RatFunc(1)


def test_moebius_apply():
    f = translate(RatFunc(2))
    assert f.apply(fin(1)) == fin(3)
    assert f.apply(INFINITY) == INFINITY
    g = MoebiusMap(RatFunc(0), RatFunc(1), RatFunc(1), RatFunc(0))  # z -> 1/z
    assert g.apply(fin(2)) == fin(Fraction(1, 2))
    assert g.apply(fin(0)) == INFINITY
    assert g.apply(INFINITY) == fin(0)


def test_moebius_compose_and_inverse():
    f = MoebiusMap(T, RatFunc(1), RatFunc(0), RatFunc(1))
    g = f.compose(f.inverse())
    assert g == MoebiusMap(RatFunc(1), RatFunc(0), RatFunc(0), RatFunc(1))
    with pytest.raises(ValueError, match="invertible"):
        MoebiusMap(RatFunc(1), RatFunc(1), RatFunc(1), RatFunc(1))


def test_conjugate_translation_formula():
    a = RatFunc.var("a")
    for n in range(0, 4):
        f = conjugate_translation(n)
        assert f == translate(a / T ** (2 * n))
        assert f.apply(INFINITY) == INFINITY
        assert f.has_equal_diagonal()
    with pytest.raises(ValueError):
        conjugate_translation(-1)


# -- cross-ratios ------------------------------------------------------------------------------


def test_cross_ratio_normalization():
    assert cross_ratio((fin(1), fin(T), INFINITY, fin(0))) == T
    assert cross_ratio((fin(1), fin(5), INFINITY, fin(0))) == RatFunc(5)


def test_cross_ratio_rejects_repeats():
    with pytest.raises(ValueError, match="repeated"):
        cross_ratio((fin(1), fin(1), INFINITY, fin(0)))


def test_cross_ratio_orbit_size():
    orbit = cross_ratio_orbit(RatFunc(5))
    assert len(set(orbit)) == 6
    assert RatFunc(Fraction(1, 5)) in orbit
    assert RatFunc(Fraction(-4)) in orbit


def test_marked_quadruples_inequivalent_across_pencils():
    first = (fin(1), fin(T), INFINITY, fin(0))
    second = (fin(1), fin(S), INFINITY, fin(0))
    assert not cross_ratio_equivalent(first, second, ordered=True)
    assert not cross_ratio_equivalent(first, second, ordered=False)


def test_cross_ratio_equivalent_cases():
    base = (fin(1), fin(5), INFINITY, fin(0))
    # double transpositions preserve the ordered cross-ratio
    kleined = (fin(5), fin(1), fin(0), INFINITY)
    assert cross_ratio_equivalent(base, kleined, ordered=True)
    # a single transposition only matches up to the six-element orbit
    swapped = (fin(5), fin(1), INFINITY, fin(0))
    assert cross_ratio_equivalent(base, swapped, ordered=False)
    assert not cross_ratio_equivalent(base, swapped, ordered=True)


@given(st.permutations([0, 1, 2, 3]))
def test_cross_ratio_permutation_invariance_unordered(perm):
    base = (fin(1), fin(7), INFINITY, fin(0))
    shuffled = tuple(base[k] for k in perm)
    assert cross_ratio_equivalent(base, shuffled, ordered=False)


@given(
    st.fractions(min_value=2, max_value=50, max_denominator=7),
    st.fractions(min_value=-20, max_value=-1, max_denominator=7),
)
def test_cross_ratio_moebius_invariance(lam, shift):
    points = (fin(1), fin(lam), INFINITY, fin(0))
    f = translate(RatFunc(shift)).compose(scaling(RatFunc(3)))
    moved = tuple(f.apply(z) for z in points)
    assert cross_ratio(moved) == cross_ratio(points)
