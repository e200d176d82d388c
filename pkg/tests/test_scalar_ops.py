"""Conformal fields, ladders, spectrum generation, refutation."""

import random
from fractions import Fraction

import pytest

from speclab.polynomial import SpherePoly, ambient_laplacian_terms, normal_monomials
from speclab.scalar_ops import (
    BelowBoundError,
    NotEigenfunctionError,
    OnSpectrumError,
    T,
    U,
    bottom_eigenvalue,
    build_eigenspace,
    conformal_laplacian,
    eigenvalue_step,
    generate_spectrum,
    harmonic_dimension,
    is_eigenfunction,
    ladder_minus,
    ladder_plus,
    ladder_sums,
    laplacian,
    laplacian_via_conformal_fields,
    refute_candidate,
    scalar_eigenvalue,
    spectrum_level_of,
    verify_scalar_identities,
)
from speclab.surd import Quad

from test_polynomial import rational_sphere_points


# ---------------------------------------------------------------------------
# first-order operators
# ---------------------------------------------------------------------------


def test_T_of_own_coordinate():
    # T_i x_i = x_i^2 - 1 (its normal form is minus the sum of the others)
    for n in (2, 3):
        for i in range(n + 1):
            xi = SpherePoly.coordinate(n, i)
            want = xi * xi - SpherePoly.one(n)
            assert T(i, xi) == want


def test_T_kills_constants():
    assert T(1, SpherePoly.one(3)).is_zero


def test_T_cross_coordinate_with_curve_oracle():
    # T_1 x_2 = x_1 x_2 on S^2, cross-checked by differentiating along the
    # azimuthal circle through rational points (finite differences)
    import math

    n = 2
    got = T(1, SpherePoly.coordinate(n, 2))
    assert got == SpherePoly.monomial(n, (0, 1, 1))
    f = SpherePoly.coordinate(n, 2)
    for pt in rational_sphere_points(6, seed=9):
        x = [float(c) for c in pt]
        ci = x[1]
        s2 = 1.0 - ci * ci
        if s2 < 1e-6:
            continue
        s = math.sqrt(s2)
        # unit vector along the latitude direction of coordinate 1
        u = [0.0, 1.0, 0.0]
        w = [(x[k] - ci * u[k]) / s for k in range(3)]
        h = 1e-6

        def along(t):
            rho = math.acos(ci) + t
            q = [math.cos(rho) * u[k] + math.sin(rho) * w[k] for k in range(3)]
            return float(f.eval_exact([Fraction(v).limit_denominator(10**12) for v in q]))

        deriv = (along(h) - along(-h)) / (2 * h)
        want = s * deriv
        have = float(got.eval_exact(pt))
        assert abs(want - have) < 1e-5


def test_U_examples():
    for n in (2, 3, 4):
        one = SpherePoly.one(n)
        for i in range(n + 1):
            assert U(i, one) == SpherePoly.coordinate(n, i) * Fraction(n, 2)
            xi = SpherePoly.coordinate(n, i)
            want = xi * xi * (Fraction(n, 2) + 1) - one
            assert U(i, xi) == want


def test_anticommutator_sum_vanishes():
    n = 3
    rng = random.Random(4)
    from test_polynomial import rand_poly

    for _ in range(5):
        p = rand_poly(rng, n, max_degree=3, terms=4)
        acc = SpherePoly.zero(n)
        for i in range(n + 1):
            xi = SpherePoly.coordinate(n, i)
            acc = acc + xi * U(i, p) + U(i, xi * p)
        assert acc.is_zero


# ---------------------------------------------------------------------------
# Laplacians
# ---------------------------------------------------------------------------


def test_laplacian_on_coordinates():
    for n in (2, 3, 4, 5):
        xi = SpherePoly.coordinate(n, 0)
        assert laplacian(xi) == xi * Fraction(n)
        assert laplacian(SpherePoly.one(n)).is_zero


def test_laplacian_level_two():
    n = 3
    p = SpherePoly.coordinate(n, 1) * SpherePoly.coordinate(n, 2)
    assert laplacian(p) == p * Fraction(8)


def test_two_routes_agree_small_sweep():
    for n in (2, 3):
        for e in normal_monomials(n, 4):
            p = SpherePoly(n, {e: Fraction(1)}, reduced=True)
            assert laplacian(p) == laplacian_via_conformal_fields(p)


def test_conformal_laplacian_examples():
    for n in (2, 3, 4):
        one = SpherePoly.one(n)
        assert conformal_laplacian(one) == one * bottom_eigenvalue(n)
        xi = SpherePoly.coordinate(n, 1)
        assert conformal_laplacian(xi) == xi * Fraction(n * (n + 2), 4)
    # flat case: zero curvature shift
    p = SpherePoly.monomial(2, (1, 1, 0))
    assert conformal_laplacian(p) == laplacian(p)


# ---------------------------------------------------------------------------
# eigenvalue steps and the lattice
# ---------------------------------------------------------------------------


def test_step_examples():
    assert eigenvalue_step(Fraction(3, 4), "+") == Fraction(15, 4)
    assert eigenvalue_step(Fraction(0), "-") == 0
    assert eigenvalue_step(Fraction(2), "+") == 6


def test_step_involution_in_quadratic_field():
    rng = random.Random(12)
    for _ in range(25):
        lam = Fraction(rng.randint(0, 400), rng.randint(1, 20))
        up = eigenvalue_step(lam, "+")
        down = eigenvalue_step(up, "-")
        assert down == lam  # up-then-down always returns
        dn = eigenvalue_step(lam, "-")
        # down-then-up returns on the plus branch whenever the square root
        # is at least 2 (true everywhere above the n=2 bottom window);
        # below that, lam is the minus-branch root of its descendant
        if 4 * lam + 1 >= 4:
            assert eigenvalue_step(dn, "+") == lam
        else:
            candidates = {eigenvalue_step(dn, "+"), eigenvalue_step(dn, "-")}
            assert any(c == lam for c in candidates)


def test_step_rejects_negative_discriminant_and_bad_direction():
    with pytest.raises(ValueError):
        eigenvalue_step(Fraction(-1), "+")
    with pytest.raises(ValueError):
        eigenvalue_step(Fraction(1), "up")


def test_quadratic_symmetry():
    # mu solves the lam-equation iff lam solves the mu-equation
    def quadr(mu, lam):
        return mu * mu - 2 * lam * mu - 2 * mu + lam * lam - 2 * lam

    for lam in (Fraction(3, 4), Fraction(2), Fraction(15, 4)):
        for direction in ("+", "-"):
            mu = eigenvalue_step(lam, direction)
            if isinstance(mu, Quad):
                continue
            assert quadr(mu, lam) == 0
            assert quadr(lam, mu) == 0


def test_generate_spectrum_examples():
    vals = [p.lam for p in generate_spectrum(3, 4)]
    assert vals == [Fraction(3, 4), Fraction(15, 4), Fraction(35, 4), Fraction(63, 4)]
    lap = [p.laplace_eigenvalue for p in generate_spectrum(2, 4)]
    assert lap == [0, 2, 6, 12]
    assert generate_spectrum(5, 1)[0].lam == Fraction(15, 4)


def test_spectrum_matches_closed_form_wide():
    for n in (2, 3, 4, 5, 6):
        for pair in generate_spectrum(n, 21):
            assert pair.lam == scalar_eigenvalue(n, pair.j)
            assert pair.laplace_eigenvalue == pair.j * (n - 1 + pair.j)


# ---------------------------------------------------------------------------
# ladders
# ---------------------------------------------------------------------------


def test_ladder_up_from_constant():
    n = 3
    one = SpherePoly.one(n)
    lam0 = bottom_eigenvalue(n)
    up = ladder_plus(0, one, lam0)
    assert up == SpherePoly.coordinate(n, 0) * Fraction(2)
    assert is_eigenfunction(up, eigenvalue_step(lam0, "+"))
    # dimension 2: the raising ladder on constants is the coordinate itself
    up2 = ladder_plus(1, SpherePoly.one(2), Fraction(0))
    assert up2 == SpherePoly.coordinate(2, 1)


def test_ladder_down_kills_constants():
    for n in (3, 4, 5):
        one = SpherePoly.one(n)
        for i in range(n + 1):
            assert ladder_minus(i, one, bottom_eigenvalue(n)).is_zero


def test_ladder_rejects_non_eigenfunction():
    p = SpherePoly.one(3) + SpherePoly.coordinate(3, 0)
    with pytest.raises(NotEigenfunctionError):
        ladder_plus(0, p, Fraction(3, 4))


def test_ladder_sums_examples():
    # bottom of S^3: nu = 2
    mp, pm = ladder_sums(SpherePoly.one(3), Fraction(3, 4))
    assert (mp, pm) == (Fraction(-8), Fraction(0))
    # S^2 at level 1: nu = 3, verified operatorially on x1
    mp, pm = ladder_sums(SpherePoly.coordinate(2, 1), Fraction(2))
    assert (mp, pm) == (Fraction(-10), Fraction(-1))
    # nu = n - 1 bottom case vanishes
    mp, pm = ladder_sums(SpherePoly.one(4), Fraction(2))
    assert pm == 0


def test_ladder_sum_factors_through_level_four():
    # acceptance grid: n in {2,3,4}, every basis member through level 4
    for n in (2, 3, 4):
        for j in range(5):
            lam = scalar_eigenvalue(n, j)
            nu = Fraction(n - 1 + 2 * j)
            want_mp = -Fraction(1, 2) * (nu + n - 1) * (nu + 2)
            want_pm = -Fraction(1, 2) * (nu - n + 1) * (nu - 2)
            for phi in build_eigenspace(n, j).funcs:
                mp, pm = ladder_sums(phi, lam)
                assert mp == want_mp and pm == want_pm
            assert (want_pm == 0) == (nu == n - 1)


# ---------------------------------------------------------------------------
# eigenspaces
# ---------------------------------------------------------------------------


def test_build_eigenspace_examples():
    pair = build_eigenspace(2, 1)
    assert len(pair.funcs) == 3
    want = {SpherePoly.coordinate(2, i) for i in range(3)}
    assert set(pair.funcs) == want
    assert len(build_eigenspace(3, 2).funcs) == 9
    assert build_eigenspace(4, 0).funcs == [SpherePoly.one(4)]


def test_nonvanishing_ladders_through_level_five():
    # sweep grid: n in {2, 3}, j <= 5
    for n in (2, 3):
        for j in range(6):
            lam = scalar_eigenvalue(n, j)
            for phi in build_eigenspace(n, j).funcs:
                assert any(
                    not ladder_plus(i, phi, lam, check=False).is_zero
                    for i in range(n + 1)
                )
                has_down = any(
                    not ladder_minus(i, phi, lam, check=False).is_zero
                    for i in range(n + 1)
                )
                assert has_down == (j > 0)


def test_coordinate_span_rank_identity():
    # span{x_i E_j, D x_i E_j} has rank dim E_{j-1} + dim E_{j+1}
    from speclab.linalg import rref

    for n, j in ((2, 1), (2, 2), (3, 1)):
        funcs = build_eigenspace(n, j).funcs
        vecs = []
        for phi in funcs:
            for i in range(n + 1):
                xphi = SpherePoly.coordinate(n, i) * phi
                vecs.append(xphi)
                vecs.append(conformal_laplacian(xphi))
        monos = normal_monomials(n, j + 1)
        index = {e: k for k, e in enumerate(monos)}
        rows = []
        for p in vecs:
            row = [Fraction(0)] * len(monos)
            for e, c in p.terms.items():
                row[index[e]] = c
            rows.append(row)
        rank = len(rref(rows))
        assert rank == harmonic_dimension(n, j - 1) + harmonic_dimension(n, j + 1)


def test_eigenfunctions_lift_to_harmonics():
    # every constructed eigenfunction is the restriction of one harmonic
    # homogeneous polynomial of its level
    from speclab.polynomial import harmonic_decompose

    for n in (2, 3):
        for j in range(4):
            for phi in build_eigenspace(n, j).funcs:
                d = harmonic_decompose(phi)
                assert d.degrees == [j]
                assert ambient_laplacian_terms(d.part(j)) == {}


# ---------------------------------------------------------------------------
# refutation
# ---------------------------------------------------------------------------


def test_refutation_examples():
    chain = refute_candidate(3, Fraction(2))
    assert chain.steps == [Fraction(0)]
    assert chain.violated_bound == Fraction(3, 4)

    chain = refute_candidate(2, Fraction(1))
    (step,) = chain.steps
    assert step == Quad(2, -1, 5)
    assert step < 0

    chain = refute_candidate(4, Fraction(3))
    (step,) = chain.steps
    assert step == Quad(4, -1, 13)
    assert step < 2


def test_refutation_guards():
    with pytest.raises(OnSpectrumError):
        refute_candidate(3, Fraction(15, 4))
    with pytest.raises(BelowBoundError):
        refute_candidate(3, Fraction(1, 9))
    assert spectrum_level_of(3, Fraction(15, 4)) == 1
    assert spectrum_level_of(2, Fraction(0)) == 0
    assert spectrum_level_of(3, Fraction(2)) is None


def test_refutation_random_candidates():
    rng = random.Random(99)
    for n in (2, 3, 4, 5):
        bound = bottom_eigenvalue(n)
        done = 0
        while done < 10:
            lam = Fraction(rng.randint(0, 600), rng.randint(1, 24))
            if lam < bound or spectrum_level_of(n, lam) is not None:
                continue
            gap = 0
            while scalar_eigenvalue(n, gap + 1) < lam:
                gap += 1
            chain = refute_candidate(n, lam)
            assert chain.steps[-1] < bound
            assert len(chain.steps) <= gap + 1
            done += 1


# ---------------------------------------------------------------------------
# the identity suite
# ---------------------------------------------------------------------------


def test_verify_scalar_identities_pass():
    rep = verify_scalar_identities(3, 4)
    assert rep.all_passed
    ids = {c.identity_id for c in rep.checks}
    assert "spectrum_generating_commutator" in ids
    assert "laplacian_two_routes" in ids


def test_verify_scalar_corruption_fails():
    rep = verify_scalar_identities(3, 3, corruption=Fraction(1))
    failed = {c.identity_id for c in rep.failures()}
    assert "conformal_covariance" in failed
    assert "u_square_sum" in failed
    assert rep.failures()[0].counterexample is not None


def test_commutator_on_constant_gives_n_coordinate():
    # [D, x_i] 1 = 2 U_i 1 = n x_i
    for n in (2, 3):
        one = SpherePoly.one(n)
        for i in range(n + 1):
            xi = SpherePoly.coordinate(n, i)
            comm = conformal_laplacian(xi * one) - xi * conformal_laplacian(one)
            assert comm == xi * Fraction(n)
            assert U(i, one) * 2 == xi * Fraction(n)


def test_report_serialization():
    rep = verify_scalar_identities(2, 2)
    d = rep.to_dict()
    assert d["all_passed"] is True
    assert all("identity_id" in c and "law" in c for c in d["checks"])
    assert "degree_cap" in d["checks"][0]
    rep.to_json()
