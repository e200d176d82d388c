"""Gamma algebra, the algebraic Dirac model, spinor ladders, truncation
models with certified spectra."""

import json
import random
from fractions import Fraction

import pytest

from speclab.clifford import (
    SpinorPoly,
    U_spin,
    angular_apply,
    clifford_x,
    decompose_by_levels,
    dirac_apply,
    dirac_eigenvalue,
    dirac_squared,
    eigenspinor_basis,
    gamma_algebra,
    is_eigenspinor,
    monogenic_basis,
    monogenic_dimension,
    refute_dirac_candidate,
    spinor_ladders,
    truncation_matrices,
    verify_spinor_identities,
    y_apply,
)
from speclab.polynomial import SpherePoly, normal_monomials
from speclab.scalars import CRat, parse_crat


def rand_spinor(rng, n, deg=2):
    d = gamma_algebra(n).dim_spin
    comps = []
    monos = normal_monomials(n, deg)
    for _ in range(d):
        terms = {}
        for _ in range(3):
            e = rng.choice(monos)
            terms[e] = CRat(
                Fraction(rng.randint(-4, 4), rng.randint(1, 4)),
                Fraction(rng.randint(-4, 4), rng.randint(1, 4)),
            )
        comps.append(SpherePoly(n, {k: v for k, v in terms.items() if v}))
    return SpinorPoly(n, comps)


# ---------------------------------------------------------------------------
# gamma matrices
# ---------------------------------------------------------------------------


def test_gamma_relations_up_to_six():
    for n in range(2, 7):
        alg = gamma_algebra(n)
        assert alg.dim_spin == 2 ** ((n + 1) // 2)
        assert alg.check_relations()


def test_gamma_traceless_and_square():
    for n in (2, 3, 4, 5):
        alg = gamma_algebra(n)
        for i in range(n + 1):
            tr = sum((alg.e(i)[r][r] for r in range(alg.dim_spin)), CRat(0))
            assert not tr
            sq = alg.pair(i, i)
            for r in range(alg.dim_spin):
                for c in range(alg.dim_spin):
                    assert sq[r][c] == (CRat(-1) if r == c else CRat(0))


# ---------------------------------------------------------------------------
# the angular operator and the Dirac foothold
# ---------------------------------------------------------------------------


def test_angular_on_constants_and_their_images():
    for n in (2, 3):
        psi0 = SpinorPoly.unit(n, 0)
        assert angular_apply(psi0).is_zero
        xpsi = clifford_x(psi0)
        assert (angular_apply(xpsi) - xpsi.scale(Fraction(n))).is_zero


def test_angular_on_linear_monogenics():
    # degree-1 monogenics are eigenvectors with eigenvalue -1
    for n in (2, 3):
        for m in monogenic_basis(n, 1):
            assert (angular_apply(m) + m).is_zero


def test_dirac_foothold_pair():
    for n in (2, 3):
        psi0 = SpinorPoly.unit(n, 0)
        xpsi = clifford_x(psi0)
        plus = psi0 + xpsi
        minus = psi0 - xpsi
        assert (dirac_apply(plus) + plus.scale(Fraction(n, 2))).is_zero
        assert (dirac_apply(minus) - minus.scale(Fraction(n, 2))).is_zero
        assert (dirac_squared(psi0) - psi0.scale(Fraction(n * n, 4))).is_zero


# ---------------------------------------------------------------------------
# commutator-defined operators
# ---------------------------------------------------------------------------


def test_y_square_sum_is_minus_n():
    for n in (2, 3):
        psi0 = SpinorPoly.unit(n, 0)
        acc = SpinorPoly.zero(n)
        for i in range(n + 1):
            acc = acc + y_apply(i, y_apply(i, psi0))
        assert (acc + psi0.scale(Fraction(n))).is_zero


def test_coordinate_y_sums_vanish_on_random_spinors():
    # twenty random spinor fields across the two model dimensions
    rng = random.Random(21)
    for n in (2, 3):
        for _ in range(12 if n == 2 else 8):
            psi = rand_spinor(rng, n)
            left = SpinorPoly.zero(n)
            right = SpinorPoly.zero(n)
            for i in range(n + 1):
                left = left + y_apply(i, psi).coordinate_mul(i)
                right = right + y_apply(i, psi.coordinate_mul(i))
            assert left.is_zero and right.is_zero


def test_u_square_sum_identity_on_random_spinors():
    rng = random.Random(22)
    n = 2
    for _ in range(5):
        psi = rand_spinor(rng, n, deg=1)
        acc = SpinorPoly.zero(n)
        for i in range(n + 1):
            acc = acc + U_spin(i, U_spin(i, psi))
        want = dirac_squared(psi) + psi.scale(Fraction(n, 4))
        assert (acc + want).is_zero


# ---------------------------------------------------------------------------
# monogenics and eigenspinor bases
# ---------------------------------------------------------------------------


def test_monogenic_dimensions():
    for n in (2, 3):
        for k in range(4):
            assert len(monogenic_basis(n, k)) == monogenic_dimension(n, k)


def test_eigenspinor_bases_are_exact():
    for n in (2, 3):
        for j in (0, 1, 2):
            for sign in (1, -1):
                lam = dirac_eigenvalue(n, j, sign)
                basis = eigenspinor_basis(n, j, sign)
                assert len(basis) == monogenic_dimension(n, j)
                for v in basis:
                    assert is_eigenspinor(v, lam)


# ---------------------------------------------------------------------------
# ladders
# ---------------------------------------------------------------------------


def test_ladder_targets_and_flip_example():
    # the bottom negative eigenspinor on S^2 climbs to E(-2) through S
    n = 2
    psi0 = SpinorPoly.unit(n, 0)
    psi = psi0 + clifford_x(psi0)
    lam = Fraction(-1)
    some_s = False
    for i in range(n + 1):
        A, S, Nv = spinor_ladders(i, psi, lam)
        assert is_eigenspinor(A, lam + 1)
        assert is_eigenspinor(S, lam - 1)
        assert is_eigenspinor(Nv, -lam)
        some_s = some_s or not S.is_zero
    assert some_s  # the summed factor -2(lam-n/2)(lam-1/2) = -6 is nonzero


def test_ladder_sum_factors_levels_up_to_three():
    n = 2
    half = Fraction(1, 2)
    for j in range(4):
        for sign in (1, -1):
            lam = dirac_eigenvalue(n, j, sign)
            for psi in eigenspinor_basis(n, j, sign)[:2]:
                sa = SpinorPoly.zero(n)
                as_ = SpinorPoly.zero(n)
                nn = SpinorPoly.zero(n)
                for i in range(n + 1):
                    A, S, Nv = spinor_ladders(i, psi, lam, check=False)
                    _, S2, _ = spinor_ladders(i, A, lam + 1, check=False)
                    sa = sa + S2
                    A3, _, _ = spinor_ladders(i, S, lam - 1, check=False)
                    as_ = as_ + A3
                    _, _, N4 = spinor_ladders(i, Nv, -lam, check=False)
                    nn = nn + N4
                assert (sa - psi.scale(-2 * (lam + Fraction(n, 2)) * (lam + half))).is_zero
                assert (as_ - psi.scale(-2 * (lam - Fraction(n, 2)) * (lam - half))).is_zero
                assert (nn - psi.scale((n - 1) * (lam + half) * (lam - half))).is_zero


def test_ladder_rejects_non_eigenspinor():
    n = 2
    psi = SpinorPoly.unit(n, 0) + clifford_x(SpinorPoly.unit(n, 1)).scale(Fraction(1, 3))
    from speclab.scalar_ops import NotEigenfunctionError

    with pytest.raises(NotEigenfunctionError):
        spinor_ladders(0, psi, Fraction(-1))


def test_level_decomposition_supports_compression_identity():
    n = 2
    j, sign = 0, 1
    lam = dirac_eigenvalue(n, j, sign)
    psi = eigenspinor_basis(n, j, sign)[0]
    for i in range(n + 1):
        parts_x = decompose_by_levels(psi.coordinate_mul(i), j + 1)
        parts_u = decompose_by_levels(U_spin(i, psi), j + 1)
        for key in set(parts_x) | set(parts_u):
            mu = dirac_eigenvalue(n, key[0], key[1])
            cx = parts_x.get(key, SpinorPoly.zero(n))
            cu = parts_u.get(key, SpinorPoly.zero(n))
            assert (cu - cx.scale((mu * mu - lam * lam) / 2)).is_zero
            # adjacency: only the three cubic roots can appear
            if not cx.is_zero:
                assert mu in (lam + 1, lam - 1, -lam)


# ---------------------------------------------------------------------------
# truncation models
# ---------------------------------------------------------------------------


def test_truncation_spectrum_examples():
    m = truncation_matrices(2, 0)
    assert m.dim == 4
    assert m.spectrum() == [(Fraction(-1), 2, True), (Fraction(1), 2, True)]

    m = truncation_matrices(2, 1)
    assert m.spectrum() == [
        (Fraction(-2), 4, True),
        (Fraction(-1), 2, True),
        (Fraction(1), 2, True),
        (Fraction(2), 4, True),
    ]

    m = truncation_matrices(3, 1)
    assert [(lam, mult) for lam, mult, _ in m.spectrum()] == [
        (Fraction(-5, 2), 12),
        (Fraction(-3, 2), 4),
        (Fraction(3, 2), 4),
        (Fraction(5, 2), 12),
    ]


def test_truncation_spectrum_csv():
    m = truncation_matrices(2, 0)
    lines = m.spectrum_csv().strip().splitlines()
    assert lines[0] == "eigenvalue,multiplicity,certified"
    assert lines[1] == "-1,2,true"


def test_compressed_coordinate_matrix_between_contained_levels():
    # inside the model, the compression of U_i equals the eigenvalue-gap
    # factor times the compression of x_i on each eigenvector
    from speclab.linalg import mat_vec

    m = truncation_matrices(2, 0)
    x0 = m.coordinate_matrix(0)
    u0 = m.u_matrix(0)
    # eigenvectors of the model at +-1
    from speclab.linalg import nullspace

    saw_nonzero_x = False
    for lam in (Fraction(1), Fraction(-1)):
        shifted = [
            [m.p_matrix[i][j] - (CRat(lam) if i == j else CRat(0)) for j in range(m.dim)]
            for i in range(m.dim)
        ]
        for vec in nullspace(shifted, ncols=m.dim):
            xv = mat_vec(x0, vec)
            uv = mat_vec(u0, vec)
            # the only level inside the N=0 model besides lam is -lam, where
            # the gap factor (mu^2 - lam^2)/2 vanishes: compressed U_i kills
            # every eigenvector while compressed x_i generally does not
            assert all(not u for u in uv)
            saw_nonzero_x = saw_nonzero_x or any(bool(x) for x in xv)
    assert saw_nonzero_x


def test_operator_matrix_matches_stored_dirac():
    m = truncation_matrices(2, 1)
    assert m.operator_matrix(dirac_apply) == m.p_matrix


def test_decompose_outside_range_raises():
    psi = eigenspinor_basis(2, 2, 1)[0]
    with pytest.raises(ValueError):
        decompose_by_levels(psi, 1)


def test_matrix_json_roundtrip():
    m = truncation_matrices(2, 0)
    payload = json.loads(m.matrix_json("dirac"))
    assert payload["shape"] == [4, 4]
    for row in payload["rows"]:
        for s in row:
            parse_crat(s)
    payload = json.loads(m.matrix_json("x0"))
    assert payload["operator"] == "x0"


# ---------------------------------------------------------------------------
# refutation and the full suite
# ---------------------------------------------------------------------------


def test_dirac_refutation_descends_below_bound():
    for n in (2, 3):
        bound = Fraction(n * (n - 1), 4)
        for lam in (Fraction(7, 3), Fraction(12, 5), Fraction(31, 7)):
            chain = refute_dirac_candidate(n, lam)
            assert chain[-1] ** 2 < bound
            assert all(b == a - 1 for a, b in zip(chain, chain[1:]))
    with pytest.raises(ValueError):
        refute_dirac_candidate(2, Fraction(3))


def test_verify_spinor_identities_n2():
    rep = verify_spinor_identities(2, 1, k_max=1)
    assert rep.all_passed
    ids = {c.identity_id for c in rep.checks}
    assert "dirac_conformal_covariance" in ids
    assert "adjacent_span_rank" in ids
    assert "spectral_bound" in ids
