"""Conformal vector fields and the scalar spectral ladder on S^n.

The coordinate conformal fields act on sphere polynomials as
T_i p = x_i E(p) - d_i p (computed on the canonical representative; the
result is representative independent), and U_i = T_i + (n/2) x_i.  The
Laplacian comes in two independently implemented routes that are proven
equal by the test suite: minus the sum of squared conformal fields, and
the homogeneous-degree formula through the ambient Laplacian.

From the commutation relations alone, adjacent eigenvalues of the
conformal Laplacian D satisfy a quadratic compatibility equation whose
roots are lambda^+- = lambda + 1 +- sqrt(4 lambda + 1).  Iterating the
plus branch from the bottom value n(n-2)/4 generates the whole spectrum;
iterating the minus branch from any off-spectrum candidate descends below
the bottom bound in finitely many steps, which is the machine-checkable
refutation of that candidate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import _kernel
from .linalg import rref
from .polynomial import (
    SpherePoly,
    ambient_laplacian_terms,
    deriv_terms,
    euler_terms,
    harmonic_dimension,
    normal_monomials,
)
from .report import VerificationReport
from .scalars import as_rat
from .surd import Quad, rational_sqrt, sqrt_in_field


class NotEigenfunctionError(ValueError):
    pass


class OnSpectrumError(ValueError):
    def __init__(self, n: int, level: int):
        super().__init__(f"candidate is the level-{level} eigenvalue on S^{n}")
        self.level = level


class BelowBoundError(ValueError):
    pass


# ---------------------------------------------------------------------------
# first order operators
# ---------------------------------------------------------------------------


def T(i: int, p: SpherePoly) -> SpherePoly:
    """Conformal vector field of the i-th coordinate applied to p."""
    n = p.n
    if not 0 <= i <= n:
        raise IndexError(f"index {i} out of range for S^{n}")
    ep = euler_terms(p.terms)
    xi = [0] * (n + 1)
    xi[i] = 1
    shifted = {tuple(a + b for a, b in zip(e, xi)): c for e, c in ep.items()}
    raw = _kernel.add_scaled_terms(shifted, deriv_terms(p.terms, i), Fraction(-1))
    return SpherePoly(n, raw)


def U(i: int, p: SpherePoly) -> SpherePoly:
    return T(i, p) + SpherePoly.coordinate(p.n, i) * p * Fraction(p.n, 2)


def coordinate_mul(i: int, p: SpherePoly) -> SpherePoly:
    return SpherePoly.coordinate(p.n, i) * p


# ---------------------------------------------------------------------------
# Laplacians
# ---------------------------------------------------------------------------


def laplacian(p: SpherePoly) -> SpherePoly:
    """Laplace-Beltrami operator (nonnegative convention), homogeneous route.

    For a d-homogeneous ambient representative the sphere Laplacian is the
    reduced ambient Laplacian plus d(d+n-1) times the restriction.
    """
    n = p.n
    out = SpherePoly.zero(n)
    for d, comp in p.homogeneous_components().items():
        part = SpherePoly(n, ambient_laplacian_terms(comp))
        part = part + SpherePoly(n, dict(comp), reduced=True) * Fraction(d * (d + n - 1))
        out = out + part
    return out


def laplacian_via_conformal_fields(p: SpherePoly) -> SpherePoly:
    """Independent route: minus the sum of squared conformal fields."""
    n = p.n
    out = SpherePoly.zero(n)
    for i in range(n + 1):
        out = out + T(i, T(i, p))
    return -out


def conformal_laplacian(p: SpherePoly) -> SpherePoly:
    n = p.n
    return laplacian(p) + p * Fraction(n * (n - 2), 4)


def is_eigenfunction(p: SpherePoly, lam: Fraction) -> bool:
    """Exact test for membership in the lam-eigenspace of the conformal
    Laplacian (the zero polynomial counts)."""
    return (conformal_laplacian(p) - p * as_rat(lam)).is_zero


# ---------------------------------------------------------------------------
# eigenvalue lattice
# ---------------------------------------------------------------------------


def bottom_eigenvalue(n: int) -> Fraction:
    return Fraction(n * (n - 2), 4)


def scalar_eigenvalue(n: int, j: int) -> Fraction:
    """Level-j eigenvalue of the conformal Laplacian."""
    return (Fraction(n - 2, 2) + j) * (Fraction(n, 2) + j)


def laplace_eigenvalue(n: int, j: int) -> Fraction:
    return Fraction(j * (n - 1 + j))


def eigenvalue_step(lam, direction: str):
    """One step of the adjacent-eigenvalue recursion:
    lambda -> lambda + 1 +- sqrt(4 lambda + 1).

    Returns a Fraction when the step stays rational, else an exact Quad.
    Quad inputs are supported when the discriminant is a perfect square in
    their field, which covers every descent chain (the radicand never
    changes along a chain).
    """
    if direction not in ("+", "-"):
        raise ValueError("direction must be '+' or '-'")
    sign = 1 if direction == "+" else -1
    if isinstance(lam, Quad) and not lam.is_rational:
        disc = lam * 4 + 1
        if disc.sign() < 0:
            raise ValueError("negative discriminant")
        root = sqrt_in_field(disc)
        if root is None:
            raise ValueError("step leaves the quadratic field Q[sqrt(d)]")
    else:
        lam = lam.as_fraction() if isinstance(lam, Quad) else as_rat(lam)
        disc = 4 * lam + 1
        if disc < 0:
            raise ValueError("negative discriminant")
        root = Quad.sqrt(disc)
    res = Quad(1) * lam + 1 + (root if sign > 0 else -root)
    if isinstance(res, Quad) and res.is_rational:
        return res.as_fraction()
    return res


def spectrum_level_of(n: int, lam) -> int | None:
    """Level index j with lam equal to the level-j eigenvalue, or None."""
    lam = as_rat(lam)
    root = rational_sqrt(4 * lam + 1) if 4 * lam + 1 >= 0 else None
    if root is None:
        return None
    t = root - (n - 1)
    if t < 0 or t.denominator != 1 or t.numerator % 2:
        return None
    return t.numerator // 2


@dataclass
class ScalarEigenpair:
    n: int
    lam: Fraction
    j: int
    funcs: list = field(default_factory=list)

    @property
    def laplace_eigenvalue(self) -> Fraction:
        return self.lam - bottom_eigenvalue(self.n)


def generate_spectrum(n: int, count: int) -> list:
    """Eigenvalues of the conformal Laplacian by pure plus-branch
    iteration from the bottom value (no closed form used)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    out = []
    lam = bottom_eigenvalue(n)
    for j in range(count):
        out.append(ScalarEigenpair(n=n, lam=lam, j=j))
        nxt = eigenvalue_step(lam, "+")
        if isinstance(nxt, Quad):
            raise AssertionError("plus chain left the rationals")
        lam = nxt
    return out


# ---------------------------------------------------------------------------
# ladder operators
# ---------------------------------------------------------------------------


def _ladder_coeff(lam: Fraction, direction: str) -> Fraction:
    """The x_i coefficient (lam - lam^{-+}) / 2 of the ladder toward
    lam^{+-}; rational exactly on the half-integer discriminant lattice."""
    other = eigenvalue_step(lam, "-" if direction == "+" else "+")
    if isinstance(other, Quad):
        raise NotEigenfunctionError(
            "ladder coefficient is irrational: eigenvalue off the lattice"
        )
    return (as_rat(lam) - other) / 2


def ladder_plus(i: int, phi: SpherePoly, lam, *, check: bool = True) -> SpherePoly:
    """Raise: maps the lam-eigenspace into the lam^+ eigenspace."""
    lam = as_rat(lam)
    if check and not is_eigenfunction(phi, lam):
        raise NotEigenfunctionError(f"input is not a {lam}-eigenfunction")
    c = _ladder_coeff(lam, "+")
    return U(i, phi) + coordinate_mul(i, phi) * c


def ladder_minus(i: int, phi: SpherePoly, lam, *, check: bool = True) -> SpherePoly:
    """Lower: maps the lam-eigenspace into the lam^- eigenspace."""
    lam = as_rat(lam)
    if check and not is_eigenfunction(phi, lam):
        raise NotEigenfunctionError(f"input is not a {lam}-eigenfunction")
    c = _ladder_coeff(lam, "-")
    return U(i, phi) + coordinate_mul(i, phi) * c


def ladder_sums(phi: SpherePoly, lam) -> tuple:
    """Scalar factors of the summed down-up and up-down ladder
    compositions on a lam-eigenfunction:

        sum_i M_i P_i = -1/2 (nu + n - 1)(nu + 2)
        sum_i P_i M_i = -1/2 (nu - n + 1)(nu - 2),   nu = sqrt(4 lam + 1).

    Both are verified operatorially on phi before being returned.
    """
    n = phi.n
    lam = as_rat(lam)
    nu = rational_sqrt(4 * lam + 1)
    if nu is None:
        raise NotEigenfunctionError("sqrt(4 lam + 1) must be rational")
    if not is_eigenfunction(phi, lam):
        raise NotEigenfunctionError(f"input is not a {lam}-eigenfunction")
    mp_factor = -Fraction(1, 2) * (nu + n - 1) * (nu + 2)
    pm_factor = -Fraction(1, 2) * (nu - n + 1) * (nu - 2)

    lam_plus = eigenvalue_step(lam, "+")
    lam_minus = eigenvalue_step(lam, "-")
    mp = SpherePoly.zero(n)
    pm = SpherePoly.zero(n)
    for i in range(n + 1):
        up = ladder_plus(i, phi, lam, check=False)
        mp = mp + ladder_minus(i, up, lam_plus, check=False)
        down = ladder_minus(i, phi, lam, check=False)
        pm = pm + ladder_plus(i, down, lam_minus, check=False)
    if not (mp - phi * mp_factor).is_zero:
        raise AssertionError("down-up ladder sum disagrees with its factor")
    if not (pm - phi * pm_factor).is_zero:
        raise AssertionError("up-down ladder sum disagrees with its factor")
    return mp_factor, pm_factor


# ---------------------------------------------------------------------------
# eigenspaces by ladders
# ---------------------------------------------------------------------------

_EIGENSPACE_CACHE: dict = {}


def build_eigenspace(n: int, j: int, max_funcs: int | None = None) -> ScalarEigenpair:
    """Spanning set of the level-j eigenspace obtained by repeatedly
    applying the raising ladders to the constant function.

    The exact rank of the ladder images equals the harmonic-polynomial
    dimension at every level (asserted), and the returned basis is the
    canonical reduced row echelon basis in graded-lex monomial
    coordinates.
    """
    if j < 0:
        raise ValueError("level must be >= 0")
    key = (n, j)
    if key not in _EIGENSPACE_CACHE:
        if j == 0:
            _EIGENSPACE_CACHE[key] = [SpherePoly.one(n)]
        else:
            prev = build_eigenspace(n, j - 1).funcs
            lam_prev = scalar_eigenvalue(n, j - 1)
            cands = []
            for b in prev:
                for i in range(n + 1):
                    img = ladder_plus(i, b, lam_prev, check=False)
                    if not img.is_zero:
                        cands.append(img)
            monos = normal_monomials(n, j)
            index = {e: k for k, e in enumerate(monos)}
            rows = []
            for p in cands:
                row = [Fraction(0)] * len(monos)
                for e, c in p.terms.items():
                    row[index[e]] = c
                rows.append(row)
            pivots = rref(rows)
            dim = harmonic_dimension(n, j)
            if len(pivots) != dim:
                raise AssertionError(
                    f"ladder span rank {len(pivots)} != harmonic dimension {dim}"
                )
            basis = []
            for r in range(len(pivots)):
                terms = {monos[k]: v for k, v in enumerate(rows[r]) if v}
                basis.append(SpherePoly(n, terms, reduced=True))
            _EIGENSPACE_CACHE[key] = basis
    funcs = list(_EIGENSPACE_CACHE[key])
    if max_funcs is not None:
        funcs = funcs[:max_funcs]
    lam = scalar_eigenvalue(n, j)
    for f in funcs:
        if not is_eigenfunction(f, lam):
            raise AssertionError("constructed basis member fails the eigen test")
    return ScalarEigenpair(n=n, lam=lam, j=j, funcs=funcs)


# ---------------------------------------------------------------------------
# refutation of off-spectrum candidates
# ---------------------------------------------------------------------------


@dataclass
class RefutationChain:
    start: Fraction
    steps: list  # successive minus-branch values (Quad or Fraction), exact
    violated_bound: Fraction

    @property
    def final(self):
        return self.steps[-1]

    def __len__(self):
        return len(self.steps)

    def to_dict(self) -> dict:
        def enc(v):
            return v.to_json() if isinstance(v, Quad) else str(v)

        return {
            "start": str(self.start),
            "steps": [enc(s) for s in self.steps],
            "violated_bound": str(self.violated_bound),
            "final_below_bound": True,
        }


def refute_candidate(n: int, lam) -> RefutationChain:
    """Descend from an off-spectrum candidate through the minus branch
    until the bottom bound n(n-2)/4 is violated.

    The chain is exact: in terms of nu = sqrt(4 lam + 1) the step is
    nu -> |nu - 2|, so every iterate stays in the starting field
    Q[sqrt(4 lam + 1)].
    """
    lam = as_rat(lam)
    bound = bottom_eigenvalue(n)
    if lam < bound:
        raise BelowBoundError(
            f"candidate {lam} already violates the bottom bound {bound}"
        )
    level = spectrum_level_of(n, lam)
    if level is not None:
        raise OnSpectrumError(n, level)

    # gap index: the level whose eigenvalue sits just below the candidate
    gap = 0
    while scalar_eigenvalue(n, gap + 1) < lam:
        gap += 1

    nu = Quad.sqrt(4 * lam + 1)
    steps = []
    current = Quad(lam)
    for _ in range(gap + 2):
        nu = abs(nu - 2)
        nxt = (nu * nu - 1) * Fraction(1, 4)
        if not (nxt < current):
            raise AssertionError("descent failed to decrease")
        current = nxt
        steps.append(nxt.as_fraction() if nxt.is_rational else nxt)
        if nxt < bound:
            return RefutationChain(start=lam, steps=steps, violated_bound=bound)
    raise AssertionError("descent exceeded the gap-length budget")


# ---------------------------------------------------------------------------
# identity verification suite
# ---------------------------------------------------------------------------


def verify_scalar_identities(
    n: int, degree_cap: int, corruption: Fraction | None = None
) -> VerificationReport:
    """Check every scalar operator identity exactly on the full monomial
    basis up to degree_cap.

    ``corruption`` shifts the conformal Laplacian by a constant; it exists
    so the falsifiability of the suite is itself testable (a corrupted
    operator must produce failures).
    """
    if degree_cap < 2:
        raise ValueError("degree_cap must be >= 2")
    shift = as_rat(corruption) if corruption is not None else Fraction(0)

    def D(p: SpherePoly) -> SpherePoly:
        out = conformal_laplacian(p)
        if shift:
            out = out + p * shift
        return out

    report = VerificationReport(scope="scalar", n=n, degree_cap=degree_cap)
    basis = [
        SpherePoly(n, {e: Fraction(1)}, reduced=True)
        for e in normal_monomials(n, degree_cap)
    ]

    def sweep(check, over_i: bool):
        for p in basis:
            idxs = range(n + 1) if over_i else (None,)
            for i in idxs:
                diff = check(p) if i is None else check(i, p)
                if not diff.is_zero:
                    return {
                        "monomial": p.canonical_str(),
                        "index": i,
                        "difference": diff.canonical_str(),
                    }
        return None

    # commutator of D with coordinate multiplication gives twice U
    cx = sweep(lambda i, p: D(coordinate_mul(i, p)) - coordinate_mul(i, D(p)) - U(i, p) * 2, True)
    report.add("spectrum_generating_commutator", "[D, x_i] = 2 U_i", cx is None, cx)

    cx = sweep(
        lambda i, p: D(U(i, p) - coordinate_mul(i, p)) - U(i, D(p)) - coordinate_mul(i, D(p)),
        True,
    )
    report.add(
        "conformal_covariance", "D (U_i - x_i) = (U_i + x_i) D", cx is None, cx
    )

    def anticomm(p):
        acc = SpherePoly.zero(n)
        for i in range(n + 1):
            acc = acc + coordinate_mul(i, U(i, p)) + U(i, coordinate_mul(i, p))
        return acc

    cx = sweep(anticomm, False)
    report.add(
        "coordinate_anticommutator", "sum_i (x_i U_i + U_i x_i) = 0", cx is None, cx
    )

    def comm(p):
        acc = SpherePoly.zero(n)
        for i in range(n + 1):
            acc = acc + U(i, coordinate_mul(i, p)) - coordinate_mul(i, U(i, p))
        return acc + p * Fraction(n)

    cx = sweep(comm, False)
    report.add("coordinate_commutator", "sum_i [U_i, x_i] = -n", cx is None, cx)

    cx = sweep(lambda p: laplacian(p) - laplacian_via_conformal_fields(p), False)
    report.add(
        "laplacian_two_routes",
        "-sum_i T_i^2 = Laplacian (homogeneous-degree route)",
        cx is None,
        cx,
    )

    def usq(p):
        acc = SpherePoly.zero(n)
        for i in range(n + 1):
            acc = acc + U(i, U(i, p))
        return acc + D(p) + p * Fraction(n, 2)

    cx = sweep(usq, False)
    report.add("u_square_sum", "sum_i U_i^2 = -D - n/2", cx is None, cx)

    for a in (Fraction(0), Fraction(1), Fraction(-1), Fraction(3, 2), Fraction(-3, 2)):

        def orth(p, a=a):
            acc = SpherePoly.zero(n)
            usum = SpherePoly.zero(n)
            for i in range(n + 1):
                shifted = U(i, p) + coordinate_mul(i, p) * a
                acc = acc + U(i, shifted) + coordinate_mul(i, shifted) * a
                usum = usum + U(i, U(i, p))
            return acc - p * (a * a) - usum

        cx = sweep(orth, False)
        report.add(
            f"shifted_square_sum_a={a}",
            "sum_i (U_i + a x_i)^2 = a^2 + sum_i U_i^2",
            cx is None,
            cx,
        )

    return report
