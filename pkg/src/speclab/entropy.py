"""Numeric certification of the sharp entropy inequality on the 2-sphere.

The inequality bounds (4/n) int f^2 log f by (2/n)(int f^2) log int f^2
plus the quadratic form of the derivative-at-zero-order spectral family,
with equality exactly on constant multiples of conformal factors.  All
integrals use normalized measure.

Verification strategy (desk scale, honest about its error budget):

* a Gauss-Legendre x uniform-azimuth product rule whose exactness on
  polynomial integrands is gated against the exact moments;
* harmonic projection of node-sampled functions onto an orthonormal
  spherical-harmonic basis built by stable normalized recurrences,
  cross-validated against the exact Fischer decomposition;
* spectral quadratic forms truncated at a cutoff J, plus a certified
  tail floor: the eigenvalue families here increase with the level, so
  the dropped tail is at least eig(J+1) times the projection residual.
  Adding the floor keeps every inequality check conservative while
  pinning the equality cases to well below the stated tolerance.

Exact polynomial inputs bypass the projector entirely: their harmonic
decomposition is finite and the spectral term is computed in rational
arithmetic.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .polynomial import (
    SpherePoly,
    harmonic_decompose,
    integrate,
    moment_integral,
    normal_monomials,
)
from .spectral import (
    entropy_operator_eigen,
    normalized_intertwinor_eigen,
)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------


@dataclass
class QuadratureRule:
    nodes: np.ndarray  # (K, 3) points on S^2
    weights: np.ndarray  # (K,), sums to 1 (normalized measure)
    order: int

    @property
    def size(self) -> int:
        return len(self.weights)

    def integrate(self, values: np.ndarray) -> float:
        return float(self.weights @ values)

    def validate(self, max_degree: int | None = None) -> float:
        """Worst absolute error against exact monomial moments."""
        deg = max_degree if max_degree is not None else self.order
        worst = 0.0
        x, y, z = self.nodes[:, 0], self.nodes[:, 1], self.nodes[:, 2]
        for e in normal_monomials(2, deg):
            # normal-form monomials cover every function on the sphere of
            # this degree; include a raw even power of x0 as well
            vals = x ** e[0] * y ** e[1] * z ** e[2]
            err = abs(self.integrate(vals) - float(moment_integral(e, 2)))
            worst = max(worst, err)
        worst = max(
            worst, abs(self.integrate(x ** 4) - float(moment_integral((4, 0, 0), 2)))
        )
        return worst


def build_quadrature(order: int) -> QuadratureRule:
    """Product rule on S^2: Gauss-Legendre in the polar cosine crossed
    with a uniform azimuth grid; exact for polynomials up to `order`."""
    if order < 2:
        raise ValueError("order must be >= 2")
    nz = order // 2 + 1
    z, wz = np.polynomial.legendre.leggauss(nz)
    nphi = order + 1
    phi = 2.0 * np.pi * (np.arange(nphi) + 0.5) / nphi
    zz = np.repeat(z, nphi)
    pp = np.tile(phi, nz)
    s = np.sqrt(1.0 - zz ** 2)
    nodes = np.stack([s * np.cos(pp), s * np.sin(pp), zz], axis=1)
    weights = np.repeat(wz, nphi) / (2.0 * nphi)
    return QuadratureRule(nodes=nodes, weights=weights, order=order)


# ---------------------------------------------------------------------------
# conformal factors
# ---------------------------------------------------------------------------


@dataclass
class ConformalFactor:
    """F_a(x) = (1-|a|^2)/(1 - 2<a,x> + |a|^2) for an interior point a;
    the |dphi|-factor of the Mobius transform centered at a, so F^n has
    unit mass in normalized measure."""

    a: tuple

    def __post_init__(self):
        if np.dot(self.a, self.a) >= 1.0:
            raise ValueError("the center must lie inside the unit ball")

    def values(self, points: np.ndarray) -> np.ndarray:
        a = np.asarray(self.a)
        a2 = float(a @ a)
        return (1.0 - a2) / (1.0 - 2.0 * points @ a + a2)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return self.values(points)

    def unit_mass_error(self, rule: QuadratureRule, n: int = 2) -> float:
        return abs(rule.integrate(self.values(rule.nodes) ** n) - 1.0)


# ---------------------------------------------------------------------------
# harmonic projection of sampled functions
# ---------------------------------------------------------------------------


def _legendre_assoc_normalized(z: np.ndarray, jmax: int) -> dict:
    """P_l^m(z) scaled so the real spherical harmonics built from them are
    orthonormal in normalized measure; returns {(l, m): array}."""
    out = {}
    for m in range(jmax + 1):
        if m == 0:
            pmm = np.ones_like(z)
        else:
            pmm = np.ones_like(z)
            s = np.sqrt(np.maximum(1.0 - z * z, 0.0))
            for t in range(1, m + 1):
                pmm = pmm * (2 * t - 1) * s
        prev2 = pmm
        out[(m, m)] = pmm
        if m + 1 <= jmax:
            prev1 = z * (2 * m + 1) * pmm
            out[(m + 1, m)] = prev1
            for l in range(m + 2, jmax + 1):
                cur = (z * (2 * l - 1) * prev1 - (l + m - 1) * prev2) / (l - m)
                out[(l, m)] = cur
                prev2, prev1 = prev1, cur
    return out


class SphereProjector:
    """Orthonormal real spherical harmonics sampled on a quadrature rule,
    giving exact-by-quadrature level projections of node-sampled
    functions."""

    def __init__(self, rule: QuadratureRule, jmax: int):
        self.rule = rule
        self.jmax = jmax
        z = rule.nodes[:, 2]
        phi = np.arctan2(rule.nodes[:, 1], rule.nodes[:, 0])
        plm = _legendre_assoc_normalized(z, jmax)
        rows = []
        self.level_slices = []
        start = 0
        for l in range(jmax + 1):
            count = 0
            rows.append(math.sqrt(2 * l + 1) * plm[(l, 0)])
            count += 1
            for m in range(1, l + 1):
                norm = math.sqrt(
                    2 * (2 * l + 1) * math.factorial(l - m) / math.factorial(l + m)
                )
                rows.append(norm * plm[(l, m)] * np.cos(m * phi))
                rows.append(norm * plm[(l, m)] * np.sin(m * phi))
                count += 2
            self.level_slices.append(slice(start, start + count))
            start += count
        self.basis = np.array(rows)
        self._wbasis = self.basis * rule.weights

    def coefficients(self, f_nodes: np.ndarray) -> np.ndarray:
        return self._wbasis @ f_nodes

    def level_norms_sq(self, f_nodes: np.ndarray) -> np.ndarray:
        c = self.coefficients(f_nodes)
        return np.array(
            [float(np.sum(c[sl] ** 2)) for sl in self.level_slices]
        )

    def gram_error(self) -> float:
        """Departure of the sampled basis from orthonormality; a rule of
        order >= 2*jmax makes this quadrature-exact."""
        g = self._wbasis @ self.basis.T
        return float(np.max(np.abs(g - np.eye(g.shape[0]))))


# ---------------------------------------------------------------------------
# spectral application and the inequality sides
# ---------------------------------------------------------------------------


def apply_spectral_operator(f: SpherePoly, eigen) -> SpherePoly:
    """Scale each harmonic component of a polynomial by eigen(level).

    Exact when eigen returns rationals; float eigenvalues produce a
    float-coefficient polynomial.
    """
    out = SpherePoly.zero(f.n)
    decomp = harmonic_decompose(f)
    for k, _ in decomp:
        out = out + decomp.restricted(k).scale(eigen(k))
    return out


def _node_values(f, rule: QuadratureRule) -> np.ndarray:
    if isinstance(f, SpherePoly):
        return f.eval_array(rule.nodes)
    if isinstance(f, np.ndarray):
        return f
    return np.asarray(f(rule.nodes), dtype=float)


def _spectral_quadratic(
    f,
    rule: QuadratureRule,
    eigen_float,
    cutoff: int,
    projector: SphereProjector | None,
):
    """(sum of eig_j ||P_j f||^2 with certified tail floor, residual).

    Polynomial inputs use the exact finite decomposition (residual 0).
    """
    if isinstance(f, SpherePoly):
        decomp = harmonic_decompose(f)
        total = 0.0
        for k, _ in decomp:
            part = decomp.restricted(k)
            norm_sq = integrate(part * part)
            total += eigen_float(k) * float(norm_sq)
        return total, 0.0
    proj = projector if projector is not None else SphereProjector(rule, cutoff)
    if proj.jmax < cutoff:
        raise ValueError("projector cutoff is below the requested cutoff")
    vals = _node_values(f, rule)
    norms = proj.level_norms_sq(vals)[: cutoff + 1]
    total = sum(eigen_float(j) * norms[j] for j in range(cutoff + 1))
    residual = max(rule.integrate(vals * vals) - float(np.sum(norms)), 0.0)
    total += eigen_float(cutoff + 1) * residual
    return total, residual


def entropy_sides(
    f,
    rule: QuadratureRule,
    cutoff: int = 25,
    projector: SphereProjector | None = None,
    n: int = 2,
) -> tuple:
    """Left and right sides of the sharp entropy inequality for positive f:
    (4/n) int f^2 log f  <=  (2/n)(int f^2) log int f^2 + <f, H f>."""
    vals = _node_values(f, rule)
    if np.min(vals) <= 0:
        raise ValueError("f must be positive at every quadrature node")
    i2 = rule.integrate(vals * vals)
    lhs = (4.0 / n) * rule.integrate(vals * vals * np.log(vals))
    spectral, _ = _spectral_quadratic(
        f, rule, lambda j: float(entropy_operator_eigen(n, j)), cutoff, projector
    )
    rhs = (2.0 / n) * i2 * math.log(i2) + spectral
    return lhs, rhs


def giveaway_sides(
    f,
    rule: QuadratureRule,
    cutoff: int = 25,
    projector: SphereProjector | None = None,
    n: int = 2,
) -> tuple:
    """The weaker logarithmic form: (2/n) int f^2 log f <=
    (1/n)(int f^2) log int f^2 + <f, log(2 A_1/(n-1)) f>."""
    vals = _node_values(f, rule)
    if np.min(vals) <= 0:
        raise ValueError("f must be positive at every quadrature node")
    i2 = rule.integrate(vals * vals)
    lhs = (2.0 / n) * rule.integrate(vals * vals * np.log(vals))

    def log_eigen(j):
        return math.log((n - 1 + 2 * j) / (n - 1))

    spectral, _ = _spectral_quadratic(f, rule, log_eigen, cutoff, projector)
    rhs = (1.0 / n) * i2 * math.log(i2) + spectral
    return lhs, rhs


def beckner_check(
    F,
    r,
    rule: QuadratureRule,
    cutoff: int = 25,
    projector: SphereProjector | None = None,
    n: int = 2,
) -> tuple:
    """Sides of the sharp fractional-integral inequality at order 2r:
    int F^{(n-2r)/2} B_{2r} F^{(n-2r)/2}  >=  (int F^n)^{(n-2r)/n}."""
    rf = float(r)
    if not 0 < rf < n / 2:
        raise ValueError("r must lie in (0, n/2)")
    F_vals = _node_values(F, rule)
    if np.min(F_vals) <= 0:
        raise ValueError("F must be positive at every quadrature node")
    g = F_vals ** ((n - 2 * rf) / 2.0)

    def b_eigen(j):
        v = normalized_intertwinor_eigen(n, r, j).payload
        return float(v)

    lhs, _ = _spectral_quadratic(g, rule, b_eigen, cutoff, projector)
    mass = rule.integrate(F_vals ** n)
    rhs = mass ** ((n - 2 * rf) / n)
    return lhs, rhs


def beckner_deficit(
    F,
    r,
    rule: QuadratureRule,
    cutoff: int = 25,
    projector: SphereProjector | None = None,
    n: int = 2,
) -> float:
    """lhs - rhs of the order-2r inequality, extended to small r of either
    sign (the spectral family is analytic through r = 0; the inequality
    itself is only asserted for positive r).  Used by the derivative
    consistency check, which differentiates the deficit at r = 0."""
    rf = float(r)
    if not -n / 2 < rf < n / 2:
        raise ValueError("r must lie in (-n/2, n/2)")
    F_vals = _node_values(F, rule)
    if np.min(F_vals) <= 0:
        raise ValueError("F must be positive at every quadrature node")
    g = F_vals ** ((n - 2 * rf) / 2.0)

    def b_eigen(j):
        return float(normalized_intertwinor_eigen(n, r, j).payload)

    lhs, _ = _spectral_quadratic(g, rule, b_eigen, cutoff, projector)
    mass = rule.integrate(F_vals ** n)
    return lhs - mass ** ((n - 2 * rf) / n)


# ---------------------------------------------------------------------------
# the test battery
# ---------------------------------------------------------------------------


def battery(n: int = 2) -> list:
    """Thirty positive test functions on S^2: three conformal factors
    (the equality family) and twenty-seven visibly non-conformal members."""
    members = []
    for a in ((0.0, 0.0, 0.1), (0.18, -0.15, 0.19), (0.0, 0.36, 0.48)):
        members.append((f"conformal|a|={np.linalg.norm(a):.1f}", "equality", ConformalFactor(a)))

    def poly(terms):
        return SpherePoly(2, {e: Fraction(c) for e, c in terms.items()})

    x0, x1, x2 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    one = (0, 0, 0)
    polys = [
        ("1+x2/2", {one: "1", x2: "1/2"}),
        ("1+x0/3", {one: "1", x0: "1/3"}),
        ("1+t*x2, t=0.3", {one: "1", x2: "3/10"}),
        ("1+t*x2, t=0.7", {one: "1", x2: "7/10"}),
        ("1+t*x2, t=0.9", {one: "1", x2: "9/10"}),
        ("1+x1^2/4", {one: "1", (0, 2, 0): "1/4"}),
        ("1+x0*x1/3", {one: "1", (1, 1, 0): "1/3"}),
        ("2+x0", {one: "2", x0: "1"}),
        ("1+x0/2+x1/3", {one: "1", x0: "1/2", x1: "1/3"}),
        ("3/2+x0*x2/2", {one: "3/2", (1, 0, 1): "1/2"}),
        ("1+x2^2", {one: "1", (0, 0, 2): "1"}),
        ("1+x0^2/2-x1^2/4", {one: "1", (2, 0, 0): "1/2", (0, 2, 0): "-1/4"}),
        ("1+x2^3/3", {one: "1", (0, 0, 3): "1/3"}),
        ("5/4+x0*x1*x2", {one: "5/4", (1, 1, 1): "1"}),
        ("1+x1/4+x2^2/2", {one: "1", x1: "1/4", (0, 0, 2): "1/2"}),
    ]
    for name, terms in polys:
        members.append((name, "strict", poly(terms)))

    def callables():
        yield "exp(0.4 z)", lambda p: np.exp(0.4 * p[:, 2])
        yield "exp(0.3 x + 0.2 y)", lambda p: np.exp(0.3 * p[:, 0] + 0.2 * p[:, 1])
        # note: 1/(2+z) itself is a conformal-factor multiple (equality);
        # squaring it leaves the equality family
        yield "1/(2+z)^2", lambda p: 1.0 / (2.0 + p[:, 2]) ** 2
        yield "(1.5+x)^0.75", lambda p: (1.5 + p[:, 0]) ** 0.75
        yield "1+0.5 cos(pi z)^2", lambda p: 1.0 + 0.5 * np.cos(np.pi * p[:, 2]) ** 2
        yield "gauss bump at north pole", lambda p: 1.0 + np.exp(-4.0 * (1.0 - p[:, 2]))
        yield "two-bump mix", lambda p: 1.0 + 0.6 * np.exp(-3.0 * (1.0 - p[:, 2])) + 0.4 * np.exp(-3.0 * (1.0 + p[:, 2]))
        yield "sqrt(2+sin(2x))", lambda p: np.sqrt(2.0 + np.sin(2.0 * p[:, 0]))
        yield "logistic in y", lambda p: 1.0 / (1.0 + 0.5 * np.exp(-2.0 * p[:, 1]))
        yield "1+|xy| smoothed", lambda p: 1.0 + p[:, 0] ** 2 * p[:, 1] ** 2
        yield "cosh(0.6 z)", lambda p: np.cosh(0.6 * p[:, 2])
        yield "1+0.8 z^4", lambda p: 1.0 + 0.8 * p[:, 2] ** 4

    cals = list(callables())
    for name, fn in cals:
        members.append((name, "strict", fn))
    assert len(members) == 30, len(members)
    return members


def entropy_report(
    rule: QuadratureRule | None = None,
    cutoff: int = 25,
    quick: bool = False,
    order: int = 60,
) -> dict:
    """Run the battery and return the machine-readable report."""
    rule = rule if rule is not None else build_quadrature(max(order, 2 * cutoff + 8))
    gate = rule.validate(min(rule.order, 12))
    projector = SphereProjector(rule, cutoff + 1)
    rows = []
    members = battery()
    if quick:
        members = members[:6]
    for name, kind, f in members:
        lhs, rhs = entropy_sides(f, rule, cutoff=cutoff, projector=projector)
        _, residual = _spectral_quadratic(
            f, rule, lambda j: float(entropy_operator_eigen(2, j)), cutoff, projector
        )
        gap = rhs - lhs
        if kind == "equality":
            status = "pass" if gap >= -1e-10 and abs(gap) < 1e-6 else "fail"
        else:
            status = "pass" if gap > 1e-4 else "fail"
        rows.append(
            {
                "test": "entropy",
                "f_description": name,
                "order": rule.order,
                "cutoff_J": cutoff,
                "lhs": lhs,
                "rhs": rhs,
                "gap": gap,
                "truncation_residual": residual,
                "status": status,
            }
        )
    return {
        "quadrature_gate_error": gate,
        "all_passed": all(r["status"] == "pass" for r in rows),
        "rows": rows,
    }


def entropy_report_json(**kwargs) -> str:
    return json.dumps(entropy_report(**kwargs), indent=2, sort_keys=True)
