"""Exact polynomial algebra on the round sphere.

Functions on the n-sphere are modeled as sparse polynomials in the
ambient coordinates x0..xn, kept in a canonical normal form modulo the
relation sum_i x_i^2 = 1: every stored monomial carries an x0-exponent of
at most 1 (even powers are rewritten through x0^2 -> 1 - x1^2 - ... -
xn^2).  Because the relation ideal is principal, this normal form is the
unique division remainder, so two polynomials represent the same function
on the sphere exactly when their term maps coincide.

Monomials are exponent tuples of length n+1.  Term maps are dicts
``exponents -> coefficient`` with no explicit zeros; coefficients are
``Fraction`` throughout the scalar theory and may be ``CRat`` (spinor
components) or floats (spectral images of transcendental eigenvalues).

Raw (unreduced) ambient polynomials appear in a few operations that are
sensitive to the representative: the Euler operator, the ambient
Laplacian, homogeneous/harmonic splitting.  Those are plain functions on
term maps.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from . import _kernel
from .scalars import fmt_rat

Monomial = tuple  # exponent tuple of length n+1


def monomial_degree(e: Monomial) -> int:
    return sum(e)


def grlex_key(e: Monomial):
    """Graded lexicographic sort key: degree ascending, then exponent
    tuple descending (so x0-heavy monomials print first within a degree)."""
    return (sum(e), tuple(-x for x in e))


def monomials_of_degree(nvars: int, degree: int):
    """All exponent tuples of the given total degree in nvars variables."""
    if degree == 0:
        yield (0,) * nvars
        return
    for slots in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for s in slots:
            e[s] += 1
        yield tuple(e)


def normal_monomials(n: int, max_degree: int) -> list:
    """Normal-form monomial basis (x0-exponent <= 1) up to max_degree,
    in graded-lex order.  This is a basis of the polynomial functions on
    the n-sphere of degree at most max_degree."""
    out = []
    for d in range(max_degree + 1):
        for e in monomials_of_degree(n, d):
            out.append((0,) + e)
        if d >= 1:
            for e in monomials_of_degree(n, d - 1):
                out.append((1,) + e)
    out.sort(key=grlex_key)
    return out


def count_normal_monomials(n: int, max_degree: int) -> int:
    total = sum(comb(d + n - 1, n - 1) for d in range(max_degree + 1))
    total += sum(comb(d + n - 1, n - 1) for d in range(max_degree))
    return total


# ---------------------------------------------------------------------------
# raw term-map operations (representative-sensitive)
# ---------------------------------------------------------------------------


def deriv_terms(terms: dict, i: int) -> dict:
    """Partial derivative d/dx_i on a raw term map."""
    out = {}
    for e, c in terms.items():
        k = e[i]
        if k:
            ne = e[:i] + (k - 1,) + e[i + 1 :]
            v = c * k
            prev = out.get(ne)
            out[ne] = v if prev is None else prev + v
    return {e: c for e, c in out.items() if c}


def euler_terms(terms: dict) -> dict:
    """Euler operator sum_i x_i d/dx_i: scales each monomial by its degree."""
    return {e: c * sum(e) for e, c in terms.items() if sum(e)}


def ambient_laplacian_terms(terms: dict) -> dict:
    """Geometer's ambient Laplacian -sum_i d^2/dx_i^2 on a raw term map."""
    out: dict = {}
    for e, c in terms.items():
        for i, k in enumerate(e):
            if k >= 2:
                ne = e[:i] + (k - 2,) + e[i + 1 :]
                v = c * (k * (k - 1))
                prev = out.get(ne)
                out[ne] = v if prev is None else prev + v
    return {e: -c for e, c in out.items() if c}


def homogeneous_parts(terms: dict) -> dict:
    """Split a raw term map by total degree: degree -> term map."""
    parts: dict = {}
    for e, c in terms.items():
        parts.setdefault(sum(e), {})[e] = c
    return parts


def r2_terms(n: int) -> dict:
    """The ambient squared radius sum_{i=0..n} x_i^2 as a raw term map."""
    out = {}
    for i in range(n + 1):
        e = [0] * (n + 1)
        e[i] = 2
        out[tuple(e)] = Fraction(1)
    return out


# ---------------------------------------------------------------------------
# SpherePoly
# ---------------------------------------------------------------------------


class SpherePoly:
    """A polynomial function on the n-sphere in canonical normal form."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: dict, *, reduced: bool = False):
        if n < 2:
            raise ValueError("sphere dimension must be >= 2")
        self.n = n
        self.terms = terms if reduced else _kernel.reduce_terms(terms, n)
        self._hash = None

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "SpherePoly":
        return cls(n, {}, reduced=True)

    @classmethod
    def constant(cls, n: int, c) -> "SpherePoly":
        if not c:
            return cls.zero(n)
        return cls(n, {(0,) * (n + 1): c}, reduced=True)

    @classmethod
    def one(cls, n: int) -> "SpherePoly":
        return cls.constant(n, Fraction(1))

    @classmethod
    def coordinate(cls, n: int, i: int) -> "SpherePoly":
        if not 0 <= i <= n:
            raise IndexError(f"coordinate index {i} out of range for S^{n}")
        e = [0] * (n + 1)
        e[i] = 1
        return cls(n, {tuple(e): Fraction(1)}, reduced=True)

    @classmethod
    def monomial(cls, n: int, exps, c=Fraction(1)) -> "SpherePoly":
        return cls(n, {tuple(exps): c})

    # -- ring structure ---------------------------------------------------

    def _check(self, other: "SpherePoly"):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: S^{self.n} vs S^{other.n}")

    def __add__(self, other):
        if isinstance(other, SpherePoly):
            self._check(other)
            return SpherePoly(
                self.n,
                _kernel.add_scaled_terms(self.terms, other.terms, Fraction(1)),
                reduced=True,
            )
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, SpherePoly):
            self._check(other)
            return SpherePoly(
                self.n,
                _kernel.add_scaled_terms(self.terms, other.terms, Fraction(-1)),
                reduced=True,
            )
        return NotImplemented

    def __neg__(self):
        return self.scale(Fraction(-1))

    def __mul__(self, other):
        if isinstance(other, SpherePoly):
            self._check(other)
            raw = _kernel.mul_terms(self.terms, other.terms)
            return SpherePoly(self.n, raw)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a SpherePoly")
        out = SpherePoly.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "SpherePoly":
        return SpherePoly(self.n, _kernel.scale_terms(self.terms, c), reduced=True)

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Normal-form degree (-1 for the zero polynomial)."""
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, SpherePoly):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"SpherePoly(n={self.n}, {self})"

    def __str__(self):
        return self.canonical_str()

    def canonical_str(self) -> str:
        """Deterministic text form: graded-lex term order, 'p/q * x0^a0 ...'."""
        if not self.terms:
            return "0"
        chunks = []
        for e in sorted(self.terms, key=grlex_key):
            c = self.terms[e]
            mono = " ".join(f"x{i}^{k}" for i, k in enumerate(e) if k)
            cs = fmt_rat(c) if isinstance(c, Fraction) else str(c)
            chunks.append(f"{cs} * {mono}" if mono else cs)
        return " + ".join(chunks)

    # -- evaluation ---------------------------------------------------------

    def eval_exact(self, point):
        """Evaluate at an exact point (sequence of n+1 Fractions)."""
        total = None
        for e, c in self.terms.items():
            v = c
            for xi, k in zip(point, e):
                for _ in range(k):
                    v = v * xi
            total = v if total is None else total + v
        if total is None:
            return Fraction(0)
        return total

    def eval_array(self, points):
        """Vectorized float evaluation; points is an (K, n+1) ndarray."""
        import numpy as np

        out = np.zeros(points.shape[0])
        for e, c in self.terms.items():
            term = np.full(points.shape[0], float(c))
            for i, k in enumerate(e):
                if k:
                    term *= points[:, i] ** k
            out += term
        return out

    # -- calculus on the canonical representative ---------------------------

    def euler_raw(self) -> dict:
        return euler_terms(self.terms)

    def homogeneous_components(self) -> dict:
        return homogeneous_parts(self.terms)


# ---------------------------------------------------------------------------
# integration (normalized measure)
# ---------------------------------------------------------------------------


def moment_integral(exps: Monomial, n: int) -> Fraction:
    """Integral of the monomial x^exps over S^n in normalized measure.

    Zero for any odd exponent; for exps = 2*beta the value is
    prod_i (2 beta_i - 1)!! / prod_{s<|beta|} (n + 1 + 2 s).
    """
    if any(k % 2 for k in exps):
        return Fraction(0)
    num = 1
    half_total = 0
    for k in exps:
        b = k // 2
        half_total += b
        for t in range(1, b + 1):
            num *= 2 * t - 1
    den = 1
    for s in range(half_total):
        den *= n + 1 + 2 * s
    return Fraction(num, den)


def integrate(p: SpherePoly) -> Fraction:
    """Exact integral over the sphere, normalized measure."""
    total = Fraction(0)
    for e, c in p.terms.items():
        m = moment_integral(e, p.n)
        if m:
            total += c * m
    return total


# ---------------------------------------------------------------------------
# harmonic (Fischer) decomposition
# ---------------------------------------------------------------------------


class HarmonicDecomposition:
    """Canonical splitting of a sphere polynomial into restrictions of
    ambient-harmonic homogeneous polynomials, one part per degree."""

    __slots__ = ("n", "parts")

    def __init__(self, n: int, parts):
        self.n = n
        # parts: sorted list of (degree, raw ambient term map)
        self.parts = sorted(parts, key=lambda kv: kv[0])

    @property
    def degrees(self):
        return [d for d, _ in self.parts]

    def part(self, degree: int) -> dict:
        for d, h in self.parts:
            if d == degree:
                return h
        return {}

    def restricted(self, degree: int) -> SpherePoly:
        return SpherePoly(self.n, dict(self.part(degree)))

    def reassemble(self) -> SpherePoly:
        total = SpherePoly.zero(self.n)
        for _, h in self.parts:
            total = total + SpherePoly(self.n, dict(h))
        return total

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)


def _analyst_laplacian(terms: dict) -> dict:
    return {e: -c for e, c in ambient_laplacian_terms(terms).items()}


def _mul_raw(a: dict, b: dict) -> dict:
    return _kernel.mul_terms(a, b)


def _fischer_split_homogeneous(q: dict, d: int, n: int):
    """Fischer data of a homogeneous degree-d raw polynomial:
    q = sum_s r^{2s} h_{d-2s} with every h ambient-harmonic.

    Peels parts from iterated Laplacians, top lift power first, using the
    exact constant c(s,k) = 2s(2k + (n+1) + 2s - 2) in
    Delta+(r^{2s} h_k) = c(s,k) r^{2s-2} h_k.  No linear solves needed.
    """
    N = n + 1

    def c(s, k):
        return Fraction(2 * s * (2 * k + N + 2 * s - 2))

    m = d // 2
    residual = [q]
    for _ in range(m):
        residual.append(_analyst_laplacian(residual[-1]))
    r2 = r2_terms(n)
    parts = []  # (s, harmonic term map of degree d - 2s)
    for s in range(m, -1, -1):
        k = d - 2 * s
        top = Fraction(1)
        for v in range(1, s + 1):
            top *= c(v, k)
        h = {e: coe / top for e, coe in residual[s].items() if coe}
        if not h:
            continue
        parts.append((s, h))
        # subtract this part's image under Delta+^t from the lower iterates
        for t in range(s):
            factor = Fraction(1)
            for u in range(t):
                factor *= c(s - u, k)
            lift = h
            for _ in range(s - t):
                lift = _mul_raw(lift, r2)
            lift = {e: coe * factor for e, coe in lift.items()}
            residual[t] = _kernel.add_scaled_terms(residual[t], lift, Fraction(-1))
    return parts


def harmonic_decompose(p: SpherePoly) -> HarmonicDecomposition:
    """Decompose into restrictions of harmonic homogeneous polynomials.

    Parts at distinct degrees are unique because restrictions of harmonics
    of distinct degrees are linearly independent on the sphere; parts of
    equal degree coming from different components of the canonical
    representative are merged.
    """
    n = p.n
    merged: dict = {}
    for d, comp in p.homogeneous_components().items():
        for s, h in _fischer_split_homogeneous(comp, d, n):
            k = d - 2 * s
            if k in merged:
                merged[k] = _kernel.add_scaled_terms(merged[k], h, Fraction(1))
            else:
                merged[k] = h
    parts = [(k, h) for k, h in merged.items() if h]
    return HarmonicDecomposition(n, parts)


def harmonic_dimension(n: int, j: int) -> int:
    """Dimension of degree-j harmonic homogeneous polynomials in n+1
    variables (equivalently of the level-j eigenspace on S^n)."""
    if j < 0:
        return 0
    return comb(n + j, n) - (comb(n + j - 2, n) if j >= 2 else 0)


def harmonic_dimension_by_rank(n: int, j: int) -> int:
    """Independent oracle: kernel dimension of the ambient Laplacian on
    degree-j homogeneous polynomials, by exact rank of its matrix."""
    if j < 0:
        return 0
    dom = list(monomials_of_degree(n + 1, j))
    if j < 2:
        return len(dom)
    cod = {e: idx for idx, e in enumerate(monomials_of_degree(n + 1, j - 2))}
    rows = []
    for e in dom:
        img = ambient_laplacian_terms({e: Fraction(1)})
        row = [Fraction(0)] * len(cod)
        for f, c in img.items():
            row[cod[f]] = c
        rows.append(row)
    pivots = _kernel.rref(rows)
    return len(dom) - len(pivots)
