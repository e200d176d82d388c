"""Matrix/polynomial model of spinor fields and the Dirac operator on S^n.

The gamma matrices e_0..e_n (square -1, pairwise anticommuting) act on a
spinor space of dimension 2^floor((n+1)/2) and are built by the standard
tensor-product construction with exact Gaussian-rational entries.  A
polynomial spinor field is a vector of sphere polynomials with CRat
coefficients.

The Dirac operator is realized algebraically: with the angular operator
G = -sum_{i<j} e_i e_j (x_i d_j - x_j d_i) and Clifford multiplication by
the vector variable x = sum_i x_i e_i,

    P psi = x . (G - n/2) psi,   reduced to normal form.

On restrictions of degree-k monogenic polynomials M (harmonic,
annihilated by the Euclidean Dirac operator) one has G M = -k M and
G (x.M) = (k+n) x.M, so M -+ x.M are exact P-eigenspinors with
eigenvalues +-(n/2+k); this constant-spinor foothold replaces any
geometric construction, and the legitimacy of the model rests on the
identity suite it passes exactly (conformal covariance, the commutator
definitions of U_i and y_i, the square-sum identities, the spectral
bound).

For odd n the ambient spinor space is two copies of the intrinsic bundle,
so model multiplicities at odd n are doubled; eigenvalue positions and
all operator identities are unaffected.

Truncation-model cost grows like dim_spin times the count of normal-form
monomials of degree <= N+1 (the Dirac closure adds one degree).  Model
dimensions: n=2 gives 4/12/24 at N=0/1/2; n=3 gives 8/32/80.  The n=3,
N=2 identity suite is the most expensive deliverable (about a minute with
the compiled kernel, a couple with the fallback).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .linalg import (
    coords_in_span,
    coords_in_span_multi,
    mat_mul,
    mat_scale,
    nullspace,
    rref,
)
from .polynomial import (
    SpherePoly,
    integrate,
    monomials_of_degree,
    normal_monomials,
)
from .report import VerificationReport
from .scalars import CRat
from .scalar_ops import NotEigenfunctionError


# ---------------------------------------------------------------------------
# gamma matrices
# ---------------------------------------------------------------------------


def _kron(a, b):
    out = []
    for ra in a:
        for rb in b:
            out.append([x * y for x in ra for y in rb])
    return out


_SIGMA1 = [[CRat(0), CRat(1)], [CRat(1), CRat(0)]]
_SIGMA2 = [[CRat(0), CRat(0, -1)], [CRat(0, 1), CRat(0)]]
_SIGMA3 = [[CRat(1), CRat(0)], [CRat(0), CRat(-1)]]
_ID2 = [[CRat(1), CRat(0)], [CRat(0), CRat(1)]]


class GammaAlgebra:
    """Exact gamma matrices e_0..e_n with e_i e_j + e_j e_i = -2 delta_ij."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("n must be >= 2")
        self.n = n
        m = (n + 1) // 2
        self.dim_spin = 2 ** m
        hermitian = []
        for a in range(1, m + 1):
            for sig in (_SIGMA1, _SIGMA2):
                mat = [[CRat(1)]]
                for _ in range(a - 1):
                    mat = _kron(mat, _SIGMA3)
                mat = _kron(mat, sig)
                for _ in range(m - a):
                    mat = _kron(mat, _ID2)
                hermitian.append(mat)
        top = [[CRat(1)]]
        for _ in range(m):
            top = _kron(top, _SIGMA3)
        hermitian.append(top)
        i_unit = CRat(0, 1)
        self.matrices = [mat_scale(g, i_unit) for g in hermitian[: n + 1]]
        self._pair_cache: dict = {}

    def e(self, i: int):
        return self.matrices[i]

    def pair(self, i: int, j: int):
        """Cached product e_i e_j."""
        key = (i, j)
        if key not in self._pair_cache:
            self._pair_cache[key] = mat_mul(self.matrices[i], self.matrices[j])
        return self._pair_cache[key]

    def check_relations(self) -> bool:
        d = self.dim_spin
        for i in range(self.n + 1):
            for j in range(i, self.n + 1):
                anti = [
                    [self.pair(i, j)[r][c] + self.pair(j, i)[r][c] for c in range(d)]
                    for r in range(d)
                ]
                want = CRat(-2) if i == j else CRat(0)
                for r in range(d):
                    for c in range(d):
                        expect = want if r == c else CRat(0)
                        if anti[r][c] != expect:
                            return False
        return True


@lru_cache(maxsize=None)
def gamma_algebra(n: int) -> GammaAlgebra:
    return GammaAlgebra(n)


# ---------------------------------------------------------------------------
# spinor-valued polynomials
# ---------------------------------------------------------------------------


def _crat_poly(p: SpherePoly) -> SpherePoly:
    for v in p.terms.values():
        if isinstance(v, CRat):
            return p  # constructors keep coefficient types uniform
        break
    else:
        return p
    terms = {e: c if isinstance(c, CRat) else CRat(c) for e, c in p.terms.items()}
    return SpherePoly(p.n, terms, reduced=True)


class SpinorPoly:
    """Polynomial spinor field: dim_spin sphere polynomials, CRat coeffs."""

    __slots__ = ("n", "components", "_hash")

    def __init__(self, n: int, components):
        self.n = n
        self.components = tuple(_crat_poly(c) for c in components)
        self._hash = None
        want = gamma_algebra(n).dim_spin
        if len(self.components) != want:
            raise ValueError(f"expected {want} components, got {len(self.components)}")

    @classmethod
    def zero(cls, n: int) -> "SpinorPoly":
        d = gamma_algebra(n).dim_spin
        return cls(n, [SpherePoly.zero(n)] * d)

    @classmethod
    def unit(cls, n: int, slot: int, poly: SpherePoly | None = None) -> "SpinorPoly":
        d = gamma_algebra(n).dim_spin
        comps = [SpherePoly.zero(n)] * d
        comps[slot] = poly if poly is not None else SpherePoly.one(n)
        return cls(n, comps)

    def __add__(self, other: "SpinorPoly") -> "SpinorPoly":
        return SpinorPoly(
            self.n, [a + b for a, b in zip(self.components, other.components)]
        )

    def __sub__(self, other: "SpinorPoly") -> "SpinorPoly":
        return SpinorPoly(
            self.n, [a - b for a, b in zip(self.components, other.components)]
        )

    def __neg__(self):
        return self.scale(CRat(-1))

    def scale(self, c) -> "SpinorPoly":
        c = c if isinstance(c, CRat) else CRat(c)
        return SpinorPoly(self.n, [p.scale(c) for p in self.components])

    def poly_mul(self, f: SpherePoly) -> "SpinorPoly":
        return SpinorPoly(self.n, [f * p for p in self.components])

    def coordinate_mul(self, i: int) -> "SpinorPoly":
        xi = SpherePoly.coordinate(self.n, i)
        return SpinorPoly(self.n, [xi * p for p in self.components])

    def matrix_apply(self, mat) -> "SpinorPoly":
        d = len(self.components)
        out = []
        for r in range(d):
            acc = SpherePoly.zero(self.n)
            row = mat[r]
            for c in range(d):
                coeff = row[c]
                if coeff:
                    acc = acc + self.components[c].scale(coeff)
            out.append(acc)
        return SpinorPoly(self.n, out)

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for p in self.components)

    def degree(self) -> int:
        return max((p.degree() for p in self.components), default=-1)

    def __eq__(self, other):
        if isinstance(other, SpinorPoly):
            return self.n == other.n and self.components == other.components
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.components))
        return self._hash

    def __repr__(self):
        body = "; ".join(str(p) for p in self.components)
        return f"SpinorPoly(n={self.n}, [{body}])"


def clifford_x(psi: SpinorPoly) -> SpinorPoly:
    """Clifford multiplication by the vector variable sum_i x_i e_i."""
    alg = gamma_algebra(psi.n)
    out = SpinorPoly.zero(psi.n)
    for i in range(psi.n + 1):
        out = out + psi.matrix_apply(alg.e(i)).coordinate_mul(i)
    return out


def _angular_scalar(p: SpherePoly, i: int, j: int) -> SpherePoly:
    """x_i d_j - x_j d_i on one component (tangential, so well defined)."""
    from .polynomial import deriv_terms

    n = p.n
    dj = deriv_terms(p.terms, j)
    di = deriv_terms(p.terms, i)
    ei = [0] * (n + 1)
    ei[i] = 1
    ej = [0] * (n + 1)
    ej[j] = 1
    raw = {}
    for e, c in dj.items():
        ne = tuple(a + b for a, b in zip(e, ei))
        raw[ne] = raw.get(ne, 0) + c
    for e, c in di.items():
        ne = tuple(a + b for a, b in zip(e, ej))
        raw[ne] = raw.get(ne, 0) - c
    raw = {e: c for e, c in raw.items() if c}
    return SpherePoly(n, raw)


def angular_apply(psi: SpinorPoly) -> SpinorPoly:
    """The ambient angular operator - sum_{i<j} e_i e_j (x_i d_j - x_j d_i);
    acts by -k on restrictions of degree-k monogenics and by k+n on their
    Clifford-x images."""
    alg = gamma_algebra(psi.n)
    out = SpinorPoly.zero(psi.n)
    for i in range(psi.n + 1):
        for j in range(i + 1, psi.n + 1):
            rotated = SpinorPoly(
                psi.n, [_angular_scalar(p, i, j) for p in psi.components]
            )
            out = out + rotated.matrix_apply(alg.pair(i, j))
    return -out


_DIRAC_CACHE: dict = {}


def dirac_apply(psi: SpinorPoly) -> SpinorPoly:
    """The model Dirac operator P = x . (angular - n/2).

    Memoized: identity sweeps apply P to the same few spinors repeatedly.
    """
    hit = _DIRAC_CACHE.get(psi)
    if hit is not None:
        return hit
    half_n = Fraction(psi.n, 2)
    inner = angular_apply(psi) - psi.scale(half_n)
    out = clifford_x(inner)
    if len(_DIRAC_CACHE) > 20000:
        _DIRAC_CACHE.clear()
    _DIRAC_CACHE[psi] = out
    return out


def dirac_squared(psi: SpinorPoly) -> SpinorPoly:
    return dirac_apply(dirac_apply(psi))


def U_spin(i: int, psi: SpinorPoly) -> SpinorPoly:
    """U_i defined by the commutator (1/2)[P^2, x_i]."""
    a = dirac_squared(psi.coordinate_mul(i))
    b = dirac_squared(psi).coordinate_mul(i)
    return (a - b).scale(Fraction(1, 2))


def y_apply(i: int, psi: SpinorPoly) -> SpinorPoly:
    """y_i defined by the commutator [P, x_i]."""
    return dirac_apply(psi.coordinate_mul(i)) - dirac_apply(psi).coordinate_mul(i)


def is_eigenspinor(psi: SpinorPoly, lam) -> bool:
    lam = Fraction(lam)
    return (dirac_apply(psi) - psi.scale(lam)).is_zero


def dirac_eigenvalue(n: int, j: int, sign: int) -> Fraction:
    return sign * (Fraction(n, 2) + j)


def spinor_ladders(i: int, psi: SpinorPoly, lam, *, check: bool = True) -> tuple:
    """The three first-order moves out of a lam-eigenspinor:

        A_i = U_i + lam x_i + y_i/2   -> eigenvalue lam + 1
        S_i = U_i - lam x_i - y_i/2   -> eigenvalue lam - 1
        N_i = U_i - x_i/2  - lam y_i  -> eigenvalue -lam
    """
    lam = Fraction(lam)
    if check and not is_eigenspinor(psi, lam):
        raise NotEigenfunctionError(f"input is not a {lam}-eigenspinor")
    u = U_spin(i, psi)
    x = psi.coordinate_mul(i)
    y = y_apply(i, psi)
    a = u + x.scale(lam) + y.scale(Fraction(1, 2))
    s = u - x.scale(lam) - y.scale(Fraction(1, 2))
    nn = u - x.scale(Fraction(1, 2)) - y.scale(lam)
    return a, s, nn


# ---------------------------------------------------------------------------
# monogenic polynomials and exact eigenspinor bases
# ---------------------------------------------------------------------------


def monogenic_dimension(n: int, k: int) -> int:
    d = gamma_algebra(n).dim_spin
    if k == 0:
        return d
    return d * (comb(n + k, k) - comb(n + k - 1, k - 1))


@lru_cache(maxsize=None)
def _monogenic_basis_cached(n: int, k: int) -> tuple:
    """Restrictions of degree-k monogenics: exact kernel of the Euclidean
    Dirac operator on homogeneous degree-k spinor polynomials."""
    alg = gamma_algebra(n)
    d = alg.dim_spin
    monos = sorted(monomials_of_degree(n + 1, k))
    cols = [(c, e) for c in range(d) for e in monos]
    if k == 0:
        return tuple(SpinorPoly.unit(n, c) for c in range(d))
    col_index = {ce: idx for idx, ce in enumerate(cols)}
    lower = sorted(monomials_of_degree(n + 1, k - 1))
    rows = []
    for r in range(d):
        for f in lower:
            row = [CRat(0)] * len(cols)
            for i in range(n + 1):
                e = list(f)
                e[i] += 1
                e = tuple(e)
                mult = f[i] + 1
                for c in range(d):
                    g = alg.e(i)[r][c]
                    if g:
                        row[col_index[(c, e)]] += g * mult
            rows.append(row)
    basis_vecs = nullspace(rows, ncols=len(cols))
    expected = monogenic_dimension(n, k)
    if len(basis_vecs) != expected:
        raise AssertionError(
            f"monogenic kernel dimension {len(basis_vecs)} != {expected}"
        )
    out = []
    for vec in basis_vecs:
        comps = [dict() for _ in range(d)]
        for idx, coeff in enumerate(vec):
            if coeff:
                c, e = cols[idx]
                comps[c][e] = coeff
        out.append(SpinorPoly(n, [SpherePoly(n, t) for t in comps]))
    return tuple(out)


def monogenic_basis(n: int, k: int) -> list:
    return list(_monogenic_basis_cached(n, k))


@lru_cache(maxsize=None)
def _eigenspinor_basis_cached(n: int, j: int, sign: int) -> tuple:
    lam = dirac_eigenvalue(n, j, sign)
    out = []
    for m in _monogenic_basis_cached(n, j):
        xm = clifford_x(m)
        v = m - xm if sign > 0 else m + xm
        if not is_eigenspinor(v, lam):
            raise AssertionError(f"foothold vector fails the eigen test at {lam}")
        out.append(v)
    return tuple(out)


def eigenspinor_basis(n: int, j: int, sign: int) -> list:
    """Exact basis of the model eigenspace at eigenvalue sign*(n/2+j)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +-1")
    return list(_eigenspinor_basis_cached(n, j, sign))


def _spinor_vector(psi: SpinorPoly, index: dict) -> list:
    vec = [CRat(0)] * len(index)
    for c, p in enumerate(psi.components):
        for e, coeff in p.terms.items():
            vec[index[(c, e)]] = coeff
    return vec


def _spinor_index(n: int, max_degree: int) -> dict:
    d = gamma_algebra(n).dim_spin
    monos = normal_monomials(n, max_degree)
    return {(c, e): c * len(monos) + k for c in range(d) for k, e in enumerate(monos)}


def decompose_many_by_levels(psis: list, jmax: int) -> list:
    """Exact decomposition of several spinors into model eigenspinor
    components up to level jmax (both signs), sharing one echelon pass.
    Raises if any lies outside that sum."""
    if not psis:
        return []
    n = psis[0].n
    vec_basis = []
    cap = max(max(p.degree() for p in psis) + 1, jmax + 2)
    index = _spinor_index(n, cap)
    for j in range(jmax + 1):
        for sign in (1, -1):
            for b in _eigenspinor_basis_cached(n, j, sign):
                vec_basis.append(_spinor_vector(b, index))
    targets = [_spinor_vector(psi, index) for psi in psis]
    all_coeffs = coords_in_span_multi(vec_basis, targets)
    out = []
    for psi, coeffs in zip(psis, all_coeffs):
        if coeffs is None:
            raise ValueError("spinor is outside the requested level range")
        parts: dict = {}
        pos = 0
        for j in range(jmax + 1):
            for sign in (1, -1):
                acc = SpinorPoly.zero(n)
                nonzero = False
                for b in _eigenspinor_basis_cached(n, j, sign):
                    c = coeffs[pos]
                    pos += 1
                    if c:
                        acc = acc + b.scale(c)
                        nonzero = True
                if nonzero:
                    parts[(j, sign)] = acc
        out.append(parts)
    return out


def decompose_by_levels(psi: SpinorPoly, jmax: int) -> dict:
    """Exact decomposition of psi into model eigenspinor components up to
    level jmax (both signs).  Raises if psi lies outside that sum."""
    return decompose_many_by_levels([psi], jmax)[0]

# ---------------------------------------------------------------------------
# finite truncation models
# ---------------------------------------------------------------------------


@dataclass
class TruncationModel:
    """Exact matrices on the Dirac-closure of the degree<=N spinor monomials.

    The model space is span(W union P W) with W the degree<=N monomial
    spinors; it is P-invariant (certified during construction).  No finite
    space is invariant under coordinate multiplication, so the x_i/U_i/y_i
    matrices are exact L2-orthogonal compressions onto the model; between
    eigenspaces fully contained in the model they agree with the true
    compressions.
    """

    n: int
    N: int
    basis: list
    index: dict
    p_matrix: list  # p_matrix[i][j] = coefficient of basis_i in P(basis_j)
    _basis_rows: list
    _gram_inv: list | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _coords(self, psi: SpinorPoly) -> list:
        vec = _spinor_vector(psi, self.index)
        coeffs = coords_in_span(self._basis_rows, vec)
        if coeffs is None:
            raise ValueError("vector escapes the model space")
        return coeffs

    def operator_matrix(self, op) -> list:
        """Exact matrix of an operator that preserves the model space."""
        cols = [self._coords(op(b)) for b in self.basis]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def _gram_inverse(self) -> list:
        if self._gram_inv is None:
            d = self.dim
            gram = [
                [_spinor_inner(self.basis[a], self.basis[b]) for b in range(d)]
                for a in range(d)
            ]
            aug = [list(gram[i]) + [CRat(1) if k == i else CRat(0) for k in range(d)] for i in range(d)]
            pivots = rref(aug)
            if len(pivots) != d:
                raise AssertionError("model Gram matrix is singular")
            self._gram_inv = [row[d:] for row in aug]
        return self._gram_inv

    def compressed_matrix(self, op) -> list:
        """Exact orthogonal compression of an operator onto the model."""
        ginv = self._gram_inverse()
        d = self.dim
        cols = []
        for b in self.basis:
            img = op(b)
            pairings = [_spinor_inner(self.basis[a], img) for a in range(d)]
            cols.append([sum((ginv[i][k] * pairings[k] for k in range(d)), CRat(0)) for i in range(d)])
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def coordinate_matrix(self, i: int) -> list:
        return self.compressed_matrix(lambda s: s.coordinate_mul(i))

    def u_matrix(self, i: int) -> list:
        return self.compressed_matrix(lambda s: U_spin(i, s))

    def y_matrix(self, i: int) -> list:
        return self.compressed_matrix(lambda s: y_apply(i, s))

    # -- spectrum ---------------------------------------------------------

    def spectrum(self, snap_tol: float = 1e-9) -> list:
        """(eigenvalue, multiplicity, certified) rows.

        Numeric discovery first (dense complex eigensolver), snapping to
        the half-integer lattice within snap_tol; then exact certification
        by the kernel rank of (P - mu I) over CRat.
        """
        import numpy as np

        d = self.dim
        pm = np.array(
            [[complex(self.p_matrix[i][j]) for j in range(d)] for i in range(d)]
        )
        eigs = np.linalg.eigvals(pm)
        found = set()
        for z in eigs:
            if abs(z.imag) > snap_tol:
                raise AssertionError(f"non-real eigenvalue discovered: {z}")
            lam2 = Fraction(round(2 * z.real), 2)
            if abs(float(lam2) - z.real) > snap_tol:
                raise AssertionError(f"eigenvalue {z.real} off the lattice")
            found.add(lam2)
        rows = []
        total = 0
        for lam in sorted(found):
            shifted = [
                [
                    self.p_matrix[i][j] - (CRat(lam) if i == j else CRat(0))
                    for j in range(d)
                ]
                for i in range(d)
            ]
            kern = nullspace(shifted, ncols=d)
            mult = len(kern)
            certified = mult > 0
            for vec in kern:
                img = [
                    sum((self.p_matrix[i][j] * vec[j] for j in range(d)), CRat(0))
                    for i in range(d)
                ]
                if any(img[i] != CRat(lam) * vec[i] for i in range(d)):
                    certified = False
            total += mult
            rows.append((lam, mult, certified))
        if total != d:
            raise AssertionError("certified multiplicities do not fill the model")
        return rows

    def spectrum_csv(self) -> str:
        lines = ["eigenvalue,multiplicity,certified"]
        for lam, mult, cert in self.spectrum():
            lines.append(f"{lam},{mult},{str(cert).lower()}")
        return "\n".join(lines) + "\n"

    def matrix_json(self, which: str = "dirac") -> str:
        if which == "dirac":
            mat = self.p_matrix
        elif which.startswith("x"):
            mat = self.coordinate_matrix(int(which[1:]))
        elif which.startswith("u"):
            mat = self.u_matrix(int(which[1:]))
        elif which.startswith("y"):
            mat = self.y_matrix(int(which[1:]))
        else:
            raise ValueError(f"unknown matrix {which!r}")
        return json.dumps(
            {
                "dimension": self.n,
                "cap": self.N,
                "operator": which,
                "shape": [self.dim, self.dim],
                "field": "complex-rational",
                "rows": [[str(v) for v in row] for row in mat],
            },
            sort_keys=True,
        )


def _spinor_inner(a: SpinorPoly, b: SpinorPoly) -> CRat:
    """Exact L2 pairing integral of conj(a) . b over the sphere."""
    acc = CRat(0)
    for pa, pb in zip(a.components, b.components):
        conj_terms = {e: c.conjugate() for e, c in pa.terms.items()}
        prod = SpherePoly(a.n, conj_terms, reduced=True) * pb
        acc = acc + integrate(prod)
    return acc if isinstance(acc, CRat) else CRat(acc)


def truncation_matrices(n: int, N: int) -> TruncationModel:
    """Build the exact Dirac matrix model on the P-closure of the
    degree<=N spinor monomials."""
    if N < 0:
        raise ValueError("N must be >= 0")
    d = gamma_algebra(n).dim_spin
    index = _spinor_index(n, N + 2)
    seed = [
        SpinorPoly.unit(n, c, SpherePoly.monomial(n, e))
        for c in range(d)
        for e in normal_monomials(n, N)
    ]
    vectors = [_spinor_vector(s, index) for s in seed]
    # close under P, re-echelonizing until the rank stabilizes
    current = [list(v) for v in vectors]
    rref(current)
    current = [row for row in current if any(row)]
    basis = _rows_to_spinors(current, index, n)
    while True:
        images = [dirac_apply(b) for b in basis]
        stacked = [list(r) for r in current] + [
            _spinor_vector(im, index) for im in images
        ]
        rref(stacked)
        stacked = [row for row in stacked if any(row)]
        if len(stacked) == len(current):
            break
        current = stacked
        basis = _rows_to_spinors(current, index, n)
    # exact P matrix and the invariance certificate, one echelon pass
    dim = len(basis)
    images = [_spinor_vector(dirac_apply(b), index) for b in basis]
    cols = coords_in_span_multi(current, images)
    if any(c is None for c in cols):
        raise AssertionError("model space is not P-invariant")
    p_matrix = [[cols[j][i] for j in range(dim)] for i in range(dim)]
    return TruncationModel(
        n=n, N=N, basis=basis, index=index, p_matrix=p_matrix, _basis_rows=current
    )


def _rows_to_spinors(rows: list, index: dict, n: int) -> list:
    rev = {}
    for (c, e), pos in index.items():
        rev[pos] = (c, e)
    d = gamma_algebra(n).dim_spin
    out = []
    for row in rows:
        comps = [dict() for _ in range(d)]
        for pos, coeff in enumerate(row):
            if coeff:
                c, e = rev[pos]
                comps[c][e] = coeff
        out.append(SpinorPoly(n, [SpherePoly(n, t, reduced=True) for t in comps]))
    return out


# ---------------------------------------------------------------------------
# cubic-descent refutation for the Dirac lattice
# ---------------------------------------------------------------------------


def refute_dirac_candidate(n: int, lam) -> list:
    """Descend from an off-lattice Dirac eigenvalue candidate through the
    lam - 1 branch until the spectral bound lam^2 >= n(n-1)/4 fails.

    Works on |lam| (the spectrum is symmetric); the forbidden band has
    width sqrt(n(n-1)) > 1, so unit steps cannot jump over it.
    """
    lam = abs(Fraction(lam))
    t = lam - Fraction(n, 2)
    if t.denominator == 1 and t >= 0:
        raise ValueError(f"{lam} is the level-{int(t)} Dirac eigenvalue on S^{n}")
    bound = Fraction(n * (n - 1), 4)
    chain = [lam]
    cur = lam
    for _ in range(int(lam) + 2):
        cur = cur - 1
        chain.append(cur)
        if cur * cur < bound:
            return chain
    raise AssertionError("descent failed to violate the bound")


# ---------------------------------------------------------------------------
# identity verification suite
# ---------------------------------------------------------------------------


def verify_spinor_identities(n: int, N: int, k_max: int = 2) -> VerificationReport:
    """Exact verification of every spinor operator identity.

    Operator identities are applied exactly to the full spinor monomial
    basis of degree <= N (no truncation artifacts); eigenspace statements
    run on the exact model eigenbases; the spectrum statements run on the
    certified truncation model.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    report = VerificationReport(scope="spinor", n=n, degree_cap=N)
    alg = gamma_algebra(n)
    report.add(
        "clifford_relations",
        "e_i e_j + e_j e_i = -2 delta_ij",
        alg.check_relations(),
    )

    d = alg.dim_spin
    basis = [
        SpinorPoly.unit(n, c, SpherePoly.monomial(n, e))
        for c in range(d)
        for e in normal_monomials(n, N)
    ]

    def sweep(func):
        for psi in basis:
            res = func(psi)
            if not res.is_zero:
                return {"basis_vector": repr(psi)}
        return None

    half = Fraction(1, 2)

    def ccp(psi):
        acc = SpinorPoly.zero(n)
        for i in range(n + 1):
            pd = dirac_apply(psi)
            lhs = dirac_apply(U_spin(i, psi) - psi.coordinate_mul(i).scale(half))
            rhs = U_spin(i, pd) + pd.coordinate_mul(i).scale(half)
            diff = lhs - rhs
            if not diff.is_zero:
                return diff
        return acc

    cx = sweep(ccp)
    report.add(
        "dirac_conformal_covariance", "P (U_i - x_i/2) = (U_i + x_i/2) P", cx is None, cx
    )

    def ysq(psi):
        acc = SpinorPoly.zero(n)
        for i in range(n + 1):
            acc = acc + y_apply(i, y_apply(i, psi))
        return acc + psi.scale(Fraction(n))

    cx = sweep(ysq)
    report.add("y_square_sum", "sum_i y_i^2 = -n", cx is None, cx)

    def xy_left(psi):
        acc = SpinorPoly.zero(n)
        for i in range(n + 1):
            acc = acc + y_apply(i, psi).coordinate_mul(i)
        return acc

    def xy_right(psi):
        acc = SpinorPoly.zero(n)
        for i in range(n + 1):
            acc = acc + y_apply(i, psi.coordinate_mul(i))
        return acc

    cx = sweep(xy_left)
    report.add("coordinate_y_sum", "sum_i x_i y_i = 0", cx is None, cx)
    cx = sweep(xy_right)
    report.add("y_coordinate_sum", "sum_i y_i x_i = 0", cx is None, cx)

    def uy(psi):
        acc = SpinorPoly.zero(n)
        for i in range(n + 1):
            acc = acc + U_spin(i, y_apply(i, psi)) - y_apply(i, U_spin(i, psi))
        return acc

    cx = sweep(uy)
    report.add("uy_commutator_sum", "sum_i [U_i, y_i] = 0", cx is None, cx)

    def usq(psi):
        acc = SpinorPoly.zero(n)
        for i in range(n + 1):
            acc = acc + U_spin(i, U_spin(i, psi))
        return acc + dirac_squared(psi) + psi.scale(Fraction(n, 4))

    cx = sweep(usq)
    report.add("u_square_sum_spinor", "sum_i U_i^2 = -P^2 - n/4", cx is None, cx)

    for a in (Fraction(1), Fraction(-1), Fraction(3, 2)):

        def orth(psi, a=a):
            acc = SpinorPoly.zero(n)
            for i in range(n + 1):
                shifted = U_spin(i, psi) + psi.coordinate_mul(i).scale(a)
                acc = acc + U_spin(i, shifted) + shifted.coordinate_mul(i).scale(a)
            return acc - psi.scale(a * a) + dirac_squared(psi) + psi.scale(Fraction(n, 4))

        cx = sweep(orth)
        report.add(
            f"shifted_square_sum_spinor_a={a}",
            "sum_i (U_i + a x_i)^2 = a^2 - P^2 - n/4",
            cx is None,
            cx,
        )

    # odd polynomial intertwinors (exact operator check, orders <= 2k+1)
    def poly_in_dirac(psi, k):
        out = dirac_apply(psi)
        for q in range(1, k + 1):
            out = dirac_squared(out) - out.scale(Fraction(q * q))
        return out

    for k in range(k_max + 1):
        shift = Fraction(2 * k + 1, 2)
        bad = None
        for psi in basis:
            for i in range(n + 1):
                lhs = poly_in_dirac(
                    U_spin(i, psi) - psi.coordinate_mul(i).scale(shift), k
                )
                pk = poly_in_dirac(psi, k)
                rhs = U_spin(i, pk) + pk.coordinate_mul(i).scale(shift)
                if not (lhs - rhs).is_zero:
                    bad = {"basis_vector": repr(psi), "index": i}
                    break
            if bad:
                break
        report.add(
            f"odd_intertwinor_k={k}",
            "P_(2k+1) (U_i - (k+1/2) x_i) = (U_i + (k+1/2) x_i) P_(2k+1)",
            bad is None,
            bad,
        )

    # eigenspace statements
    jmax = min(N, 2)
    for j in range(jmax + 1):
        for sign in (1, -1):
            lam = dirac_eigenvalue(n, j, sign)
            ok = True
            for psi in eigenspinor_basis(n, j, sign):
                sa = SpinorPoly.zero(n)
                as_ = SpinorPoly.zero(n)
                nn_ = SpinorPoly.zero(n)
                for i in range(n + 1):
                    A, S, Nv = spinor_ladders(i, psi, lam, check=False)
                    if not (
                        is_eigenspinor(A, lam + 1)
                        and is_eigenspinor(S, lam - 1)
                        and is_eigenspinor(Nv, -lam)
                    ):
                        ok = False
                    _, S2, _ = spinor_ladders(i, A, lam + 1, check=False)
                    sa = sa + S2
                    A3, _, _ = spinor_ladders(i, S, lam - 1, check=False)
                    as_ = as_ + A3
                    _, _, N4 = spinor_ladders(i, Nv, -lam, check=False)
                    nn_ = nn_ + N4
                ok = ok and (
                    (sa - psi.scale(-2 * (lam + Fraction(n, 2)) * (lam + half))).is_zero
                    and (as_ - psi.scale(-2 * (lam - Fraction(n, 2)) * (lam - half))).is_zero
                    and (nn_ - psi.scale((n - 1) * (lam + half) * (lam - half))).is_zero
                )
                if not ok:
                    break
            report.add(
                f"ladder_suite_j={j}_sign={sign}",
                "ladder targets and the three summed factors",
                ok,
                None if ok else {"level": j, "sign": sign},
            )

    # compression and adjacency through exact level decomposition
    comp_ok = True
    adj_ok = True
    comp_cx = None
    for j in range(min(N, 1) + 1):
        for sign in (1, -1):
            lam = dirac_eigenvalue(n, j, sign)
            cases = []
            targets = []
            for psi in eigenspinor_basis(n, j, sign)[:2]:
                for i in range(n + 1):
                    cases.append(i)
                    targets.append(psi.coordinate_mul(i))
                    targets.append(U_spin(i, psi))
            decomposed = decompose_many_by_levels(targets, j + 1)
            for t in range(len(cases)):
                i = cases[t]
                parts_x = decomposed[2 * t]
                parts_u = decomposed[2 * t + 1]
                allowed = {lam + 1, lam - 1, -lam}
                for (jj, ss), comp in parts_x.items():
                    mu = dirac_eigenvalue(n, jj, ss)
                    if mu not in allowed and not comp.is_zero:
                        adj_ok = False
                for (jj, ss) in set(parts_x) | set(parts_u):
                    mu = dirac_eigenvalue(n, jj, ss)
                    cu = parts_u.get((jj, ss), SpinorPoly.zero(n))
                    cxp = parts_x.get((jj, ss), SpinorPoly.zero(n))
                    factor = (mu * mu - lam * lam) / 2
                    if not (cu - cxp.scale(factor)).is_zero:
                        comp_ok = False
                        comp_cx = {"level": j, "sign": sign, "index": i, "target": str(mu)}
    report.add(
        "compressed_u_is_gap_times_x",
        "U_i between eigenspaces = ((mu^2-lam^2)/2) x_i",
        comp_ok,
        comp_cx,
    )
    report.add(
        "coordinate_adjacency",
        "x_i E(lam) lies in E(lam+1) + E(lam-1) + E(-lam)",
        adj_ok,
    )

    # span identity: x_i, P x_i, P^2 x_i images fill the adjacent sum
    span_ok = True
    for j in range(min(N, 1) + 1):
        for sign in (1, -1):
            lam = dirac_eigenvalue(n, j, sign)
            span_ok = span_ok and _span_rank_identity(n, j, sign)
    report.add(
        "adjacent_span_rank",
        "span{x_i E, P x_i E, P^2 x_i E} = E(lam+1) + E(lam-1) + E(-lam)",
        span_ok,
    )

    # certified truncation spectrum on the lattice + the spectral bound
    model = truncation_matrices(n, min(N, 2))
    rows = model.spectrum()
    lattice_ok = all(
        (abs(lam) - Fraction(n, 2)).denominator == 1 and abs(lam) >= Fraction(n, 2)
        for lam, _, _ in rows
    )
    certified_ok = all(cert for _, _, cert in rows)
    licz_ok = all(lam * lam >= Fraction(n * (n - 1), 4) for lam, _, _ in rows)
    report.add(
        "truncation_spectrum_lattice",
        "certified truncation spectrum lies on +-(n/2+j)",
        lattice_ok and certified_ok,
    )
    report.add(
        "spectral_bound", "lam^2 >= n(n-1)/4 on the model spectrum", licz_ok
    )
    return report


def _span_rank_identity(n: int, j: int, sign: int) -> bool:
    """Exact rank check that the coordinate images of an eigenspace,
    together with their first and second Dirac images, span exactly the
    three adjacent eigenspaces."""
    lam = dirac_eigenvalue(n, j, sign)
    source = eigenspinor_basis(n, j, sign)
    generated = []
    for psi in source:
        for i in range(n + 1):
            v = psi.coordinate_mul(i)
            pv = dirac_apply(v)
            ppv = dirac_apply(pv)
            generated.extend([v, pv, ppv])
    targets = []
    target_dim = 0
    for mu_j, mu_sign in _adjacent_levels(n, j, sign):
        basis = eigenspinor_basis(n, mu_j, mu_sign)
        targets.extend(basis)
        target_dim += len(basis)
    cap = max(v.degree() for v in generated) + 1
    index = _spinor_index(n, cap)
    gen_rows = [_spinor_vector(v, index) for v in generated]
    tgt_rows = [_spinor_vector(v, index) for v in targets]
    work = [list(r) for r in gen_rows]
    rank_gen = len(rref(work))
    if rank_gen != target_dim:
        return False
    # containment both ways: generated subset of targets, and ranks equal
    solved = coords_in_span_multi(tgt_rows, gen_rows)
    return all(s is not None for s in solved)


def _adjacent_levels(n: int, j: int, sign: int):
    """Model levels adjacent to (j, sign): eigenvalues lam+1, lam-1, -lam
    that actually occur on the lattice."""
    lam = dirac_eigenvalue(n, j, sign)
    out = []
    for mu in (lam + 1, lam - 1, -lam):
        t = abs(mu) - Fraction(n, 2)
        if t.denominator == 1 and t >= 0:
            out.append((int(t), 1 if mu > 0 else -1))
    return out
