"""Pure-Python hot kernels: sparse term-map arithmetic and row echelon.

These are the inner loops everything else reduces to: merging sparse
exponent-keyed term maps, rewriting even powers of x0 through the sphere
relation, and exact Gaussian elimination.  A compiled twin with the same
signatures lives in ``_kernel_cy``; ``speclab._kernel`` picks one at
import time.  The functions here are coefficient-generic (anything with
field arithmetic works: Fraction, CRat, float), which is what the
compiled twin gives up in exchange for speed.
"""

from __future__ import annotations

from math import comb, factorial

BACKEND = "python"


def add_scaled_terms(a: dict, b: dict, c) -> dict:
    """Return a + c*b as a fresh term map (zero coefficients dropped)."""
    out = dict(a)
    if not c:
        return out
    for e, cb in b.items():
        prev = out.get(e)
        if prev is None:
            out[e] = c * cb
        else:
            s = prev + c * cb
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def scale_terms(a: dict, c) -> dict:
    if not c:
        return {}
    return {e: c * v for e, v in a.items()}


def mul_terms(a: dict, b: dict) -> dict:
    """Raw sparse product (no sphere reduction)."""
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = ca * cb
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                s = prev + c
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


# cache of the expansions (1 - x1^2 - ... - xn^2)^k, keyed by (n, k);
# entries are lists of (exponent tuple, integer coefficient)
_POW_CACHE: dict = {}


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _pow_one_minus_s(n: int, k: int):
    key = (n, k)
    hit = _POW_CACHE.get(key)
    if hit is not None:
        return hit
    rows = []
    for t in range(k + 1):
        base = comb(k, t) * (-1) ** t
        for beta in _compositions(t, n):
            coeff = base * factorial(t)
            for bi in beta:
                coeff //= factorial(bi)
            exps = (0,) + tuple(2 * bi for bi in beta)
            rows.append((exps, coeff))
    _POW_CACHE[key] = rows
    return rows


def reduce_terms(terms: dict, n: int) -> dict:
    """Canonical form modulo the sphere relation: x0^2 -> 1 - sum x_i^2.

    The quotient ring is free over {1, x0} as a module over the other
    variables, so splitting each exponent e0 = 2k + r and expanding
    (1 - s)^k is exactly the unique division remainder.
    """
    out: dict = {}
    for e, c in terms.items():
        e0 = e[0]
        if e0 < 2:
            prev = out.get(e)
            if prev is None:
                if c:
                    out[e] = c
            else:
                s = prev + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            continue
        k, r = divmod(e0, 2)
        for pe, pc in _pow_one_minus_s(n, k):
            ne = (r,) + tuple(x + y for x, y in zip(e[1:], pe[1:]))
            cc = c * pc
            prev = out.get(ne)
            if prev is None:
                if cc:
                    out[ne] = cc
            else:
                s = prev + cc
                if s:
                    out[ne] = s
                else:
                    del out[ne]
    return out


def rref(rows: list) -> list:
    """In-place reduced row echelon form; returns the pivot column list.

    Works over any exact field.  Deterministic: scans columns left to
    right, takes the first nonzero entry as pivot.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    nrows = len(rows)
    for col in range(ncols):
        if r == nrows:
            break
        pr = None
        for i in range(r, nrows):
            if rows[i][col]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        inv = prow[col]
        if inv != 1:
            rows[r] = prow = [v / inv for v in prow]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][col]
            if f:
                ri = rows[i]
                rows[i] = [x - f * y if y else x for x, y in zip(ri, prow)]
        pivots.append(col)
        r += 1
    return pivots


def frac_rref(rows: list) -> list:
    """Fraction-specialized alias (the compiled twin accelerates this one)."""
    return rref(rows)
