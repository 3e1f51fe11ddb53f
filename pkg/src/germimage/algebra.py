"""Exact predicates on zero sets at the origin.

Multivariate gcd (recursive content / primitive-part reduction with a
subresultant polynomial remainder sequence in a chosen main variable),
squarefree parts, the germ-inclusion test for zero sets at 0, the gcd
decomposition f = h*fhat, g = h*ghat, and the Jacobian rank test.

No irreducible factorization anywhere: germ inclusion of zero sets is
decided by the squarefree/gcd/constant-term trick.  Factors of ``p`` that
do not divide ``q`` survive into the quotient ``r``; ``r(0) != 0`` exactly
when none of them passes through the origin.

Dimension convention: two hypersurface germs through 0 in C^n intersect in
dimension n-2 exactly when their equations share no factor vanishing at 0
(Krull height: the intersection has codimension at most 2 everywhere, and
codimension exactly 2 at 0 unless a common component passes through 0).
That reduces the dimension dichotomy to the constant term of gcd(f, g).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import GcdUndefinedError, PreconditionError
from .poly import MapGerm, Polynomial

# ---------------------------------------------------------------------------
# univariate views: coefficient lists in a chosen main variable
# ---------------------------------------------------------------------------


def _coeffs_in(p, var):
    """Coefficients of ``p`` as a univariate polynomial in ``var``.

    Index = power of ``var``; entries are polynomials (same ring) with zero
    exponent on ``var``.
    """
    d = p.max_degree_in(var)
    buckets = [{} for _ in range(d + 1)]
    for m, c in p.terms:
        rest = tuple(x if i != var else 0 for i, x in enumerate(m))
        buckets[m[var]][rest] = c
    return [Polynomial(p.nvars, b) for b in buckets]


def _from_coeffs(coeffs, var, nvars):
    acc = {}
    for e, poly in enumerate(coeffs):
        for m, c in poly.terms:
            acc[tuple(x if i != var else e for i, x in enumerate(m))] = c
    return Polynomial(nvars, acc)


def _strip(coeffs):
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _prem(a, b):
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, on coefficient lists."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    steps_left = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        k = len(r) - 1 - db
        nxt = [lb * c for c in r]
        for i in range(db + 1):
            nxt[i + k] = nxt[i + k] - lr * b[i]
        nxt.pop()  # the top coefficient cancels exactly
        r = _strip(nxt)
        steps_left -= 1
    if steps_left > 0 and r:
        f = lb**steps_left
        r = [f * c for c in r]
    return r


def _subresultant_prs(a, b, nvars):
    """Last nonzero member of the subresultant PRS of primitive lists a, b.

    Returns ``None`` when the primitive parts are coprime (constant
    remainder reached), otherwise a coefficient list whose primitive part
    is the gcd.  deg a >= deg b >= 1 on entry.  All interior divisions are
    exact by the subresultant theory over a UFD.
    """
    one = Polynomial.one(nvars)
    g, h = one, one
    while True:
        delta = (len(a) - 1) - (len(b) - 1)
        r = _prem(a, b)
        if not r:
            return b
        if len(r) == 1:
            return None
        divisor = g * h**delta
        a = b
        b = [c.exact_divide(divisor) for c in r]
        g = a[-1]
        if delta > 0:
            h = (g**delta).exact_divide(h ** (delta - 1))


# ---------------------------------------------------------------------------
# gcd
# ---------------------------------------------------------------------------


def gcd_many(polys):
    """Iterated pairwise gcd of a sequence; zero entries are ignored."""
    nz = [p for p in polys if not p.is_zero()]
    if not nz:
        raise GcdUndefinedError("gcd of all-zero inputs is undefined")
    g = nz[0].monic()
    for p in nz[1:]:
        if g.is_constant():
            break
        g = gcd(g, p)
    return g


def _content_and_pp(p, var):
    cont = gcd_many(_coeffs_in(p, var))
    return cont, p.exact_divide(cont)


def _pick_main_var(p, q):
    shared = set(p.variables_used()) & set(q.variables_used())
    pool = shared or (set(p.variables_used()) | set(q.variables_used()))
    return min(
        pool,
        key=lambda v: (
            min(p.max_degree_in(v), q.max_degree_in(v)),
            p.max_degree_in(v) + q.max_degree_in(v),
            v,
        ),
    )


def gcd(p, q):
    """A greatest common divisor, normalized to leading coefficient 1.

    ``gcd(p, 0)`` is the normalization of ``p``; both arguments zero is an
    error.
    """
    if not isinstance(q, Polynomial) or not isinstance(p, Polynomial):
        raise TypeError("gcd expects Polynomial arguments")
    if p.is_zero() and q.is_zero():
        raise GcdUndefinedError("gcd(0, 0) is undefined")
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    p._check_same_ring(q)
    if p.is_constant() or q.is_constant():
        return Polynomial.one(p.nvars)

    var = _pick_main_var(p, q)
    ca, pa = _content_and_pp(p, var)
    cb, pb = _content_and_pp(q, var)
    c = gcd(ca, cb)

    la = _coeffs_in(pa, var)
    lb = _coeffs_in(pb, var)
    if len(la) < len(lb):
        la, lb = lb, la
    if len(lb) == 1:
        # a primitive polynomial of degree 0 in the main variable is constant
        return c.monic()
    res = _subresultant_prs(la, lb, p.nvars)
    if res is None:
        return c.monic()
    r = _from_coeffs(res, var, p.nvars)
    _, rp = _content_and_pp(r, var)
    return (rp * c).monic()


def squarefree_part(p):
    """``p`` divided by gcd(p, dp/dx_1, ..., dp/dx_n).

    Same zero set as ``p``, no repeated irreducible factors.
    """
    if p.is_zero():
        raise PreconditionError("squarefree part of the zero polynomial")
    g = gcd_many([p] + [p.partial_derivative(i) for i in range(p.nvars)])
    return p.exact_divide(g)


def zero_set_germ_included(p, q):
    """Is the germ at 0 of Z(p) included in the germ at 0 of Z(q)?

    True iff every irreducible factor of ``p`` vanishing at the origin
    divides ``q``.  Factors away from the origin are irrelevant to the germ
    and may survive in the quotient.
    """
    if p.is_zero() or q.is_zero():
        raise PreconditionError("germ inclusion needs nonzero polynomials")
    p._check_same_ring(q)
    s = squarefree_part(p)
    r = s.exact_divide(gcd(s, q))
    return not r.constant_term().is_zero()


# ---------------------------------------------------------------------------
# gcd decomposition and the dimension dichotomy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GcdDecomposition:
    """f = h*f_hat, g = h*g_hat with h = gcd(f, g) monic and coprime cofactors."""

    h: Polynomial
    f_hat: Polynomial
    g_hat: Polynomial
    f_hat_is_unit: bool
    g_hat_is_unit: bool


def decompose(germ):
    h = gcd(germ.f, germ.g)
    f_hat = germ.f.exact_divide(h)
    g_hat = germ.g.exact_divide(h)
    return GcdDecomposition(
        h=h,
        f_hat=f_hat,
        g_hat=g_hat,
        f_hat_is_unit=f_hat.is_unit_germ(),
        g_hat_is_unit=g_hat.is_unit_germ(),
    )


class IntersectionCase(enum.Enum):
    CODIM_TWO = "CodimTwo"
    CODIM_ONE = "CodimOne"


def intersection_dimension_case(germ, dec):
    """Dimension of the germ of Z(f) n Z(g) at 0: n-2 iff h(0) != 0."""
    if dec.h.is_unit_germ():
        return IntersectionCase.CODIM_TWO
    return IntersectionCase.CODIM_ONE


# ---------------------------------------------------------------------------
# Jacobian rank
# ---------------------------------------------------------------------------


def jacobian_minor(germ, i, j):
    """The 2x2 minor df/dx_i * dg/dx_j - df/dx_j * dg/dx_i."""
    fi = germ.f.partial_derivative(i)
    fj = germ.f.partial_derivative(j)
    gi = germ.g.partial_derivative(i)
    gj = germ.g.partial_derivative(j)
    return fi * gj - fj * gi


def first_nonzero_minor(germ):
    """First (i, j) with a nonzero minor, with that minor, else None.

    Deterministic scan order: (0,1), (0,2), ..., (1,2), ...
    """
    fp = [germ.f.partial_derivative(i) for i in range(germ.n)]
    gp = [germ.g.partial_derivative(i) for i in range(germ.n)]
    for i in range(germ.n):
        for j in range(i + 1, germ.n):
            m = fp[i] * gp[j] - fp[j] * gp[i]
            if not m.is_zero():
                return (i, j), m
    return None


def jacobian_rank_deficient(germ):
    """All 2x2 Jacobian minors vanish identically (vacuously true for n = 1)."""
    return first_nonzero_minor(germ) is None
