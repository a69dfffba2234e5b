"""Integer and rational polynomial arithmetic.

Polynomials are stored densely, lowest degree first.  Integer polynomials
get a small wrapper type (IntPolynomial); throwaway rational polynomials
are plain lists of Fractions.  Everything here is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import IrreducibilityUndecided, NotMonic, NotSquarefree, ReduciblePolynomial


@dataclass(frozen=True)
class IntPolynomial:
    """A polynomial with integer coefficients, lowest degree first."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        if len(cs) == 0:
            cs = (0,)
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return self.leading == 1

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def evaluate(self, x):
        acc = Fraction(0) if isinstance(x, Fraction) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        if self.degree == 0:
            return IntPolynomial((0,))
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def rational_coeffs(self) -> list:
        return [Fraction(c) for c in self.coeffs]

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c)) + "*"
                term = f"{mag}x" if i == 1 else f"{mag}x^{i}"
            if not terms:
                terms.append(term if c > 0 else "-" + term)
            else:
                terms.append(("+ " if c > 0 else "- ") + term)
        return " ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# dense rational polynomial helpers (lists of Fraction, lowest degree first)

def ptrim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def pdeg(p):
    return len(p) - 1


def pis_zero(p):
    return all(c == 0 for c in p)


def padd(p, q):
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return ptrim(out)


def psub(p, q):
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] -= c
    return ptrim(out)


def pmul(p, q):
    if pis_zero(p) or pis_zero(q):
        return [Fraction(0)]
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return ptrim(out)


def pscale(p, s):
    return ptrim([c * s for c in p])


def pdivmod(p, q):
    """Exact division with remainder over Q."""
    if pis_zero(q):
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in p]
    quo = [Fraction(0)] * max(1, len(p) - len(q) + 1)
    dq = pdeg(q)
    lead = q[-1]
    while not pis_zero(rem) and pdeg(rem) >= dq:
        shift = pdeg(rem) - dq
        factor = rem[-1] / lead
        quo[shift] += factor
        for i in range(len(q)):
            rem[shift + i] -= factor * q[i]
        ptrim(rem)
    return ptrim(quo), ptrim(rem)


def pmod(p, q):
    return pdivmod(p, q)[1]


def pmonic(p):
    if pis_zero(p):
        return [Fraction(0)]
    return pscale(p, Fraction(1) / p[-1])


def pgcd(p, q):
    """Monic gcd over Q."""
    a = [Fraction(c) for c in p]
    b = [Fraction(c) for c in q]
    while not pis_zero(b):
        a, b = b, pmod(a, b)
    return pmonic(a)


def pxgcd(p, q):
    """Extended gcd over Q: returns (g, s, t) with s*p + t*q = g, g monic."""
    a = [Fraction(c) for c in p]
    b = [Fraction(c) for c in q]
    sa, sb = [Fraction(1)], [Fraction(0)]
    ta, tb = [Fraction(0)], [Fraction(1)]
    while not pis_zero(b):
        quo, rem = pdivmod(a, b)
        a, b = b, rem
        sa, sb = sb, psub(sa, pmul(quo, sb))
        ta, tb = tb, psub(ta, pmul(quo, tb))
    if pis_zero(a):
        return a, sa, ta
    lead = a[-1]
    inv = Fraction(1) / lead
    return pscale(a, inv), pscale(sa, inv), pscale(ta, inv)


def pderiv(p):
    if len(p) <= 1:
        return [Fraction(0)]
    return ptrim([Fraction(i) * p[i] for i in range(1, len(p))])


def peval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def is_squarefree(p: IntPolynomial) -> bool:
    g = pgcd(p.rational_coeffs(), pderiv(p.rational_coeffs()))
    return pdeg(g) == 0


# ---------------------------------------------------------------------------
# Sturm sequences and sign bookkeeping

def sturm_chain(p):
    """Sturm chain of a squarefree rational polynomial."""
    chain = [list(p), pderiv(p)]
    while not pis_zero(chain[-1]) and pdeg(chain[-1]) > 0:
        rem = pmod(chain[-2], chain[-1])
        if pis_zero(rem):
            break
        chain.append(pscale(rem, Fraction(-1)))
    return [c for c in chain if not pis_zero(c)]


def sign_variations(values):
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(chain, a, b):
    """Number of real roots in (a, b] for the squarefree polynomial."""
    va = sign_variations([peval(c, a) for c in chain])
    vb = sign_variations([peval(c, b) for c in chain])
    return va - vb


def root_bound(p: IntPolynomial) -> Fraction:
    """Cauchy bound: every real root lies in (-M, M)."""
    lead = abs(p.leading)
    m = max((abs(c) for c in p.coeffs[:-1]), default=0)
    return Fraction(m, lead) + 1


# ---------------------------------------------------------------------------
# irreducibility over Q (monic integer polynomials, desk-scale degrees)

_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
    67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137,
    139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199,
)


def _mp_trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _mp_mod(p, f, q):
    """Reduce p modulo the monic polynomial f, coefficients mod q."""
    p = _mp_trim([c % q for c in p])
    df = len(f) - 1
    while len(p) - 1 >= df and any(p):
        shift = len(p) - 1 - df
        top = p[-1]
        for i in range(len(f)):
            p[shift + i] = (p[shift + i] - top * f[i]) % q
        _mp_trim(p)
    return p


def _mp_mul(a, b, f, q):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return _mp_mod(out, f, q)


def _mp_pow_x(e, f, q):
    """x^e modulo (f, q) by square and multiply."""
    result = [1]
    base = _mp_mod([0, 1], f, q)
    while e:
        if e & 1:
            result = _mp_mul(result, base, f, q)
        base = _mp_mul(base, base, f, q)
        e >>= 1
    return result


def _mp_gcd(a, b, q):
    a = [c % q for c in a]
    b = [c % q for c in b]
    _mp_trim(a)
    _mp_trim(b)
    while any(b):
        inv = pow(b[-1], -1, q)
        b_m = [(c * inv) % q for c in b]
        a = _mp_mod(a, b_m, q)
        a, b = b, a
    if any(a):
        inv = pow(a[-1], -1, q)
        a = [(c * inv) % q for c in a]
    return a


def _factor_degrees_mod_p(poly: IntPolynomial, p: int):
    """Degrees of the irreducible factors of poly mod p, or None if the
    reduction is not squarefree (bad prime)."""
    f = [c % p for c in poly.coeffs]
    if f[-1] % p == 0:
        return None
    deriv = [(i * c) % p for i, c in enumerate(f)][1:] or [0]
    if len(_mp_gcd(list(f), list(deriv), p)) > 1:
        return None
    degrees = []
    work = list(f)
    d = 1
    while len(work) - 1 >= 2 * d:
        xq = _mp_pow_x(p ** d, work, p)
        xq = [(-c) % p for c in xq]
        if len(xq) < 2:
            xq = xq + [0] * (2 - len(xq))
        xq[1] = (xq[1] + 1) % p
        g = _mp_gcd(work, _mp_trim(list(xq)), p)
        if len(g) > 1:
            deg_g = len(g) - 1
            degrees.extend([d] * (deg_g // d))
            quo = _poly_div_mod_p(work, g, p)
            work = quo
        d += 1
    if len(work) > 1:
        degrees.append(len(work) - 1)
    return degrees


def _poly_div_mod_p(a, b, q):
    """Exact quotient a // b mod q, for monic b dividing a."""
    rem = _mp_trim([c % q for c in a])
    quo = [0] * max(1, len(a) - len(b) + 1)
    while len(rem) >= len(b) and any(rem):
        shift = len(rem) - len(b)
        top = rem[-1]
        quo[shift] = top
        for i in range(len(b)):
            rem[shift + i] = (rem[shift + i] - top * b[i]) % q
        _mp_trim(rem)
    return _mp_trim(quo)


def _subset_sums(degrees):
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k != n // k:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def _binomial(n: int, k: int) -> int:
    return math.comb(n, k)


def _trial_factor_search(poly: IntPolynomial, candidate_degrees, budget=3_000_000):
    """Search for a monic integer factor with degree in candidate_degrees.

    A factor's roots are roots of poly, so the coefficient of x^(d-j) in a
    degree-d factor is bounded by C(d, j) R^j for the Cauchy root bound R;
    the constant term additionally divides poly's constant term.  Returns
    a factor or None; raises IrreducibilityUndecided when the pruned
    search space still exceeds the budget.
    """
    pr = poly.rational_coeffs()
    r_bound = root_bound(poly)
    c0 = poly.coeffs[0]
    for d in sorted(candidate_degrees):
        consts = [s * k for k in _divisors(c0) for s in (1, -1)]
        bounds = []
        for j in range(1, d):  # coefficient of x^(d-j), j = 1..d-1
            b = _binomial(d, j) * (r_bound ** j)
            bounds.append(int(b) + 1)
        const_bound = _binomial(d, d) * (r_bound ** d)
        consts = [c for c in consts if abs(c) <= const_bound]
        space = len(consts)
        for b in bounds:
            space *= 2 * b + 1
        if space > budget:
            raise IrreducibilityUndecided(
                f"factor search for degree {d} needs {space} candidates"
            )
        # enumerate (a_{d-1}, ..., a_1) within bounds and a_0 over divisors
        def rec(idx, partial):
            if idx == 0:
                for c in consts:
                    cand = [Fraction(c)] + [Fraction(x) for x in partial] + [Fraction(1)]
                    _, rem = pdivmod(pr, cand)
                    if pis_zero(rem):
                        return IntPolynomial((c,) + tuple(partial) + (1,))
                return None
            b = bounds[idx - 1]
            for val in range(-b, b + 1):
                hit = rec(idx - 1, (val,) + partial)
                if hit is not None:
                    return hit
            return None

        hit = rec(d - 1, ())
        if hit is not None:
            return hit
    return None


def assert_irreducible(poly: IntPolynomial) -> None:
    """Raise ReduciblePolynomial or NotSquarefree if poly fails; otherwise
    certify irreducibility over Q.

    Strategy: rational root check, then reduction mod p witnesses, then a
    degree-pattern intersection, falling back to a bounded search for an
    explicit integer factor.
    """
    n = poly.degree
    if n < 1:
        raise ReduciblePolynomial("constant polynomial")
    if not poly.is_monic():
        raise NotMonic(f"leading coefficient is {poly.leading}, expected 1")
    if n == 1:
        return
    if not is_squarefree(poly):
        raise NotSquarefree(str(poly))

    # rational roots: for a monic polynomial these are integer divisors of
    # the constant term
    c0 = poly.coeffs[0]
    if c0 == 0:
        raise ReduciblePolynomial(f"{poly} has root 0")
    for k in _divisors(c0):
        for r in (k, -k):
            if poly.evaluate(Fraction(r)) == 0:
                raise ReduciblePolynomial(f"{poly} has rational root {r}")
    if n <= 3:
        return  # no rational root and degree <= 3: irreducible

    patterns = []
    for p in _SMALL_PRIMES:
        degs = _factor_degrees_mod_p(poly, p)
        if degs is None:
            continue
        if len(degs) == 1:
            return  # irreducible mod p, hence over Q
        patterns.append(degs)
        if len(patterns) >= 6:
            break

    candidates = set(range(2, n // 2 + 1))  # degree-1 factors already excluded
    for degs in patterns:
        candidates &= _subset_sums(degs)
    candidates.discard(0)
    candidates = {d for d in candidates if 2 <= d <= n // 2}
    if not candidates:
        return

    factor = _trial_factor_search(poly, candidates)
    if factor is not None:
        raise ReduciblePolynomial(f"{poly} has factor {factor}")
    return


def is_irreducible(poly: IntPolynomial) -> bool:
    try:
        assert_irreducible(poly)
    except (ReduciblePolynomial, NotSquarefree):
        return False
    return True
