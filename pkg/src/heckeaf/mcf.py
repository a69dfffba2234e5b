"""Continued fraction engines.

Covers the Euclidean algorithm, regular continued fractions, the
multidimensional Jacobi-Perron algorithm in block matrix form with exact
periodicity detection, the Bauer factorization of a non-negative
unimodular matrix into blocks, and the periodic fraction attached to such
a matrix through its Perron eigenvector.

Conventions.  A state is a vector theta = (theta_1, ..., theta_{n-1}) of
field elements evaluated at a fixed real embedding.  One step emits the
digit d with d_j = floor(theta_j) and moves to the state

    theta'_{n-1} = 1 / (theta_1 - d_1)
    theta'_{j-1} = (theta_j - d_j) / (theta_1 - d_1)     (2 <= j <= n-1)

which is the unique convention making (1, theta)^T proportional to
B(d) * (1, theta')^T for the non-negative block

    B(d) = [ 0      1 ]
           [ I_n-1  d ]    (first row (0,...,0,1), last column tail d).

Cycle detection hashes exact states, so periodicity is literal state
repetition and can never be a floating point artifact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import (
    DegenerateSpectrum,
    NotFactorizable,
    ReducibleCharPoly,
    ReduciblePolynomial,
    RoundTripMismatch,
)
from .exactnum.field import (
    FieldElement,
    NumberField,
    RealRootInterval,
    exact_floor,
    make_field,
    sign_at,
)
from .exactnum.intmat import charpoly, mat_det, mat_identity, mat_is_nonnegative, mat_mul, is_primitive

DEFAULT_MAX_STEPS = 10_000


@dataclass(frozen=True)
class JpaExpansion:
    """Digits of an expansion split into preperiod and period.

    period == () with terminated == True means the expansion reached a
    rational direction and stopped; period == () with terminated == False
    means the step budget ran out before a state repeated (a legitimate
    outcome: the algorithm may diverge for some inputs).
    """

    dim: int
    preperiod: tuple
    period: tuple
    terminated: bool

    @property
    def digits(self) -> tuple:
        return self.preperiod + self.period

    def is_periodic(self) -> bool:
        return len(self.period) > 0

    def is_purely_periodic(self) -> bool:
        return self.is_periodic() and not self.preperiod


def euclid_gcd(a1: int, a2: int):
    """GCD with the ladder of quotients, for a1 >= a2 >= 1."""
    if not (a1 >= a2 >= 1):
        raise ValueError("require a1 >= a2 >= 1")
    quotients = []
    x, y = a1, a2
    while True:
        q, r = divmod(x, y)
        quotients.append(q)
        if r == 0:
            return y, quotients
        x, y = y, r


# ---------------------------------------------------------------------------
# blocks and block products

def jpa_block(digit, n: int | None = None):
    """The block matrix B(d) for one digit vector."""
    d = tuple(int(b) for b in digit)
    if n is None:
        n = len(d) + 1
    if len(d) != n - 1:
        raise ValueError(f"digit of length {len(d)} does not fit size {n}")
    if any(b < 0 for b in d):
        raise ValueError("digits must be non-negative")
    rows = [tuple([0] * (n - 1)) + (1,)]
    for i in range(1, n):
        row = [0] * n
        row[i - 1] = 1
        row[n - 1] += d[i - 1]
        rows.append(tuple(row))
    return tuple(rows)


def convergent_matrix(digits, n: int | None = None):
    """Product B(d_1) ... B(d_k); empty products need an explicit size."""
    digits = list(digits)
    if n is None:
        if not digits:
            raise ValueError("empty digit list needs an explicit size n")
        n = len(digits[0]) + 1
    acc = mat_identity(n)
    for d in digits:
        acc = mat_mul(acc, jpa_block(d, n))
    return acc


# ---------------------------------------------------------------------------
# the step map and expansions

def jpa_step(theta, root: RealRootInterval):
    """One step: returns (digit, next_state) with next_state None when the
    leading coordinate was exactly rational-exhausted."""
    digit = tuple(exact_floor(t, root) for t in theta)
    x = theta[0] - digit[0]
    if x.is_zero():
        return digit, None
    inv = x.inverse()
    k = len(theta)
    nxt = [None] * k
    nxt[k - 1] = inv
    for i in range(k - 1):
        nxt[i] = (theta[i + 1] - digit[i + 1]) * inv
    return digit, tuple(nxt)


def _state_key(theta):
    return tuple(t.coords for t in theta)


def jpa_expand(theta, root: RealRootInterval, max_steps: int = DEFAULT_MAX_STEPS) -> JpaExpansion:
    """Expand theta, detecting exact periodicity by state repetition."""
    theta = tuple(theta)
    if not theta:
        return JpaExpansion(dim=1, preperiod=(), period=(), terminated=True)
    n = len(theta) + 1
    for t in theta:
        if sign_at(t, root) <= 0:
            raise ValueError("jpa_expand needs strictly positive coordinates")
    seen = {_state_key(theta): 0}
    digits = []
    state = theta
    for step in range(max_steps):
        digit, nxt = jpa_step(state, root)
        digits.append(digit)
        if nxt is None:
            return JpaExpansion(n, tuple(digits), (), True)
        key = _state_key(nxt)
        if key in seen:
            j = seen[key]
            return JpaExpansion(n, tuple(digits[:j]), tuple(digits[j:]), False)
        seen[key] = step + 1
        state = nxt
    return JpaExpansion(n, tuple(digits), (), False)


def regular_cf(x, root: RealRootInterval | None = None,
               max_terms: int = DEFAULT_MAX_STEPS) -> JpaExpansion:
    """Regular continued fraction as the n = 2 case.

    Accepts an exact rational (Fraction or int) or a FieldElement with its
    embedding.  Rational inputs terminate with the Euclidean quotients.
    """
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        if x <= 0:
            raise ValueError("regular_cf needs a positive value")
        digits = []
        cur = x
        for _ in range(max_terms):
            a = cur.numerator // cur.denominator
            digits.append((a,))
            frac = cur - a
            if frac == 0:
                return JpaExpansion(2, tuple(digits), (), True)
            cur = 1 / frac
        return JpaExpansion(2, tuple(digits), (), False)
    if not isinstance(x, FieldElement):
        raise TypeError(f"cannot expand {type(x).__name__}")
    if x.is_rational():
        return regular_cf(x.as_rational(), max_terms=max_terms)
    if root is None:
        raise ValueError("field elements need an embedding")
    return jpa_expand((x,), root, max_steps=max_terms)


def convergents_from_digits(digits):
    """(p_k, q_k) pairs for a regular continued fraction digit list."""
    out = []
    p_prev, p = 1, None
    q_prev, q = 0, None
    for (a,) in digits:
        if p is None:
            p, q = a, 1
        else:
            p, p_prev = a * p + p_prev, p
            q, q_prev = a * q + q_prev, q
        out.append((p, q))
    return out


# ---------------------------------------------------------------------------
# Bauer factorization

def bauer_factorize(a):
    """Unique block factorization of a non-negative unimodular matrix.

    Peel rule: with r = row_0(A), the right factor A2 has last row r and
    row i-1 equal to row_i(A) - b_i * r, where each b_i is the largest
    non-negative integer keeping that row non-negative.  Recurse until the
    identity remains; a repeated intermediate matrix means the rule stalls
    and the matrix admits no such factorization.
    """
    a = tuple(tuple(int(x) for x in row) for row in a)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if not mat_is_nonnegative(a):
        raise ValueError("matrix must be entrywise non-negative")
    if mat_det(a) not in (1, -1):
        raise ValueError("matrix must have determinant +1 or -1")
    ident = mat_identity(n)
    if a == ident:
        raise ValueError("identity matrix has the empty factorization")
    digits = []
    seen = {a}
    cur = a
    while cur != ident:
        top = cur[0]
        digit = []
        new_rows = []
        for i in range(1, n):
            row = cur[i]
            b = None
            for j in range(n):
                if top[j] > 0:
                    q = row[j] // top[j]
                    b = q if b is None else min(b, q)
            if b is None:  # pragma: no cover - zero top row is singular
                raise NotFactorizable("zero leading row", partial=digits)
            digit.append(b)
            new_rows.append(tuple(r - b * t for r, t in zip(row, top)))
        new_rows.append(top)
        digits.append(tuple(digit))
        cur = tuple(new_rows)
        if cur in seen:
            raise NotFactorizable(
                f"peel rule stalled after {len(digits)} digits", partial=digits
            )
        seen.add(cur)
    assert convergent_matrix(digits, n) == a
    return digits


# ---------------------------------------------------------------------------
# the periodic fraction attached to a matrix

def perron_embedding(field: NumberField) -> RealRootInterval:
    """The embedding at the largest real root (the Perron root for the
    fields built from primitive non-negative matrices)."""
    if not field.real_roots:
        raise DegenerateSpectrum("field has no real embedding")
    return field.real_roots[-1]


def satz12_eigenvector(a):
    """Exact Perron eigenvector data of a non-negative unimodular matrix.

    Returns (u, lam): u is the image of x in Q[x]/(char A) at the dominant
    embedding, lam an exact eigenvector with lam_1 = 1, positive at that
    embedding, satisfying A lam = u lam symbolically.
    """
    a = tuple(tuple(int(x) for x in row) for row in a)
    n = len(a)
    if not mat_is_nonnegative(a):
        raise ValueError("matrix must be entrywise non-negative")
    if mat_det(a) not in (1, -1):
        raise ValueError("matrix must have determinant +1 or -1")
    if a == mat_identity(n):
        raise DegenerateSpectrum("identity matrix has no expanding eigenvector")
    if not is_primitive(a):
        raise DegenerateSpectrum("matrix is not primitive; Perron root may be non-simple")
    cp = charpoly(a)
    try:
        field = make_field(cp)
    except ReduciblePolynomial as exc:
        raise ReducibleCharPoly(f"char poly {cp} is reducible: {exc}") from exc
    root = perron_embedding(field)
    u = field.gen

    # nullspace of (A - u I) over the field, normalized to lam_1 = 1
    m = [[field.from_rational(a[i][j]) - (u if i == j else field.zero)
          for j in range(n)] for i in range(n)]
    lam = _nullspace_vector(m, field)
    if lam[0].is_zero():  # pragma: no cover - Perron vector has lam_1 != 0
        raise DegenerateSpectrum("eigenvector has vanishing first coordinate")
    inv = lam[0].inverse()
    lam = tuple(v * inv for v in lam)
    # symbolic residual check: A lam = u lam
    for i in range(n):
        acc = field.zero
        for j in range(n):
            acc = acc + field.from_rational(a[i][j]) * lam[j]
        if acc != u * lam[i]:  # pragma: no cover - exact algebra guarantee
            raise AssertionError("eigenvector residual is nonzero")
    for v in lam:
        if sign_at(v, root) <= 0:
            raise DegenerateSpectrum("Perron eigenvector is not positive")
    return u, lam


def _nullspace_vector(m, field: NumberField):
    """One nonzero kernel vector of a singular square matrix over the field."""
    n = len(m)
    rows = [list(r) for r in m]
    piv_of_col = {}
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(n):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        piv_of_col[c] = r
        r += 1
    free = next((c for c in range(n) if c not in piv_of_col), None)
    if free is None:
        raise DegenerateSpectrum("matrix is nonsingular; no eigenvector")
    vec = [field.zero] * n
    vec[free] = field.one
    for c, pr in piv_of_col.items():
        vec[c] = -rows[pr][free]
    return tuple(vec)


def cycles_agree(p, d) -> bool:
    """Whether two digit cycles generate the same bi-infinite sequence up
    to phase (cyclic rotation after extending to a common length)."""
    if not p or not d:
        return False
    if len(p[0]) != len(d[0]):
        return False
    length = lcm(len(p), len(d))
    pp = tuple(p) * (length // len(p))
    dd = tuple(d) * (length // len(d))
    return any(dd[r:] + dd[:r] == pp for r in range(length))


def periodicity_roundtrip(a, max_steps: int = DEFAULT_MAX_STEPS) -> JpaExpansion:
    """Expand the Perron eigenvector of A and check the detected period
    against the Bauer digits of A.

    A mismatch raises RoundTripMismatch: either an implementation bug or a
    matrix whose Bauer digit cycle is not a canonical expansion.
    """
    digits = bauer_factorize(a)
    u, lam = satz12_eigenvector(a)
    root = perron_embedding(u.field)
    theta = lam[1:]
    exp = jpa_expand(theta, root, max_steps=max_steps)
    if not exp.is_periodic():
        raise RoundTripMismatch(
            f"no period detected within {max_steps} steps for {a}"
        )
    if not cycles_agree(exp.period, digits):
        raise RoundTripMismatch(
            f"detected period {exp.period} is not a rotation of the "
            f"factorization {tuple(digits)}"
        )
    return exp
