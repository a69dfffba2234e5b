"""Units of orders, unit action matrices, and non-negative realizations.

find_unit searches for a non-torsion unit expanding at a chosen real
embedding.  Degree 2 uses the classical continued fraction method keyed
to the order's discriminant; higher degrees run a bounded deterministic
enumeration over the order's basis.  multiplication_matrix writes the
unit action on a full module as an integer matrix, and make_nonnegative
hunts for a power/basis change making that matrix entrywise non-negative
with a canonical digit cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import isqrt

from ..errors import (
    NonnegativeFormNotFound,
    NotEndomorphism,
    UnitNotFound,
)
from .field import FieldElement, RealRootInterval, eval_embedding, isolate_real_roots, sign_at
from .intmat import charpoly, mat_det, mat_identity, mat_inverse_fraction, mat_mul, mat_pow
from .lattice import OrderRing, ZModule


@dataclass(frozen=True)
class UnitElement:
    element: FieldElement
    norm: int  # +1 or -1
    order: OrderRing

    def inverse_element(self) -> FieldElement:
        return self.element.inverse()


def trace_gram(basis):
    """Gram matrix of the trace form on a list of field elements."""
    n = len(basis)
    return [[(basis[i] * basis[j]).trace() for j in range(n)] for i in range(n)]


def order_discriminant(order: OrderRing) -> int:
    from .field import _det_fraction

    d = _det_fraction(trace_gram(order.basis_elements()))
    assert d.denominator == 1
    return int(d)


def is_dominant_at(u: FieldElement, root: RealRootInterval) -> bool:
    """Whether |sigma_e(u)| > |sigma(u)| at every other real embedding.

    Symbolic degree checks rule out exact ties (they force u^2 into a
    proper subfield); the rest is interval separation.
    """
    field = u.field
    roots = field.real_roots
    if len(roots) <= 1:
        return True
    if u.degree_over_q() < field.degree:
        return False  # embedding values repeat
    sq = u * u
    if sq.degree_over_q() < field.degree:
        return False  # |values| repeat
    idx = roots.index(root)
    eps = Fraction(1, 1000)
    while True:
        vals = [eval_embedding(sq, r, eps) for r in roots]
        lo_e, hi_e = vals[idx]
        others = [v for j, v in enumerate(vals) if j != idx]
        if all(hi < lo_e for lo, hi in others):
            return True
        if any(lo > hi_e for lo, hi in others):
            return False
        eps /= 64


# ---------------------------------------------------------------------------
# degree 2: continued fraction / Pell

def _quadratic_cf_unit(order: OrderRing, root: RealRootInterval) -> UnitElement:
    """Fundamental expanding unit of a real quadratic order.

    The order of discriminant D equals Z[omega] for omega = (r + sqrt(D))/2
    with r = D mod 2.  The regular continued fraction of omega is eventually
    periodic; one full period around the purely periodic tail theta* yields
    the unit u = C theta* + D' from the period's convergent matrix.
    """
    from .. import mcf  # runtime import; mcf depends on this subpackage

    field = order.field
    disc = order_discriminant(order)
    if disc <= 0:  # pragma: no cover - real quadratic fields only
        raise UnitNotFound(f"discriminant {disc} is not totally real")
    # sqrt(disc) inside the field: for any non-rational zeta in the order,
    # s = 2 zeta - Tr(zeta) has s^2 = disc(Z[zeta]) = k^2 * disc
    zeta = next(b for b in order.basis_elements() if not b.is_rational())
    s = 2 * zeta - field.from_rational(zeta.trace())
    s_sq = (s * s).as_rational()
    assert s_sq.denominator == 1
    k_sq, rem = divmod(int(s_sq), disc)
    assert rem == 0
    k = isqrt(k_sq)
    assert k * k == k_sq
    sqrt_d = s / k
    if sign_at(sqrt_d, root) < 0:
        sqrt_d = -sqrt_d
    omega = (field.from_rational(disc % 2) + sqrt_d) / 2
    assert order.contains(omega)

    # walk the expansion keeping exact states; stop at the first repeat
    seen = {}
    trail = []
    state = omega
    for step in range(4096):
        key = state.coords
        if key in seen:
            start = seen[key]
            theta_star = trail[start][0]
            m = ((1, 0), (0, 1))
            for _, (a,) in trail[start:]:
                m = mat_mul(m, ((a, 1), (1, 0)))
            u = m[1][0] * theta_star + m[1][1]
            nrm = u.norm()
            if nrm not in (1, -1) or not order.contains(u.inverse()):  # pragma: no cover
                raise UnitNotFound("period unit failed verification")
            assert sign_at(u - field.one, root) > 0
            return UnitElement(u, int(nrm), order)
        seen[key] = step
        digit, nxt = mcf.jpa_step((state,), root)
        trail.append((state, digit))
        if nxt is None:  # pragma: no cover - omega is irrational
            raise UnitNotFound("expansion terminated unexpectedly")
        state = nxt[0]
    raise UnitNotFound("no period found within 4096 steps")  # pragma: no cover


# ---------------------------------------------------------------------------
# degree >= 3: bounded enumeration over the order basis

_COORD_ROUNDS = (1, 2, 4, 8, 16, 32, 64, 128, 256)


def _norm_tester(order: OrderRing):
    """Fast exact |norm| == 1 test for integer combinations of the basis.

    Uses integer matrices: with d the basis denominator, N(sum c_i g_i) =
    det(sum c_i * d * M_{g_i}) / d^n.
    """
    basis = order.basis_elements()
    n = len(basis)
    d = order.module.den
    mats = []
    for g in basis:
        rows = g.mult_matrix()
        mats.append([[int(x * d) for x in row] for row in rows])
    dn = d ** n

    def is_unit_norm(coords):
        acc = [[0] * n for _ in range(n)]
        for c, mat in zip(coords, mats):
            if c:
                for i in range(n):
                    row = mat[i]
                    arow = acc[i]
                    for j in range(n):
                        arow[j] += c * row[j]
        return abs(mat_det(acc)) == dn

    return is_unit_norm


def _shell(bound: int, n: int):
    """Integer vectors with max-norm exactly bound, deterministic order."""
    full = range(-bound, bound + 1)
    edge = (-bound, bound)
    for pos in range(n):
        # coordinate `pos` is the first coordinate hitting the bound
        inner = range(-(bound - 1), bound)
        pools = [inner] * pos + [edge] + [full] * (n - pos - 1)
        yield from product(*pools)


def _expanding_representative(alpha: FieldElement, root: RealRootInterval):
    """The member of {alpha, -alpha, alpha^-1, -alpha^-1} with image > 1."""
    field = alpha.field
    s = sign_at(alpha, root)
    cand = alpha if s > 0 else -alpha
    cmp_one = sign_at(cand - field.one, root)
    if cmp_one > 0:
        return cand
    if cmp_one == 0:  # pragma: no cover - |image| = 1 forces torsion
        return None
    inv = cand.inverse()
    if sign_at(inv - field.one, root) > 0:
        return inv
    return None  # pragma: no cover


def _unit_sort_key(u: FieldElement, root: RealRootInterval):
    lo, _ = eval_embedding(u, root, Fraction(1, 10 ** 12))
    return (lo, u.coords)


def _attractor_data(m: ZModule, root: RealRootInterval, max_steps: int = 512):
    """Expand the module's own basis ratios to their periodic tail.

    Returns (T, period_digits, return_unit) where T is the basis change
    with T^-1 A T the action in the attractor basis, the digits are the
    detected cycle, and the return unit v is the Perron value of one trip
    around it (v * L = L for the attractor-scaled module L, so v lies in
    End(m) and expands at root).  Returns None when the expansion does not
    cycle within the budget: the Jacobi-Perron expansion of a module
    direction is not periodic in general.
    """
    from .. import mcf

    basis = m.basis_elements()
    n = len(basis)
    if n < 2:
        return None
    signs = [sign_at(g, root) for g in basis]
    adapted = [g if s > 0 else -g for g, s in zip(basis, signs)]
    theta = tuple(adapted[i] / adapted[0] for i in range(1, n))
    seen = {}
    digits = []
    state = theta
    for step in range(max_steps):
        key = tuple(t.coords for t in state)
        if key in seen:
            pre = digits[: seen[key]]
            period = digits[seen[key]:]
            c = mcf.convergent_matrix(pre, n)
            s_diag = tuple(
                tuple((signs[j] if i == j else 0) for j in range(n)) for i in range(n)
            )
            t_mat = mat_mul(s_diag, c)  # (C^-1 S)^-1 = S C
            # attractor basis rows: W = C^-1 S applied to the HNF basis
            w = _int_rows(mat_inverse_fraction(t_mat))
            star = []
            for row in w:
                acc = m.field.zero
                for coef, g in zip(row, basis):
                    if coef:
                        acc = acc + coef * g
                star.append(acc)
            p_mat = mcf.convergent_matrix(period, n)
            num = m.field.zero
            for coef, g in zip(p_mat[0], star):
                if coef:
                    num = num + coef * g
            v = num / star[0]
            return t_mat, tuple(period), v
        seen[key] = step
        d, nxt = mcf.jpa_step(state, root)
        digits.append(d)
        if nxt is None:
            return None
        state = nxt
    return None


def find_unit(order: OrderRing, root: RealRootInterval,
              max_coord: int = 256, max_candidates: int = 500_000) -> UnitElement:
    """A non-torsion unit u of the order with sigma_e(u) > 1.

    Degree 2 uses the continued fraction of the order's discriminant
    surd, which yields the fundamental expanding unit.  Degree >= 3 first
    expands the order's own basis ratios: when that expansion cycles, the
    Perron value of one trip around the cycle is a unit of the order and
    is the one the downstream block factorization can realize.  When the
    expansion does not cycle within budget, a bounded enumeration over
    coordinate shells looks for expanding units directly, preferring field
    generators that dominate at the embedding, smallest image first.
    """
    field = order.field
    if field.degree < 2:
        raise UnitNotFound("degree-1 orders have only the torsion units +1, -1")
    if root not in field.real_roots:
        raise ValueError("embedding does not belong to the order's field")
    if field.degree == 2:
        return _quadratic_cf_unit(order, root)

    n = field.degree
    attractor = _attractor_data(order.module, root)
    if attractor is not None:
        _, _, v = attractor
        nrm = v.norm()
        if (
            nrm in (1, -1)
            and order.contains(v)
            and order.contains(v.inverse())
            and sign_at(v - field.one, root) > 0
        ):
            return UnitElement(v, int(nrm), order)

    basis = order.basis_elements()
    is_unit_norm = _norm_tester(order)
    tested = 0
    fallback = None
    for bound in _COORD_ROUNDS:
        if bound > max_coord:
            break
        shell_size = (2 * bound + 1) ** n - (2 * bound - 1) ** n
        if tested + shell_size > max_candidates:
            break
        reps = []
        for coords in _shell(bound, n):
            tested += 1
            if not is_unit_norm(coords):
                continue
            alpha = field.zero
            for c, b in zip(coords, basis):
                if c:
                    alpha = alpha + c * b
            if alpha.is_rational():
                continue
            rep = _expanding_representative(alpha, root)
            if rep is not None:
                reps.append((rep, int(alpha.norm())))
        if not reps:
            continue
        preferred = [
            (rep, nrm) for rep, nrm in reps
            if rep.degree_over_q() == n and is_dominant_at(rep, root)
        ]
        if preferred:
            best, nrm = min(preferred, key=lambda t: _unit_sort_key(t[0], root))
            return UnitElement(best, nrm, order)
        if fallback is None:
            fallback = min(reps, key=lambda t: _unit_sort_key(t[0], root))
    if fallback is not None:
        return UnitElement(fallback[0], fallback[1], order)
    raise UnitNotFound(
        f"no unit with image > 1 found within coordinate bound {max_coord} "
        f"({tested} candidates tested)"
    )


# ---------------------------------------------------------------------------
# the action matrix and its non-negative realization

def multiplication_matrix(u: FieldElement, m: ZModule):
    """Integer matrix A with row i the coordinates of u * g_i in the basis
    g of m; raises NotEndomorphism when u does not preserve m."""
    if isinstance(u, UnitElement):
        u = u.element
    basis = m.basis_elements()
    rows = []
    for g in basis:
        coords = m.coordinates_of(u * g)
        if coords is None:
            raise NotEndomorphism(f"{u} * {g} leaves the module")
        rows.append(tuple(coords))
    return tuple(rows)


def _signed_permutation_matrices(n: int):
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            yield tuple(
                tuple(signs[j] if perm[i] == j else 0 for j in range(n))
                for i in range(n)
            )


def _lll_transform(gram):
    """Unimodular U size-reducing the lattice with the given Gram matrix
    (exact arithmetic, Lovasz condition with delta = 3/4)."""
    n = len(gram)
    g = [[Fraction(x) for x in row] for row in gram]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def inner(i, j):
        return sum(u[i][a] * g[a][b] * u[j][b] for a in range(n) for b in range(n))

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        bstar = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                if bstar[j] == 0:
                    continue
                mu[i][j] = (
                    inner(i, j)
                    - sum(mu[i][t] * mu[j][t] * bstar[t] for t in range(j))
                ) / bstar[j]
            bstar[i] = inner(i, i) - sum(mu[i][t] ** 2 * bstar[t] for t in range(i))
        return mu, bstar

    k = 1
    guard = 0
    while k < n and guard < 1000:
        guard += 1
        mu, bstar = gso()
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                u[k] = [a - q * b for a, b in zip(u[k], u[j])]
                mu, bstar = gso()
        if bstar[k] >= (Fraction(3, 4) - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            u[k], u[k - 1] = u[k - 1], u[k]
            k = max(k - 1, 1)
    return tuple(tuple(row) for row in u)


def _int_rows(fraction_rows):
    out = []
    for row in fraction_rows:
        r = []
        for x in row:
            f = Fraction(x)
            if f.denominator != 1:
                return None
            r.append(int(f))
        out.append(tuple(r))
    return tuple(out)


def _is_perron_image(value: FieldElement, root: RealRootInterval, poly) -> bool:
    """Whether sigma(value) at root is the largest real root of poly.

    value is known to be a root of poly; refine its interval until it fits
    a single isolating interval of poly and compare positions.
    """
    intervals = isolate_real_roots(poly)
    if not intervals:
        return False
    eps = Fraction(1, 1000)
    while True:
        lo, hi = eval_embedding(value, root, eps)
        inside = [iv for iv in intervals if iv.lo < lo and hi < iv.hi]
        if len(inside) == 1:
            return inside[0] is intervals[-1]
        eps /= 64


def make_nonnegative(a, u: UnitElement, m: ZModule, root: RealRootInterval,
                     k_max: int = 12, require_canonical_cycle: bool = True):
    """Search for (A', k, T) with A' = T^-1 A^k T entrywise non-negative.

    T ranges over the module's attractor basis change, signed permutations
    and an LLL-derived basis change; k runs over 1..k_max, even values only
    when the unit's image is negative so that the spectral radius of A' is
    sigma_e(u)^k (this is verified, not assumed).  With
    require_canonical_cycle set, a candidate is kept only if its Bauer
    digit cycle is the canonical expansion of its own Perron vector, which
    the stationary pipeline needs downstream.
    """
    from .. import mcf

    n = len(a)
    s = sign_at(u.element, root)
    k_start, k_step = (1, 1) if s > 0 else (2, 2)

    base_changes = []
    attractor = _attractor_data(m, root)
    if attractor is not None:
        base_changes.append(attractor[0])
    base_changes.append(mat_identity(n))
    try:
        gram = trace_gram(m.basis_elements())
        u_lll = _lll_transform(gram)
        inv = _int_rows(mat_inverse_fraction(u_lll))
        if inv is not None and u_lll != mat_identity(n):
            base_changes.append(inv)  # A in the LLL basis is T^-1 A T for T = U^-1
    except Exception:  # pragma: no cover - LLL is a best-effort heuristic
        pass

    ident = mat_identity(n)
    seen = set()
    found_nonneg = False
    for k in range(k_start, k_max + 1, k_step):
        ak = mat_pow(a, k)
        u_pow = u.element ** k
        for base in base_changes:
            for p in _signed_permutation_matrices(n):
                t = mat_mul(base, p)
                t_inv = _int_rows(mat_inverse_fraction(t))
                if t_inv is None:  # pragma: no cover - t is unimodular
                    continue
                cand = mat_mul(mat_mul(t_inv, ak), t)
                if cand in seen:
                    continue
                seen.add(cand)
                if not all(x >= 0 for row in cand for x in row):
                    continue
                if cand == ident:
                    continue
                found_nonneg = True
                if not _is_perron_image(u_pow, root, charpoly(cand)):
                    continue
                if require_canonical_cycle:
                    try:
                        mcf.periodicity_roundtrip(cand)
                    except Exception:
                        continue
                return cand, k, t
    if found_nonneg:
        raise NonnegativeFormNotFound(
            "non-negative forms exist but none passed the Perron/canonical "
            f"cycle checks within k <= {k_max}"
        )
    raise NonnegativeFormNotFound(
        f"no non-negative conjugate of a power up to {k_max} found"
    )
