"""Bratteli diagrams, stationary AF descriptors, and dimension groups.

An AF-algebra is handled purely through its diagram data: levels of
vertices with non-negative partial multiplicity matrices between them.
A periodic digit expansion yields a stationary descriptor (one constant
matrix); a terminating one yields a finite diagram; rank one collapses to
the trivial algebra.  Dimension groups are (Z^n, cone, order unit) with
the cone decided by exact sign evaluation of the defining functional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from .errors import ShapeMismatch
from .exactnum.field import FieldElement, RealRootInterval, sign_at
from .exactnum.intmat import charpoly, mat_is_nonnegative
from .exactnum.polynomial import (
    IntPolynomial,
    padd,
    pdeg,
    pdivmod,
    pis_zero,
    pmonic,
    pmul,
    psub,
)
from .mcf import JpaExpansion, convergent_matrix, jpa_block, perron_embedding, satz12_eigenvector

VERDICT_COMPANION = "companion"
VERDICT_SIMILAR_Q = "similar_over_Q"
VERDICT_DISTINCT = "distinct_char_poly"
VERDICT_UNDETERMINED = "undetermined_Z_similarity"


@dataclass(frozen=True)
class TrivialAF:
    """The algebra of complex numbers; rank-one diagrams collapse here."""

    def __eq__(self, other):
        return isinstance(other, TrivialAF)

    def __hash__(self):
        return hash("TrivialAF")


@dataclass(frozen=True)
class BratteliDiagram:
    """Finitely many explicit levels; stationary tails live in StationaryAF."""

    vertex_counts: tuple        # per level
    matrices: tuple             # matrices[i] maps level i to level i+1
    complete: bool = True       # False when a step budget cut the data off

    def __post_init__(self):
        if len(self.matrices) != len(self.vertex_counts) - 1:
            raise ShapeMismatch("need one matrix between consecutive levels")
        for i, m in enumerate(self.matrices):
            if len(m) != self.vertex_counts[i + 1] or any(
                len(row) != self.vertex_counts[i] for row in m
            ):
                raise ShapeMismatch(f"matrix {i} does not match level sizes")
            if not mat_is_nonnegative(m):
                raise ShapeMismatch(f"matrix {i} has negative multiplicities")

    @property
    def levels(self) -> int:
        return len(self.vertex_counts)


@dataclass(frozen=True)
class StationaryAF:
    """A diagram whose partial multiplicity matrix is one constant block."""

    period_matrix: tuple
    digits: tuple               # the digit cycle generating period_matrix
    char_poly: IntPolynomial
    perron_value: FieldElement
    perron_root: RealRootInterval

    @property
    def rank(self) -> int:
        return len(self.period_matrix)


def af_from_expansion(expansion: JpaExpansion):
    """The AF descriptor of a digit expansion.

    Periodic tail: stationary with the period block product.  Terminating:
    a finite diagram, collapsing to the trivial algebra in rank one.
    Budget exhaustion: the finite prefix, flagged incomplete and never
    claimed stationary.
    """
    n = expansion.dim
    if n == 1:
        return TrivialAF()
    if expansion.is_periodic():
        b = convergent_matrix(expansion.period, n)
        u, lam = satz12_eigenvector(b)
        return StationaryAF(
            period_matrix=b,
            digits=tuple(expansion.period),
            char_poly=charpoly(b),
            perron_value=u,
            perron_root=perron_embedding(u.field),
        )
    mats = tuple(jpa_block(d, n) for d in expansion.digits)
    counts = (n,) * (len(mats) + 1)
    return BratteliDiagram(counts, mats, complete=expansion.terminated)


@dataclass(frozen=True)
class DimensionGroup:
    """(Z^n, positive cone, order unit) with an exact cone functional.

    x is in the cone when theta_1 x_1 + ... + theta_(n-1) x_(n-1) + x_n
    is non-negative at the chosen embedding.
    """

    theta: tuple                # n-1 field elements
    root: RealRootInterval | None
    order_unit: tuple

    @property
    def rank(self) -> int:
        return len(self.theta) + 1

    def functional(self, x) -> FieldElement:
        if len(x) != self.rank:
            raise ShapeMismatch(f"vector of length {len(x)}, expected {self.rank}")
        if not self.theta:
            raise ShapeMismatch("rank-1 group has a rational functional")
        field = self.theta[0].field
        acc = field.from_rational(x[-1])
        for xi, th in zip(x[:-1], self.theta):
            if xi:
                acc = acc + xi * th
        return acc


def dimension_group(theta, root: RealRootInterval | None) -> DimensionGroup:
    theta = tuple(theta)
    for t in theta:
        if sign_at(t, root) <= 0:
            raise ValueError("cone functional coefficients must be positive")
    rank = len(theta) + 1
    unit = (0,) * (rank - 1) + (1,)
    return DimensionGroup(theta=theta, root=root, order_unit=unit)


def cone_contains(group: DimensionGroup, x) -> bool:
    """Exact decision: symbolic zero test first, then certified sign."""
    x = tuple(int(v) for v in x)
    if group.rank == 1:
        return x[0] >= 0
    value = group.functional(x)
    if value.is_zero():
        return True
    return sign_at(value, group.root) > 0


# ---------------------------------------------------------------------------
# companionship of period matrices

def _invariant_factors(a):
    """Invariant factors of xI - A over Q[x] (Smith normal form), monic,
    constant factors dropped.  Matrices are similar over Q iff these agree."""
    n = len(a)
    m = [[[Fraction(-a[i][j])] if i != j else [Fraction(-a[i][j]), Fraction(1)]
          for j in range(n)] for i in range(n)]
    factors = []
    top = 0
    while top < n:
        best = None
        for i in range(top, n):
            for j in range(top, n):
                if not pis_zero(m[i][j]) and (
                    best is None or pdeg(m[i][j]) < pdeg(m[best[0]][best[1]])
                ):
                    best = (i, j)
        if best is None:  # pragma: no cover - xI - A is nonsingular
            break
        bi, bj = best
        m[top], m[bi] = m[bi], m[top]
        for row in m:
            row[top], row[bj] = row[bj], row[top]
        pivot = m[top][top]
        dirty = False
        for i in range(top + 1, n):
            if not pis_zero(m[i][top]):
                q, _ = pdivmod(m[i][top], pivot)
                if not pis_zero(q):
                    for j in range(top, n):
                        m[i][j] = psub(m[i][j], pmul(q, m[top][j]))
                if not pis_zero(m[i][top]):
                    dirty = True
        for j in range(top + 1, n):
            if not pis_zero(m[top][j]):
                q, _ = pdivmod(m[top][j], pivot)
                if not pis_zero(q):
                    for i in range(top, n):
                        m[i][j] = psub(m[i][j], pmul(q, m[i][top]))
                if not pis_zero(m[top][j]):
                    dirty = True
        if dirty:
            continue  # remainders of smaller degree appeared; re-pick pivot
        offender = None
        for i in range(top + 1, n):
            for j in range(top + 1, n):
                if not pis_zero(m[i][j]):
                    _, r = pdivmod(m[i][j], pivot)
                    if not pis_zero(r):
                        offender = i
                        break
            if offender is not None:
                break
        if offender is not None:
            # fold the offending row in; the next pass shrinks the pivot
            for j in range(top, n):
                m[top][j] = padd(m[top][j], m[offender][j])
            continue
        factors.append(pmonic(pivot))
        top += 1
    return [f for f in factors if pdeg(f) >= 1]


def _integer_conjugator_search(b1, b2, bound: int = 10):
    """Unimodular integer T with T b2 = b1 T and entries bounded, or None.

    The solution space of the Sylvester equation is an integer lattice;
    small combinations of its basis are scanned for determinant +-1.
    """
    n = len(b1)
    # matrix of X -> X B2 - B1 X acting on row-major vectorized X
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for k in range(n):
                row[i * n + k] += b2[k][j]
                row[k * n + j] -= b1[i][k]
            rows.append(row)
    # integer kernel: solutions viewed as the left kernel of the transpose
    transposed = [tuple(r[i] for r in rows) for i in range(n * n)]
    from .exactnum.intmat import kernel_basis, mat_det

    kernel = kernel_basis(transposed)
    dim = len(kernel)
    if dim == 0:
        return None
    if dim > 4:
        kernel = kernel[:4]  # keep the scan bounded; verdict stays undetermined
        dim = 4
    span = range(-3, 4) if dim > 2 else range(-bound, bound + 1)
    for combo in iter_product(span, repeat=dim):
        if all(c == 0 for c in combo):
            continue
        vec = [0] * (n * n)
        for c, basis_vec in zip(combo, kernel):
            if c:
                for idx in range(n * n):
                    vec[idx] += c * basis_vec[idx]
        if any(abs(v) > bound for v in vec):
            continue
        t = tuple(tuple(vec[i * n + j] for j in range(n)) for i in range(n))
        if mat_det(t) in (1, -1):
            return t
    return None


def companion_check(b1, b2) -> str:
    """Classify two integer matrices per the companion notion.

    distinct_char_poly when the characteristic polynomials differ;
    companion when they agree but the matrices are not similar over Q;
    similar_over_Q when an integer unimodular conjugator is found; and
    undetermined_Z_similarity when they are Q-similar but the bounded
    integer search is inconclusive.
    """
    b1 = tuple(tuple(int(x) for x in row) for row in b1)
    b2 = tuple(tuple(int(x) for x in row) for row in b2)
    n = len(b1)
    if len(b2) != n or any(len(r) != n for r in b1) or any(len(r) != n for r in b2):
        raise ShapeMismatch("matrices must be square and of equal size")
    if charpoly(b1) != charpoly(b2):
        return VERDICT_DISTINCT
    if _invariant_factors(b1) != _invariant_factors(b2):
        return VERDICT_COMPANION
    t = _integer_conjugator_search(b1, b2)
    if t is not None:
        return VERDICT_SIMILAR_Q
    return VERDICT_UNDETERMINED


# ---------------------------------------------------------------------------
# exports

def _matrix_strings(m):
    return [[str(x) for x in row] for row in m]


def export_bratteli(obj, fmt: str, stationary_levels: int = 5) -> str:
    """DOT or JSON rendering of a diagram descriptor."""
    if fmt == "json":
        return _export_json(obj)
    if fmt == "dot":
        return _export_dot(obj, stationary_levels)
    raise ValueError(f"unknown format {fmt!r}")


def _export_json(obj) -> str:
    if isinstance(obj, TrivialAF):
        payload = {"type": "trivial"}
    elif isinstance(obj, StationaryAF):
        payload = {
            "type": "stationary",
            "rank": obj.rank,
            "period_matrix": _matrix_strings(obj.period_matrix),
            "digits": [[str(b) for b in d] for d in obj.digits],
            "char_poly": [str(c) for c in obj.char_poly.coeffs],
        }
    elif isinstance(obj, BratteliDiagram):
        payload = {
            "type": "finite",
            "vertex_counts": list(obj.vertex_counts),
            "matrices": [_matrix_strings(m) for m in obj.matrices],
            "complete": obj.complete,
        }
    else:
        raise TypeError(f"cannot export {type(obj).__name__}")
    return json.dumps(payload, indent=1, sort_keys=True) + "\n"


def parse_bratteli_json(text: str):
    data = json.loads(text)
    kind = data.get("type")
    if kind == "trivial":
        return TrivialAF()
    if kind == "stationary":
        b = tuple(tuple(int(x) for x in row) for row in data["period_matrix"])
        u, _ = satz12_eigenvector(b)
        return StationaryAF(
            period_matrix=b,
            digits=tuple(tuple(int(x) for x in d) for d in data["digits"]),
            char_poly=charpoly(b),
            perron_value=u,
            perron_root=perron_embedding(u.field),
        )
    if kind == "finite":
        return BratteliDiagram(
            tuple(data["vertex_counts"]),
            tuple(tuple(tuple(int(x) for x in row) for row in m) for m in data["matrices"]),
            complete=data.get("complete", True),
        )
    raise ValueError(f"unknown diagram type {kind!r}")


def _export_dot(obj, stationary_levels: int) -> str:
    if isinstance(obj, TrivialAF):
        return 'digraph bratteli {\n  rankdir=TB;\n  v0_0 [shape=point];\n}\n'
    if isinstance(obj, StationaryAF):
        mats = [obj.period_matrix] * (stationary_levels - 1)
        counts = [obj.rank] * stationary_levels
        note = "stationary: level matrix repeats forever"
    else:
        mats = list(obj.matrices)
        counts = list(obj.vertex_counts)
        note = "finite diagram" if obj.complete else "truncated diagram (budget hit)"
    lines = ["digraph bratteli {", "  rankdir=TB;", f'  label="{note}";']
    for lvl, cnt in enumerate(counts):
        names = " ".join(f"v{lvl}_{r};" for r in range(cnt))
        lines.append(f"  {{ rank=same; {names} }}")
    for lvl, m in enumerate(mats):
        # m[r][s] edges join vertex s at this level to vertex r at the next
        for r, row in enumerate(m):
            for s, mult in enumerate(row):
                lines.extend([f"  v{lvl}_{s} -> v{lvl + 1}_{r};"] * mult)
    lines.append("}")
    return "\n".join(lines) + "\n"
