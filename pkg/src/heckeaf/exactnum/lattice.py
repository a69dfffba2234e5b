"""Full Z-modules in a number field, in canonical Hermite form.

A module is stored as a common denominator d plus an n x n integer matrix
in row HNF; the rows divided by d are the coordinates of the basis in the
field's power basis.  Canonical form makes module equality (and therefore
basis-change invariance) a plain data comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from ..errors import NotFullRank
from .field import FieldElement, NumberField
from .intmat import lattice_intersect, row_hnf_transform


@dataclass(frozen=True)
class ZModule:
    field: NumberField
    den: int
    rows: tuple  # n x n integer HNF rows

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis_elements(self) -> tuple:
        d = Fraction(1, self.den)
        return tuple(
            self.field.element([c * d for c in row]) for row in self.rows
        )

    def contains(self, elem: FieldElement) -> bool:
        if elem.field != self.field:
            return False
        target = [c * self.den for c in elem.coords]
        if any(t.denominator != 1 for t in target):
            return False
        target = [int(t) for t in target]
        # back-substitute against the triangular HNF rows
        coeffs = [0] * len(self.rows)
        pivots = []
        for i, row in enumerate(self.rows):
            j = next(k for k, v in enumerate(row) if v != 0)
            pivots.append(j)
        rem = list(target)
        for i, row in enumerate(self.rows):
            j = pivots[i]
            if rem[j] % row[j] != 0:
                return False
            q = rem[j] // row[j]
            coeffs[i] = q
            rem = [r - q * v for r, v in zip(rem, row)]
        return all(r == 0 for r in rem)

    def coordinates_of(self, elem: FieldElement):
        """Integer coordinates of elem in this basis, or None."""
        target = [c * self.den for c in elem.coords]
        if any(t.denominator != 1 for t in target):
            return None
        rem = [int(t) for t in target]
        coeffs = [0] * len(self.rows)
        for i, row in enumerate(self.rows):
            j = next(k for k, v in enumerate(row) if v != 0)
            if rem[j] % row[j] != 0:
                return None
            q = rem[j] // row[j]
            coeffs[i] = q
            rem = [r - q * v for r, v in zip(rem, row)]
        if any(rem):
            return None
        return tuple(coeffs)

    def scaled_by(self, elem: FieldElement) -> "ZModule":
        """The module elem * self."""
        gens = [b * elem for b in self.basis_elements()]
        return module_from_generators(self.field, gens)

    def covolume(self) -> Fraction:
        # rows are triangular, so the determinant is the product of pivots
        prod = 1
        for i in range(len(self.rows)):
            prod *= self.rows[i][i]
        return Fraction(prod, self.den ** len(self.rows))

    def __repr__(self):
        return f"ZModule(den={self.den}, rows={self.rows})"


def module_from_generators(field: NumberField, gens) -> ZModule:
    """Canonical full module spanned over Z by the generators.

    Generators may be FieldElements or coordinate rows.  Raises NotFullRank
    when the span has rank below the field degree.
    """
    n = field.degree
    coord_rows = []
    for g in gens:
        if isinstance(g, FieldElement):
            coord_rows.append(list(g.coords))
        else:
            row = [Fraction(c) for c in g]
            row += [Fraction(0)] * (n - len(row))
            coord_rows.append(row)
    if not coord_rows:
        raise NotFullRank("no generators")
    den = 1
    for row in coord_rows:
        for c in row:
            den = lcm(den, c.denominator)
    int_rows = [[int(c * den) for c in row] for row in coord_rows]
    h, _, rank = row_hnf_transform(int_rows)
    if rank < n:
        raise NotFullRank(f"generators span rank {rank} < {n}")
    # normalize out any common factor shared with the denominator
    g = den
    for row in h:
        for x in row:
            g = gcd(g, x)
    if g > 1:
        den //= g
        h = tuple(tuple(x // g for x in row) for row in h)
    return ZModule(field, den, h)


def module_intersect(m1: ZModule, m2: ZModule) -> ZModule:
    if m1.field != m2.field:
        raise ValueError("modules in different fields")
    d = lcm(m1.den, m2.den)
    a = tuple(tuple(x * (d // m1.den) for x in row) for row in m1.rows)
    b = tuple(tuple(x * (d // m2.den) for x in row) for row in m2.rows)
    inter = lattice_intersect(a, b)
    rows = [[Fraction(x, d) for x in row] for row in inter]
    return module_from_generators(m1.field, rows)


@dataclass(frozen=True)
class OrderRing:
    """A full module that is a ring containing 1 (an order)."""

    module: ZModule

    def __post_init__(self):
        if not self.module.contains(self.module.field.one):
            raise ValueError("order does not contain 1")

    @property
    def field(self) -> NumberField:
        return self.module.field

    def basis_elements(self):
        return self.module.basis_elements()

    def contains(self, elem: FieldElement) -> bool:
        return self.module.contains(elem)

    def is_multiplicatively_closed(self) -> bool:
        basis = self.module.basis_elements()
        return all(
            self.module.contains(a * b) for a in basis for b in basis
        )


def endomorphism_ring(m: ZModule) -> OrderRing:
    """The coefficient order {alpha : alpha * m is contained in m}.

    Computed as the intersection of the modules m * g^(-1) over the basis
    elements g of m.
    """
    basis = m.basis_elements()
    result = None
    for g in basis:
        cand = m.scaled_by(g.inverse())
        result = cand if result is None else module_intersect(result, cand)
    return OrderRing(result)
