from fractions import Fraction

import pytest

from heckeaf.errors import NotMonic, NotSquarefree, ReduciblePolynomial
from heckeaf.exactnum.polynomial import (
    IntPolynomial,
    assert_irreducible,
    is_irreducible,
    is_squarefree,
    pdivmod,
    pgcd,
    pxgcd,
    pmul,
    root_bound,
    sturm_chain,
    sturm_count,
)


def P(*coeffs):
    return IntPolynomial(tuple(coeffs))


def test_basic_structure():
    p = P(-5, 0, 1)
    assert p.degree == 2
    assert p.is_monic()
    assert p.evaluate(Fraction(3)) == 4
    assert p.derivative() == P(0, 2)
    assert str(p) == "x^2 - 5"
    assert str(P(-1, -1, 1)) == "x^2 - x - 1"


def test_trailing_zeros_are_normalized():
    assert P(1, 2, 0, 0).degree == 1
    assert P(0, 0).degree == 0
    assert P().is_zero()


@pytest.mark.parametrize("coeffs", [
    (-5, 0, 1),        # x^2 - 5
    (-1, 1),           # x - 1
    (1, 0, 1),         # x^2 + 1: no real roots, still irreducible
    (-1, -1, 0, 1),    # x^3 - x - 1
    (1, 0, 0, 0, 1),   # x^4 + 1: reducible mod every prime
    (-1, 5, -5, -1, 1),
    (-1, 1, 1),        # x^2 + x - 1
    (3, -5, 0, 1),
    (-3, -4, 1, 1),
])
def test_irreducible_cases(coeffs):
    assert is_irreducible(P(*coeffs))


@pytest.mark.parametrize("coeffs", [
    (-4, 0, 1),            # (x-2)(x+2)
    (0, 1, 1),             # x(x+1)
    (2, 3, 1),             # (x+1)(x+2)
    (1, 0, -3, 0, 1),      # (x^2-x-1)(x^2+x-1)
    (-2, 1, -2, 1),        # (x-2)(x^2+1): one rational root
])
def test_reducible_cases(coeffs):
    with pytest.raises(ReduciblePolynomial):
        assert_irreducible(P(*coeffs))


def test_non_monic_and_squarefree_guards():
    with pytest.raises(NotMonic):
        assert_irreducible(P(-5, 0, 2))
    with pytest.raises(NotSquarefree):
        assert_irreducible(P(1, 2, 3, 2, 1))  # (x^2+x+1)^2
    assert not is_squarefree(P(1, 2, 1))
    assert is_squarefree(P(-4, 0, 1))


def test_rational_poly_division_and_gcd():
    a = [Fraction(c) for c in (-1, 0, 1)]       # x^2 - 1
    b = [Fraction(c) for c in (1, 1)]           # x + 1
    q, r = pdivmod(a, b)
    assert r == [Fraction(0)]
    assert q == [Fraction(-1), Fraction(1)]
    g = pgcd(a, b)
    assert g == [Fraction(1), Fraction(1)]
    g2, s, t = pxgcd(a, [Fraction(c) for c in (1, 0, 1)])
    # x^2-1 and x^2+1 are coprime
    assert g2 == [Fraction(1)]
    lhs = pmul(s, a)
    rhs = pmul(t, [Fraction(c) for c in (1, 0, 1)])
    total = [x + y for x, y in zip(
        lhs + [Fraction(0)] * (max(len(lhs), len(rhs)) - len(lhs)),
        rhs + [Fraction(0)] * (max(len(lhs), len(rhs)) - len(rhs)))]
    assert total[0] == 1 and all(c == 0 for c in total[1:])


def test_sturm_counts_match_known_roots():
    p = P(-5, 0, 1)
    chain = sturm_chain(p.rational_coeffs())
    b = root_bound(p)
    assert sturm_count(chain, -b, b) == 2
    assert sturm_count(chain, Fraction(0), b) == 1
    assert sturm_count(chain, Fraction(3), b) == 0

    q = P(1, 0, 1)  # no real roots
    chain = sturm_chain(q.rational_coeffs())
    b = root_bound(q)
    assert sturm_count(chain, -b, b) == 0
