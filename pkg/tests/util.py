"""Shared helpers for the test suite."""

from fractions import Fraction

from heckeaf.exactnum.intmat import mat_identity


def random_unimodular(n, rng, steps=14):
    """A random element of GL_n(Z) as a product of elementary matrices."""
    m = [list(row) for row in mat_identity(n)]
    for _ in range(steps):
        kind = rng.randrange(3)
        i = rng.randrange(n)
        j = rng.randrange(n)
        if kind == 0 and i != j:
            c = rng.randint(-3, 3)
            if c:
                for k in range(n):
                    m[i][k] += c * m[j][k]
        elif kind == 1 and i != j:
            m[i], m[j] = m[j], m[i]
        elif kind == 2:
            for k in range(n):
                m[i][k] = -m[i][k]
    return tuple(tuple(row) for row in m)


def admissible_digits(rng, n, length, max_entry=5):
    """Random digit vectors forming a canonical periodic expansion.

    For n = 2 the entries are 1..max_entry; for larger n the last entry is
    1..max_entry and the others are strictly smaller than it, which keeps
    the infinite repetition inside the expansion map's image.
    """
    out = []
    for _ in range(length):
        last = rng.randint(1, max_entry)
        rest = [rng.randint(0, last - 1) for _ in range(n - 2)]
        out.append(tuple(rest + [last]))
    return out


def random_rational(rng, span=40):
    num = rng.randint(-span, span)
    den = rng.randint(1, span)
    return Fraction(num, den)


def random_element(field, rng, span=12):
    return field.element([random_rational(rng, span) for _ in range(field.degree)])
