"""heckeaf: exact continued fractions and the AF data of Hecke eigenforms.

The package builds, in exact arithmetic, the stationary AF-algebra
descriptor attached to a weight-2 Hecke eigenform: the coefficient number
field, a full module and its endomorphism order, an expanding unit, the
non-negative matrix of its action, the unique block factorization of that
matrix, and the resulting Bratteli diagram / dimension group.  It also
exposes general-purpose Jacobi-Perron expansion with exact periodicity
detection.
"""

__version__ = "0.1.0"

from . import afalg, errors, exactnum, hecke, mcf

__all__ = ["afalg", "errors", "exactnum", "hecke", "mcf", "__version__"]
