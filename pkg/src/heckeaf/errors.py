"""Exception types shared across the package.

Every domain error raised by the library derives from HeckeafError, so
callers (in particular the CLI) can separate bad input from bugs.
"""


class HeckeafError(Exception):
    pass


# polynomial / field construction

class NotMonic(HeckeafError):
    pass


class ReduciblePolynomial(HeckeafError):
    pass


class NotSquarefree(HeckeafError):
    pass


class IrreducibilityUndecided(HeckeafError):
    """The bounded irreducibility procedure ran out of budget."""


class DivisionByZero(HeckeafError, ZeroDivisionError):
    pass


# lattices / orders / units

class NotFullRank(HeckeafError):
    pass


class UnitNotFound(HeckeafError):
    pass


class NotEndomorphism(HeckeafError):
    pass


class NonnegativeFormNotFound(HeckeafError):
    pass


# continued fractions

class NotFactorizable(HeckeafError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = list(partial) if partial is not None else []


class ReducibleCharPoly(HeckeafError):
    pass


class DegenerateSpectrum(HeckeafError):
    """No usable Perron structure (identity, imprimitive, ...)."""


class RoundTripMismatch(HeckeafError):
    pass


# AF layer

class ShapeMismatch(HeckeafError):
    pass


# Hecke layer

class SchemaError(HeckeafError):
    pass


class NotNormalized(HeckeafError):
    pass


class HeckeRelationViolated(HeckeafError):
    def __init__(self, message, m=None, n=None):
        super().__init__(message)
        self.m = m
        self.n = n


class InsufficientCoefficients(HeckeafError):
    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class NotGenerated(HeckeafError):
    pass


class NotTotallyReal(HeckeafError):
    pass


class ModuleNotStable(HeckeafError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
