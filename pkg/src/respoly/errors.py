"""Exception types shared across the package.

Every error raised by library code derives from RespolyError so callers
(and the CLI) can catch one base class. TooLarge is special-cased by the
CLI: guard violations map to a distinct exit code.
"""


class RespolyError(Exception):
    """Base class for all errors raised by this package."""


class ZeroSum(RespolyError):
    """Normalization is undefined: the coefficients sum to zero."""


class BadModulus(RespolyError):
    """The modulus d of x^d - 1 must be an integer >= 2."""


class ModulusMismatch(RespolyError):
    """Residue vectors live in different rings (unequal d)."""


class DimensionMismatch(RespolyError):
    """Matrix operands have incompatible dimensions."""


class TooLarge(RespolyError):
    """A size guard was exceeded (set RESPOLY_GUARD_OVERRIDE=1 to lift)."""


class NotNonnegative(RespolyError):
    """The operation requires a polynomial with no negative coefficients."""


class ZeroPolynomial(RespolyError):
    """The operation requires a nonzero polynomial."""


class NotPositive(RespolyError):
    """The operation requires a matrix with strictly positive entries."""


class NotDoublyStochastic(RespolyError):
    """Row or column sums differ from 1, or an entry is negative."""


class NotStochastic(RespolyError):
    """The polynomial's coefficients must sum to 1."""


class BadLambda(RespolyError):
    """The mixing weight must satisfy 0 < lambda <= 1."""


class NoCertificate(RespolyError):
    """No positivity certificate exists, so the hypotheses are unmet."""


class ConstantPolynomial(RespolyError):
    """A constant polynomial never equidistributes (mass stays at 0)."""


class ParseError(RespolyError):
    """A coefficient token could not be parsed."""


class EmptyInput(RespolyError):
    """The coefficient list is empty."""


class MethodUnavailable(RespolyError):
    """The requested method does not exist in the requested numeric mode."""
