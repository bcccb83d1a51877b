"""Exception types shared across the package."""


class ArbozetaError(Exception):
    """Base class for all package-specific errors."""


class AlphabetMismatch(ArbozetaError):
    """Decorations from different alphabets were mixed in one expression."""


class InvalidDecoration(ArbozetaError):
    """A decoration value outside every supported alphabet."""


class UnsupportedAlphabet(ArbozetaError):
    """Operation requires a specific alphabet (e.g. additive weight needs positive integers)."""


class SemigroupRequired(ArbozetaError):
    """A contracting product (lambda != 0) was requested on an alphabet without a semigroup."""


class NotSemiconvergent(ArbozetaError):
    """Binary word does not end in y, so it has no composition preimage."""


class NotInImage(ArbozetaError):
    """Forest over {x,y} is not in the image of the branched binarisation."""


class NonConvergent(ArbozetaError):
    """A divergent basis element survived cancellation where convergence is required."""


class DivergentIndex(ArbozetaError):
    """Composition outside the convergence domain of the requested series."""


class DomainError(ArbozetaError):
    """Numeric argument outside the admissible domain (e.g. z >= 1 for polylogarithms)."""


class PrecisionUnreachable(ArbozetaError):
    """The summation cap was hit before the certified error met the target."""


class ParseError(ArbozetaError):
    """Input text does not match the expression grammar."""
