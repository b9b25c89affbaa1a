"""Exception hierarchy shared across the package."""


class WeilMassError(Exception):
    """Base class for all package-specific errors."""


class FactorizationBudgetError(WeilMassError):
    """An integer has a prime cofactor above the configured trial-division bound."""


class ReducibleError(WeilMassError):
    """A polynomial required to be irreducible over Q is not."""


class PatternMismatchError(WeilMassError):
    """A mod-ell factorization pattern is incompatible with an abelian quartic splitting field."""


class OutOfScopeShapeError(WeilMassError):
    """A matrix is neither cyclic nor regular semisimple with equal-degree factors."""


class OracleBudgetError(WeilMassError):
    """Group enumeration requested beyond the supported size budget."""


class IdentificationError(WeilMassError):
    """Dirichlet character group identification failed."""


class NoCandidateError(IdentificationError):
    """No character candidate matches the observed splitting data."""


class AmbiguousCandidateError(IdentificationError):
    """More than one character candidate matches; raise the test-prime bound."""


class IntegralityError(WeilMassError):
    """A quantity that must be a positive integer failed the rounding gate."""
