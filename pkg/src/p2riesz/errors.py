"""Exception types shared across the package."""


class UnsupportedAlgebraError(ValueError):
    """Operation is not defined over the requested division algebra."""


class NotPositiveDefiniteError(ValueError):
    """A Hermitian matrix failed a positive-definiteness check."""


class DomainError(ValueError):
    """Parameter lies outside the domain of a special function or distribution."""


class SupportError(ValueError):
    """Evaluation point lies outside the support of the distribution."""
