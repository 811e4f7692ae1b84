"""Exception hierarchy shared by every module of the package."""


class MaxProdError(Exception):
    """Base class for all errors raised by :mod:`maxprod`."""


class DomainError(MaxProdError, ValueError):
    """An argument lies outside the mathematical domain (e.g. ``x < 0``)."""


class PreconditionError(MaxProdError, ValueError):
    """A documented side condition of an operation is violated."""


class HypothesisError(PreconditionError):
    """Theorem hypotheses do not hold for the requested parameters."""


class CertificateError(MaxProdError):
    """A certified modulus upper bound is required but unavailable."""


class NonCertifiedError(MaxProdError):
    """A truncated scan could not be certified within the term budget."""


class UnknownFunctionError(MaxProdError, KeyError):
    """Requested function id is not in the registry."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""
