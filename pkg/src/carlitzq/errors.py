"""Exception hierarchy shared by every module of the package."""


class CarlitzError(Exception):
    """Base class for all errors raised by carlitzq."""


class DomainError(CarlitzError, ValueError):
    pass


class BackendMismatch(DomainError):
    """Operands live in different scalar backends or over different primes."""


class NotAUnit(DomainError):
    pass


class NotPIntegral(DomainError):
    """A rational with p in its denominator was reduced mod p^N."""


class EvenModulus(DomainError):
    pass


class NotMultiplicative(DomainError):
    pass


class OrderNotDividing(DomainError):
    pass


class BadConductorMultiple(DomainError):
    pass


class PrecisionExhausted(CarlitzError, ArithmeticError):
    """No certified digits remain for the requested result."""


class PrecisionNotReached(CarlitzError):
    """A limit did not stabilize at the requested precision within the level cap."""

    def __init__(self, max_level, target, achieved=None):
        self.max_level = max_level
        self.target = target
        self.achieved = achieved
        msg = f"no stabilization to p^{target} by lattice level {max_level}"
        if achieved is not None:
            msg += f" (best agreement p^{achieved})"
        super().__init__(msg)
