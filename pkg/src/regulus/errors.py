"""Exception types shared across the package."""


class RegulusError(Exception):
    """Base class for all package-specific errors."""


class RingMismatch(RegulusError):
    """Two series over different rings were combined."""


class NonUnitConstantTerm(RegulusError):
    """Inversion requested for a series whose constant term is not a unit."""


class IncompatibleModulus(RegulusError):
    """reduce_mod target does not divide the source modulus."""


class TruncationTooSmall(RegulusError):
    """A coefficient beyond the known truncation was requested."""


class DomainError(RegulusError):
    """An argument is outside the mathematical domain of the operation."""


class CostLimit(RegulusError):
    """A guarded computation would exceed its built-in cost cap."""


class UnknownIdentity(RegulusError):
    """Identity id not present in the catalog."""


class UnknownSelection(RegulusError):
    """A claim/theorem/identity selection matched nothing."""


class ConditionsNotMet(RegulusError):
    """Eta-quotient does not satisfy the modular-transformation conditions."""


class NotADivisor(RegulusError):
    """Cusp denominator does not divide the level."""


class HypothesisViolated(RegulusError):
    """A lemma hypothesis fails for the supplied parameters."""

    def __init__(self, hypothesis: str):
        super().__init__(f"hypothesis violated: {hypothesis}")
        self.hypothesis = hypothesis


class SideConditionViolated(RegulusError):
    """A theorem side condition fails for the supplied family parameters."""

    def __init__(self, condition: str):
        super().__init__(f"side condition violated: {condition}")
        self.condition = condition


class ParseError(RegulusError):
    """Malformed f-quotient or eta-quotient literal."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class BudgetExceeded(RegulusError):
    """Requested truncation exceeds the configured budget."""
