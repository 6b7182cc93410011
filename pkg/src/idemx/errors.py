"""Exception types shared across the toolkit."""


class IdemxError(Exception):
    """Base class for all toolkit errors."""


class MembershipViolation(IdemxError):
    """A point is missing from its own minimal neighborhood."""


class PreorderViolation(IdemxError):
    """Minimal neighborhoods fail to nest, so they generate no topology."""


class InvariantViolation(IdemxError):
    """A structural invariant of an input object does not hold.

    ``path`` locates the offending field, e.g. ``"dist.symmetry"``.
    """

    def __init__(self, path: str, message: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if message else path)


class EmptySet(IdemxError):
    """An operation received an empty subset where a nonempty one is required."""


class TooLarge(IdemxError):
    """Instance exceeds the exhaustive-enumeration cap for this operation."""


class UnknownAxiom(IdemxError):
    """Axiom name is not one of the recognised identities."""


class AxiomPrecheckFailed(IdemxError):
    """The functional fails an axiom required before the operation is meaningful."""


class BudgetExhaustedInconclusive(IdemxError):
    """Search budget spent without either a witness or a verified certificate."""


class ModeArity(IdemxError):
    """Upper Vietoris neighborhoods take exactly one open set."""


class SpaceMismatch(IdemxError):
    """Objects that must share a space do not."""


class NotARetraction(IdemxError):
    """The set-valued map does not fix the subspace pointwise."""


class NotNormalized(IdemxError):
    """The extender does not send the constant-one function to constant one."""


class ClassificationFailed(IdemxError):
    """A pointwise functional of an extender is neither min-type nor max-type.

    ``point`` names the offending point of the ambient space.
    """

    def __init__(self, point: str, message: str = ""):
        self.point = point
        super().__init__(f"at point {point!r}" + (f": {message}" if message else ""))


class ParseError(IdemxError):
    """Instance file is not valid JSON or matches none of the known schemas."""


class UnknownSuite(IdemxError):
    """Campaign suite name is not in the catalogue."""
