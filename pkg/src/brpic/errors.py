"""Exception hierarchy shared by every module.

The CLI maps any :class:`BrpicError` to exit status 1 and prints the class
name, so each subclass name doubles as a stable, user-visible error code.
"""


class BrpicError(Exception):
    """Base class for computation errors."""

    @property
    def name(self):
        return type(self).__name__


# groups
class GroupAxiomError(BrpicError):
    pass


class NotAssociative(GroupAxiomError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"multiplication is not associative at {triple}")


class NoIdentity(GroupAxiomError):
    def __init__(self):
        super().__init__("no two-sided identity element")


class NoInverse(GroupAxiomError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class MalformedTable(GroupAxiomError):
    pass


class ElementOutOfRange(BrpicError):
    pass


class NotASubgroup(BrpicError):
    pass


class InvalidAction(BrpicError):
    pass


# cohomology
class InvalidModule(BrpicError):
    pass


class UnsupportedField(BrpicError):
    pass


class TooLarge(BrpicError):
    pass


class NotAbelian(BrpicError):
    pass


class NotACocycle(BrpicError):
    pass


# galois / number fields
class InvalidScenario(BrpicError):
    pass


class RepeatedRoot(BrpicError):
    pass


class CoefficientNotFixed(BrpicError):
    pass


class ClosureFailure(BrpicError):
    def __init__(self, witness, H):
        self.witness = witness
        self.H = H
        super().__init__(
            f"union of double cosets is not a group: product of {witness[0]} "
            f"and {witness[1]} escapes H")


# fusion
class FusionAxiomError(BrpicError):
    pass


class AssociativityFailure(FusionAxiomError):
    def __init__(self, indices, detail=""):
        self.indices = tuple(indices)
        msg = f"associativity fails at {self.indices}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class DimensionBalanceFailure(AssociativityFailure):
    """Hom-space dimensions disagree between the two ways of moving an
    object across a tensor product (weighted Frobenius reciprocity)."""


class UnitFailure(FusionAxiomError):
    pass


class DualityFailure(FusionAxiomError):
    pass


class GradingFailure(FusionAxiomError):
    pass


class InvalidEndLabel(FusionAxiomError):
    pass


class NonGroupClosure(BrpicError):
    pass


class MissingGrading(BrpicError):
    pass


# seqkit
class MalformedMap(BrpicError):
    pass


class NotDivisible(BrpicError):
    pass


class H3Obstruction(BrpicError):
    def __init__(self, lower, upper):
        self.lower = lower
        self.upper = upper
        super().__init__(
            f"H^3(K; G_m) may be nontrivial: |BrPic| is only bounded, "
            f"{lower} <= |BrPic| <= {upper}")


class UnknownPostnikovClass(BrpicError):
    pass


# catalog
class SchemaError(BrpicError):
    pass


class ValidationError(BrpicError):
    def __init__(self, entry_id, cause):
        self.entry_id = entry_id
        self.cause = cause
        super().__init__(f"catalog entry {entry_id!r}: {type(cause).__name__}: {cause}")
