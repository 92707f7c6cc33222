"""Domain errors. Each carries a stable ``code`` used by the CLI error object."""

from __future__ import annotations


class TorificError(Exception):
    code = "TorificError"

    def __init__(self, message: str = "", **context):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.context = context

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "context": self.context}


def _make(name: str, doc: str):
    return type(name, (TorificError,), {"code": name, "__doc__": doc})


NotPointed = _make("NotPointed", "The cone in question contains a line.")
DimensionMismatch = _make("DimensionMismatch", "Vector length differs from the ambient rank.")
NotSharp = _make("NotSharp", "Operation requires a monoid without nonzero units.")
NotAFace = _make("NotAFace", "Given submonoid is not a face.")
NotAFacet = _make("NotAFacet", "Given face is not a facet.")
NotMember = _make("NotMember", "Element does not lie in the monoid.")
UndecidedMembership = _make("UndecidedMembership", "Bounded membership search exceeded its budget.")
CriterionMismatch = _make("CriterionMismatch", "Two equivalent criteria disagreed; this is a bug.")
NotSaturatedParent = _make("NotSaturatedParent", "Parent monoid must be saturated.")
NotPrime = _make("NotPrime", "Ideal is not prime.")
ZeroIdeal = _make("ZeroIdeal", "Operation undefined for the zero ideal.")
ThresholdSearchExhausted = _make("ThresholdSearchExhausted", "No certified threshold up to the cap.")
NotSurjective = _make("NotSurjective", "Grading is not surjective onto a free target.")
ZeroCharacterInSigma = _make("ZeroCharacterInSigma", "Signature entries must be nonzero.")
UnknownComponent = _make("UnknownComponent", "Removed normal is not a facet normal.")
NotBalanced = _make("NotBalanced", "Character multiset does not sum to zero.")
RayOutsideSupport = _make("RayOutsideSupport", "Ray does not lie in the support of the fan.")
NotAnAutomorphism = _make("NotAnAutomorphism", "Matrix does not preserve the fan.")
SchemaError = _make("SchemaError", "Input document failed validation.")
InvalidFan = _make("InvalidFan", "Cones do not form a fan.")
GroupTooLarge = _make("GroupTooLarge", "Generated group exceeded its order bound.")
