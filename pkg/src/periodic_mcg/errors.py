"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`MCGError`,
which is itself a :class:`ValueError` so callers that only care about bad
input can catch that.
"""


class MCGError(ValueError):
    pass


# nec
class InvalidSignature(MCGError):
    pass


class NonIntegralGenus(MCGError):
    pass


class NotASurface(MCGError):
    pass


class SignatureMismatch(MCGError):
    pass


class SearchSpaceTooLarge(MCGError):
    pass


class UnsupportedFamily(MCGError):
    pass


class AutomorphismNotApplicable(MCGError):
    pass


# involutions / closure
class GenusTooSmall(MCGError):
    pass


class NotApplicable(MCGError):
    pass


class InvalidClass(MCGError):
    pass


# homology
class UnsupportedModel(MCGError):
    pass


class QuotientUndefined(MCGError):
    pass


class NotUnimodular(MCGError):
    pass


class InvalidParameters(MCGError):
    pass


# polygon
class MalformedSymbol(MCGError):
    pass


class NotAdmissible(MCGError):
    pass


class GeneratorNotPrimitive(MCGError):
    pass


class DegenerateCurve(MCGError):
    pass


class NotInGeneralPosition(MCGError):
    pass
