"""Exception types raised across the package."""


class ArtifactError(Exception):
    """Base class for all package errors."""


class GradingError(ArtifactError):
    """A map entry is not homogeneous for the declared gradings."""


class NotAChainMap(ArtifactError):
    pass


class NotAnIotaCandidate(ArtifactError):
    """The U-localised homology does not have rank one."""


class NoHomotopy(ArtifactError):
    pass


class GradingCosetMismatch(ArtifactError):
    pass


class SearchTooLarge(ArtifactError):
    pass


class EmptySelection(ArtifactError):
    pass


class UnsupportedLeaf(ArtifactError):
    pass


class NotLSpaceForm(ArtifactError):
    pass


class NotPositiveLSpace(ArtifactError):
    pass


class ParityError(ArtifactError):
    pass


class HalfInteger(ArtifactError):
    pass


class UnsupportedIota(ArtifactError):
    pass


class PrimitiveNotFound(ArtifactError):
    pass


class ThresholdViolated(ArtifactError):
    pass


class FixtureFailed(ArtifactError):
    pass


class ZeroLinking(ArtifactError):
    pass


class UnknownTarget(ArtifactError):
    pass


class KnotSyntaxError(ArtifactError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SemanticError(ArtifactError):
    pass
