"""Exception types shared across the package."""


class TreeOrderError(Exception):
    """Base class for all treeorder errors."""


class InvalidDimensionError(TreeOrderError):
    """Lattice dimensions below the 2x2 minimum."""


class InvalidVertexError(TreeOrderError):
    """Vertex outside the lattice bounds."""


class EmptyComplementError(TreeOrderError):
    """Mask covers the whole lattice, leaving no complement."""


class InvalidRootError(TreeOrderError):
    """Requested tree root is not a vertex of the region."""


class DisconnectedRegionError(TreeOrderError):
    """Region is not connected, so no spanning tree exists."""


class SizeLimitError(TreeOrderError):
    """Input exceeds the size guard of an exact/enumerative routine."""


class EmptyMaskError(TreeOrderError):
    """Completion requires a nonempty mask."""


class DisconnectedMaskError(TreeOrderError):
    """Mask region is not connected."""


class DisconnectedComplementError(TreeOrderError):
    """Unmasked region is not connected."""


class AllCornersMaskedError(TreeOrderError):
    """Every lattice corner is masked; no root candidate remains."""


class InvalidRatioError(TreeOrderError):
    """Masking ratio outside the generatable range."""


class GenerationFailureError(TreeOrderError):
    """Randomized construction exhausted its attempt/trial budget."""


class InvalidTargetError(TreeOrderError):
    """Entropy target vertex already observed or out of range."""


class FileFormatError(TreeOrderError):
    """Base class for interchange-file parse and validation errors."""


class MalformedFileError(FileFormatError):
    """Unrecognized header, version, or unparseable payload."""


class DimensionMismatchError(FileFormatError):
    """Declared dimensions inconsistent with the payload."""


class NonPermutationError(FileFormatError):
    """Order payload is not a permutation of the lattice."""


class MaskInvariantError(FileFormatError):
    """Mask file violates a mask invariant (connectivity, size, corners)."""
