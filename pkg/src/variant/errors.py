"""Exception types raised across the package."""


class VariantError(Exception):
    """Base class for all errors raised by this package."""


class EmptyTree(VariantError):
    """A genealogy tree has no levels."""


class TooFewConcepts(VariantError):
    """An operation needs more concepts than the space provides."""


class UnknownLevel(VariantError):
    """A requested abstraction level is not present in the tree."""


class CountMismatch(VariantError):
    """Per-node concept counts do not sum to the space size."""


class InconsistentHierarchy(VariantError):
    """A child idea label appears under two distinct parents."""


class ZeroWeightSum(VariantError):
    """Level weights sum to zero over the levels being aggregated."""


class ShapeMismatch(VariantError):
    """Vectors or matrices have incompatible dimensions."""


class ZeroVector(VariantError):
    """An embedding of non-empty text came back with zero norm."""


class ProviderUnavailable(VariantError):
    """The external embedding service failed or returned garbage."""


class MissingPrecomputedVector(VariantError):
    """No stored vector for the requested (concept_id, level) key."""


class BadK(VariantError):
    """Cluster count outside 1..N."""


class ParseError(VariantError):
    """Input file could not be parsed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class SchemaError(VariantError):
    """Input file parsed but does not match the expected schema."""


class DuplicateInstance(VariantError):
    """Two rows share the same (concept_id, instance_id) pair."""
