"""Exception hierarchy. Every error carries a stable machine-readable ``code``."""

from __future__ import annotations


class CircleConfError(Exception):
    code = "ERROR"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details


class NotDisjointError(CircleConfError):
    code = "NOT_DISJOINT"


class DuplicatePointError(CircleConfError):
    code = "DUPLICATE_POINT"


class InvalidConfigurationError(CircleConfError):
    code = "INVALID_CONFIGURATION"


class SizeMismatchError(CircleConfError):
    code = "SIZE_MISMATCH"


class ParseError(CircleConfError):
    code = "PARSE_ERROR"

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (at position {position})",
                         position=position)
        self.position = position


class LabelError(CircleConfError):
    code = "LABEL_ERROR"


class StrandMismatchError(CircleConfError):
    code = "STRAND_MISMATCH"


class PartitionMismatchError(CircleConfError):
    code = "PARTITION_MISMATCH"


class ShapeMismatchError(CircleConfError):
    code = "SHAPE_MISMATCH"


class NotALoopError(CircleConfError):
    code = "NOT_A_LOOP"


class BasepointMismatchError(CircleConfError):
    code = "BASEPOINT_MISMATCH"


class NonGenericError(CircleConfError):
    code = "NON_GENERIC"


class InvalidPathError(CircleConfError):
    code = "INVALID_PATH"


class DifferentComponentError(CircleConfError):
    code = "DIFFERENT_COMPONENT"


class TypeMismatchError(CircleConfError):
    code = "TYPE_MISMATCH"


class NotIsomorphicError(CircleConfError):
    code = "NOT_ISOMORPHIC"
