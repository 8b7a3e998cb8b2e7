"""Exception hierarchy shared by all modules."""


class BeliefHCError(ValueError):
    """Base class for every error raised by this package."""


class SumExceedsOne(BeliefHCError):
    pass


class FrameMismatch(BeliefHCError):
    pass


class TotalConflict(BeliefHCError):
    """Raised when two mass functions are in complete conflict (m(empty) == 1)."""


class DimensionMismatch(BeliefHCError):
    pass


class MissingSummaries(BeliefHCError):
    """Ward linkage was requested without cluster centers and sizes."""


class TooFewObjects(BeliefHCError):
    pass


class SingleCluster(BeliefHCError):
    pass


class InvalidK(BeliefHCError):
    pass


class SizeMismatch(BeliefHCError):
    pass


class ParseError(BeliefHCError):
    def __init__(self, message, row=None, column=None):
        loc = []
        if row is not None:
            loc.append(f"row {row}")
        if column is not None:
            loc.append(f"column {column!r}")
        if loc:
            message = f"{message} ({', '.join(loc)})"
        super().__init__(message)
        self.row = row
        self.column = column


class RaggedRows(ParseError):
    pass
