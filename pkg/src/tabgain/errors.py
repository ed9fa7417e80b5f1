"""Exception types raised across the toolkit.

Every error the pipeline can raise deliberately derives from TabgainError so
the CLI can map failures onto its exit-code contract (2 config, 3 data,
4 model) without matching on message text.
"""


class TabgainError(Exception):
    """Base class for all toolkit errors."""


# data / schema errors -------------------------------------------------------

class SchemaError(TabgainError):
    """Invalid column schema (bad kind/role combination, duplicate names...)."""


class MissingColumnError(SchemaError):
    """A column required by the schema is absent from the input."""


class DuplicateHeaderError(SchemaError):
    """A CSV header repeats a schema column name."""


class UnparsableCellError(TabgainError):
    """A CSV cell could not be parsed under its column's declared kind."""

    def __init__(self, row, column, value, reason=""):
        self.row = row
        self.column = column
        self.value = value
        detail = f" ({reason})" if reason else ""
        super().__init__(
            f"row {row}, column {column!r}: cannot parse {value!r}{detail}"
        )


class UnknownColumnError(TabgainError):
    """A transform was applied to a column it was never fitted on."""


class EmptyTableError(TabgainError):
    """An operation that needs rows received (or produced) none."""


class MissingCellsError(TabgainError):
    """An operation that requires complete data found missing cells."""


# ranking errors --------------------------------------------------------------

class EmptyCountsError(TabgainError):
    """Entropy requested for a class-count vector that sums to zero."""


class NumericAttributeError(TabgainError):
    """A numeric column was passed where a categorical one is required."""


# model errors ----------------------------------------------------------------

class SingleClassTrainingError(TabgainError):
    """Training data contains only one target class."""


class SchemaMismatchError(TabgainError):
    """A scoring input does not match the model's training schema."""


# evaluation errors -----------------------------------------------------------

class TooFewInstancesError(TabgainError):
    """Not enough instances of some class to build the requested folds."""


class LengthMismatchError(TabgainError):
    """Parallel score/label sequences have different lengths."""


class SingleClassLabelsError(TabgainError):
    """ROC/AUC requested for labels containing a single class."""


class InvalidSpecError(TabgainError):
    """A spec (synthetic-data, model, or model document) violates its constraints."""
