"""Exception types shared across the package."""


class CohortOptError(Exception):
    """Base class for all errors raised by cohort_opt."""


class ConfigurationError(CohortOptError, ValueError):
    """Invalid engine, scheme, problem or experiment settings."""


class EvaluationError(CohortOptError, ArithmeticError):
    """An objective or constraint produced an unusable value."""


class ProblemLookupError(CohortOptError, KeyError):
    """Unknown problem name."""

    def __init__(self, name, valid):
        self.name = name
        self.valid = tuple(valid)
        super().__init__(name)

    def __str__(self):
        return f"unknown problem {self.name!r}; valid names: {', '.join(self.valid)}"
