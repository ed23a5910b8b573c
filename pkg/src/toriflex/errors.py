"""Exception types shared across the workbench."""


class WorkbenchError(Exception):
    """Base class for domain errors raised by toriflex operations."""


class ConeShapeError(WorkbenchError):
    """A cone fails a pointedness / full-dimensionality precondition."""


class ChartError(WorkbenchError):
    """An operation was asked to act outside its supported chart class."""


class SupportError(WorkbenchError):
    """A monomial sum left the weight monoid of the coordinate ring."""


class BudgetError(WorkbenchError):
    """A bounded search or iteration exhausted its budget.

    Carries enough context to reproduce the stuck state; a BudgetError is a
    report, never a silent wrong answer.
    """

    def __init__(self, message: str, detail=None):
        super().__init__(message)
        self.detail = detail
