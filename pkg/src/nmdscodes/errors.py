"""Exception types shared across the package.

The CLI maps these onto process exit codes, so library code should raise
the most specific one that applies rather than a bare ValueError.
"""


class HypothesisError(ValueError):
    """Inputs violate a precondition of the underlying construction.

    Examples: k not divisible by p, a parameter pair failing the
    integer conditions, a point that is not on the curve.
    """


class BudgetError(RuntimeError):
    """An exact enumeration would exceed the configured work budget.

    Raised instead of silently sampling or approximating.
    """


class CertificationError(AssertionError):
    """An internal cross-check failed.

    This signals a contradiction between two independent computations
    (for example a measured design parameter disagreeing with its closed
    form), not bad user input.
    """
