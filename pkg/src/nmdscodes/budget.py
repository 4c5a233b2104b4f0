"""Work budgets for exact enumerations.

Every potentially explosive enumeration checks its candidate count
against a budget first and raises BudgetError instead of degrading to
sampling.  The NMDS_BUDGET environment variable overrides all defaults.
"""

import os

SUBSET_CANDIDATES = 10**8  # k-subset enumerations
COVERAGE_CELLS = 10**8  # t-subset coverage maps in verify_design
COLUMN_SUBSETS = 10**7  # column-subset rank checks
SWEEP_MESSAGES = 10**8  # brute-force codeword sweeps
AUTO_SWEEP_MESSAGES = 10**7  # threshold for choosing brute force automatically
POINT_CANDIDATES = 2**24  # affine x-candidates in point enumeration


def enumeration_budget(default: int) -> int:
    env = os.environ.get("NMDS_BUDGET")
    if env is not None:
        return int(env)
    return default
