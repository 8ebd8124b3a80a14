"""fadecap Validation Package"""

from fadecap.validation.report import CheckResult, ValidationReport
from fadecap.validation.suites import builtin_models, run_suite

__all__ = [
    "CheckResult",
    "ValidationReport",
    "builtin_models",
    "run_suite",
]
