# FluteType reports package
from .builders import (
    RunReport,
    analyze_report,
    develop_report,
    synthesize_report,
    endtree_report,
)

__all__ = [
    "RunReport",
    "analyze_report",
    "develop_report",
    "synthesize_report",
    "endtree_report",
]
