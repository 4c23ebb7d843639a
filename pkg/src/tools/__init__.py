# Tools package
from src.tools.general_tools import (
    find_project_root,
    working_precision,
    ulp,
    timestamped_results_path,
    write_json,
)

__all__ = ['find_project_root', 'working_precision', 'ulp', 'timestamped_results_path', 'write_json']
