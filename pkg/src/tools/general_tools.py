import json
from contextlib import contextmanager
from datetime import datetime
from pathlib import Path
from typing import Iterator, Optional

from mpmath import mp

from src.context_.settings import MIN_PRECISION_BITS
from src.FluteType.exceptions import DomainError


def find_project_root() -> Path:
    """Find the project root directory by looking for marker files.

    Returns:
        Path to project root directory.
    """
    current = Path(__file__).resolve()

    markers = ['requirements.txt', '.git', 'readme.md']

    for parent in current.parents:
        if any((parent / marker).exists() for marker in markers):
            return parent

    raise ValueError("Project root not found")


@contextmanager
def working_precision(bits: int) -> Iterator[int]:
    """Run a block with mpmath at the given mantissa width.

    Args:
        bits: Mantissa width in bits (at least MIN_PRECISION_BITS).

    Yields:
        The active precision.
    """
    if bits < MIN_PRECISION_BITS:
        raise DomainError(f"precision must be at least {MIN_PRECISION_BITS} bits, got {bits}")
    with mp.workprec(bits):
        yield bits


def ulp(x) -> "mp.mpf":
    """Unit in the last place of x at the current precision."""
    x = abs(mp.mpf(x))
    if x == 0:
        return mp.mpf(2) ** (-mp.prec)
    return mp.mpf(2) ** (int(mp.floor(mp.log(x, 2))) + 1 - mp.prec)


def timestamped_results_path(command: str, suffix: str = "json", results_dir: Optional[str] = None) -> Path:
    """Build results/<command>/<command>_<timestamp>.<suffix> under the project root."""
    from src.context_.context import results_dir as default_results_dir

    base = Path(results_dir or default_results_dir)
    if not base.is_absolute():
        base = find_project_root() / base
    output_path = base / command
    output_path.mkdir(parents=True, exist_ok=True)
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    return output_path / f"{command}_{timestamp}.{suffix}"


def write_json(path: Path, payload: dict) -> Path:
    """Write a JSON document with stable key order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(payload, f, indent=2, sort_keys=False)
        f.write("\n")
    return path
