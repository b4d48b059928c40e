"""
Common utilities for boosted-entanglement.

This module contains the helpers shared by the CLI and the verification
runner: paths, number formatting, angle/grid parsing and the process pool.
"""

import csv
import math
import re
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Iterable, Iterator, TextIO, TypeVar

from src.core.exceptions import DomainError
from src.core.types import AngleUnit, GridAxis


T = TypeVar("T")
R = TypeVar("R")

_ANGLE_RE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(deg|rad)?\s*$")


def ensure_dir(path: Path | str) -> Path:
    """Ensure a directory exists, create if not."""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    return path


def format_float(x: float) -> str:
    """17 significant digits, which re-parse to the same double (CSV cells)."""
    return f"{x:.17g}"


def parse_angle(text: str, default_unit: AngleUnit = AngleUnit.RAD, flag: str = "angle") -> float:
    """
    Parse "90deg", "1.5708rad" or a bare number into radians.

    Bare numbers use `default_unit`.

    Raises:
        DomainError: naming `flag` when the text is not an angle
    """
    match = _ANGLE_RE.match(str(text))
    if match is None:
        raise DomainError(f"{flag}: cannot parse angle {text!r} (expected e.g. 90deg or 1.57rad)")
    value = float(match.group(1))
    unit = AngleUnit(match.group(2)) if match.group(2) else AngleUnit(default_unit)
    if not math.isfinite(value):
        raise DomainError(f"{flag}: angle must be finite, got {text!r}")
    return math.radians(value) if unit is AngleUnit.DEG else value


def parse_grid_axis(text: str, default_unit: AngleUnit, angle_names: Iterable[str]) -> tuple[str, GridAxis]:
    """
    Parse "NAME=START:STOP:STEPS" into a named GridAxis.

    Start and stop of angle parameters accept deg/rad suffixes.

    Raises:
        DomainError: for malformed text
    """
    name, sep, body = text.partition("=")
    parts = body.split(":")
    if not sep or len(parts) != 3:
        raise DomainError(f"--grid: expected NAME=START:STOP:STEPS, got {text!r}")
    name = name.strip()
    flag = f"--grid {name}"
    try:
        steps = int(parts[2])
    except ValueError as e:
        raise DomainError(f"{flag}: steps must be an integer, got {parts[2]!r}") from e
    if name in set(angle_names):
        start = parse_angle(parts[0], default_unit, flag)
        stop = parse_angle(parts[1], default_unit, flag)
    else:
        try:
            start, stop = float(parts[0]), float(parts[1])
        except ValueError as e:
            raise DomainError(f"{flag}: start/stop must be numbers") from e
    try:
        return name, GridAxis(start=start, stop=stop, steps=steps)
    except ValueError as e:
        raise DomainError(f"{flag}: {e}") from e


def parallel_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1, chunksize: int = 64) -> Iterator[R]:
    """
    Map `fn` over `items`, in order.

    workers == 1 stays in-process; otherwise a process pool is used and
    results still come back in input order, so output is identical for any
    worker count. `fn` must be a module-level function.
    """
    if workers <= 1:
        yield from map(fn, items)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, items, chunksize=chunksize)


def write_csv(stream: TextIO, header: list[str], rows: Iterable[Iterable[Any]]) -> int:
    """Write a header and rows, formatting floats with format_float. Returns the row count."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    count = 0
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, float) else v for v in row])
        count += 1
    return count
