"""
Command-line front end.

    boostent wigner  --v1 0.5 --v2 0.5 --theta 90deg
    boostent single  --phi 90deg --format json
    boostent entropy-curve --output curve.csv
    boostent cooper  --kind T- --v1 0.8 --v2 0.8 --theta 90deg
    boostent sweep   --mode cooper --grid theta=0:180deg:19 --grid phi=0:90deg:4
    boostent verify  --samples 1000 --seed 20240917

Exit codes: 0 success, 1 verification failure, 2 bad input, 3 I/O failure.
Reports go to stdout (or --output); logs go to stderr.
"""

import argparse
import logging
import math
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, TextIO

from pydantic import BaseModel, ValidationError

from src.core.config import EnvDefaults, load_defaults
from src.core.exceptions import DomainError, GridTooLargeError
from src.core.kinematics import (
    BoostGeometry,
    branch_velocities,
    d_factor_from_speeds,
    gamma,
    wigner_pair,
)
from src.core.renderer import TemplateRenderer
from src.core.types import (
    ANGLE_PARAMETERS,
    MAX_GRID_SIZE,
    AngleUnit,
    Command,
    OutputFormat,
    PairKind,
    RunConfig,
    SweepGrid,
    SweepMode,
)
from src.modules.cooper import (
    KIND_ORDER,
    PARITY_ORDER,
    boost_pair,
    closed_form,
    decompose,
    gamma_big,
    initial_pair,
)
from src.modules.oracle import PAIR_TOL, compare_states, run_verification
from src.modules.single_particle import (
    SpinOrientation,
    boost_single,
    entanglement_entropy,
    entropy_limit_formula,
    reduced_velocity_density,
)
from src.modules.utils import ensure_dir, parallel_map, parse_angle, parse_grid_axis, write_csv
from src.schemas.base import GeometryView, SpinView, complex_pair
from src.schemas.reports import CooperReport, SingleReport, VerifyReport, WignerReport


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_IO = 3

ENTROPY_CURVE_HEADER = ["phi_rad", "entropy_bits"]
SWEEP_INPUT_COLUMNS = ["v1", "v2", "theta", "phi", "eta", "omega_plus", "omega_minus"]


# =============================================================================
# Commands
# =============================================================================

def geometry_of(cfg: RunConfig) -> BoostGeometry:
    return BoostGeometry.of(cfg.v1, cfg.v2, cfg.theta)


def spin_of(cfg: RunConfig) -> SpinOrientation:
    return SpinOrientation(phi=cfg.phi, eta=cfg.eta)


def cmd_wigner(cfg: RunConfig) -> WignerReport:
    g = geometry_of(cfg)
    w = wigner_pair(g)
    v_plus, v_minus = branch_velocities(g)
    d = None if cfg.v1 == 0.0 or cfg.v2 == 0.0 else d_factor_from_speeds(cfg.v1, cfg.v2)
    return WignerReport(
        geometry=GeometryView.of(g),
        gamma1=gamma(cfg.v1),
        gamma2=gamma(cfg.v2),
        d_factor=d,
        omega_plus=w.omega_plus,
        omega_minus=w.omega_minus,
        omega_sum=w.omega_sum,
        v_plus=v_plus.components,
        v_minus=v_minus.components,
    )


def cmd_single(cfg: RunConfig) -> SingleReport:
    g, s = geometry_of(cfg), spin_of(cfg)
    st = boost_single(g, s)
    rho = reduced_velocity_density(st)
    return SingleReport(
        geometry=GeometryView.of(g),
        spin=SpinView.of(s),
        amps=[complex_pair(a) for a in st.amps],
        reduced_density=[[complex_pair(x) for x in row] for row in rho.entries],
        entropy_bits=entanglement_entropy(st),
        entropy_limit_bits=entropy_limit_formula(s.phi),
    )


def entropy_curve_rows(steps: int) -> list[tuple[float, float]]:
    """(phi, S(phi)) on `steps` evenly spaced points of [0, pi]."""
    rows = []
    for i in range(steps):
        phi = math.pi * i / (steps - 1)
        rows.append((phi, entropy_limit_formula(phi)))
    return rows


def cmd_entropy_curve(cfg: RunConfig) -> int:
    """Write the v -> c entropy curve as CSV; returns the row count."""
    with _open_output(cfg.output) as stream:
        return write_csv(stream, ENTROPY_CURVE_HEADER, entropy_curve_rows(cfg.steps))


def cmd_cooper(cfg: RunConfig, kind: PairKind) -> CooperReport:
    g, s = geometry_of(cfg), spin_of(cfg)
    boosted = boost_pair(g, initial_pair(kind, s))
    parts = decompose(boosted, s)
    gv = gamma_big(g)
    singlet = parts.spin_weight(PairKind.S)
    return CooperReport(
        geometry=GeometryView.of(g),
        spin=SpinView.of(s),
        kind=PairKind(kind).value,
        weights=parts.weights(),
        singlet_weight=singlet,
        triplet_weight=1.0 - singlet,
        gamma=None if gv.is_infinite else gv.value,
        gamma_infinite=gv.is_infinite,
        gamma_printed=gv.printed_value,
        comparison=compare_states(closed_form(kind, g, s), boosted, PAIR_TOL),
    )


def sweep_header(mode: SweepMode) -> list[str]:
    if SweepMode(mode) is SweepMode.SINGLE:
        return SWEEP_INPUT_COLUMNS + ["entropy_bits"]
    return SWEEP_INPUT_COLUMNS + [f"{p.value}_{k.label}" for p in PARITY_ORDER for k in KIND_ORDER]


def evaluate_point(task: tuple[str, str, dict[str, float]]) -> list[float]:
    """One sweep row; module level so a process pool can pickle it."""
    mode, kind, point = task
    g = BoostGeometry.of(point["v1"], point["v2"], point["theta"])
    s = SpinOrientation(phi=point["phi"], eta=point["eta"])
    w = wigner_pair(g)
    row = [point[name] for name in ("v1", "v2", "theta", "phi", "eta")] + [w.omega_plus, w.omega_minus]
    if SweepMode(mode) is SweepMode.SINGLE:
        row.append(entanglement_entropy(boost_single(g, s)))
    else:
        row.extend(decompose(boost_pair(g, initial_pair(kind, s)), s).weights().values())
    return row


def cmd_sweep(cfg: RunConfig, grid: SweepGrid) -> int:
    """
    Evaluate every grid point and write one CSV row each, in grid order.

    Raises:
        GridTooLargeError: above MAX_GRID_SIZE points
        DomainError: if a speed axis leaves [0, 1)
    """
    if grid.size > MAX_GRID_SIZE:
        raise GridTooLargeError(grid.size, MAX_GRID_SIZE)
    for name in ("v1", "v2"):
        axis = grid.axes.get(name)
        if axis is not None and not (axis.start >= 0.0 and axis.stop < 1.0):
            raise DomainError(f"--grid {name}: speeds must lie in [0, 1)")
    logger.info("sweep: %d points, mode %s, %d worker(s)", grid.size, cfg.mode.value, cfg.workers)

    fixed = {"v1": cfg.v1, "v2": cfg.v2, "theta": cfg.theta, "phi": cfg.phi, "eta": cfg.eta}
    tasks = ((cfg.mode.value, cfg.kind.value, point) for point in grid.points(fixed))
    with _open_output(cfg.output) as stream:
        return write_csv(stream, sweep_header(cfg.mode), parallel_map(evaluate_point, tasks, cfg.workers))


def cmd_verify(cfg: RunConfig) -> VerifyReport:
    return run_verification(cfg.samples, cfg.seed, cfg.workers, cfg.perturbation)


# =============================================================================
# Output
# =============================================================================

@contextmanager
def _open_output(path: Path | None) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    ensure_dir(path.parent)
    with open(path, "w", encoding="utf-8", newline="") as stream:
        yield stream
    logger.info("wrote %s", path)


def render_report(report: BaseModel, template: str, fmt: OutputFormat) -> str:
    if fmt is OutputFormat.JSON:
        return report.model_dump_json(indent=2, by_alias=True) + "\n"
    if fmt is OutputFormat.CSV:
        raise DomainError("--format csv applies to entropy-curve and sweep only")
    return TemplateRenderer().render(template, {"report": report})


def _emit(text: str, output: Path | None) -> None:
    with _open_output(output) as stream:
        stream.write(text)


# =============================================================================
# Argument parsing
# =============================================================================

def build_parser(defaults: EnvDefaults | None = None) -> argparse.ArgumentParser:
    defaults = defaults or EnvDefaults()

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--v1", type=float, default=0.5, help="speed of the velocity eigenstates (fraction of c)")
    common.add_argument("--v2", type=float, default=0.5, help="observer boost speed (fraction of c)")
    common.add_argument("--theta", default=None, help="angle between v1 and v2 (e.g. 90deg, 1.5708rad)")
    common.add_argument("--phi", default=None, help="spin inclination")
    common.add_argument("--eta", default=None, help="spin azimuth")
    common.add_argument("--units", choices=[u.value for u in AngleUnit], default=defaults.units.value,
                        help="unit of bare angle values")
    common.add_argument("--samples", type=int, default=defaults.samples)
    common.add_argument("--seed", type=int, default=defaults.seed)
    common.add_argument("--workers", type=int, default=defaults.workers)
    common.add_argument("--output", type=Path, default=None, help="write here instead of stdout")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.TEXT.value)
    common.add_argument("--log-level", default=defaults.log_level)

    parser = argparse.ArgumentParser(
        prog="boostent",
        description="Wigner rotations, spin-velocity entanglement and Cooper pair singlet/triplet mixing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser(Command.WIGNER.value, parents=[common], help="Wigner angles and composed velocities")
    sub.add_parser(Command.SINGLE.value, parents=[common], help="boosted single particle and its entropy")
    curve = sub.add_parser(Command.ENTROPY_CURVE.value, parents=[common], help="v -> c entropy vs phi as CSV")
    curve.add_argument("--steps", type=int, default=181)
    cooper = sub.add_parser(Command.COOPER.value, parents=[common], help="boosted Cooper pair decomposition")
    cooper.add_argument("--kind", choices=[k.value for k in PairKind], default=PairKind.S.value)
    sweep = sub.add_parser(Command.SWEEP.value, parents=[common], help="grid evaluation to CSV")
    sweep.add_argument("--mode", choices=[m.value for m in SweepMode], default=SweepMode.SINGLE.value)
    sweep.add_argument("--kind", choices=[k.value for k in PairKind], default=PairKind.S.value)
    sweep.add_argument("--grid", action="append", default=[], metavar="NAME=START:STOP:STEPS")
    verify = sub.add_parser(Command.VERIFY.value, parents=[common], help="run every verification suite")
    verify.add_argument("--inject-perturbation", type=float, default=0.0, dest="perturbation",
                        help="offset added to closed-form amplitudes (harness self-test)")
    return parser


_ANGLE_DEFAULTS = {"theta": math.pi / 2, "phi": math.pi / 2, "eta": 0.0}


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """
    Merge parsed flags into a RunConfig.

    Raises:
        DomainError: for unparseable angles
        pydantic.ValidationError: for out-of-range values
    """
    units = AngleUnit(args.units)
    angles = {
        name: _ANGLE_DEFAULTS[name] if getattr(args, name) is None else parse_angle(getattr(args, name), units, f"--{name}")
        for name in ANGLE_PARAMETERS
    }
    return RunConfig(
        command=Command(args.command),
        v1=args.v1,
        v2=args.v2,
        units=units,
        kind=getattr(args, "kind", PairKind.S.value),
        mode=getattr(args, "mode", SweepMode.SINGLE.value),
        samples=args.samples,
        seed=args.seed,
        steps=getattr(args, "steps", 181),
        workers=args.workers,
        output=args.output,
        format=OutputFormat(args.format),
        perturbation=getattr(args, "perturbation", 0.0),
        **angles,
    )


def grid_from_args(specs: list[str], units: AngleUnit) -> SweepGrid:
    axes = dict(parse_grid_axis(spec, units, ANGLE_PARAMETERS) for spec in specs)
    try:
        return SweepGrid(axes=axes)
    except ValidationError as e:
        raise DomainError(f"--grid: {e.errors()[0]['msg']}") from e


def _flags_of(error: ValidationError) -> str:
    """Messages prefixed with the command-line flag of the failing RunConfig field."""
    parts = []
    for item in error.errors():
        loc = item.get("loc") or ()
        if loc and str(loc[0]) in RunConfig.model_fields:
            parts.append(f"--{str(loc[0]).replace('_', '-')}: {item.get('msg')}")
        else:
            parts.append(f"{error.title}: {item.get('msg')}")
    return "; ".join(parts)


def _run(cfg: RunConfig, args: argparse.Namespace) -> int:
    if cfg.command is Command.WIGNER:
        _emit(render_report(cmd_wigner(cfg), "wigner.j2", cfg.format), cfg.output)
    elif cfg.command is Command.SINGLE:
        _emit(render_report(cmd_single(cfg), "single.j2", cfg.format), cfg.output)
    elif cfg.command is Command.ENTROPY_CURVE:
        cmd_entropy_curve(cfg)
    elif cfg.command is Command.COOPER:
        _emit(render_report(cmd_cooper(cfg, cfg.kind), "cooper.j2", cfg.format), cfg.output)
    elif cfg.command is Command.SWEEP:
        cmd_sweep(cfg, grid_from_args(args.grid, cfg.units))
    else:
        report = cmd_verify(cfg)
        fmt = OutputFormat.TEXT if cfg.format is OutputFormat.TEXT else OutputFormat.JSON
        _emit(render_report(report, "verify.j2", fmt), cfg.output)
        return EXIT_OK if report.passed else EXIT_VERIFY_FAILED
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        defaults = load_defaults()
    except ValidationError as e:
        print(f"error: invalid BOOSTENT_* environment: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT

    args = build_parser(defaults).parse_args(argv)
    level = logging.getLevelName(str(args.log_level).upper())
    if not isinstance(level, int):
        print(f"error: --log-level: unknown level {args.log_level!r}", file=sys.stderr)
        return EXIT_BAD_INPUT
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    try:
        cfg = config_from_args(args)
        return _run(cfg, args)
    except ValidationError as e:
        print(f"error: {_flags_of(e)}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except GridTooLargeError as e:
        print(f"error: --grid: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OSError as e:
        print(f"error: cannot write output: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
