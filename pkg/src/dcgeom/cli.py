"""Command-line interface: ``dcgeom gen|promote|traj|area|sweep|verify``.

Exit codes: 0 success, 2 usage error, 3 non-robust seed, 4 internal tolerance failure.
Floats are printed with 17 significant digits so outputs are byte-stable.
"""
from __future__ import annotations

import argparse
import math
import re
import sys
import warnings

from . import __version__
from .geometry import is_closed, sample_trajectory, signed_area, trajectory_of
from .pulse_model import (SequenceFormatError, ValidationError, emit_sequence,
                          parse_sequence, total_rotation_angle)
from .sequences import (FIRST_ORDER_TOL, SECOND_ORDER_TOL, PreconditionError,
                        promote_second_order, promote_unit_strength, short_corpse,
                        square_pulse)
from .sweep import delta_grid, estimate_order, infidelity_sweep

EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_TOLERANCE = 4

_ANGLE_RE = re.compile(
    r"^\s*(?P<sign>[+-])?(?P<k>(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)?\s*\*?\s*pi"
    r"\s*(/\s*(?P<d>\d+(\.\d*)?))?\s*$"
)


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".16e")


def parse_angle(text: str) -> float:
    """Parse ``1.5``, ``pi``, ``-0.5pi``, ``1.5*pi`` or ``3pi/2``."""
    m = _ANGLE_RE.match(text)
    if m:
        k = m.group("k")
        value = (float(k) if k else 1.0) * math.pi
        if m.group("sign") == "-":
            value = -value
        if m.group("d"):
            d = float(m.group("d"))
            if d == 0:
                raise argparse.ArgumentTypeError(f"invalid angle {text!r}")
            value /= d
        return value
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid angle {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"invalid angle {text!r}")
    return value


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str):
    try:
        return parse_sequence(_read(path))
    except (SequenceFormatError, ValidationError) as exc:
        raise UsageError(f"{path}: {exc}") from exc
    except OSError as exc:
        raise UsageError(str(exc)) from exc


def _write(text: str, path: str | None, stream) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stream.write(text)


def _kv(items) -> str:
    return "".join(f"{k}\t{fmt(v)}\n" for k, v in items)


def cmd_gen(args) -> int:
    theta = args.theta
    if args.kind == "short-corpse":
        if not 0 < theta < 2 * math.pi:
            raise UsageError(f"short-corpse needs 0 < theta < 2pi, got {theta!r}")
        seq = short_corpse(theta)
    else:
        seq = square_pulse(theta)
    if args.label:
        seq = seq.with_label(args.label)
    _write(emit_sequence(seq), args.out, sys.stdout)
    return 0


def cmd_promote(args) -> int:
    seed = _load(args.input)
    fn = promote_unit_strength if args.unit_strength else promote_second_order
    try:
        promoted, report = fn(seed)
    except PreconditionError as exc:
        sys.stderr.write(f"error: {exc}\n|g1(T)|\t{fmt(exc.g1_norm)}\n")
        return EXIT_PRECONDITION
    _write(emit_sequence(promoted), args.out, sys.stdout)
    _write(_kv(report.as_items()), args.report, sys.stderr)
    if report.residual_g1 > FIRST_ORDER_TOL or (
            not args.unit_strength and report.residual_g2 > SECOND_ORDER_TOL):
        sys.stderr.write("error: promoted sequence misses the robustness tolerance\n")
        return EXIT_TOLERANCE
    return 0


def cmd_traj(args) -> int:
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    traj = trajectory_of(_load(args.input))
    t, z = sample_trajectory(traj, args.samples)
    lines = ["# t\tx\ty\n"]
    lines += [f"{fmt(ti)}\t{fmt(zi.real)}\t{fmt(zi.imag)}\n" for ti, zi in zip(t, z)]
    _write("".join(lines), args.out, sys.stdout)
    return 0


def cmd_area(args) -> int:
    traj = trajectory_of(_load(args.input))
    area = signed_area(traj)
    closed = is_closed(traj, args.tol)
    if not closed:
        sys.stderr.write(
            f"warning: trajectory not closed (|g1(T)| = {abs(traj.endpoint):.3e}); "
            "value is the open line integral\n"
        )
    _write(_kv([("signed_area", area), ("abs_area", abs(area)), ("closed", closed)]),
           args.out, sys.stdout)
    return 0


def cmd_sweep(args) -> int:
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    seqs = [_load(p) for p in args.inputs]
    try:
        deltas = delta_grid(args.delta_min, args.delta_max, args.points, args.log)
        table = infidelity_sweep(seqs, deltas, args.theta, threads=args.threads)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    theta_txt = fmt(args.theta) if args.theta is not None else "per-sequence"
    lines = [f"# theta\t{theta_txt}\n", "# delta\t" + "\t".join(table.labels) + "\n"]
    for d, row in zip(table.deltas, table.infidelities):
        lines.append("\t".join([fmt(d)] + [fmt(v) for v in row]) + "\n")
    _write("".join(lines), args.out, sys.stdout)
    return 0


def cmd_verify(args) -> int:
    if args.points < 2:
        raise UsageError("--points must be >= 2")
    seq = _load(args.input)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        est = estimate_order(seq, args.theta, points=args.points)
    for w in caught:
        sys.stderr.write(f"warning: {w.message}\n")
    theta = args.theta if args.theta is not None else total_rotation_angle(seq)
    items = [
        ("theta", theta),
        ("slope", est.slope),
        ("intercept", est.intercept),
        ("inferred_order", est.inferred_order),
        ("fit_delta_min", est.fit_range[0]),
        ("fit_delta_max", est.fit_range[1]),
        ("fit_points", est.n_points),
        ("fit_residual", est.fit_residual),
        ("accepted", est.accepted),
        ("g1_norm", est.g1_norm),
        ("g2_norm", est.g2_norm),
        ("certified_order", est.certified_order),
        ("agree", est.agrees),
    ]
    _write(_kv(items), args.out, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dcgeom", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a square or Short-CORPSE sequence")
    g.add_argument("kind", choices=["square", "short-corpse"])
    g.add_argument("theta", type=parse_angle, help="target angle, e.g. 1.5pi or 4.712")
    g.add_argument("--label")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    pr = sub.add_parser("promote", help="append the area-cancelling 2pi pulse")
    pr.add_argument("input", help="sequence document ('-' for stdin)")
    pr.add_argument("--unit-strength", action="store_true",
                    help="use a unit-strength 2pi pulse instead of radius sqrt(S/pi)")
    pr.add_argument("--out")
    pr.add_argument("--report", help="write the key-value report here instead of stderr")
    pr.set_defaults(func=cmd_promote)

    t = sub.add_parser("traj", help="sample the error trajectory as t, x, y rows")
    t.add_argument("input")
    t.add_argument("--samples", type=int, default=64, help="points per arc (>= 2)")
    t.add_argument("--out")
    t.set_defaults(func=cmd_traj)

    a = sub.add_parser("area", help="signed area enclosed by the error trajectory")
    a.add_argument("input")
    a.add_argument("--tol", type=float, default=1e-9, help="closure tolerance")
    a.add_argument("--out")
    a.set_defaults(func=cmd_area)

    s = sub.add_parser("sweep", help="tabulate infidelity against delta")
    s.add_argument("inputs", nargs="+")
    s.add_argument("--theta", type=parse_angle,
                   help="target angle (default: each sequence's own rotation angle)")
    s.add_argument("--delta-min", type=float, default=-0.3)
    s.add_argument("--delta-max", type=float, default=0.3)
    s.add_argument("--points", type=int, default=121)
    s.add_argument("--log", action="store_true", help="log-spaced deltas")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", help="estimate the robustness order")
    v.add_argument("input")
    v.add_argument("--theta", type=parse_angle)
    v.add_argument("--points", type=int, default=16)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"{parser.prog}: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
