"""Command-line front end for the router simulator.

Subcommands: `single`, `two`, `three` evaluate monochromatic coherent
inputs on ports 1, 1+2, or 1+3+4 (closed forms when gamma_c = 0, the
general scattering map otherwise); `packet` routes two Gaussian packets
on ports 1 and 2 with a relative phase; `sweep` grids one or two scenario
variables; `verify` runs the self-validation suites.

All data commands emit CSV (header always present) to --out or stdout.
Floats are written as shortest round-trip decimals so identical
invocations produce identical bytes. A --config file with key=value lines
(# comments allowed) supplies scenario values; command-line flags win over
the file, the file wins over built-in defaults.

Exit codes: 0 success, 2 argument or validation error (one-line message on
stderr), 3 when a result would be numerically under-resolved; `verify`
returns 1 if any suite fails.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .core import (
    Channel,
    GridTooCoarse,
    ParameterError,
    QuadratureUnderResolved,
    RouterError,
    RouterParams,
    WavePacket,
)
from .oracle import default_grid, integrate_cavity, time_pulse
from .scattering import (
    ChannelAmplitudes,
    mean_output_single,
    mean_output_three,
    mean_output_two,
    report_from_scatter,
)
from .verify import SUITE_NAMES, format_table, run_suites
from .wavepacket import QuadratureSpec, packet_output_numbers

CSV_HEADER = ("case", "gamma1", "gamma2", "gamma_c", "delta", "phi", "theta",
              "theta_prime", "Omega", "mean_n", "N_r1", "N_l1", "N_r2", "N_l2",
              "N_total", "loss")

_DEFAULTS: dict = {
    "gamma1": 1.0,
    "gamma2": 1.0,
    "gamma_c": 0.0,
    "delta": 0.0,
    "phi": 0.0,
    "theta": 0.0,
    "theta_prime": 0.0,
    "mean_n": 1.0,
    "omega0_detuning": None,
    "bandwidth": 0.3,
    "points": 4001,
}

_SWEEP_VARS = ("phi", "theta", "theta_prime", "delta", "gamma2", "gamma_c", "Omega")
_CASE_VARS = {
    "single": ("delta", "gamma2", "gamma_c"),
    "two": ("phi", "delta", "gamma2", "gamma_c"),
    "three": ("theta", "theta_prime", "delta", "gamma2", "gamma_c"),
    "packet": ("phi", "delta", "gamma2", "gamma_c", "Omega"),
}
# scenario-dict key a swept variable writes to; identity unless listed
_VAR_KEY = {"Omega": "bandwidth"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep diagnostics to one line and code 2
        raise _UsageError(message)


@dataclass(frozen=True)
class SweepAxis:
    variable: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.variable not in _SWEEP_VARS:
            raise ParameterError(f"unknown sweep variable {self.variable!r}")
        if not self.start < self.stop:
            raise ParameterError(
                f"sweep start must be < stop, got [{self.start}, {self.stop}]")
        if not 2 <= self.count <= 10 ** 6:
            raise ParameterError(f"sweep count must be in [2, 1e6], got {self.count}")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    axis: SweepAxis
    axis2: SweepAxis | None = None

    def __post_init__(self):
        if self.axis2 is not None and self.axis2.variable == self.axis.variable:
            raise ParameterError(
                f"sweep variables must be distinct, got {self.axis.variable!r} twice")

    @property
    def axes(self) -> tuple[SweepAxis, ...]:
        return (self.axis,) if self.axis2 is None else (self.axis, self.axis2)


def _num(x) -> str:
    return repr(float(x))


def _load_config(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _UsageError(f"config: {exc}")
    out: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise _UsageError(
                f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
        if key not in _DEFAULTS:
            raise _UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = int(value) if key == "points" else float(value)
        except ValueError:
            raise _UsageError(
                f"{path}:{lineno}: field {key!r}: cannot parse {value!r}")
    return out


def _merge_scenario(args: argparse.Namespace) -> dict:
    scn = dict(_DEFAULTS)
    if getattr(args, "config", None) is not None:
        scn.update(_load_config(args.config))
    for key in _DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            scn[key] = value
    return scn


def _format_row(case: str, scn: dict, delta: float, phi, theta, theta_prime,
                Omega, rep) -> list[str]:
    def opt(x):
        return "" if x is None else _num(x)

    return [case, _num(scn["gamma1"]), _num(scn["gamma2"]), _num(scn["gamma_c"]),
            _num(delta), opt(phi), opt(theta), opt(theta_prime), opt(Omega),
            _num(scn["mean_n"]),
            _num(rep.n_r1), _num(rep.n_l1), _num(rep.n_r2), _num(rep.n_l2),
            _num(rep.n_total), _num(rep.loss)]


def _monochromatic_row(case: str, scn: dict) -> list[str]:
    params = RouterParams(gamma1=scn["gamma1"], gamma2=scn["gamma2"],
                          gamma_c=scn["gamma_c"])
    n, delta = scn["mean_n"], scn["delta"]
    if n < 0:
        raise ParameterError(f"mean_n must be >= 0, got {n}")
    lossless = params.gamma_c == 0.0
    a = math.sqrt(n)

    if case == "single":
        rep = mean_output_single(params, n, delta) if lossless else \
            report_from_scatter(params, ChannelAmplitudes(r1=a), delta)
        return _format_row(case, scn, delta, None, None, None, None, rep)
    if case == "two":
        phi = scn["phi"]
        rep = mean_output_two(params, n, delta, phi) if lossless else \
            report_from_scatter(
                params, ChannelAmplitudes(r1=a, l1=a * np.exp(1j * phi)), delta)
        return _format_row(case, scn, delta, phi, None, None, None, rep)
    theta, theta_prime = scn["theta"], scn["theta_prime"]
    rep = mean_output_three(params, n, delta, theta, theta_prime) if lossless else \
        report_from_scatter(
            params, ChannelAmplitudes(r1=a, r2=a * np.exp(1j * theta),
                                      l2=a * np.exp(1j * theta_prime)), delta)
    return _format_row(case, scn, delta, None, theta, theta_prime, None, rep)


def _packet_scenario(scn: dict) -> tuple[RouterParams, list[WavePacket], float]:
    delta_bar = scn["omega0_detuning"]
    if delta_bar is None:
        delta_bar = scn["delta"]
    params = RouterParams(gamma1=scn["gamma1"], gamma2=scn["gamma2"],
                          gamma_c=scn["gamma_c"], omega_c=delta_bar)
    Om = scn["bandwidth"]
    packets = [
        WavePacket(Channel.R1, scn["mean_n"], omega0=0.0, Omega=Om),
        WavePacket(Channel.L1, scn["mean_n"], omega0=0.0, Omega=Om,
                   phase=scn["phi"]),
    ]
    return params, packets, delta_bar


def _packet_row(scn: dict) -> list[str]:
    params, packets, delta_bar = _packet_scenario(scn)
    rep = packet_output_numbers(params, packets,
                                QuadratureSpec(points=int(scn["points"])))
    return _format_row("packet", scn, delta_bar, scn["phi"], None, None,
                       scn["bandwidth"], rep)


def _emit(out_path: str | None, rows: Sequence[Sequence[str]]) -> None:
    def write(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(rows)

    if out_path is None or out_path == "-":
        write(sys.stdout)
        return
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            write(fh)
    except OSError as exc:
        raise _UsageError(f"cannot write {out_path}: {exc}")


def _worker_count(n_jobs: int) -> int:
    raw = os.environ.get("ROUTER_SIM_THREADS")
    if raw is None:
        cap = min(4, os.cpu_count() or 1)
    else:
        try:
            cap = int(raw)
        except ValueError:
            raise _UsageError(f"ROUTER_SIM_THREADS must be an integer, got {raw!r}")
        if cap < 1:
            raise _UsageError(f"ROUTER_SIM_THREADS must be >= 1, got {cap}")
    return max(1, min(cap, n_jobs))


def _cmd_point(args: argparse.Namespace) -> int:
    scn = _merge_scenario(args)
    _emit(args.out, [_monochromatic_row(args.case_name, scn)])
    return 0


def _dump_trajectory(path: str, params: RouterParams,
                     packets: Sequence[WavePacket]) -> None:
    grid = default_grid(params, packets)
    drives = [(p.channel, lambda t, _p=p: time_pulse(_p, t)) for p in packets]
    trajectory = integrate_cavity(params, drives, grid)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(("t", "re_c", "im_c", "abs2_c"))
            for t, c in zip(grid.times, trajectory):
                writer.writerow((_num(t), _num(c.real), _num(c.imag),
                                 _num(abs(c) ** 2)))
    except OSError as exc:
        raise _UsageError(f"cannot write {path}: {exc}")


def _cmd_packet(args: argparse.Namespace) -> int:
    scn = _merge_scenario(args)
    row = _packet_row(scn)
    if args.dump_trajectory is not None:
        params, packets, _ = _packet_scenario(scn)
        _dump_trajectory(args.dump_trajectory, params, packets)
    _emit(args.out, [row])
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    case = args.case
    scn = _merge_scenario(args)
    axis2 = None
    if args.var2 is not None:
        if None in (args.start2, args.stop2, args.count2):
            raise _UsageError("--var2 requires --start2, --stop2 and --count2")
        axis2 = SweepAxis(args.var2, args.start2, args.stop2, args.count2)
    spec = SweepSpec(SweepAxis(args.var, args.start, args.stop, args.count), axis2)
    for ax in spec.axes:
        if ax.variable not in _CASE_VARS[case]:
            raise _UsageError(
                f"variable {ax.variable!r} does not apply to case {case!r}")

    points: list[tuple[tuple[str, float], ...]] = []
    for v1 in spec.axis.values():
        if spec.axis2 is None:
            points.append(((spec.axis.variable, float(v1)),))
        else:
            points.extend((((spec.axis.variable, float(v1)),
                            (spec.axis2.variable, float(v2))))
                          for v2 in spec.axis2.values())

    def job(assignments: tuple[tuple[str, float], ...]) -> list[str]:
        local = dict(scn)
        for var, value in assignments:
            local[_VAR_KEY.get(var, var)] = value
            if case == "packet" and var == "delta":
                local["omega0_detuning"] = value
        if case == "packet":
            return _packet_row(local)
        return _monochromatic_row(case, local)

    workers = _worker_count(len(points))
    if workers == 1:
        rows = [job(p) for p in points]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(job, points))
    _emit(args.out, rows)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    results = run_suites(names)
    print(format_table(results))
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="route",
        description="Mean output-photon numbers of the four-port cavity router "
                    "for coherent inputs (rates in units of gamma1).")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="{single,two,three,packet,sweep,verify}")

    def add_scenario(p, phases=(), packet_flags=False):
        p.add_argument("--gamma1", type=float,
                       help="waveguide-1 coupling rate (default 1.0, the unit)")
        p.add_argument("--gamma2", type=float,
                       help="waveguide-2 coupling rate (default 1.0)")
        p.add_argument("--gamma-c", type=float,
                       help="intrinsic cavity decay rate (default 0.0)")
        p.add_argument("--delta", type=float,
                       help="detuning omega_c - omega (default 0.0)")
        p.add_argument("--mean-n", type=float,
                       help="mean photon number per input (default 1.0)")
        for flag in phases:
            p.add_argument(f"--{flag}", type=float,
                           help=f"{flag.replace('-', ' ')} in radians (default 0.0)")
        if packet_flags:
            p.add_argument("--omega0-detuning", type=float,
                           help="packet-center detuning omega_c - omega0 "
                                "(default: --delta)")
            p.add_argument("--bandwidth", type=float,
                           help="packet bandwidth parameter Omega (default 0.3)")
            p.add_argument("--points", type=int,
                           help="quadrature points, odd >= 2001 (default 4001)")
        p.add_argument("--config", help="scenario file with key=value lines")
        p.add_argument("--out", help="output CSV path (default stdout)")

    p = sub.add_parser("single", help="one input on port 1")
    add_scenario(p)
    p.set_defaults(func=_cmd_point, case_name="single")

    p = sub.add_parser("two", help="inputs on ports 1 and 2, phase phi on port 2")
    add_scenario(p, phases=("phi",))
    p.set_defaults(func=_cmd_point, case_name="two")

    p = sub.add_parser("three",
                       help="inputs on ports 1, 3, 4 with phases theta, theta'")
    add_scenario(p, phases=("theta", "theta-prime"))
    p.set_defaults(func=_cmd_point, case_name="three")

    p = sub.add_parser("packet",
                       help="Gaussian packets on ports 1 and 2, phase phi")
    add_scenario(p, phases=("phi",), packet_flags=True)
    p.add_argument("--dump-trajectory", metavar="PATH",
                   help="also write the cavity trajectory CSV (t,re_c,im_c,abs2_c)")
    p.set_defaults(func=_cmd_packet)

    p = sub.add_parser("sweep", help="grid over one or two scenario variables")
    p.add_argument("--case", required=True, choices=("single", "two", "three",
                                                     "packet"))
    p.add_argument("--var", required=True, choices=_SWEEP_VARS)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--var2", choices=_SWEEP_VARS)
    p.add_argument("--start2", type=float)
    p.add_argument("--stop2", type=float)
    p.add_argument("--count2", type=int)
    add_scenario(p, phases=("phi", "theta", "theta-prime"), packet_flags=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("verify", help="run the self-validation suites")
    p.add_argument("--suite", choices=("all",) + SUITE_NAMES, default="all")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"route: error: {exc}", file=sys.stderr)
        return 2
    except (QuadratureUnderResolved, GridTooCoarse) as exc:
        print(f"route: error: {exc}", file=sys.stderr)
        return 3
    except RouterError as exc:
        print(f"route: error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())
