"""Command-line front end: point evaluation, parameter sweeps, verification.

Subcommands:

  eval     print simulated and closed-form coherence values for one scenario
  sweep    write a CSV over a (subsystem, alpha, r, P) grid, rb = rc = r
  verify   run the simulation-vs-closed-form suite, write a JSON report
  figures  emit the six canonical sweep datasets (fig1.csv .. fig6.csv)

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
CSV rows carry one line per grid point per method ('sim' from the
first-principles pipeline, 'paper' from the closed forms), sorted
lexicographically by all key columns; floats are printed with 17
significant digits so output is byte-identical across runs.

The environment variable TRICOH_OUTDIR supplies the default output
directory when --out / --outdir is not given.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .channels import apply_policy
from .closed_forms import concurrence_closed_form
from .dilation import acceleration_parameter, dilate, initial_state, reduce_to_subsystem
from .measures import is_x_shaped, l1_coherence
from .scenario import ChannelKind, NoisePolicy, R_MAX, Scenario, Subsystem
from .verify import (
    VerificationGrid,
    closed_form_state,
    run_suite,
    simulate_reduced,
    simulated_concurrence,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

OUTDIR_ENV = "TRICOH_OUTDIR"

CSV_HEADER = "subsystem,channel,policy,alpha,r_b,r_c,p_b,p_c,method,concurrence,l1"

_SUBSYSTEMS = {s.value: s for s in Subsystem}
_CHANNELS: dict[str, Optional[ChannelKind]] = {"none": None}
_CHANNELS.update({k.value: k for k in ChannelKind})
_POLICIES = {p.value: p for p in NoisePolicy}
_POLICIES.update({p.value.replace("_", "-"): p for p in NoisePolicy})

_ROOT2_INV = math.sqrt(0.5)  # 0.7071067811865476, the round-trippable literal


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _parse_floats(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad float list {text!r}: {exc}")
    if not values:
        raise argparse.ArgumentTypeError("empty value list")
    return values


def _parse_triples(text: str) -> tuple[float, ...]:
    """Resolve 'omega:a:c' triples (semicolon-separated) to r values."""
    out = []
    for part in text.split(";"):
        fields = part.split(":")
        if len(fields) != 3:
            raise argparse.ArgumentTypeError(
                f"expected omega:a:c triple, got {part!r}"
            )
        out.append(acceleration_parameter(*(float(f) for f in fields)))
    return tuple(out)


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: subsystems x alphas x r values x P values, with rb = rc = r."""

    subsystems: tuple[Subsystem, ...]
    channel: Optional[ChannelKind]
    policy: NoisePolicy
    alphas: tuple[float, ...]
    rs: tuple[float, ...]
    ps: tuple[float, ...]
    out: str

    def __post_init__(self):
        if not (self.subsystems and self.alphas and self.rs and self.ps):
            raise ValueError("sweep lists must be nonempty")


def _scenario_key(s: Scenario, method: str) -> tuple[str, ...]:
    return (
        s.subsystem.value,
        s.channel.value if s.channel else "none",
        s.policy.value,
        _fmt(s.alpha),
        _fmt(s.rb),
        _fmt(s.rc),
        _fmt(s.pb),
        _fmt(s.pc),
        method,
    )


def _rows_for_cell(
    spec: SweepSpec, sub: Subsystem, alpha: float, r: float
) -> list[tuple[str, ...]]:
    """Both methods' rows for every P at one (subsystem, alpha, r) point."""
    rows = []
    base_global = dilate(initial_state(alpha), r, r)
    base_reduced = reduce_to_subsystem(base_global, sub)
    for p in spec.ps:
        s = Scenario(
            subsystem=sub,
            alpha=alpha,
            rb=r,
            rc=r,
            channel=spec.channel,
            pb=p,
            pc=p,
            policy=spec.policy,
        )
        if spec.policy is NoisePolicy.RINDLER_MODE and spec.channel is not None:
            sim = reduce_to_subsystem(apply_policy(s, base_global), sub)
        else:
            sim = apply_policy(s, base_reduced)
        ref = closed_form_state(s)
        c_ref = concurrence_closed_form(sub, alpha, r, r, spec.channel, p, p)
        rows.append(
            _scenario_key(s, "sim")
            + (_fmt(simulated_concurrence(sim)), _fmt(l1_coherence(sim)))
        )
        rows.append(
            _scenario_key(s, "paper") + (_fmt(c_ref), _fmt(l1_coherence(ref)))
        )
    return rows


def sweep_rows(spec: SweepSpec, workers: int = 1) -> list[str]:
    """All CSV lines for a sweep, sorted lexicographically by every column."""
    cells = [
        (sub, alpha, r)
        for sub in spec.subsystems
        for alpha in spec.alphas
        for r in spec.rs
    ]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda c: _rows_for_cell(spec, *c), cells))
    else:
        chunks = [_rows_for_cell(spec, *c) for c in cells]
    rows = sorted(row for chunk in chunks for row in chunk)
    return [CSV_HEADER] + [",".join(row) for row in rows]


def _default_out(name: str) -> str:
    base = os.environ.get(OUTDIR_ENV, "")
    return os.path.join(base, name) if base else name


def _write_lines(path: str, lines: Sequence[str]) -> int:
    try:
        with open(path, "w", newline="") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


# ---------------------------------------------------------------------------
# subcommands


def cmd_eval(args: argparse.Namespace) -> int:
    # an explicit --rb/--rc wins over a physical-parameter triple
    rb = args.rb if args.rb is not None else (args.phys_b[0] if args.phys_b else 0.0)
    rc = args.rc if args.rc is not None else (args.phys_c[0] if args.phys_c else 0.0)
    s = Scenario(
        subsystem=args.subsystem,
        alpha=args.alpha,
        rb=rb,
        rc=rc,
        channel=args.channel,
        pb=args.pb,
        pc=args.pc,
        policy=args.policy,
    )
    sim = simulate_reduced(s)
    c_ref = concurrence_closed_form(s.subsystem, s.alpha, s.rb, s.rc, s.channel, s.pb, s.pc)
    pairs = [
        ("subsystem", s.subsystem.value),
        ("channel", s.channel.value if s.channel else "none"),
        ("policy", s.policy.value),
        ("alpha", _fmt(s.alpha)),
        ("r_b", _fmt(s.rb)),
        ("r_c", _fmt(s.rc)),
        ("p_b", _fmt(s.pb)),
        ("p_c", _fmt(s.pc)),
        ("concurrence_sim", _fmt(simulated_concurrence(sim))),
        ("concurrence_paper", _fmt(c_ref)),
        ("l1_sim", _fmt(l1_coherence(sim))),
        ("x_shaped", "true" if is_x_shaped(sim) else "false"),
    ]
    width = max(len(k) for k, _ in pairs)
    for k, v in pairs:
        print(f"{k:<{width}}  {v}")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    rs = (args.rs or ()) + (args.phys or ())
    if not rs:
        rs = tuple(np.linspace(0.0, R_MAX, 11))
    ps = args.ps if args.channel is not None else (0.0,)
    spec = SweepSpec(
        subsystems=args.subsystems,
        channel=args.channel,
        policy=args.policy,
        alphas=args.alphas,
        rs=rs,
        ps=ps,
        out=args.out if args.out else _default_out("sweep.csv"),
    )
    code = _write_lines(spec.out, sweep_rows(spec, workers=args.workers))
    if code == EXIT_OK:
        print(spec.out)
    return code


def cmd_verify(args: argparse.Namespace) -> int:
    grid = VerificationGrid(
        subsystems=args.subsystems,
        channels=args.channels,
        policy=args.policy,
        alphas=args.alphas,
        rbs=args.rbs,
        rcs=args.rcs,
        pbs=args.pbs,
        pcs=args.pcs,
    )
    report = run_suite(grid, seed=args.seed)
    out = args.out if args.out else _default_out("report.json")
    code = _write_lines(out, [report.to_json().rstrip("\n")])
    if code != EXIT_OK:
        return code
    print(
        f"{out}: {report.summary['match']} match, "
        f"{report.summary['known_discrepancy']} known_discrepancy, "
        f"{report.summary['unexpected']} unexpected"
    )
    if report.n_unexpected:
        return EXIT_VERIFY_FAILED
    if args.fail_on_known and report.summary["known_discrepancy"]:
        return EXIT_VERIFY_FAILED
    return EXIT_OK


#: The six canonical sweep datasets.  Line scans (fig1/3/5) vary r for a few
#: fixed (alpha, P); surface scans vary two axes: (r, P) for fig2/4, and
#: (r, alpha) at fixed P for fig6.
def _canonical_figures() -> dict[str, SweepSpec]:
    r51 = tuple(np.linspace(0.0, R_MAX, 51))
    p51 = tuple(np.linspace(0.0, 1.0, 51))
    a51 = tuple(np.linspace(0.0, 1.0, 51))
    alphas3 = (0.3, _ROOT2_INV, 1.0)

    def mk(subs, ch, alphas, rs, ps):
        return SweepSpec(
            subsystems=subs,
            channel=ch,
            policy=NoisePolicy.REDUCED_QUBIT,
            alphas=alphas,
            rs=rs,
            ps=ps,
            out="",
        )
    damping, flip, bitflip = (
        ChannelKind.PHASE_DAMPING,
        ChannelKind.PHASE_FLIP,
        ChannelKind.BIT_FLIP,
    )
    ab1c1, ab2c1, ab1c2, ab2c2 = (
        Subsystem.AB1C1,
        Subsystem.AB2C1,
        Subsystem.AB1C2,
        Subsystem.AB2C2,
    )
    return {
        "fig1": mk((ab1c1, ab2c2), damping, alphas3, r51, (0.0, 0.25, 0.5, 0.75)),
        "fig2": mk((ab1c1, ab2c2, ab2c1), damping, (_ROOT2_INV,), r51, p51),
        "fig3": mk((ab1c1, ab2c2), flip, alphas3, r51, (0.0, 0.25, 0.5, 0.75, 1.0)),
        "fig4": mk((ab1c1, ab2c2, ab1c2), flip, (_ROOT2_INV,), r51, p51),
        "fig5": mk((ab1c1, ab2c2), bitflip, alphas3, r51, (1.0 / 3.0,)),
        "fig6": mk((ab1c1, ab2c2, ab2c1), bitflip, a51, r51, (1.0 / 3.0,)),
    }


def cmd_figures(args: argparse.Namespace) -> int:
    outdir = args.outdir or os.environ.get(OUTDIR_ENV) or "figures-data"
    try:
        os.makedirs(outdir, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create {outdir}: {exc}", file=sys.stderr)
        return EXIT_IO
    for name, spec in _canonical_figures().items():
        path = os.path.join(outdir, f"{name}.csv")
        code = _write_lines(path, sweep_rows(spec, workers=args.workers))
        if code != EXIT_OK:
            return code
        print(path)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _enum_type(table: dict, what: str):
    def convert(token: str):
        key = token.strip().lower()
        if key not in table:
            raise argparse.ArgumentTypeError(
                f"unknown {what} {token!r} (choose from {', '.join(sorted(table))})"
            )
        return table[key]

    return convert


def _enum_list_type(table: dict, what: str):
    single = _enum_type(table, what)

    def convert(text: str):
        items = tuple(single(tok) for tok in text.split(",") if tok.strip())
        if not items:
            raise argparse.ArgumentTypeError(f"empty {what} list")
        return items

    return convert


def _unit_float(name: str):
    def convert(text: str) -> float:
        v = float(text)
        if not 0.0 <= v <= 1.0:
            raise argparse.ArgumentTypeError(f"{name} must lie in [0, 1], got {v}")
        return v

    return convert


def _r_value(text: str) -> float:
    v = float(text)
    if not 0.0 <= v <= R_MAX:
        raise argparse.ArgumentTypeError(f"r must lie in [0, pi/4], got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tricoh",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument(
            "--config",
            help="JSON file of default flag values; explicit flags override it",
        )
        p.add_argument(
            "--policy",
            type=_enum_type(_POLICIES, "policy"),
            default=None,
            help="noise placement: reduced_qubit (default) or rindler_mode",
        )

    p_eval = sub.add_parser("eval", help="evaluate one scenario")
    add_common(p_eval)
    p_eval.add_argument("--subsystem", type=_enum_type(_SUBSYSTEMS, "subsystem"), default=None, help="reduction to evaluate (default ab1c1)")
    p_eval.add_argument("--alpha", type=_unit_float("alpha"), default=None, help="state parameter in [0, 1] (default 1)")
    p_eval.add_argument("--rb", type=_r_value, default=None, help="acceleration parameter of B in radians (default 0)")
    p_eval.add_argument("--rc", type=_r_value, default=None, help="acceleration parameter of C in radians (default 0)")
    p_eval.add_argument("--phys-b", type=_parse_triples, default=None, metavar="OMEGA:A:C", help="resolve rb from physical parameters")
    p_eval.add_argument("--phys-c", type=_parse_triples, default=None, metavar="OMEGA:A:C", help="resolve rc from physical parameters")
    p_eval.add_argument("--channel", type=_enum_type(_CHANNELS, "channel"), default=None, help="none, damping, phase-flip or bit-flip (default none)")
    p_eval.add_argument("--pb", type=_unit_float("pb"), default=None, help="decay probability on the B-side qubit (default 0)")
    p_eval.add_argument("--pc", type=_unit_float("pc"), default=None, help="decay probability on the C-side qubit (default 0)")
    p_eval.set_defaults(func=cmd_eval)

    p_sweep = sub.add_parser("sweep", help="write a CSV over a parameter grid")
    add_common(p_sweep)
    p_sweep.add_argument("--subsystems", type=_enum_list_type(_SUBSYSTEMS, "subsystem"), default=None, help="comma list (default: all six)")
    p_sweep.add_argument("--channel", type=_enum_type(_CHANNELS, "channel"), default=None, help="none, damping, phase-flip or bit-flip (default none)")
    p_sweep.add_argument("--alphas", type=_parse_floats, default=None, help="comma list (default: 1/sqrt(2))")
    p_sweep.add_argument("--rs", type=_parse_floats, default=None, help="r grid, applied as rb = rc = r (default: 11 points on [0, pi/4])")
    p_sweep.add_argument("--phys", type=_parse_triples, default=None, metavar="OMEGA:A:C[;...]", help="extra r values from physical-parameter triples")
    p_sweep.add_argument("--ps", type=_parse_floats, default=None, help="decay probabilities, applied as pb = pc = P (default: 0)")
    p_sweep.add_argument("--out", default=None, help="output CSV (default: sweep.csv under TRICOH_OUTDIR or cwd)")
    p_sweep.add_argument("--workers", type=int, default=None, help="concurrent grid evaluation (default 1; output is identical either way)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run the cross-check suite")
    add_common(p_verify)
    p_verify.add_argument("--subsystems", type=_enum_list_type(_SUBSYSTEMS, "subsystem"), default=None, help="comma list (default: all six)")
    p_verify.add_argument("--channels", type=_enum_list_type(_CHANNELS, "channel"), default=None, help="comma list (default: none plus all three channels)")
    p_verify.add_argument("--alphas", type=_parse_floats, default=None, help="default: 5 points on [0, 1]")
    p_verify.add_argument("--rbs", type=_parse_floats, default=None, help="default: 5 points on [0, pi/4]")
    p_verify.add_argument("--rcs", type=_parse_floats, default=None, help="default: 5 points on [0, pi/4]")
    p_verify.add_argument("--pbs", type=_parse_floats, default=None, help="default: 0.3")
    p_verify.add_argument("--pcs", type=_parse_floats, default=None, help="default: 0.7")
    p_verify.add_argument("--seed", type=int, default=None, help="recorded in the report (default 0)")
    p_verify.add_argument("--out", default=None, help="output JSON (default: report.json under TRICOH_OUTDIR or cwd)")
    p_verify.add_argument(
        "--fail-on-known",
        action="store_true",
        help="treat documented discrepancies as failures",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_fig = sub.add_parser("figures", help="emit the six canonical sweep datasets")
    add_common(p_fig)
    p_fig.add_argument("--outdir", default=None, help="target directory (default: TRICOH_OUTDIR or ./figures-data)")
    p_fig.add_argument("--workers", type=int, default=None, help="concurrent grid evaluation (default 1)")
    p_fig.set_defaults(func=cmd_figures)

    return parser


_EVAL_DEFAULTS = {
    "subsystem": Subsystem.AB1C1,
    "alpha": 1.0,
    "channel": None,
    "pb": 0.0,
    "pc": 0.0,
    "policy": NoisePolicy.REDUCED_QUBIT,
}

_SWEEP_DEFAULTS = {
    "subsystems": tuple(Subsystem),
    "channel": None,
    "alphas": (_ROOT2_INV,),
    "ps": (0.0,),
    "policy": NoisePolicy.REDUCED_QUBIT,
    "workers": 1,
    "out": None,
}

_VERIFY_DEFAULTS = {
    "subsystems": tuple(Subsystem),
    "channels": (None,) + tuple(ChannelKind),
    "alphas": tuple(np.linspace(0.0, 1.0, 5)),
    "rbs": tuple(np.linspace(0.0, R_MAX, 5)),
    "rcs": tuple(np.linspace(0.0, R_MAX, 5)),
    "pbs": (0.3,),
    "pcs": (0.7,),
    "seed": 0,
    "policy": NoisePolicy.REDUCED_QUBIT,
    "out": None,
}

_FIGURES_DEFAULTS = {
    "outdir": None,
    "workers": 1,
    "policy": NoisePolicy.REDUCED_QUBIT,
}

_DEFAULTS = {
    "eval": _EVAL_DEFAULTS,
    "sweep": _SWEEP_DEFAULTS,
    "verify": _VERIFY_DEFAULTS,
    "figures": _FIGURES_DEFAULTS,
}


def _convert_config_value(key: str, value):
    """Turn JSON config values into the same types the flag parsers produce."""
    if key in ("subsystem",):
        return _enum_type(_SUBSYSTEMS, key)(str(value))
    if key in ("channel",):
        return _enum_type(_CHANNELS, key)(str(value))
    if key in ("policy",):
        return _enum_type(_POLICIES, key)(str(value))
    if key in ("subsystems",):
        if isinstance(value, str):
            return _enum_list_type(_SUBSYSTEMS, key)(value)
        return tuple(_enum_type(_SUBSYSTEMS, key)(str(v)) for v in value)
    if key in ("channels",):
        if isinstance(value, str):
            return _enum_list_type(_CHANNELS, key)(value)
        return tuple(_enum_type(_CHANNELS, key)(str(v)) for v in value)
    if key in ("alphas", "rs", "ps", "rbs", "rcs", "pbs", "pcs"):
        if isinstance(value, str):
            return _parse_floats(value)
        return tuple(float(v) for v in value)
    return value


def _apply_config_and_defaults(args: argparse.Namespace, parser: argparse.ArgumentParser):
    config = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            parser.error(f"cannot read config {args.config}: {exc}")
        if not isinstance(config, dict):
            parser.error(f"config {args.config} must hold a JSON object")
    defaults = _DEFAULTS[args.command]
    for key, default in defaults.items():
        if getattr(args, key, None) is None:
            if key in config:
                try:
                    value = _convert_config_value(key, config[key])
                except (argparse.ArgumentTypeError, ValueError) as exc:
                    parser.error(f"bad config value for {key}: {exc}")
            else:
                value = default
            setattr(args, key, value)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config_and_defaults(args, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
