"""Command-line interface.

Examples::

    effdirac lamb --z 1 --n 2 --order zalpha4
    effdirac hfs --z 1 --n 1
    effdirac scan --quantity lamb --n 2 --z 1..40 --orders zalpha4,zalpha5
    effdirac expand --z 1 --state "2s_{1/2}" --kind combined --S 1 --format human
    effdirac figure1 > fig1.csv
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import os
import sys
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence, TextIO

import numpy as np

from . import observables as obs
from .constants import (
    BetheLogTable,
    PhysicalConstants,
    Quantity,
    ReferenceRecord,
    Settings,
    load_bethe_table,
    load_config,
    load_reference_records,
    textbook_bethe_table,
)
from .coupling import CouplingKind, coupling_for, lambda_lamb
from .dirac import nonlinear_factor
from .eigensolver import analytic_expansion, solve_effective
from .errors import EffDiracError
from .states import parse_label

COMMANDS = ("spectrum", "lamb", "hfs", "scan", "expand", "figure1", "compare")
FORMATS = ("csv", "json", "human")

SPLIT_COLUMNS = (
    "Z",
    "n",
    "quantity",
    "order",
    "value_MHz",
    "reference_label",
    "reference_MHz",
    "reference_source",
    "discrepancy_percent",
)
LEVEL_COLUMNS = ("Z", "state", "S", "kind", "epsilon", "binding", "energy_MHz")
EXPAND_COLUMNS = ("Z", "state", "S", "kind", "term", "value", "value_MHz")
FIGURE1_COLUMNS = ("n", "q_bohr", "coulomb_over_e", "radiative_over_e")

FIG1_Q_RANGE = (0.1, 50.0)
FIG1_POINTS = 200


class UsageError(Exception):
    pass


def parse_z_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo_text, hi_text = text.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad Z range {text!r}; use A or A..B") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or invalid Z range {text!r}")
    return list(range(lo, hi + 1))


def _csv_list(choices: Sequence[str]) -> Callable[[str], list[str]]:
    def parse(text: str) -> list[str]:
        items = [item.strip() for item in text.split(",") if item.strip()]
        bad = [item for item in items if item not in choices]
        if not items or bad:
            raise argparse.ArgumentTypeError(f"expected a comma list of {', '.join(choices)}")
        return items

    return parse


def _int_list(text: str) -> list[int]:
    try:
        values = [int(item) for item in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file overriding constants and options")
    common.add_argument(
        "--bethe", help="Bethe-logarithm table (n,l,L csv) or 'textbook' for the uncalibrated set"
    )
    common.add_argument("--references", help="reference values csv (default: shipped records)")
    common.add_argument("--no-references", action="store_true", help="omit reference columns")
    common.add_argument("--format", choices=FORMATS, default="csv", dest="output_format")
    common.add_argument("--output", "-o", help="write data here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="effdirac",
        description="Hydrogenic levels from a Dirac equation with effective Coulomb couplings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def z_arg(p, default="1"):
        p.add_argument("--z", type=parse_z_range, default=parse_z_range(default), metavar="A..B")

    def lamb_order(p):
        p.add_argument("--order", choices=[o.value for o in obs.LambOrder])

    def hfs_opts(p):
        p.add_argument("--corrections", action="store_true", help="apply the Breit factor")
        p.add_argument("--user-delta", type=float, help="extra relative hyperfine correction")

    p = sub.add_parser("spectrum", parents=[common], help="solve one level")
    z_arg(p)
    p.add_argument("--state", default="2s_{1/2}")
    p.add_argument("--kind", choices=[k.value for k in CouplingKind], default="dirac")
    p.add_argument("--S", type=int, choices=(0, 1))
    lamb_order(p)
    hfs_opts(p)

    p = sub.add_parser("lamb", parents=[common], help="ns1/2 - np1/2 splitting")
    z_arg(p)
    p.add_argument("--n", type=int, default=2)
    lamb_order(p)

    p = sub.add_parser("hfs", parents=[common], help="ns1/2 hyperfine splitting")
    z_arg(p)
    p.add_argument("--n", type=int, default=2)
    hfs_opts(p)

    p = sub.add_parser("scan", parents=[common], help="splittings over a Z range")
    z_arg(p, "1..40")
    p.add_argument("--quantity", choices=("lamb", "hfs"), default="lamb")
    p.add_argument("--n", type=int, default=2)
    p.add_argument(
        "--orders",
        type=_csv_list(["zalpha4", "zalpha5", "alpha4", "breit"]),
        help="lamb: zalpha4,zalpha5; hfs: alpha4,breit",
    )
    p.add_argument("--user-delta", type=float)

    p = sub.add_parser("expand", parents=[common], help="analytic order-by-order breakdown")
    z_arg(p)
    p.add_argument("--state", default="2s_{1/2}")
    p.add_argument("--kind", choices=[k.value for k in CouplingKind], default="dirac")
    p.add_argument("--S", type=int, choices=(0, 1))
    lamb_order(p)

    p = sub.add_parser("figure1", parents=[common], help="Coulomb vs radiative potential data")
    z_arg(p)
    p.add_argument("--n-list", type=_int_list, default=[4, 8, 12])
    p.add_argument("--points", type=int, default=FIG1_POINTS)

    p = sub.add_parser("compare", parents=[common], help="model vs every reference record")
    return parser


def _fmt_number(value: float) -> str:
    return format(value, ".17g")


def emit(
    rows: Sequence[dict[str, Any]],
    output_format: str,
    destination: TextIO,
    columns: Optional[Sequence[str]] = None,
) -> None:
    """Write homogeneous rows as csv, json or aligned text."""
    if columns is None:
        columns = list(rows[0]) if rows else []
    for row in rows:
        if list(row) != list(columns):
            raise ValueError("rows must share the same columns")
    if output_format == "csv":
        writer = csv.writer(destination, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow(
                ["" if v is None else _fmt_number(v) if isinstance(v, float) else v
                 for v in row.values()]
            )
    elif output_format == "json":
        json.dump(list(rows), destination, indent=2, allow_nan=False)
        destination.write("\n")
    elif output_format == "human":
        cells = [list(columns)]
        for row in rows:
            cells.append(
                ["-" if v is None else format(v, ".10g") if isinstance(v, float) else str(v)
                 for v in row.values()]
            )
        widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
        for r in cells:
            destination.write("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")
    else:
        raise ValueError(f"unknown output format {output_format!r}")


@dataclass
class Context:
    constants: PhysicalConstants
    settings: Settings
    bethe: BetheLogTable
    references: list[ReferenceRecord]


def _load_context(args) -> Context:
    constants, settings = load_config(args.config)
    if args.bethe == "textbook":
        bethe = textbook_bethe_table()
    else:
        bethe = load_bethe_table(args.bethe)
    if args.no_references:
        references = []
    else:
        references = load_reference_records(args.references)
    return Context(constants, settings, bethe, references)


class ComputationError(Exception):
    pass


def _guard(where: str, fn: Callable[[], Any]) -> Any:
    try:
        return fn()
    except EffDiracError as exc:
        raise ComputationError(f"{where}: {exc}") from exc


def _split_rows(results: Sequence[obs.SplittingResult], ctx: Context) -> list[dict[str, Any]]:
    rows = []
    for cmp in obs.compare(results, ctx.references):
        r, ref = cmp.result, cmp.reference
        rows.append(
            {
                "Z": r.Z,
                "n": r.n,
                "quantity": r.quantity.value,
                "order": r.order_label,
                "value_MHz": r.value_MHz,
                "reference_label": ref.label if ref else None,
                "reference_MHz": ref.value_MHz if ref else None,
                "reference_source": ref.source.value if ref else None,
                "discrepancy_percent": cmp.discrepancy_percent,
            }
        )
    return rows


def _lamb_order(args, ctx: Context) -> str:
    if args.order:
        return args.order
    return "zalpha5" if ctx.settings.enable_binding_correction else "zalpha4"


def _user_delta(args, ctx: Context) -> float:
    return args.user_delta if args.user_delta is not None else ctx.settings.user_delta_hyperfine


def _lamb(Z: int, n: int, order: str, ctx: Context) -> obs.SplittingResult:
    where = f"Z={Z}, states {n}s_{{1/2}}/{n}p_{{1/2}}"
    return _guard(where, lambda: obs.lamb_shift(Z, n, order, ctx.constants, ctx.bethe))


def _hfs(Z: int, n: int, corrections: bool, delta: float, ctx: Context) -> obs.SplittingResult:
    where = f"Z={Z}, state {n}s_{{1/2}} S=0/1"
    return _guard(
        where,
        lambda: obs.hyperfine_splitting(Z, n, ctx.constants, corrections, delta),
    )


def cmd_lamb(args, ctx):
    order = _lamb_order(args, ctx)
    return SPLIT_COLUMNS, _split_rows([_lamb(Z, args.n, order, ctx) for Z in args.z], ctx)


def cmd_hfs(args, ctx):
    delta = _user_delta(args, ctx)
    results = [_hfs(Z, args.n, args.corrections, delta, ctx) for Z in args.z]
    return SPLIT_COLUMNS, _split_rows(results, ctx)


def cmd_scan(args, ctx):
    results = []
    if args.quantity == "lamb":
        orders = args.orders or ["zalpha4", "zalpha5"]
        if any(o not in ("zalpha4", "zalpha5") for o in orders):
            raise UsageError("lamb scans take orders zalpha4,zalpha5")
        for Z in args.z:
            results.extend(_lamb(Z, args.n, order, ctx) for order in orders)
    else:
        orders = args.orders or ["alpha4"]
        if any(o not in ("alpha4", "breit") for o in orders):
            raise UsageError("hfs scans take orders alpha4,breit")
        delta = _user_delta(args, ctx)
        for Z in args.z:
            results.extend(_hfs(Z, args.n, o == "breit", delta, ctx) for o in orders)
    return SPLIT_COLUMNS, _split_rows(results, ctx)


def _state_from(args):
    try:
        return parse_label(args.state, args.S)
    except EffDiracError as exc:
        raise UsageError(str(exc)) from exc


def cmd_spectrum(args, ctx):
    state = _state_from(args)
    binding = _lamb_order(args, ctx) == "zalpha5"
    delta = _user_delta(args, ctx)
    rows = []
    for Z in args.z:

        def level():
            z = Z * ctx.constants.alpha
            g = coupling_for(
                args.kind,
                state,
                z,
                nonlinear_factor(state, z),
                ctx.constants,
                ctx.bethe,
                binding_correction=binding,
                hyperfine_corrections=args.corrections,
                user_delta=delta,
            )
            return solve_effective(state, z, g)

        lvl = _guard(f"Z={Z}, state {state.label}", level)
        rows.append(
            {
                "Z": Z,
                "state": state.label,
                "S": state.S,
                "kind": args.kind,
                "epsilon": lvl.epsilon,
                "binding": lvl.binding,
                "energy_MHz": -obs.to_MHz(lvl.binding, ctx.constants),
            }
        )
    return LEVEL_COLUMNS, rows


def cmd_expand(args, ctx):
    state = _state_from(args)
    binding = _lamb_order(args, ctx) == "zalpha5"
    rows = []
    for Z in args.z:
        terms = _guard(
            f"Z={Z}, state {state.label}",
            lambda: analytic_expansion(state, Z, ctx.constants, args.kind, ctx.bethe, binding),
        )
        for label, value in terms:
            rows.append(
                {
                    "Z": Z,
                    "state": state.label,
                    "S": state.S,
                    "kind": args.kind,
                    "term": label,
                    "value": value,
                    "value_MHz": obs.to_MHz(value, ctx.constants),
                }
            )
    return EXPAND_COLUMNS, rows


def figure1_rows(
    Z: int,
    n_list: Sequence[int],
    constants: PhysicalConstants,
    bethe: BetheLogTable,
    points: int = FIG1_POINTS,
) -> list[dict[str, Any]]:
    """Coulomb potential Z/q (atomic units) and its radiative counterpart
    |lambda_{n,-1,0}| Z/q on a logarithmic grid in q (Bohr radii)."""
    q_grid = np.geomspace(*FIG1_Q_RANGE, points)
    z = Z * constants.alpha
    rows = []
    for n in n_list:
        lam = abs(lambda_lamb(n, -1, 0, constants.alpha, z, bethe).value)
        for q in q_grid:
            coulomb = Z / float(q)
            rows.append(
                {"n": n, "q_bohr": float(q), "coulomb_over_e": coulomb,
                 "radiative_over_e": lam * coulomb}
            )
    return rows


def cmd_figure1(args, ctx):
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    (Z,) = args.z[:1]
    rows = _guard(
        f"Z={Z}, kappa=-1, l_a=0",
        lambda: figure1_rows(Z, args.n_list, ctx.constants, ctx.bethe, args.points),
    )
    return FIGURE1_COLUMNS, rows


def cmd_compare(args, ctx):
    results = []
    seen = set()
    for ref in ctx.references:
        key = (ref.Z, ref.n, ref.quantity, ref.is_increment)
        if key in seen:
            continue
        seen.add(key)
        if ref.quantity is Quantity.LAMB_SHIFT and ref.is_increment:
            results.append(
                _guard(f"Z={ref.Z}, n={ref.n}",
                       lambda: obs.lamb_increment(ref.Z, ref.n, ctx.constants, ctx.bethe))
            )
        elif ref.quantity is Quantity.LAMB_SHIFT:
            results.extend(_lamb(ref.Z, ref.n, o, ctx) for o in ("zalpha4", "zalpha5"))
        elif ref.quantity is Quantity.HYPERFINE_SPLITTING:
            results.append(_hfs(ref.Z, ref.n, False, 0.0, ctx))
    return SPLIT_COLUMNS, _split_rows(results, ctx)


HANDLERS = {
    "spectrum": cmd_spectrum,
    "lamb": cmd_lamb,
    "hfs": cmd_hfs,
    "scan": cmd_scan,
    "expand": cmd_expand,
    "figure1": cmd_figure1,
    "compare": cmd_compare,
}


def run(argv: Optional[Sequence[str]] = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        ctx = _load_context(args)
        columns, rows = HANDLERS[args.command](args, ctx)
    except UsageError as exc:
        parser.print_usage(stderr)
        stderr.write(f"effdirac: error: {exc}\n")
        return 2
    except ComputationError as exc:
        stderr.write(f"effdirac: {exc}\n")
        return 1
    except (EffDiracError, OSError) as exc:
        stderr.write(f"effdirac: {exc}\n")
        return 1
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                emit(rows, args.output_format, fh, columns)
        else:
            emit(rows, args.output_format, stdout, columns)
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        sys.stderr = open(os.devnull, "w")
        return 0
    except OSError as exc:
        stderr.write(f"effdirac: cannot write output: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())
