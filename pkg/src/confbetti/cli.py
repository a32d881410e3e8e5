"""Command-line interface.

Commands: validate, betti, table, chdim, verify, bounds, dump-preset, report.
Exit codes: 0 success (no errors, no violated verdicts), 1 domain failure or
violated verdict, 2 unreadable or unparsable input.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .algebra import RingFormatError, dump_ring, load_ring, validate_algebra
from .analysis import (
    InvalidAlgebraError,
    betti_table,
    integral_chdim_certified,
    kallel_upper_bound,
    lower_bound_rank,
    predicted_chdim,
    verify_theorems,
)
from .complexes import BasisLimitError
from .presets import get_preset

CSV_HEADER = "# confbetti-csv v1"
DEFAULT_MAX_BASIS = 2_000_000


@dataclass
class RunConfig:
    """Resolved invocation of an algebra-consuming command."""

    command: str
    source: str  # preset key or file path
    from_file: bool
    k: int | None = None
    k_max: int | None = None
    reduced: bool | None = None  # None = pick automatically
    fmt: str = "tty"
    max_basis: int = DEFAULT_MAX_BASIS

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        from_file = args.file is not None
        config = cls(
            command=args.command,
            source=args.file if from_file else args.preset,
            from_file=from_file,
            k=getattr(args, "k", None),
            k_max=getattr(args, "kmax", None),
            reduced=getattr(args, "reduced", None),
            fmt=getattr(args, "format", "tty"),
            max_basis=getattr(args, "max_basis", DEFAULT_MAX_BASIS),
        )
        if (args.file is None) == (args.preset is None):
            raise ValueError("exactly one of --preset/--file is required")
        for value in (config.k, config.k_max):
            if value is not None and value < 1:
                raise ValueError("k must be >= 1")
        return config

    def load_algebra(self):
        return load_ring(self.source) if self.from_file else get_preset(self.source)


def _add_source_args(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--preset", help="built-in ring preset key")
    g.add_argument("--file", help="ring-description JSON file")


def _add_common_args(p):
    p.add_argument("--format", choices=["tty", "csv"], default="tty")
    p.add_argument(
        "--max-basis",
        type=int,
        default=DEFAULT_MAX_BASIS,
        help="abort if a basis at some k exceeds this many monomials",
    )


def _add_reduced_args(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--reduced", dest="reduced", action="store_true", default=None)
    g.add_argument("--full", dest="reduced", action="store_false")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="confbetti",
        description="Rational Betti numbers and cohomological dimension of "
        "unordered configuration spaces, from a cohomology ring presentation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a ring-description file")
    p.add_argument("path")

    p = sub.add_parser("betti", help="Betti table at a single k")
    _add_source_args(p)
    p.add_argument("--k", type=int, required=True)
    _add_reduced_args(p)
    p.add_argument("--weights", action="store_true", help="include weight-resolved dims")
    _add_common_args(p)

    p = sub.add_parser("table", help="Betti tables for k = 1..kmax")
    _add_source_args(p)
    p.add_argument("--kmax", type=int, required=True)
    _add_reduced_args(p)
    _add_common_args(p)

    p = sub.add_parser("chdim", help="cohomological dimension for k = 1..kmax")
    _add_source_args(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--k", type=int)
    g.add_argument("--kmax", type=int)
    _add_common_args(p)

    p = sub.add_parser("verify", help="check the closed-form statements against computation")
    _add_source_args(p)
    p.add_argument("--kmax", type=int, required=True)
    _add_common_args(p)

    p = sub.add_parser("bounds", help="evaluate the binomial and connectivity bounds")
    p.add_argument("--n", type=int, required=True, help="rank of the codimension-one group")
    p.add_argument("--k", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--closed", dest="closed", action="store_true")
    g.add_argument("--open", dest="closed", action="store_false")
    p.add_argument("--d", type=int, help="ambient dimension (enables the upper bound)")
    p.add_argument("--r", type=int, help="connectivity (enables the upper bound)")
    p.add_argument("--format", choices=["tty", "csv"], default="tty")

    p = sub.add_parser("dump-preset", help="emit a preset as a ring-description file")
    p.add_argument("key")
    p.add_argument("-o", "--out", help="write to this path instead of stdout")

    p = sub.add_parser(
        "report", help="Betti table CSV plus rendered figures for k = 1..kmax"
    )
    _add_source_args(p)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--outdir", required=True)
    _add_reduced_args(p)
    p.add_argument(
        "--max-basis",
        type=int,
        default=DEFAULT_MAX_BASIS,
        help="abort if a basis at some k exceeds this many monomials",
    )

    return parser


def _resolve_reduced(a, k, requested):
    """Default: reduced for closed algebras at k >= 2, full otherwise.
    Explicitly asking for the reduction on an open ring is a hypothesis
    violation at the CLI boundary."""
    if requested is None:
        return a.closed and k >= 2
    if requested and not a.closed:
        raise ValueError("--reduced needs a closed ring (reduction is the identity on open ones)")
    if requested and k < 2:
        raise ValueError("--reduced needs k >= 2")
    return requested


def _emit(lines, out):
    out.write("\n".join(lines) + "\n")


# -- commands ----------------------------------------------------------------


def cmd_validate(args, out, err) -> int:
    try:
        a = load_ring(args.path)
    except RingFormatError as exc:
        print(exc, file=err)
        return 2
    report = validate_algebra(a)
    print(report, file=out)
    return 0 if report.ok else 1


def _betti_rows(a, ks, reduced_flag, max_basis):
    rows = []
    for k in ks:
        reduced = _resolve_reduced(a, k, reduced_flag)
        table = betti_table(a, k, reduced=reduced, max_monomials=max_basis)
        rows.append(table)
    return rows


def _weight_dims(table, degree):
    parts = [
        f"{w}:{dim}" for (deg, w), dim in sorted(table.slice_dims.items()) if deg == degree
    ]
    return "|".join(parts)


def cmd_betti(args, out, err) -> int:
    config = RunConfig.from_args(args)
    a = config.load_algebra()
    (table,) = _betti_rows(a, [config.k], config.reduced, config.max_basis)
    lines = []
    if config.fmt == "csv":
        lines.append(CSV_HEADER)
        header = "k,degree,betti,chdim_rational"
        if args.weights:
            header += ",weight_dims"
        lines.append(header)
        for deg in sorted(table.betti):
            row = f"{table.k},{deg},{table.betti[deg]},{table.chdim_rational}"
            if args.weights:
                row += f",{_weight_dims(table, deg)}"
            lines.append(row)
    else:
        kind = "reduced" if table.reduced else "full"
        lines.append(f"{a.name}: k={table.k}, {kind} complex, rational coefficients")
        lines.append("degree  betti" + ("  weight dims" if args.weights else ""))
        for deg in sorted(table.betti):
            row = f"{deg:>6}  {table.betti[deg]:>5}"
            if args.weights:
                row += f"  {_weight_dims(table, deg)}"
            lines.append(row)
        lines.append(f"chdim_rational: {table.chdim_rational}")
    _emit(lines, out)
    return 0


def table_csv_lines(a, kmax, reduced_flag, max_basis) -> list[str]:
    lines = [CSV_HEADER, "k,degree,betti,chdim_rational"]
    for table in _betti_rows(a, range(1, kmax + 1), reduced_flag, max_basis):
        for deg in sorted(table.betti):
            lines.append(f"{table.k},{deg},{table.betti[deg]},{table.chdim_rational}")
    return lines


def cmd_table(args, out, err) -> int:
    config = RunConfig.from_args(args)
    a = config.load_algebra()
    if config.fmt == "csv":
        _emit(table_csv_lines(a, config.k_max, config.reduced, config.max_basis), out)
        return 0
    tables = _betti_rows(a, range(1, config.k_max + 1), config.reduced, config.max_basis)
    degrees = sorted({d for t in tables for d in t.betti})
    lines = [f"{a.name}: Betti numbers for k = 1..{config.k_max} (columns are degrees)"]
    lines.append("k\\deg " + " ".join(f"{d:>4}" for d in degrees))
    for t in tables:
        lines.append(
            f"{t.k:>5} " + " ".join(f"{t.betti.get(d, 0):>4}" for d in degrees)
        )
    _emit(lines, out)
    return 0


def cmd_chdim(args, out, err) -> int:
    config = RunConfig.from_args(args)
    a = config.load_algebra()
    ks = [config.k] if config.k is not None else list(range(1, config.k_max + 1))
    rows = []
    for k in ks:
        reduced = _resolve_reduced(a, k, None)
        table = betti_table(a, k, reduced=reduced, max_monomials=config.max_basis)
        pred = predicted_chdim(a, k)
        rows.append((k, table.chdim_rational, integral_chdim_certified(a, k), pred))
    lines = []
    if config.fmt == "csv":
        lines.append(CSV_HEADER)
        lines.append("k,chdim_rational,integral_certified,predicted")
        for k, ch, cert, pred in rows:
            lines.append(f"{k},{ch},{str(cert).lower()},{'' if pred is None else pred}")
    else:
        lines.append(f"{a.name}: rational cohomological dimension")
        lines.append("k  chdim  equals integral?  predicted")
        for k, ch, cert, pred in rows:
            lines.append(
                f"{k:<2} {ch:>5}  {'yes' if cert else 'no (lower bound)':<16} "
                f"{'-' if pred is None else pred}"
            )
    _emit(lines, out)
    return 0


def cmd_verify(args, out, err) -> int:
    config = RunConfig.from_args(args)
    a = config.load_algebra()
    verdicts = verify_theorems(a, config.k_max, max_monomials=config.max_basis)
    lines = []
    if config.fmt == "csv":
        lines.append(CSV_HEADER)
        lines.append("k,theorem,applicable,predicted,computed,status")
        for v in verdicts:
            lines.append(
                f"{v.k},{v.theorem},{str(v.applicable).lower()},"
                f"{'' if v.predicted is None else v.predicted},"
                f"{'' if v.computed is None else v.computed},{v.status}"
            )
    else:
        lines.append(f"{a.name}: theorem verdicts for k = 1..{config.k_max}")
        lines.append(f"{'k':<3}{'theorem':<8}{'applicable':<11}{'predicted':<10}{'computed':<9}status")
        for v in verdicts:
            lines.append(
                f"{v.k:<3}{v.theorem:<8}{str(v.applicable).lower():<11}"
                f"{'-' if v.predicted is None else v.predicted:<10}"
                f"{'-' if v.computed is None else v.computed:<9}{v.status}"
            )
    _emit(lines, out)
    return 1 if any(v.status == "violated" for v in verdicts) else 0


def cmd_bounds(args, out, err) -> int:
    lower = lower_bound_rank(args.n, args.k, closed=args.closed)
    kallel = None
    if args.d is not None and args.r is not None:
        kallel = kallel_upper_bound(args.d, args.k, args.r, boundary_or_u_nonempty=not args.closed)
    lines = []
    if args.format == "csv":
        lines.append(CSV_HEADER)
        lines.append("n,k,case,lower_bound,d,r,kallel_bound")
        lines.append(
            f"{args.n},{args.k},{'closed' if args.closed else 'open'},{lower},"
            f"{'' if args.d is None else args.d},{'' if args.r is None else args.r},"
            f"{'' if kallel is None else kallel}"
        )
    else:
        case = "closed" if args.closed else "open"
        top = f"(d-1)k{'+1' if args.closed else ''}"
        lines.append(f"rank of the top group ({case}, n={args.n}, k={args.k}) >= {lower}")
        if kallel is not None:
            lines.append(f"chdim upper bound at degree {top} (d={args.d}, r={args.r}): {kallel}")
    _emit(lines, out)
    return 0


def cmd_dump_preset(args, out, err) -> int:
    a = get_preset(args.key)
    text = dump_ring(a)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out}", file=out)
    else:
        out.write(text)
    return 0


def cmd_report(args, out, err) -> int:
    from .report import write_report

    config = RunConfig.from_args(args)
    a = config.load_algebra()
    paths = write_report(
        a, config.k_max, args.outdir, reduced=config.reduced, max_basis=config.max_basis
    )
    for p in paths:
        print(f"wrote {p}", file=out)
    return 0


_COMMANDS = {
    "validate": cmd_validate,
    "betti": cmd_betti,
    "table": cmd_table,
    "chdim": cmd_chdim,
    "verify": cmd_verify,
    "bounds": cmd_bounds,
    "dump-preset": cmd_dump_preset,
    "report": cmd_report,
}


def main(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    args = build_parser().parse_args(argv)
    handler = _COMMANDS[args.command]
    try:
        return handler(args, out, err)
    except RingFormatError as exc:
        print(exc, file=err)
        return 2
    except (InvalidAlgebraError, BasisLimitError, KeyError, ValueError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(message, file=err)
        return 1
    except OSError as exc:
        print(exc, file=err)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
