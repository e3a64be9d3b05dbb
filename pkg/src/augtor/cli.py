"""Command-line front end: ``augtor <subcommand> [input] [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .catalog import catalog_entries, catalog_lookup
from .errors import AugtorError, CatalogLookupError, LoadError, ParseError
from .growth import growth_samples, mahler_measure, p_component, p_growth, square_prime_probe
from .linalg import PresentationMatrix, rational_invariant_factors
from .parsing import load_presentation, parse_poly
from .recurrence import recurrence_spec, theorem39_spec, torsion_by_recurrence
from .torsion import alexander_polynomial, betti, reduced_analysis, torsion

SUBCOMMANDS = ("betti", "torsion", "reduced", "recurrence", "growth", "pgrowth", "probe-square", "catalog")
METHOD_CHOICES = ("auto", "fox", "extended", "snf", "direct_sum", "recurrence")
USAGE_ERRORS = (ParseError, LoadError, CatalogLookupError)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CommandConfig:
    subcommand: str
    poly: str | None = None
    matrix: str | None = None
    name: str | None = None
    r_range: tuple = (1, 10)
    method: str = "auto"
    p: int | None = None
    eps: float = 1e-9
    fmt: str = "table"
    jobs: int = 1
    full: bool = False

    def __post_init__(self):
        lo, hi = self.r_range
        if lo < 1 or hi < lo:
            raise UsageError(f"r range {lo}..{hi} must be nonempty with bounds >= 1")
        if not self.eps > 0:
            raise UsageError("eps must be positive")
        if self.jobs < 1:
            raise UsageError("jobs must be >= 1")


@dataclass
class Report:
    columns: list
    rows: list  # list of dicts keyed by column
    meta: dict


def parse_r_range(text: str) -> tuple:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return int(a), int(b)
        return int(text), int(text)
    except ValueError:
        raise UsageError(f"bad r range {text!r}; expected A..B or a single integer") from None


# --------------------------------------------------------------------------
# input resolution


def _resolve(config: CommandConfig):
    """(matrix, delta or None for non-cyclic input, label)."""
    given = [x for x in (config.poly, config.matrix, config.name) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --poly, --matrix, --name")
    if config.poly is not None:
        delta = parse_poly(config.poly)
        return PresentationMatrix.cyclic(delta), delta, config.poly
    if config.name is not None:
        entry = catalog_lookup(config.name)
        return PresentationMatrix.cyclic(entry.delta), entry.delta, entry.name
    a = load_presentation(config.matrix)
    delta = alexander_polynomial(a) if a.is_cyclic() else None
    return a, delta, config.matrix


def _need_cyclic(delta, sub):
    if delta is None:
        raise UsageError(f"{sub} needs a single polynomial (cyclic module)")
    return delta


def _torsion_job(args):
    a, r, method = args
    return torsion(a, r, method)


def _torsion_rows(config: CommandConfig, a, delta, method=None):
    method = method or config.method
    rs = list(range(config.r_range[0], config.r_range[1] + 1))
    if method == "recurrence":
        return torsion_by_recurrence(_need_cyclic(delta, "the recurrence method"), rs)
    jobs = [(a, r, method) for r in rs]
    if config.jobs > 1 and len(rs) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            return list(pool.map(_torsion_job, jobs))
    return [_torsion_job(j) for j in jobs]


# --------------------------------------------------------------------------
# subcommands


def _cmd_betti(config, a, delta, label):
    rs = range(config.r_range[0], config.r_range[1] + 1)
    pis = [delta] if delta is not None else rational_invariant_factors(a)
    if any(not p for p in pis):
        rows = [{"r": p.r, "betti": p.betti} for p in _torsion_rows(config, a, delta, "snf")]
    else:
        rows = [{"r": r, "betti": betti(pis, r)} for r in rs]
    return Report(["r", "betti"], rows, {"input": label})


def _cmd_torsion(config, a, delta, label):
    rows = [
        {"r": p.r, "betti": p.betti, "torsion": p.torsion, "method": p.method}
        for p in _torsion_rows(config, a, delta)
    ]
    return Report(["r", "betti", "torsion", "method"], rows, {"input": label})


def _cmd_reduced(config, a, delta, label):
    delta = _need_cyclic(delta, "reduced")
    rows = []
    for r in range(config.r_range[0], config.r_range[1] + 1):
        prof = reduced_analysis(delta, r)
        rows.append({
            "r": r,
            "betti_reduced": prof.betti_reduced,
            "torsion_reduced": prof.torsion_reduced,
            "delta": prof.delta,
            "delta_prime": prof.delta_prime,
        })
    return Report(["r", "betti_reduced", "torsion_reduced", "delta", "delta_prime"], rows, {"input": label})


def _cmd_recurrence(config, a, delta, label):
    delta = _need_cyclic(delta, "recurrence")
    if config.full:
        spec = theorem39_spec(delta)
        kind = "full torsion sequence"
    else:
        spec = recurrence_spec(delta, absolute=True)
        kind = "|Res(f, t^r-1)|"
    rows = [{"k": k, "coefficient": c} for k, c in enumerate(spec.coefficients)]
    meta = {
        "input": label,
        "sequence": kind,
        "order": spec.order,
        "sign_mode": spec.sign_mode,
        "start": spec.start,
        "seed": list(spec.seed),
    }
    return Report(["k", "coefficient"], rows, meta)


def _cmd_growth(config, a, delta, label):
    delta = _need_cyclic(delta, "growth")
    profiles = _torsion_rows(config, a, delta)
    samples = growth_samples([(p.r, p.torsion) for p in profiles])
    mahler = mahler_measure(delta, config.eps)
    rows = [{"r": p.r, "torsion": p.torsion, "sample": s} for p, (_, s) in zip(profiles, samples)]
    meta = {"input": label, "mahler": float(mahler.value), "mahler_error": float(mahler.error)}
    return Report(["r", "torsion", "sample"], rows, meta)


def _cmd_pgrowth(config, a, delta, label):
    delta = _need_cyclic(delta, "pgrowth")
    if config.p is None:
        raise UsageError("pgrowth needs --p")
    profiles = _torsion_rows(config, a, delta)
    pg = p_growth([(p.r, p.torsion) for p in profiles], config.p, delta)
    rows = [
        {"r": p.r, "p_component": p_component(p.torsion, config.p), "sample": s}
        for p, (_, s) in zip(profiles, pg.samples)
    ]
    meta = {"input": label, "p": config.p, "target": pg.target, "deviation": pg.deviation}
    return Report(["r", "p_component", "sample"], rows, meta)


def _cmd_probe_square(config, a, delta, label):
    rows = []
    for p in _torsion_rows(config, a, delta):
        sq, digits, prime = square_prime_probe(p.torsion)
        rows.append({"r": p.r, "is_square": sq, "digits": digits, "probable_prime": prime})
    return Report(["r", "is_square", "digits", "probable_prime"], rows, {"input": label})


def _cmd_catalog(config):
    entries = [catalog_lookup(config.name)] if config.name else catalog_entries()
    rows = [
        {"name": e.name, "delta": str(e.delta), "kind": e.kind, "linking_number": e.linking_number,
         "provenance": e.provenance}
        for e in entries
    ]
    return Report(["name", "delta", "kind", "linking_number", "provenance"], rows, {})


# --------------------------------------------------------------------------
# output


def _cell(v, for_json=False):
    if isinstance(v, float):
        text = format(v, ".9g")
        return float(text) if for_json else text
    if for_json:
        return v
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render(report: Report, fmt: str, subcommand: str) -> str:
    if fmt == "json":
        doc = {"command": subcommand}
        doc.update({k: _cell(v, True) for k, v in report.meta.items()})
        doc["rows"] = [{c: _cell(row[c], True) for c in report.columns} for row in report.rows]
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(report.columns)
        for row in report.rows:
            w.writerow([_cell(row[c]) for c in report.columns])
        return buf.getvalue()
    lines = [f"# {k}: {_cell(v)}" for k, v in report.meta.items()]
    table = [report.columns] + [[_cell(row[c]) or "-" for c in report.columns] for row in report.rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(report.columns))]
    for r in table:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


_HANDLERS = {
    "betti": _cmd_betti,
    "torsion": _cmd_torsion,
    "reduced": _cmd_reduced,
    "recurrence": _cmd_recurrence,
    "growth": _cmd_growth,
    "pgrowth": _cmd_pgrowth,
    "probe-square": _cmd_probe_square,
}


def run_command(config: CommandConfig, out=None, err=None) -> int:
    """Run one subcommand; returns 0 on success, 1 on computation error, 2 on usage error."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        if config.subcommand == "catalog":
            report = _cmd_catalog(config)
        elif config.subcommand in _HANDLERS:
            a, delta, label = _resolve(config)
            report = _HANDLERS[config.subcommand](config, a, delta, label)
        else:
            raise UsageError(f"unknown subcommand {config.subcommand!r}")
    except (UsageError, *USAGE_ERRORS) as exc:
        print(f"augtor: usage error: {exc}", file=err)
        return 2
    except AugtorError as exc:
        print(f"augtor: {type(exc).__name__}: {exc}", file=err)
        return 1
    out.write(render(report, config.fmt, config.subcommand))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="augtor",
        description="Torsion and Betti numbers of augmented groups from an integer Laurent polynomial "
        "or a presentation matrix.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name)
        src = sp.add_argument_group("input")
        src.add_argument("--poly", help='Laurent polynomial, e.g. "t^2-3t+1"')
        src.add_argument("--matrix", help="JSON presentation-matrix file")
        src.add_argument("--name", help="catalog name, e.g. 4_1 or ex4.3:m=6")
        sp.add_argument("--r", default="1..10", help="range A..B (default 1..10)")
        sp.add_argument("--method", default="auto", choices=METHOD_CHOICES)
        sp.add_argument("--p", type=int, help="prime for pgrowth")
        sp.add_argument("--eps", type=float, default=1e-9, help="Mahler measure tolerance")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes for r sweeps")
        sp.add_argument("--format", dest="fmt", default="table", choices=("table", "json", "csv"))
        if name == "recurrence":
            sp.add_argument("--full", action="store_true",
                            help="recurrence for the whole torsion sequence, cyclotomic factors included")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = CommandConfig(
            subcommand=args.subcommand,
            poly=args.poly,
            matrix=args.matrix,
            name=args.name,
            r_range=parse_r_range(args.r),
            method=args.method,
            p=args.p,
            eps=args.eps,
            fmt=args.fmt,
            jobs=args.jobs,
            full=getattr(args, "full", False),
        )
    except UsageError as exc:
        print(f"augtor: usage error: {exc}", file=sys.stderr)
        return 2
    return run_command(config)


if __name__ == "__main__":
    sys.exit(main())
