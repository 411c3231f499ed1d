"""Command-line front end.

Usage::

    eta-lab eval --sigma 0.5 --t 14.134725 --json
    eta-lab figures --index 2 --out-dir figs
    eta-lab trace --family sigma --value 0.5 --t-lo 14 --t-hi 15 --out trace.csv
    eta-lab regions --boundaries 0,11,15,18.5,21,24,26 --out-dir regions
    eta-lab zeros --t-min 0 --t-max 30 --out zeros.jsonl
    eta-lab census --rect 0.55 0.95 0 30
    eta-lab verify --out report.json

Exit codes: 0 success, 2 usage or domain error, 3 I/O error,
4 numerical failure, 5 verification failure.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import claims, geometry, zeros
from .errors import DomainError, EtaLabError, InvalidArgumentError
from .eta import (
    EvalConfig,
    eta,
    eta_reflected,
    format_real,
    functional_equation_residual,
    zeta_from_eta,
)

EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERICAL = 4
EXIT_VERIFY = 5

FIGURE_INTERVALS = claims.FIGURE_INTERVALS
FIGURE_SIGMAS = (0.0, 0.25, 0.5, 0.75, 1.0)


class Abort(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _fail(message: str, code: int):
    raise Abort(message, code)


def _emit_json(doc) -> None:
    click.echo(json.dumps(doc, indent=2, allow_nan=False))


def _complex_doc(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _config(tolerance: float, max_terms: int) -> EvalConfig:
    try:
        return EvalConfig(tolerance=tolerance, max_terms=max_terms)
    except InvalidArgumentError as exc:
        _fail(str(exc), EXIT_USAGE)


def _ensure_dir(path: Path) -> Path:
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        _fail(f"cannot create output directory {path}: {exc.strerror or exc}", EXIT_IO)
    if not path.is_dir():
        _fail(f"output path {path} is not a directory", EXIT_IO)
    return path


def _write_text(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        _fail(f"cannot write {path}: {exc.strerror or exc}", EXIT_IO)


def _name_value(v: float) -> str:
    return f"{v:g}"


tolerance_option = click.option("--tolerance", default=1e-10, show_default=True, type=float,
                                help="Target absolute error of each evaluation.")
max_terms_option = click.option("--max-terms", default=10**6, show_default=True, type=int,
                                help="Term budget per evaluation.")
json_option = click.option("--json", "as_json", is_flag=True, help="Machine-readable JSON output.")


@click.group()
def cli():
    """Dirichlet eta function in the critical strip."""


@cli.command("eval")
@click.option("--sigma", type=float, required=True)
@click.option("--t", "t", type=float, required=True)
@click.option("--reflected", is_flag=True, help="Also print eta(1 - s).")
@click.option("--zeta", is_flag=True, help="Also print zeta(s) = eta(s) / (1 - 2^(1-s)).")
@click.option("--residual", is_flag=True, help="Also print the functional-equation residual.")
@tolerance_option
@max_terms_option
@json_option
def cmd_eval(sigma, t, reflected, zeta, residual, tolerance, max_terms, as_json):
    """Evaluate eta(sigma + i t)."""
    config = _config(tolerance, max_terms)
    s = complex(sigma, t)
    try:
        ev = eta(s, config)
        doc = {
            "sigma": sigma,
            "t": t,
            "value": _complex_doc(ev.value),
            "method": ev.method.value,
            "terms_used": ev.terms_used,
            "error_estimate": ev.error_estimate,
        }
        if reflected:
            doc["reflected"] = _complex_doc(eta_reflected(s, config).value)
        if zeta:
            doc["zeta"] = _complex_doc(zeta_from_eta(s, config))
        if residual:
            doc["functional_residual"] = functional_equation_residual(s, config)
    except DomainError as exc:
        _fail(str(exc), EXIT_USAGE)
    if as_json:
        _emit_json(doc)
        return
    click.echo(f"value: {format_real(ev.value.real)} {'+' if ev.value.imag >= 0 else '-'} "
               f"{format_real(abs(ev.value.imag))}i")
    click.echo(f"method: {ev.method.value}")
    click.echo(f"terms_used: {ev.terms_used}")
    click.echo(f"error_estimate: {ev.error_estimate:.3e}")
    for key in ("reflected", "zeta"):
        if key in doc:
            click.echo(f"{key}: {format_real(doc[key]['re'])} {format_real(doc[key]['im'])}i")
    if "functional_residual" in doc:
        click.echo(f"functional_residual: {doc['functional_residual']:.3e}")


@cli.command("figures")
@click.option("--index", type=int, required=True, help="Panel 1..6 (a..f).")
@click.option("--out-dir", type=click.Path(file_okay=False, path_type=Path), default=Path("."), show_default=True)
@click.option("--samples", type=int, default=500, show_default=True)
@tolerance_option
@max_terms_option
@json_option
def cmd_figures(index, out_dir, samples, tolerance, max_terms, as_json):
    """Write the curve data of one figure panel as CSV files."""
    if not 1 <= index <= len(FIGURE_INTERVALS):
        _fail(f"--index must be in 1..{len(FIGURE_INTERVALS)}, got {index}", EXIT_USAGE)
    if samples < 2:
        _fail("--samples must be at least 2", EXIT_USAGE)
    config = _config(tolerance, max_terms)
    letter = "abcdef"[index - 1]
    t_lo, t_hi = FIGURE_INTERVALS[index - 1]
    out_dir = _ensure_dir(out_dir)
    written = []
    for alpha in FIGURE_SIGMAS:
        trace = geometry.trace_sigma_curve(alpha, t_lo, t_hi, samples, config=config)
        path = out_dir / f"fig1{letter}_sigma{_name_value(alpha)}.csv"
        _write_text(path, trace.to_csv())
        written.append(path)
    for beta in (t_lo, t_hi):
        trace = geometry.trace_t_curve(beta, samples, config=config)
        path = out_dir / f"fig1{letter}_t{_name_value(beta)}.csv"
        _write_text(path, trace.to_csv())
        written.append(path)
    if as_json:
        _emit_json({"panel": letter, "t_lo": t_lo, "t_hi": t_hi, "files": [p.name for p in written]})
    else:
        for p in written:
            click.echo(str(p))


@cli.command("trace")
@click.option("--family", type=click.Choice(["sigma", "t"]), required=True)
@click.option("--value", type=float, required=True, help="alpha for sigma curves, beta for t curves.")
@click.option("--t-lo", type=float, default=None)
@click.option("--t-hi", type=float, default=None)
@click.option("--samples", type=int, default=500, show_default=True)
@click.option("--source", type=click.Choice([geometry.SOURCE_ETA, geometry.SOURCE_REFLECTED]),
              default=geometry.SOURCE_ETA, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@tolerance_option
@max_terms_option
@json_option
def cmd_trace(family, value, t_lo, t_hi, samples, source, out, tolerance, max_terms, as_json):
    """Sample one sigma = const or t = const curve as CSV (param,x,y)."""
    config = _config(tolerance, max_terms)
    if family == "sigma":
        if t_lo is None or t_hi is None:
            _fail("sigma curves need --t-lo and --t-hi", EXIT_USAGE)
        make = lambda: geometry.trace_sigma_curve(value, t_lo, t_hi, samples, source, config)
    else:
        if t_lo is not None or t_hi is not None:
            _fail("--t-lo/--t-hi apply only to sigma curves", EXIT_USAGE)
        make = lambda: geometry.trace_t_curve(value, samples, source, config)
    try:
        trace = make()
    except InvalidArgumentError as exc:
        _fail(str(exc), EXIT_USAGE)
    text = trace.to_csv()
    if out is not None:
        _write_text(out, text)
    if as_json:
        _emit_json({"trace_id": trace.trace_id, "samples": len(trace), "out": None if out is None else str(out)})
    elif out is None:
        click.echo(text, nl=False)


@cli.command("regions")
@click.option("--boundaries", type=str, default=None, help="Explicit partition, comma-separated (e.g. 0,11,15).")
@click.option("--t-start", type=float, default=None)
@click.option("--t-max", type=float, default=None)
@click.option("--step", type=float, default=geometry.DEFAULT_REGION_STEP, show_default=True)
@click.option("--samples", type=int, default=200, show_default=True)
@click.option("--out-dir", type=click.Path(file_okay=False, path_type=Path), default=None)
@tolerance_option
@max_terms_option
@json_option
def cmd_regions(boundaries, t_start, t_max, step, samples, out_dir, tolerance, max_terms, as_json):
    """Validate a given partition or build one greedily; optionally write StepRegion files."""
    config = _config(tolerance, max_terms)
    explicit = boundaries is not None
    if explicit:
        try:
            boundaries = [float(v) for v in boundaries.split(",") if v.strip()]
        except ValueError:
            _fail(f"cannot parse --boundaries {boundaries!r}", EXIT_USAGE)
    if explicit == (t_start is not None or t_max is not None):
        _fail("give either --boundaries or --t-start/--t-max", EXIT_USAGE)
    try:
        if explicit:
            checks = geometry.check_partition(boundaries, samples, config)
            bad = [c for c in checks if not c.valid]
            rows = [{"m": c.index_m, "t_lo": c.t_lo, "t_hi": c.t_hi, "problems": list(c.problems)} for c in checks]
            regions = [] if bad else geometry.validate_partition(boundaries, samples, config)
        else:
            if t_start is None or t_max is None:
                _fail("--t-start and --t-max go together", EXIT_USAGE)
            regions = geometry.build_regions(t_start, t_max, step, samples, config)
            rows = [{"m": r.index_m, "t_lo": r.t_lo, "t_hi": r.t_hi, "problems": []} for r in regions]
            bad = []
    except InvalidArgumentError as exc:
        _fail(str(exc), EXIT_USAGE)
    if out_dir is not None and regions:
        out_dir = _ensure_dir(out_dir)
        for region in regions:
            try:
                region.to_json(out_dir)
            except OSError as exc:
                _fail(f"cannot write region files: {exc}", EXIT_IO)
    if as_json:
        _emit_json({"valid": not bad, "regions": rows})
    else:
        for row in rows:
            status = "ok" if not row["problems"] else "; ".join(row["problems"])
            click.echo(f"R{row['m']}: [{row['t_lo']:g}, {row['t_hi']:g}] {status}")
    if bad:
        raise Abort("partition invalid", EXIT_VERIFY)


@cli.command("zeros")
@click.option("--t-min", type=float, default=0.0, show_default=True)
@click.option("--t-max", type=float, default=30.0, show_default=True)
@click.option("--step", type=float, default=0.01, show_default=True)
@click.option("--threshold", type=float, default=zeros.DEFAULT_SCAN_THRESHOLD, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.option("--include-factor-zeros", is_flag=True, help="Also catalogue the sigma = 1 factor zeros.")
@tolerance_option
@max_terms_option
@json_option
def cmd_zeros(t_min, t_max, step, threshold, out, include_factor_zeros, tolerance, max_terms, as_json):
    """Scan the critical line, refine zeros and write a JSON-lines catalog."""
    config = _config(tolerance, max_terms)
    if t_max > 100:
        _fail("scanning beyond t = 100 is not supported", EXIT_USAGE)
    try:
        catalog = zeros.build_catalog(t_min, t_max, step, threshold, config,
                                      include_factor_zeros=include_factor_zeros)
    except InvalidArgumentError as exc:
        _fail(str(exc), EXIT_USAGE)
    text = zeros.catalog_to_text(catalog)
    if out is not None:
        try:
            zeros.save_catalog(catalog, out)
        except OSError as exc:
            _fail(f"cannot write {out}: {exc.strerror or exc}", EXIT_IO)
    if as_json:
        _emit_json({"records": [json.loads(line) for line in text.splitlines()[1:]],
                    "metadata": catalog.metadata})
    else:
        for rec in catalog.records:
            click.echo(f"{rec.kind:14s} sigma={rec.sigma:g} t={format_real(rec.t)} "
                       f"|eta|={rec.residual:.2e} ({rec.method}, {rec.iterations} it)")


@cli.command("census")
@click.option("--rect", type=float, nargs=4, default=None, metavar="SIG_LO SIG_HI T_LO T_HI",
              help="Count zeros inside one rectangle.")
@click.option("--t-min", type=float, default=None)
@click.option("--t-max", type=float, default=None)
@click.option("--window", type=float, default=5.0, show_default=True)
@click.option("--delta", type=float, default=0.05, show_default=True)
@click.option("--samples", type=int, default=64, show_default=True)
@tolerance_option
@max_terms_option
@json_option
def cmd_census(rect, t_min, t_max, window, delta, samples, tolerance, max_terms, as_json):
    """Argument-principle zero counts.

    With --rect, print the count inside that rectangle.  Otherwise count the
    zeros in the strips left and right of the critical line over
    [t-min, t-max] (default [0, 30]) window by window and print the total.
    """
    config = _config(tolerance, max_terms)
    if rect and (t_min is not None or t_max is not None):
        _fail("--rect cannot be combined with --t-min/--t-max", EXIT_USAGE)
    try:
        if rect:
            count = zeros.winding_number(zeros.Rectangle(*rect), samples, config)
            doc = {"rect": list(rect), "count": count}
            printed = count
        else:
            lo = 0.0 if t_min is None else t_min
            hi = 30.0 if t_max is None else t_max
            if not lo < hi or window <= 0 or not 0 < delta < 0.5:
                _fail("need t-min < t-max, window > 0 and 0 < delta < 1/2", EXIT_USAGE)
            windows = []
            edges = [lo]
            while edges[-1] < hi - 1e-12:
                edges.append(min(edges[-1] + window, hi))
            for a, b in zip(edges, edges[1:]):
                left = zeros.winding_number(zeros.Rectangle(delta, 0.5 - delta, a, b), samples, config)
                right = zeros.winding_number(zeros.Rectangle(0.5 + delta, 1.0 - delta, a, b), samples, config)
                windows.append({"t_lo": a, "t_hi": b, "left": left, "right": right})
            printed = sum(w["left"] + w["right"] for w in windows)
            doc = {"t_min": lo, "t_max": hi, "delta": delta, "off_line_count": printed, "windows": windows}
    except InvalidArgumentError as exc:
        _fail(str(exc), EXIT_USAGE)
    if as_json:
        _emit_json(doc)
    else:
        click.echo(str(printed))


@cli.command("verify")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write the JSON report here.")
@click.option("--catalog", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Take line zeros from this catalog instead of scanning.")
@tolerance_option
@max_terms_option
@json_option
def cmd_verify(out, catalog, tolerance, max_terms, as_json):
    """Run every check; exit 5 if any fails."""
    cfg = claims.VerifyConfig(eval=_config(tolerance, max_terms))
    reports = claims.run_all(cfg, catalog_path=catalog)
    text = claims.report_json(reports)
    if out is not None:
        _write_text(out, text)
    if as_json:
        click.echo(text, nl=False)
    else:
        for rep in reports:
            mark = "PASS" if rep.passed else "FAIL"
            click.echo(f"[{mark}] {rep.check_name}: max_residual={rep.max_residual:.3e} threshold={rep.threshold:.3e}")
    if not claims.all_passed(reports):
        raise Abort("verification failed", EXIT_VERIFY)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="eta-lab", standalone_mode=False)
    except Abort as exc:
        click.echo(f"eta-lab: {exc}", err=True)
        return exc.code
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        return 1
    except DomainError as exc:
        click.echo(f"eta-lab: {exc}", err=True)
        return EXIT_USAGE
    except InvalidArgumentError as exc:
        click.echo(f"eta-lab: {exc}", err=True)
        return EXIT_USAGE
    except OSError as exc:
        click.echo(f"eta-lab: {exc}", err=True)
        return EXIT_IO
    except EtaLabError as exc:
        click.echo(f"eta-lab: {exc}", err=True)
        return EXIT_NUMERICAL
    return 0


if __name__ == "__main__":
    sys.exit(main())
