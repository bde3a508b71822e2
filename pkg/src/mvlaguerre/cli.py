"""Command-line interface: ``mvlaguerre verify | generate | eval``."""

from __future__ import annotations

import csv
import io
import json
import sys

import click
import numpy as np

from ._backend import BACKEND, to_str
from .diffops import Gamma_n, Lambda_n
from .mvop import MVOPSequence
from .pearson import FamilyError, build_K
from .serialize import dumps, matrix_csv_rows, matrix_to_json, poly_csv_rows, poly_to_json
from .suites import family_from_document, run_suites

FAMILY_OPTIONS = [
    click.option("--example", "example", type=click.IntRange(1, 3), help="Built-in family."),
    click.option("--spec", "spec_path", type=click.Path(exists=True, dir_okay=False), help="Family document (JSON)."),
    click.option("--N", "N", type=click.IntRange(min=1), help="Matrix size."),
    click.option("--alpha", type=str, help="alpha as 'p/q'."),
    click.option("--nu", type=str, help="nu as 'p/q'."),
    click.option("--lambda", "lam", type=str, help="Example 2 parameter."),
    click.option("--rho", type=str, help="Example 3 coefficient d."),
    click.option("--C", "C", type=str, help="Example 3 offset."),
    click.option("--nmax", type=click.IntRange(min=0), default=3, show_default=True),
    click.option("--levels", type=str, default="0", show_default=True, help="Comma list or range a-b of nu-shifts."),
]


def family_options(fn):
    for opt in reversed(FAMILY_OPTIONS):
        fn = opt(fn)
    return fn


def _levels(text: str) -> tuple[int, ...]:
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if "-" in part:
                a, b = part.split("-", 1)
                out += range(int(a), int(b) + 1)
            else:
                out.append(int(part))
    except ValueError as exc:
        raise click.BadParameter(f"cannot parse {text!r}", param_hint="--levels") from exc
    if not out or min(out) < 0:
        raise click.BadParameter("levels must be nonnegative integers", param_hint="--levels")
    return tuple(sorted(set(out)))


def _load_family(example, spec_path, N, alpha, nu, lam, rho, C, nmax, levels):
    if (example is None) == (spec_path is None):
        raise click.UsageError("give exactly one of --example or --spec")
    max_shift = nmax + max(levels) + 2
    overrides = {"N": N, "alpha": alpha, "nu": nu, "lambda": lam, "rho": rho, "C": C}
    if spec_path:
        with open(spec_path) as fh:
            doc = json.load(fh)
        if "example" not in doc:
            overrides = {k: v for k, v in overrides.items() if k in ("N", "alpha", "nu")}
    else:
        doc = {"example": example, "params": {}}
    try:
        f = family_from_document(doc, max_shift, overrides)
    except (FamilyError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    if f.max_shift < nmax + max(levels) + 1:
        raise click.UsageError(f"max_shift {f.max_shift} too small for nmax {nmax} at levels {levels}")
    return f


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=not text.endswith("\n"))


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact matrix-valued Laguerre-type orthogonal polynomials."""


@main.command()
@family_options
@click.option("--suite", default="all", show_default=True, help="Comma list: structure,pearson,mvop,diffops,numeric,variants,all.")
@click.option("--points", type=click.IntRange(min=1), default=None, help="Quadrature points (default: minimal exact rule).")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
def verify(example, spec_path, N, alpha, nu, lam, rho, C, nmax, levels, suite, points, fmt, out_path):
    """Run identity suites; exit status 0 iff every check passes."""
    lv = _levels(levels)
    f = _load_family(example, spec_path, N, alpha, nu, lam, rho, C, nmax, lv)
    try:
        records = run_suites(f, suite.split(","), nmax, lv, points)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    passed = sum(r.check.passed for r in records)
    if fmt == "json":
        doc = {
            "family": f.describe(),
            "backend": BACKEND,
            "summary": {"total": len(records), "passed": passed, "failed": len(records) - passed},
            "checks": [r.to_dict() for r in records],
        }
        _emit(dumps(doc), out_path)
    else:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["suite", "identity", "paper_ref", "status", "detail"])
        for r in records:
            d = r.to_dict()
            w.writerow([r.suite, d["identity"], d["paper_ref"], d["status"], json.dumps(d["detail"], default=str)])
        _emit(buf.getvalue(), out_path)
    sys.exit(0 if passed == len(records) else 1)


@main.command()
@family_options
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
def generate(example, spec_path, N, alpha, nu, lam, rho, C, nmax, levels, fmt, out_path):
    """Emit P_n, H_n, B_n, C_n, Gamma_n, Lambda_n and K_n as exact rationals."""
    lv = _levels(levels)
    f = _load_family(example, spec_path, N, alpha, nu, lam, rho, C, nmax, lv)
    if not f.valid:
        failed = [c.identity for c in f.validation if not c.passed]
        raise click.UsageError(f"inconsistent family parameters: {failed}")
    tables = []
    for lev in lv:
        seq = MVOPSequence.build(f, nmax, lev)
        tables.append(
            {
                "level": lev,
                "gamma_units_nu": to_str(f.nu_at(lev)),
                "P": [poly_to_json(p) for p in seq.polys],
                "H": [matrix_to_json(h.value) for h in seq.norms],
                "B": [matrix_to_json(b) for b in seq.B],
                "C": [matrix_to_json(c) for c in seq.C],
                "Gamma": [matrix_to_json(Gamma_n(f, n, lev)) for n in range(nmax + 1)],
                "Lambda": [matrix_to_json(Lambda_n(f, n, lev)) for n in range(nmax + 1)],
                "K": [matrix_to_json(build_K(f, n, lev)) for n in range(nmax + 1)],
            }
        )
    if fmt == "json":
        _emit(dumps({"family": f.describe(), "nmax": nmax, "tables": tables}), out_path)
        return
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["level", "quantity", "n", "i", "j", "power", "value"])
    for lev in lv:
        seq = MVOPSequence.build(f, nmax, lev)
        rows = []
        for n, p in enumerate(seq.polys):
            rows += poly_csv_rows("P", n, p)
        for n in range(nmax + 1):
            rows += matrix_csv_rows("H", n, seq.norms[n].value)
            rows += matrix_csv_rows("B", n, seq.B[n])
            rows += matrix_csv_rows("Gamma", n, Gamma_n(f, n, lev))
            rows += matrix_csv_rows("Lambda", n, Lambda_n(f, n, lev))
            rows += matrix_csv_rows("K", n, build_K(f, n, lev))
        for n in range(1, nmax + 1):
            rows += matrix_csv_rows("C", n, seq.C[n - 1])
        for row in rows:
            w.writerow([lev, *row])
    _emit(buf.getvalue(), out_path)


@main.command(name="eval")
@family_options
@click.option("--x", "x", type=float, required=True, help="Evaluation point, x >= 0.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
def eval_cmd(example, spec_path, N, alpha, nu, lam, rho, C, nmax, levels, x, out_path):
    """Evaluate W(x) and P_0(x) .. P_nmax(x) in floating point."""
    if x < 0:
        raise click.BadParameter("x must be nonnegative", param_hint="--x")
    lv = _levels(levels)
    f = _load_family(example, spec_path, N, alpha, nu, lam, rho, C, nmax, lv)
    if not f.valid:
        raise click.UsageError("inconsistent family parameters")
    out = {"family": f.describe(), "x": x, "levels": []}
    for lev in lv:
        seq = MVOPSequence.build(f, nmax, lev)
        out["levels"].append(
            {
                "level": lev,
                "W": np.asarray(f.weight(lev)(x)).tolist(),
                "P": [np.asarray(p(x), dtype=float).tolist() for p in seq.polys],
            }
        )
    _emit(json.dumps(out, indent=2), out_path)


if __name__ == "__main__":
    main()
