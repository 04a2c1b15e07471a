"""Command-line front end: ``zukcheck INPUT [options]``."""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .criterion import HOLDS, Verdict, evaluate
from .errors import InconsistencyError, InputError
from .exact import DEFAULT_PRECISION, Root, factored_str
from .inputs import GROUP, InputSpec, build_graph, parse_input
from .spectral import BOTH, DEFAULT_TOLERANCE, EXACT, NUMERIC, SpectralReport, analyze

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2
EXIT_ASSERT = 3


def _q(x: Fraction) -> str:
    return str(Fraction(x))


def _root_json(r: Root) -> dict:
    if r.is_exact:
        return {"value": _q(r.value), "multiplicity": r.multiplicity}
    return {
        "interval": [_q(r.lo), _q(r.hi)],
        "approx": float(r.midpoint),
        "multiplicity": r.multiplicity,
    }


def _input_summary(spec: InputSpec) -> dict:
    out = {"name": spec.name, "mode": spec.mode}
    if spec.mode == GROUP:
        out["group"] = spec.group.describe()
        out["generators"] = len(spec.generators)
        out["vertices"] = spec.vertices
    if spec.notes:
        out["notes"] = list(spec.notes)
    return out


def report_json(
    spec: InputSpec, report: SpectralReport, verdict: Optional[Verdict], stamp: Optional[str] = None
) -> dict:
    labels = report.labels
    doc = {
        "input_summary": _input_summary(spec),
        "graph": {
            "n": report.n,
            "labels": list(labels),
            "edges": [[labels[i], labels[j]] for i, j in report.edges],
            "degrees": list(report.degrees),
            "components": [[labels[i] for i in block] for block in report.components],
        },
        "char_poly": None,
        "spectrum": None,
        "trace": None,
        "lambda1": None,
        "lambda1_vs_half": report.lambda1_vs_half,
        "numeric_spectrum": list(report.numeric_eigenvalues) if report.numeric_eigenvalues is not None else None,
        "cross_check": report.cross_check,
        "verdict": None,
    }
    if report.char_poly is not None:
        doc["char_poly"] = {
            "monic_coefficients": [_q(c) for c in report.char_poly.coeffs],
            "expanded": report.char_poly.to_str(),
            "factored": factored_str(report.eigenvalues),
        }
        doc["spectrum"] = [_root_json(r) for r in report.eigenvalues]
        doc["trace"] = _q(-report.char_poly.coeffs[report.n - 1])
    if report.lambda1 is not None:
        doc["lambda1"] = _root_json(report.lambda1)
    if verdict is not None:
        doc["verdict"] = {"kind": verdict.kind, "reason": verdict.reason, "conclusion": verdict.conclusion}
    if report.undefined_labels:
        doc["kernel_undefined"] = list(report.undefined_labels)
    if stamp:
        doc["generated_at"] = stamp
    return doc


def report_text(
    spec: InputSpec, report: SpectralReport, verdict: Optional[Verdict], tolerance: float, stamp: Optional[str] = None
) -> str:
    lines = []
    if stamp:
        lines.append(f"generated: {stamp}")
    head = spec.name or "(unnamed)"
    if spec.mode == GROUP:
        head += f" [group {spec.group.describe()}, {len(spec.generators)} generators, {spec.vertices} vertices]"
    else:
        head += " [explicit graph]"
    lines.append(f"input: {head}")
    for note in spec.notes:
        lines.append(f"note: {note}")
    lines.append(f"graph: {report.n} vertices, {len(report.edges)} edges, {len(report.components)} component(s)")
    for i, lab in enumerate(report.labels):
        nbrs = [report.labels[j] for e in report.edges for j in e if i in e and j != i]
        lines.append(f"  {lab}  deg {report.degrees[i]}: {', '.join(nbrs) if nbrs else '-'}")
    if report.undefined_labels:
        lines.append("kernel undefined at: " + ", ".join(report.undefined_labels))
    if report.char_poly is not None:
        lines.append(f"char poly: {report.char_poly.to_str()}")
        lines.append(f"factored: {factored_str(report.eigenvalues)}")
        lines.append("spectrum:")
        for r in report.eigenvalues:
            lines.append(f"  {r}  x{r.multiplicity}")
        lines.append(f"trace: {-report.char_poly.coeffs[report.n - 1]} (n = {report.n})")
    if report.numeric_eigenvalues is not None:
        shown = (f"{v:.12f}" for v in report.numeric_eigenvalues)
        lines.append("numeric: " + " ".join(s.replace("-0.000000000000", "0.000000000000") for s in shown))
    if report.cross_check is not None:
        lines.append(f"cross-check: max |exact - numeric| = {report.cross_check:.3e} (tolerance {tolerance:.1e})")
    if report.lambda1 is not None:
        lines.append(f"lambda1: {report.lambda1}  (vs 1/2: {report.lambda1_vs_half})")
    if verdict is None:
        lines.append("verdict: undecided (numeric engine only)")
    else:
        lines.append(f"conclusion: {verdict.conclusion}")
        lines.append(f"verdict: {verdict.summary()}")
    return "\n".join(lines) + "\n"


@dataclass
class RunResult:
    status: int
    text: str
    json_doc: Optional[dict] = None
    dot: Optional[str] = None
    charpoly: Optional[str] = None
    verdict: Optional[Verdict] = None
    error: Optional[str] = None


def run(spec: InputSpec, options: argparse.Namespace) -> RunResult:
    """Build, analyse and judge one input; never raises for pipeline errors."""
    stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds") if options.stamp else None
    try:
        graph = build_graph(spec, options.symmetrize)
        if options.engines == NUMERIC and options.assert_holds:
            raise InputError("--assert-holds needs the exact engine; drop --numeric")
        report = analyze(graph, options.precision, options.tolerance, options.engines)
        verdict = None
        if report.has_exact or report.undefined_labels or not report.connected:
            verdict = evaluate(report)
    except InputError as exc:
        return RunResult(EXIT_INPUT, "", error=f"error[input]: {exc}")
    except InconsistencyError as exc:
        return RunResult(EXIT_INTERNAL, "", error=f"error[internal]: {exc}")
    status = EXIT_OK
    if options.assert_holds and (verdict is None or verdict.kind != HOLDS):
        status = EXIT_ASSERT
    charpoly = None
    if report.char_poly is not None:
        coeffs = ", ".join(_q(c) for c in report.char_poly.coeffs)
        charpoly = f"{report.char_poly.to_str()}\ncoefficients (lowest degree first): {coeffs}\n"
    return RunResult(
        status,
        report_text(spec, report, verdict, options.tolerance, stamp),
        report_json(spec, report, verdict, stamp),
        graph.to_dot(),
        charpoly,
        verdict,
    )


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _run_file(path: Path, options: argparse.Namespace) -> RunResult:
    try:
        spec = parse_input(path.read_bytes())
    except OSError as exc:
        return RunResult(EXIT_INPUT, "", error=f"error[input]: cannot read {path}: {exc.strerror}")
    except InputError as exc:
        return RunResult(EXIT_INPUT, "", error=f"error[input]: {path.name}: {exc}")
    return run(spec, options)


def _batch(options: argparse.Namespace) -> int:
    src = Path(options.batch)
    if not src.is_dir():
        print(f"error[input]: --batch {src} is not a directory", file=sys.stderr)
        return EXIT_INPUT
    out_dir = Path(options.out_dir) if options.out_dir else src
    out_dir.mkdir(parents=True, exist_ok=True)
    files = sorted(p for p in src.iterdir() if p.suffix in (".json", ".dot") and not p.name.endswith(".report.json"))
    with ThreadPoolExecutor(max_workers=max(1, options.jobs)) as pool:
        results = list(pool.map(lambda p: _run_file(p, options), files))
    worst = EXIT_OK
    for path, res in zip(files, results):
        if res.error:
            print(f"{path.name}: {res.error}")
        else:
            _write(out_dir / f"{path.stem}.report.txt", res.text)
            _write(out_dir / f"{path.stem}.report.json", dump_json(res.json_doc))
            kind = res.verdict.summary() if res.verdict else "undecided"
            print(f"{path.name}: {kind}")
        worst = max(worst, res.status)
    return worst


def _fraction(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="zukcheck",
        description="Decide Zuk's lambda_1 > 1/2 criterion for a generating set or an explicit graph.",
    )
    p.add_argument("input", nargs="?", help="input document (JSON, or DOT from --emit-dot); '-' for stdin")
    eng = p.add_mutually_exclusive_group()
    eng.add_argument("--exact", dest="engines", action="store_const", const=EXACT, help="exact engine only")
    eng.add_argument("--numeric", dest="engines", action="store_const", const=NUMERIC, help="Jacobi engine only")
    eng.add_argument("--both", dest="engines", action="store_const", const=BOTH, help="both engines, cross-checked (default)")
    p.set_defaults(engines=BOTH)
    p.add_argument("--precision", type=_fraction, default=DEFAULT_PRECISION, help="isolation width, e.g. 1/10**12 as 1e-12")
    p.add_argument("--tolerance", type=_positive_float, default=DEFAULT_TOLERANCE, help="exact/numeric cross-check tolerance")
    p.add_argument("--symmetrize", action="store_true", help="add missing inverses instead of rejecting S")
    p.add_argument("--emit-dot", metavar="PATH", help="write the graph in DOT format")
    p.add_argument("--emit-charpoly", metavar="PATH", help="write the monic characteristic polynomial")
    p.add_argument("--json", metavar="PATH", help="write the JSON report")
    p.add_argument("--assert-holds", action="store_true", help="exit 3 unless the verdict is 'holds'")
    p.add_argument("--stamp", action="store_true", help="include a UTC timestamp in reports")
    p.add_argument("--batch", metavar="DIR", help="process every *.json / *.dot in DIR")
    p.add_argument("--out-dir", metavar="DIR", help="where --batch writes reports (default: DIR itself)")
    p.add_argument("--jobs", type=int, default=4, help="worker threads for --batch")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    options = parser.parse_args(argv)
    if options.batch:
        if options.input:
            parser.error("give either INPUT or --batch, not both")
        return _batch(options)
    if not options.input:
        parser.error("an INPUT document is required")
    if options.input == "-":
        try:
            spec = parse_input(sys.stdin.buffer.read())
        except InputError as exc:
            print(f"error[input]: {exc}", file=sys.stderr)
            return EXIT_INPUT
        res = run(spec, options)
    else:
        res = _run_file(Path(options.input), options)
    if res.error:
        print(res.error.replace("\n", " "), file=sys.stderr)
        return res.status
    sys.stdout.write(res.text)
    try:
        if options.json:
            _write(options.json, dump_json(res.json_doc))
        if options.emit_dot:
            _write(options.emit_dot, res.dot)
        if options.emit_charpoly and res.charpoly is not None:
            _write(options.emit_charpoly, res.charpoly)
    except OSError as exc:
        print(f"error[input]: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return res.status


if __name__ == "__main__":
    sys.exit(main())
