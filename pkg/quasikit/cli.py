"""
quasikit command-line interface.

Commands:
    analyze <file> [--json] [--curves N] | analyze --batch DIR [--workers N]
    classify <file> [--subdivision] [--json]
    cohomology <file> [--relative SUBFILE] [--json]
    obstruct <file> (--curves N | --suspension) [--expect-certificate] [--json]
    suspend | subdivide | core <file> [-o OUT]
    product <fileA> <fileB> [-o OUT]
    generate <name> [-o OUT]

Exit codes: 0 success, 1 Inconclusive under --expect-certificate (or nothing to
write), 2 input errors. Diagnostics go to stderr.
"""

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .classification import classify_quasi, classify_quasi_via_subdivision, classify_ramified, ramified_core
from .cohomology import reduced_cohomology, relative_cohomology
from .complex_core import SimplicialComplex, barycentric_subdivision, staircase_product, suspension
from .config import BATCH_SUFFIXES, LOG_FORMAT, LOG_LEVEL, SCHEMA_VERSION, use_color
from .facet_io import (
    build_analysis_report,
    read_complex,
    render_certificate_text,
    render_cohomology_text,
    render_quasi_text,
    render_ramified_text,
    render_report_json,
    render_report_text,
    serialize_facets,
    write_complex,
)
from .generators import generate
from .obstruction import Verdict, curve_product_obstruction, suspension_obstruction

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1
EXIT_INPUT_ERROR = 2


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _load(path: str) -> Tuple[SimplicialComplex, str, List[str]]:
    doc = read_complex(path)
    return doc.simplicial_complex, doc.name, list(doc.warnings)


def _write_or_print(K: SimplicialComplex, name: str, out: Optional[str]) -> int:
    if K.is_empty:
        sys.stderr.write(f"{name}: result is empty, nothing to write\n")
        return EXIT_INCONCLUSIVE
    if out:
        write_complex(K, out, name=name)
    else:
        _emit(serialize_facets(K, name=name))
    return EXIT_OK


def _analyze_path(path: str, curves: Optional[int]) -> Tuple[str, Optional[Dict], Optional[str]]:
    """Analyze one file in isolation; errors are returned, not raised (batch worker)."""
    try:
        K, name, warnings = _load(path)
        return path, build_analysis_report(K, name=name, curves=curves, warnings=warnings), None
    except (OSError, ValueError) as e:
        return path, None, str(e)


def _batch_files(directory: str) -> List[str]:
    root = Path(directory)
    if not root.is_dir():
        raise NotADirectoryError(f"Not a directory: {directory}")
    return sorted(str(p) for p in root.iterdir() if p.is_file() and p.suffix.lower() in BATCH_SUFFIXES)


def cmd_analyze(args: argparse.Namespace) -> int:
    if args.batch:
        return _analyze_batch(args)
    if not args.file:
        raise ValueError("analyze needs a file or --batch DIR")
    K, name, warnings = _load(args.file)
    report = build_analysis_report(K, name=name, curves=args.curves, warnings=warnings)
    _emit(render_report_json(report) if args.json else render_report_text(report, color=args.color))
    return EXIT_OK


def _analyze_batch(args: argparse.Namespace) -> int:
    files = _batch_files(args.batch)
    logger.info("Batch analysis of %d files with %d workers", len(files), args.workers)
    if args.workers > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_analyze_path, files, [args.curves] * len(files)))
    else:
        results = [_analyze_path(f, args.curves) for f in files]

    reports = [report for _, report, _ in results if report is not None]
    errors = [{"file": path, "error": error} for path, _, error in results if error is not None]
    for entry in errors:
        sys.stderr.write(f"error: {entry['file']}: {entry['error']}\n")

    if args.json:
        _emit(json.dumps({"schema_version": SCHEMA_VERSION, "reports": reports, "errors": errors}, indent=2) + "\n")
    else:
        _emit("".join(render_report_text(r, color=args.color) for r in reports))
    return EXIT_INPUT_ERROR if errors else EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    K, name, _ = _load(args.file)
    quasi = (classify_quasi_via_subdivision(K) if args.subdivision else classify_quasi(K)).to_dict()
    ramified = classify_ramified(K).to_dict()
    if args.json:
        payload = {"schema_version": SCHEMA_VERSION, "name": name, "quasi": quasi, "ramified": ramified}
        _emit(json.dumps(payload, indent=2) + "\n")
        return EXIT_OK
    method = "barycentric subdivision vertex links" if args.subdivision else "carrier links"
    lines = [f"== {name} ==", f"Quasi-manifold classification ({method}):"]
    lines.extend(render_quasi_text(quasi, args.color))
    lines.append("Ramification:")
    lines.extend(render_ramified_text(ramified))
    _emit("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_cohomology(args: argparse.Namespace) -> int:
    K, name, _ = _load(args.file)
    if args.relative:
        L, sub_name, _ = _load(args.relative)
        profile = relative_cohomology(K, L)
        title = f"H^*({name}, {sub_name})"
    else:
        profile = reduced_cohomology(K)
        title = f"H~^*({name})"
    if args.json:
        _emit(json.dumps({"schema_version": SCHEMA_VERSION, "name": name, "cohomology": profile.to_dict()},
                         indent=2) + "\n")
    else:
        _emit("\n".join([title] + render_cohomology_text(profile.to_dict())) + "\n")
    return EXIT_OK


def cmd_obstruct(args: argparse.Namespace) -> int:
    K, name, _ = _load(args.file)
    if args.suspension:
        certificate = suspension_obstruction(K, subject=name)
    else:
        certificate = curve_product_obstruction(K, args.curves, subject=name)
    if args.json:
        _emit(json.dumps(certificate.to_dict(), indent=2) + "\n")
    else:
        _emit("\n".join(["Curve-product obstruction:"] + render_certificate_text(certificate.to_dict(), args.color)) + "\n")
    if args.expect_certificate and certificate.verdict == Verdict.INCONCLUSIVE:
        sys.stderr.write(f"{name}: expected a certificate, got Inconclusive\n")
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_suspend(args: argparse.Namespace) -> int:
    K, name, _ = _load(args.file)
    return _write_or_print(suspension(K), f"suspension({name})", args.output)


def cmd_subdivide(args: argparse.Namespace) -> int:
    K, name, _ = _load(args.file)
    return _write_or_print(barycentric_subdivision(K), f"sd({name})", args.output)


def cmd_core(args: argparse.Namespace) -> int:
    K, name, _ = _load(args.file)
    return _write_or_print(ramified_core(K), f"core({name})", args.output)


def cmd_product(args: argparse.Namespace) -> int:
    K, first, _ = _load(args.first)
    L, second, _ = _load(args.second)
    return _write_or_print(staircase_product(K, L), f"{first}x{second}", args.output)


def cmd_generate(args: argparse.Namespace) -> int:
    return _write_or_print(generate(args.name), args.name, args.output)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quasikit",
                                description="Quasi-manifold classification and curve-product obstructions")
    p.add_argument("-v", "--verbose", action="count", default=0, help="More logging (-v info, -vv debug)")
    p.add_argument("--no-color", action="store_true", help="Never colour text reports")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("analyze", help="Full report: cohomology, classification, certificate")
    s.add_argument("file", nargs="?", help="Facet list (text or JSON)")
    s.add_argument("--json", action="store_true", help="Emit the JSON report")
    s.add_argument("--curves", type=int, help="Curve factors for the certificate (default: dim K)")
    s.add_argument("--batch", metavar="DIR", help="Analyze every facet file in DIR")
    s.add_argument("--workers", type=int, default=1, help="Worker processes for --batch (default: 1)")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("classify", help="Quasi-manifold and ramification verdicts per face")
    s.add_argument("file")
    s.add_argument("--subdivision", action="store_true", help="Decide via vertex links of the subdivision")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("cohomology", help="Reduced or relative integer cohomology")
    s.add_argument("file")
    s.add_argument("--relative", metavar="SUBFILE", help="Subcomplex L for H^*(K, L)")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("obstruct", help="Non-embeddability certificate for a product of curves")
    s.add_argument("file")
    mode = s.add_mutually_exclusive_group(required=True)
    mode.add_argument("--curves", type=int, help="Number of curve factors")
    mode.add_argument("--suspension", action="store_true", help="Certify the suspension (n+1 curves)")
    s.add_argument("--expect-certificate", action="store_true", help="Exit 1 when the verdict is Inconclusive")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_obstruct)

    for command, handler, description in (
        ("suspend", cmd_suspend, "Suspension with two fresh apexes"),
        ("subdivide", cmd_subdivide, "Barycentric subdivision"),
        ("core", cmd_core, "Ramified core"),
    ):
        s = sub.add_parser(command, help=description)
        s.add_argument("file")
        s.add_argument("-o", "--output", help="Output file (default: stdout)")
        s.set_defaults(func=handler)

    s = sub.add_parser("product", help="Staircase product of two complexes")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("-o", "--output", help="Output file (default: stdout)")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("generate", help="Named complex, e.g. sphere_boundary:3, torus7, book:3")
    s.add_argument("name")
    s.add_argument("-o", "--output", help="Output file (default: stdout)")
    s.set_defaults(func=cmd_generate)
    return p


def _configure_logging(verbose: int) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, LOG_LEVEL, logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT_ERROR if e.code else EXIT_OK
    _configure_logging(args.verbose)
    args.color = (not args.no_color) and use_color(sys.stdout)
    if getattr(args, "workers", 1) < 1:
        sys.stderr.write("error: --workers must be at least 1\n")
        return EXIT_INPUT_ERROR

    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
