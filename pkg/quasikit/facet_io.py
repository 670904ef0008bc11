"""
Facet I/O Module

File formats and analysis reports:
- Text facet lists: one facet per line, whitespace-separated labels, ``#`` comments,
  optional ``# name:``, ``# dimension:`` and ``# apexes:`` headers
- JSON mirror: {"name", "dimension", "apexes", "facets"}
- Analysis reports as canonically ordered dictionaries, rendered as JSON or text

Example text document:

    # name: two triangles
    # dimension: 2
    a b c
    a b d
"""

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd

from .classification import classify_quasi, classify_ramified
from .cohomology import reduced_cohomology
from .complex_core import SimplicialComplex, components, euler_characteristic, f_vector, is_pure
from .config import SCHEMA_VERSION, use_color
from .errors import FacetParseError
from .obstruction import curve_product_obstruction

logger = logging.getLogger(__name__)

HEADER_PATTERN = re.compile(r"^#\s*(name|dimension|apexes)\s*:\s*(.*?)\s*$", re.IGNORECASE)

ANSI_RED = "\033[31m"
ANSI_GREEN = "\033[32m"
ANSI_YELLOW = "\033[33m"
ANSI_RESET = "\033[0m"


@dataclass
class FacetListDocument:
    """Parsed facet list with its header, warnings and the resulting complex."""

    name: Optional[str] = None
    dimension_hint: Optional[int] = None
    apexes: Tuple[str, ...] = ()
    facets: List[Tuple[str, ...]] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    simplicial_complex: Optional[SimplicialComplex] = None

    def warn(self, message: str) -> None:
        logger.warning(message)
        self.warnings.append(message)


def _add_facet(doc: FacetListDocument, labels: Sequence[str], seen: Dict[frozenset, int],
               line_number: Optional[int]) -> None:
    if not labels:
        raise FacetParseError("Empty facet", line_number)
    if len(set(labels)) != len(labels):
        raise FacetParseError(f"Repeated vertex in facet {' '.join(labels)}", line_number)
    for label in labels:
        if not label or any(ch.isspace() for ch in label) or "#" in label:
            raise FacetParseError(f"Invalid vertex label {label!r}", line_number)
    key = frozenset(labels)
    if key in seen:
        where = f" (first seen at line {seen[key]})" if seen[key] else ""
        logger.debug("Duplicate facet %s collapsed%s", " ".join(labels), where)
        return
    seen[key] = line_number or 0
    doc.facets.append(tuple(labels))


def _parse_text(text: str) -> FacetListDocument:
    doc = FacetListDocument()
    seen: Dict[frozenset, int] = {}
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        header = HEADER_PATTERN.match(line)
        if header:
            key, value = header.group(1).lower(), header.group(2)
            if key == "name":
                doc.name = value or None
            elif key == "dimension":
                try:
                    doc.dimension_hint = int(value)
                except ValueError:
                    raise FacetParseError(f"Dimension header must be an integer, got {value!r}", line_number)
            else:
                doc.apexes = tuple(value.split())
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        _add_facet(doc, line.split(), seen, line_number)
    return doc


def _parse_json(text: str) -> FacetListDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FacetParseError(f"Invalid JSON: {e.msg}", e.lineno)
    if not isinstance(data, dict) or not isinstance(data.get("facets"), list):
        raise FacetParseError("JSON document needs a 'facets' array")

    doc = FacetListDocument(name=data.get("name"))
    dimension = data.get("dimension")
    if dimension is not None:
        if isinstance(dimension, bool) or not isinstance(dimension, int):
            raise FacetParseError(f"'dimension' must be an integer, got {dimension!r}")
        doc.dimension_hint = dimension
    apexes = data.get("apexes", [])
    if not isinstance(apexes, list):
        raise FacetParseError("'apexes' must be an array")
    doc.apexes = tuple(str(a) for a in apexes)

    seen: Dict[frozenset, int] = {}
    for position, facet in enumerate(data["facets"]):
        if not isinstance(facet, list) or any(isinstance(v, (bool, float, list, dict)) or v is None
                                              for v in facet):
            raise FacetParseError(f"Facet #{position + 1} must be an array of strings or integers")
        _add_facet(doc, [str(v) for v in facet], seen, None)
    return doc


def parse_document(text: str) -> FacetListDocument:
    """
    Parse a facet list (text or JSON) into a document with its complex.

    Duplicate facets are collapsed. A facet that is a face of another facet is
    dropped with a warning, as is a dimension header that disagrees with the data.

    Args:
        text: Document contents; JSON is detected by a leading ``{``

    Returns:
        FacetListDocument with ``simplicial_complex`` set

    Raises:
        FacetParseError: On empty input or a malformed line (with its line number)
    """
    if not text.strip():
        raise FacetParseError("Empty input")
    doc = _parse_json(text) if text.lstrip().startswith("{") else _parse_text(text)
    if not doc.facets:
        raise FacetParseError("No facets found")

    complex_ = SimplicialComplex(doc.facets, apexes=doc.apexes)
    for face in complex_.dropped_facets:
        doc.warn(f"Facet {complex_.describe(face)} is a face of another facet and was dropped")
    unknown = sorted(set(doc.apexes) - set(complex_.labels))
    if unknown:
        doc.warn(f"Apex labels not in the complex were ignored: {', '.join(unknown)}")
    if doc.dimension_hint is not None and doc.dimension_hint != complex_.dimension:
        doc.warn(f"Dimension header says {doc.dimension_hint} but the facets have dimension "
                 f"{complex_.dimension}")
    doc.simplicial_complex = complex_
    return doc


def parse_facets(text: str) -> SimplicialComplex:
    """Parse a facet list straight into a complex (see ``parse_document``)."""
    return parse_document(text).simplicial_complex


def read_complex(path: Union[str, Path]) -> FacetListDocument:
    """
    Read a facet list file.

    Raises:
        OSError: If the file cannot be read
        FacetParseError: If the contents are malformed
    """
    path = Path(path)
    doc = parse_document(path.read_text(encoding="utf-8"))
    if doc.name is None:
        doc.name = path.stem
    logger.info("Read %s: %d facets", path, len(doc.facets))
    return doc


def serialize_facets(K: SimplicialComplex, name: Optional[str] = None, fmt: str = "text") -> str:
    """
    Serialize a complex canonically (facets sorted by their labels).

    Args:
        K: Complex
        name: Optional name header
        fmt: "text" or "json"

    Returns:
        Document text ending with a newline
    """
    facets = sorted(K.labeled_facets())
    if fmt == "json":
        data = {
            "name": name,
            "dimension": K.dimension,
            "apexes": list(K.apex_labels),
            "facets": [list(f) for f in facets],
        }
        return json.dumps(data, indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"Unknown format {fmt!r}; use 'text' or 'json'")

    lines = []
    if name:
        lines.append(f"# name: {name}")
    lines.append(f"# dimension: {K.dimension}")
    if K.apexes:
        lines.append("# apexes: " + " ".join(K.apex_labels))
    lines.extend(" ".join(f) for f in facets)
    return "\n".join(lines) + "\n"


def write_complex(K: SimplicialComplex, path: Union[str, Path], name: Optional[str] = None) -> Path:
    """Write a complex; ``.json`` paths get the JSON mirror, everything else text."""
    path = Path(path)
    fmt = "json" if path.suffix.lower() == ".json" else "text"
    path.write_text(serialize_facets(K, name=name, fmt=fmt), encoding="utf-8")
    logger.info("Wrote %s (%d facets)", path, len(K.facets))
    return path


def complex_summary(K: SimplicialComplex) -> Dict:
    return {
        "dimension": K.dimension,
        "num_vertices": K.num_vertices,
        "f_vector": list(f_vector(K)),
        "euler_characteristic": euler_characteristic(K),
        "components": len(components(K)),
        "pure": is_pure(K),
        "apexes": list(K.apex_labels),
    }


def build_analysis_report(K: SimplicialComplex, name: str = "K", curves: Optional[int] = None,
                          warnings: Sequence[str] = ()) -> Dict:
    """
    Full analysis of one complex.

    Args:
        K: Non-empty complex
        name: Name recorded in the report
        curves: Number of curve factors for the certificate (defaults to dim K;
            no certificate for 0-dimensional complexes)
        warnings: Parse warnings to carry into the report

    Returns:
        Dictionary with structure:
        {
            "schema_version": str,
            "name": str,
            "summary": {...},
            "cohomology": {...},
            "quasi": {...},
            "ramified": {...},
            "certificate": {...} or None,
            "warnings": [str]
        }
    """
    curves = curves if curves is not None else (K.dimension if K.dimension >= 1 else None)
    certificate = curve_product_obstruction(K, curves, subject=name) if curves is not None else None
    return {
        "schema_version": SCHEMA_VERSION,
        "name": name,
        "summary": complex_summary(K),
        "cohomology": reduced_cohomology(K).to_dict(),
        "quasi": classify_quasi(K).to_dict(),
        "ramified": classify_ramified(K).to_dict(),
        "certificate": certificate.to_dict() if certificate is not None else None,
        "warnings": list(warnings),
    }


def render_report_json(report: Dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def _paint(text: str, code: str, color: bool) -> str:
    return f"{code}{text}{ANSI_RESET}" if color else text


def _group_text(group: Dict) -> str:
    parts = []
    if group["free_rank"] == 1:
        parts.append("Z")
    elif group["free_rank"] > 1:
        parts.append(f"Z^{group['free_rank']}")
    parts.extend(f"Z/{t}" for t in group["torsion"])
    return " + ".join(parts) or "0"


def render_cohomology_text(cohomology: Dict) -> List[str]:
    symbol = "H~" if cohomology["reduced"] else "H"
    return [f"  {symbol}^{k} = {_group_text(g)}" for k, g in cohomology["groups"].items()]


def render_quasi_text(quasi: Dict, color: bool = False) -> List[str]:
    """Verdict line plus a face table (pandas) when per-face data is present."""
    verdict_code = ANSI_GREEN if quasi["quasi_everywhere"] else ANSI_YELLOW
    lines = [f"  {_paint(quasi['off_set_description'], verdict_code, color)}"]
    faces = quasi.get("faces")
    if faces:
        table = pd.DataFrame({
            "face": ["{" + ",".join(f["face"]) + "}" for f in faces],
            "dim": [f["carrier_dim"] for f in faces],
            "link H~": [_group_text(f["link_group"]) for f in faces],
            "quasi": ["yes" if f["quasi"] else "NO" for f in faces],
        })
        lines.extend("  " + row for row in table.to_string(index=False).splitlines())
    elif quasi["non_quasi_faces"]:
        lines.append("  non-quasi faces: " + ", ".join("{" + ",".join(f) + "}" for f in quasi["non_quasi_faces"]))
    return lines


def render_ramified_text(ramified: Dict) -> List[str]:
    status = "ramified" if ramified["is_ramified"] else "not ramified"
    lines = [f"  {status} {ramified['n']}-complex"]
    histogram = ramified["coface_histogram"]
    if histogram:
        table = pd.DataFrame({
            "cofaces": [int(k) for k in histogram],
            f"{ramified['n'] - 1}-faces": list(histogram.values()),
        })
        lines.extend("  " + row for row in table.to_string(index=False).splitlines())
    if ramified["offending_cells"]:
        lines.append("  offending cells: " + ", ".join("{" + ",".join(c) + "}" for c in ramified["offending_cells"]))
    return lines


def render_certificate_text(certificate: Dict, color: bool = False) -> List[str]:
    code = ANSI_RED if certificate["verdict"] == "NotEmbeddable" else ANSI_YELLOW
    lines = [
        f"  subject: {certificate['subject']['name']} (dimension {certificate['dimension']})",
        f"  verdict: {_paint(certificate['verdict'], code, color)} "
        f"for a product of {certificate['n']} curves (b1 = {certificate['b1']})",
    ]
    lines.extend(f"  - {reason}" for reason in certificate["reasons"])
    return lines


def render_report_text(report: Dict, color: Optional[bool] = None) -> str:
    """Human-readable rendering of an analysis report."""
    color = use_color() if color is None else color
    summary = report["summary"]
    lines = [
        f"== {report['name']} ==",
        f"  dimension {summary['dimension']}, f-vector {tuple(summary['f_vector'])}, "
        f"chi = {summary['euler_characteristic']}, components = {summary['components']}, "
        f"pure = {summary['pure']}",
    ]
    for warning in report.get("warnings", ()):
        lines.append(f"  warning: {warning}")
    lines.append("Cohomology:")
    lines.extend(render_cohomology_text(report["cohomology"]))
    lines.append("Quasi-manifold classification:")
    lines.extend(render_quasi_text(report["quasi"], color))
    lines.append("Ramification:")
    lines.extend(render_ramified_text(report["ramified"]))
    if report.get("certificate"):
        lines.append("Curve-product obstruction:")
        lines.extend(render_certificate_text(report["certificate"], color))
    return "\n".join(lines) + "\n"
