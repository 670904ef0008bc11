"""
Obstruction Module

Certificates of non-embeddability into products of curves:
- Hypothesis checks (connected, pure, quasi n-manifold off a finite set)
- The rank H^1 obstruction: such a compactum lying in a product of n curves
  has rank H^1 >= n, so b1 < n rules the embedding out
- Suspension pipeline: quasi n-manifold K  ->  suspension  ->  n+1 curves
- Independent re-verification of serialized certificates

Certificates are one-sided. A verdict is either NotEmbeddable or Inconclusive;
embeddability is never claimed.
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Mapping, Optional, Tuple, Union

from .classification import QuasiReport, classify_quasi
from .cohomology import first_betti
from .complex_core import SimplicialComplex, components, is_connected, suspension
from .config import SCHEMA_VERSION
from .errors import TopologyError

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    NOT_EMBEDDABLE = "NotEmbeddable"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class HypothesisTrace:
    """Which hypotheses of the obstruction were checked and how they came out."""

    connected: bool
    pure: bool
    off_finite: bool
    quasi_everywhere: bool
    dimension_matches: bool
    quasi_report: QuasiReport
    # Automatic for finite polyhedra; recorded, never tested
    locally_connected: bool = True
    finite_rank_h1: bool = True

    @property
    def satisfied(self) -> bool:
        return self.connected and self.pure and self.off_finite and self.dimension_matches

    def to_dict(self) -> Dict:
        return {
            "connected": self.connected,
            "pure": self.pure,
            "off_finite": self.off_finite,
            "quasi_everywhere": self.quasi_everywhere,
            "dimension_matches": self.dimension_matches,
            "locally_connected": {"value": self.locally_connected, "assumed": True},
            "finite_rank_h1": {"value": self.finite_rank_h1, "assumed": True},
            "quasi_report": self.quasi_report.to_dict(include_faces=False),
        }


@dataclass(frozen=True)
class ObstructionCertificate:
    n: int
    dimension: int
    subject: str
    subject_facets: Tuple[Tuple[str, ...], ...]
    subject_apexes: Tuple[str, ...]
    trace: HypothesisTrace
    b1: int
    verdict: Verdict
    reasons: Tuple[str, ...]
    kind: str = "curve_product"
    base: Optional[Dict] = field(default=None)

    @property
    def is_certificate(self) -> bool:
        return self.verdict == Verdict.NOT_EMBEDDABLE

    def to_dict(self) -> Dict:
        """Canonically ordered form; identical inputs give identical dictionaries."""
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": self.kind,
            "verdict": self.verdict.value,
            "n": self.n,
            "dimension": self.dimension,
            "b1": self.b1,
            "subject": {
                "name": self.subject,
                "facets": [list(f) for f in self.subject_facets],
                "apexes": list(self.subject_apexes),
            },
            "hypotheses": self.trace.to_dict(),
            "reasons": list(self.reasons),
            "base": self.base,
        }


def _check_curve_count(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise TopologyError(f"Number of curve factors must be a positive integer, got {n!r}")


def curve_product_obstruction(K: SimplicialComplex, n: int, subject: str = "K") -> ObstructionCertificate:
    """
    Try to certify that |K| does not embed in a product of n curves.

    Args:
        K: Non-empty complex
        n: Number of curve factors; must equal dim K for a certificate
        subject: Name recorded on the certificate

    Returns:
        ObstructionCertificate with verdict NotEmbeddable iff K is connected,
        pure of dimension n, quasi off its vertices and b1 < n

    Raises:
        TopologyError: If K is empty or n is not a positive integer
    """
    if K.is_empty:
        raise TopologyError("Obstruction needs a non-empty complex")
    _check_curve_count(n)

    report = classify_quasi(K)
    connected = is_connected(K)
    b1 = first_betti(K)
    trace = HypothesisTrace(
        connected=connected,
        pure=report.pure,
        off_finite=report.off_finite,
        quasi_everywhere=report.quasi_everywhere,
        dimension_matches=(n == K.dimension),
        quasi_report=report,
    )

    reasons = []
    if not trace.dimension_matches:
        reasons.append(f"dimension mismatch: dim K = {K.dimension} but n = {n}; "
                       "the obstruction binds n to the manifold dimension")
    if not connected:
        reasons.append(f"not connected: {len(components(K))} components")
    if not report.pure:
        reasons.append(f"not pure: some facet has dimension < {K.dimension}")
    if not report.off_finite:
        positive = [s for s in report.non_quasi_labels if len(s) > 1]
        shown = ", ".join("{" + ",".join(s) + "}" for s in positive[:5])
        more = f" and {len(positive) - 5} more" if len(positive) > 5 else ""
        reasons.append(f"not quasi off a finite set: non-quasi faces {shown}{more}")
    if b1 >= n:
        reasons.append(f"rank H^1 = {b1} >= {n}: the rank condition holds, nothing to conclude")

    if trace.satisfied and b1 < n:
        verdict = Verdict.NOT_EMBEDDABLE
        reasons = [
            "finite connected polyhedron: locally connected with H^1 of finite rank",
            f"pure of dimension {n}",
            f"{report.off_set_description}; quasi implies weak, so weak {n}-manifold off a finite set",
            f"rank H^1 = {b1} < {n}",
            f"a compactum with these properties lying in a product of {n} curves has rank H^1 >= {n}",
        ]
    else:
        verdict = Verdict.INCONCLUSIVE

    logger.info("Obstruction for %s with n=%d: %s (b1=%d)", subject, n, verdict.value, b1)
    return ObstructionCertificate(
        n=n,
        dimension=K.dimension,
        subject=subject,
        subject_facets=tuple(sorted(K.labeled_facets())),
        subject_apexes=K.apex_labels,
        trace=trace,
        b1=b1,
        verdict=verdict,
        reasons=tuple(reasons),
    )


def suspension_obstruction(K: SimplicialComplex, subject: str = "K") -> ObstructionCertificate:
    """
    Certify that the suspension of a quasi n-manifold does not embed in a
    product of n+1 curves.

    A disconnected K is reduced to its first component K0; the suspension of
    K0 sits inside the suspension of K, so non-embeddability carries over.

    Args:
        K: Non-empty complex of dimension n >= 1
        subject: Name of K recorded on the certificate

    Returns:
        Certificate for the suspension with n + 1 curves; Inconclusive with the
        offending faces listed when K is not quasi everywhere

    Raises:
        TopologyError: If K is empty
    """
    if K.is_empty:
        raise TopologyError("Suspension obstruction needs a non-empty complex")

    preface = []
    base = K
    parts = components(K)
    if len(parts) > 1:
        base = parts[0]
        preface.append(f"disconnected ({len(parts)} components): reduced to the component "
                       f"containing {base.labels[0]}; its suspension lies in the suspension of K")

    report = classify_quasi(base)
    n = base.dimension
    base_ok = report.quasi_everywhere and n >= 1 and base.dimension == K.dimension
    if n < 1:
        preface.append(f"base has dimension {n}; the suspension pipeline needs n >= 1")
    elif base.dimension != K.dimension:
        preface.append(f"first component has dimension {base.dimension}, K has dimension {K.dimension}")
    if not report.quasi_everywhere:
        faces = ", ".join("{" + ",".join(s) + "}" for s in report.non_quasi_labels)
        preface.append(f"base is not a quasi {n}-manifold: non-quasi faces {faces}")
    else:
        preface.append(f"base is a quasi {n}-manifold at every face")

    certificate = curve_product_obstruction(suspension(base), n + 1, subject=f"suspension({subject})")
    verdict = certificate.verdict if base_ok else Verdict.INCONCLUSIVE
    if not base_ok and certificate.is_certificate:
        preface.append("the suspension passes the rank check, but the base hypothesis failed")
    base_summary = {
        "name": subject,
        "dimension": base.dimension,
        "facets": [list(f) for f in sorted(base.labeled_facets())],
        "quasi_everywhere": report.quasi_everywhere,
        "non_quasi_faces": [list(s) for s in report.non_quasi_labels],
        "components": len(parts),
    }
    logger.info("Suspension obstruction for %s: %s", subject, verdict.value)
    return replace(
        certificate,
        verdict=verdict,
        reasons=tuple(preface) + certificate.reasons,
        kind="suspension",
        base=base_summary,
    )


def reverify_certificate(certificate: Union[ObstructionCertificate, Mapping]) -> bool:
    """
    Re-check a certificate from scratch on a fresh parse of its subject.

    Args:
        certificate: ObstructionCertificate or its ``to_dict()`` form

    Returns:
        True iff the recomputed verdict, b1 and hypotheses match the certificate
        (and, for suspension certificates, the base is again quasi everywhere)
    """
    from .facet_io import parse_facets

    data = certificate.to_dict() if isinstance(certificate, ObstructionCertificate) else certificate
    try:
        claimed = Verdict(data["verdict"])
        subject = parse_facets(_facet_document(data["subject"]["facets"], data["subject"]["apexes"]))
        fresh = curve_product_obstruction(subject, int(data["n"]), subject=data["subject"]["name"])
        hypotheses = data["hypotheses"]
        matches = (
            fresh.b1 == data["b1"]
            and fresh.trace.connected == hypotheses["connected"]
            and fresh.trace.pure == hypotheses["pure"]
            and fresh.trace.off_finite == hypotheses["off_finite"]
        )
        if data.get("kind") == "suspension" and data.get("base"):
            base = parse_facets(_facet_document(data["base"]["facets"], ()))
            base_quasi = classify_quasi(base).quasi_everywhere
            matches = matches and base_quasi == data["base"]["quasi_everywhere"]
            if claimed == Verdict.NOT_EMBEDDABLE:
                matches = matches and base_quasi
    except (KeyError, TypeError, ValueError) as e:
        logger.warning("Certificate could not be re-verified: %s", e)
        return False

    if claimed == Verdict.NOT_EMBEDDABLE:
        matches = matches and fresh.verdict == Verdict.NOT_EMBEDDABLE
    logger.info("Re-verification of %s: %s", data["subject"]["name"], "passed" if matches else "failed")
    return matches


def _facet_document(facets, apexes) -> str:
    lines = []
    if apexes:
        lines.append("# apexes: " + " ".join(apexes))
    lines.extend(" ".join(str(v) for v in facet) for facet in facets)
    return "\n".join(lines) + "\n"
