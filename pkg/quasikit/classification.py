"""
Classification Module

Per-face decisions about the manifold-like conditions of a polyhedron |K|:
- Quasi n-manifold points via the carrier/link criterion
- The same verdicts via vertex links of the barycentric subdivision
- Ramified n-complexes and the ramified core
- Link ramification for ramified complexes
- Curve (graph) utilities for 1-dimensional complexes

The quasi test is constant on each open simplex (it only depends on the
carrier), so faces are classified instead of points. Weak-manifold points are
never decided: quasi implies weak, so the non-quasi faces bound the
non-weak-manifold set from above.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .cohomology import first_betti, reduced_cohomology_group
from .complex_core import (
    Simplex,
    SimplicialComplex,
    barycentric_subdivision_map,
    is_connected,
    is_pure,
    link,
    one_skeleton_graph,
)
from .errors import TopologyError
from .integer_algebra import AbelianGroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FaceClassification:
    """
    Quasi verdict for one face.

    link_group is H~^{n - dim - 1} of the face link when built by classify_quasi,
    and H~^{n-1} of the barycenter link in sd K when built by
    classify_quasi_via_subdivision. The barycenter link is the join of sd of the
    face boundary with sd of the face link, so the two groups are isomorphic.
    """

    face: Simplex
    labels: Tuple[str, ...]
    carrier_dim: int
    link_group: AbelianGroup
    quasi: bool

    def to_dict(self) -> Dict:
        return {
            "face": list(self.labels),
            "carrier_dim": self.carrier_dim,
            "link_group": self.link_group.to_dict(),
            "quasi": self.quasi,
        }


@dataclass(frozen=True)
class QuasiReport:
    """Quasi n-manifold verdicts for every face of a complex."""

    n: int
    pure: bool
    classifications: Tuple[FaceClassification, ...]
    non_quasi_faces: Tuple[Simplex, ...]
    non_quasi_labels: Tuple[Tuple[str, ...], ...]
    off_finite: bool
    apex_only: bool
    off_set_description: str

    @property
    def quasi_everywhere(self) -> bool:
        return not self.non_quasi_faces

    @property
    def nwm_upper_bound(self) -> Tuple[Tuple[str, ...], ...]:
        """Faces that may contain non-weak-manifold points (everything else is quasi, hence weak)."""
        return self.non_quasi_labels

    def verdicts(self) -> Dict[Tuple[str, ...], bool]:
        return {c.labels: c.quasi for c in self.classifications}

    def to_dict(self, include_faces: bool = True) -> Dict:
        data = {
            "n": self.n,
            "pure": self.pure,
            "quasi_everywhere": self.quasi_everywhere,
            "off_finite": self.off_finite,
            "apex_only": self.apex_only,
            "off_set_description": self.off_set_description,
            "non_quasi_faces": [list(labels) for labels in self.non_quasi_labels],
        }
        if include_faces:
            data["faces"] = [c.to_dict() for c in self.classifications]
        return data


@dataclass(frozen=True)
class RamifiedReport:
    n: int
    is_ramified: bool
    pure: bool
    offending_cells: Tuple[Simplex, ...]
    offending_labels: Tuple[Tuple[str, ...], ...]
    coface_histogram: Dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "is_ramified": self.is_ramified,
            "pure": self.pure,
            "offending_cells": [list(labels) for labels in self.offending_labels],
            "coface_histogram": {str(k): v for k, v in sorted(self.coface_histogram.items())},
        }


def classify_face(K: SimplicialComplex, s: Simplex, n: Optional[int] = None) -> FaceClassification:
    """
    Quasi test at the open simplex s.

    Args:
        K: Complex
        s: Face of K (the carrier)
        n: Manifold dimension (defaults to dim K)

    Returns:
        FaceClassification; quasi iff dim s = n or H~^{n - dim s - 1}(lk s) != 0
    """
    n = K.dimension if n is None else n
    d = len(s) - 1
    group = reduced_cohomology_group(link(K, s), n - d - 1)
    return FaceClassification(
        face=tuple(s),
        labels=K.label_simplex(s),
        carrier_dim=d,
        link_group=group,
        quasi=(d == n) or not group.is_trivial,
    )


def _describe_off_set(K: SimplicialComplex, n: int, pure: bool, bad: List[Simplex]) -> str:
    if not bad:
        text = f"quasi {n}-manifold everywhere"
    elif all(len(s) == 1 for s in bad):
        names = ", ".join(K.labels[s[0]] for s in bad)
        what = "apex vertices" if all(s[0] in K.apexes for s in bad) else "vertices"
        text = f"quasi {n}-manifold off {len(bad)} {what}: {names}"
    else:
        top = max(len(s) - 1 for s in bad)
        text = f"not quasi off a finite set: {len(bad)} non-quasi faces of dimension up to {top}"
    if not pure:
        text += "; not pure, so not n-dimensional at every point"
    return text


def _assemble_report(K: SimplicialComplex, n: int, classifications: Iterable[FaceClassification]) -> QuasiReport:
    ordered = tuple(sorted(classifications, key=lambda c: (len(c.face), c.face)))
    bad = [c.face for c in ordered if not c.quasi]
    pure = is_pure(K)
    report = QuasiReport(
        n=n,
        pure=pure,
        classifications=ordered,
        non_quasi_faces=tuple(bad),
        non_quasi_labels=tuple(K.label_simplex(s) for s in bad),
        off_finite=all(len(s) == 1 for s in bad),
        apex_only=all(len(s) == 1 and s[0] in K.apexes for s in bad),
        off_set_description=_describe_off_set(K, n, pure, bad),
    )
    logger.info("Classified %d faces: %s", len(ordered), report.off_set_description)
    return report


def classify_quasi(K: SimplicialComplex) -> QuasiReport:
    """
    Classify every face of K with the carrier/link criterion (n = dim K).

    Raises:
        TopologyError: If K is empty
    """
    if K.is_empty:
        raise TopologyError("Classification needs a non-empty complex")
    n = K.dimension
    return _assemble_report(K, n, (classify_face(K, s, n) for s in K.all_faces()))


def classify_quasi_via_subdivision(K: SimplicialComplex) -> QuasiReport:
    """
    Classify faces through vertex links of the barycentric subdivision.

    The barycenter of a face sigma is a vertex of sd K lying in the open
    simplex sigma; the face is quasi iff that vertex link has nontrivial
    H~^{n-1}. The link_group stored on each classification is that group.

    Raises:
        TopologyError: If K is empty
    """
    if K.is_empty:
        raise TopologyError("Classification needs a non-empty complex")
    n = K.dimension
    subdivided, barycenters = barycentric_subdivision_map(K)
    classifications = []
    for s in K.all_faces():
        center = (subdivided.vertex(barycenters[s]),)
        group = reduced_cohomology_group(link(subdivided, center), n - 1)
        classifications.append(FaceClassification(
            face=s,
            labels=K.label_simplex(s),
            carrier_dim=len(s) - 1,
            link_group=group,
            quasi=not group.is_trivial,
        ))
    return _assemble_report(K, n, classifications)


def quasi_off_skeleton(K: SimplicialComplex, m: int, report: Optional[QuasiReport] = None) -> bool:
    """
    Whether |K| is a quasi n-manifold off the m-skeleton |K^(m)|.

    Being "off S" also requires |K| to be n-dimensional at every point, i.e. K pure.
    """
    report = report if report is not None else classify_quasi(K)
    return report.pure and all(len(s) - 1 <= m for s in report.non_quasi_faces)


def _codim_one_counts(cells: Iterable[Simplex]) -> Counter:
    counts: Counter = Counter()
    for cell in cells:
        for i in range(len(cell)):
            counts[cell[:i] + cell[i + 1:]] += 1
    return counts


def classify_ramified(K: SimplicialComplex, n: Optional[int] = None) -> RamifiedReport:
    """
    Ramified n-complex test: pure of dimension n and every (n-1)-face lies in
    at least two n-faces. A ramified 0-complex has at least two points.

    Args:
        K: Complex
        n: Dimension to test (defaults to dim K)

    Raises:
        TopologyError: If K is empty
    """
    if K.is_empty:
        raise TopologyError("Ramification test needs a non-empty complex")
    n = K.dimension if n is None else n
    pure = is_pure(K) and K.dimension == n

    if n == 0:
        return RamifiedReport(n=0, is_ramified=pure and K.num_vertices >= 2, pure=pure,
                              offending_cells=(), offending_labels=())

    counts = _codim_one_counts(K.faces(n))
    histogram = Counter(counts.get(s, 0) for s in K.faces(n - 1))
    offending = tuple(s for s in K.faces(n - 1) if counts.get(s, 0) <= 1)
    return RamifiedReport(
        n=n,
        is_ramified=pure and not offending,
        pure=pure,
        offending_cells=offending,
        offending_labels=tuple(K.label_simplex(s) for s in offending),
        coface_histogram=dict(sorted(histogram.items())),
    )


def prune_to_ramified(cells: Iterable[Simplex]) -> Set[Simplex]:
    """
    Repeatedly delete n-cells having a free (n-1)-face until none is left.

    All cells must have the same dimension n >= 1.
    """
    remaining = set(cells)
    rounds = 0
    while remaining:
        counts = _codim_one_counts(remaining)
        doomed = {c for c in remaining
                  if any(counts[c[:i] + c[i + 1:]] == 1 for i in range(len(c)))}
        if not doomed:
            break
        remaining -= doomed
        rounds += 1
    logger.debug("Ramified pruning stopped after %d rounds with %d cells", rounds, len(remaining))
    return remaining


def ramified_core(K: SimplicialComplex) -> SimplicialComplex:
    """
    Maximal ramified n-subcomplex supported on the n-cells of K (n = dim K).

    Returns:
        Closure of the surviving n-cells; possibly the empty complex
    """
    n = K.dimension
    if n < 0:
        return SimplicialComplex()
    if n == 0:
        cells = set(K.faces(0)) if K.num_vertices >= 2 else set()
    else:
        cells = prune_to_ramified(K.faces(n))
    return SimplicialComplex((K.label_simplex(c) for c in sorted(cells)), apexes=K.apex_labels)


def check_link_ramified(K: SimplicialComplex, s: Simplex) -> Optional[bool]:
    """
    Whether lk(s, K) is a ramified (n - dim s - 1)-complex.

    Returns:
        True/False for a ramified complex K; None (not applicable) otherwise

    Raises:
        TopologyError: If s is not a face of K or dim s = n
    """
    lk = link(K, s)
    n = K.dimension
    d = len(s) - 1
    if d >= n:
        raise TopologyError(f"Link of the top-dimensional face {K.describe(s)} is empty")
    if not classify_ramified(K).is_ramified:
        logger.info("Link ramification check skipped: complex is not ramified")
        return None
    return classify_ramified(lk, n - d - 1).is_ramified


def classify_curve(P: SimplicialComplex) -> Dict:
    """
    Describe a connected complex of dimension <= 1 as a graph.

    Args:
        P: Connected, non-empty complex with dim P <= 1

    Returns:
        Dictionary with structure:
        {
            "endpoints": int,      # vertices of degree 1
            "is_arc": bool,        # tree with two endpoints and max degree <= 2
            "is_circle": bool,     # every vertex of degree 2 and b1 = 1
            "is_graph": True,
            "first_betti": int,
            "max_degree": int
        }

    Raises:
        TopologyError: If P is empty, disconnected or of dimension > 1
    """
    if P.is_empty:
        raise TopologyError("Curve classification needs a non-empty complex")
    if P.dimension > 1:
        raise TopologyError(f"Not a graph: dimension {P.dimension} > 1")
    if not is_connected(P):
        raise TopologyError("Curve classification needs a connected complex")

    graph = one_skeleton_graph(P)
    degrees = [deg for _, deg in graph.degree()]
    b1 = first_betti(P)
    endpoints = sum(1 for deg in degrees if deg == 1)
    max_degree = max(degrees, default=0)
    return {
        "endpoints": endpoints,
        "is_arc": b1 == 0 and endpoints == 2 and max_degree <= 2,
        "is_circle": b1 == 1 and all(deg == 2 for deg in degrees),
        "is_graph": True,
        "first_betti": b1,
        "max_degree": max_degree,
    }
