"""
Simplicial Complex Core Module

This module implements the combinatorial layer of quasikit:
- Simplices and finite abstract simplicial complexes (facet-set representation)
- Faces, links, closed stars and skeleta
- Barycentric subdivision, suspension, cone, join and staircase products
- Canonical forms for isomorphism testing

Vertex labels are opaque strings. Each complex interns its labels in
lexicographic order, so vertex ``i`` is the i-th smallest label and every
simplex is a strictly increasing tuple of those integers.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .config import APEX_STEMS, CANONICAL_VERTEX_LIMIT
from .errors import TopologyError

logger = logging.getLogger(__name__)

Simplex = Tuple[int, ...]


def make_simplex(vertices: Iterable[int]) -> Simplex:
    """
    Normalize vertex indices into a simplex.

    Args:
        vertices: Vertex indices in any order

    Returns:
        Strictly increasing tuple of vertex indices

    Raises:
        TopologyError: If the simplex is empty, repeats a vertex or uses a negative index
    """
    simplex = tuple(sorted(int(v) for v in vertices))
    if not simplex:
        raise TopologyError("A simplex needs at least one vertex")
    if simplex[0] < 0:
        raise TopologyError(f"Negative vertex index in {simplex}")
    if len(set(simplex)) != len(simplex):
        raise TopologyError(f"Repeated vertex in simplex {simplex}")
    return simplex


def simplex_dimension(simplex: Sequence[int]) -> int:
    return len(simplex) - 1


def simplex_boundary(simplex: Simplex) -> List[Tuple[int, Simplex]]:
    """Codimension-one faces of a simplex with their orientation signs (-1)^i."""
    if len(simplex) < 2:
        return []
    return [((-1) ** i, simplex[:i] + simplex[i + 1:]) for i in range(len(simplex))]


def _check_label(label: str) -> str:
    if not label or any(ch.isspace() for ch in label) or "#" in label:
        raise TopologyError(f"Invalid vertex label {label!r}: labels must be non-empty, "
                            "without whitespace or '#'")
    return label


def maximal_simplices(simplices: Iterable[Simplex]) -> Tuple[List[Simplex], List[Simplex]]:
    """
    Split a collection of simplices into the maximal ones and the rest.

    Args:
        simplices: Simplices, duplicates allowed

    Returns:
        Tuple of (maximal simplices, simplices that are faces of another one)
    """
    unique = sorted(set(simplices), key=lambda s: (-len(s), s))
    kept: List[Simplex] = []
    dropped: List[Simplex] = []
    # size -> vertex -> kept simplices of that size containing the vertex
    larger: Dict[int, Dict[int, List[FrozenSet[int]]]] = {}

    for simplex in unique:
        as_set = frozenset(simplex)
        covered = False
        for size, by_vertex in larger.items():
            if size <= len(simplex):
                continue
            if any(as_set <= other for other in by_vertex.get(simplex[0], ())):
                covered = True
                break
        if covered:
            dropped.append(simplex)
            continue
        kept.append(simplex)
        by_vertex = larger.setdefault(len(simplex), {})
        for v in simplex:
            by_vertex.setdefault(v, []).append(as_set)

    kept.sort(key=lambda s: (len(s), s))
    dropped.sort(key=lambda s: (len(s), s))
    return kept, dropped


class SimplicialComplex:
    """
    Finite abstract simplicial complex stored by its facets.

    The full face lattice is materialized eagerly at construction, so instances
    are immutable and safe to share between threads.
    """

    def __init__(self, facets: Iterable[Iterable] = (), apexes: Iterable = ()):
        """
        Build a complex from facets given as vertex labels.

        Args:
            facets: Iterable of facets; each facet is an iterable of labels
                (strings, or integers that are converted with ``str``)
            apexes: Labels flagged as suspension apexes (unknown labels are ignored)

        Raises:
            TopologyError: If a facet is empty, repeats a label or uses an invalid label
        """
        labeled: List[Tuple[str, ...]] = []
        for facet in facets:
            labels = tuple(_check_label(str(v)) for v in facet)
            if not labels:
                raise TopologyError("Empty facet")
            if len(set(labels)) != len(labels):
                raise TopologyError(f"Repeated vertex in facet {list(labels)}")
            labeled.append(labels)

        self.labels: Tuple[str, ...] = tuple(sorted({v for f in labeled for v in f}))
        self._index: Dict[str, int] = {label: i for i, label in enumerate(self.labels)}

        simplices = [tuple(sorted(self._index[v] for v in f)) for f in labeled]
        kept, dropped = maximal_simplices(simplices)
        self.facets: Tuple[Simplex, ...] = tuple(kept)
        self.dropped_facets: Tuple[Simplex, ...] = tuple(dropped)
        self.apexes: FrozenSet[int] = frozenset(
            self._index[str(a)] for a in apexes if str(a) in self._index
        )

        faces_by_dim: Dict[int, Set[Simplex]] = {}
        for facet in self.facets:
            for size in range(1, len(facet) + 1):
                faces_by_dim.setdefault(size - 1, set()).update(
                    itertools.combinations(facet, size)
                )
        self._faces: Dict[int, Tuple[Simplex, ...]] = {
            d: tuple(sorted(faces)) for d, faces in faces_by_dim.items()
        }
        self._face_index: Dict[int, Dict[Simplex, int]] = {
            d: {s: i for i, s in enumerate(faces)} for d, faces in self._faces.items()
        }
        self._vertex_facets: Dict[int, FrozenSet[int]] = {}
        by_vertex: Dict[int, Set[int]] = {}
        for i, facet in enumerate(self.facets):
            for v in facet:
                by_vertex.setdefault(v, set()).add(i)
        self._vertex_facets = {v: frozenset(ids) for v, ids in by_vertex.items()}

    @property
    def dimension(self) -> int:
        """Maximum facet dimension; -1 for the empty complex."""
        return max((len(f) - 1 for f in self.facets), default=-1)

    @property
    def is_empty(self) -> bool:
        return not self.facets

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    @property
    def apex_labels(self) -> Tuple[str, ...]:
        return tuple(self.labels[v] for v in sorted(self.apexes))

    def faces(self, d: int) -> Tuple[Simplex, ...]:
        return self._faces.get(d, ())

    def all_faces(self) -> List[Simplex]:
        """Every face, ordered by dimension then lexicographically."""
        return [s for d in sorted(self._faces) for s in self._faces[d]]

    def face_index(self, simplex: Simplex) -> int:
        """Position of a face within ``faces(dim)``."""
        try:
            return self._face_index[len(simplex) - 1][simplex]
        except KeyError:
            raise TopologyError(f"Simplex {self.describe(simplex)} is not a face of the complex")

    def __contains__(self, simplex) -> bool:
        return tuple(simplex) in self._face_index.get(len(simplex) - 1, {})

    def vertex(self, label) -> int:
        """Vertex index of a label (integers are converted with ``str``)."""
        try:
            return self._index[str(label)]
        except KeyError:
            raise TopologyError(f"Vertex {label!r} is not in the complex")

    def simplex(self, *labels) -> Simplex:
        """Simplex spanned by the given labels, which must be a face of the complex."""
        simplex = make_simplex(self.vertex(label) for label in labels)
        if simplex not in self:
            raise TopologyError(f"Simplex {list(map(str, labels))} is not a face of the complex")
        return simplex

    def label_simplex(self, simplex: Sequence[int]) -> Tuple[str, ...]:
        return tuple(self.labels[v] for v in simplex)

    def describe(self, simplex: Sequence[int]) -> str:
        """Readable form of a simplex, e.g. ``{a,b,c}``."""
        try:
            return "{" + ",".join(self.label_simplex(simplex)) + "}"
        except (IndexError, TypeError):
            return str(tuple(simplex))

    def labeled_facets(self) -> Tuple[Tuple[str, ...], ...]:
        return tuple(self.label_simplex(f) for f in self.facets)

    def facets_containing(self, simplex: Simplex) -> Tuple[Simplex, ...]:
        ids: Optional[FrozenSet[int]] = None
        for v in simplex:
            found = self._vertex_facets.get(v, frozenset())
            ids = found if ids is None else ids & found
        return tuple(self.facets[i] for i in sorted(ids or ()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return set(self.labeled_facets()) == set(other.labeled_facets())

    def __hash__(self) -> int:
        return hash(frozenset(self.labeled_facets()))

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dimension}, f_vector={f_vector(self)})"


def _require_face(K: SimplicialComplex, s: Sequence[int]) -> Simplex:
    simplex = tuple(s)
    if simplex not in K:
        raise TopologyError(f"Simplex {K.describe(simplex)} is not a face of the complex")
    return simplex


def _require_nonempty(K: SimplicialComplex, operation: str) -> None:
    if K.is_empty:
        raise TopologyError(f"{operation} needs a non-empty complex")


def faces(K: SimplicialComplex, d: int) -> List[Simplex]:
    return list(K.faces(d))


def f_vector(K: SimplicialComplex) -> Tuple[int, ...]:
    return tuple(len(K.faces(d)) for d in range(K.dimension + 1))


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** d * count for d, count in enumerate(f_vector(K)))


def is_pure(K: SimplicialComplex) -> bool:
    n = K.dimension
    return all(len(f) - 1 == n for f in K.facets)


def link(K: SimplicialComplex, s: Sequence[int]) -> SimplicialComplex:
    """
    Link of a face: all faces disjoint from s whose union with s lies in K.

    Args:
        K: Complex
        s: Face of K

    Returns:
        lk(s, K), possibly empty (when s is a facet)

    Raises:
        TopologyError: If s is not a face of K
    """
    simplex = _require_face(K, s)
    members = set(simplex)
    facets = [
        K.label_simplex(tuple(v for v in f if v not in members))
        for f in K.facets_containing(simplex)
        if len(f) > len(simplex)
    ]
    return SimplicialComplex(facets, apexes=K.apex_labels)


def star(K: SimplicialComplex, s: Sequence[int]) -> SimplicialComplex:
    """Closed star: every facet containing s, with all of its faces."""
    simplex = _require_face(K, s)
    facets = [K.label_simplex(f) for f in K.facets_containing(simplex)]
    return SimplicialComplex(facets, apexes=K.apex_labels)


def skeleton(K: SimplicialComplex, m: int) -> SimplicialComplex:
    """All faces of dimension at most m; the empty complex when m < 0."""
    if m < 0:
        return SimplicialComplex()
    generators = list(K.faces(m)) + [f for f in K.facets if len(f) - 1 < m]
    return SimplicialComplex((K.label_simplex(s) for s in generators), apexes=K.apex_labels)


def subcomplex_faces(K: SimplicialComplex, L: SimplicialComplex) -> Set[Simplex]:
    """
    Faces of L expressed as simplices of K.

    Raises:
        TopologyError: If some face of L is not a face of K
    """
    result: Set[Simplex] = set()
    for s in L.all_faces():
        labels = L.label_simplex(s)
        try:
            simplex = make_simplex(K.vertex(v) for v in labels)
        except TopologyError:
            simplex = None
        if simplex is None or simplex not in K:
            raise TopologyError(
                f"Not a subcomplex: face {{{','.join(labels)}}} is missing from the complex"
            )
        result.add(simplex)
    return result


def one_skeleton_graph(K: SimplicialComplex) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(v for (v,) in K.faces(0))
    graph.add_edges_from(K.faces(1))
    return graph


def components(K: SimplicialComplex) -> List[SimplicialComplex]:
    """Connected components, ordered by their smallest vertex."""
    graph = one_skeleton_graph(K)
    parts = sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0])
    result = []
    for part in parts:
        members = set(part)
        facets = [K.label_simplex(f) for f in K.facets if f[0] in members]
        result.append(SimplicialComplex(facets, apexes=K.apex_labels))
    return result


def is_connected(K: SimplicialComplex) -> bool:
    if K.is_empty:
        return False
    return nx.is_connected(one_skeleton_graph(K))


# Characters with structure in derived labels; escaped inside components
DERIVED_LABEL_SPECIALS = "\\,()|"


def escape_component(label: str) -> str:
    """Backslash-escape structural characters so derived labels stay injective."""
    return "".join("\\" + ch if ch in DERIVED_LABEL_SPECIALS else ch for ch in label)


def barycenter_label(labels: Sequence[str]) -> str:
    return "(" + ",".join(escape_component(label) for label in labels) + ")"


def barycentric_subdivision_map(K: SimplicialComplex) -> Tuple[SimplicialComplex, Dict[Simplex, str]]:
    """
    Barycentric subdivision together with the barycenter label of every face.

    Args:
        K: Non-empty complex

    Returns:
        Tuple of (sd K, mapping face of K -> label of its barycenter in sd K)

    Raises:
        TopologyError: If K is empty
    """
    _require_nonempty(K, "Barycentric subdivision")
    barycenters = {s: barycenter_label(K.label_simplex(s)) for s in K.all_faces()}

    # Maximal chains of faces <-> orderings of the vertices of a facet
    chains = []
    for facet in K.facets:
        for order in itertools.permutations(facet):
            chains.append([barycenters[tuple(sorted(order[:k]))] for k in range(1, len(order) + 1)])

    apexes = [barycenters[(v,)] for v in K.apexes]
    return SimplicialComplex(chains, apexes=apexes), barycenters


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """Vertices are the faces of K; simplices are chains under strict inclusion."""
    return barycentric_subdivision_map(K)[0]


def fresh_apex_labels(K: SimplicialComplex) -> Tuple[str, str]:
    """Apex labels not yet used by K: ``apex+``/``apex-``, then ``apex+2``/``apex-2``, ..."""
    taken = set(K.labels)
    suffix = 1
    while True:
        tag = "" if suffix == 1 else str(suffix)
        candidates = tuple(stem + tag for stem in APEX_STEMS)
        if not taken.intersection(candidates):
            return candidates
        suffix += 1


def suspension(K: SimplicialComplex) -> SimplicialComplex:
    """
    Suspension: the join of K with two fresh apex vertices.

    The apexes are flagged on the result (together with any apexes K already
    carried) so that classification can report "off the vertices".

    Raises:
        TopologyError: If K is empty
    """
    _require_nonempty(K, "Suspension")
    north, south = fresh_apex_labels(K)
    facets = []
    for f in K.labeled_facets():
        facets.append(f + (north,))
        facets.append(f + (south,))
    return SimplicialComplex(facets, apexes=K.apex_labels + (north, south))


def cone(K: SimplicialComplex, apex: Optional[str] = None) -> SimplicialComplex:
    """Cone over K; the cone over the empty complex is a single point."""
    apex = apex if apex is not None else fresh_apex_labels(K)[0]
    if apex in K.labels:
        raise TopologyError(f"Cone apex {apex!r} is already a vertex")
    if K.is_empty:
        return SimplicialComplex([(apex,)])
    return SimplicialComplex((f + (apex,) for f in K.labeled_facets()), apexes=K.apex_labels)


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """
    Simplicial join of two complexes on disjoint label sets.

    Raises:
        TopologyError: If the complexes share a vertex label
    """
    shared = set(K.labels) & set(L.labels)
    if shared:
        raise TopologyError(f"Join needs disjoint vertex labels; shared: {sorted(shared)}")
    if K.is_empty:
        return L
    if L.is_empty:
        return K
    facets = [f + g for f in K.labeled_facets() for g in L.labeled_facets()]
    return SimplicialComplex(facets, apexes=K.apex_labels + L.apex_labels)


def product_label(a: str, b: str) -> str:
    return f"{escape_component(a)}|{escape_component(b)}"


def staircase_product(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """
    Staircase triangulation of |K| x |L|.

    Each pair of facets (sigma, tau) contributes every monotone lattice path in
    the grid sigma x tau, using the label order of each factor.

    Raises:
        TopologyError: If either factor is empty
    """
    _require_nonempty(K, "Staircase product")
    _require_nonempty(L, "Staircase product")
    facets = []
    for sigma in K.labeled_facets():
        for tau in L.labeled_facets():
            p, q = len(sigma) - 1, len(tau) - 1
            for right_steps in itertools.combinations(range(p + q), p):
                i = j = 0
                path = [product_label(sigma[0], tau[0])]
                for step in range(p + q):
                    if step in right_steps:
                        i += 1
                    else:
                        j += 1
                    path.append(product_label(sigma[i], tau[j]))
                facets.append(path)
    return SimplicialComplex(facets)


@dataclass(frozen=True)
class ComplexIsoClass:
    """Canonical form: facets relabeled by a canonical vertex ordering."""

    num_vertices: int
    facets: Tuple[Tuple[int, ...], ...]


def _refine(colors: List[int], incident: List[List[Simplex]]) -> List[int]:
    # Colour refinement on the vertex-facet incidence structure. Colours are
    # ranks of sorted signatures, so they never depend on the input labelling.
    while True:
        signatures = []
        for v, facets in enumerate(incident):
            around = sorted(tuple(sorted(colors[u] for u in f if u != v)) for f in facets)
            signatures.append((colors[v], tuple(around)))
        ranking = {sig: r for r, sig in enumerate(sorted(set(signatures)))}
        refined = [ranking[sig] for sig in signatures]
        if len(ranking) == len(set(colors)):
            return refined
        colors = refined


def canonical_form(K: SimplicialComplex) -> ComplexIsoClass:
    """
    Canonical form by colour refinement plus individualization backtracking.

    The search explores every individualization, so equal forms mean isomorphic
    complexes at any size; it is fast for the corpus sizes (up to 12 vertices).
    """
    n = K.num_vertices
    if n > CANONICAL_VERTEX_LIMIT:
        logger.warning("Canonical form search on %d vertices may be slow", n)
    incident: List[List[Simplex]] = [[] for _ in range(n)]
    for f in K.facets:
        for v in f:
            incident[v].append(f)

    best: Optional[Tuple[Tuple[int, ...], ...]] = None

    def search(colors: List[int]) -> None:
        nonlocal best
        cells: Dict[int, List[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = min((c for c, members in cells.items() if len(members) > 1), default=None)
        if target is None:
            form = tuple(sorted(tuple(sorted(colors[v] for v in f)) for f in K.facets))
            if best is None or form < best:
                best = form
            return
        for chosen in cells[target]:
            split = [2 * c for c in colors]
            for u in cells[target]:
                if u != chosen:
                    split[u] += 1
            search(_refine(split, incident))

    search(_refine([0] * n, incident))
    return ComplexIsoClass(num_vertices=n, facets=best or ())


def is_isomorphic(K: SimplicialComplex, L: SimplicialComplex) -> bool:
    if f_vector(K) != f_vector(L):
        return False
    return canonical_form(K) == canonical_form(L)
