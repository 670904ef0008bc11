"""
Generators Module

Named complexes for experiments and tests:
- Sphere boundaries, solid simplices, cross-polytope boundaries
- Cycles, paths, star graphs (curve factors)
- Books, wedges of spheres
- Minimal 7-vertex torus and 6-vertex projective plane
- Staircase tori (products of 3-cycles)
- Seeded random pure complexes and their ramified cores

Names are resolved by ``generate``, which accepts ``name:arg:arg`` as well as
``name(arg,arg)``.
"""

import itertools
import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .classification import prune_to_ramified
from .complex_core import SimplicialComplex, staircase_product
from .config import (
    RANDOM_ATTEMPTS_PER_CORE,
    RANDOM_DIMENSION,
    RANDOM_PROBABILITY,
    RANDOM_VERTICES,
)
from .errors import TopologyError

logger = logging.getLogger(__name__)

TORUS7_FACETS = tuple(
    facet
    for i in range(7)
    for facet in (
        tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))),
        tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))),
    )
)

RP2_6_FACETS = (
    (0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 4), (0, 3, 5),
    (1, 2, 3), (1, 2, 5), (1, 3, 4), (2, 4, 5), (3, 4, 5),
)

# Named instances used by the corpus-wide checks
NAMED_CORPUS = (
    "sphere_boundary:1",
    "sphere_boundary:2",
    "sphere_boundary:3",
    "torus7",
    "rp2_6",
    "wedge_spheres:2:2",
    "wedge_spheres:1:3",
    "cycle:5",
    "book:3",
    "simplex:2",
    "cross_polytope:2",
    "torus:2",
    "star_graph:3",
)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise TopologyError(message)


def sphere_boundary(n: int) -> SimplicialComplex:
    """Boundary of the (n+1)-simplex, a triangulated n-sphere on n+2 vertices."""
    _require(n >= 0, f"sphere_boundary needs n >= 0, got {n}")
    return SimplicialComplex(itertools.combinations(range(n + 2), n + 1))


def simplex(n: int) -> SimplicialComplex:
    """The solid n-simplex."""
    _require(n >= 0, f"simplex needs n >= 0, got {n}")
    return SimplicialComplex([range(n + 1)])


def cycle(m: int) -> SimplicialComplex:
    _require(m >= 3, f"cycle needs at least 3 vertices, got {m}")
    return SimplicialComplex((i, (i + 1) % m) for i in range(m))


def path(m: int) -> SimplicialComplex:
    """Arc with m vertices and m - 1 edges."""
    _require(m >= 2, f"path needs at least 2 vertices, got {m}")
    return SimplicialComplex((i, i + 1) for i in range(m - 1))


def star_graph(k: int) -> SimplicialComplex:
    """k edges at the hub vertex 0 (k = 3 is the tripod)."""
    _require(k >= 1, f"star_graph needs at least 1 edge, got {k}")
    return SimplicialComplex((0, i) for i in range(1, k + 1))


def book(pages: int) -> SimplicialComplex:
    """``pages`` triangles sharing the spine edge {0,1}."""
    _require(pages >= 1, f"book needs at least 1 page, got {pages}")
    return SimplicialComplex((0, 1, k + 2) for k in range(pages))


def wedge_spheres(n: int, k: int) -> SimplicialComplex:
    """
    k copies of the boundary of the (n+1)-simplex glued at vertex 0.

    Copy j uses vertex 0 plus the vertices 1 + j*(n+1) ... (j+1)*(n+1).
    """
    _require(n >= 1, f"wedge_spheres needs n >= 1, got {n}")
    _require(k >= 1, f"wedge_spheres needs k >= 1, got {k}")
    facets = []
    for j in range(k):
        vertices = [0] + [1 + j * (n + 1) + i for i in range(n + 1)]
        facets.extend(itertools.combinations(vertices, n + 1))
    return SimplicialComplex(facets)


def cross_polytope(n: int) -> SimplicialComplex:
    """
    Boundary of the (n+1)-dimensional cross-polytope, an n-sphere on 2(n+1) vertices.

    Antipodal vertices are the pairs (2i, 2i+1); n = 1 gives the 4-cycle and
    n = 2 the octahedron.
    """
    _require(n >= 0, f"cross_polytope needs n >= 0, got {n}")
    pairs = [(2 * i, 2 * i + 1) for i in range(n + 1)]
    return SimplicialComplex(itertools.product(*pairs))


def torus7() -> SimplicialComplex:
    """Minimal torus: 7 vertices, 21 edges, 14 triangles."""
    return SimplicialComplex(TORUS7_FACETS)


def rp2_6() -> SimplicialComplex:
    """Minimal real projective plane: 6 vertices, 15 edges, 10 triangles."""
    return SimplicialComplex(RP2_6_FACETS)


def torus(m: int) -> SimplicialComplex:
    """Staircase product of m 3-cycles, an m-torus lying in a product of m circles."""
    _require(m >= 1, f"torus needs m >= 1, got {m}")
    result = cycle(3)
    for _ in range(m - 1):
        result = staircase_product(result, cycle(3))
    return result


GENERATORS: Dict[str, Tuple[Callable[..., SimplicialComplex], int]] = {
    "sphere_boundary": (sphere_boundary, 1),
    "simplex": (simplex, 1),
    "cycle": (cycle, 1),
    "path": (path, 1),
    "star_graph": (star_graph, 1),
    "book": (book, 1),
    "wedge_spheres": (wedge_spheres, 2),
    "cross_polytope": (cross_polytope, 1),
    "torus7": (torus7, 0),
    "rp2_6": (rp2_6, 0),
    "torus": (torus, 1),
}


def parse_generator_name(name: str) -> Tuple[str, List[int]]:
    """
    Split a generator name into its stem and integer arguments.

    Examples:
        "sphere_boundary:3"     -> ("sphere_boundary", [3])
        "wedge_spheres(2,2)"    -> ("wedge_spheres", [2, 2])
        "torus7"                -> ("torus7", [])
    """
    text = name.strip()
    if "(" in text:
        stem, _, rest = text.partition("(")
        if not rest.endswith(")"):
            raise TopologyError(f"Unbalanced parentheses in generator name {name!r}")
        raw = [a for a in rest[:-1].split(",") if a.strip()]
    else:
        stem, *raw = text.split(":")
    try:
        args = [int(a) for a in raw]
    except ValueError:
        raise TopologyError(f"Generator arguments must be integers: {name!r}")
    return stem.strip(), args


def generate(name: str) -> SimplicialComplex:
    """
    Build a named complex.

    Args:
        name: Generator name with arguments, e.g. ``sphere_boundary:3``,
            ``wedge_spheres(2,2)``, ``torus7``, ``book:3``

    Returns:
        The generated complex

    Raises:
        TopologyError: If the name is unknown or the arguments are wrong
    """
    stem, args = parse_generator_name(name)
    if stem not in GENERATORS:
        raise TopologyError(
            f"Unknown generator {stem!r}; available: {', '.join(sorted(GENERATORS))}"
        )
    builder, arity = GENERATORS[stem]
    if len(args) != arity:
        raise TopologyError(f"Generator {stem!r} takes {arity} argument(s), got {len(args)}")
    logger.debug("Generating %s%s", stem, tuple(args))
    return builder(*args)


def corpus(names: Sequence[str] = NAMED_CORPUS) -> Dict[str, SimplicialComplex]:
    return {name: generate(name) for name in names}


def _random_cells(rng: np.random.Generator, vertices: int, dimension: int,
                  probability: float) -> List[Tuple[int, ...]]:
    candidates = list(itertools.combinations(range(vertices), dimension + 1))
    chosen = rng.random(len(candidates)) < probability
    return [cell for cell, keep in zip(candidates, chosen) if keep]


def random_pure_complex(seed: int, vertices: int = RANDOM_VERTICES,
                        dimension: int = RANDOM_DIMENSION,
                        probability: float = RANDOM_PROBABILITY) -> SimplicialComplex:
    """
    Pure complex whose facets are the dimension-simplices on ``vertices``
    vertices, each kept independently with the given probability.

    The result may be empty.
    """
    _require(dimension >= 0 and vertices >= dimension + 1,
             f"Cannot place {dimension}-simplices on {vertices} vertices")
    rng = np.random.default_rng(seed)
    return SimplicialComplex(_random_cells(rng, vertices, dimension, probability))


def random_ramified_cores(count: int, seed: int = 0, vertices: int = RANDOM_VERTICES,
                          dimension: int = RANDOM_DIMENSION,
                          probability: float = RANDOM_PROBABILITY,
                          max_attempts: Optional[int] = None) -> List[Tuple[int, SimplicialComplex]]:
    """
    First ``count`` non-empty ramified cores of random pure complexes.

    Seeds seed, seed+1, ... are tried in order and seeds whose core is empty
    are skipped, so the corpus is reproducible.

    Args:
        count: Number of cores wanted
        seed: First seed
        vertices: Vertex pool size
        dimension: Dimension of the sampled simplices (>= 1)
        probability: Inclusion probability per simplex
        max_attempts: Seeds to try before giving up
            (defaults to RANDOM_ATTEMPTS_PER_CORE * count)

    Returns:
        List of (seed, ramified core) pairs

    Raises:
        TopologyError: If fewer than ``count`` cores turn up within max_attempts seeds
    """
    _require(dimension >= 1, f"Random ramified cores need dimension >= 1, got {dimension}")
    max_attempts = max_attempts if max_attempts is not None else RANDOM_ATTEMPTS_PER_CORE * count
    cores: List[Tuple[int, SimplicialComplex]] = []
    current = seed
    while len(cores) < count and current - seed < max_attempts:
        rng = np.random.default_rng(current)
        survivors = prune_to_ramified(_random_cells(rng, vertices, dimension, probability))
        if survivors:
            cores.append((current, SimplicialComplex(sorted(survivors))))
        current += 1
    if len(cores) < count:
        raise TopologyError(
            f"Found only {len(cores)} of {count} non-empty ramified cores in {max_attempts} seeds"
        )
    logger.info("Collected %d ramified cores from seeds %d..%d", count, seed, current - 1)
    return cores
