"""
Cohomology Module

Integer simplicial cohomology of complexes and pairs:
- Reduced cohomology H~^k(K) (augmented cochain complex)
- Relative cohomology H^k(K, L) (unreduced)
- Local cohomology H^n(K, C_v) at a vertex
- First Betti number

Simplices are oriented by their sorted vertex order and the i-th face of a
simplex carries the sign (-1)^i. On compact polyhedra Cech and simplicial
cohomology agree, so everything here is computed simplicially.

For the cochain complex C^{k-1} -> C^k -> C^{k+1} with coboundaries
delta_{k-1}, delta_k:

    H^k = ker(delta_k) / im(delta_{k-1})
        = Z^(c_k - rank delta_k - rank delta_{k-1}) + torsion(coker delta_{k-1})

because C^k / ker(delta_k) embeds in the free group C^{k+1}. The torsion is
read off the elementary divisors of delta_{k-1}.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from .complex_core import Simplex, SimplicialComplex, simplex_boundary, subcomplex_faces
from .errors import TopologyError
from .integer_algebra import AbelianGroup, IntegerMatrix, sparse_elementary_divisors, zero_matrix

logger = logging.getLogger(__name__)

FaceFilter = Optional[Callable[[Simplex], bool]]

EMPTY_SIMPLEX: Simplex = ()


def _cochain_basis(K: SimplicialComplex, k: int, reduced: bool, keep: FaceFilter) -> List[Simplex]:
    if k == -1:
        return [EMPTY_SIMPLEX] if reduced else []
    if k < -1:
        return []
    return [s for s in K.faces(k) if keep is None or keep(s)]


def _boundary_rows(K: SimplicialComplex, k: int, reduced: bool, keep: FaceFilter) -> List[Dict[int, int]]:
    """Rows of delta_{k-1}: one {(k-1)-face index: sign} dict per kept k-face."""
    lower = {s: i for i, s in enumerate(_cochain_basis(K, k - 1, reduced, keep))}
    rows = []
    for s in _cochain_basis(K, k, reduced, keep):
        if k == 0:
            row = {0: 1} if reduced else {}
        else:
            row = {lower[face]: sign for sign, face in simplex_boundary(s) if face in lower}
        rows.append(row)
    return rows


def _cohomology_group(K: SimplicialComplex, k: int, reduced: bool, keep: FaceFilter = None) -> AbelianGroup:
    generators = len(_cochain_basis(K, k, reduced, keep))
    if generators == 0:
        return AbelianGroup()
    rank_up = len(sparse_elementary_divisors(_boundary_rows(K, k + 1, reduced, keep)))
    divisors = sparse_elementary_divisors(_boundary_rows(K, k, reduced, keep))
    return AbelianGroup(
        free_rank=generators - rank_up - len(divisors),
        torsion=tuple(sorted(d for d in divisors if d > 1)),
    )


@dataclass(frozen=True)
class ChainComplexData:
    """Ordered face bases and boundary matrices (rows: (k-1)-faces, columns: k-faces)."""

    bases: Dict[int, Tuple[Simplex, ...]]
    boundaries: Dict[int, IntegerMatrix]
    reduced: bool

    def boundary(self, k: int) -> IntegerMatrix:
        if k in self.boundaries:
            return self.boundaries[k]
        return zero_matrix(len(self.bases.get(k - 1, ())), len(self.bases.get(k, ())))

    def is_chain_complex(self) -> bool:
        """Whether every composite boundary is exactly zero."""
        for k in sorted(self.boundaries):
            lower, upper = self.boundary(k), self.boundary(k + 1)
            if lower.shape[1] == 0 or upper.shape[1] == 0 or lower.shape[0] == 0:
                continue
            product = lower.dot(upper)
            if any(x != 0 for x in product.flat):
                return False
        return True


def chain_complex(K: SimplicialComplex, reduced: bool = True) -> ChainComplexData:
    """
    Dense chain complex of K.

    Args:
        K: Complex
        reduced: Include the augmentation to the empty simplex in degree -1

    Returns:
        ChainComplexData with boundary matrices for every degree 0..dim K
    """
    low = -1 if reduced else 0
    bases = {k: tuple(_cochain_basis(K, k, reduced, None)) for k in range(low, K.dimension + 1)}
    boundaries = {}
    for k in range(max(low + 1, 0), K.dimension + 1):
        matrix = zero_matrix(len(bases.get(k - 1, ())), len(bases[k]))
        for col, row in enumerate(_boundary_rows(K, k, reduced, None)):
            for i, sign in row.items():
                matrix[i, col] = sign
        boundaries[k] = matrix
    return ChainComplexData(bases=bases, boundaries=boundaries, reduced=reduced)


@dataclass(frozen=True)
class CohomologyProfile:
    """Cohomology groups by degree; degrees that are not stored are trivial."""

    groups: Dict[int, AbelianGroup] = field(default_factory=dict)
    reduced: bool = True

    def group(self, k: int) -> AbelianGroup:
        return self.groups.get(k, AbelianGroup())

    __getitem__ = group

    def free_ranks(self) -> Dict[int, int]:
        return {k: g.free_rank for k, g in sorted(self.groups.items())}

    def to_dict(self) -> Dict:
        return {
            "reduced": self.reduced,
            "groups": {str(k): self.groups[k].to_dict() for k in sorted(self.groups)},
        }

    def describe(self) -> str:
        symbol = "H~" if self.reduced else "H"
        return ", ".join(f"{symbol}^{k} = {self.groups[k]}" for k in sorted(self.groups))


def reduced_cohomology_group(K: SimplicialComplex, k: int) -> AbelianGroup:
    """
    Single reduced cohomology group; defined for the empty complex as well.

    The empty complex has H~^{-1} = Z and nothing else, which is what makes a
    top-dimensional face pass the link test of the quasi-manifold criterion.
    """
    return _cohomology_group(K, k, reduced=True)


def reduced_cohomology(K: SimplicialComplex) -> CohomologyProfile:
    """
    Reduced cohomology H~^k(K) for 0 <= k <= dim K.

    Raises:
        TopologyError: If K is empty
    """
    if K.is_empty:
        raise TopologyError("Reduced cohomology needs a non-empty complex")
    groups = {k: _cohomology_group(K, k, reduced=True) for k in range(K.dimension + 1)}
    return CohomologyProfile(groups=groups, reduced=True)


def unreduced_cohomology(K: SimplicialComplex) -> CohomologyProfile:
    groups = {k: _cohomology_group(K, k, reduced=False) for k in range(K.dimension + 1)}
    return CohomologyProfile(groups=groups, reduced=False)


def relative_cohomology(K: SimplicialComplex, L: SimplicialComplex) -> CohomologyProfile:
    """
    Relative cohomology H^k(K, L), computed on the cochains of faces of K not in L.

    Args:
        K: Complex
        L: Subcomplex of K (matched by vertex labels); may be empty

    Returns:
        Unreduced profile for 0 <= k <= dim K

    Raises:
        TopologyError: If L is not a subcomplex of K
    """
    excluded = subcomplex_faces(K, L)
    keep = (lambda s: s not in excluded)
    groups = {k: _cohomology_group(K, k, reduced=False, keep=keep) for k in range(K.dimension + 1)}
    return CohomologyProfile(groups=groups, reduced=False)


def local_cohomology_at(K: SimplicialComplex, v: int) -> AbelianGroup:
    """
    H^n(K, C_v) where n = dim K and C_v is the subcomplex of faces missing v.

    By excision this stands in for H^n(X, X - {x}) at the vertex.

    Raises:
        TopologyError: If v is not a vertex of K
    """
    if (v,) not in K:
        raise TopologyError(f"Vertex {v!r} is not in the complex")
    return _cohomology_group(K, K.dimension, reduced=False, keep=lambda s: v in s)


def first_betti(K: SimplicialComplex) -> int:
    """Free rank of H^1(K)."""
    if K.is_empty:
        return 0
    return _cohomology_group(K, 1, reduced=True).free_rank
