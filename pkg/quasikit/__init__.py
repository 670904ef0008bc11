"""
quasikit: quasi-manifold classification and curve-product obstructions for
finite simplicial complexes.
"""

from .classification import (
    classify_curve,
    classify_quasi,
    classify_quasi_via_subdivision,
    classify_ramified,
    check_link_ramified,
    quasi_off_skeleton,
    ramified_core,
)
from .cohomology import (
    first_betti,
    local_cohomology_at,
    reduced_cohomology,
    relative_cohomology,
)
from .complex_core import (
    SimplicialComplex,
    barycentric_subdivision,
    canonical_form,
    is_isomorphic,
    link,
    skeleton,
    staircase_product,
    star,
    suspension,
)
from .errors import FacetParseError, TopologyError
from .facet_io import parse_facets, serialize_facets
from .generators import generate
from .integer_algebra import AbelianGroup, cokernel_presentation, rational_rank, smith_normal_form
from .obstruction import Verdict, curve_product_obstruction, reverify_certificate, suspension_obstruction

__version__ = "1.0.0"
