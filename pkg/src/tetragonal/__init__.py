"""Newton-polygon invariants of tetragonal curves.

Lattice-polygon geometry, exact non-degeneracy checks for Laurent
polynomials, Schreyer and scrollar invariants of width-two interior
polygons, brute-force atlases, and sampling checks of explicit curve
isomorphisms.
"""

__version__ = "0.1.0"

from .errors import TetragonalError
from .lattice import (
    LatticePoint,
    LatticePolygon,
    UnimodularMap,
    column_vectors,
    convex_hull,
    equivalent,
    interior_hull,
    lattice_points,
    lattice_width,
    normal_form,
    parse_polygon,
    relax,
    strip_normalize,
)
from .laurent import LaurentPolynomial, newton_polygon, parse_laurent
from .nondegeneracy import is_nondegenerate
from .invariants import (
    B_pair,
    canonical_basis,
    genus,
    gonality,
    invariant_report,
    is_hyperelliptic,
    is_tetragonal,
    schreyer_invariants,
    scrollar_invariants,
)
from .classification import (
    FamilyTag,
    compare_BB1,
    intrinsicness_verdict,
    koelman_type,
    make_family,
    recognize_family,
    unique_delta,
)
from .enumeration import enumerate_delta_with_interior, enumerate_width2_interior, verify_b_sum, verify_lemma4
from .equivalence import (
    ProjectiveMatrix,
    RationalMap,
    e_v_lambda_matrix,
    sample_curve_points,
    verify_birational_pair,
    verify_theta,
)
