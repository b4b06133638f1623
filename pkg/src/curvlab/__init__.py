"""Exact discrete curvature toolkit.

Computes Ollivier Ricci curvature (all idleness values and the Lin-Lu-Yau
limit) in exact rational arithmetic, Bakry-Emery curvature via the
carre-du-champ forms, Ricci-flatness certificates by complete search, and
graph products, together with generators for the standard example graphs
and automated verification suites for the structural theorems connecting
all of these quantities.
"""

from .atlas import (
    complete,
    complete_bipartite,
    cycle,
    figure3_local,
    figure5_local,
    figure6_local,
    hypercube,
    icosidodecahedron,
    incidence_11_6_3,
    random_regular,
    shrikhande,
    triplex,
)
from .bakry_emery import (
    CurvatureSample,
    QuadraticForm,
    be_upper_bound,
    curvature,
    gamma2_form,
    gamma_form,
)
from .flatness import (
    AssignmentMatrix,
    FlatnessVerdict,
    candidate_domains,
    kdd_matrix,
    search_flatness,
    verify_certificate,
)
from .graph import (
    Graph,
    GraphError,
    IntersectionArray,
    LocalBall,
    ball,
    build_graph,
    directional_degree,
    distance,
    distances_from,
    girth,
    incomplete_two_ball,
    intersection_array,
    links,
    max_bipartite_matching,
    sphere,
    triangles_at_vertex,
    triangles_on_edge,
)
from .products import (
    ProductGraph,
    check_cartesian_be,
    check_flatness_preservation,
    check_strong_bounds,
    classify_edge,
    product,
    product_certificate,
)
from .transport import (
    DisplacementHistogram,
    Measure,
    TransportPlan,
    TransportResult,
    curvature_upper_bounds,
    displacement_histogram,
    is_bone_idle,
    kappa_lly,
    kappa_p,
    matching_curvature_check,
    vertex_measure,
    wasserstein,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
