"""Exact torsion homology growth in cyclic covers, with L²-torsion predictions."""

from .intlinalg import (
    IntMatrix,
    Lattice,
    RatMatrix,
    bareiss_det,
    cokernel_invariants,
    detprime_sq,
    image_basis,
    invariant_factors,
    kernel_basis,
    lattice_volume_sq,
    rank,
    smith_normal_form,
)
from .complexes import (
    GroupActionData,
    HomologySummary,
    MetrizedComplex,
    check_dlap_identity,
    check_rt_identity,
    cohomology,
    cohomology_all,
    complex_from_dict,
    dual_complex,
    laplacian,
    load_complex,
    verify_gaction_bound,
)
from .polynomials import (
    IntPoly,
    LaurentPoly,
    branched_cover_order,
    charpoly,
    gelfond_lind_sequence,
    log_mahler,
    mahler_measure,
    mahler_multivariate_estimate,
    parse_poly,
    resultant,
)
from .tower import (
    LaurentMatrix,
    TowerComplex,
    circle_complex,
    coker_sandwich_check,
    finite_cover,
    knot_exterior_complex,
    l2_acyclic,
    load_tower,
    tau2,
    torsion_sequence,
    tower_from_dict,
    verify_papprox,
    write_sequence_csv,
)
from .l2constants import (
    SymbolicReal,
    WeightSL2C,
    WeightSL3,
    WeightSO,
    predicted_growth,
    strongly_acyclic,
    t2_hyperbolic,
    t2_sl2c,
    t2_sl3,
)
from .regularize import (
    reg_integral_even_poly,
    smoothed_log_product,
    zeta_reg_product_scaled,
)

__version__ = "0.1.0"
