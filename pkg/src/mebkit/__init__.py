"""Minimum enclosing balls, outlier-tolerant variants, sampled cluster
testers, constructive convexity routines, and diameter estimation."""

__version__ = "0.1.0"

from .convexity import (
    AABox,
    ConvexCombination,
    HellyReport,
    RadonPartition,
    barycentric_circumradius,
    caratheodory_reduce,
    dist_to_hull,
    fractional_helly_beta,
    helly_check_boxes,
    jung_bound,
    make_combination,
    nodim_caratheodory,
    radon_partition,
)
from .diameter import (
    DiameterResult,
    DirectionalSketch,
    TwoApproxSketch,
    diameter_bruteforce,
    diameter_calipers_2d,
    diameter_doublesweep,
    direction_count,
    stream_2approx,
    stream_eps_2d,
)
from .errors import (
    ConvergenceError,
    DegenerateInputError,
    GuardError,
    IterationLimitError,
    ParseError,
)
from .generators import gen_instance, regular_simplex
from .geometry import (
    Ball,
    BallBody,
    BoxBody,
    barycenter,
    circumball,
    distance,
    fits_in_translate,
    geom_tol,
)
from .meb import (
    KtResiduals,
    MebSolution,
    SupportSet,
    badoiu_clarkson,
    elzinga_hearn_dual,
    exact_meb,
    hopp_reeve_meb,
    iteration_bound,
    kt_residuals,
)
from .mkeb import MkebSolution, exact_mkeb, outlier_meb_sample, outlier_sample_size
from .pointio import read_points, write_points
from .seeding import derive_rng, derive_seed
from .testers import (
    PromiseLabel,
    ScatteredSet,
    TestVerdict,
    k_g_tester,
    one_s_tester,
    promise_label,
    scattered_points,
)

__all__ = [
    "AABox",
    "Ball",
    "BallBody",
    "BoxBody",
    "ConvexCombination",
    "ConvergenceError",
    "DegenerateInputError",
    "DiameterResult",
    "DirectionalSketch",
    "GuardError",
    "HellyReport",
    "IterationLimitError",
    "KtResiduals",
    "MebSolution",
    "MkebSolution",
    "ParseError",
    "PromiseLabel",
    "RadonPartition",
    "ScatteredSet",
    "SupportSet",
    "TestVerdict",
    "TwoApproxSketch",
    "badoiu_clarkson",
    "barycenter",
    "barycentric_circumradius",
    "caratheodory_reduce",
    "circumball",
    "derive_rng",
    "derive_seed",
    "diameter_bruteforce",
    "diameter_calipers_2d",
    "diameter_doublesweep",
    "direction_count",
    "dist_to_hull",
    "distance",
    "elzinga_hearn_dual",
    "exact_meb",
    "exact_mkeb",
    "fits_in_translate",
    "fractional_helly_beta",
    "gen_instance",
    "geom_tol",
    "helly_check_boxes",
    "hopp_reeve_meb",
    "iteration_bound",
    "jung_bound",
    "k_g_tester",
    "kt_residuals",
    "make_combination",
    "nodim_caratheodory",
    "one_s_tester",
    "outlier_meb_sample",
    "outlier_sample_size",
    "promise_label",
    "radon_partition",
    "read_points",
    "regular_simplex",
    "scattered_points",
    "stream_2approx",
    "stream_eps_2d",
    "write_points",
]
