"""Schur-function series over fat partitions and their random-matrix realizations."""

from .dse import DSEPoint, dse_partition_function, dse_points, dse_sample, dse_weight
from .ensembles import (
    EnsembleSpec,
    closed_form_schur_average,
    gaussian_quaternion_moment,
    mc_schur_average,
    mc_schur_averages,
    sample_ensemble,
)
from .montecarlo import MCEstimate
from .partitions import (
    FrobeniusCoords,
    Partition,
    PartitionConstraints,
    classify,
    conjugate,
    content_pochhammer,
    enumerate_partitions,
    fatten,
    frobenius,
    is_even,
    is_fat,
    partitions_of,
    schur_at_pinfty,
)
from .ribbon import (
    CornerAssignment,
    CornerSpec,
    RibbonGraph,
    builtin_graph,
    load_graph,
    monodromies,
    save_graph,
    validate_graph,
)
from .series import (
    ContentFunction,
    ModelConfig,
    SeriesValue,
    classify_solvability,
    hyp_tau_series,
    load_config,
    mc_partition_function,
    mixed_series,
    zu_mm_series,
)
from .symfun import (
    PowerSums,
    Specialization,
    charmap_schur,
    mn_character,
    schur_at,
    schur_from_power_sums,
    schur_of_matrix,
)

__version__ = "0.1.0"
