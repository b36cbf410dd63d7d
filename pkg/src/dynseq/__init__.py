"""Greedy energy-minimizing low-discrepancy sequences and exact star discrepancy."""

from .baselines import (
    BaselineSpec,
    halton,
    halton_set,
    hammersley_set,
    kronecker_set,
    radical_inverse,
)
from .diagnostics import (
    ScanReport,
    conjecture_scan,
    dyadic_block_check,
    lemma3_negativity,
    min_energy_report,
    theorem3_condition,
)
from .discrepancy import (
    DiscrepancyReport,
    erdos_turan_diag,
    erdos_turan_koksma_diag,
    star_disc_1d,
    star_disc_dd,
    star_discrepancy,
    weyl_sum,
    xn_embed,
)
from .estimator import GreedyEnergySequence, make_kernel
from .exceptions import (
    DegenerateDistance,
    EmptySet,
    InsufficientPoints,
    NoAdmissibleRegion,
    UnsupportedDimension,
)
from .greedy import (
    GreedyConfig,
    StepRecord,
    admissible_gaps,
    build_sequence,
    next_point_1d,
    next_point_dd,
)
from .kernels import (
    EnergyKernel,
    ProductKernelSpec,
    eval_logsin,
    eval_product,
    eval_truncated_fourier,
    fourier_tail_residual,
    total_energy,
)
from .pointset import PointSet

__all__ = [
    "BaselineSpec", "DegenerateDistance", "DiscrepancyReport", "EmptySet", "EnergyKernel",
    "GreedyConfig", "GreedyEnergySequence", "InsufficientPoints", "NoAdmissibleRegion", "PointSet",
    "ProductKernelSpec", "ScanReport", "StepRecord", "UnsupportedDimension", "admissible_gaps",
    "build_sequence", "conjecture_scan", "dyadic_block_check", "erdos_turan_diag",
    "erdos_turan_koksma_diag", "eval_logsin", "eval_product", "eval_truncated_fourier",
    "fourier_tail_residual", "halton", "halton_set", "hammersley_set", "kronecker_set",
    "lemma3_negativity", "make_kernel", "min_energy_report", "next_point_1d", "next_point_dd",
    "radical_inverse", "star_disc_1d", "star_disc_dd", "star_discrepancy", "theorem3_condition",
    "total_energy", "weyl_sum", "xn_embed",
]
