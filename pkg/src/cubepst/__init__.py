"""Perfect state transfer on cubelike graphs, decided through their binary codes."""

from .codeprofile import CodeProfile, center, classify, self_orthogonal
from .constructions import (
    complement,
    direct_sum,
    example_graph,
    hypercube,
    power,
    pst_to_target,
    simplex,
)
from .gf2core import (
    ConnectionSet,
    WeightDistribution,
    bits_to_int,
    codeword,
    codeword_weight,
    divisor,
    int_to_bits,
    sigma,
    spans,
    weight_distribution,
)
from .pstanalysis import (
    PeriodInfo,
    PstVerdict,
    condition_b,
    condition_c,
    detect_pst,
    min_period,
    trace_necessary_check,
    verify_pst_numeric,
)
from .walkengine import (
    RationalPi,
    Spectrum,
    amplitude_entry,
    amplitude_row,
    dense_oracle,
    spectrum,
    trace,
)

__version__ = "0.1.0"

__all__ = [
    "CodeProfile",
    "ConnectionSet",
    "PeriodInfo",
    "PstVerdict",
    "RationalPi",
    "Spectrum",
    "WeightDistribution",
    "amplitude_entry",
    "amplitude_row",
    "bits_to_int",
    "center",
    "classify",
    "codeword",
    "codeword_weight",
    "complement",
    "condition_b",
    "condition_c",
    "dense_oracle",
    "detect_pst",
    "direct_sum",
    "divisor",
    "example_graph",
    "hypercube",
    "int_to_bits",
    "min_period",
    "power",
    "pst_to_target",
    "self_orthogonal",
    "sigma",
    "simplex",
    "spans",
    "spectrum",
    "trace",
    "trace_necessary_check",
    "verify_pst_numeric",
    "weight_distribution",
]
