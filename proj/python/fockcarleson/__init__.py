"""Fock space toolkit: Berezin transforms, Fock-Carleson measures, Toeplitz operators."""

from ._fockcarleson import (
    BoundednessEstimate,
    CompactnessProbe,
    EntireFunction,
    FockWeight,
    Measure,
    MeasureSpecFile,
    NormResult,
    QuadratureSpec,
    SpecError,
    ToeplitzMatrix,
    Verdict,
    apply_toeplitz,
    ball_measure,
    berezin_measure,
    boundedness_estimate,
    classify_infty_q,
    classify_p_infty,
    compactness_probe,
    fock_norm,
    load_measure_spec,
    mu_norm,
    parse_measure_spec,
    run_acceptance,
    toeplitz_matrix,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
