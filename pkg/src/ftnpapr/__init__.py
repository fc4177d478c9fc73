"""Faster-than-Nyquist transmit covariance design and PAPR/CCDF analysis."""

from .channel import (
    AntennaPowerProfile,
    ChannelRealization,
    sample_channel,
    spatial_waterfilling,
    uniform_spatial,
)
from .covariance import (
    ColoringFactor,
    ConstraintKind,
    InputCovariance,
    PowerConstraint,
    Scheme,
    coloring_factor,
    optimal_covariance_moderate,
    optimal_covariance_small,
    scheme_covariance,
    transmit_power,
)
from .gram import (
    CovarianceSpectrum,
    GramMatrix,
    asymptotic_eigenvalues,
    build_gram,
    generating_function,
    support_count,
    szego_deviation,
)
from .papr import (
    CcdfAccumulator,
    CcdfCurve,
    CurveKind,
    closed_form_ccdf_rx,
    closed_form_ccdf_tx,
    default_gamma_grid,
    empirical_ccdf,
    sup_gap,
    theoretical_ccdf_integral,
)
from .pulse import (
    PhaseVector,
    PulseDesignError,
    PulseShape,
    make_rrc_pulse,
    pulse_phase_vector,
    rc_autocorrelation,
    rc_spectrum,
)
from .synth import (
    DftPhaseVector,
    SymbolBlock,
    WaveformFrame,
    dft_phase_vector,
    draw_colored_symbols,
    instantaneous_variance,
    synthesize_waveform,
)

__version__ = "0.1.0"

__all__ = [
    "AntennaPowerProfile",
    "CcdfAccumulator",
    "CcdfCurve",
    "ChannelRealization",
    "ColoringFactor",
    "ConstraintKind",
    "CovarianceSpectrum",
    "CurveKind",
    "DftPhaseVector",
    "GramMatrix",
    "InputCovariance",
    "PhaseVector",
    "PowerConstraint",
    "PulseDesignError",
    "PulseShape",
    "Scheme",
    "SymbolBlock",
    "WaveformFrame",
    "asymptotic_eigenvalues",
    "build_gram",
    "closed_form_ccdf_rx",
    "closed_form_ccdf_tx",
    "coloring_factor",
    "default_gamma_grid",
    "dft_phase_vector",
    "draw_colored_symbols",
    "empirical_ccdf",
    "generating_function",
    "instantaneous_variance",
    "make_rrc_pulse",
    "optimal_covariance_moderate",
    "optimal_covariance_small",
    "pulse_phase_vector",
    "rc_autocorrelation",
    "rc_spectrum",
    "sample_channel",
    "scheme_covariance",
    "spatial_waterfilling",
    "sup_gap",
    "support_count",
    "synthesize_waveform",
    "szego_deviation",
    "theoretical_ccdf_integral",
    "transmit_power",
    "uniform_spatial",
]
