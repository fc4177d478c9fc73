"""Input covariance construction for every power-allocation scheme.

All covariances are diagonal in the unitary DFT basis: Sigma = W diag(s) W^H
with a real, even spectral profile s, so they are real symmetric circulant
matrices.  The profile is the primary representation; the dense matrix and
the coloring factor (used to draw correlated Gaussian symbol blocks) are
derived from it.  Inverse spectra are always formed sample-by-sample from
the folded pulse spectrum, never by dense matrix inversion.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .gram import (
    DEFAULT_SUPPORT_THRESHOLD,
    CovarianceSpectrum,
    asymptotic_eigenvalues,
    support_count,
)
from .pulse import PulseShape, rc_spectrum

__all__ = [
    "Scheme",
    "ConstraintKind",
    "PowerConstraint",
    "InputCovariance",
    "ColoringFactor",
    "optimal_covariance_moderate",
    "optimal_covariance_small",
    "scheme_covariance",
    "coloring_factor",
    "transmit_power",
    "spectrum_to_csv",
]

# Moderate-regime inverse spectra are rejected when the folded spectrum dips
# below this fraction of its peak (near-singular fold at the regime boundary).
_CONDITION_FLOOR = 1e-8

# Spectral values below this fraction of the peak are clamped to zero before
# taking the square root in the coloring factor.
_CLAMP_FLOOR = 1e-12

_IMAG_RESIDUE_TOL = 1e-8


class Scheme(str, Enum):
    """Power-allocation schemes; `OPTIMAL` dispatches on the delta regime."""

    UNIFORM = "uniform"
    UNIFORM_FREQUENCY = "uniform_frequency"
    TIME_INVERSE = "time_inverse"
    OPTIMAL = "optimal"
    OPTIMAL_MODERATE = "optimal_moderate"
    OPTIMAL_SMALL = "optimal_small"


class ConstraintKind(str, Enum):
    FIXED_TX_SNR = "fixed_tx_snr"
    FIXED_RX_SNR = "fixed_rx_snr"


@dataclass(frozen=True)
class PowerConstraint:
    """Fixed-transmit-power or fixed-symbol-energy budget.

    Exactly one of P (watts, fixed transmit SNR) and E (joules, fixed
    received SNR) is active.  sigma0_sq is the noise spectral density used
    by spatial waterfilling; no receiver is simulated here.
    """

    kind: ConstraintKind
    P: float | None = None
    E: float | None = None
    sigma0_sq: float = 1.0

    def __post_init__(self) -> None:
        if self.kind is ConstraintKind.FIXED_TX_SNR:
            if self.P is None or not self.P > 0 or self.E is not None:
                raise ValueError("fixed-transmit-SNR constraint needs P > 0 and no E")
        else:
            if self.E is None or not self.E > 0 or self.P is not None:
                raise ValueError("fixed-received-SNR constraint needs E > 0 and no P")
        if not self.sigma0_sq > 0:
            raise ValueError("noise spectral density must be positive")

    @classmethod
    def fixed_tx(cls, power: float, sigma0_sq: float = 1.0) -> "PowerConstraint":
        return cls(kind=ConstraintKind.FIXED_TX_SNR, P=power, sigma0_sq=sigma0_sq)

    @classmethod
    def fixed_rx(cls, energy: float, sigma0_sq: float = 1.0) -> "PowerConstraint":
        return cls(kind=ConstraintKind.FIXED_RX_SNR, E=energy, sigma0_sq=sigma0_sq)

    def symbol_power(self, shape: PulseShape) -> float:
        """Effective per-antenna power: P, or E/(delta*T) under fixed E."""
        if self.kind is ConstraintKind.FIXED_TX_SNR:
            return float(self.P)
        return float(self.E) / shape.symbol_interval

    def reference_power(self, shape: PulseShape) -> float:
        """delta-independent power reference for dB axes: P, or E/T."""
        if self.kind is ConstraintKind.FIXED_TX_SNR:
            return float(self.P)
        return float(self.E) / shape.T

    def label(self) -> str:
        if self.kind is ConstraintKind.FIXED_TX_SNR:
            return f"tx(P={self.P:g})"
        return f"rx(E={self.E:g})"


@dataclass
class InputCovariance:
    """Symbol covariance Sigma = power_scale * W diag(profile) W^H.

    profile      unit-power spectral diagonal at frequencies i/N, i = -M..M
                 (ascending), even in i
    power_scale  P*delta*T (fixed transmit SNR) or E (fixed received SNR)
    spectrum     the folded-spectrum samples the profile was built from
    spatial_allocation  "uniform" or "waterfilling", consumed by the MIMO
                 power-allocation stage
    """

    scheme: Scheme
    shape: PulseShape
    constraint: PowerConstraint
    profile: np.ndarray
    power_scale: float
    spectrum: CovarianceSpectrum
    spatial_allocation: str
    _dense: np.ndarray | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.profile)

    @property
    def diag_fft(self) -> np.ndarray:
        """Spectral diagonal of Sigma in FFT bin order."""
        return self.power_scale * np.fft.ifftshift(self.profile)

    @property
    def rank(self) -> int:
        return int(np.sum(self.profile > _CLAMP_FLOOR * self.profile.max()))

    @property
    def sigma(self) -> np.ndarray:
        """Dense real symmetric Sigma (cached; O(N^2) memory)."""
        if self._dense is None:
            first = np.fft.fft(self.diag_fft) / self.n
            residue = np.abs(first.imag).max() / max(np.abs(first.real).max(), 1e-300)
            if residue > _IMAG_RESIDUE_TOL:
                raise AssertionError(f"circulant row not real: imaginary residue {residue:.2e}")
            row = first.real
            idx = np.abs(np.subtract.outer(np.arange(self.n), np.arange(self.n)))
            self._dense = row[idx]
        return self._dense


@dataclass(frozen=True)
class ColoringFactor:
    """Factor C with C C^H = Sigma, realized as W diag(sqrt(s)).

    `apply` maps a white complex Gaussian vector to a symbol block with
    covariance Sigma using one FFT; `dense` materializes C itself.
    """

    diag_sqrt_fft: np.ndarray

    @property
    def n(self) -> int:
        return len(self.diag_sqrt_fft)

    def apply(self, white: np.ndarray) -> np.ndarray:
        return np.fft.fft(self.diag_sqrt_fft * white, norm="ortho")

    @property
    def dense(self) -> np.ndarray:
        n = self.n
        grid = np.arange(n)
        w = np.exp(-2j * np.pi * np.outer(grid, grid) / n) / np.sqrt(n)
        return w * self.diag_sqrt_fft[np.newaxis, :]


def _covariance_from_profile(
    scheme: Scheme,
    shape: PulseShape,
    n: int,
    constraint: PowerConstraint,
    profile: np.ndarray,
    spectrum: CovarianceSpectrum,
    spatial_allocation: str,
) -> InputCovariance:
    scale = constraint.symbol_power(shape) * shape.symbol_interval
    return InputCovariance(
        scheme=scheme,
        shape=shape,
        constraint=constraint,
        profile=np.asarray(profile, dtype=float),
        power_scale=scale,
        spectrum=spectrum,
        spatial_allocation=spatial_allocation,
    )


def optimal_covariance_moderate(
    shape: PulseShape,
    n: int,
    constraint: PowerConstraint,
    spatial_allocation: str = "waterfilling",
) -> InputCovariance:
    """Inverse-spectrum covariance Sigma = c * delta*T * W diag(1/lambda) W^H.

    Valid for 1/(1+beta) <= delta <= 1 where the folded spectrum is strictly
    positive.  The scale c is P (fixed transmit SNR) or E/(delta*T).
    """
    if shape.is_small_delta:
        raise ValueError(
            f"delta = {shape.delta:g} is below the regime boundary "
            f"1/(1+beta) = {shape.regime_boundary:.6g}; use optimal_covariance_small"
        )
    spectrum = asymptotic_eigenvalues(shape, n)
    lam = spectrum.lambdas
    if lam.min() <= _CONDITION_FLOOR * lam.max():
        raise ValueError(
            "folded spectrum nearly singular at the regime boundary: "
            f"min/max = {lam.min() / lam.max():.3e}"
        )
    return _covariance_from_profile(
        Scheme.OPTIMAL_MODERATE, shape, n, constraint, 1.0 / lam, spectrum, spatial_allocation
    )


def optimal_covariance_small(
    shape: PulseShape,
    n: int,
    constraint: PowerConstraint,
    threshold: float = DEFAULT_SUPPORT_THRESHOLD,
    spatial_allocation: str = "waterfilling",
) -> InputCovariance:
    """Rank-Z covariance from the sampled optimal input spectrum.

    For delta < 1/(1+beta) the inverse-spectrum samples are
    T / (G(i/(N*delta*T)) * (1+beta)) on the Z-sample support and zero
    outside, giving rank(Sigma) = Z < N.
    """
    if not shape.is_small_delta:
        raise ValueError(
            f"delta = {shape.delta:g} is not below the regime boundary "
            f"1/(1+beta) = {shape.regime_boundary:.6g}; use optimal_covariance_moderate"
        )
    spectrum = asymptotic_eigenvalues(shape, n)
    z = support_count(shape, n, threshold)
    m_half = n // 2
    i = np.arange(-m_half, m_half + 1)
    on = np.abs(i) <= (z - 1) // 2
    inv = np.zeros(n)
    inv[on] = shape.T / (
        rc_spectrum(shape, i[on] / (n * shape.symbol_interval)) * (1.0 + shape.beta)
    )
    spectrum.inv_lambdas = inv
    spectrum.z_count = z
    return _covariance_from_profile(
        Scheme.OPTIMAL_SMALL, shape, n, constraint, inv, spectrum, spatial_allocation
    )


def scheme_covariance(
    scheme: Scheme | str,
    shape: PulseShape,
    n: int,
    constraint: PowerConstraint,
) -> InputCovariance:
    """Covariance for one of the power-allocation schemes.

    Uniform and uniform-in-frequency share the identity symbol covariance
    (scaled to the symbol energy budget) and differ only in the spatial
    allocation flag; time-inverse shares the optimal temporal shape but
    keeps uniform spatial allocation; `optimal` dispatches on the regime
    boundary 1/(1+beta).
    """
    scheme = Scheme(scheme)
    if scheme in (Scheme.UNIFORM, Scheme.UNIFORM_FREQUENCY):
        spectrum = asymptotic_eigenvalues(shape, n)
        spatial = "uniform" if scheme is Scheme.UNIFORM else "waterfilling"
        return _covariance_from_profile(
            scheme, shape, n, constraint, np.ones(n), spectrum, spatial
        )
    if scheme is Scheme.TIME_INVERSE:
        if shape.is_small_delta:
            cov = optimal_covariance_small(shape, n, constraint, spatial_allocation="uniform")
        else:
            cov = optimal_covariance_moderate(shape, n, constraint, spatial_allocation="uniform")
        cov.scheme = Scheme.TIME_INVERSE
        return cov
    if scheme is Scheme.OPTIMAL:
        if shape.is_small_delta:
            return optimal_covariance_small(shape, n, constraint)
        return optimal_covariance_moderate(shape, n, constraint)
    if scheme is Scheme.OPTIMAL_MODERATE:
        return optimal_covariance_moderate(shape, n, constraint)
    return optimal_covariance_small(shape, n, constraint)


def coloring_factor(cov: InputCovariance) -> ColoringFactor:
    """Spectral square root of Sigma; rank-deficient profiles clamp to zero."""
    diag = cov.diag_fft.copy()
    diag[diag < _CLAMP_FLOOR * diag.max()] = 0.0
    return ColoringFactor(diag_sqrt_fft=np.sqrt(diag))


def transmit_power(cov: InputCovariance) -> float:
    """Average transmit power trace(Sigma G)/(N delta T) in the DFT basis.

    Pairing the covariance profile with the folded-spectrum samples of G
    evaluates the power of the steady-state (interior) waveform; the dense
    Toeplitz pairing would add the frame-edge transients the asymptotic
    construction excludes.
    """
    lam = cov.spectrum.lambdas
    return float(
        cov.power_scale * np.sum(cov.profile * lam) / (cov.n * cov.shape.symbol_interval)
    )


def spectrum_to_csv(cov: InputCovariance) -> str:
    """Spectral profile as CSV (frequency, folded spectrum, Sigma diagonal)."""
    buf = io.StringIO()
    buf.write("f_n,lambda,sigma_diag,power_scale\n")
    for f, lam, prof in zip(cov.spectrum.f_grid, cov.spectrum.lambdas, cov.profile):
        buf.write(f"{f:.10g},{lam:.10g},{cov.power_scale * prof:.10g},{cov.power_scale:.10g}\n")
    return buf.getvalue()
