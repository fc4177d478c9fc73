"""Colored Gaussian symbol blocks and oversampled waveform synthesis.

Symbols are drawn by spectral coloring of white complex Gaussians, the
transmit waveform is the linear pulse-train superposition on a grid of Q
samples per accelerated interval, and the instantaneous (phase-dependent)
variance is evaluated through the same DFT factorization the covariances
are built in.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .covariance import InputCovariance, coloring_factor
from .pulse import PhaseVector, PulseShape, make_rrc_pulse, pulse_phase_vector, rc_spectrum

__all__ = [
    "SymbolBlock",
    "WaveformFrame",
    "DftPhaseVector",
    "draw_colored_symbols",
    "synthesize_waveform",
    "instantaneous_variance",
    "dft_phase_vector",
]


@dataclass(frozen=True)
class SymbolBlock:
    """Complex Gaussian symbol vector with a reference to its covariance.

    Real and imaginary parts are independent, each carrying Sigma/2, so the
    block is circularly symmetric with covariance Sigma.
    """

    a: np.ndarray
    cov: InputCovariance

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def a_r(self) -> np.ndarray:
        return self.a.real

    @property
    def a_i(self) -> np.ndarray:
        return self.a.imag


@dataclass(frozen=True)
class WaveformFrame:
    """Oversampled transmit waveform with edge guards.

    samples        full linear-convolution output, Q points per delta*T
    phase_count    Q, samples per accelerated interval
    nominal_power  allocated power P_k used for PAPR normalization
    edge_guard     delta*T periods trimmed from each end for statistics
    n_symbols      symbols in the frame
    sample_step    grid spacing delta*T/Q in seconds
    """

    samples: np.ndarray
    phase_count: int
    nominal_power: float
    edge_guard: int
    n_symbols: int
    sample_step: float

    @property
    def interior(self) -> np.ndarray:
        """Samples in steady state: pulse transients at both ends removed."""
        q = self.phase_count
        start = 2 * self.edge_guard * q
        stop = (self.n_symbols - 1) * q + 1
        return self.samples[start:stop]

    def interior_power(self) -> float:
        return float(np.mean(np.abs(self.interior) ** 2))


@dataclass(frozen=True)
class DftPhaseVector:
    """Direct DFT of the phase vector and its bandlimited closed form.

    Arrays are in FFT bin order; `bins` holds the signed bin index n and
    `support` flags |n| <= (Z-1)/2.  The closed form is
    (1/(sqrt(N) delta T)) sqrt(G(n/(N delta T))) exp(-2j pi n tau/(N delta T))
    and is only available below the regime boundary, where a single spectral
    alias covers each bin.
    """

    direct: np.ndarray
    closed_form: np.ndarray | None
    bins: np.ndarray
    support: np.ndarray


def draw_colored_symbols(cov: InputCovariance, rng: np.random.Generator) -> SymbolBlock:
    """Draw a = C w with w standard complex Gaussian, so E[a a^H] = Sigma."""
    white = (
        rng.standard_normal(cov.n) + 1j * rng.standard_normal(cov.n)
    ) / np.sqrt(2.0)
    return SymbolBlock(a=coloring_factor(cov).apply(white), cov=cov)


def _fft_convolve(x: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Linear convolution via zero-padded FFT (power-of-two length)."""
    n_out = len(x) + len(h) - 1
    n_fft = 1 << (n_out - 1).bit_length()
    out = np.fft.ifft(np.fft.fft(x, n_fft) * np.fft.fft(h, n_fft))
    return out[:n_out]


def synthesize_waveform(
    block: SymbolBlock,
    shape: PulseShape,
    nominal_power: float | None = None,
) -> WaveformFrame:
    """Superpose a[m] p(t - m*delta*T) on the Q-oversampled grid.

    The output covers the full linear convolution; `edge_guard` marks the
    span-length transients excluded from statistics.  Frames without any
    steady-state interior are rejected.
    """
    n = block.n
    q = shape.oversampling
    if n - 1 <= 2 * shape.span:
        raise ValueError(
            f"frame of {n} symbols has no interior beyond twice the pulse span {shape.span}"
        )
    pulse = make_rrc_pulse(shape)
    upsampled = np.zeros(n * q, dtype=complex)
    upsampled[::q] = block.a
    samples = _fft_convolve(upsampled, pulse.astype(complex))
    if nominal_power is None:
        nominal_power = block.cov.constraint.symbol_power(shape)
    return WaveformFrame(
        samples=samples,
        phase_count=q,
        nominal_power=float(nominal_power),
        edge_guard=shape.span,
        n_symbols=n,
        sample_step=shape.sample_step,
    )


def instantaneous_variance(
    cov: InputCovariance, shape: PulseShape, tau: float, half_length: int
) -> float:
    """Waveform variance p_tau^T Sigma p_tau at phase tau, via the spectrum.

    Evaluates sum_n s_n |q_n|^2 with q the DFT of the phase vector and s the
    covariance's spectral diagonal; strictly positive for full-rank Sigma.
    """
    n = 2 * half_length + 1
    if n != cov.n:
        raise ValueError(f"phase-vector length {n} does not match covariance size {cov.n}")
    pv = pulse_phase_vector(shape, tau, half_length)
    q = np.fft.fft(pv.values, norm="ortho")
    return float(np.sum(cov.diag_fft * np.abs(q) ** 2))


def dft_phase_vector(shape: PulseShape, tau: float, n: int) -> DftPhaseVector:
    """DFT of the phase vector alongside its bandlimited closed form.

    The direct transform is the orthonormal DFT of p(tau - m*delta*T),
    m = -M..M, re-phased to the symmetric index convention.  Below the
    regime boundary the transform samples the scaled root spectrum evenly,
    which is the closed form returned for comparison.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"frame length must be odd and >= 3, got {n}")
    m_half = n // 2
    pv: PhaseVector = pulse_phase_vector(shape, tau, m_half)
    bins = np.rint(np.fft.fftfreq(n) * n).astype(int)
    # entries are indexed m = -M..M; shift the DFT reference accordingly
    direct = np.fft.fft(pv.values, norm="ortho") * np.exp(2j * np.pi * m_half * bins / n)

    dT = shape.symbol_interval
    closed = None
    if shape.is_small_delta:
        g = rc_spectrum(shape, bins / (n * dT))
        closed = np.sqrt(g) / (np.sqrt(n) * dT) * np.exp(-2j * np.pi * bins * tau / (n * dT))
        support = g > 0
    else:
        support = np.abs(bins / n) <= shape.delta * (1.0 + shape.beta) / 2.0
    return DftPhaseVector(direct=direct, closed_form=closed, bins=bins, support=support)


def frame_to_csv(frame: WaveformFrame) -> str:
    """Waveform dump (t, Re, Im, |x|^2) for debugging and plotting."""
    buf = io.StringIO()
    buf.write("t,re,im,power\n")
    q = frame.phase_count
    t0 = -frame.edge_guard * q * frame.sample_step
    for idx, s in enumerate(frame.samples):
        t = t0 + idx * frame.sample_step
        buf.write(f"{t:.10g},{s.real:.10g},{s.imag:.10g},{abs(s) ** 2:.10g}\n")
    return buf.getvalue()
