"""Toeplitz Gram matrix of the accelerated pulse train and its spectrum.

The Gram matrix G collects pulse autocorrelation samples g((n-m)*delta*T).
Its generating function is the folded (aliased) pulse spectrum; the uniform
samples of that fold approximate G's eigenvalues in the Szego sense and are
the working representation for every covariance construction downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .pulse import PulseShape, rc_autocorrelation, rc_spectrum

__all__ = [
    "GramMatrix",
    "CovarianceSpectrum",
    "build_gram",
    "generating_function",
    "asymptotic_eigenvalues",
    "support_count",
    "szego_deviation",
]

DEFAULT_SUPPORT_THRESHOLD = 1e-12


@dataclass(frozen=True)
class GramMatrix:
    """Symmetric Toeplitz matrix of pulse autocorrelation samples.

    first_row[k] = g(k*delta*T); the full matrix has entries
    first_row[|i - j|] and is positive semidefinite.
    """

    first_row: np.ndarray
    delta: float
    beta: float
    T: float

    @property
    def n(self) -> int:
        return len(self.first_row)

    @property
    def matrix(self) -> np.ndarray:
        """Dense N x N realization (O(N^2) memory, built on demand)."""
        idx = np.abs(np.subtract.outer(np.arange(self.n), np.arange(self.n)))
        return self.first_row[idx]


@dataclass
class CovarianceSpectrum:
    """Folded-spectrum samples attached to a symbol frame of odd length N.

    lambdas      generating-function samples at f = i/N, i = -M..M (ascending)
    f_grid       the sample frequencies i/N
    inv_lambdas  optimal inverse-spectrum samples (zero off support); filled
                 by the small-delta covariance construction
    z_count      number of nonzero folded-spectrum samples
    """

    lambdas: np.ndarray
    f_grid: np.ndarray
    inv_lambdas: np.ndarray | None = None
    z_count: int | None = None
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.lambdas)


def build_gram(shape: PulseShape, n: int) -> GramMatrix:
    """Gram matrix of an N-symbol frame, N = 2M+1 odd.

    Even N is rejected: the symmetric indexing m = -M..M underlies all the
    spectral identities used elsewhere.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"frame length must be odd and >= 3, got {n}")
    lags = np.arange(n) * shape.symbol_interval
    first_row = np.asarray(rc_autocorrelation(shape, lags), dtype=float)
    return GramMatrix(first_row=first_row, delta=shape.delta, beta=shape.beta, T=shape.T)


def generating_function(shape: PulseShape, f_n) -> float | np.ndarray:
    """Folded pulse spectrum (1/(delta*T)) * sum_m G((f_n - m)/(delta*T)).

    f_n is a normalized frequency; values outside [-1/2, 1/2] are wrapped
    into the fundamental period.  The alias sum truncates at
    |m| <= ceil(1/delta) + 1, which is exact because G is bandlimited.
    """
    f_arr = np.atleast_1d(np.asarray(f_n, dtype=float))
    scalar = np.asarray(f_n).ndim == 0
    f_wrapped = f_arr - np.round(f_arr)
    dT = shape.symbol_interval
    m_max = math.ceil(1.0 / shape.delta) + 1
    total = np.zeros_like(f_wrapped)
    for m in range(-m_max, m_max + 1):
        total += rc_spectrum(shape, (f_wrapped - m) / dT)
    total /= dT
    return float(total[0]) if scalar else total


def asymptotic_eigenvalues(shape: PulseShape, n: int) -> CovarianceSpectrum:
    """Generating-function samples lambda_i at f = i/N, i = -M..M.

    These approximate the sorted eigenvalues of :func:`build_gram` as N
    grows (Szego equivalence of Toeplitz and circulant spectra).
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"frame length must be odd and >= 3, got {n}")
    m_half = n // 2
    f_grid = np.arange(-m_half, m_half + 1) / n
    lambdas = np.asarray(generating_function(shape, f_grid), dtype=float)
    return CovarianceSpectrum(lambdas=lambdas, f_grid=f_grid)


def support_count(shape: PulseShape, n: int, threshold: float = DEFAULT_SUPPORT_THRESHOLD) -> int:
    """Number Z of folded-spectrum samples above threshold * peak.

    For delta < 1/(1+beta) the support occupies a fraction delta*(1+beta) of
    the period, so Z/N approaches that fraction; for larger delta every
    sample is positive and Z = N.  The result is always odd (the support is
    symmetric and contains i = 0); a count left even by a borderline sample
    is rounded down to keep the sampled support symmetric.
    """
    spectrum = asymptotic_eigenvalues(shape, n)
    z = int(np.sum(spectrum.lambdas > threshold * spectrum.lambdas.max()))
    if z % 2 == 0:
        z -= 1
    return z


def szego_deviation(shape: PulseShape, n: int) -> tuple[float, float]:
    """(mean, sup) absolute deviation of sorted folded-spectrum samples from
    the sorted dense eigenvalues of the Gram matrix, normalized by the
    spectral peak.

    Peak normalization makes the comparison well posed when part of the
    spectrum is exactly zero (delta below 1/(1+beta)).
    """
    gram = build_gram(shape, n)
    eigvals = np.sort(np.linalg.eigvalsh(gram.matrix))
    lam = np.sort(asymptotic_eigenvalues(shape, n).lambdas)
    dev = np.abs(lam - eigvals) / lam.max()
    return float(dev.mean()), float(dev.max())
