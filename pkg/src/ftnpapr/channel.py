"""Rayleigh MIMO channel draws and spatial power allocation.

Spatial allocation only sets the per-antenna power levels P_k that normalize
PAPR; the temporal covariance shape is common to all antennas and the two
stages compose multiplicatively.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ChannelRealization",
    "AntennaPowerProfile",
    "sample_channel",
    "spatial_waterfilling",
    "uniform_spatial",
]

_BISECT_STEPS = 80


@dataclass(frozen=True)
class ChannelRealization:
    """One L x K frequency-flat MIMO draw with entries CN(0, 1/K)."""

    k_tx: int
    l_rx: int
    h: np.ndarray
    seed: int | None = None


@dataclass(frozen=True)
class AntennaPowerProfile:
    """Spatial allocation: per-eigenmode powers, the unitary precoder of
    right singular vectors, and the resulting per-antenna powers P_k."""

    mode_powers: np.ndarray
    precoder: np.ndarray
    per_antenna: np.ndarray
    degenerate: bool = False

    @property
    def total(self) -> float:
        return float(self.mode_powers.sum())


def sample_channel(
    k_tx: int, l_rx: int, rng: np.random.Generator, seed: int | None = None
) -> ChannelRealization:
    """Draw h with i.i.d. CN(0, 1/K) entries; deterministic given the rng state."""
    if k_tx < 1 or l_rx < 1:
        raise ValueError("antenna counts must be >= 1")
    scale = np.sqrt(0.5 / k_tx)
    h = scale * (
        rng.standard_normal((l_rx, k_tx)) + 1j * rng.standard_normal((l_rx, k_tx))
    )
    return ChannelRealization(k_tx=k_tx, l_rx=l_rx, h=h, seed=seed)


def spatial_waterfilling(
    ch: ChannelRealization, total_power: float, sigma0_sq: float = 1.0
) -> AntennaPowerProfile:
    """Waterfilling over the squared singular values of the channel.

    Mode m receives max(0, mu - sigma0^2/s_m^2) with the water level mu fixed
    by bisection so the modes sum to the budget; the result is rescaled to
    meet the budget exactly.  An all-zero channel puts the entire budget on
    the first mode and sets the degenerate flag.
    """
    if not total_power > 0:
        raise ValueError("total power must be positive")
    k = ch.k_tx
    _, s, vh = np.linalg.svd(ch.h)
    v = vh.conj().T  # K x min(L,K) right singular vectors, padded below

    precoder = np.eye(k, dtype=complex)
    precoder[:, : v.shape[1]] = v
    mode_powers = np.zeros(k)

    if not np.any(s > 0):
        mode_powers[0] = total_power
        per_antenna = (np.abs(precoder) ** 2) @ mode_powers
        return AntennaPowerProfile(
            mode_powers=mode_powers, precoder=precoder, per_antenna=per_antenna, degenerate=True
        )

    active = s > 0
    floors = sigma0_sq / s[active] ** 2
    lo = floors.min()
    hi = lo + total_power
    for _ in range(_BISECT_STEPS):
        mu = 0.5 * (lo + hi)
        if np.sum(np.maximum(0.0, mu - floors)) > total_power:
            hi = mu
        else:
            lo = mu
    powers = np.maximum(0.0, 0.5 * (lo + hi) - floors)
    powers *= total_power / powers.sum()
    mode_powers[: len(powers)] = powers

    per_antenna = (np.abs(precoder) ** 2) @ mode_powers
    return AntennaPowerProfile(
        mode_powers=mode_powers, precoder=precoder, per_antenna=per_antenna
    )


def uniform_spatial(k_tx: int, total_power: float) -> AntennaPowerProfile:
    """Equal split of the budget across antennas with an identity precoder."""
    if k_tx < 1:
        raise ValueError("antenna count must be >= 1")
    if not total_power > 0:
        raise ValueError("total power must be positive")
    per = np.full(k_tx, total_power / k_tx)
    return AntennaPowerProfile(
        mode_powers=per.copy(), precoder=np.eye(k_tx, dtype=complex), per_antenna=per
    )


def channel_to_csv(ch: ChannelRealization) -> str:
    """Realization dump for audits: seed, geometry, then one row per entry."""
    buf = io.StringIO()
    buf.write("seed,K,L,l,k,re,im\n")
    seed = "" if ch.seed is None else str(ch.seed)
    for l in range(ch.l_rx):
        for k in range(ch.k_tx):
            buf.write(
                f"{seed},{ch.k_tx},{ch.l_rx},{l},{k},"
                f"{ch.h[l, k].real:.10g},{ch.h[l, k].imag:.10g}\n"
            )
    return buf.getvalue()
