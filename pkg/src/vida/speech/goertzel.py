"""Single-frequency signal energy via the Goertzel recurrence.

``goertzel_energy`` is the textbook second-order recurrence.  The decoder
needs that energy at 39 frequencies for every 10 ms hop, so ``goertzel_bank``
computes the mathematically identical quantity |sum x[n] e^(-i w n)|^2 for
all frequencies at once with one matrix product; the equivalence is asserted
by the test suite.
"""

from __future__ import annotations

import math

import numpy as np

from vida.media import SAMPLE_RATE_HZ

MIN_WINDOW_SAMPLES = 32


def goertzel_energy(window: np.ndarray, freq_hz: float, sample_rate_hz: int = SAMPLE_RATE_HZ) -> float:
    """Energy of ``window`` at one frequency: s1^2 + s2^2 - coeff*s1*s2.

    ``window`` is float samples (any scale); the result equals the squared
    magnitude of the DTFT of the window at ``freq_hz``.
    """
    x = np.asarray(window, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError(f"window must be 1-D, got shape {x.shape}")
    if len(x) < MIN_WINDOW_SAMPLES:
        raise ValueError(f"window of {len(x)} samples is below the minimum {MIN_WINDOW_SAMPLES}")
    omega = 2.0 * math.pi * freq_hz / sample_rate_hz
    coeff = 2.0 * math.cos(omega)
    s_prev = 0.0
    s_prev2 = 0.0
    for sample in x:
        s = sample + coeff * s_prev - s_prev2
        s_prev2 = s_prev
        s_prev = s
    return s_prev * s_prev + s_prev2 * s_prev2 - coeff * s_prev * s_prev2


def goertzel_bank(freqs_hz: np.ndarray, window_samples: int,
                  sample_rate_hz: int = SAMPLE_RATE_HZ) -> np.ndarray:
    """Precompute the complex filter bank matrix for ``energies``.

    Returns a (len(freqs), window_samples) complex matrix W with
    W[k, n] = e^(-i 2 pi f_k n / fs); then |W @ x|^2 matches
    ``goertzel_energy(x, f_k)`` for each row.
    """
    freqs = np.asarray(freqs_hz, dtype=np.float64)
    n = np.arange(window_samples, dtype=np.float64)
    omega = 2.0 * np.pi * freqs[:, None] / sample_rate_hz
    return np.exp(-1j * omega * n[None, :])


def bank_energies(bank: np.ndarray, window: np.ndarray) -> np.ndarray:
    """Energies at every bank frequency for one window."""
    return np.abs(bank @ np.asarray(window, dtype=np.float64)) ** 2
