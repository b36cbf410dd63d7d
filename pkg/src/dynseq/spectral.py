"""Incrementally maintained Weyl sums for trigonometric energies."""

from __future__ import annotations

import numpy as np


class WeylSums:
    """Running sums ``W_k = sum_n exp(2 pi i k x_n)`` for ``k = 1..K``.

    Appending a point costs O(K). ``K`` can be raised later; the missing
    frequencies are then recomputed from the stored points.
    """

    def __init__(self, K=0, points=()):
        self.K = 0
        self._x = []
        self.W = np.zeros(0, dtype=np.complex128)
        self.extend(K)
        for x in points:
            self.add(x)

    def __len__(self):
        return len(self._x)

    def extend(self, K):
        if K <= self.K:
            return
        k = np.arange(self.K + 1, K + 1)
        extra = np.zeros(k.size, dtype=np.complex128)
        for x in self._x:
            extra += np.exp(2j * np.pi * k * x)
        self.W = np.concatenate([self.W, extra])
        self.K = K

    def add(self, x):
        x = float(x)
        self._x.append(x)
        if self.K:
            self.W += np.exp(2j * np.pi * np.arange(1, self.K + 1) * x)

    def series(self, x, coefficients):
        """``sum_k c_k sum_n cos(2 pi k (x - x_n))`` at each abscissa in ``x``."""
        c = np.asarray(coefficients, dtype=np.float64)
        M = c.size
        self.extend(M)
        x = np.asarray(x, dtype=np.float64)
        k = np.arange(1, M + 1)
        # Re(e^{2πikx} conj(W_k)) = Σ_n cos(2πk(x - x_n))
        phase = np.exp(2j * np.pi * np.multiply.outer(x, k))
        return np.real(phase @ (c * np.conj(self.W[:M])))

    def series_derivative(self, x, coefficients):
        c = np.asarray(coefficients, dtype=np.float64)
        M = c.size
        self.extend(M)
        x = np.asarray(x, dtype=np.float64)
        k = np.arange(1, M + 1)
        phase = np.exp(2j * np.pi * np.multiply.outer(x, k))
        return np.real(phase @ (2j * np.pi * k * c * np.conj(self.W[:M])))

    def series_on_grid(self, S, coefficients):
        """Series values at ``j/S`` for ``j = 0..S-1`` by one inverse FFT."""
        c = np.asarray(coefficients, dtype=np.float64)
        M = c.size
        if S <= M:
            raise ValueError("grid size must exceed the trigonometric degree")
        self.extend(M)
        A = np.zeros(S, dtype=np.complex128)
        A[1:M + 1] = c * np.conj(self.W[:M])
        return np.real(np.fft.ifft(A)) * S
