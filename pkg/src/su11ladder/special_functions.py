"""Generalized Laguerre recurrences and the analytic radial eigenfunctions.

The eigenfunctions double as the independent verification oracle for the
operator layer: they are evaluated in closed form together with their
derivatives (up to fourth order, so second-order operators can be applied
twice without ever differencing sampled data).

Oscillator-like systems:  U_n(x) = norm * s_n * x^(idx+1/2) * exp(-x^2/2)
* L_n^idx(x^2); hydrogen-like: norm * s_n * x^(idx+1/2) * exp(-c x) *
L_n^(2 idx)(2 c x) with coupling c.  The sign s_n = (-1)^n flips each
Laguerre factor to positive leading behavior, which makes every ladder
matrix element non-negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .systems import SystemSpec, angular_index, level, LevelParams

__all__ = [
    "laguerre",
    "laguerre_value",
    "normalization_constant",
    "eigenfunction",
    "Eigenfunction",
]


def laguerre_value(n: int, alpha: float, t):
    """L_n^alpha(t) by the upward three-term recurrence.

    Stable for alpha > -1 and t >= 0, the only regime used here; accepts
    scalars or numpy arrays.
    """
    if n < 0:
        raise ValueError("degree n must be >= 0")
    if alpha <= -1:
        raise ValueError(f"alpha must exceed -1, got {alpha}")
    t = np.asarray(t, dtype=float)
    prev = np.ones_like(t)
    if n == 0:
        return prev
    cur = 1.0 + alpha - t
    for k in range(2, n + 1):
        prev, cur = cur, ((2 * k - 1 + alpha - t) * cur - (k - 1 + alpha) * prev) / k
    return cur


def laguerre(n: int, alpha: float, t) -> Tuple[np.ndarray, np.ndarray]:
    """(value, d/dt value) of L_n^alpha at t.

    The derivative uses d/dt L_n^alpha = -L_(n-1)^(alpha+1).
    """
    value = laguerre_value(n, alpha, t)
    if n == 0:
        return value, np.zeros_like(value)
    return value, -laguerre_value(n - 1, alpha + 1, t)


def _laguerre_derivative_stack(n: int, alpha: float, t, order: int) -> list:
    """[L, L', L'', ...] in the argument t, up to the requested order."""
    out = []
    for j in range(order + 1):
        if j > n:
            out.append(np.zeros_like(np.asarray(t, dtype=float)))
        else:
            sign = -1.0 if j % 2 else 1.0
            out.append(sign * laguerre_value(n - j, alpha + j, t))
    return out


def normalization_constant(spec: SystemSpec, n: int) -> float:
    """Positive constant giving unit norm under the system's inner product
    (weight dx for oscillator-like systems, dx/x for hydrogen-like)."""
    idx = angular_index(spec).value
    if spec.kind.oscillator_like:
        log_sq = math.log(2.0) + math.lgamma(n + 1) - math.lgamma(n + idx + 1)
    else:
        two_c = 2.0 * float(spec.coupling)
        log_sq = ((2 * idx + 1) * math.log(two_c)
                  + math.lgamma(n + 1) - math.lgamma(n + 2 * idx + 1))
    return math.exp(0.5 * log_sq)


@dataclass(frozen=True)
class Eigenfunction:
    """Analytic radial eigenstate with closed-form derivatives.

    ``eval(x, order)`` returns a (order+1, len(x)) stack of U, U', ... at
    the points x > 0; the default order 2 is what applying one generator
    needs, order 4 allows one composed application.
    """

    spec: SystemSpec
    n: int
    norm: float

    @property
    def index(self) -> float:
        return angular_index(self.spec).value

    @property
    def levels(self) -> LevelParams:
        return level(self.spec, self.n)

    def eval(self, x, order: int = 2) -> np.ndarray:
        if order < 0 or order > 4:
            raise ValueError("derivative order must be between 0 and 4")
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0):
            raise ValueError("eigenfunctions are evaluated only at x > 0")
        idx = self.index
        a = idx + 0.5
        sign = -1.0 if self.n % 2 else 1.0
        scale = sign * self.norm

        # power factor x^a
        pow_stack = []
        ff = 1.0
        for k in range(order + 1):
            pow_stack.append(ff * x ** (a - k))
            ff *= a - k

        if self.spec.kind.oscillator_like:
            gauss = np.exp(-0.5 * x * x)
            exp_stack = [gauss]
            for k in range(order):
                nxt = -(x * exp_stack[k] + (k * exp_stack[k - 1] if k else 0.0))
                exp_stack.append(nxt)
            lag = _laguerre_derivative_stack(self.n, idx, x * x, order)
            poly_stack = _compose_square_argument(lag, x, order)
        else:
            c = float(self.spec.coupling)
            decay = np.exp(-c * x)
            exp_stack = [((-c) ** k) * decay for k in range(order + 1)]
            lag = _laguerre_derivative_stack(self.n, 2 * idx, 2 * c * x, order)
            poly_stack = [((2 * c) ** k) * lag[k] for k in range(order + 1)]

        out = np.empty((order + 1,) + x.shape, dtype=float)
        for j in range(order + 1):
            acc = np.zeros_like(x)
            for i in range(j + 1):
                for k in range(j - i + 1):
                    l = j - i - k
                    m = math.factorial(j) // (math.factorial(i) * math.factorial(k)
                                              * math.factorial(l))
                    acc += m * pow_stack[i] * exp_stack[k] * poly_stack[l]
            out[j] = scale * acc
        return out

    def __call__(self, x) -> np.ndarray:
        return self.eval(x, order=0)[0]


def _compose_square_argument(lag: list, x: np.ndarray, order: int) -> list:
    """Derivatives in x of P(x^2) from derivatives of P in its argument."""
    stack = [lag[0]]
    if order >= 1:
        stack.append(2.0 * x * lag[1])
    if order >= 2:
        stack.append(2.0 * lag[1] + 4.0 * x * x * lag[2])
    if order >= 3:
        stack.append(12.0 * x * lag[2] + 8.0 * x ** 3 * lag[3])
    if order >= 4:
        stack.append(12.0 * lag[2] + 48.0 * x * x * lag[3] + 16.0 * x ** 4 * lag[4])
    return stack


def eigenfunction(spec: SystemSpec, n: int) -> Eigenfunction:
    """Normalized analytic eigenstate n of the given system."""
    if n < 0:
        raise ValueError("level number n must be >= 0")
    return Eigenfunction(spec=spec, n=n, norm=normalization_constant(spec, n))
