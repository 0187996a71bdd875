"""Dormand-Prince 5(4) integrator with a PI step-size controller.

Kept deliberately small: the state is a numpy vector, every accepted step is
reported, and the caller decides what to do with it. Local extrapolation
(the 5th-order solution is propagated).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import StepFailure

# Dormand & Prince (1980) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)
_E = _B5 - _B4

_SAFETY = 0.9
_ALPHA = 0.7 / 5  # PI gains after Gustafsson / Hairer-Wanner
_BETA = 0.4 / 5
_MIN_FACTOR, _MAX_FACTOR = 0.2, 5.0


def dopri54(rhs, t0, y0, t_end, rtol=1e-10, atol=1e-10, h0=None, max_steps=200_000):
    """Integrate y' = rhs(t, y) from t0 to t_end.

    Returns (ts, ys): the accepted step times (t0 first, t_end last) and the
    states there. Raises StepFailure if the step underflows or the step
    budget runs out. Exceptions from ``rhs`` propagate.
    """
    y = np.array(y0, dtype=float)
    t = float(t0)
    span = float(t_end) - t
    if span <= 0:
        raise ValueError("t_end must exceed t0")
    ts, ys = [t], [y.copy()]
    k = np.empty((7, y.size))
    k[0] = rhs(t, y)

    if h0 is None:
        scale = atol + rtol * np.abs(y)
        d0 = np.sqrt(np.mean((y / scale) ** 2))
        d1 = np.sqrt(np.mean((k[0] / scale) ** 2))
        h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    h = min(float(h0), span)
    err_prev = 1e-4
    steps = 0

    while t < t_end:
        if steps >= max_steps:
            raise StepFailure(f"step budget {max_steps} exhausted at t = {t}")
        last = t + h >= t_end
        if last:
            h = t_end - t
        for s in range(1, 7):
            ys_stage = y + h * np.dot(_A[s], k[:s])
            k[s] = rhs(t + _C[s] * h, ys_stage)
        y_new = y + h * np.dot(_B5, k)
        err_vec = h * np.dot(_E, k)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = math.sqrt(float(np.mean((err_vec / scale) ** 2)))

        if err <= 1.0:
            t = t_end if last else t + h
            y = y_new
            ts.append(t)
            ys.append(y.copy())
            k[0] = k[6]  # FSAL
            steps += 1
            if err == 0.0:
                factor = _MAX_FACTOR
            else:
                factor = _SAFETY * err**-_ALPHA * err_prev**_BETA
                factor = min(_MAX_FACTOR, max(_MIN_FACTOR, factor))
            err_prev = max(err, 1e-4)
            h *= factor
        else:
            h *= max(_MIN_FACTOR, _SAFETY * err**-_ALPHA)
        if h < 1e-14 * max(1.0, abs(t)):
            raise StepFailure(f"step size underflow (h = {h:.3g}) at t = {t}")
    return np.array(ts), np.array(ys)
