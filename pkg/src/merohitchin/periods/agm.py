"""Complete elliptic integrals via the arithmetic-geometric mean."""

from __future__ import annotations

import math


def agm(a: float, b: float, tol: float = 1e-16) -> float:
    if a < 0 or b < 0:
        raise ValueError("AGM defined here for non-negative arguments")
    for _ in range(64):
        if abs(a - b) <= tol * max(a, b):
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def agm_elliptic_K(k: float) -> float:
    """``K(k) = int_0^1 dt / sqrt((1 - t^2)(1 - k^2 t^2))`` (modulus convention)."""
    if not 0 <= k < 1:
        raise ValueError("elliptic modulus must satisfy 0 <= k < 1")
    return math.pi / (2 * agm(1.0, math.sqrt(1 - k * k)))
