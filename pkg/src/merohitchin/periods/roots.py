"""Simultaneous complex root finding (Aberth-Ehrlich iteration)."""

from __future__ import annotations

import cmath
import math

from ..algebra.poly import ExactPoly, is_squarefree


class RootFindingError(ArithmeticError):
    pass


def _horner2(coeffs: list[complex], z: complex) -> tuple[complex, complex]:
    """``p(z), p'(z)`` for coefficients given high-to-low."""
    p = 0j
    dp = 0j
    for a in coeffs:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def _abs_eval(coeffs: list[complex], r: float) -> float:
    acc = 0.0
    for a in coeffs:
        acc = acc * r + abs(a)
    return acc


def complex_roots(p: ExactPoly, tol: float = 1e-12, max_iter: int = 500) -> list[complex]:
    """All roots of a squarefree ``p``, sorted by (real, imag).

    Each root satisfies ``|p(r)| <= tol * sum|a_i||r|^i`` (relative backward error).
    Initial guesses sit on a circle of the Cauchy radius with a fixed angular offset,
    so the result is deterministic.
    """
    n = p.degree
    if n < 1:
        raise ValueError("degree too small")
    if not is_squarefree(p):
        raise ValueError("complex_roots expects a squarefree polynomial")
    lc = float(p.lc)
    hi = [complex(float(c) / lc) for c in reversed(p.coeffs)]
    if n == 1:
        return [-hi[1]]
    radius = 1 + max(abs(a) for a in hi[1:])
    # tighten with the geometric mean of |a_n| (product of roots)
    radius = min(radius, 2 * max(abs(hi[k]) ** (1.0 / k) for k in range(1, n + 1)) + 1e-3)
    z = [radius * 0.5 * cmath.exp(1j * (2 * math.pi * k / n + 0.4)) for k in range(n)]
    converged = [False] * n
    for it in range(max_iter):
        for k in range(n):
            if converged[k]:
                continue
            pk, dpk = _horner2(hi, z[k])
            if pk == 0:
                converged[k] = True
                continue
            ratio = pk / dpk if dpk != 0 else pk
            s = sum(1.0 / (z[k] - z[j]) for j in range(n) if j != k)
            corr = ratio / (1 - ratio * s)
            z[k] -= corr
            if abs(corr) <= 1e-15 * max(1.0, abs(z[k])):
                converged[k] = True
        if all(converged):
            break
    # Newton polish
    for k in range(n):
        for _ in range(3):
            pk, dpk = _horner2(hi, z[k])
            if dpk == 0:
                break
            z[k] -= pk / dpk
    bad = []
    for k in range(n):
        pk, _ = _horner2(hi, z[k])
        scale = _abs_eval(hi, abs(z[k]))
        if not (math.isfinite(z[k].real) and math.isfinite(z[k].imag)) or abs(pk) > tol * scale:
            bad.append((z[k], abs(pk) / scale if scale else float("inf")))
    if bad:
        raise RootFindingError(
            f"Aberth iteration did not converge after {max_iter} steps; "
            f"worst relative residuals: {[f'{r:.3g}' for _, r in bad]}"
        )
    return sorted(z, key=lambda c: (round(c.real, 12), c.imag))
