"""Matrix loops: finite Laurent polynomials dressed with scalar root factors.

A loop is stored as a dict of 2x2 Laurent coefficients together with a list
of symbolic scalar factors (1 - c lam^-2)^s or (1 - c lam^2)^s, s in
{-1, -1/2, 1/2, 1}.  Factors are never expanded into truncated series; they
are evaluated exactly on the unit circle with a fixed branch convention and
carried through products symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SINGULAR_MODULUS_TOL = 1e-12

ALLOWED_POWERS = (-1.0, -0.5, 0.5, 1.0)


class SingularLoopError(ValueError):
    """A root factor has |c| = 1: the loop degenerates on the circle."""


@dataclass(frozen=True)
class Factor:
    """Scalar factor (1 - c lam^-2)^s for kind 'inner', (1 - c lam^2)^s for 'outer'."""

    kind: str
    c: complex
    s: float

    def __post_init__(self):
        if self.kind not in ("inner", "outer"):
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if self.s not in ALLOWED_POWERS:
            raise ValueError(f"unsupported factor power {self.s!r}")

    def inverse(self) -> "Factor":
        return Factor(self.kind, self.c, -self.s)


@dataclass
class LoopMatrix:
    """2x2 matrix loop: (product of scalar factors) * (finite Laurent poly)."""

    coeffs: dict = field(default_factory=dict)
    factors: list = field(default_factory=list)

    def copy(self) -> "LoopMatrix":
        return LoopMatrix({k: v.copy() for k, v in self.coeffs.items()}, list(self.factors))

    def bandwidth(self) -> int:
        if not self.coeffs:
            return 0
        return max(abs(k) for k in self.coeffs)

    def support(self):
        return sorted(self.coeffs)


def identity_loop() -> LoopMatrix:
    return LoopMatrix({0: np.eye(2, dtype=complex)})


def loop_from_poly(coeffs: dict) -> LoopMatrix:
    return LoopMatrix({int(k): np.asarray(v, dtype=complex) for k, v in coeffs.items()})


def _principal_power(base, s):
    # principal branch; base never touches the cut for |argument factor| < 1
    return np.exp(s * np.log(base))


def factor_values(f: Factor, lam) -> np.ndarray:
    """Evaluate a scalar factor on unit-circle points.

    |c| < 1: pointwise principal power (no cut crossing on the circle).
    |c| > 1: rewrite (1 - c x)^s = sigma (-c)^s x^s (1 - x^-1/c)^s with the
    small-modulus part principal and sigma in {-1, +1} chosen so the value at
    lam = 1 is the principal one.  x^s is an integer power of lam since
    2s is an integer.
    """
    lam = np.asarray(lam, dtype=complex)
    c, s = f.c, f.s
    if c == 0:
        return np.ones_like(lam)
    mod = abs(c)
    if abs(mod - 1.0) < SINGULAR_MODULUS_TOL:
        raise SingularLoopError(f"factor modulus |c| = {mod} on the unit circle")
    x = lam ** (-2) if f.kind == "inner" else lam**2
    if mod < 1.0:
        return _principal_power(1.0 - c * x, s)
    sigma = _principal_power(1.0 - c, s) / (
        _principal_power(-c, s) * _principal_power(1.0 - 1.0 / c, s)
    )
    sigma = round(sigma.real)
    if sigma not in (-1, 1):
        raise ArithmeticError("branch sign normalization failed")
    head = sigma * _principal_power(-c, s)
    mono = lam ** (-2 * s) if f.kind == "inner" else lam ** (2 * s)
    return head * mono * _principal_power(1.0 - x ** (-1) / c, s)


def factor_log_t_derivative(f: Factor, lam) -> np.ndarray:
    """d/dt log of the factor along lam = exp(i t); branch free."""
    lam = np.asarray(lam, dtype=complex)
    c, s = f.c, f.s
    if f.kind == "inner":
        w = c * lam ** (-2)
        return 2j * s * w / (1.0 - w)
    w = c * lam**2
    return -2j * s * w / (1.0 - w)


def scalar_values(factors, lam) -> np.ndarray:
    lam = np.asarray(lam, dtype=complex)
    out = np.ones_like(lam)
    for f in factors:
        out = out * factor_values(f, lam)
    return out


def poly_evaluate(coeffs: dict, lam) -> np.ndarray:
    lam = np.asarray(lam, dtype=complex)
    out = np.zeros(lam.shape + (2, 2), dtype=complex)
    for k, a in coeffs.items():
        out += (lam**k)[..., None, None] * a
    return out


def loop_evaluate(loop: LoopMatrix, lam) -> np.ndarray:
    """Evaluate the loop at unit-circle points; shape (..., 2, 2)."""
    vals = poly_evaluate(loop.coeffs, lam)
    if loop.factors:
        vals = scalar_values(loop.factors, lam)[..., None, None] * vals
    return vals


def poly_multiply(a: dict, b: dict) -> dict:
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            prod = va @ vb
            if k in out:
                out[k] = out[k] + prod
            else:
                out[k] = prod
    return out


def loop_multiply(a: LoopMatrix, b: LoopMatrix) -> LoopMatrix:
    """Pointwise product a(lam) b(lam); factors concatenate."""
    return LoopMatrix(poly_multiply(a.coeffs, b.coeffs), list(a.factors) + list(b.factors))


def loop_t_derivative(loop: LoopMatrix, lam) -> np.ndarray:
    """d/dt of the loop along lam = exp(i t), evaluated at circle points."""
    lam = np.asarray(lam, dtype=complex)
    dpoly = np.zeros(lam.shape + (2, 2), dtype=complex)
    for k, a in loop.coeffs.items():
        dpoly += (1j * k * lam**k)[..., None, None] * a
    vals = loop_evaluate(loop, lam)
    if not loop.factors:
        return dpoly
    logd = np.zeros_like(lam)
    for f in loop.factors:
        logd = logd + factor_log_t_derivative(f, lam)
    scal = scalar_values(loop.factors, lam)
    return logd[..., None, None] * vals + scal[..., None, None] * dpoly


def det_values(loop: LoopMatrix, lam) -> np.ndarray:
    return np.linalg.det(loop_evaluate(loop, lam))


def circle_grid(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


def grid_size_for(bandwidth: int, minimum: int = 32) -> int:
    n = minimum
    while n < 8 * max(bandwidth, 1):
        n *= 2
    return n


def poly_from_samples(values: np.ndarray, drop_tol: float = 0.0):
    """Inverse FFT of circle samples into a coefficient dict.

    Frequencies above n/2 are interpreted as negative.  Returns (coeffs,
    dropped) where dropped is the largest coefficient magnitude discarded by
    drop_tol; aliasing is the caller's responsibility (take n > support width).
    """
    n = values.shape[0]
    hat = np.fft.ifft(values, axis=0)
    half = n // 2
    coeffs = {}
    dropped = 0.0
    for m in range(n):
        k = m if m <= half else m - n
        a = hat[m]
        mag = float(np.max(np.abs(a)))
        if mag > drop_tol:
            coeffs[k] = np.ascontiguousarray(a)
        else:
            dropped = max(dropped, mag)
    return coeffs, dropped


def trim_poly(coeffs: dict, tol: float) -> dict:
    scale = max((float(np.max(np.abs(a))) for a in coeffs.values()), default=0.0)
    cut = tol * max(scale, 1.0)
    out = {k: a for k, a in coeffs.items() if float(np.max(np.abs(a))) > cut}
    if not out:
        out = {0: np.zeros((2, 2), dtype=complex)}
    return out


def poly_conj_transpose(coeffs: dict) -> dict:
    """Coefficients of lam -> A(lam)^H on the unit circle."""
    return {-k: a.conj().T for k, a in coeffs.items()}


def is_twisted(coeffs: dict, tol: float = 1e-10) -> bool:
    """Diagonal entries on even powers, off-diagonal on odd powers."""
    scale = max((float(np.max(np.abs(a))) for a in coeffs.values()), default=1.0)
    for k, a in coeffs.items():
        if k % 2 == 0:
            bad = max(abs(a[0, 1]), abs(a[1, 0]))
        else:
            bad = max(abs(a[0, 0]), abs(a[1, 1]))
        if bad > tol * max(scale, 1.0):
            return False
    return True


def unitarity_defect(loop: LoopMatrix, n: int = 256) -> float:
    vals = loop_evaluate(loop, circle_grid(n))
    gram = vals @ np.conj(np.swapaxes(vals, -1, -2))
    return float(np.max(np.abs(gram - np.eye(2))))


def max_abs(coeffs: dict) -> float:
    return max((float(np.max(np.abs(a))) for a in coeffs.values()), default=0.0)
