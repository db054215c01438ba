"""Quaternions as real 4-vectors and as 2x2 complex matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

QUATERNION_TYPE_TOL = 1e-12


@dataclass(frozen=True)
class Quaternion:
    """Quaternion w + x i + y j + z k with real components."""

    w: float
    x: float
    y: float
    z: float

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        return quat_mul(self, other)

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return float(np.sqrt(self.w**2 + self.x**2 + self.y**2 + self.z**2))

    def vector(self):
        return np.array([self.x, self.y, self.z])


def quat_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product, with i j = k."""
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def quat_matrix_embed(q: Quaternion) -> np.ndarray:
    """Embed as [[w - i z, -i x - y], [-i x + y, w + i z]].

    The embedding is an algebra homomorphism onto matrices of the shape
    [[p, q], [-conj(q), conj(p)]]; det equals the squared norm and half the
    trace equals the real part.
    """
    w, x, y, z = q.w, q.x, q.y, q.z
    return np.array(
        [[w - 1j * z, -1j * x - y], [-1j * x + y, w + 1j * z]],
        dtype=complex,
    )


def is_quaternion_type(m: np.ndarray, tol: float = QUATERNION_TYPE_TOL) -> bool:
    """True when m = [[a, b], [-conj(b), conj(a)]] within tol."""
    scale = max(1.0, float(np.max(np.abs(m))))
    return (
        abs(m[1, 1] - np.conj(m[0, 0])) <= tol * scale
        and abs(m[1, 0] + np.conj(m[0, 1])) <= tol * scale
    )


def quat_from_matrix(m: np.ndarray, tol: float = QUATERNION_TYPE_TOL) -> Quaternion:
    """Invert the embedding; raises ValueError off the quaternionic locus."""
    if not is_quaternion_type(m, tol):
        raise ValueError("matrix is not of quaternion type")
    a, b = m[0, 0], m[0, 1]
    return Quaternion(float(a.real), float(-b.imag), float(-b.real), float(-a.imag))


def real_part(m: np.ndarray) -> float:
    """Real (scalar) part of an embedded quaternion: half the trace."""
    return float((m[0, 0] + m[1, 1]).real / 2.0)


def imag_vector(m: np.ndarray) -> np.ndarray:
    """Vector part (x, y, z) of an embedded quaternion."""
    a, b = m[0, 0], m[0, 1]
    return np.array([-b.imag, -b.real, -a.imag])


def embed_vector(v) -> np.ndarray:
    """Embed a point of R^3 as a pure imaginary quaternion matrix."""
    x, y, z = v
    return quat_matrix_embed(Quaternion(0.0, float(x), float(y), float(z)))
