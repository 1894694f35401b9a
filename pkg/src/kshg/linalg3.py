"""Fixed-shape complex linear algebra for qutrits.

Rays (unit complex 3-vectors), 3x3 Hermitian matrices, and an eigensolver
based on cyclic complex plane rotations. Everything is immutable after
construction and every function is pure, so concurrent use needs no locking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ValidationError

NORM_TOLERANCE = 1e-6
HERMITICITY_TOLERANCE = 1e-12

_OFFDIAG_TARGET = 1e-14
_MAX_SWEEPS = 60
_PAIRS = ((0, 1), (0, 2), (1, 2))


def _as_complex3(values) -> np.ndarray:
    arr = np.asarray(values, dtype=np.complex128)
    if arr.shape != (3,):
        raise ValidationError(f"expected 3 complex amplitudes, got shape {arr.shape}")
    return arr


class Ray:
    """A normalized complex 3-vector: a qutrit pure state up to global phase.

    The constructor tolerates text-format rounding: vectors whose norm is
    within 1e-6 of 1 are renormalized, anything farther off is rejected so
    bad data never slips through silently. Use :meth:`normalized` to build a
    ray from an arbitrary nonzero vector.
    """

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes) -> None:
        arr = _as_complex3(amplitudes)
        norm = float(np.linalg.norm(arr))
        if not math.isfinite(norm) or abs(norm - 1.0) >= NORM_TOLERANCE:
            raise ValidationError(
                f"ray norm {norm:.9g} deviates from 1 by {abs(norm - 1.0):.3g} "
                f"(limit {NORM_TOLERANCE}); normalize explicitly if intended"
            )
        arr = arr / norm
        arr.setflags(write=False)
        self.amplitudes = arr

    @classmethod
    def normalized(cls, amplitudes) -> "Ray":
        """Build a ray from any nonzero vector, normalizing it first."""
        arr = _as_complex3(amplitudes)
        norm = float(np.linalg.norm(arr))
        if norm <= 0.0 or not math.isfinite(norm):
            raise ValidationError("cannot normalize a zero or non-finite vector")
        return cls(arr / norm)

    def __repr__(self) -> str:
        a, b, c = self.amplitudes
        return f"Ray(({a:.6g}, {b:.6g}, {c:.6g}))"


class Hermitian3:
    """A 3x3 complex matrix equal to its conjugate transpose within 1e-12."""

    __slots__ = ("matrix",)

    def __init__(self, matrix) -> None:
        arr = np.asarray(matrix, dtype=np.complex128)
        if arr.shape != (3, 3):
            raise ValidationError(f"expected a 3x3 matrix, got shape {arr.shape}")
        deviation = float(np.max(np.abs(arr - arr.conj().T)))
        if deviation > HERMITICITY_TOLERANCE:
            raise ValidationError(
                f"matrix deviates from Hermitian symmetry by {deviation:.3e} "
                f"(limit {HERMITICITY_TOLERANCE})"
            )
        arr = arr.copy()
        arr.setflags(write=False)
        self.matrix = arr

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def __repr__(self) -> str:
        return f"Hermitian3(trace={self.trace():.6g})"


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues sorted ascending with matching eigenvector rays."""

    eigenvalues: tuple[float, float, float]
    eigenvectors: tuple[Ray, Ray, Ray]


def overlap(a: Ray, b: Ray) -> float:
    """Magnitude of the Hermitian inner product, in [0, 1].

    Symmetric in its arguments and invariant under independent global phases
    on either ray.
    """
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)))


def projector(r: Ray) -> Hermitian3:
    """Rank-1 projector onto the ray: idempotent, trace 1."""
    v = r.amplitudes
    return Hermitian3(np.outer(v, v.conj()))


def projector_sum(rays: Iterable[Ray]) -> Hermitian3:
    """Entrywise sum of the rank-1 projectors of the given rays."""
    total = np.zeros((3, 3), dtype=np.complex128)
    count = 0
    for r in rays:
        v = r.amplitudes
        total += np.outer(v, v.conj())
        count += 1
    if count == 0:
        raise ValidationError("projector_sum needs at least one ray: no vertices are bound to rays")
    return Hermitian3(total)


def eigensystem(m: Hermitian3) -> EigenDecomposition:
    """Diagonalize a 3x3 Hermitian matrix by cyclic complex plane rotations.

    Sweeps run until the off-diagonal norm drops below 1e-14 relative to the
    matrix scale, which keeps eigenpair residuals well inside the 1e-12
    contract at double precision.
    """
    a = np.array(m.matrix, dtype=np.complex128)
    a = (a + a.conj().T) / 2.0
    v = np.eye(3, dtype=np.complex128)
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(_MAX_SWEEPS):
        off = math.sqrt(abs(a[0, 1]) ** 2 + abs(a[0, 2]) ** 2 + abs(a[1, 2]) ** 2)
        if off <= _OFFDIAG_TARGET * scale:
            break
        for p, q in _PAIRS:
            z = a[p, q]
            r = abs(z)
            if r <= _OFFDIAG_TARGET * scale / 100.0:
                continue
            phase = z / r
            tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
            if tau == 0.0:
                t = 1.0
            else:
                t = -math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
            c = 1.0 / math.hypot(1.0, t)
            s = t * c
            u = np.eye(3, dtype=np.complex128)
            u[p, p] = c
            u[q, q] = c
            u[p, q] = -s * phase
            u[q, p] = s * np.conj(phase)
            a = u.conj().T @ a @ u
            v = v @ u
        a = (a + a.conj().T) / 2.0
    order = np.argsort(a.diagonal().real, kind="stable")
    eigenvalues = tuple(float(a[k, k].real) for k in order)
    eigenvectors = tuple(Ray(v[:, k]) for k in order)
    return EigenDecomposition(eigenvalues, eigenvectors)  # type: ignore[arg-type]
