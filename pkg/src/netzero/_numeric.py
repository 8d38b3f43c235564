"""Shared numerical primitives: ranks, resolvents, sampling, clustering."""

from __future__ import annotations

import numpy as np

EPS = float(np.finfo(np.float64).eps)

#: Relative residual above which a resolvent solve is declared "at a pole".
POLE_RESIDUAL_RTOL = 1e-6

#: Relative singular-value threshold for confirming a rank drop at a
#: candidate zero.  Candidates come from roots of an interpolated
#: determinant and carry ~1e-10 error, so the machine-precision threshold
#: of numeric_rank would never register the drop at a float candidate.
CONFIRM_RTOL = 1e-6

#: Relative radius for clustering nearly coincident roots.
CLUSTER_TOL = 1e-6


class PoleError(ArithmeticError):
    """Evaluation point is numerically indistinguishable from a pole."""

    def __init__(self, z: complex, nearest_pole: complex | None = None):
        self.z = z
        self.nearest_pole = nearest_pole
        msg = f"evaluation point {z} is at or near a pole"
        if nearest_pole is not None:
            msg += f" (nearest eigenvalue {nearest_pole})"
        super().__init__(msg)


class SamplingError(RuntimeError):
    """Every sampling point hit a pole; no rank information obtained."""


def as_matrix(x, name: str) -> np.ndarray:
    """Coerce to a finite 2-D float array, raising with the field name."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-D matrix, got {arr.ndim} dimensions")
    if arr.size == 0:
        raise ValueError(f"{name} must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def as_column(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    return as_matrix(arr, name)


def as_row(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return as_matrix(arr, name)


def frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, copy=True)
    out.flags.writeable = False
    return out


def numeric_rank(M: np.ndarray, rtol: float | None = None) -> int:
    """Numerical rank by SVD.

    The default threshold is ``max(shape) * eps * sigma_max``, the usual
    convention for rank decisions on data known to machine precision.
    """
    M = np.atleast_2d(np.asarray(M))
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    if rtol is None:
        rtol = max(M.shape) * EPS
    return int(np.sum(s > rtol * s[0]))


def spectral_radius(A: np.ndarray) -> float:
    A = np.atleast_2d(np.asarray(A))
    if A.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(A))))


def nearest_eigenvalue(A: np.ndarray, z: complex) -> complex:
    eigs = np.linalg.eigvals(np.asarray(A))
    return complex(eigs[int(np.argmin(np.abs(eigs - z)))])


def resolvent_solve(A: np.ndarray, B: np.ndarray, z: complex) -> np.ndarray:
    """Solve ``(zI - A) X = B``, raising PoleError at ill-conditioned z."""
    A = np.asarray(A)
    n = A.shape[0]
    M = z * np.eye(n) - A
    rhs = np.asarray(B, dtype=complex)
    try:
        X = np.linalg.solve(M, rhs)
    except np.linalg.LinAlgError:
        raise PoleError(z, nearest_eigenvalue(A, z)) from None
    residual = np.linalg.norm(M @ X - rhs)
    scale = max(np.linalg.norm(rhs), EPS)
    if not np.all(np.isfinite(X)) or residual > POLE_RESIDUAL_RTOL * scale:
        raise PoleError(z, nearest_eigenvalue(A, z))
    return X


def transfer_eval(A, B, C, D, z: complex) -> np.ndarray:
    """Evaluate ``D + C (zI - A)^{-1} B`` as a dense complex matrix."""
    X = resolvent_solve(A, B, z)
    return np.asarray(D, dtype=complex) + np.asarray(C, dtype=complex) @ X


def sample_circle(radius: float, count: int, seed: int) -> np.ndarray:
    """Seeded pseudo-random points on the circle of the given radius."""
    rng = np.random.default_rng(seed)
    angles = rng.uniform(0.0, 2.0 * np.pi, size=count)
    return radius * np.exp(1j * angles)


def cluster_points(points, tol: float = CLUSTER_TOL) -> list[tuple[complex, int]]:
    """Greedy clustering of complex points into (center, multiplicity) pairs.

    Two points share a cluster when within ``tol * (1 + |center|)`` of the
    running cluster mean.  Output is sorted by (real, imag).
    """
    clusters: list[list[complex]] = []
    for z in sorted((complex(p) for p in points), key=lambda w: (w.real, w.imag)):
        for members in clusters:
            center = sum(members) / len(members)
            if abs(z - center) <= tol * (1.0 + abs(center)):
                members.append(z)
                break
        else:
            clusters.append([z])
    out = []
    for members in clusters:
        center = sum(members) / len(members)
        out.append((complex(center), len(members)))
    out.sort(key=lambda cm: (cm[0].real, cm[0].imag))
    return out


def sort_complex(points) -> tuple[complex, ...]:
    return tuple(sorted((complex(p) for p in points), key=lambda z: (z.real, z.imag)))
