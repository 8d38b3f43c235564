"""Invariant-zero engine for state-space quadruples via the system pencil.

A finite zero of the quadruple ``(A, B, C, D)`` is a point ``z0`` where the
pencil

    Pi(z) = [[zI - A, -B],
             [C,       D]]

drops below its normal rank (the maximal rank over the complex plane).
Zeros at infinity are flagged by comparing ``rank D`` against the normal
rank of the transfer function.  Zeros are always extracted from the pencil,
never from a reduced transfer function: cancellations in the transfer
function can hide genuine pencil rank drops (unreachable or unobservable
modes), and those count as zeros here.

Algorithm: for square pencils of full normal rank the determinant is
interpolated on a scaled circle of roots of unity and its roots are the
candidates.  Non-square pencils are squared down by a seeded random
compression of the output (or input) side, twice independently, and only
candidates present in both draws survive.  Every candidate must finally be
confirmed by an SVD rank drop on the original pencil.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from ._numeric import (
    CLUSTER_TOL,
    CONFIRM_RTOL,
    EPS,
    PoleError,
    SamplingError,
    as_matrix,
    cluster_points,
    numeric_rank,
    sample_circle,
    sort_complex,
    spectral_radius,
    transfer_eval,
)

__all__ = [
    "ZeroReport",
    "ZeroDiagnostics",
    "ZeroConfirmation",
    "MatchResult",
    "DegenerateSystemError",
    "system_pencil",
    "normal_rank",
    "invariant_zeros",
    "has_infinite_zero",
    "rank_at",
    "match_zero_multisets",
]

#: Trailing determinant coefficients below this fraction of the largest
#: coefficient are discarded when fixing the interpolated degree.
DET_TRIM_RTOL = 1e-8

#: Agreement tolerance between two independent square-down draws.  This is
#: a coarse pre-filter (a badly conditioned draw can misplace its roots by
#: far more than the cluster tolerance); the SVD rank confirmation on the
#: original pencil is the final arbiter.
INTERSECT_RTOL = 1e-3

_RADIUS_GROWTH = 1.61803398875


class DegenerateSystemError(ValueError):
    """The pencil has no usable rank structure (normal rank below the state rows)."""


@dataclass(frozen=True)
class ZeroConfirmation:
    """Rank-drop record for one reported zero cluster."""

    z: complex
    multiplicity: int
    rank: int
    normal_rank: int
    sigma_ratio: float
    confirmed: bool


@dataclass(frozen=True)
class ZeroDiagnostics:
    method: str  # "determinant" | "square-down" | "compression" | "h-preimage" | "circulant"
    det_degree: int
    seed: int
    cluster_tol: float
    multiplicities_heuristic: bool = True
    confirmations: tuple[ZeroConfirmation, ...] = ()
    rejected: tuple[complex, ...] = ()
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class ZeroReport:
    """Finite zeros (multiset), normal ranks and infinite/origin flags."""

    finite_zeros: tuple[complex, ...]
    normal_rank_pencil: int
    normal_rank_tf: int
    has_infinite_zero: bool
    has_origin_zero: bool
    diagnostics: ZeroDiagnostics

    def zero_clusters(self) -> list[tuple[complex, int]]:
        """Clustered (zero, multiplicity) view of the finite-zero multiset."""
        return cluster_points(self.finite_zeros, self.diagnostics.cluster_tol)


def system_pencil(A, B, C, D, z: complex) -> np.ndarray:
    """Evaluate ``[[zI - A, -B], [C, D]]`` at z."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    top = np.hstack([z * np.eye(n) - A, -np.asarray(B, dtype=float)])
    bottom = np.hstack([np.asarray(C, dtype=float), np.asarray(D, dtype=float)])
    return np.vstack([top.astype(complex), bottom.astype(complex)])


def normal_rank(eval_fn, samples: int = 7, seed: int = 0, radius: float = 2.0) -> int:
    """Maximal numerical rank of a matrix function over sampled points.

    Points are drawn pseudo-randomly (seeded, hence deterministic) on a
    circle of the given radius.  Points where ``eval_fn`` raises
    :class:`PoleError` are skipped; if every point of a sweep hits a pole
    the radius is grown and the sweep retried, and :class:`SamplingError`
    is raised once the retries are exhausted.
    """
    if samples < 3:
        raise ValueError("samples must be at least 3")
    for attempt in range(5):
        pts = sample_circle(radius * _RADIUS_GROWTH**attempt, samples, seed + attempt)
        ranks = []
        for z in pts:
            try:
                ranks.append(numeric_rank(eval_fn(z)))
            except PoleError:
                continue
        if ranks:
            return max(ranks)
    raise SamplingError("all sampling points hit poles; no rank information obtained")


def _coerce_quadruple(A, B, C, D):
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    C = as_matrix(C, "C")
    D = as_matrix(D, "D")
    n = A.shape[0]
    if A.shape[1] != n:
        raise ValueError(f"A must be square, got {A.shape[0]}x{A.shape[1]}")
    if B.shape[0] != n:
        raise ValueError(f"B must have {n} rows, got {B.shape[0]}")
    if C.shape[1] != n:
        raise ValueError(f"C must have {n} columns, got {C.shape[1]}")
    if D.shape != (C.shape[0], B.shape[1]):
        raise ValueError(
            f"D must be {C.shape[0]}x{B.shape[1]}, got {D.shape[0]}x{D.shape[1]}"
        )
    return A, B, C, D


def _normal_ranks(A, B, C, D, samples: int, seed: int) -> tuple[int, int]:
    """Sampled normal ranks of the pencil and of the transfer function.

    Pointwise, rank Pi(z) = n + rank Gamma(z) away from the spectrum, so
    each sampled rank is a lower bound for the same quantity; the two
    estimates are reconciled through that identity by taking the max.
    """
    n = A.shape[0]
    radius = 1.0 + spectral_radius(A)
    pencil_rank = max(
        numeric_rank(system_pencil(A, B, C, D, z))
        for z in sample_circle(radius, samples, seed)
    )
    tf_rank = normal_rank(
        lambda z: transfer_eval(A, B, C, D, z), samples=samples, seed=seed, radius=radius
    )
    r_pencil = max(pencil_rank, n + tf_rank)
    return r_pencil, r_pencil - n


def _affine_det_coeffs(E, F, radius: float, num_nodes: int, real_input: bool):
    """Ascending coefficients of ``det(zE + F)`` by interpolation.

    Evaluates the determinant at ``num_nodes`` roots of unity scaled to the
    given radius and recovers the coefficients with a discrete Fourier
    transform; trailing coefficients below ``DET_TRIM_RTOL`` of the largest
    are trimmed.  Returns None when the determinant vanishes identically
    (within noise).
    """
    K = num_nodes
    nodes = radius * np.exp(2j * np.pi * np.arange(K) / K)
    vals = np.array([np.linalg.det(z * E + F) for z in nodes])
    if not np.all(np.isfinite(vals)):
        return None
    scale = float(np.max(np.abs(vals)))
    if scale == 0.0:
        return None
    coeff = np.fft.fft(vals / scale) / K
    coeff = coeff * scale / radius ** np.arange(K)
    if real_input:
        coeff = coeff.real
    largest = float(np.max(np.abs(coeff)))
    if largest == 0.0:
        return None
    keep = np.flatnonzero(np.abs(coeff) > DET_TRIM_RTOL * largest)
    if keep.size == 0:
        return None
    return coeff[: keep[-1] + 1]


def _pencil_blocks(A, B, C, D):
    n, m = A.shape[0], B.shape[1]
    p = C.shape[0]
    E = np.zeros((n + p, n + m))
    E[:n, :n] = np.eye(n)
    F = np.block([[-A, -B], [C, D]])
    return E, F


def _polish_roots(roots: np.ndarray, det_fn, max_iter: int = 12) -> np.ndarray:
    """Newton-polish interpolated roots against fresh determinant values.

    Interpolated coefficients carry absolute noise ~eps * max|det| on the
    sampling circle, which misplaces roots far from the circle radius and
    splits multiple roots by the mu-th root of the noise.  Newton iteration
    on directly evaluated determinants (an exact polynomial up to roundoff)
    pulls every raw root back onto a true determinant root; split families
    then re-merge under clustering.
    """
    polished = []
    for start in roots:
        z = complex(start)
        fz = det_fn(z)
        best_z, best_f = z, abs(fz)
        for _ in range(max_iter):
            h = 1e-7 * (1.0 + abs(z))
            deriv = (det_fn(z + h) - det_fn(z - h)) / (2.0 * h)
            if deriv == 0 or not np.isfinite(deriv):
                break
            step = fz / deriv
            if not np.isfinite(step) or abs(step) > 0.5 * (1.0 + abs(z)):
                break
            z = z - step
            fz = det_fn(z)
            # near the evaluation noise floor |f| stops being monotone;
            # keep iterating on the step criterion and report the best seen
            if abs(fz) < best_f:
                best_z, best_f = z, abs(fz)
            if abs(step) <= 1e-14 * (1.0 + abs(z)):
                break
        # a root the circle resolved at all converges within its local
        # noise; a large travel marks a root this sweep cannot place (it
        # wandered into another root's basin), so it must not vote there
        if abs(best_z - complex(start)) <= 0.05 * (1.0 + abs(start)):
            polished.append(best_z)
    return np.array(polished, dtype=complex)


def _affine_root_multiset(E, F, primary_radius: float, num_nodes: int, cluster_tol: float):
    """Polished root multiset of ``det(zE + F)`` plus the detected degree.

    Interpolates on two circles (the primary norm-based radius plus the
    unit circle): each radius resolves roots of comparable magnitude well,
    and per-cluster multiplicity is the max count over the runs, so small
    and large roots are both recovered without double counting.  Returns
    None when the determinant vanishes identically.
    """
    det_fn = lambda z: complex(np.linalg.det(z * E + F))
    radii = [primary_radius] if abs(primary_radius - 1.0) < 0.5 else [primary_radius, 1.0]
    runs = []
    run_radii = []
    degree = None
    for rho in radii:
        coeffs = _affine_det_coeffs(E, F, rho, num_nodes, real_input=True)
        if coeffs is None:
            continue
        if degree is None and coeffs.size > 1:
            # near-degenerate leading coefficients push roots far outside
            # the sampling circle; add an outer sweep at the Cauchy bound
            cauchy = 1.0 + float(np.max(np.abs(coeffs[:-1])) / abs(coeffs[-1]))
            if cauchy > 3.0 * max(primary_radius, 1.0):
                radii.append(min(2.0 * cauchy, 1e9))
        degree = coeffs.size - 1 if degree is None else max(degree, coeffs.size - 1)
        raw = np.roots(coeffs[::-1]) if coeffs.size > 1 else np.array([], dtype=complex)
        runs.append(_polish_roots(raw, det_fn))
        run_radii.append(rho)
    if degree is None:
        return None
    if not runs:
        return [], 0
    if not any(run.size for run in runs):
        return [], degree
    union = np.concatenate(runs)
    # cross-run duplicates of one root can straddle the reporting tolerance
    # when polishing hits its noise floor; group them one decade coarser
    merge_tol = 10.0 * cluster_tol
    clusters = []
    for center, _ in cluster_points(union, merge_tol):
        members = [
            run[np.abs(run - center) <= merge_tol * (1.0 + abs(center))] for run in runs
        ]
        # trust the run whose radius best matches the root magnitude: that
        # circle resolves the location and the multiplicity there, while
        # the other sweeps merely corroborate existence
        scale = max(abs(center), 1e-12)
        order = sorted(range(len(runs)), key=lambda i: abs(np.log(scale / run_radii[i])))
        trusted = next((i for i in order if members[i].size > 0), None)
        if trusted is None:
            continue
        clusters.extend(cluster_points(members[trusted], cluster_tol))
    return clusters, degree


def _det_clusters(A, B, C, D, cluster_tol: float):
    n, m = A.shape[0], B.shape[1]
    p = C.shape[0]
    E, F = _pencil_blocks(A, B, C, D)
    radius = 1.0 + float(np.linalg.norm(A, "fro"))
    return _affine_root_multiset(E, F, radius, n + min(m, p) + 1, cluster_tol)


def _squaredown_clusters(A, B, C, D, cluster_tol: float, seed: int):
    rng = np.random.default_rng(seed)
    m, p = B.shape[1], C.shape[0]
    if p > m:
        W = rng.standard_normal((m, p))
        return _det_clusters(A, B, W @ C, W @ D, cluster_tol)
    V = rng.standard_normal((m, p))
    return _det_clusters(A, B @ V, C, D @ V, cluster_tol)


def _compression_clusters(A, B, C, D, r: int, cluster_tol: float, seed: int):
    """Candidates for pencils whose normal rank is below the square size.

    Any rank drop of the pencil forces ``det(U Pi(z) V) = 0`` for an
    r-by-r compression, so the compressed determinant's roots contain all
    true zeros; spurious roots are removed by the double draw plus the
    rank confirmation on the original pencil.
    """
    rng = np.random.default_rng(seed)
    n, m = A.shape[0], B.shape[1]
    p = C.shape[0]
    E, F = _pencil_blocks(A, B, C, D)
    U = rng.standard_normal((r, n + p))
    V = rng.standard_normal((n + m, r))
    radius = 1.0 + float(np.linalg.norm(A, "fro"))
    out = _affine_root_multiset(U @ E @ V, U @ F @ V, radius, min(n, r) + 2, cluster_tol)
    if out is None:
        return [], 0
    return out


def _candidate_clusters(A, B, C, D, r_pencil: int, seed: int, cluster_tol: float):
    """Clustered candidate zeros plus the interpolated determinant degree."""
    n, m = A.shape[0], B.shape[1]
    p = C.shape[0]
    full = n + min(m, p)

    if r_pencil == full and m == p:
        out = _det_clusters(A, B, C, D, cluster_tol)
        if out is not None:
            clusters, degree = out
            return clusters, degree, "determinant"
        # fall through: the determinant vanished despite full sampled rank
    if r_pencil == full and m != p:
        draws = [_squaredown_clusters(A, B, C, D, cluster_tol, seed + 11 * k + 1) for k in (0, 1)]
        method = "square-down"
        if any(d is None for d in draws):
            draws = [
                _compression_clusters(A, B, C, D, r_pencil, cluster_tol, seed + 17 * k + 3)
                for k in (0, 1)
            ]
            method = "compression"
    else:
        draws = [
            _compression_clusters(A, B, C, D, r_pencil, cluster_tol, seed + 17 * k + 3)
            for k in (0, 1)
        ]
        method = "compression"

    (clusters1, degree1), (clusters2, _) = draws
    centers2 = np.array([c for c, _ in clusters2], dtype=complex)
    clusters = []
    for center, mult in clusters1:
        if centers2.size and np.min(np.abs(centers2 - center)) <= INTERSECT_RTOL * (1.0 + abs(center)):
            clusters.append((center, mult))
    return clusters, degree1, method


def invariant_zeros(
    A,
    B,
    C,
    D,
    seed: int = 0,
    samples: int = 7,
    cluster_tol: float = CLUSTER_TOL,
) -> ZeroReport:
    """Finite invariant zeros, normal ranks, infinite- and origin-zero flags.

    Every reported zero carries a rank-drop confirmation on the original
    pencil; clustered multiplicities are an engineering convention and are
    flagged as heuristic in the diagnostics.
    """
    A, B, C, D = _coerce_quadruple(A, B, C, D)
    n = A.shape[0]
    r_pencil, r_tf = _normal_ranks(A, B, C, D, samples, seed)
    if r_pencil < n:
        raise DegenerateSystemError(
            f"pencil normal rank {r_pencil} is below the state dimension {n}"
        )

    clusters, det_degree, method = _candidate_clusters(A, B, C, D, r_pencil, seed, cluster_tol)

    confirmations = []
    rejected = []
    zeros: list[complex] = []
    for center, mult in clusters:
        P = system_pencil(A, B, C, D, center)
        s = np.linalg.svd(P, compute_uv=False)
        rank_c = int(np.sum(s > CONFIRM_RTOL * s[0])) if s[0] > 0 else 0
        ratio = float(s[r_pencil - 1] / s[0]) if s.size >= r_pencil and s[0] > 0 else 0.0
        confirmed = rank_c < r_pencil
        if confirmed:
            zeros.extend([center] * mult)
            confirmations.append(
                ZeroConfirmation(center, mult, rank_c, r_pencil, ratio, True)
            )
        else:
            rejected.append(center)

    finite = sort_complex(zeros)
    has_origin = any(abs(z) <= cluster_tol for z in finite)
    has_inf = numeric_rank(D) < r_tf
    diagnostics = ZeroDiagnostics(
        method=method,
        det_degree=det_degree,
        seed=seed,
        cluster_tol=cluster_tol,
        confirmations=tuple(confirmations),
        rejected=tuple(rejected),
    )
    return ZeroReport(
        finite_zeros=finite,
        normal_rank_pencil=r_pencil,
        normal_rank_tf=r_tf,
        has_infinite_zero=has_inf,
        has_origin_zero=has_origin,
        diagnostics=diagnostics,
    )


def has_infinite_zero(target) -> bool:
    """Infinite-zero flag: ``rank D < normal rank of the transfer function``.

    Accepts either a :class:`ZeroReport` (whose precomputed flag is
    returned) or a quadruple ``(A, B, C, D)``.
    """
    if isinstance(target, ZeroReport):
        return target.has_infinite_zero
    A, B, C, D = _coerce_quadruple(*target)
    _, r_tf = _normal_ranks(A, B, C, D, samples=7, seed=0)
    return numeric_rank(D) < r_tf


def rank_at(A, B, C, D, z: complex, samples: int = 7, seed: int = 0) -> tuple[int, int]:
    """Numerical pencil rank at z alongside the pencil's normal rank.

    The pointwise rank uses the standard SVD threshold
    ``max(dims) * eps * sigma_max``.
    """
    A, B, C, D = _coerce_quadruple(A, B, C, D)
    r_pencil, _ = _normal_ranks(A, B, C, D, samples, seed)
    return numeric_rank(system_pencil(A, B, C, D, z)), r_pencil


@dataclass(frozen=True)
class MatchResult:
    """Outcome of an optimal assignment between two zero multisets."""

    matched: bool
    pairs: tuple[tuple[complex, complex], ...]
    unmatched_left: tuple[complex, ...]
    unmatched_right: tuple[complex, ...]
    max_error: float


def match_zero_multisets(left, right, tol: float = CLUSTER_TOL) -> MatchResult:
    """Optimal bipartite matching of two complex multisets.

    The multisets match when they have equal cardinality and the optimal
    assignment pairs every element within ``tol * (1 + |z|)``.  Ordering of
    roots is meaningless, so the pairing must be global rather than greedy.
    """
    left = [complex(z) for z in left]
    right = [complex(z) for z in right]
    if not left and not right:
        return MatchResult(True, (), (), (), 0.0)
    if not left or not right:
        return MatchResult(False, (), tuple(left), tuple(right), np.inf)
    cost = np.abs(np.array(left)[:, None] - np.array(right)[None, :])
    rows, cols = linear_sum_assignment(cost)
    pairs = []
    bad_left, bad_right = [], []
    max_err = 0.0
    for i, j in zip(rows, cols):
        err = float(cost[i, j])
        max_err = max(max_err, err)
        if err <= tol * (1.0 + abs(left[i])):
            pairs.append((left[i], right[j]))
        else:
            bad_left.append(left[i])
            bad_right.append(right[j])
    assigned_l = set(rows.tolist())
    assigned_r = set(cols.tolist())
    bad_left.extend(left[i] for i in range(len(left)) if i not in assigned_l)
    bad_right.extend(right[j] for j in range(len(right)) if j not in assigned_r)
    matched = len(left) == len(right) and not bad_left and not bad_right
    return MatchResult(
        matched,
        tuple(pairs),
        sort_complex(bad_left),
        sort_complex(bad_right),
        max_err,
    )
