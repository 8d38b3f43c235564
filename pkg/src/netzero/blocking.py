"""Time-lifting of network realizations and zero correspondence checks.

Grouping ``T`` consecutive inputs and outputs of ``(A, B, C, D)`` into
stacked vectors yields the blocked realization

    A_b = A^T
    B_b = [A^(T-1) B, A^(T-2) B, ..., B]
    C_b = [C; CA; ...; C A^(T-1)]
    D_b = block lower triangular, D on the diagonal, C A^(i-j-1) B below.

Its transfer function evaluated at ``zeta = z^T`` carries a circulant-like
structure in the partial transfer functions

    H_0(zeta) = D + C (zeta I - A^T)^(-1) A^(T-1) B
    H_k(zeta) =     C (zeta I - A^T)^(-1) A^(k-1) B,   k = 1..T-1:

block (i, j) equals H_0 on the diagonal, H_(T-(j-i)) above it and
``zeta * H_(i-j)`` below it.  Nonzero blocked zeros are exactly the T-th
powers of unblocked zeros; origin and infinity zeros correspond one to one
when the unblocked quadruple is minimal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numeric import (
    CLUSTER_TOL,
    cluster_points,
    frozen,
    numeric_rank,
    resolvent_solve,
    sort_complex,
)
from .homogeneous import HomogeneousNetwork, HypothesisViolationError
from .model import NetworkRealization, pbh_observable, pbh_reachable
from .rational import h_preimage
from .zeros import ZeroDiagnostics, ZeroReport, invariant_zeros

__all__ = [
    "BlockedRealization",
    "CorrespondenceReport",
    "block_system",
    "blocked_transfer_eval",
    "blocked_transfer_structured",
    "correspondence_report",
    "blocked_homogeneous_zeros",
]


@dataclass(frozen=True, eq=False)
class BlockedRealization:
    """Blocked quadruple with block size T and its source network."""

    T: int
    A_b: np.ndarray
    B_b: np.ndarray
    C_b: np.ndarray
    D_b: np.ndarray
    source: NetworkRealization

    def quadruple(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return self.A_b, self.B_b, self.C_b, self.D_b


def block_system(net: NetworkRealization, T: int) -> BlockedRealization:
    """Blocked realization for block size ``T >= 1``."""
    T = int(T)
    if T < 1:
        raise ValueError("block size T must be at least 1")
    A, B, C, D = net.quadruple()
    n, m, p = net.n, net.m, net.p
    powers = [np.eye(n)]
    for _ in range(T):
        powers.append(powers[-1] @ A)

    A_b = powers[T]
    B_b = np.hstack([powers[T - 1 - j] @ B for j in range(T)])
    C_b = np.vstack([C @ powers[i] for i in range(T)])
    D_b = np.zeros((T * p, T * m))
    for i in range(T):
        for j in range(T):
            if i == j:
                D_b[i * p:(i + 1) * p, j * m:(j + 1) * m] = D
            elif i > j:
                D_b[i * p:(i + 1) * p, j * m:(j + 1) * m] = C @ powers[i - j - 1] @ B
    return BlockedRealization(T=T, A_b=frozen(A_b), B_b=frozen(B_b),
                              C_b=frozen(C_b), D_b=frozen(D_b), source=net)


def blocked_transfer_eval(blk: BlockedRealization, zeta: complex) -> np.ndarray:
    """State-space evaluation ``D_b + C_b (zeta I - A_b)^{-1} B_b``."""
    X = resolvent_solve(blk.A_b, blk.B_b, zeta)
    return blk.D_b.astype(complex) + blk.C_b @ X


def blocked_transfer_structured(net: NetworkRealization, T: int, z: complex) -> np.ndarray:
    """Assemble the blocked transfer function from the partial pieces H_k.

    Evaluates at ``zeta = z**T`` and must agree with
    :func:`blocked_transfer_eval` of the explicitly blocked system; the
    agreement of the two routes is part of the blocking contract.
    """
    T = int(T)
    if T < 1:
        raise ValueError("block size T must be at least 1")
    A, B, C, D = net.quadruple()
    n, m, p = net.n, net.m, net.p
    zeta = z**T
    powers = [np.eye(n)]
    for _ in range(T - 1):
        powers.append(powers[-1] @ A)
    A_T = powers[-1] @ A

    # one resolvent solve against [B, AB, ..., A^(T-1)B]
    stacked = np.hstack([powers[k] @ B for k in range(T)])
    X = resolvent_solve(A_T, stacked, zeta)
    H = []
    # H[0] uses A^(T-1); H[k] uses A^(k-1) for k >= 1
    H0 = D.astype(complex) + C @ X[:, (T - 1) * m: T * m]
    H.append(H0)
    for k in range(1, T):
        H.append(C @ X[:, (k - 1) * m: k * m])

    out = np.zeros((T * p, T * m), dtype=complex)
    for i in range(T):
        for j in range(T):
            if i == j:
                block = H[0]
            elif j > i:
                block = H[T - (j - i)]
            else:
                block = zeta * H[i - j]
            out[i * p:(i + 1) * p, j * m:(j + 1) * m] = block
    return out


@dataclass(frozen=True)
class CorrespondenceReport:
    """Blocked/unblocked zero comparison.

    ``nonzero_match`` compares nonzero blocked zeros against T-th powers of
    nonzero unblocked zeros as sets (distinct unblocked zeros may collide in
    one T-th power).  The origin and infinity flags are compared only when
    the unblocked quadruple is minimal; otherwise they are None, meaning
    not applicable.
    """

    unblocked: ZeroReport
    blocked: ZeroReport
    nonzero_match: bool
    origin_match: bool | None
    infinity_match: bool | None
    minimal: bool
    unmatched_unblocked: tuple[complex, ...]
    unmatched_blocked: tuple[complex, ...]


def _as_set(points, tol: float) -> list[complex]:
    return [center for center, _ in cluster_points(points, tol)]


def correspondence_report(
    net: NetworkRealization,
    T: int,
    seed: int = 0,
    samples: int = 7,
    tol: float = CLUSTER_TOL,
) -> CorrespondenceReport:
    """Run both zero engines and compare them across the blocking map."""
    A, B, C, D = net.quadruple()
    unblocked = invariant_zeros(A, B, C, D, seed=seed, samples=samples, cluster_tol=tol)
    blk = block_system(net, T)
    blocked = invariant_zeros(*blk.quadruple(), seed=seed, samples=samples, cluster_tol=tol)

    expected = _as_set(
        [z**T for z in unblocked.finite_zeros if abs(z) > tol and abs(z**T) > tol], tol
    )
    observed = _as_set(
        [z for z in blocked.finite_zeros if abs(z) > tol], tol
    )
    missing = [
        w for w in expected
        if not any(abs(w - v) <= tol * (1.0 + abs(w)) for v in observed)
    ]
    extra = [
        v for v in observed
        if not any(abs(v - w) <= tol * (1.0 + abs(v)) for w in expected)
    ]
    minimal = pbh_reachable(A, B) and pbh_observable(A, C)
    # T = 1 is identity blocking, so the flag comparison needs no
    # minimality hypothesis; otherwise a non-minimal quadruple leaves the
    # origin/infinity correspondence out of scope (None = not applicable)
    if minimal or T == 1:
        origin_match = unblocked.has_origin_zero == blocked.has_origin_zero
        infinity_match = unblocked.has_infinite_zero == blocked.has_infinite_zero
    else:
        origin_match = None
        infinity_match = None
    return CorrespondenceReport(
        unblocked=unblocked,
        blocked=blocked,
        nonzero_match=not missing and not extra,
        origin_match=origin_match,
        infinity_match=infinity_match,
        minimal=minimal,
        unmatched_unblocked=sort_complex(missing),
        unmatched_blocked=sort_complex(extra),
    )


def blocked_homogeneous_zeros(
    hn: HomogeneousNetwork,
    T: int,
    seed: int = 0,
    samples: int = 7,
    cluster_tol: float = CLUSTER_TOL,
) -> ZeroReport:
    """Blocked-network zeros of a homogeneous network with full-rank D.

    The blocked zeros are the T-th powers ``zeta = z**T`` of points whose
    rotation ``omega^k z`` by a T-th root of unity solves ``h(omega^k z) =
    eta`` for a finite interconnection zero ``eta``.  Rotated solutions
    share one T-th power, so the candidate set collapses to the powers of
    the plain preimages.  A full-rank D rules out blocked zeros at
    infinity.
    """
    T = int(T)
    if T < 1:
        raise ValueError("block size T must be at least 1")
    D = hn.coupling.D
    if numeric_rank(D) < min(D.shape):
        raise HypothesisViolationError(
            "blocked homogeneous analysis requires D of full row or column rank"
        )
    g = hn.agent
    int_report = invariant_zeros(
        hn.coupling.L, hn.coupling.R, hn.coupling.S, D,
        seed=seed, samples=samples, cluster_tol=cluster_tol,
    )
    preimages: list[complex] = []
    for eta, _ in int_report.zero_clusters():
        preimages.extend(h_preimage(g, eta))
    zeta_set = [center for center, _ in cluster_points([z**T for z in preimages], cluster_tol)]

    n = g.degree
    N = hn.count
    r_tf = T * min(D.shape)
    diagnostics = ZeroDiagnostics(
        method="h-preimage",
        det_degree=int_report.diagnostics.det_degree,
        seed=seed,
        cluster_tol=cluster_tol,
        notes=("zeros reported as a set; blocked multiplicities are not asserted",),
    )
    finite = sort_complex(zeta_set)
    return ZeroReport(
        finite_zeros=finite,
        normal_rank_pencil=N * n + r_tf,
        normal_rank_tf=r_tf,
        has_infinite_zero=False,
        has_origin_zero=any(abs(z) <= cluster_tol for z in finite),
        diagnostics=diagnostics,
    )
