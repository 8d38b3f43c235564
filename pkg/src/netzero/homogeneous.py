"""Fast zero paths for networks of identical SISO agents.

When every node shares one strictly proper transfer function ``g = p/q``
(monic ``q`` of degree ``n``), the network's finite zeros are governed by
the interconnection quadruple ``(L, R, S, D)`` through the reciprocal map
``h = q/p``:

* each finite interconnection zero ``eta`` contributes the solutions of
  ``h(z) = eta``, i.e. the roots of ``q - eta p``;
* the roots of ``p`` (the agent's own zeros) are network zeros exactly when
  the interconnection has a zero at infinity;
* the network has a zero at infinity exactly when the interconnection does,
  and the two transfer functions share one normal rank.

For the interconnection pencil determinant ``det_int`` of degree ``d`` the
exact factorization ``det_net(z) = c * p(z)^(N-d) * prod_i (q - eta_i p)(z)``
fixes the multiplicities, so the agent-zero contribution is added with
multiplicity ``N - d``.

Circulant couplings are diagonalized by the unitary symmetric Fourier
matrix, which reduces the interconnection zeros to eigenvalues of a
Schur complement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numeric import (
    CLUSTER_TOL,
    CONFIRM_RTOL,
    cluster_points,
    numeric_rank,
    sort_complex,
)
from .model import (
    AgentSystem,
    Interconnection,
    NetworkRealization,
    close_loop,
    observability_matrix,
    reachability_matrix,
)
from .rational import RationalSISO, classify_agent, h_preimage, poly_roots, relative_degree
from .zeros import ZeroConfirmation, ZeroDiagnostics, ZeroReport, invariant_zeros

__all__ = [
    "HomogeneousNetwork",
    "CirculantSpec",
    "ApplicabilityError",
    "HypothesisViolationError",
    "MinimumPhaseVerdict",
    "DesignCheck",
    "controllable_realization",
    "to_network",
    "homogeneous_zero_report",
    "minimum_phase_verdict",
    "design_check",
    "circulant_matrix",
    "fourier_matrix",
    "circulant_eigenvalues",
    "circulant_zero_report",
]


class ApplicabilityError(ValueError):
    """The requested analysis does not apply to the given data."""


class HypothesisViolationError(ValueError):
    """A structural hypothesis of the requested analysis is violated."""


@dataclass(frozen=True, eq=False)
class HomogeneousNetwork:
    """N identical SISO agents with one coupling quadruple."""

    agent: RationalSISO
    count: int
    coupling: Interconnection

    def __post_init__(self):
        N = int(self.count)
        if N < 1:
            raise ValueError("agent count must be at least 1")
        object.__setattr__(self, "count", N)
        L = self.coupling.L
        if L.shape != (N, N):
            raise ApplicabilityError(
                f"coupling L must be {N}x{N} for {N} SISO agents, got "
                f"{L.shape[0]}x{L.shape[1]}"
            )
        if self.coupling.R.shape[0] != N or self.coupling.S.shape[1] != N:
            raise ApplicabilityError(
                "coupling R rows and S columns must equal the agent count"
            )


@dataclass(frozen=True, eq=False)
class CirculantSpec:
    """First row (c_0, ..., c_{N-1}) of a circulant coupling matrix."""

    c: tuple[float, ...]

    def __post_init__(self):
        c = tuple(float(x) for x in np.atleast_1d(np.asarray(self.c, dtype=float)))
        if not c:
            raise ValueError("circulant specification must be nonempty")
        object.__setattr__(self, "c", c)

    @property
    def size(self) -> int:
        return len(self.c)


def controllable_realization(g: RationalSISO) -> AgentSystem:
    """Controller-canonical state space of ``g = p/q`` (minimal by coprimeness)."""
    n = g.degree
    q = np.real_if_close(np.asarray(g.den.coeffs))
    p = np.real_if_close(np.asarray(g.num.coeffs))
    A = np.zeros((n, n))
    if n > 1:
        A[:-1, 1:] = np.eye(n - 1)
    A[-1, :] = -np.real(q[:n])
    b = np.zeros((n, 1))
    b[-1, 0] = 1.0
    c = np.zeros((1, n))
    c[0, : p.size] = np.real(p)
    return AgentSystem(A=A, B=b, C=c)


def to_network(hn: HomogeneousNetwork) -> NetworkRealization:
    """Assemble the closed-loop realization from canonical agent copies."""
    agent = controllable_realization(hn.agent)
    return close_loop([agent] * hn.count, hn.coupling)


def _poly_pencil(g: RationalSISO, coupling: Interconnection, z: complex) -> np.ndarray:
    """[[q(z) I - p(z) L, -p(z) R], [S, D]] for rank confirmations."""
    qv = complex(g.den(z))
    pv = complex(g.num(z))
    N = coupling.L.shape[0]
    top = np.hstack([qv * np.eye(N) - pv * coupling.L, -pv * coupling.R])
    bottom = np.hstack([coupling.S, coupling.D]).astype(complex)
    return np.vstack([top, bottom])


def homogeneous_zero_report(
    hn: HomogeneousNetwork,
    seed: int = 0,
    samples: int = 7,
    cluster_tol: float = CLUSTER_TOL,
) -> ZeroReport:
    """Network zero report computed from the interconnection quadruple.

    Avoids assembling the network pencil entirely: finite interconnection
    zeros are pulled back through ``h = q/p`` and the agent zeros are added
    when the interconnection has a zero at infinity.  Each reported zero is
    confirmed by a rank drop of the polynomial pencil
    ``[[q(z)I - p(z)L, -p(z)R], [S, D]]``, which drops rank exactly when
    the network pencil does.
    """
    g = hn.agent
    coupling = hn.coupling
    N = hn.count
    n = g.degree
    int_report = invariant_zeros(
        coupling.L, coupling.R, coupling.S, coupling.D,
        seed=seed, samples=samples, cluster_tol=cluster_tol,
    )

    zeros: list[complex] = []
    for eta, mult in int_report.zero_clusters():
        zeros.extend(list(h_preimage(g, eta)) * mult)
    notes = []
    if int_report.has_infinite_zero:
        copies = max(1, N - int_report.diagnostics.det_degree)
        agent_zeros = list(poly_roots(g.num)) if g.num.degree > 0 else []
        zeros.extend(agent_zeros * copies)
        if not agent_zeros:
            notes.append(
                "interconnection has an infinite zero but the agent numerator "
                "is constant, so no agent zeros are contributed"
            )

    r_tf = int_report.normal_rank_tf  # network and interconnection share it
    r_pencil = N * n + r_tf
    confirmations = []
    for center, mult in cluster_points(zeros, cluster_tol):
        P = _poly_pencil(g, coupling, center)
        s = np.linalg.svd(P, compute_uv=False)
        rank_c = int(np.sum(s > CONFIRM_RTOL * s[0])) if s[0] > 0 else 0
        target = N + r_tf
        ratio = float(s[target - 1] / s[0]) if s.size >= target and s[0] > 0 else 0.0
        confirmations.append(
            ZeroConfirmation(center, mult, rank_c, target, ratio, rank_c < target)
        )

    finite = sort_complex(zeros)
    diagnostics = ZeroDiagnostics(
        method="h-preimage",
        det_degree=int_report.diagnostics.det_degree,
        seed=seed,
        cluster_tol=cluster_tol,
        confirmations=tuple(confirmations),
        notes=tuple(notes),
    )
    return ZeroReport(
        finite_zeros=finite,
        normal_rank_pencil=r_pencil,
        normal_rank_tf=r_tf,
        has_infinite_zero=int_report.has_infinite_zero,
        has_origin_zero=any(abs(z) <= cluster_tol for z in finite),
        diagnostics=diagnostics,
    )


@dataclass(frozen=True)
class MinimumPhaseVerdict:
    verdict: str  # "minimum_phase" | "not_minimum_phase" | "inconclusive"
    reason: str
    agent_kind: str
    interconnection_zeros: tuple[complex, ...]
    network_zeros: tuple[complex, ...] | None
    witness: complex | None


def _disc_status(zeros, boundary_tol: float) -> str:
    """"inside", "outside" or "boundary" for a family of zeros."""
    status = "inside"
    for z in zeros:
        r = abs(z)
        if abs(r - 1.0) <= boundary_tol:
            return "boundary"
        if r > 1.0:
            status = "outside"
    return status


def minimum_phase_verdict(
    hn: HomogeneousNetwork,
    seed: int = 0,
    samples: int = 7,
    boundary_tol: float = 1e-9,
) -> MinimumPhaseVerdict:
    """Minimum-phase decision for a homogeneous network with full-rank D.

    A lossless agent makes the network minimum phase exactly when the
    interconnection is; a passive agent transfers minimum phase in one
    direction only; otherwise the verdict falls back to the zeros computed
    by :func:`homogeneous_zero_report` directly.  Zeros within
    ``boundary_tol`` of the unit circle yield "inconclusive", since strict
    containment cannot be decided numerically there.
    """
    D = hn.coupling.D
    if numeric_rank(D) < min(D.shape):
        raise HypothesisViolationError(
            "minimum-phase analysis requires D of full row rank or full column rank"
        )
    cls = classify_agent(hn.agent)
    int_report = invariant_zeros(
        hn.coupling.L, hn.coupling.R, hn.coupling.S, D, seed=seed, samples=samples
    )
    int_zeros = int_report.finite_zeros
    int_status = _disc_status(int_zeros, boundary_tol)

    if cls.kind == "lossless":
        if int_status == "boundary":
            worst = max(int_zeros, key=lambda z: -abs(abs(z) - 1.0))
            return MinimumPhaseVerdict(
                "inconclusive",
                "an interconnection zero lies on the unit circle within tolerance",
                cls.kind, int_zeros, None, worst,
            )
        verdict = "minimum_phase" if int_status == "inside" else "not_minimum_phase"
        witness = None
        if verdict == "not_minimum_phase":
            witness = max(int_zeros, key=abs)
        return MinimumPhaseVerdict(
            verdict,
            "lossless agent: the reciprocal map preserves the unit disc, so the "
            "network is minimum phase exactly when the interconnection is",
            cls.kind, int_zeros, None, witness,
        )

    if cls.kind == "passive" and int_status == "inside":
        return MinimumPhaseVerdict(
            "minimum_phase",
            "passive agent with a minimum-phase interconnection",
            cls.kind, int_zeros, None, None,
        )

    net_report = homogeneous_zero_report(hn, seed=seed, samples=samples)
    net_status = _disc_status(net_report.finite_zeros, boundary_tol)
    if net_status == "boundary":
        worst = max(net_report.finite_zeros, key=lambda z: -abs(abs(z) - 1.0))
        return MinimumPhaseVerdict(
            "inconclusive", "a network zero lies on the unit circle within tolerance",
            cls.kind, int_zeros, net_report.finite_zeros, worst,
        )
    verdict = "minimum_phase" if net_status == "inside" else "not_minimum_phase"
    witness = max(net_report.finite_zeros, key=abs) if verdict == "not_minimum_phase" else None
    return MinimumPhaseVerdict(
        verdict, "direct", cls.kind, int_zeros, net_report.finite_zeros, witness
    )


@dataclass(frozen=True)
class DesignCheck:
    reachable: bool
    observable: bool
    relative_degree: int | None
    zero_free: bool


def design_check(L, R, S) -> DesignCheck:
    """Zero-free design test for a single-input single-output readout.

    With ``D = 0``, the coupling data defines a network without finite
    interconnection zeros exactly when ``(L, R)`` is reachable, ``(S, L)``
    observable, and the first nonzero Markov parameter appears at index N.
    """
    L = np.asarray(L, dtype=float)
    N = L.shape[0]
    R = np.asarray(R, dtype=float).reshape(N, -1)
    S = np.asarray(S, dtype=float).reshape(-1, N)
    if R.shape[1] != 1 or S.shape[0] != 1:
        raise ApplicabilityError("design check requires a single external input and output")
    reachable = numeric_rank(reachability_matrix(L, R)) == N
    observable = numeric_rank(observability_matrix(L, S)) == N
    rd = relative_degree(L, R, S)
    return DesignCheck(
        reachable=reachable,
        observable=observable,
        relative_degree=rd,
        zero_free=bool(reachable and observable and rd == N),
    )


def circulant_matrix(spec: CirculantSpec) -> np.ndarray:
    """Row-rotated circulant: entry (i, j) is c[(j - i) mod N]."""
    N = spec.size
    c = np.asarray(spec.c)
    idx = (np.arange(N)[None, :] - np.arange(N)[:, None]) % N
    return c[idx]


def fourier_matrix(N: int) -> np.ndarray:
    """Unitary symmetric Fourier matrix with entries omega^(jk)/sqrt(N)."""
    omega = np.exp(2j * np.pi / N)
    jk = np.outer(np.arange(N), np.arange(N))
    return omega**jk / np.sqrt(N)


def circulant_eigenvalues(spec: CirculantSpec) -> np.ndarray:
    """Eigenvalues lambda_k = sum_j c_j omega^(kj), omega = exp(2*pi*i/N).

    These are exactly the diagonal entries of ``Phi* L Phi`` for the
    Fourier matrix ``Phi`` and ``L`` the circulant built from the spec.
    """
    c = np.asarray(spec.c, dtype=float)
    return spec.size * np.fft.ifft(c)


def circulant_zero_report(
    g: RationalSISO,
    spec: CirculantSpec,
    R,
    S,
    D,
    seed: int = 0,
    cluster_tol: float = CLUSTER_TOL,
) -> ZeroReport:
    """Network zeros of a circulant homogeneous network with invertible D.

    The Fourier matrix diagonalizes the coupling, so the interconnection
    zeros are the eigenvalues of ``M - Phi* R D^{-1} S Phi`` with
    ``M = diag(lambda_k)``; the network zeros are the unions of the roots
    of ``q - w_k p`` over those eigenvalues ``w_k``.
    """
    N = spec.size
    R = np.asarray(R, dtype=float).reshape(N, -1)
    S = np.asarray(S, dtype=float).reshape(-1, N)
    D = np.atleast_2d(np.asarray(D, dtype=float))
    m = R.shape[1]
    if D.shape[0] != D.shape[1] or D.shape != (S.shape[0], m):
        raise HypothesisViolationError("circulant analysis requires a square feedthrough D")
    if numeric_rank(D) < D.shape[0]:
        raise HypothesisViolationError("circulant analysis requires an invertible feedthrough D")

    Phi = fourier_matrix(N)
    lam = circulant_eigenvalues(spec)
    M = np.diag(lam)
    w = np.linalg.eigvals(M - Phi.conj().T @ R @ np.linalg.solve(D, S @ Phi))

    zeros: list[complex] = []
    for wk in w:
        zeros.extend(h_preimage(g, complex(wk)))
    finite = sort_complex(zeros)

    coupling = Interconnection(L=circulant_matrix(spec), R=R, S=S, D=D)
    confirmations = []
    r_tf = D.shape[0]  # invertible D pins the normal rank of phi
    for center, mult in cluster_points(finite, cluster_tol):
        P = _poly_pencil(g, coupling, center)
        s = np.linalg.svd(P, compute_uv=False)
        rank_c = int(np.sum(s > CONFIRM_RTOL * s[0])) if s[0] > 0 else 0
        target = N + r_tf
        ratio = float(s[target - 1] / s[0]) if s.size >= target and s[0] > 0 else 0.0
        confirmations.append(
            ZeroConfirmation(center, mult, rank_c, target, ratio, rank_c < target)
        )

    diagnostics = ZeroDiagnostics(
        method="circulant",
        det_degree=N,
        seed=seed,
        cluster_tol=cluster_tol,
        confirmations=tuple(confirmations),
    )
    return ZeroReport(
        finite_zeros=finite,
        normal_rank_pencil=N * g.degree + r_tf,
        normal_rank_tf=r_tf,
        has_infinite_zero=False,
        has_origin_zero=any(abs(z) <= cluster_tol for z in finite),
        diagnostics=diagnostics,
    )
