"""Agent and coupling data model, closed-loop assembly, transfer evaluation.

A network is built from ``N`` discrete-time nodes

    x_i(t+1) = A_i x_i(t) + B_i v_i(t),      w_i(t) = C_i x_i(t)

coupled statically through ``v = L w + R u`` and read out through
``y = S w + D u``.  Stacking the node matrices block-diagonally gives the
closed-loop realization

    A_cl = A + B L C,   B_cl = B R,   C_cl = S C,   D,

whose transfer function is ``Gamma(z) = D + C_cl (zI - A_cl)^{-1} B_cl``.
Replacing every node by a unit delay instead yields the interconnection
transfer function ``phi(eta) = D + S (eta I - L)^{-1} R``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numeric import (
    PoleError,
    as_matrix,
    frozen,
    numeric_rank,
    transfer_eval,
)

__all__ = [
    "AgentSystem",
    "Interconnection",
    "NetworkRealization",
    "ValidationError",
    "PoleError",
    "validate_network",
    "assemble_nodes",
    "close_loop",
    "network_transfer_eval",
    "interconnection_transfer_eval",
    "reachability_matrix",
    "observability_matrix",
    "pbh_reachable",
    "pbh_observable",
]


class ValidationError(ValueError):
    """Network data violates the assembly conventions."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True, eq=False)
class AgentSystem:
    """One node's state-space triple, strictly proper by construction.

    Dimensional consistency is enforced here; reachability and
    observability are reported by :func:`validate_network` instead of
    raised, so that invalid data can be inspected.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        A = as_matrix(self.A, "A")
        B = as_matrix(self.B, "B")
        C = as_matrix(self.C, "C")
        if A.shape[0] != A.shape[1]:
            raise ValueError(f"A must be square, got {A.shape[0]}x{A.shape[1]}")
        n = A.shape[0]
        if B.shape[0] != n:
            raise ValueError(f"B must have {n} rows, got {B.shape[0]}")
        if C.shape[1] != n:
            raise ValueError(f"C must have {n} columns, got {C.shape[1]}")
        object.__setattr__(self, "A", frozen(A))
        object.__setattr__(self, "B", frozen(B))
        object.__setattr__(self, "C", frozen(C))

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1]

    @property
    def p(self) -> int:
        return self.C.shape[0]


@dataclass(frozen=True, eq=False)
class Interconnection:
    """Static coupling quadruple (L, R, S, D).

    Shapes: ``L`` couples stacked node outputs back to stacked node inputs
    (``sum(m_i) x sum(p_i)``), ``R`` injects the external input
    (``sum(m_i) x m``), ``S`` selects the external output (``p x sum(p_i)``)
    and ``D`` is the direct feedthrough (``p x m``).  Internal consistency
    (D against S rows and R columns) is enforced at construction; agreement
    with a particular agent list is checked by :func:`validate_network`.
    """

    L: np.ndarray
    R: np.ndarray
    S: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        L = as_matrix(self.L, "L")
        R = as_matrix(self.R, "R")
        S = as_matrix(self.S, "S")
        D = as_matrix(self.D, "D")
        if D.shape != (S.shape[0], R.shape[1]):
            raise ValueError(
                f"D must be {S.shape[0]}x{R.shape[1]} to match S rows and "
                f"R columns, got {D.shape[0]}x{D.shape[1]}"
            )
        object.__setattr__(self, "L", frozen(L))
        object.__setattr__(self, "R", frozen(R))
        object.__setattr__(self, "S", frozen(S))
        object.__setattr__(self, "D", frozen(D))

    @property
    def m(self) -> int:
        """External input count."""
        return self.R.shape[1]

    @property
    def p(self) -> int:
        """External output count."""
        return self.S.shape[0]


@dataclass(frozen=True, eq=False)
class NetworkRealization:
    """Closed-loop quadruple plus the node state partition."""

    A_cl: np.ndarray
    B_cl: np.ndarray
    C_cl: np.ndarray
    D: np.ndarray
    state_partition: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "A_cl", frozen(as_matrix(self.A_cl, "A_cl")))
        object.__setattr__(self, "B_cl", frozen(as_matrix(self.B_cl, "B_cl")))
        object.__setattr__(self, "C_cl", frozen(as_matrix(self.C_cl, "C_cl")))
        object.__setattr__(self, "D", frozen(as_matrix(self.D, "D")))
        object.__setattr__(self, "state_partition", tuple(int(k) for k in self.state_partition))
        if sum(self.state_partition) != self.A_cl.shape[0]:
            raise ValueError(
                f"state partition {self.state_partition} does not sum to the "
                f"state dimension {self.A_cl.shape[0]}"
            )

    @property
    def n(self) -> int:
        return self.A_cl.shape[0]

    @property
    def m(self) -> int:
        return self.B_cl.shape[1]

    @property
    def p(self) -> int:
        return self.C_cl.shape[0]

    def quadruple(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return self.A_cl, self.B_cl, self.C_cl, self.D


def reachability_matrix(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """[B, AB, ..., A^{n-1} B]."""
    n = A.shape[0]
    blocks = []
    M = np.array(B, dtype=float)
    for _ in range(n):
        blocks.append(M)
        M = A @ M
    return np.hstack(blocks)


def observability_matrix(A: np.ndarray, C: np.ndarray) -> np.ndarray:
    """[C; CA; ...; C A^{n-1}]."""
    n = A.shape[0]
    blocks = []
    M = np.array(C, dtype=float)
    for _ in range(n):
        blocks.append(M)
        M = M @ A
    return np.vstack(blocks)


def pbh_reachable(A: np.ndarray, B: np.ndarray) -> bool:
    """Eigenvalue rank test: rank [lambda I - A, B] = n for all eigenvalues."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    for lam in np.linalg.eigvals(A):
        M = np.hstack([lam * np.eye(n) - A, np.asarray(B, dtype=complex)])
        if numeric_rank(M) < n:
            return False
    return True


def pbh_observable(A: np.ndarray, C: np.ndarray) -> bool:
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    for lam in np.linalg.eigvals(A):
        M = np.vstack([lam * np.eye(n) - A, np.asarray(C, dtype=complex)])
        if numeric_rank(M) < n:
            return False
    return True


def validate_network(agents, coupling: Interconnection) -> list[str]:
    """Check agents and coupling against the assembly conventions.

    Returns a list of human-readable violations; an empty list means the
    configuration is valid.  Violations are data, not failures.
    """
    violations: list[str] = []
    agents = list(agents)
    if not agents:
        return ["agent list must be nonempty"]
    for i, agent in enumerate(agents, start=1):
        if numeric_rank(reachability_matrix(agent.A, agent.B)) < agent.n:
            violations.append(f"agent {i} not reachable")
        if numeric_rank(observability_matrix(agent.A, agent.C)) < agent.n:
            violations.append(f"agent {i} not observable")
    m_bar = sum(a.m for a in agents)
    p_bar = sum(a.p for a in agents)
    if coupling.L.shape != (m_bar, p_bar):
        violations.append(
            f"L must be {m_bar}x{p_bar}, got {coupling.L.shape[0]}x{coupling.L.shape[1]}"
        )
    if coupling.R.shape[0] != m_bar:
        violations.append(f"R must have {m_bar} rows, got {coupling.R.shape[0]}")
    if coupling.S.shape[1] != p_bar:
        violations.append(f"S must have {p_bar} columns, got {coupling.S.shape[1]}")
    return violations


def assemble_nodes(agents) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Stack agent matrices block-diagonally: A = diag(A_1, ..., A_N), etc."""
    agents = list(agents)
    if not agents:
        raise ValueError("agent list must be nonempty")
    n_bar = sum(a.n for a in agents)
    m_bar = sum(a.m for a in agents)
    p_bar = sum(a.p for a in agents)
    A = np.zeros((n_bar, n_bar))
    B = np.zeros((n_bar, m_bar))
    C = np.zeros((p_bar, n_bar))
    i = j = k = 0
    for agent in agents:
        A[i:i + agent.n, i:i + agent.n] = agent.A
        B[i:i + agent.n, j:j + agent.m] = agent.B
        C[k:k + agent.p, i:i + agent.n] = agent.C
        i += agent.n
        j += agent.m
        k += agent.p
    return A, B, C


def close_loop(agents, coupling: Interconnection) -> NetworkRealization:
    """Assemble the closed-loop network realization.

    Raises :class:`ValidationError` carrying all violations when the inputs
    do not satisfy :func:`validate_network`.
    """
    agents = list(agents)
    violations = validate_network(agents, coupling)
    if violations:
        raise ValidationError(violations)
    A, B, C = assemble_nodes(agents)
    A_cl = A + B @ coupling.L @ C
    B_cl = B @ coupling.R
    C_cl = coupling.S @ C
    return NetworkRealization(
        A_cl=A_cl,
        B_cl=B_cl,
        C_cl=C_cl,
        D=coupling.D,
        state_partition=tuple(a.n for a in agents),
    )


def network_transfer_eval(net: NetworkRealization, z: complex) -> np.ndarray:
    """Evaluate ``Gamma(z) = D + C_cl (zI - A_cl)^{-1} B_cl``.

    Raises :class:`PoleError` naming the nearest eigenvalue when the
    linear-solve residual indicates z sits on the spectrum of A_cl.
    """
    return transfer_eval(net.A_cl, net.B_cl, net.C_cl, net.D, z)


def interconnection_transfer_eval(coupling: Interconnection, eta: complex) -> np.ndarray:
    """Evaluate ``phi(eta) = D + S (eta I - L)^{-1} R``."""
    return transfer_eval(coupling.L, coupling.R, coupling.S, coupling.D, eta)
