"""Shared fixtures: the three-agent triangle demo and small golden instances."""

import numpy as np
import pytest

import netzero as nz


@pytest.fixture
def delay2_agent() -> nz.AgentSystem:
    """Double-delay node: transfer function 1/z^2."""
    return nz.AgentSystem(A=[[0.0, 1.0], [0.0, 0.0]], B=[[0.0], [1.0]], C=[[1.0, 0.0]])


@pytest.fixture
def triangle_coupling() -> nz.Interconnection:
    """Three-node ring with one driven node and one measured node."""
    return nz.Interconnection(
        L=[[1.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 1.0]],
        R=[[1.0], [0.0], [0.0]],
        S=[[0.0, 1.0, 0.0]],
        D=[[0.0]],
    )


@pytest.fixture
def triangle_net(delay2_agent, triangle_coupling) -> nz.NetworkRealization:
    return nz.close_loop([delay2_agent] * 3, triangle_coupling)


@pytest.fixture
def g_delay2() -> nz.RationalSISO:
    """1/z^2 as a coprime fraction."""
    return nz.RationalSISO(num=nz.Polynomial([1.0]), den=nz.Polynomial([0.0, 0.0, 1.0]))


@pytest.fixture
def triangle_homogeneous(g_delay2, triangle_coupling) -> nz.HomogeneousNetwork:
    return nz.HomogeneousNetwork(agent=g_delay2, count=3, coupling=triangle_coupling)


@pytest.fixture
def swap_golden():
    """Two delay agents with swap coupling and unit feedthrough.

    With g = 1/z the reciprocal map is the identity, so the network zeros
    equal the eigenvalues of L - R D^{-1} S: the golden ratio pair
    (-1 +/- sqrt(5)) / 2.
    """
    g = nz.RationalSISO(num=nz.Polynomial([1.0]), den=nz.Polynomial([0.0, 1.0]))
    coupling = nz.Interconnection(
        L=[[0.0, 1.0], [1.0, 0.0]], R=[[1.0], [0.0]], S=[[1.0, 0.0]], D=[[1.0]]
    )
    hn = nz.HomogeneousNetwork(agent=g, count=2, coupling=coupling)
    zeros = np.sort(np.linalg.eigvals(np.array([[ -1.0, 1.0], [1.0, 0.0]])))
    return hn, zeros  # zeros approx {-1.618..., 0.618...}
