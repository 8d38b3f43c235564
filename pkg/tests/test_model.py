"""Validation, assembly and transfer-evaluation tests for the model layer."""

import numpy as np
import pytest

import netzero as nz
from netzero._numeric import sample_circle

from corpus import random_fraction, random_minimal_agent


def _single_agent():
    return nz.AgentSystem(A=[[0.0, 1.0], [0.0, 0.0]], B=[[0.0], [1.0]], C=[[1.0, 0.0]])


class TestValidateNetwork:
    def test_minimal_double_delay_passes(self):
        coupling = nz.Interconnection(L=[[0.0]], R=[[1.0]], S=[[1.0]], D=[[0.0]])
        assert nz.validate_network([_single_agent()], coupling) == []

    def test_oversized_l_is_reported(self):
        coupling = nz.Interconnection(
            L=[[0.0, 0.0], [0.0, 0.0]], R=[[1.0]], S=[[1.0]], D=[[0.0]]
        )
        violations = nz.validate_network([_single_agent()], coupling)
        assert violations == ["L must be 1x1, got 2x2"]

    def test_unreachable_agent_is_reported(self):
        agent = nz.AgentSystem(A=[[0.0, 1.0], [0.0, 0.0]], B=[[0.0], [0.0]], C=[[1.0, 0.0]])
        coupling = nz.Interconnection(L=[[0.0]], R=[[1.0]], S=[[1.0]], D=[[0.0]])
        violations = nz.validate_network([agent], coupling)
        assert "agent 1 not reachable" in violations

    def test_agent_dimension_mismatch_raises_at_construction(self):
        with pytest.raises(ValueError, match="B must have 2 rows"):
            nz.AgentSystem(A=[[0.0, 1.0], [0.0, 0.0]], B=[[1.0]], C=[[1.0, 0.0]])


class TestAssembleNodes:
    def test_single_agent_unchanged(self):
        agent = _single_agent()
        A, B, C = nz.assemble_nodes([agent])
        assert np.array_equal(A, agent.A)
        assert np.array_equal(B, agent.B)
        assert np.array_equal(C, agent.C)

    def test_two_scalar_agents(self):
        a1 = nz.AgentSystem(A=[[2.0]], B=[[1.0]], C=[[1.0]])
        a2 = nz.AgentSystem(A=[[3.0]], B=[[1.0]], C=[[1.0]])
        A, _, _ = nz.assemble_nodes([a1, a2])
        assert np.array_equal(A, [[2.0, 0.0], [0.0, 3.0]])

    def test_three_double_delays(self):
        A, B, C = nz.assemble_nodes([_single_agent()] * 3)
        assert A.shape == (6, 6) and B.shape == (6, 3) and C.shape == (3, 6)
        for i in range(3):
            assert np.array_equal(A[2 * i:2 * i + 2, 2 * i:2 * i + 2], [[0.0, 1.0], [0.0, 0.0]])
        mask = np.ones((6, 6), dtype=bool)
        for i in range(3):
            mask[2 * i:2 * i + 2, 2 * i:2 * i + 2] = False
        assert np.all(A[mask] == 0.0)

    def test_empty_agent_list_raises(self):
        with pytest.raises(ValueError, match="nonempty"):
            nz.assemble_nodes([])


class TestCloseLoop:
    def test_scalar_identity_coupling(self):
        agent = nz.AgentSystem(A=[[0.0]], B=[[1.0]], C=[[1.0]])
        coupling = nz.Interconnection(L=[[0.0]], R=[[1.0]], S=[[1.0]], D=[[0.0]])
        net = nz.close_loop([agent], coupling)
        assert np.array_equal(net.A_cl, [[0.0]])
        assert np.array_equal(net.B_cl, [[1.0]])
        assert np.array_equal(net.C_cl, [[1.0]])

    def test_triangle_entries(self, triangle_net, triangle_coupling):
        # feedback enters only through the second state of each node
        A_cl = triangle_net.A_cl
        assert A_cl[1, 0] == 1.0 and A_cl[1, 2] == 1.0
        L = triangle_coupling.L
        for i in range(3):
            assert np.array_equal(A_cl[2 * i, 2 * i:2 * i + 2], [0.0, 1.0])
            assert A_cl[2 * i + 1, 2 * i + 1] == 0.0
            assert A_cl[2 * i + 1, 2 * i] == L[i, i]

    def test_closed_loop_identity(self, delay2_agent, triangle_coupling):
        agents = [delay2_agent] * 3
        net = nz.close_loop(agents, triangle_coupling)
        A, B, C = nz.assemble_nodes(agents)
        assert np.array_equal(net.A_cl - A, B @ triangle_coupling.L @ C)

    def test_zero_coupling_is_block_diagonal(self):
        agents = [random_minimal_agent(np.random.default_rng(k), 2) for k in range(2)]
        coupling = nz.Interconnection(
            L=np.zeros((2, 2)), R=np.eye(2), S=np.eye(2), D=np.zeros((2, 2))
        )
        net = nz.close_loop(agents, coupling)
        assert np.array_equal(net.A_cl[0:2, 2:4], np.zeros((2, 2)))
        assert np.array_equal(net.A_cl[2:4, 0:2], np.zeros((2, 2)))

    def test_validation_failure_propagates(self):
        agent = nz.AgentSystem(A=[[0.0, 1.0], [0.0, 0.0]], B=[[0.0], [0.0]], C=[[1.0, 0.0]])
        coupling = nz.Interconnection(L=[[0.0]], R=[[1.0]], S=[[1.0]], D=[[0.0]])
        with pytest.raises(nz.ValidationError, match="not reachable"):
            nz.close_loop([agent], coupling)

    def test_deterministic_and_pure(self, delay2_agent, triangle_coupling):
        n1 = nz.close_loop([delay2_agent] * 3, triangle_coupling)
        n2 = nz.close_loop([delay2_agent] * 3, triangle_coupling)
        assert n1.A_cl.tobytes() == n2.A_cl.tobytes()
        assert n1.B_cl.tobytes() == n2.B_cl.tobytes()
        assert n1.C_cl.tobytes() == n2.C_cl.tobytes()
        assert n1.D.tobytes() == n2.D.tobytes()


class TestTransferEval:
    def test_passthrough_double_delay(self):
        agent = _single_agent()
        coupling = nz.Interconnection(L=[[0.0]], R=[[1.0]], S=[[1.0]], D=[[0.0]])
        net = nz.close_loop([agent], coupling)
        val = nz.network_transfer_eval(net, 2.0)
        assert val.shape == (1, 1)
        assert abs(val[0, 0] - 0.25) < 1e-12

    def test_triangle_at_two(self, triangle_net):
        # exact rational value 1/((z^2-2)(z^2+1)) at z=2 is 1/10
        val = nz.network_transfer_eval(triangle_net, 2.0)
        assert abs(val[0, 0] - 0.1) < 1e-12

    def test_feedthrough_dominates_far_away(self):
        rng = np.random.default_rng(5)
        agent = random_minimal_agent(rng, 3)
        coupling = nz.Interconnection(
            L=rng.standard_normal((1, 1)),
            R=rng.standard_normal((1, 2)),
            S=rng.standard_normal((2, 1)),
            D=rng.standard_normal((2, 2)),
        )
        net = nz.close_loop([agent], coupling)
        val = nz.network_transfer_eval(net, 1e8)
        assert np.max(np.abs(val - coupling.D)) < 1e-6

    def test_pole_error_names_nearest_eigenvalue(self):
        agent = nz.AgentSystem(A=[[0.5]], B=[[1.0]], C=[[1.0]])
        coupling = nz.Interconnection(L=[[0.0]], R=[[1.0]], S=[[1.0]], D=[[0.0]])
        net = nz.close_loop([agent], coupling)
        with pytest.raises(nz.PoleError) as err:
            nz.network_transfer_eval(net, 0.5)
        assert abs(err.value.nearest_pole - 0.5) < 1e-12

    def test_interconnection_simple_values(self, triangle_coupling):
        simple = nz.Interconnection(L=[[0.0]], R=[[1.0]], S=[[1.0]], D=[[0.0]])
        assert abs(nz.interconnection_transfer_eval(simple, 2.0)[0, 0] - 0.5) < 1e-14
        # exact rational value phi(0) = 1/((0-2)(0+1)) = -1/2
        assert abs(nz.interconnection_transfer_eval(triangle_coupling, 0.0)[0, 0] + 0.5) < 1e-12
        const = nz.Interconnection(L=[[0.0]], R=[[0.0]], S=[[0.0]], D=[[1.0]])
        for eta in (0.3, -2.0, 1j):
            assert abs(nz.interconnection_transfer_eval(const, eta)[0, 0] - 1.0) < 1e-14


class TestTransferProperties:
    def test_passthrough_matches_agent(self):
        rng = np.random.default_rng(42)
        for k in range(5):
            n = int(rng.integers(1, 4))
            agent = random_minimal_agent(rng, n)
            coupling = nz.Interconnection(L=[[0.0]], R=[[1.0]], S=[[1.0]], D=[[0.0]])
            net = nz.close_loop([agent], coupling)
            radius = 1.0 + float(np.max(np.abs(np.linalg.eigvals(agent.A))))
            for z in sample_circle(radius, 20, 100 + k):
                got = nz.network_transfer_eval(net, z)[0, 0]
                x = np.linalg.solve(z * np.eye(n) - agent.A, agent.B)
                want = (agent.C @ x)[0, 0]
                assert abs(got - want) <= 1e-10 * max(abs(want), 1e-30)

    def test_homogeneous_reciprocal_identity(self):
        rng = np.random.default_rng(7)
        for k in range(5):
            g = random_fraction(rng)
            N = int(rng.integers(1, 4))
            coupling = nz.Interconnection(
                L=rng.standard_normal((N, N)),
                R=rng.standard_normal((N, 1)),
                S=rng.standard_normal((1, N)),
                D=[[float(rng.standard_normal())]],
            )
            hn = nz.HomogeneousNetwork(agent=g, count=N, coupling=coupling)
            net = nz.to_network(hn)
            radius = 2.0 + float(np.max(np.abs(np.linalg.eigvals(net.A_cl))))
            checked = 0
            for z in sample_circle(radius, 20, 300 + k):
                try:
                    gamma = nz.network_transfer_eval(net, z)
                    phi = nz.interconnection_transfer_eval(coupling, g.reciprocal_value(z))
                except nz.PoleError:
                    continue
                checked += 1
                scale = max(np.max(np.abs(phi)), 1e-30)
                assert np.max(np.abs(gamma - phi)) <= 1e-8 * scale
            assert checked >= 15
