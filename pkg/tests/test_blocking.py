"""Blocking transform, structured transfer identity and zero correspondence."""

import numpy as np
import pytest

import netzero as nz
from netzero._numeric import sample_circle, spectral_radius

from corpus import blocking_corpus, homogeneous_corpus, siso_full_d_interconnection, lossless_agent


def _scalar_net(a, b, c, d):
    agent = nz.AgentSystem(A=[[a]], B=[[1.0]], C=[[1.0]])
    coupling = nz.Interconnection(L=[[0.0]], R=[[b]], S=[[c]], D=[[d]])
    return nz.close_loop([agent], coupling)


class TestBlockSystem:
    def test_identity_blocking(self, triangle_net):
        blk = nz.block_system(triangle_net, 1)
        assert np.array_equal(blk.A_b, triangle_net.A_cl)
        assert np.array_equal(blk.B_b, triangle_net.B_cl)
        assert np.array_equal(blk.C_b, triangle_net.C_cl)
        assert np.array_equal(blk.D_b, triangle_net.D)

    def test_scalar_formulas(self):
        a, b, c, d = 0.5, 2.0, -1.5, 0.25
        net = _scalar_net(a, b, c, d)
        blk = nz.block_system(net, 2)
        assert np.allclose(blk.A_b, [[a * a]])
        assert np.allclose(blk.B_b, [[a * b, b]])
        assert np.allclose(blk.C_b, [[c], [c * a]])
        assert np.allclose(blk.D_b, [[d, 0.0], [c * b, d]])

    def test_triangle_blocked_feedthrough_is_triangular(self, triangle_net):
        blk = nz.block_system(triangle_net, 2)
        assert blk.D_b.shape == (2, 2)
        assert blk.D_b[0, 0] == 0.0 and blk.D_b[1, 1] == 0.0
        assert blk.D_b[0, 1] == 0.0

    def test_block_size_guard(self, triangle_net):
        with pytest.raises(ValueError, match="at least 1"):
            nz.block_system(triangle_net, 0)

    def test_feedthrough_block_structure(self):
        rng = np.random.default_rng(14)
        from corpus import random_minimal_agent

        agents = [random_minimal_agent(rng, 2), random_minimal_agent(rng, 1)]
        coupling = nz.Interconnection(
            L=rng.standard_normal((2, 2)),
            R=rng.standard_normal((2, 2)),
            S=rng.standard_normal((2, 2)),
            D=rng.standard_normal((2, 2)),
        )
        net = nz.close_loop(agents, coupling)
        T = 3
        blk = nz.block_system(net, T)
        p, m = net.p, net.m
        for i in range(T):
            for j in range(T):
                block = blk.D_b[i * p:(i + 1) * p, j * m:(j + 1) * m]
                if i == j:
                    assert np.array_equal(block, net.D)
                elif i < j:
                    assert np.all(block == 0.0)
                else:
                    want = net.C_cl @ np.linalg.matrix_power(net.A_cl, i - j - 1) @ net.B_cl
                    assert np.allclose(block, want)


class TestBlockedTransfer:
    def test_identity_blocking_matches_network(self, triangle_net):
        blk = nz.block_system(triangle_net, 1)
        for z in (2.0, -1.3, 0.7 + 0.4j):
            got = nz.blocked_transfer_eval(blk, z)
            want = nz.network_transfer_eval(triangle_net, z)
            assert np.allclose(got, want, rtol=1e-12, atol=1e-12)

    def test_scalar_two_route_agreement(self):
        net = _scalar_net(0.5, 2.0, -1.5, 0.0)
        blk = nz.block_system(net, 2)
        for z in (1.7, -0.9, 0.3 + 1.1j):
            lhs = nz.blocked_transfer_eval(blk, z**2)
            rhs = nz.blocked_transfer_structured(net, 2, z)
            assert np.max(np.abs(lhs - rhs)) <= 1e-10 * max(np.max(np.abs(lhs)), 1.0)

    def test_triangle_two_route_agreement(self, triangle_net):
        lhs = nz.blocked_transfer_eval(nz.block_system(triangle_net, 2), 4.0)
        rhs = nz.blocked_transfer_structured(triangle_net, 2, 2.0)
        assert np.max(np.abs(lhs - rhs)) <= 1e-8 * max(np.max(np.abs(lhs)), 1e-12)

    def test_structural_identity_on_corpus(self):
        nets = blocking_corpus(10, seed=88)
        rng = np.random.default_rng(15)
        for idx, net in enumerate(nets):
            T = int(rng.integers(1, 5))
            blk = nz.block_system(net, T)
            radius = 1.0 + spectral_radius(net.A_cl)
            for z in sample_circle(radius, 5, 600 + idx):
                lhs = nz.blocked_transfer_eval(blk, z**T)
                rhs = nz.blocked_transfer_structured(net, T, z)
                scale = max(np.max(np.abs(lhs)), 1e-12)
                assert np.max(np.abs(lhs - rhs)) <= 1e-8 * scale


class TestCorrespondence:
    def test_passthrough_agent_zero_squares(self):
        g = nz.RationalSISO(num=nz.Polynomial([-2.0, 1.0]), den=nz.Polynomial([0.0, 0.0, 1.0]))
        hn = nz.HomogeneousNetwork(
            agent=g, count=1,
            coupling=nz.Interconnection(L=[[0.0]], R=[[1.0]], S=[[1.0]], D=[[0.0]]),
        )
        net = nz.to_network(hn)
        corr = nz.correspondence_report(net, 2)
        assert nz.match_zero_multisets(corr.unblocked.finite_zeros, [2.0], tol=1e-8).matched
        observed = [z for z in corr.blocked.finite_zeros if abs(z) > 1e-6]
        assert nz.match_zero_multisets(observed, [4.0], tol=1e-6).matched
        assert corr.nonzero_match

    def test_triangle_power_collision(self, triangle_net):
        # both unblocked zeros +1 and -1 square onto the single point 1
        corr = nz.correspondence_report(triangle_net, 2)
        assert corr.nonzero_match
        blocked_nonzero = [z for z in corr.blocked.finite_zeros if abs(z) > 1e-6]
        centers = {round(z.real, 6) for z in blocked_nonzero}
        assert centers == {1.0}

    def test_identity_blocking_trivially_corresponds(self, triangle_net):
        corr = nz.correspondence_report(triangle_net, 1)
        assert corr.nonzero_match
        assert corr.origin_match is True
        assert corr.infinity_match is True

    def test_nonminimal_marks_flags_not_applicable(self):
        # unobservable closed loop: S = 0 readout
        agent = nz.AgentSystem(A=[[0.5]], B=[[1.0]], C=[[1.0]])
        coupling = nz.Interconnection(L=[[0.0]], R=[[1.0]], S=[[0.0]], D=[[1.0]])
        net = nz.close_loop([agent], coupling)
        corr = nz.correspondence_report(net, 2)
        assert not corr.minimal
        assert corr.origin_match is None
        assert corr.infinity_match is None

    def test_correspondence_on_corpus(self):
        nets = blocking_corpus(25, seed=505)
        for idx, net in enumerate(nets):
            T = (2, 3)[idx % 2]
            corr = nz.correspondence_report(net, T, seed=idx)
            assert corr.nonzero_match, (idx, corr.unmatched_unblocked, corr.unmatched_blocked)
            assert corr.minimal
            assert corr.origin_match is True
            assert corr.infinity_match is True

    def test_origin_case_is_exercised(self):
        nets = blocking_corpus(25, seed=505)
        assert any(
            nz.invariant_zeros(*net.quadruple(), seed=1).has_origin_zero for net in nets
        )


class TestBlockedHomogeneous:
    def test_identity_block_reduces_to_preimage_report(self, swap_golden):
        hn, golden = swap_golden
        rep = nz.blocked_homogeneous_zeros(hn, 1)
        assert nz.match_zero_multisets(rep.finite_zeros, golden, tol=1e-9).matched
        assert not rep.has_infinite_zero

    def test_scalar_rotation_collapse(self):
        g = nz.RationalSISO(num=nz.Polynomial([1.0]), den=nz.Polynomial([0.0, 1.0]))
        hn = nz.HomogeneousNetwork(
            agent=g, count=1,
            coupling=nz.Interconnection(L=[[0.0]], R=[[1.0]], S=[[0.5]], D=[[1.0]]),
        )
        rep = nz.blocked_homogeneous_zeros(hn, 2)
        assert nz.match_zero_multisets(rep.finite_zeros, [0.25], tol=1e-9).matched

    def test_swap_golden_squares(self, swap_golden):
        hn, golden = swap_golden
        rep = nz.blocked_homogeneous_zeros(hn, 2)
        assert nz.match_zero_multisets(rep.finite_zeros, sorted(golden**2), tol=1e-9).matched

    def test_rank_deficient_feedthrough_rejected(self, triangle_homogeneous):
        with pytest.raises(nz.HypothesisViolationError):
            nz.blocked_homogeneous_zeros(triangle_homogeneous, 2)

    def test_matches_explicit_blocking(self):
        rng = np.random.default_rng(73)
        for k in range(8):
            N = int(rng.integers(1, 4))
            hn = nz.HomogeneousNetwork(
                agent=lossless_agent(rng), count=N,
                coupling=siso_full_d_interconnection(rng, N),
            )
            T = int(rng.integers(1, 4))
            fast = nz.blocked_homogeneous_zeros(hn, T, seed=k)
            net = nz.to_network(hn)
            blk = nz.block_system(net, T)
            direct = nz.invariant_zeros(*blk.quadruple(), seed=k)
            assert not direct.has_infinite_zero
            got = [c for c, _ in direct.zero_clusters() if abs(c) > 1e-6]
            want = [z for z in fast.finite_zeros if abs(z) > 1e-6]
            assert nz.match_zero_multisets(got, want, tol=1e-6).matched, (k, got, want)
