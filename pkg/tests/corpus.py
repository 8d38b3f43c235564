"""Seeded random instance generators with conditioning guards.

Generators reject instances whose zeros are extreme in magnitude or nearly
coincident: those sit on conditioning cliffs where a fixed float matching
tolerance stops being meaningful, while the structural identities under
test are scale-free.  All draws are seeded, so every corpus is
reproducible.
"""

from __future__ import annotations

import numpy as np

import netzero as nz

MAX_ZERO_MAG = 25.0
MIN_ZERO_SEP = 1e-4
MIN_NONORIGIN_MAG = 0.02


def _well_spread(points, max_mag=MAX_ZERO_MAG, min_sep=MIN_ZERO_SEP) -> bool:
    pts = [complex(z) for z in points]
    if any(abs(z) > max_mag for z in pts):
        return False
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = abs(pts[i] - pts[j])
            if 1e-9 < d < min_sep * (1.0 + abs(pts[i])):
                return False
    return True


def random_fraction(rng, max_degree=3, zero_at_origin=False) -> nz.RationalSISO:
    """Random strictly proper coprime fraction with bounded roots."""
    while True:
        n = int(rng.integers(1, max_degree + 1))
        den_roots = list(rng.uniform(-1.4, 1.4, size=n))
        deg_p = int(rng.integers(0, n))
        if zero_at_origin:
            n = max(n, 2)
            den_roots = list(rng.uniform(0.2, 1.2, size=n) * rng.choice([-1.0, 1.0], size=n))
            deg_p = max(deg_p, 1)
        try:
            q = nz.Polynomial.from_roots(den_roots)
            if deg_p == 0:
                p = nz.Polynomial([float(rng.standard_normal())])
            else:
                p_roots = list(rng.uniform(-1.5, 1.5, size=deg_p))
                if zero_at_origin:
                    p_roots[0] = 0.0
                p = nz.Polynomial.from_roots(p_roots, leading=float(rng.standard_normal()))
            return nz.RationalSISO(num=p, den=q)
        except (ValueError, nz.MinimalityError):
            continue


def random_minimal_agent(rng, n: int) -> nz.AgentSystem:
    """Random minimal SISO state-space agent with moderate spectrum."""
    while True:
        A = rng.standard_normal((n, n)) * 0.8
        b = rng.standard_normal((n, 1))
        c = rng.standard_normal((1, n))
        agent = nz.AgentSystem(A=A, B=b, C=c)
        probe = nz.Interconnection(
            L=np.zeros((1, 1)), R=[[1.0]], S=[[1.0]], D=[[0.0]]
        )
        if not nz.validate_network([agent], probe):
            return agent


def random_interconnection(rng, N: int, m: int, p: int, dmode: str) -> nz.Interconnection:
    L = rng.standard_normal((N, N))
    R = rng.standard_normal((N, m))
    S = rng.standard_normal((p, N))
    if dmode == "zero":
        D = np.zeros((p, m))
    elif dmode == "invertible":
        if m != p:
            raise ValueError("invertible D requires m == p")
        while True:
            D = rng.standard_normal((m, m))
            if abs(np.linalg.det(D)) > 0.1:
                break
    else:
        D = rng.standard_normal((p, m))
    return nz.Interconnection(L=L, R=R, S=S, D=D)


def homogeneous_corpus(count: int, seed: int) -> list[nz.HomogeneousNetwork]:
    """Random homogeneous instances (N <= 4, agent degree <= 3, mixed D).

    Kept instances have an interconnection transfer function of full normal
    rank and well-spread zeros, so the multiset comparisons downstream are
    numerically meaningful.
    """
    rng = np.random.default_rng(seed)
    out: list[nz.HomogeneousNetwork] = []
    trial = 0
    while len(out) < count:
        trial += 1
        N = int(rng.integers(1, 5))
        m = int(rng.integers(1, 3))
        p = int(rng.integers(1, 3))
        dmode = ("zero", "generic", "invertible")[trial % 3]
        if dmode == "invertible" and m != p:
            dmode = "generic"
        g = random_fraction(rng)
        coupling = random_interconnection(rng, N, m, p, dmode)
        int_report = nz.invariant_zeros(
            coupling.L, coupling.R, coupling.S, coupling.D, seed=seed + trial
        )
        if int_report.normal_rank_tf < min(m, p):
            continue
        if not _well_spread(int_report.finite_zeros):
            continue
        hn = nz.HomogeneousNetwork(agent=g, count=N, coupling=coupling)
        fast = nz.homogeneous_zero_report(hn, seed=seed + trial)
        if not _well_spread(fast.finite_zeros):
            continue
        out.append(hn)
    return out


def lossless_agent(rng, max_extra: int = 2) -> nz.RationalSISO:
    """All-pass product scaled by delays: poles inside, unit modulus on the circle."""
    num = np.array([1.0])
    den = np.array([1.0])
    origin_poles = int(rng.integers(1, 3))
    den = np.convolve(den, np.concatenate([np.zeros(origin_poles), [1.0]]))
    for _ in range(int(rng.integers(0, max_extra + 1))):
        if rng.random() < 0.5:
            a = float(rng.uniform(-0.85, 0.85))
            num = np.convolve(num, [1.0, -a])
            den = np.convolve(den, [-a, 1.0])
        else:
            re = float(rng.uniform(-0.6, 0.6))
            im = float(rng.uniform(0.1, 0.6))
            mod2 = re * re + im * im
            num = np.convolve(num, [1.0, -2.0 * re, mod2])
            den = np.convolve(den, [mod2, -2.0 * re, 1.0])
    sign = float(rng.choice([-1.0, 1.0]))
    return nz.RationalSISO(num=nz.Polynomial(num * sign), den=nz.Polynomial(den))


def passive_agent(rng) -> nz.RationalSISO:
    """Strict gain reduction of a lossless agent: passive, not lossless."""
    g = lossless_agent(rng)
    gain = float(rng.uniform(0.25, 0.9))
    return nz.RationalSISO(num=g.num.scale(gain), den=g.den)


def siso_full_d_interconnection(rng, N: int) -> nz.Interconnection:
    """Scalar external ports with nonzero feedthrough (full-rank 1x1 D)."""
    L = rng.standard_normal((N, N)) * float(rng.uniform(0.4, 1.2))
    R = rng.standard_normal((N, 1))
    S = rng.standard_normal((1, N))
    d = float(rng.uniform(0.3, 2.0)) * float(rng.choice([-1.0, 1.0]))
    return nz.Interconnection(L=L, R=R, S=S, D=[[d]])


def blocking_corpus(count: int, seed: int) -> list[nz.NetworkRealization]:
    """Random minimal networks (state dim <= 8) with tame zero locations.

    A slice of the corpus is built around agents with a zero at the origin
    so the origin-flag correspondence is exercised in the true-true case,
    not only trivially.
    """
    rng = np.random.default_rng(seed)
    out: list[nz.NetworkRealization] = []
    trial = 0
    while len(out) < count:
        trial += 1
        with_origin = trial % 5 == 0
        dmode = ("zero", "generic", "invertible")[trial % 3]
        if with_origin:
            dmode = "zero"
        N = int(rng.integers(1, 3))
        m = int(rng.integers(1, 3))
        p = int(rng.integers(1, 3))
        if dmode == "invertible" and m != p:
            dmode = "generic"
        if with_origin:
            m = p = 1
            agents = [
                nz.controllable_realization(random_fraction(rng, zero_at_origin=True))
            ] * N
        else:
            agents = [random_minimal_agent(rng, int(rng.integers(1, 4))) for _ in range(N)]
        if sum(a.n for a in agents) > 8:
            continue
        try:
            coupling = random_interconnection(rng, N, m, p, dmode)
            if dmode != "zero":
                coupling = nz.Interconnection(
                    L=coupling.L * 0.7, R=coupling.R, S=coupling.S, D=coupling.D
                )
            net = nz.close_loop(agents, coupling)
        except (ValueError, nz.ValidationError):
            continue
        if not (nz.pbh_reachable(net.A_cl, net.B_cl) and nz.pbh_observable(net.A_cl, net.C_cl)):
            continue
        rep = nz.invariant_zeros(*net.quadruple(), seed=seed + trial)
        zs = rep.finite_zeros
        if not _well_spread(zs, max_mag=15.0):
            continue
        if any(1e-8 < abs(z) < MIN_NONORIGIN_MAG for z in zs):
            continue
        out.append(net)
    return out


def circulant_corpus(count: int, seed: int):
    """(agent, spec, R, S, D) tuples with invertible square feedthrough."""
    rng = np.random.default_rng(seed)
    out = []
    trial = 0
    while len(out) < count:
        trial += 1
        N = int(rng.integers(1, 6))
        m = int(rng.integers(1, 3))
        g = random_fraction(rng)
        spec = nz.CirculantSpec(tuple(rng.standard_normal(N) * 0.8))
        R = rng.standard_normal((N, m))
        S = rng.standard_normal((m, N))
        D = rng.standard_normal((m, m)) + 2.2 * np.eye(m)
        # chance-coincident interconnection zeros put the preimage roots on
        # a conditioning cliff; keep eigenvalues of the closed coupling
        # well separated
        w = np.linalg.eigvals(nz.circulant_matrix(spec) - R @ np.linalg.solve(D, S))
        if not _well_spread(w, min_sep=1e-3):
            continue
        fast = nz.circulant_zero_report(g, spec, R, S, D, seed=seed + trial)
        if not _well_spread(fast.finite_zeros):
            continue
        out.append((g, spec, R, S, D))
    return out


def design_deficient_corpus(count: int, seed: int):
    """Minimal SISO (L, R, S) triples whose relative degree is below N."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        N = int(rng.integers(2, 6))
        L = rng.standard_normal((N, N)) * 0.8
        R = rng.standard_normal((N, 1))
        S = rng.standard_normal((1, N))
        chk = nz.design_check(L, R, S)
        if not (chk.reachable and chk.observable):
            continue
        if chk.relative_degree is None or chk.relative_degree >= N:
            continue
        out.append((L, R, S))
    return out
