"""Scalar rational transfer functions as coprime polynomial fractions.

The central objects are a strictly proper fraction ``g = p/q`` with monic
``q`` (the agent transfer function) and its reciprocal ``h = q/p``, whose
level sets ``h(z) = eta`` are computed as roots of ``q - eta p``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numeric import as_matrix, frozen, spectral_radius

__all__ = [
    "Polynomial",
    "RationalSISO",
    "MinimalityError",
    "AgentClassification",
    "siso_from_statespace",
    "poly_roots",
    "h_preimage",
    "classify_agent",
    "relative_degree",
]

#: p and q are declared non-coprime when a root of p falls within this
#: relative distance of a root of q.
COPRIME_TOL = 1e-7


class MinimalityError(ValueError):
    """State-space data is not a minimal realization."""


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Dense polynomial with ascending coefficients.

    The leading coefficient is nonzero unless this is the zero polynomial,
    which is stored as the single coefficient ``[0.0]``.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a nonempty 1-D sequence")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        if not np.iscomplexobj(c):
            c = c.astype(float)
        # trim exactly-zero leading (high-order) coefficients
        last = c.size - 1
        while last > 0 and c[last] == 0:
            last -= 1
        object.__setattr__(self, "coeffs", frozen(c[: last + 1]))

    @classmethod
    def from_roots(cls, roots, leading: float = 1.0) -> "Polynomial":
        c = np.atleast_1d(np.poly(list(roots))) * leading if len(roots) else np.array([leading])
        if np.iscomplexobj(c) and np.max(np.abs(c.imag)) <= 1e-12 * max(1.0, np.max(np.abs(c))):
            c = c.real
        return cls(c[::-1].copy())

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 1 and self.coeffs[0] == 0

    def __call__(self, z):
        return np.polyval(self.coeffs[::-1], z)

    def monic(self) -> "Polynomial":
        lead = self.coeffs[-1]
        if lead == 0:
            raise ValueError("the zero polynomial cannot be made monic")
        return Polynomial(self.coeffs / lead)

    def scale(self, s) -> "Polynomial":
        return Polynomial(self.coeffs * s)

    def __repr__(self):
        return f"Polynomial(degree={self.degree}, coeffs={np.array2string(np.asarray(self.coeffs), precision=6)})"


def _pairwise_min_distance(a: np.ndarray, b: np.ndarray) -> float:
    if a.size == 0 or b.size == 0:
        return np.inf
    return float(np.min(np.abs(a[:, None] - b[None, :])))


@dataclass(frozen=True, eq=False)
class RationalSISO:
    """Strictly proper coprime fraction ``g = num/den`` with monic ``den``."""

    num: Polynomial
    den: Polynomial

    def __post_init__(self):
        num, den = self.num, self.den
        if den.is_zero:
            raise ValueError("denominator must be nonzero")
        if num.is_zero:
            raise MinimalityError("numerator is zero; the transfer function vanishes")
        if num.degree >= den.degree:
            raise ValueError(
                f"fraction must be strictly proper: deg num = {num.degree} "
                f">= deg den = {den.degree}"
            )
        lead = den.coeffs[-1]
        if lead != 1.0:
            num = num.scale(1.0 / lead)
            den = den.scale(1.0 / lead)
        p_roots = np.roots(num.coeffs[::-1]) if num.degree > 0 else np.array([])
        q_roots = np.roots(den.coeffs[::-1])
        for r in p_roots:
            if q_roots.size and np.min(np.abs(q_roots - r)) <= COPRIME_TOL * (1.0 + abs(r)):
                raise MinimalityError(
                    f"numerator and denominator share a root near {complex(r):.6g}"
                )
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @property
    def degree(self) -> int:
        """McMillan degree (degree of the monic denominator)."""
        return self.den.degree

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def reciprocal_value(self, z):
        """h(z) = den(z)/num(z), the reciprocal of the fraction."""
        return self.den(z) / self.num(z)


def siso_from_statespace(A, b, c) -> RationalSISO:
    """Coprime fraction of ``c (zI - A)^{-1} b`` for a minimal SISO triple.

    The denominator is the characteristic polynomial of ``A`` (monic); the
    numerator is recovered by interpolating ``q(z) * g(z)`` at ``n`` real
    points away from the spectrum, which has exact degree below ``n``.
    Raises :class:`MinimalityError` when the resulting pair shares a root.
    """
    A = as_matrix(A, "A")
    b = np.asarray(b, dtype=float).reshape(A.shape[0], -1)
    c = np.asarray(c, dtype=float).reshape(-1, A.shape[0])
    if A.shape[0] != A.shape[1] or b.shape[1] != 1 or c.shape[0] != 1:
        raise ValueError("expected a SISO triple: square A, column b, row c")
    n = A.shape[0]
    q_desc = np.poly(A)  # descending, monic
    q = Polynomial(q_desc[::-1].copy())

    eigs = np.linalg.eigvals(A)
    base = 1.0 + spectral_radius(A)
    # Chebyshev-style candidates on [-2*base, 2*base]; keep the n farthest
    # from the spectrum for a well-posed Vandermonde solve.
    candidates = 2.0 * base * np.cos(np.pi * (2 * np.arange(4 * n) + 1) / (8.0 * n))
    dist = np.min(np.abs(candidates[:, None] - eigs[None, :]), axis=1)
    points = candidates[np.argsort(dist)[::-1][:n]]
    values = np.empty(n)
    for i, t in enumerate(points):
        x = np.linalg.solve(t * np.eye(n) - A, b)
        values[i] = float(np.real(q(t) * (c @ x)[0, 0]))
    V = np.vander(points, N=n, increasing=True)
    p_coeffs, *_ = np.linalg.lstsq(V, values, rcond=None)
    # zero out interpolation noise so the numerator degree comes out exact
    largest = np.max(np.abs(p_coeffs))
    p_coeffs = np.where(np.abs(p_coeffs) > 1e-9 * largest, p_coeffs, 0.0)

    scale = max(largest, np.max(np.abs(q.coeffs)))
    if largest <= 1e-12 * scale:
        raise MinimalityError("transfer function is zero; realization is not minimal")
    p = Polynomial(p_coeffs)
    try:
        return RationalSISO(num=p, den=q)
    except MinimalityError as exc:
        raise MinimalityError(f"realization is not minimal: {exc}") from None


def poly_roots(poly: Polynomial) -> np.ndarray:
    """All roots with multiplicity, via the balanced companion matrix."""
    if poly.is_zero:
        raise ValueError("roots of the zero polynomial are undefined")
    if poly.degree == 0:
        return np.array([], dtype=complex)
    return np.roots(poly.coeffs[::-1]).astype(complex)


def h_preimage(g: RationalSISO, eta: complex) -> np.ndarray:
    """All z with ``den(z)/num(z) = eta``, i.e. the roots of ``den - eta num``.

    Since ``g`` is strictly proper the difference keeps the monic leading
    coefficient of ``den``, so exactly ``deg den`` values are returned,
    counted with multiplicity.
    """
    q = g.den.coeffs
    p = g.num.coeffs
    diff = np.array(q, dtype=complex)
    diff[: p.size] -= eta * p
    return np.roots(diff[::-1]).astype(complex)


@dataclass(frozen=True)
class AgentClassification:
    """Outcome of the lossless/passive test with a numerical witness."""

    kind: str  # "lossless" | "passive" | "neither"
    witness: complex | None
    max_pole_modulus: float
    max_circle_modulus: float
    unit_modulus_deviation: float


def classify_agent(g: RationalSISO, grid_size: int = 256, tol: float = 1e-6) -> AgentClassification:
    """Classify ``g`` as lossless, passive or neither.

    Lossless: all poles strictly inside the unit disc and ``|g| = 1`` on the
    unit circle.  Passive: poles in the closed disc and ``|g| <= 1`` on the
    circle.  The circle conditions are checked on a uniform grid, so the
    verdict is exact only up to the grid resolution.
    """
    if grid_size < 16:
        raise ValueError("grid_size must be at least 16")
    poles = poly_roots(g.den)
    max_pole = float(np.max(np.abs(poles))) if poles.size else 0.0
    theta = 2.0 * np.pi * np.arange(grid_size) / grid_size
    zs = np.exp(1j * theta)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.abs(g(zs))
    vals = np.where(np.isfinite(vals), vals, np.inf)
    max_circle = float(np.max(vals))
    deviation = float(np.max(np.abs(vals - 1.0)))

    if max_pole < 1.0 - tol and deviation <= tol:
        return AgentClassification("lossless", None, max_pole, max_circle, deviation)
    if max_pole <= 1.0 + tol and max_circle <= 1.0 + tol:
        witness = complex(zs[int(np.argmax(np.abs(vals - 1.0)))])
        return AgentClassification("passive", witness, max_pole, max_circle, deviation)
    if max_circle > 1.0 + tol:
        witness = complex(zs[int(np.argmax(vals))])
    else:
        witness = complex(poles[int(np.argmax(np.abs(poles)))])
    return AgentClassification("neither", witness, max_pole, max_circle, deviation)


def relative_degree(L, R, S, tol: float = 1e-9) -> int | None:
    """Index of the first nonzero Markov parameter ``S L^{k-1} R``.

    Returns ``None`` when every parameter up to the state dimension is zero
    (infinite relative degree).  The zero test is relative:
    ``|S L^{k-1} R| <= tol * |S| * |L|^{k-1} * |R|``.
    """
    L = as_matrix(L, "L")
    R = np.asarray(R, dtype=float).reshape(L.shape[0], -1)
    S = np.asarray(S, dtype=float).reshape(-1, L.shape[0])
    if R.shape[1] != 1 or S.shape[0] != 1:
        raise ValueError("relative degree is defined for single-input single-output data")
    N = L.shape[0]
    norm_L = np.linalg.norm(L, 2) if N else 0.0
    norm_R = np.linalg.norm(R)
    norm_S = np.linalg.norm(S)
    power = np.eye(N)
    for k in range(1, N + 1):
        markov = float((S @ power @ R)[0, 0])
        threshold = tol * norm_S * norm_R * (norm_L ** (k - 1) if k > 1 else 1.0)
        if abs(markov) > threshold:
            return k
        power = L @ power
    return None
