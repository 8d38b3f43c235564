"""Exact rational ground truth for pencil ranks, determinants and zeros.

Small systems with rational entries admit exact answers: ranks by
fraction-free elimination over the complex rationals, determinant
polynomials by exact interpolation at integer points.  These serve as the
independent oracle against which the floating-point engine is validated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "QC",
    "DegeneratePencilError",
    "to_exact",
    "exact_matrix",
    "exact_rank",
    "exact_det",
    "exact_solve",
    "exact_pencil",
    "exact_rank_at",
    "pencil_det_poly",
    "oracle_zeros_small",
]


class DegeneratePencilError(ValueError):
    """The pencil determinant vanishes identically."""


@dataclass(frozen=True)
class QC:
    """Exact complex rational: a pair of Fractions."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, other: "QC") -> "QC":
        return QC(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QC") -> "QC":
        return QC(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "QC":
        return QC(-self.re, -self.im)

    def __mul__(self, other: "QC") -> "QC":
        return QC(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "QC") -> "QC":
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by exact zero")
        return QC(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))


_ZERO = QC()
_ONE = QC(Fraction(1))


def to_exact(x) -> QC:
    """Coerce ints, Fractions, floats (exactly) and complex values to QC."""
    if isinstance(x, QC):
        return x
    if isinstance(x, complex):
        return QC(Fraction(x.real), Fraction(x.imag))
    return QC(Fraction(x))


def exact_matrix(rows) -> list[list[QC]]:
    arr = np.asarray(rows, dtype=object)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return [[to_exact(arr[i, j]) for j in range(arr.shape[1])] for i in range(arr.shape[0])]


def _bareiss(M: list[list[QC]]) -> tuple[int, QC]:
    """Fraction-free elimination with full pivoting: (rank, determinant).

    The determinant is meaningful only for square input; it is the signed
    last pivot, or exact zero when the rank is deficient.
    """
    M = [row[:] for row in M]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    sign = 1
    prev = _ONE
    rank = 0
    for k in range(min(rows, cols)):
        # largest pivot by |.|^2 keeps intermediate growth modest
        best = None
        best_size = Fraction(0)
        for i in range(k, rows):
            for j in range(k, cols):
                size = M[i][j].abs2()
                if size > best_size:
                    best, best_size = (i, j), size
        if best is None:
            break
        bi, bj = best
        if bi != k:
            M[k], M[bi] = M[bi], M[k]
            sign = -sign
        if bj != k:
            for row in M:
                row[k], row[bj] = row[bj], row[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, rows):
            for j in range(k + 1, cols):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) / prev
            M[i][k] = _ZERO
        prev = pivot
        rank += 1
    if rows == cols:
        if rank < rows:
            det = _ZERO
        else:
            det = M[rows - 1][rows - 1]
            if sign < 0:
                det = -det
    else:
        det = _ZERO
    return rank, det


def exact_rank(M) -> int:
    rank, _ = _bareiss(exact_matrix(M) if not _is_qc_matrix(M) else M)
    return rank


def exact_det(M) -> QC:
    mat = exact_matrix(M) if not _is_qc_matrix(M) else M
    if len(mat) != len(mat[0]):
        raise ValueError("determinant requires a square matrix")
    _, det = _bareiss(mat)
    return det


def _is_qc_matrix(M) -> bool:
    return isinstance(M, list) and M and isinstance(M[0], list) and isinstance(M[0][0], QC)


def exact_solve(M, rhs) -> list[QC]:
    """Solve a square exact system by Gaussian elimination with pivoting."""
    A = exact_matrix(M) if not _is_qc_matrix(M) else [row[:] for row in M]
    b = [to_exact(x) for x in rhs]
    n = len(A)
    if any(len(row) != n for row in A) or len(b) != n:
        raise ValueError("exact_solve requires a square system")
    for k in range(n):
        pivot_row = max(range(k, n), key=lambda i: A[i][k].abs2())
        if A[pivot_row][k].is_zero:
            raise ZeroDivisionError("singular exact system")
        if pivot_row != k:
            A[k], A[pivot_row] = A[pivot_row], A[k]
            b[k], b[pivot_row] = b[pivot_row], b[k]
        for i in range(k + 1, n):
            if A[i][k].is_zero:
                continue
            factor = A[i][k] / A[k][k]
            for j in range(k, n):
                A[i][j] = A[i][j] - factor * A[k][j]
            b[i] = b[i] - factor * b[k]
    x = [_ZERO] * n
    for i in range(n - 1, -1, -1):
        acc = b[i]
        for j in range(i + 1, n):
            acc = acc - A[i][j] * x[j]
        x[i] = acc / A[i][i]
    return x


def exact_pencil(A, B, C, D, z) -> list[list[QC]]:
    """Exact ``[[zI - A, -B], [C, D]]`` with a rational (complex) z."""
    A = exact_matrix(A)
    B = exact_matrix(B)
    C = exact_matrix(C)
    D = exact_matrix(D)
    zq = to_exact(z)
    n = len(A)
    p = len(C)
    m = len(B[0])
    out: list[list[QC]] = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = -A[i][j]
            if i == j:
                entry = entry + zq
            row.append(entry)
        row.extend(-B[i][j] for j in range(m))
        out.append(row)
    for i in range(p):
        row = list(C[i])
        row.extend(D[i][j] for j in range(m))
        out.append(row)
    return out


def exact_rank_at(A, B, C, D, z) -> int:
    """Exact rank of the system pencil at a rational point."""
    rank, _ = _bareiss(exact_pencil(A, B, C, D, z))
    return rank


def pencil_det_poly(A, B, C, D) -> list[QC]:
    """Exact ascending coefficients of ``det Pi(z)`` for a square pencil.

    Only the n diagonal entries of the top-left block carry z, so the
    degree is at most n; the coefficients are recovered by exact evaluation
    at the integers 0..n and an exact Vandermonde solve, then re-checked at
    a held-out point.
    """
    n = len(exact_matrix(A))
    p = len(exact_matrix(C))
    m = len(exact_matrix(B)[0])
    if n + p != n + m:
        raise ValueError("pencil determinant requires a square pencil (m = p)")
    points = [Fraction(k) for k in range(n + 1)]
    values = [exact_det(exact_pencil(A, B, C, D, z)) for z in points]
    V = [[to_exact(z**j) for j in range(n + 1)] for z in points]
    coeffs = exact_solve(V, values)
    # held-out self-check: interpolation must reproduce the determinant
    z_check = Fraction(n + 1)
    det_check = exact_det(exact_pencil(A, B, C, D, z_check))
    acc = _ZERO
    for j, c in enumerate(coeffs):
        acc = acc + c * to_exact(z_check**j)
    if acc != det_check:
        raise ArithmeticError("exact interpolation failed the held-out check")
    while len(coeffs) > 1 and coeffs[-1].is_zero:
        coeffs.pop()
    return coeffs


def oracle_zeros_small(A, B, C, D) -> np.ndarray:
    """Roots of the exact pencil determinant, as floats.

    Returns an empty array when the determinant is a nonzero constant.
    Raises :class:`DegeneratePencilError` when it vanishes identically
    (the zero set is then not characterized by the determinant; exact rank
    scans via :func:`exact_rank_at` are the fallback).
    """
    n = len(exact_matrix(A))
    if n > 8:
        raise ValueError("oracle zeros are limited to state dimension 8")
    coeffs = pencil_det_poly(A, B, C, D)
    if all(c.is_zero for c in coeffs):
        raise DegeneratePencilError("pencil determinant is identically zero")
    if len(coeffs) == 1:
        return np.array([], dtype=complex)
    float_desc = [c.to_complex() for c in coeffs[::-1]]
    return np.roots(float_desc).astype(complex)
