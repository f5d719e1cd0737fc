"""Local-observable decomposition of bipartite operators.

Any Hermitian W on an n x n bipartite space expands uniquely over the tensor
basis {I, l_1..l_{n^2-1}} x {I, l_1..l_{n^2-1}} built from the su(n)
generators.  The nonzero l_i x l_j terms are exactly the joint measurement
settings two parties need in order to estimate Tr(W rho) locally.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qmath import DimensionError, HermitianOperator, gell_mann_basis

SETTING_TOL = 1e-10


@dataclass(frozen=True)
class LocalDecomposition:
    """Coefficients of W = c00 I x I + sum ci0 l_i x I + sum c0j I x l_j + sum cij l_i x l_j."""

    n: int
    c00: float
    ci0: np.ndarray
    c0j: np.ndarray
    cij: np.ndarray


def decompose(w: HermitianOperator, n: int) -> LocalDecomposition:
    """Extract all tensor-basis coefficients by trace inner products.

    With Tr(l_i l_j) = 2 delta_ij the projections are c00 = Tr(W)/n^2,
    ci0 = Tr(W (l_i x I))/(2n), c0j = Tr(W (I x l_j))/(2n) and
    cij = Tr(W (l_i x l_j))/4.
    """
    n = int(n)
    if w.dim != n * n:
        raise DimensionError(f"operator dimension {w.dim} is not {n}^2")
    lams = np.stack([g.mat for g in gell_mann_basis(n)])
    w4 = w.mat.reshape(n, n, n, n)
    # Tr(W (A x B)) = sum_{ijkl} W[i,j,k,l] A[k,i] B[l,j]
    c00 = float(np.trace(w.mat).real) / (n * n)
    wa = np.einsum("ijkj->ik", w4)
    ci0 = np.einsum("ik,aki->a", wa, lams).real / (2 * n)
    wb = np.einsum("ijil->jl", w4)
    c0j = np.einsum("jl,alj->a", wb, lams).real / (2 * n)
    half = np.einsum("ijkl,aki->ajl", w4, lams)
    cij = np.einsum("ajl,blj->ab", half, lams).real / 4
    return LocalDecomposition(n=n, c00=c00, ci0=ci0, c0j=c0j, cij=cij)


def reconstruct(d: LocalDecomposition) -> HermitianOperator:
    """Reassemble the operator from its decomposition coefficients."""
    n = d.n
    lams = [g.mat for g in gell_mann_basis(n)]
    eye = np.eye(n, dtype=complex)
    w = d.c00 * np.eye(n * n, dtype=complex)
    for i, li in enumerate(lams):
        if d.ci0[i] != 0.0:
            w = w + d.ci0[i] * np.kron(li, eye)
        if d.c0j[i] != 0.0:
            w = w + d.c0j[i] * np.kron(eye, li)
    for i, li in enumerate(lams):
        for j, lj in enumerate(lams):
            if d.cij[i, j] != 0.0:
                w = w + d.cij[i, j] * np.kron(li, lj)
    return HermitianOperator(w, check=False)


def settings_count(d: LocalDecomposition, tol: float = SETTING_TOL) -> int:
    """Number of joint settings: directed pairs (i, j) with |cij| above tol."""
    return int(np.sum(np.abs(d.cij) > tol))


def one_sided_terms(d: LocalDecomposition, tol: float = SETTING_TOL) -> list[tuple[str, int, float]]:
    """Nonzero single-sided terms, reported separately from the joint settings."""
    out: list[tuple[str, int, float]] = []
    for i, v in enumerate(d.ci0):
        if abs(v) > tol:
            out.append(("left", i + 1, float(v)))
    for j, v in enumerate(d.c0j):
        if abs(v) > tol:
            out.append(("right", j + 1, float(v)))
    return out
