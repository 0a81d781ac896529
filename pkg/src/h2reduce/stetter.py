"""Commuting multiplication matrices on the 2^N quotient space.

Column k of A_{X_i} holds the square-free normal form of x_i * b_k, where
b_k is the k-th basis monomial. If x_i * b_k is itself square-free the
column is a standard basis vector; otherwise one substitution
x_i^2 -> m_i . x + mu_i applies, whose result is a combination of columns
of lower popcount, so all N matrices are filled in one popcount sweep.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .dqideal import DiagQuadSystem, SparsePoly
from .errors import CommutationDefectError, DefectiveEigenstructureError
from .tolerances import Tolerances


@dataclass(frozen=True)
class MultiplicationMatrices:
    """The N commuting D x D matrices A_{X_i}, D = 2^N."""

    system: DiagQuadSystem
    matrices: np.ndarray          # shape (N, D, D)
    commutation_defect: float
    annihilation_defect: float

    @property
    def n_vars(self) -> int:
        return self.system.n_vars

    @property
    def dim(self) -> int:
        return self.system.dim


@dataclass(frozen=True)
class EigenSolution:
    xi: np.ndarray
    eigvec_residuals: np.ndarray
    multiplicity_hint: int


@dataclass(frozen=True)
class EigenSolutionSet:
    solutions: List[EigenSolution]
    rejected: List[EigenSolution]
    seed: int


def build_multiplication_matrices(
    sys: DiagQuadSystem, tol: Optional[Tolerances] = None
) -> MultiplicationMatrices:
    """Construct all A_{X_i} and verify commutation and annihilation."""
    tol = tol or Tolerances()
    n, dim = sys.n_vars, sys.dim
    mats = np.zeros((n, dim, dim), dtype=complex)
    order = sorted(range(dim), key=lambda b: bin(b).count("1"))
    for beta in order:
        for i in range(n):
            bit = 1 << i
            if not beta & bit:
                mats[i, beta | bit, beta] = 1.0
            else:
                gamma = beta ^ bit
                col = np.zeros(dim, dtype=complex)
                col[gamma] = sys.mu[i]
                for j in range(n):
                    if sys.m[i, j] != 0:
                        col += sys.m[i, j] * mats[j, :, gamma]
                mats[i, :, beta] = col

    fro = np.array([np.linalg.norm(mats[i]) for i in range(n)])
    cdef = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            c = np.linalg.norm(mats[i] @ mats[j] - mats[j] @ mats[i])
            cdef = max(cdef, c / (fro[i] * fro[j]))
    adef = 0.0
    eye = np.eye(dim)
    for i in range(n):
        g = mats[i] @ mats[i] - np.tensordot(sys.m[i], mats, axes=1) - sys.mu[i] * eye
        adef = max(adef, np.linalg.norm(g) / max(fro[i] ** 2, 1.0))
    if cdef > tol.commutation:
        raise CommutationDefectError(
            f"commutation defect {cdef:.3e} exceeds tolerance {tol.commutation:.1e}"
        )
    mats.setflags(write=False)
    return MultiplicationMatrices(
        system=sys,
        matrices=mats,
        commutation_defect=float(cdef),
        annihilation_defect=float(adef),
    )


def _solutions_from_vectors(
    mm: MultiplicationMatrices, vecs: np.ndarray, tol: Tolerances
):
    """Read xi off each eigenvector and split by residual acceptance."""
    n, dim = mm.n_vars, mm.dim
    mats = mm.matrices
    fro = np.array([np.linalg.norm(mats[i]) for i in range(n)])
    accepted, rejected = [], []
    for k in range(vecs.shape[1]):
        v = vecs[:, k]
        nv = v.conj() @ v
        xi = np.empty(n, dtype=complex)
        res = np.empty(n)
        ok = True
        for i in range(n):
            av = mats[i] @ v
            xi[i] = (v.conj() @ av) / nv
            # cross-check the Rayleigh quotient by the component ratio at
            # the dominant entry of v
            p = int(np.argmax(np.abs(v)))
            ratio = av[p] / v[p]
            res[i] = np.linalg.norm(av - xi[i] * v) / (fro[i] * np.linalg.norm(v))
            if res[i] > tol.eig_residual:
                ok = False
            elif abs(ratio - xi[i]) > 1e3 * tol.eig_residual * max(1.0, abs(xi[i])):
                # Rayleigh quotient and component ratio disagree: treat as
                # suspect even though the residual looks fine
                ok = False
        sol = EigenSolution(xi=xi, eigvec_residuals=res, multiplicity_hint=1)
        (accepted if ok else rejected).append(sol)
    return accepted, rejected


def _polish(xi: np.ndarray, sys: DiagQuadSystem, max_iter: int = 12) -> np.ndarray:
    """Newton-polish a root of F(x) = x^2 - Mx - mu.

    Eigenvector-derived tuples carry O(sqrt(eps)) noise on clustered spectra;
    a few Newton steps push well-conditioned roots to machine precision.
    Returns the input unchanged if the iteration fails to improve it.
    """
    def resid(x):
        return x * x - sys.m @ x - sys.mu

    best, best_r = xi, np.linalg.norm(resid(xi))
    x = xi.copy()
    for _ in range(max_iter):
        jac = 2.0 * np.diag(x) - sys.m
        try:
            step = np.linalg.solve(jac, resid(x))
        except np.linalg.LinAlgError:
            break
        x = x - step
        r = np.linalg.norm(resid(x))
        if r < best_r:
            best, best_r = x.copy(), r
        if r < 1e-15 * (1.0 + np.linalg.norm(x) ** 2):
            break
    return best


def _dedupe(solutions, tol: Tolerances):
    out: List[EigenSolution] = []
    counts: List[int] = []
    for s in solutions:
        placed = False
        for idx, u in enumerate(out):
            scale = max(
                np.linalg.norm(s.xi, np.inf), np.linalg.norm(u.xi, np.inf), 1e-300
            )
            if np.linalg.norm(s.xi - u.xi, np.inf) <= tol.cluster * scale:
                counts[idx] += 1
                placed = True
                break
        if not placed:
            out.append(s)
            counts.append(1)
    return [
        EigenSolution(s.xi, s.eigvec_residuals, multiplicity_hint=c)
        for s, c in zip(out, counts)
    ]


def common_eigen_solutions(
    mm: MultiplicationMatrices,
    seed: int = 0,
    tol: Optional[Tolerances] = None,
    per_matrix: bool = False,
) -> EigenSolutionSet:
    """All simultaneous eigenvalue tuples of the A_{X_i}.

    Default path: one eigen-decomposition of a random real combination
    T = sum c_i A_{X_i}; a generic combination separates the common
    eigenvectors, avoiding the fragile step of matching eigenvectors
    across N separate decompositions. ``per_matrix=True`` uses the
    eigenvectors of A_{X_1} instead (the historic path, kept for
    comparison experiments).

    Retries once with a reseeded combination before declaring the
    eigenstructure defective.
    """
    tol = tol or Tolerances()
    for attempt in range(2):
        if per_matrix:
            _, vecs = np.linalg.eig(mm.matrices[0])
        else:
            rng = np.random.default_rng(seed + attempt)
            c = rng.standard_normal(mm.n_vars)
            t = np.tensordot(c, mm.matrices, axes=1)
            _, vecs = np.linalg.eig(t)
        accepted, rejected = _solutions_from_vectors(mm, vecs, tol)
        if accepted:
            accepted = [
                EigenSolution(
                    xi=_polish(s.xi, mm.system),
                    eigvec_residuals=s.eigvec_residuals,
                    multiplicity_hint=s.multiplicity_hint,
                )
                for s in accepted
            ]
            return EigenSolutionSet(
                solutions=_dedupe(accepted, tol), rejected=rejected, seed=seed
            )
    raise DefectiveEigenstructureError(
        "defective eigenstructure suspected: no eigenvector passed the "
        "per-matrix residual checks after a reseeded retry"
    )


def evaluate_poly_at_matrices(f: SparsePoly, mm: MultiplicationMatrices) -> np.ndarray:
    """f(A_{X_1},...,A_{X_N}) over the commuting family."""
    n, dim = mm.n_vars, mm.dim
    if f.n_vars != n:
        raise ValueError("variable count mismatch")
    powers = [{0: np.eye(dim, dtype=complex)} for _ in range(n)]

    def power(i: int, k: int) -> np.ndarray:
        cache = powers[i]
        if k not in cache:
            cache[k] = mm.matrices[i] @ power(i, k - 1)
        return cache[k]

    out = np.zeros((dim, dim), dtype=complex)
    for alpha, coeff in f.terms.items():
        term = np.eye(dim, dtype=complex)
        for i, e in enumerate(alpha):
            if e:
                term = term @ power(i, e)
        out += coeff * term
    return out


def build_critical_value_matrix(
    sys: DiagQuadSystem,
    weights: np.ndarray,
    mm: Optional[MultiplicationMatrices] = None,
    tol: Optional[Tolerances] = None,
) -> np.ndarray:
    """A_F = sum_i weights_i A_{X_i}^3.

    Its eigenvalues are the values of the weighted cubic at every solution,
    with the quotient-ring multiplicity structure.
    """
    if mm is None:
        mm = build_multiplication_matrices(sys, tol)
    weights = np.asarray(weights, dtype=complex)
    dim = mm.dim
    out = np.zeros((dim, dim), dtype=complex)
    for i in range(mm.n_vars):
        if weights[i] != 0:
            a = mm.matrices[i]
            out += weights[i] * (a @ a @ a)
    return out
