"""Diagonal-quadratic polynomial systems and normal forms.

A diagonal-quadratic system is x_i^2 = m_i . x + mu_i, one equation per
variable. Its generators form a Groebner basis outright (leading terms
x_i^2 are pairwise coprime), so every polynomial has a unique normal form
over the 2^N square-free monomials, computable by repeated substitution of
x_i^2 -> m_i . x + mu_i.

Bit convention: bit (i-1) of a basis index corresponds to variable x_i
(0-based: bit i <-> variable i). Index 0 is the constant monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from .errors import BasisSizeError, ReductionBudgetError

DEFAULT_N_CAP = 14
DEFAULT_TERM_BUDGET = 10**7

MultiIndex = Tuple[int, ...]


@dataclass(frozen=True)
class DiagQuadSystem:
    """The pair (M, mu) defining x_i^2 = m_i . x + mu_i."""

    m: np.ndarray
    mu: np.ndarray = None
    n_cap: int = DEFAULT_N_CAP

    def __init__(self, m, mu=None, n_cap: int = DEFAULT_N_CAP):
        m = np.atleast_2d(np.asarray(m, dtype=complex))
        n = m.shape[0]
        if m.shape != (n, n):
            raise ValueError("M must be square")
        if n > n_cap:
            raise BasisSizeError(f"basis too large: N={n} exceeds cap {n_cap}")
        if mu is None:
            mu = np.zeros(n, dtype=complex)
        else:
            mu = np.atleast_1d(np.asarray(mu, dtype=complex))
            if mu.shape != (n,):
                raise ValueError("mu must have length N")
        m.setflags(write=False)
        mu.setflags(write=False)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "n_cap", n_cap)

    @property
    def n_vars(self) -> int:
        return self.m.shape[0]

    @property
    def dim(self) -> int:
        return 1 << self.n_vars

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.m.imag == 0) and np.all(self.mu.imag == 0))

    def generator(self, i: int) -> "SparsePoly":
        """g_i = x_i^2 - m_i . x - mu_i."""
        n = self.n_vars
        terms: Dict[MultiIndex, complex] = {}
        sq = tuple(2 if j == i else 0 for j in range(n))
        terms[sq] = 1.0
        for j in range(n):
            if self.m[i, j] != 0:
                lin = tuple(1 if k == j else 0 for k in range(n))
                terms[lin] = terms.get(lin, 0.0) - self.m[i, j]
        if self.mu[i] != 0:
            terms[(0,) * n] = -self.mu[i]
        return SparsePoly(terms, n)


class SparsePoly:
    """Multivariate polynomial as a map multi-index -> coefficient."""

    def __init__(self, terms: Dict[MultiIndex, complex], n_vars: int):
        self.n_vars = n_vars
        self.terms = {a: c for a, c in terms.items() if c != 0}

    @classmethod
    def variable(cls, i: int, n_vars: int) -> "SparsePoly":
        return cls({tuple(1 if j == i else 0 for j in range(n_vars)): 1.0}, n_vars)

    @classmethod
    def constant(cls, c: complex, n_vars: int) -> "SparsePoly":
        return cls({(0,) * n_vars: c}, n_vars)

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0.0) + c
        return SparsePoly(out, self.n_vars)

    def scale(self, c: complex) -> "SparsePoly":
        return SparsePoly({a: c * v for a, v in self.terms.items()}, self.n_vars)

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class NormalFormElement:
    """Dense coefficient vector over the 2^N square-free monomial basis."""

    coeffs: np.ndarray
    n_vars: int

    def __init__(self, coeffs, n_vars: int):
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.shape != (1 << n_vars,):
            raise ValueError("coefficient vector must have length 2^N")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "n_vars", n_vars)

    @classmethod
    def basis_vector(cls, bitmask: int, n_vars: int) -> "NormalFormElement":
        v = np.zeros(1 << n_vars, dtype=complex)
        v[bitmask] = 1.0
        return cls(v, n_vars)

    def as_sparse(self) -> SparsePoly:
        terms: Dict[MultiIndex, complex] = {}
        n = self.n_vars
        for beta in np.flatnonzero(self.coeffs):
            alpha = tuple((int(beta) >> i) & 1 for i in range(n))
            terms[alpha] = self.coeffs[beta]
        return SparsePoly(terms, n)


def basis_monomials(n_vars: int, n_cap: int = DEFAULT_N_CAP) -> List[MultiIndex]:
    """The 2^N square-free multi-indices in increasing bitmask order."""
    if not 1 <= n_vars <= n_cap:
        raise BasisSizeError(f"basis too large: N={n_vars} exceeds cap {n_cap}")
    return [
        tuple((beta >> i) & 1 for i in range(n_vars))
        for beta in range(1 << n_vars)
    ]


def _alpha_to_bitmask(alpha: MultiIndex) -> int:
    mask = 0
    for i, a in enumerate(alpha):
        if a:
            mask |= 1 << i
    return mask


def normal_form(
    f: SparsePoly,
    sys: DiagQuadSystem,
    strategy: str = "max_degree",
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> NormalFormElement:
    """Reduce f modulo the ideal to its square-free representative.

    Repeatedly rewrites one monomial with some exponent >= 2 using
    x_i^2 -> m_i . x + mu_i until all exponents are <= 1. The result is
    independent of the rewrite order; ``strategy`` only picks which
    reducible monomial goes first ("max_degree" or "min_index").
    """
    n = sys.n_vars
    if f.n_vars != n:
        raise ValueError("variable count mismatch")
    work: Dict[MultiIndex, complex] = dict(f.terms)
    out = np.zeros(1 << n, dtype=complex)

    def pick() -> MultiIndex | None:
        reducible = [a for a in work if any(e >= 2 for e in a)]
        if not reducible:
            return None
        if strategy == "min_index":
            return min(reducible, key=lambda a: next(i for i, e in enumerate(a) if e >= 2))
        return max(reducible, key=sum)

    while True:
        # move square-free terms straight to the output
        for alpha in [a for a in work if all(e <= 1 for e in a)]:
            out[_alpha_to_bitmask(alpha)] += work.pop(alpha)
        alpha = pick()
        if alpha is None:
            break
        c = work.pop(alpha)
        i = next(k for k, e in enumerate(alpha) if e >= 2)
        cofactor = tuple(e - 2 if k == i else e for k, e in enumerate(alpha))
        # x_i^2 * cofactor -> (m_i . x + mu_i) * cofactor
        if sys.mu[i] != 0:
            work[cofactor] = work.get(cofactor, 0.0) + c * sys.mu[i]
            if work[cofactor] == 0:
                del work[cofactor]
        for j in range(n):
            if sys.m[i, j] == 0:
                continue
            shifted = tuple(e + 1 if k == j else e for k, e in enumerate(cofactor))
            work[shifted] = work.get(shifted, 0.0) + c * sys.m[i, j]
            if work[shifted] == 0:
                del work[shifted]
        if len(work) > term_budget:
            raise ReductionBudgetError(
                f"reduction budget exceeded: {len(work)} intermediate terms"
            )
    return NormalFormElement(out, n)


def multiply_by_variable(
    nf: NormalFormElement, i: int, sys: DiagQuadSystem
) -> NormalFormElement:
    """Normal form of x_i * nf (0-based variable index).

    Basis monomials without x_i shift directly; those containing x_i pick
    up one substitution x_i^2 -> m_i . x + mu_i, whose linear terms may need
    further substitutions (total degree strictly drops, so this terminates).
    """
    n = sys.n_vars
    memo: Dict[Tuple[int, int], np.ndarray] = {}

    def var_times_basis(j: int, beta: int) -> np.ndarray:
        key = (j, beta)
        if key in memo:
            return memo[key]
        bit = 1 << j
        if not beta & bit:
            col = np.zeros(1 << n, dtype=complex)
            col[beta | bit] = 1.0
        else:
            gamma = beta ^ bit
            col = np.zeros(1 << n, dtype=complex)
            col[gamma] += sys.mu[j]
            for k in range(n):
                if sys.m[j, k] != 0:
                    col = col + sys.m[j, k] * var_times_basis(k, gamma)
        memo[key] = col
        return col

    out = np.zeros(1 << n, dtype=complex)
    for beta in np.flatnonzero(nf.coeffs):
        out += nf.coeffs[beta] * var_times_basis(i, int(beta))
    return NormalFormElement(out, n)
