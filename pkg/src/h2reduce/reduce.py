"""End-to-end reduction-by-one pipeline and global selection.

Pipeline: coupling matrix M -> diagonal-quadratic system (mu = 0) ->
multiplication matrices -> simultaneous eigenvalue tuples -> drop the
always-present zero solution -> recover a candidate model per tuple ->
criterion values -> walk the distinct real positive values in increasing
order and return the first real Hurwitz candidate, which is the global
optimum.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from .dqideal import DiagQuadSystem
from .errors import (
    DegenerateLeadingCoefficientError,
    NoAdmissibleSolutionError,
    NumericalError,
)
from .foc import CriticalPoint, build_M, recover_candidate
from .stetter import (
    build_critical_value_matrix,
    build_multiplication_matrices,
    common_eigen_solutions,
)
from .tf import TransferFunction, ValidatedSystem, h2_distance, h2_norm
from .tolerances import Tolerances

LS_REJECT = 1e-6  # admissibility floor for the numerator least-squares fit


def criterion_weights(sys: ValidatedSystem) -> np.ndarray:
    """w_i = 1 / (e(delta_i) d'(delta_i) d(-delta_i))."""
    return 1.0 / (sys.e_at_poles * sys.dprime_at_poles * sys.d_at_minus_poles)


def critical_value(sys: ValidatedSystem, xi: Sequence[complex]) -> complex:
    """phi(xi) = sum_i xi_i^3 w_i; the squared H2 error at real critical points."""
    xi = np.atleast_1d(np.asarray(xi, dtype=complex))
    return complex(np.sum(xi**3 * criterion_weights(sys)))


@dataclass(frozen=True)
class ReductionReport:
    system_norm: float
    candidates: List[CriticalPoint]
    admissible: List[CriticalPoint]
    global_candidate: Optional[CriticalPoint]
    global_error: float
    critical_values_sorted: List[float]
    diagnostics: Dict[str, object] = field(default_factory=dict)

    @property
    def relative_error(self) -> float:
        return self.global_error / self.system_norm

    @property
    def approximant(self) -> Optional[TransferFunction]:
        if self.global_candidate is None:
            return None
        return TransferFunction(self.global_candidate.b, self.global_candidate.a)


def _drop_zero_solutions(xis: List[np.ndarray], tol: Tolerances):
    """Remove the always-present all-zero tuple.

    The threshold is relative to the largest solution actually found, not to
    ||M||: huge M entries would otherwise swallow genuine small solutions.
    """
    if not xis:
        return [], 0
    biggest = max(np.linalg.norm(x, np.inf) for x in xis)
    kept = [x for x in xis if np.linalg.norm(x, np.inf) > tol.zero_solution * (1.0 + biggest)]
    return kept, len(xis) - len(kept)


def select_global(
    sys: ValidatedSystem,
    candidates: Sequence[CriticalPoint],
    tol: Optional[Tolerances] = None,
) -> Optional[CriticalPoint]:
    """First real admissible candidate along the sorted real positive values.

    Every distinct real positive criterion value defines a level; levels are
    visited in increasing order and the walk stops at the first one holding a
    real Hurwitz candidate. Non-real or non-Hurwitz hits at lower levels are
    skipped: a real non-Hurwitz critical point always sits strictly above the
    global minimum, so skipping cannot overshoot it.
    """
    tol = tol or Tolerances()
    levels: List[float] = []
    for cp in candidates:
        v = cp.criterion
        if abs(v.imag) <= tol.value_real * (1.0 + abs(v)) and v.real > 0:
            m = v.real
            if not any(abs(m - u) <= tol.value_cluster * max(m, u) for u in levels):
                levels.append(m)
    levels.sort()
    for m in levels:
        hits = [
            cp for cp in candidates
            if abs(cp.criterion.imag) <= tol.value_real * (1.0 + abs(cp.criterion))
            and abs(cp.criterion.real - m) <= tol.value_cluster * max(m, cp.criterion.real)
        ]
        for cp in hits:
            if cp.is_admissible and cp.rejection is None:
                return cp
    return None


def solve_reduction(
    sys: ValidatedSystem,
    seed: int = 0,
    tol: Optional[Tolerances] = None,
    method: str = "enum",
) -> ReductionReport:
    """Run the whole pipeline and select the global optimum.

    ``method="enum"`` evaluates the criterion pointwise at each recovered
    tuple (default, the robust path). ``method="cvm"`` instead reads the
    values off the eigenvalues of the critical-value matrix
    A_F = sum w_i A_{X_i}^3 and raises a numerical error when they cannot be
    matched to the pointwise values — this path is known to break down first
    under ill-conditioning and exists for diagnostics and comparison.
    """
    if method not in ("enum", "cvm"):
        raise ValueError(f"unknown method {method!r}")
    tol = tol or Tolerances()
    t0 = time.perf_counter()
    diagnostics: Dict[str, object] = {"seed": seed, "method": method}

    m = build_M(sys, tol)
    dq = DiagQuadSystem(m)
    mm = build_multiplication_matrices(dq, tol)
    diagnostics["commutation_defect"] = mm.commutation_defect
    diagnostics["annihilation_defect"] = mm.annihilation_defect

    eig = common_eigen_solutions(mm, seed=seed, tol=tol)
    xis = [s.xi for s in eig.solutions]
    xis, n_zero = _drop_zero_solutions(xis, tol)
    diagnostics["zero_solutions_removed"] = n_zero
    diagnostics["rejected_eigenvectors"] = len(eig.rejected)
    if len(xis) > (1 << sys.n) - 1:
        raise NumericalError(
            f"{len(xis)} nonzero solution tuples exceed the 2^N - 1 bound; "
            "eigen extraction is untrustworthy"
        )

    weights = criterion_weights(sys)
    candidates: List[CriticalPoint] = []
    degenerate_q0 = 0
    for xi in xis:
        try:
            cp = recover_candidate(sys, xi, tol)
        except DegenerateLeadingCoefficientError:
            degenerate_q0 += 1
            continue
        phi = complex(np.sum(xi**3 * weights))
        rejection = None
        if not cp.is_real:
            rejection = "complex"
        elif not cp.is_hurwitz:
            rejection = "non-hurwitz"
        elif cp.ls_residual > LS_REJECT:
            rejection = "high-residual"
        candidates.append(
            CriticalPoint(
                xi=cp.xi, a=cp.a, b=cp.b, q0=cp.q0, criterion=phi,
                is_real=cp.is_real, is_hurwitz=cp.is_hurwitz,
                foc_residual=cp.foc_residual, ls_residual=cp.ls_residual,
                rejection=rejection,
            )
        )
    diagnostics["degenerate_q0_rejections"] = degenerate_q0

    if method == "cvm":
        a_f = build_critical_value_matrix(dq, weights, mm, tol)
        vals = np.linalg.eigvals(a_f)
        diagnostics["cvm_eigenvalues"] = vals
        matched = []
        for cp in candidates:
            k = int(np.argmin(np.abs(vals - cp.criterion)))
            gap = abs(vals[k] - cp.criterion) / (1.0 + abs(cp.criterion))
            if gap > 1e-6:
                raise NumericalError(
                    "critical-value matrix eigenvalues do not match the "
                    f"pointwise criterion (relative gap {gap:.3e}); the "
                    "matrix path has broken down on this instance"
                )
            matched.append(
                CriticalPoint(
                    xi=cp.xi, a=cp.a, b=cp.b, q0=cp.q0,
                    criterion=complex(vals[k]),
                    is_real=cp.is_real, is_hurwitz=cp.is_hurwitz,
                    foc_residual=cp.foc_residual, ls_residual=cp.ls_residual,
                    rejection=cp.rejection,
                )
            )
        candidates = matched

    admissible = [cp for cp in candidates if cp.is_admissible and cp.rejection is None]
    norm = h2_norm(sys)

    levels: List[float] = []
    for cp in candidates:
        v = cp.criterion
        if abs(v.imag) <= tol.value_real * (1.0 + abs(v)) and v.real > 0:
            if not any(abs(v.real - u) <= tol.value_cluster * max(v.real, u) for u in levels):
                levels.append(v.real)
    levels.sort()

    best = select_global(sys, candidates, tol)
    cross = {}
    for idx, cp in enumerate(admissible):
        approx = TransferFunction(cp.b, cp.a)
        dist = h2_distance(sys, approx, tol)
        gap = abs(cp.criterion.real - dist**2)
        cross[idx] = {"distance": dist, "gap": gap,
                      "flagged": gap > tol.cross_check * (1.0 + cp.criterion.real)}
    diagnostics["cross_check"] = cross
    diagnostics["elapsed_s"] = time.perf_counter() - t0

    if best is None:
        raise NoAdmissibleSolutionError(
            "no admissible critical point found: every candidate was "
            "complex, non-Hurwitz, or rejected",
            diagnostics={**diagnostics,
                         "n_candidates": len(candidates),
                         "rejections": [cp.rejection for cp in candidates]},
        )
    return ReductionReport(
        system_norm=norm,
        candidates=candidates,
        admissible=admissible,
        global_candidate=best,
        global_error=best.error,
        critical_values_sorted=levels,
        diagnostics=diagnostics,
    )
