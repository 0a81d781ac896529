"""Transfer-function ingestion, validation and H2 norms by residue calculus."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    NotStrictlyProperError,
    PoleZeroCancellationError,
    RepeatedPoleError,
    UnstablePoleError,
    ValidationError,
    NumericalError,
)
from .poly import Polynomial, derivative, eval_poly, roots
from .tolerances import Tolerances


@dataclass(frozen=True)
class TransferFunction:
    """Strictly proper rational function numerator/denominator.

    The denominator is normalized to be monic on construction (both
    polynomials are divided by its leading coefficient).
    """

    numerator: Polynomial
    denominator: Polynomial

    def __init__(self, numerator: Polynomial, denominator: Polynomial):
        if not isinstance(numerator, Polynomial):
            numerator = Polynomial(numerator)
        if not isinstance(denominator, Polynomial):
            denominator = Polynomial(denominator)
        lead = denominator.coeffs[0]
        object.__setattr__(self, "numerator", numerator.scale(1.0 / lead))
        object.__setattr__(self, "denominator", denominator.monic())

    @property
    def order(self) -> int:
        return self.denominator.degree

    def __call__(self, s: complex) -> complex:
        return eval_poly(self.numerator, s) / eval_poly(self.denominator, s)


def strip_feedthrough(numerator: Polynomial, denominator: Polynomial) -> TransferFunction:
    """Remove the direct feedthrough by polynomial division.

    The optimal strictly proper approximant is unaffected by the
    feedthrough term, so this is sound, but callers must opt in.
    """
    q, r = np.polydiv(numerator.coeffs, denominator.coeffs)
    del q
    return TransferFunction(Polynomial(r), denominator)


@dataclass(frozen=True)
class ValidatedSystem:
    """A transfer function with every standing assumption checked.

    Poles are sorted by (real part, imaginary part); all downstream
    indexing (M rows, xi entries, criterion weights) follows this order.
    ``conj_perm[i]`` is the index of the pole conjugate to pole i.
    """

    tf: TransferFunction
    poles: np.ndarray
    e_at_poles: np.ndarray
    dprime_at_poles: np.ndarray
    d_at_minus_poles: np.ndarray
    conj_perm: np.ndarray
    n: int


def validate(tf: TransferFunction, tol: Optional[Tolerances] = None) -> ValidatedSystem:
    """Check stability, strict properness, pole distinctness and coprimality."""
    tol = tol or Tolerances()
    e, d = tf.numerator, tf.denominator
    if not (e.is_real and d.is_real):
        raise ValidationError("numerator and denominator must be real polynomials")
    if e.degree >= d.degree:
        raise NotStrictlyProperError(
            f"not strictly proper: deg num {e.degree} >= deg den {d.degree}"
        )
    if d.degree < 1:
        raise ValidationError("denominator must have degree >= 1")

    poles = roots(d)
    poles = poles[np.lexsort((poles.imag, poles.real))]
    n = len(poles)

    for p in poles:
        if p.real >= 0:
            raise UnstablePoleError(p)

    scale = np.max(np.abs(poles))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(poles[i] - poles[j]) < tol.pole_sep * scale:
                raise RepeatedPoleError(poles[i], poles[j])

    e_at = np.array([eval_poly(e, p) for p in poles])
    e_scale = np.max(np.abs(e.coeffs))
    zeros = roots(e) if e.degree >= 1 else None
    for p, v in zip(poles, e_at):
        if abs(v) >= tol.coprime * e_scale:
            continue
        # A tiny numerator value alone is not proof of a shared factor:
        # systems with tightly clustered poles evaluate small everywhere.
        # Confirm by actual pole-zero proximity, scaled to the pole itself.
        if zeros is not None and np.min(np.abs(zeros - p)) < 1e-6 * abs(p):
            raise PoleZeroCancellationError(p, v)

    # real d: the pole multiset is conjugate closed; record the pairing
    conj_perm = np.empty(n, dtype=int)
    for i, p in enumerate(poles):
        k = int(np.argmin(np.abs(poles - np.conj(p))))
        if abs(poles[k] - np.conj(p)) > tol.pole_sep * scale:
            raise ValidationError(f"pole set not closed under conjugation near {p}")
        conj_perm[i] = k

    dp = derivative(d)
    dprime_at = np.array([eval_poly(dp, p) for p in poles])
    dminus_at = np.array([eval_poly(d, -p) for p in poles])
    return ValidatedSystem(
        tf=tf,
        poles=poles,
        e_at_poles=e_at,
        dprime_at_poles=dprime_at,
        d_at_minus_poles=dminus_at,
        conj_perm=conj_perm,
        n=n,
    )


def _pairing_norm_sq(residues: np.ndarray, poles: np.ndarray) -> complex:
    """Sum_{i,j} r_i r_j / (-p_i - p_j), the residue form of the H2 inner product."""
    denom = -(poles[:, None] + poles[None, :])
    return complex(residues @ (residues / denom).sum(axis=1))


def h2_norm(sys: ValidatedSystem) -> float:
    """H2 norm of e/d by partial fractions over the (distinct) poles."""
    r = sys.e_at_poles / sys.dprime_at_poles
    sq = _pairing_norm_sq(r, sys.poles)
    if abs(sq.imag) > 1e-10 * max(abs(sq.real), 1.0):
        raise NumericalError(f"H2 norm came out non-real: {sq}")
    if sq.real < 0 and sq.real > -1e-12:
        return 0.0
    return float(np.sqrt(sq.real))


def _residues(num: Polynomial, den: Polynomial, poles: np.ndarray) -> np.ndarray:
    dp = derivative(den)
    return np.array([eval_poly(num, p) / eval_poly(dp, p) for p in poles])


def h2_distance(sys: ValidatedSystem, approx: TransferFunction,
                tol: Optional[Tolerances] = None) -> float:
    """||e/d - b/a||_2 via the merged partial fractions of both systems.

    Merging the two residue expansions avoids expanding the difference's
    numerator, which would cancel catastrophically for close systems.
    """
    tol = tol or Tolerances()
    if approx.numerator.is_zero:
        return h2_norm(sys)
    a_poles = roots(approx.denominator)
    for p in a_poles:
        if p.real >= 0:
            raise ValidationError(f"unstable approximant: pole at {p}")
    scale = max(np.max(np.abs(sys.poles)), np.max(np.abs(a_poles)))
    for p in a_poles:
        if np.min(np.abs(sys.poles - p)) < 1e-12 * scale:
            raise NumericalError(
                f"approximant shares pole {p} with the original system; "
                "the confluent residue limit is not supported"
            )
    pa = roots(approx.denominator) if len(a_poles) > 1 else a_poles
    if len(pa) > 1:
        for i in range(len(pa)):
            for j in range(i + 1, len(pa)):
                if abs(pa[i] - pa[j]) < 1e-12 * scale:
                    raise NumericalError("approximant has a repeated pole")
    all_poles = np.concatenate([sys.poles, a_poles])
    all_res = np.concatenate([
        sys.e_at_poles / sys.dprime_at_poles,
        -_residues(approx.numerator, approx.denominator, a_poles),
    ])
    sq = _pairing_norm_sq(all_res, all_poles)
    if abs(sq.imag) > 1e-8 * max(abs(sq.real), 1.0):
        raise NumericalError(f"H2 distance came out non-real: {sq}")
    return float(np.sqrt(max(sq.real, 0.0)))
