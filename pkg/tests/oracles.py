"""Independent oracles the test suite checks the pipeline against.

Nothing here reuses pipeline internals: the norm oracle integrates the
frequency response, the small-N solution oracles eliminate variables by
hand / lex Groebner bases, and the global-minimum oracle is a multi-start
simplex search over the raw approximant parameters.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize


def quad_h2_norm(num, den) -> float:
    """(1/pi) * integral_0^inf |H(iw)|^2 dw by adaptive quadrature.

    Split at the pole magnitudes so the quadrature sees the resonant peaks.
    """
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)

    def integrand(w):
        s = 1j * w
        h = np.polyval(num, s) / np.polyval(den, s)
        return abs(h) ** 2

    breaks = sorted(set(np.abs(np.roots(den))))
    total = 0.0
    lo = 0.0
    for b in breaks:
        val, _ = quad(integrand, lo, 10 * b, limit=400)
        total += val
        lo = 10 * b
    tail, _ = quad(integrand, lo, np.inf, limit=400)
    return float(np.sqrt((total + tail) / np.pi))


def residue_distance_sq(num1, den1, num2, den2) -> float:
    """||H1 - H2||_2^2 through the merged residue pairing (distinct poles)."""
    p1, p2 = np.roots(den1), np.roots(den2)
    r1 = np.array([np.polyval(num1, p) / np.polyval(np.polyder(den1), p) for p in p1])
    r2 = np.array([np.polyval(num2, p) / np.polyval(np.polyder(den2), p) for p in p2])
    poles = np.concatenate([p1, p2])
    res = np.concatenate([r1, -r2])
    denom = -(poles[:, None] + poles[None, :])
    return float(np.real(res @ (res / denom).sum(axis=1)))


def _newton_polish(m: np.ndarray, x: np.ndarray, iters: int = 10) -> np.ndarray:
    """Refine a root of x_i^2 = (M x)_i to double-precision accuracy.

    The elimination path loses a few digits on large roots (univariate
    root-finding over a wide coefficient range); plain Newton recovers them.
    """
    for _ in range(iters):
        f = x * x - m @ x
        jac = 2.0 * np.diag(x) - m
        try:
            x = x - np.linalg.solve(jac, f)
        except np.linalg.LinAlgError:
            break
    return x


def elimination_solutions_n2(m: np.ndarray) -> List[np.ndarray]:
    """All solutions of x_i^2 = (M x)_i for N=2 by direct substitution.

    x2 = (x1^2 - m11 x1)/m12 turns the second equation into a quartic in x1.
    Requires m12 != 0 (generic).
    """
    m11, m12 = m[0]
    m21, m22 = m[1]
    if m12 == 0:
        raise ValueError("elimination oracle needs m12 != 0")
    # (x1^2 - m11 x1)^2 - m22 m12 (x1^2 - m11 x1) - m21 m12^2 x1 = 0
    inner = np.array([1.0, -m11, 0.0])
    quartic = np.polysub(
        np.polysub(np.convolve(inner, inner), m22 * m12 * np.pad(inner, (0, 0))),
        np.array([0.0, 0.0, m21 * m12**2, 0.0]),
    )
    sols = []
    for x1 in np.roots(quartic):
        x2 = (x1**2 - m11 * x1) / m12
        sols.append(_newton_polish(m, np.array([x1, x2])))
    return sols


def elimination_solutions_n3(m: np.ndarray) -> List[np.ndarray]:
    """All solutions for N=3 via an exact lex Groebner basis.

    Coefficients are rationalized exactly (floats are dyadic rationals), so
    the basis computation is exact; only the final univariate root find is
    numeric. Generic systems land in shape position
    [x1 - p1(x3), x2 - p2(x3), q(x3)].
    """
    import sympy as sp

    x1, x2, x3 = sp.symbols("x1 x2 x3")
    xs = (x1, x2, x3)

    def rat(v):
        return sp.Rational(Fraction(float(v)))

    gens = [
        xs[i] ** 2 - sum(rat(m[i, j]) * xs[j] for j in range(3))
        for i in range(3)
    ]
    gb = sp.groebner(gens, x1, x2, x3, order="lex")
    polys = list(gb.polys)
    uni = [p for p in polys if p.gens and set(p.free_symbols) <= {x3}]
    assert uni, "lex basis has no univariate element; system not generic"
    q = sp.Poly(uni[-1].as_expr(), x3)
    coeffs = np.array([complex(c) for c in q.all_coeffs()])
    sols = []
    for root in np.roots(coeffs):
        # back-substitute through the (triangular) remaining basis elements
        vals = {x3: root}
        for var in (x2, x1):
            cand = [p for p in polys if var in p.free_symbols]
            p = sp.Poly(cand[-1].as_expr(), var)
            cs = [complex(sp.N(c.subs(vals))) for c in p.all_coeffs()]
            rts = np.roots(np.array(cs))
            assert len(rts) == 1, "system not in shape position"
            vals[var] = rts[0]
        sols.append(_newton_polish(
            m, np.array([vals[x1], vals[x2], vals[x3]], dtype=complex)))
    return sols


def multistart_global_minimum(num, den, order, rng, n_starts=24) -> float:
    """Smallest squared H2 distance to a stable approximant of the given order.

    Parametrization keeps every iterate stable: order 1 uses a0 = exp(t),
    order 2 uses a1 = exp(t1), a0 = exp(t0) (positive coefficients are
    necessary and sufficient for degree <= 2 Hurwitz). The numerator is
    unconstrained.
    """
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)

    def safe_exp(t):
        return np.exp(np.clip(t, -30.0, 30.0))

    if order == 1:
        def unpack(z):
            return np.array([z[1]]), np.array([1.0, safe_exp(z[0])])
        dim = 2
    elif order == 2:
        def unpack(z):
            return np.array([z[2], z[3]]), np.array([1.0, safe_exp(z[0]), safe_exp(z[1])])
        dim = 4
    else:
        raise ValueError("oracle supports order 1 and 2 only")

    sys_poles = np.roots(den)

    def objective(z):
        b, a = unpack(z)
        a_poles = np.roots(a)
        gap = np.min(np.abs(sys_poles[:, None] - a_poles[None, :]))
        if gap < 1e-9 or (order == 2 and abs(a_poles[0] - a_poles[1]) < 1e-12):
            return 1e6
        return residue_distance_sq(num, den, b, a)

    best = np.inf
    for _ in range(n_starts):
        z0 = rng.normal(scale=1.5, size=dim)
        res = minimize(objective, z0, method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000})
        if res.fun < best:
            best = float(res.fun)
    return best


def match_solution_sets(a: List[np.ndarray], b: List[np.ndarray], tol: float) -> bool:
    """Bijective matching of two solution lists within per-coordinate tol."""
    if len(a) != len(b):
        return False
    used = [False] * len(b)
    for x in a:
        hit = None
        for k, y in enumerate(b):
            if not used[k] and np.max(np.abs(x - y)) <= tol * (1.0 + np.max(np.abs(y))):
                hit = k
                break
        if hit is None:
            return False
        used[hit] = True
    return True
