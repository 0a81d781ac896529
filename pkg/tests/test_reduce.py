import numpy as np
import pytest

from conftest import random_real_pole_system, random_stable_system
from h2reduce import (
    CriticalPoint,
    NoAdmissibleSolutionError,
    Polynomial,
    Tolerances,
    TransferFunction,
    critical_value,
    h2_distance,
    select_global,
    solve_reduction,
    validate,
)
from dataclasses import replace


def make_candidate(phi, real=True, hurwitz=True):
    """Synthetic candidate for exercising the selection walk in isolation."""
    return CriticalPoint(
        xi=np.array([1.0 + 0j]),
        a=Polynomial([1.0, 1.0]),
        b=Polynomial([1.0]),
        q0=1.0,
        criterion=complex(phi),
        is_real=real,
        is_hurwitz=hurwitz,
        foc_residual=0.0,
        ls_residual=0.0,
    )


class TestCriticalValue:
    def test_zero(self):
        sys = validate(TransferFunction(Polynomial([1.0, 3.0]),
                                        Polynomial([1.0, 3.0, 2.0])))
        assert critical_value(sys, [0.0, 0.0]) == 0.0

    def test_conjugate_pairing(self):
        # conjugate-permuted tuples give conjugate values
        sys = validate(TransferFunction(Polynomial([1.0, 0.5, 1.0]),
                                        Polynomial([1.0, 2.5, 3.0, 2.0])))
        rng = np.random.default_rng(1)
        xi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        xi_conj = np.conj(xi)[sys.conj_perm]
        assert critical_value(sys, xi_conj) == pytest.approx(
            np.conj(critical_value(sys, xi)), rel=1e-10)

    def test_equals_squared_distance_at_critical_points(self):
        rng = np.random.default_rng(6)
        sys = validate(random_real_pole_system(rng, 3))
        rep = solve_reduction(sys)
        for cp in rep.admissible:
            d = h2_distance(sys, TransferFunction(cp.b, cp.a))
            assert cp.criterion.real == pytest.approx(
                d**2, abs=1e-6 * (1 + cp.criterion.real))


class TestSelectGlobal:
    def test_single_admissible_wins(self):
        cands = [
            make_candidate(0.1, real=False),
            make_candidate(0.5),
            make_candidate(0.2 + 0.3j, real=False),
        ]
        assert select_global(None, cands) is cands[1]

    def test_walk_skips_inadmissible_levels(self):
        cands = [
            make_candidate(0.05, real=False),           # complex, smallest
            make_candidate(0.10, hurwitz=False),        # real non-Hurwitz
            make_candidate(0.20),                        # first admissible
            make_candidate(0.90),
        ]
        assert select_global(None, cands).criterion.real == pytest.approx(0.20)

    def test_increasing_order(self):
        cands = [make_candidate(0.9), make_candidate(0.3), make_candidate(0.6)]
        assert select_global(None, cands).criterion.real == pytest.approx(0.3)

    def test_empty(self):
        assert select_global(None, [make_candidate(0.4, real=False)]) is None


class TestSolveReduction:
    def test_global_dominates_admissible(self):
        rng = np.random.default_rng(15)
        for _ in range(3):
            sys = validate(random_real_pole_system(rng, 4))
            rep = solve_reduction(sys)
            assert all(rep.global_error <= cp.error + 1e-12 for cp in rep.admissible)
            assert rep.global_candidate.is_admissible

    def test_count_bound(self):
        rng = np.random.default_rng(16)
        sys = validate(random_stable_system(rng, 5))
        rep = solve_reduction(sys)
        assert len(rep.candidates) <= 2**5 - 1

    def test_determinism(self):
        rng = np.random.default_rng(18)
        tf = random_stable_system(rng, 4)
        r1 = solve_reduction(validate(tf), seed=3)
        r2 = solve_reduction(validate(tf), seed=3)
        assert len(r1.candidates) == len(r2.candidates)
        for a, b in zip(r1.candidates, r2.candidates):
            assert np.array_equal(a.xi, b.xi)
        assert np.array_equal(r1.global_candidate.a.coeffs,
                              r2.global_candidate.a.coeffs)
        assert r1.critical_values_sorted == r2.critical_values_sorted

    def test_relative_error_uses_system_norm(self):
        rng = np.random.default_rng(20)
        sys = validate(random_real_pole_system(rng, 3))
        rep = solve_reduction(sys)
        assert rep.relative_error == pytest.approx(
            rep.global_error / rep.system_norm)

    def test_cvm_agrees_with_enum_when_well_conditioned(self):
        rng = np.random.default_rng(22)
        sys = validate(random_real_pole_system(rng, 3))
        r_enum = solve_reduction(sys, method="enum")
        r_cvm = solve_reduction(sys, method="cvm")
        assert r_cvm.global_error == pytest.approx(r_enum.global_error, rel=1e-6)

    def test_no_admissible_raises_with_diagnostics(self):
        # realness tolerance of zero rejects every candidate of a system
        # whose recovered coefficients carry float-level imaginary noise
        rng = np.random.default_rng(33)
        tf = TransferFunction(Polynomial([1.0, 0.5, 1.0]),
                              Polynomial([1.0, 2.5, 3.0, 2.0]))
        tol = replace(Tolerances(), real=0.0)
        with pytest.raises(NoAdmissibleSolutionError) as exc:
            solve_reduction(validate(tf), tol=tol)
        assert "rejections" in exc.value.diagnostics

    def test_unknown_method(self):
        rng = np.random.default_rng(34)
        sys = validate(random_real_pole_system(rng, 2))
        with pytest.raises(ValueError):
            solve_reduction(sys, method="nope")

    def test_report_fields_populated(self):
        rng = np.random.default_rng(35)
        sys = validate(random_real_pole_system(rng, 3))
        rep = solve_reduction(sys, seed=5)
        assert rep.system_norm > 0
        assert rep.global_candidate in rep.admissible
        assert rep.critical_values_sorted == sorted(rep.critical_values_sorted)
        assert rep.diagnostics["seed"] == 5
        assert rep.diagnostics["zero_solutions_removed"] >= 1
        assert rep.approximant.denominator.degree == 2
