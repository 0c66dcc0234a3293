import math

import mpmath as mp
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from effdirac import (
    IDENTITY,
    CouplingFactors,
    RadialProblem,
    evaluate_radial,
    indicial_exponent,
    make_state,
    nonlinear_factor,
    radial_series,
    series_norm,
    solve_effective,
    sommerfeld_binding,
    sommerfeld_energy,
)
from effdirac.errors import DomainError, SupercriticalError, TerminationError

mp.mp.dps = 40
ALPHA = 1 / 137.036


def mp_sommerfeld(n, kappa, za):
    za = mp.mpf(za)
    s = mp.sqrt(kappa * kappa - za * za)
    N = s + n - abs(kappa)
    return N / mp.sqrt(N * N + za * za)


def test_free_particle_limit():
    assert sommerfeld_energy(make_state(1, -1), 0.0) == 1.0
    assert nonlinear_factor(make_state(1, -1), 0.0) == 0.0
    assert indicial_exponent(-1, 0.0) == 1.0


def test_sommerfeld_examples():
    # oracles: sqrt(1 - alpha^2) and [1 + (alpha/(1+s))^2]^(-1/2) at 40 digits
    a = mp.mpf(1) / mp.mpf("137.036")
    s = mp.sqrt(1 - a * a)
    e2s = 1 / mp.sqrt(1 + (a / (1 + s)) ** 2)
    assert sommerfeld_energy(make_state(1, -1), ALPHA) == pytest.approx(float(s), abs=1e-15)
    assert indicial_exponent(-1, ALPHA) == pytest.approx(float(s), abs=1e-15)
    assert sommerfeld_energy(make_state(2, -1), ALPHA) == pytest.approx(float(e2s), abs=1e-15)
    assert float(s) == pytest.approx(0.99997337397, abs=1e-11)
    assert float(e2s) == pytest.approx(0.9999933435, abs=1e-10)


def test_nonlinear_factor_1s():
    # 1 - sqrt(1 - alpha^2)
    oracle = 1 - mp.sqrt(1 - (mp.mpf(1) / mp.mpf("137.036")) ** 2)
    assert nonlinear_factor(make_state(1, -1), ALPHA) == pytest.approx(float(oracle), rel=1e-12)
    assert float(oracle) == pytest.approx(2.66260e-5, rel=1e-5)


def test_nonlinear_factor_2s_leading_order():
    f = nonlinear_factor(make_state(2, -1), ALPHA)
    assert abs(f - ALPHA**2 / 4) <= 2 * ALPHA**4


def test_supercritical():
    with pytest.raises(SupercriticalError, match="1/alpha"):
        indicial_exponent(-1, 1.01)
    with pytest.raises(SupercriticalError):
        indicial_exponent(-1, 0.9, CouplingFactors(1.2, 1.2))


@pytest.mark.parametrize("n,kappa", [(1, -1), (2, -1), (2, 1), (3, -2), (4, 3), (10, -10)])
@pytest.mark.parametrize("Z", [1, 13, 40, 90])
def test_binding_against_high_precision(n, kappa, Z):
    state = make_state(n, kappa)
    za = Z * ALPHA
    oracle = 1 - mp_sommerfeld(n, kappa, za)
    assert sommerfeld_binding(state, za) == pytest.approx(float(oracle), rel=1e-14)
    assert sommerfeld_energy(state, za) == pytest.approx(float(1 - oracle), rel=1e-15)


@given(
    st.integers(1, 10).flatmap(
        lambda n: st.tuples(st.just(n), st.sampled_from([k for k in range(-n, n) if k]))
    ),
    st.floats(1e-4, 0.3),
)
def test_nonlinear_factor_law(nk, za):
    n, kappa = nk
    f = nonlinear_factor(make_state(n, kappa), za)
    assert 0 <= f < 1
    assert abs(f - za * za / (2 * n)) <= 2 * za**4


@given(st.sampled_from([(1, -1), (2, 1), (3, -2), (5, 4)]), st.floats(1e-3, 0.5), st.floats(1e-3, 0.4))
def test_energy_decreases_in_coupling(nk, za, dz):
    state = make_state(*nk)
    assert sommerfeld_energy(state, za + dz) < sommerfeld_energy(state, za)


def _series(n, kappa, za, g=IDENTITY):
    state = make_state(n, kappa)
    level = solve_effective(state, za, g)
    problem = RadialProblem(state, za, g, level.binding)
    return problem, radial_series(problem)


def test_ground_state_series():
    problem, series = _series(1, -1, ALPHA)
    s = problem.s_exponent
    assert series.length == 1
    # b0/a0 from (s + kappa) a0 = g_b Z alpha b0, consistent with the radial ODEs
    assert series.b_coeffs[0] / series.a_coeffs[0] == pytest.approx((s - 1) / ALPHA, rel=1e-9)
    assert series.b_coeffs[0] / series.a_coeffs[0] == pytest.approx(-ALPHA / (s + 1), rel=1e-9)


def test_two_term_series():
    problem, series = _series(2, -1, ALPHA)
    assert series.length == 2
    assert series.termination_residual < 1e-9


def test_series_rejects_non_eigenvalue():
    problem = RadialProblem.from_epsilon(make_state(1, -1), ALPHA, IDENTITY, 0.5)
    with pytest.raises(TerminationError) as info:
        radial_series(problem)
    assert info.value.residual > 1e-9


def test_radial_problem_domain():
    with pytest.raises(DomainError):
        RadialProblem.from_epsilon(make_state(1, -1), ALPHA, IDENTITY, 1.0)


@pytest.mark.parametrize("n,kappa", [(1, -1), (2, -1), (2, 1), (3, -1), (3, 2), (5, -1)])
def test_components_solve_radial_odes(n, kappa):
    # scaled radial equations, checked by central differences:
    #   A' = -(kappa/r) A + (sqrt(M1/M2) + g_b Za/r) B
    #   B' = (kappa/r) B + (sqrt(M2/M1) - g_a Za/r) A
    za = 0.2
    g = CouplingFactors(0.97, 1.02)
    problem, series = _series(n, kappa, za, g)
    r12 = math.sqrt(problem.M1 / problem.M2)
    for r in (0.3, 1.1, 4.0):
        h = 1e-5
        A, B = evaluate_radial(series, r)
        Ap, Bp = evaluate_radial(series, r + h)
        Am, Bm = evaluate_radial(series, r - h)
        dA, dB = (Ap - Am) / (2 * h), (Bp - Bm) / (2 * h)
        res1 = dA + (kappa / r) * A - (r12 + g.g_b * za / r) * B
        res2 = dB - (kappa / r) * B - (1 / r12 - g.g_a * za / r) * A
        scale = abs(A) + abs(B) + abs(dA) + abs(dB)
        assert abs(res1) < 1e-6 * scale
        assert abs(res2) < 1e-6 * scale


def test_small_r_power_law():
    problem, series = _series(2, -1, 0.1)
    r1, r2 = 1e-8, 1e-7
    A1, _ = evaluate_radial(series, r1)
    A2, _ = evaluate_radial(series, r2)
    assert math.log(A2 / A1) / math.log(r2 / r1) == pytest.approx(problem.s_exponent, rel=1e-5)


def test_ground_state_ratio_constant():
    _, series = _series(1, -1, ALPHA)
    ratios = {round(B / A, 14) for A, B in (evaluate_radial(series, r) for r in (0.1, 1, 10))}
    assert len(ratios) == 1


def test_evaluate_rejects_nonpositive_radius():
    _, series = _series(1, -1, ALPHA)
    with pytest.raises(DomainError):
        evaluate_radial(series, 0.0)


@pytest.mark.parametrize("n,kappa", [(1, -1), (3, -1), (4, 2)])
def test_series_norm_matches_quadrature(n, kappa):
    _, series = _series(n, kappa, 0.3)

    def density(r):
        A, B = evaluate_radial(series, r)
        return A * A + B * B

    numeric, _ = quad(density, 0, math.inf, limit=200)
    assert series_norm(series) == pytest.approx(numeric, rel=1e-8)
