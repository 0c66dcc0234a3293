import io
import math

import pytest
from hypothesis import given, strategies as st

from effdirac import (
    IDENTITY,
    CouplingFactors,
    CouplingKind,
    LambdaFactor,
    LambdaKind,
    apply_binding_correction,
    apply_hyperfine_corrections,
    build_coupling,
    combine_couplings,
    coupling_for,
    lambda_hyperfine,
    lambda_lamb,
    load_bethe_table,
    make_state,
    nonlinear_factor,
)
from effdirac.coupling import Correction
from effdirac.errors import DomainError, IdempotencyError, MissingBetheEntry

ALPHA = 1 / 137.036
deviation = st.floats(-0.5, 0.5, allow_nan=False)


def test_lamb_p_state(bethe):
    lam = lambda_lamb(2, +1, 1, ALPHA, ALPHA, bethe)
    assert lam.value == pytest.approx(ALPHA / math.pi, rel=1e-14)
    assert lam.value == pytest.approx(2.32282e-3, rel=1e-5)
    assert lam.kind is LambdaKind.LAMB


def test_lamb_s_state_log_dependence(bethe):
    a = lambda_lamb(2, -1, 0, ALPHA, 0.01, bethe).value
    b = lambda_lamb(2, -1, 0, ALPHA, 0.02, bethe).value
    assert a - b == pytest.approx(8 / (3 * math.pi) * ALPHA * 2 * math.log(2), rel=1e-12)


def test_lamb_s_state_value(bethe):
    L = bethe.lookup(2, 0)
    bracket = L + 19 / 30 - 2 * math.log(ALPHA)
    assert lambda_lamb(2, -1, 0, ALPHA, ALPHA, bethe).value == pytest.approx(
        8 / (3 * math.pi) * ALPHA * bracket, rel=1e-14
    )


def test_lamb_l_nonzero_skips_table():
    empty = load_bethe_table(io.StringIO(""))
    lam = lambda_lamb(2, -1, 1, ALPHA, ALPHA, empty)
    assert lam.value == pytest.approx(8 / (3 * math.pi) * ALPHA * 3 / 8 / (-1), rel=1e-14)
    with pytest.raises(MissingBetheEntry):
        lambda_lamb(2, -1, 0, ALPHA, ALPHA, empty)


def test_lamb_requires_positive_coupling(bethe):
    with pytest.raises(DomainError):
        lambda_lamb(2, -1, 0, ALPHA, 0.0, bethe)


@given(st.floats(1e-4, 0.3), st.floats(1e-4, 0.1))
def test_lamb_decreasing_in_coupling(za, dz):
    bethe = load_bethe_table()
    assert lambda_lamb(2, -1, 0, ALPHA, min(za + dz, 0.3), bethe).value <= lambda_lamb(
        2, -1, 0, ALPHA, za, bethe
    ).value


def test_hyperfine_values(constants):
    triplet = lambda_hyperfine(-1, 0, 1, constants).value
    singlet = lambda_hyperfine(-1, 0, 0, constants).value
    assert triplet == pytest.approx(2 / 3 * 5.58568 * 5.446170e-4, rel=1e-6)
    assert triplet == pytest.approx(2.02804e-3, rel=1e-5)
    assert singlet == pytest.approx(-6.08412e-3, rel=1e-5)
    assert singlet == -3 * triplet
    assert lambda_hyperfine(1, 1, 1, constants).value == 0.0


def test_hyperfine_bad_spin(constants):
    with pytest.raises(DomainError):
        lambda_hyperfine(-1, 0, 2, constants)


def test_binding_correction():
    lam = LambdaFactor(0.04, LambdaKind.LAMB)
    corrected = apply_binding_correction(lam, ALPHA)
    assert corrected.value == pytest.approx(4.02919e-2, rel=1e-5)
    assert Correction.BINDING_ZALPHA in corrected.order_flags
    assert apply_binding_correction(lam, 0.0).value == 0.04
    with pytest.raises(IdempotencyError):
        apply_binding_correction(corrected, ALPHA)
    with pytest.raises(DomainError):
        apply_binding_correction(LambdaFactor(0.04, LambdaKind.HYPERFINE), ALPHA)


def test_hyperfine_corrections():
    lam = LambdaFactor(1.0, LambdaKind.HYPERFINE)
    assert apply_hyperfine_corrections(lam, ALPHA).value == pytest.approx(1 + 7.98770e-5, rel=1e-10)
    assert apply_hyperfine_corrections(lam, 0.0).value == 1.0
    with_delta = apply_hyperfine_corrections(lam, ALPHA, 0.001)
    assert with_delta.value == pytest.approx(1.00107988, rel=1e-8)
    assert Correction.USER_DELTA in with_delta.order_flags
    with pytest.raises(IdempotencyError):
        apply_hyperfine_corrections(with_delta, ALPHA)
    with pytest.raises(DomainError):
        apply_hyperfine_corrections(LambdaFactor(1.0, LambdaKind.LAMB), ALPHA)


def test_build_coupling_examples(bethe, constants):
    state = make_state(2, -1)
    lam = LambdaFactor(0.3, LambdaKind.LAMB)
    assert build_coupling(state, lam, lam, 0.0) == IDENTITY
    g = build_coupling(state, lam, lam, 0.1)
    assert g.g_a == g.g_b
    f = nonlinear_factor(state, ALPHA)
    assert f == pytest.approx(1.33129e-5, rel=1e-4)
    g = coupling_for(CouplingKind.LAMB, state, ALPHA, f, constants, bethe)
    assert 1e-8 < 1 - g.g_a < 1e-5
    with pytest.raises(DomainError):
        build_coupling(state, lam, lam, 1.0)


@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(0, 0.99))
def test_build_coupling_affine(la, lb, f):
    state = make_state(2, -1)
    g = build_coupling(state, LambdaFactor(la, LambdaKind.LAMB), LambdaFactor(lb, LambdaKind.LAMB), f)
    assert g.g_a == 1.0 - la * f
    assert g.g_b == 1.0 - lb * f


def test_combine_examples():
    assert combine_couplings(IDENTITY, IDENTITY) == IDENTITY
    g = CouplingFactors(0.9, 1.1)
    assert combine_couplings(g, IDENTITY) == g
    assert combine_couplings(CouplingFactors(1 - 0.25, 1 - 0.5), CouplingFactors(1 - 0.125, 1 - 0.0625)) == (
        CouplingFactors(1 - 0.25 - 0.125, 1 - 0.5 - 0.0625)
    )


@given(deviation, deviation)
def test_combine_identity_exact(x, y):
    g = CouplingFactors(1 - x, 1 - y)
    assert combine_couplings(g, IDENTITY) == g


@given(st.integers(-2**20, 2**20), st.integers(-2**20, 2**20), st.integers(-2**20, 2**20), st.integers(-2**20, 2**20))
def test_combine_deviations_additive(i, j, k, m):
    # dyadic deviations keep every operation exact in binary floating point
    x, y, u, v = (q / 2**22 for q in (i, j, k, m))
    c = combine_couplings(CouplingFactors(1 - x, 1 - y), CouplingFactors(1 - u, 1 - v))
    assert 1 - c.g_a == x + u
    assert 1 - c.g_b == y + v


def test_coupling_kinds(constants, bethe):
    state = make_state(1, -1, 1)
    f = nonlinear_factor(state, ALPHA)
    assert coupling_for("dirac", state, ALPHA, f, constants, bethe) == IDENTITY
    lamb = coupling_for("lamb", state, ALPHA, f, constants, bethe)
    hyp = coupling_for("hyperfine", state, ALPHA, f, constants)
    assert coupling_for("combined", state, ALPHA, f, constants, bethe) == combine_couplings(lamb, hyp)
    # hyperfine acts only on the s-wave (upper) component of 1s
    assert hyp.g_b == 1.0 and hyp.g_a < 1.0
    with pytest.raises(DomainError):
        coupling_for("hyperfine", make_state(1, -1), ALPHA, f, constants)
    with pytest.raises(DomainError):
        coupling_for("lamb", state, ALPHA, f, constants, None)


def test_coupling_factors_finite():
    with pytest.raises(DomainError):
        CouplingFactors(math.nan, 1.0)
