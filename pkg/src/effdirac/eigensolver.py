"""Eigenvalues of the effective Dirac-Coulomb problem.

The quantization condition for a state with n' radial nodes is

    2 (s + n') sqrt(1 - eps^2) = Z alpha [g_a (1 + eps) - g_b (1 - eps)]

with s the indicial exponent. Squaring gives a quadratic in eps; written in
the binding w = 1 - eps its discriminant factorizes, so the physical root is
obtained without cancellation. A bracketed root search on the unsquared
equation serves as an independent check on every solve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .constants import BetheLogTable, PhysicalConstants
from .coupling import IDENTITY, CouplingFactors, CouplingKind, coupling_for
from .dirac import (
    indicial_exponent,
    nonlinear_factor_from_binding,
    sommerfeld_binding,
)
from .errors import DomainError, EffDiracError, NumericalError, SolveError
from .states import QuantumState

AGREEMENT_TOL = 1e-12
RESIDUAL_TOL = 1e-12
NEAR_DEGENERATE = 1e-6


@dataclass(frozen=True)
class SolveReport:
    epsilon_closed_form: float
    epsilon_root_found: float
    residual: float
    iterations: int
    near_degenerate: bool = False
    other_root: float = math.nan


@dataclass(frozen=True)
class EnergyLevel:
    """A solved (or expanded) level.

    ``binding`` is 1 - epsilon carried at full relative precision; use it,
    not ``epsilon``, when differencing levels.
    """

    epsilon: float
    binding: float
    state: QuantumState
    coupling: CouplingFactors
    breakdown: tuple[tuple[str, float], ...] = ()
    report: Optional[SolveReport] = None
    flags: tuple[str, ...] = field(default=())

    def term(self, label: str) -> float:
        for name, value in self.breakdown:
            if name == label:
                return value
        raise KeyError(label)


def dirac_terms(state: QuantumState, Z_alpha: float) -> list[tuple[str, float]]:
    n, k = state.n, abs(state.kappa)
    z2 = Z_alpha * Z_alpha
    return [
        ("alpha2", -0.5 * z2 / n**2),
        ("alpha4_dirac", (3.0 / (8.0 * n**4) - 1.0 / (2.0 * n**3 * k)) * z2 * z2),
    ]


def _quantization(state: QuantumState, Z_alpha: float, g: CouplingFactors):
    s = indicial_exponent(state.kappa, Z_alpha, g)
    A = 2.0 * (s + state.n_radial)
    P = Z_alpha * (g.g_a - g.g_b)
    Q = Z_alpha * (g.g_a + g.g_b)
    return s, A, P, Q


def _unsquared(A: float, Q: float, Z_alpha: float, g_a: float, w: float) -> tuple[float, float]:
    """Both sides of the quantization condition at binding w."""
    return A * math.sqrt(w * (2.0 - w)), 2.0 * Z_alpha * g_a - Q * w


def solve_effective(
    state: QuantumState, Z_alpha: float, g: CouplingFactors = IDENTITY
) -> EnergyLevel:
    if not Z_alpha > 0:
        raise DomainError(f"Z_alpha must be positive, got {Z_alpha!r}")
    s, A, P, Q = _quantization(state, Z_alpha, g)
    z2 = Z_alpha * Z_alpha
    # (A^2 + Q^2) w^2 - 2 b w + c = 0, discriminant A^2 (A^2 + 4 z^2 g_a g_b)
    a2 = A * A + Q * Q
    b = A * A + 2.0 * z2 * g.g_a * (g.g_a + g.g_b)
    c = 4.0 * z2 * g.g_a * g.g_a
    root = A * math.sqrt(A * A + 4.0 * z2 * g.g_a * g.g_b)
    if not b + root > 0:
        raise SolveError(f"degenerate quantization condition for {state.label}")
    w_small = c / (b + root)
    w_large = (b + root) / a2
    w_ref = sommerfeld_binding(state, Z_alpha)
    if abs(w_small - w_ref) <= abs(w_large - w_ref):
        w, w_other = w_small, w_large
    else:
        w, w_other = w_large, w_small

    lhs, rhs = _unsquared(A, Q, Z_alpha, g.g_a, w)
    if not (rhs > 0 and 0.0 < w < 1.0):
        raise SolveError(
            f"no root of the unsquared condition for {state.label} at Z alpha = {Z_alpha!r}"
        )
    residual = (lhs - rhs) / rhs
    if not abs(residual) <= RESIDUAL_TOL:
        raise SolveError(f"selected root fails the unsquared condition: residual {residual:.3e}")

    def F(x: float) -> float:
        left, right = _unsquared(A, Q, Z_alpha, g.g_a, x)
        return left - right

    if not (F(0.0) < 0.0 < F(1.0)):
        raise SolveError(f"no bracketed bound-state root for {state.label}")
    w_rf, info = brentq(F, 0.0, 1.0, xtol=1e-300, rtol=4 * np.finfo(float).eps,
                        maxiter=500, full_output=True)
    if abs(w_rf - w) > AGREEMENT_TOL:
        raise SolveError(
            f"closed form and root search disagree for {state.label}: "
            f"{1 - w!r} vs {1 - w_rf!r}"
        )
    report = SolveReport(
        epsilon_closed_form=1.0 - w,
        epsilon_root_found=1.0 - w_rf,
        residual=residual,
        iterations=info.iterations,
        near_degenerate=abs(w_other - w) < NEAR_DEGENERATE,
        other_root=1.0 - w_other,
    )
    terms = dirac_terms(state, Z_alpha)
    higher = -w_ref - sum(v for _, v in terms)
    breakdown = (*terms, ("dirac_higher", higher), ("effective_coupling", w_ref - w))
    return EnergyLevel(1.0 - w, w, state, g, breakdown, report)


def analytic_expansion(
    state: QuantumState,
    Z: int,
    constants: PhysicalConstants,
    which: CouplingKind | str = CouplingKind.DIRAC,
    bethe: Optional[BetheLogTable] = None,
    binding_correction: bool = False,
) -> list[tuple[str, float]]:
    """Term-by-term low-order expansion of (E - mc^2)/mc^2."""
    which = CouplingKind(which)
    alpha = constants.alpha
    z = Z * alpha
    n = state.n
    terms = dirac_terms(state, z)
    if which in (CouplingKind.HYPERFINE, CouplingKind.COMBINED):
        if state.S is None:
            raise DomainError(f"hyperfine expansion needs S on {state.label}")
        if state.kappa == -1:
            spin = 1.0 if state.S == 1 else -3.0
            value = constants.g_p * constants.mass_ratio * spin * z**4 / (3.0 * n**3)
        else:
            value = 0.0
        terms.append(("alpha4_hyperfine", value))
    if which in (CouplingKind.LAMB, CouplingKind.COMBINED):
        if bethe is None:
            raise DomainError("the Lamb expansion needs a Bethe-logarithm table")
        kappa = state.kappa
        if kappa == -1:
            bracket = bethe.lookup(n, 0) + 19.0 / 30.0 - 2.0 * math.log(z)
        else:
            bracket = 3.0 / 8.0 / (kappa * (2 * abs(kappa) - 1))
        lamb = 4.0 / (3.0 * math.pi * n**3) * bracket * alpha * z**4
        terms.append(("alpha_zalpha4_lamb", lamb))
        if binding_correction:
            terms.append(("alpha_zalpha5_binding", z * lamb))
    return terms


def numeric_order_extraction(
    state: QuantumState,
    g_builder: Callable[[float], CouplingFactors],
    orders: Sequence[int] = (2, 4),
    window: tuple[float, float] = (1e-3, 1e-2),
    n_samples: int = 24,
    cond_limit: float = 1e8,
) -> list[tuple[int, float]]:
    """Fit eps(Z alpha) - 1 to a polynomial in (Z alpha)^2.

    Two orders beyond the highest requested one are fitted as well, so that
    truncation does not bias the reported coefficients.
    """
    orders = sorted(set(int(k) for k in orders))
    if not orders or any(k < 2 or k % 2 for k in orders):
        raise DomainError(f"orders must be even exponents >= 2, got {orders}")
    n_powers = orders[-1] // 2 + 2
    if n_samples < max(n_powers, len(orders) + 2):
        raise DomainError(f"need at least {max(n_powers, len(orders) + 2)} samples")
    lo, hi = window
    if not 0 < lo < hi:
        raise DomainError(f"bad sample window {window}")
    # Chebyshev nodes in x = (Z alpha)^2
    x_lo, x_hi = lo * lo, hi * hi
    nodes = np.cos(np.pi * (np.arange(n_samples) + 0.5) / n_samples)
    x = 0.5 * (x_lo + x_hi) + 0.5 * (x_hi - x_lo) * nodes
    y = np.empty_like(x)
    for i, xi in enumerate(x):
        z = math.sqrt(xi)
        y[i] = -solve_effective(state, z, g_builder(z)).binding / xi
    u = x / x_hi
    design = np.vander(u, n_powers, increasing=True)
    cond = np.linalg.cond(design)
    if not cond < cond_limit:
        raise NumericalError(f"order fit is ill-conditioned (cond = {cond:.3g})")
    fitted, *_ = np.linalg.lstsq(design, y, rcond=None)
    coeffs = {2 * (k + 1): float(fitted[k]) / x_hi**k for k in range(n_powers)}
    return [(k, coeffs[k]) for k in orders]


@dataclass(frozen=True)
class IterationResult:
    level: Optional[EnergyLevel]
    trace: tuple[float, ...]
    converged: bool
    status: str

    @property
    def iterations(self) -> int:
        return len(self.trace) - 1


def self_consistent_iterate(
    state: QuantumState,
    Z_alpha: float,
    which: CouplingKind | str,
    max_iter: int,
    tol: float,
    constants: PhysicalConstants,
    bethe: Optional[BetheLogTable] = None,
    **coupling_options,
) -> IterationResult:
    """Experimental fixed point: feed the solved energy back into the nonlinear factor.

    ``trace`` holds the bindings 1 - eps, starting from the Sommerfeld value;
    a divergent run is reported through ``status``, not raised.
    """
    if max_iter < 1:
        raise DomainError("max_iter must be >= 1")
    w = sommerfeld_binding(state, Z_alpha)
    trace = [w]
    level = None
    for _ in range(max_iter):
        f = nonlinear_factor_from_binding(state.n, w)
        try:
            g = coupling_for(which, state, Z_alpha, f, constants, bethe, **coupling_options)
            level = solve_effective(state, Z_alpha, g)
        except EffDiracError as exc:
            return IterationResult(level, tuple(trace), False, f"diverged: {exc}")
        if not 0.0 < level.epsilon < 1.0:
            return IterationResult(level, tuple(trace), False, "diverged: energy left (0, 1)")
        step = abs(level.binding - w)
        w = level.binding
        trace.append(w)
        if step < tol:
            return IterationResult(level, tuple(trace), True, "converged")
    return IterationResult(level, tuple(trace), False, "max_iter reached")
