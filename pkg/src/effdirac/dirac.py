"""Dirac-Coulomb closed forms and the radial power-series solution.

Energies are handled as ``binding = 1 - E/mc^2`` wherever precision matters:
hydrogenic splittings are ~1e-11 of mc^2, below what ``epsilon`` itself can
resolve in double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .coupling import IDENTITY, CouplingFactors
from .errors import DomainError, SupercriticalError, TerminationError
from .states import QuantumState

TERMINATION_RTOL = 1e-9


def indicial_exponent(kappa: int, Z_alpha: float, g: CouplingFactors = IDENTITY) -> float:
    """Positive root s = sqrt(kappa^2 - (Z alpha)^2 g_a g_b)."""
    radicand = kappa * kappa - Z_alpha * Z_alpha * g.g_a * g.g_b
    if not radicand > 0:
        raise SupercriticalError(
            f"no bound solution: kappa^2 = {kappa * kappa} <= (Z alpha)^2 g_a g_b = "
            f"{kappa * kappa - radicand:.6g} (bound solutions only up to Z ~ 1/alpha)"
        )
    return math.sqrt(radicand)


def _s_minus_kappa(kappa: int, s: float, Z_alpha: float, g: CouplingFactors) -> tuple[float, float]:
    """(s - kappa, s + kappa) without cancellation in the small one."""
    product = -Z_alpha * Z_alpha * g.g_a * g.g_b  # (s - kappa)(s + kappa)
    if kappa < 0:
        big = s - kappa
        return big, product / big
    big = s + kappa
    return product / big, big


def sommerfeld_binding(state: QuantumState, Z_alpha: float) -> float:
    """1 - E/mc^2 for the pure Coulomb problem, cancellation-free."""
    s = indicial_exponent(state.kappa, Z_alpha)
    N = s + state.n_radial
    t = (Z_alpha / N) ** 2
    root = math.sqrt(1.0 + t)
    return t / (root * (root + 1.0))


def sommerfeld_energy(state: QuantumState, Z_alpha: float) -> float:
    """E/mc^2 = (s + n') / sqrt((s + n')^2 + (Z alpha)^2)."""
    if Z_alpha < 0:
        raise DomainError(f"Z_alpha must be non-negative, got {Z_alpha!r}")
    s = indicial_exponent(state.kappa, Z_alpha)
    N = s + state.n_radial
    return N / math.hypot(N, Z_alpha)


def nonlinear_factor_from_binding(n: int, binding: float) -> float:
    """1 - (1 - binding)^n, accurate for small binding."""
    return -math.expm1(n * math.log1p(-binding))


def nonlinear_factor(state: QuantumState, Z_alpha: float) -> float:
    """f = 1 - <H_D>^n with <H_D> the Sommerfeld energy of the state."""
    if Z_alpha < 0:
        raise DomainError(f"Z_alpha must be non-negative, got {Z_alpha!r}")
    return nonlinear_factor_from_binding(state.n, sommerfeld_binding(state, Z_alpha))


@dataclass(frozen=True)
class RadialProblem:
    """Radial equations of one state at a trial energy.

    Lengths are in units of 1/sqrt(M1 M2), energies in mc^2, so that
    M1 = 1 + epsilon and M2 = 1 - epsilon.
    """

    state: QuantumState
    Z_alpha: float
    g: CouplingFactors
    binding: float

    @classmethod
    def from_epsilon(
        cls, state: QuantumState, Z_alpha: float, g: CouplingFactors, epsilon: float
    ) -> "RadialProblem":
        return cls(state, Z_alpha, g, 1.0 - epsilon)

    def __post_init__(self):
        if not 0.0 < self.binding < 2.0:
            raise DomainError(f"not a bound-state energy: 1 - epsilon = {self.binding!r}")

    @property
    def epsilon(self) -> float:
        return 1.0 - self.binding

    @property
    def M1(self) -> float:
        return 2.0 - self.binding

    @property
    def M2(self) -> float:
        return self.binding

    @property
    def s_exponent(self) -> float:
        return indicial_exponent(self.state.kappa, self.Z_alpha, self.g)


@dataclass(frozen=True)
class RadialSeries:
    a_coeffs: tuple[float, ...]
    b_coeffs: tuple[float, ...]
    s_exponent: float
    termination_residual: float

    @property
    def length(self) -> int:
        return len(self.a_coeffs)


def _recurrence(problem: RadialProblem, n_terms: int) -> tuple[list[float], list[float], float]:
    state, z, g = problem.state, problem.Z_alpha, problem.g
    kappa = state.kappa
    s = problem.s_exponent
    if not z > 0:
        raise DomainError("the radial series needs Z_alpha > 0")
    s_minus, s_plus = _s_minus_kappa(kappa, s, z, g)
    # mu = 0: (s + kappa) a0 = g_b Z alpha b0  and  (s - kappa) b0 = -g_a Z alpha a0
    a = [1.0]
    b = [-g.g_a * z / s_minus if kappa < 0 else s_plus / (g.g_b * z)]
    r12 = math.sqrt(problem.M1 / problem.M2)
    r21 = 1.0 / r12
    for mu in range(1, n_terms):
        c11 = s + mu + kappa
        c22 = s + mu - kappa
        rhs1 = a[-1] + r12 * b[-1]
        rhs2 = b[-1] + r21 * a[-1]
        det = mu * (2.0 * s + mu)  # = c11 c22 + g_a g_b (Z alpha)^2
        a.append((c22 * rhs1 + g.g_b * z * rhs2) / det)
        b.append((c11 * rhs2 - g.g_a * z * rhs1) / det)
    return a, b, r21


def radial_series(problem: RadialProblem, rtol: float = TERMINATION_RTOL) -> RadialSeries:
    """Coefficients a_mu, b_mu (a_0 = 1) of the terminating series.

    Raises TerminationError when the energy is not an eigenvalue, i.e. the
    coefficients at index n' + 1 do not vanish to ``rtol`` relative to
    |a_0| + |b_0|.
    """
    n_prime = problem.state.n_radial
    a, b, r21 = _recurrence(problem, n_prime + 2)
    scale = abs(a[0]) + abs(b[0])
    residual = (abs(a[-1]) + abs(b[-1])) / scale
    if not residual < rtol:
        raise TerminationError(
            f"series for {problem.state.label} does not terminate at epsilon = "
            f"{problem.epsilon!r}: residual {residual:.3e}",
            residual,
        )
    tail = abs(b[n_prime] + a[n_prime] * r21) / max(abs(b[n_prime]), abs(a[n_prime] * r21))
    if not tail < rtol:
        raise TerminationError(
            f"last coefficients violate b_n' = -a_n' sqrt(M2/M1): {tail:.3e}", tail
        )
    return RadialSeries(
        tuple(a[: n_prime + 1]), tuple(b[: n_prime + 1]), problem.s_exponent, residual
    )


def evaluate_radial(
    series: RadialSeries, r: float, problem: Optional[RadialProblem] = None
) -> tuple[float, float]:
    """R_A(r), R_B(r) at scaled radius r > 0."""
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r!r}")
    prefactor = math.exp(-r) * r**series.s_exponent
    poly_a = poly_b = 0.0
    for a_mu, b_mu in zip(reversed(series.a_coeffs), reversed(series.b_coeffs)):
        poly_a = poly_a * r + a_mu
        poly_b = poly_b * r + b_mu
    return prefactor * poly_a, prefactor * poly_b


def series_norm(series: RadialSeries) -> float:
    """Integral of R_A^2 + R_B^2 over r in (0, inf), term by term.

    Uses int r^(2s+k) e^(-2r) dr = Gamma(2s+k+1) / 2^(2s+k+1).
    """
    s2 = 2.0 * series.s_exponent
    total = 0.0
    a, b = series.a_coeffs, series.b_coeffs
    for mu in range(series.length):
        for nu in range(series.length):
            p = s2 + mu + nu + 1.0
            moment = math.exp(math.lgamma(p) - p * math.log(2.0))
            total += (a[mu] * a[nu] + b[mu] * b[nu]) * moment
    return total
