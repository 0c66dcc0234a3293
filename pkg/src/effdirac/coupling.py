"""Effective coupling factors multiplying Z*alpha in the two radial equations.

A coupling is the diagonal pair (g_a, g_b): g_a scales the Coulomb term in
the equation for the upper (large) component, g_b the lower one. Each factor
has the form ``1 - lambda * f`` where ``f`` is the nonlinear factor of the
state and ``lambda`` a radiative (Lamb) or nuclear-moment (hyperfine)
strength evaluated with the orbital quantum number of that component.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .constants import BetheLogTable, PhysicalConstants
from .errors import DomainError, IdempotencyError
from .states import QuantumState

BETHE_CONSTANT = 19.0 / 30.0


@dataclass(frozen=True)
class CouplingFactors:
    g_a: float = 1.0
    g_b: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.g_a) and math.isfinite(self.g_b)):
            raise DomainError(f"coupling factors must be finite, got {self}")

    @property
    def is_identity(self) -> bool:
        return self.g_a == 1.0 and self.g_b == 1.0


IDENTITY = CouplingFactors(1.0, 1.0)


class LambdaKind(str, enum.Enum):
    LAMB = "lamb"
    HYPERFINE = "hyperfine"


class Correction(str, enum.Enum):
    BINDING_ZALPHA = "binding_Zalpha"
    BREIT = "breit"
    USER_DELTA = "user_delta"


@dataclass(frozen=True)
class LambdaFactor:
    value: float
    kind: LambdaKind
    order_flags: frozenset[Correction] = field(default_factory=frozenset)

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise DomainError(f"lambda must be finite, got {self.value!r}")

    def scaled(self, factor: float, *flags: Correction) -> "LambdaFactor":
        return LambdaFactor(self.value * factor, self.kind, self.order_flags | set(flags))


def lambda_lamb(
    n: int, kappa: int, l: int, alpha: float, Z_alpha: float, bethe: BetheLogTable
) -> LambdaFactor:
    """Radiative strength of the Lamb coupling for one component.

    s-waves carry the Bethe-logarithm bracket ``L(n,0) + 19/30 - 2 ln(Z alpha)``;
    every other l carries the anomalous-moment term ``3 / (8 kappa (2|kappa| - 1))``.
    """
    if not Z_alpha > 0:
        raise DomainError(f"Z_alpha must be positive for the Lamb coupling, got {Z_alpha!r}")
    prefactor = 8.0 / (3.0 * math.pi) * alpha
    if l == 0:
        bracket = bethe.lookup(n, 0) + BETHE_CONSTANT - 2.0 * math.log(Z_alpha)
    else:
        bracket = 3.0 / 8.0 / (kappa * (2 * abs(kappa) - 1))
    return LambdaFactor(prefactor * bracket, LambdaKind.LAMB)


def lambda_hyperfine(kappa: int, l: int, S: int, constants: PhysicalConstants) -> LambdaFactor:
    """Nuclear-moment strength; nonzero only for s-wave components."""
    if S not in (0, 1):
        raise DomainError(f"S must be 0 or 1, got {S!r}")
    if l != 0:
        return LambdaFactor(0.0, LambdaKind.HYPERFINE)
    spin_factor = 1.0 if S == 1 else -3.0
    value = 2.0 / 3.0 * constants.g_p * constants.mass_ratio * spin_factor
    return LambdaFactor(value, LambdaKind.HYPERFINE)


def apply_binding_correction(lam: LambdaFactor, Z_alpha: float) -> LambdaFactor:
    """Next binding order of the Lamb strength: lambda -> (1 + Z alpha) lambda."""
    if lam.kind is not LambdaKind.LAMB:
        raise DomainError("the binding correction applies to Lamb factors only")
    if Correction.BINDING_ZALPHA in lam.order_flags:
        raise IdempotencyError("binding correction already applied")
    return lam.scaled(1.0 + Z_alpha, Correction.BINDING_ZALPHA)


def apply_hyperfine_corrections(
    lam: LambdaFactor, Z_alpha: float, user_delta: float = 0.0
) -> LambdaFactor:
    """lambda -> (1 + 3/2 (Z alpha)^2 + user_delta) lambda."""
    if lam.kind is not LambdaKind.HYPERFINE:
        raise DomainError("the Breit correction applies to hyperfine factors only")
    if Correction.BREIT in lam.order_flags:
        raise IdempotencyError("hyperfine corrections already applied")
    if not math.isfinite(user_delta):
        raise DomainError("user_delta must be finite")
    breit = 1.5 * Z_alpha * Z_alpha
    flags = [Correction.BREIT]
    if user_delta != 0.0:
        flags.append(Correction.USER_DELTA)
    return lam.scaled(1.0 + breit + user_delta, *flags)


def build_coupling(
    state: QuantumState, lam_for_l_a: LambdaFactor, lam_for_l_b: LambdaFactor, f: float
) -> CouplingFactors:
    if not 0.0 <= f < 1.0:
        raise DomainError(f"nonlinear factor must lie in [0, 1), got {f!r}")
    return CouplingFactors(1.0 - lam_for_l_a.value * f, 1.0 - lam_for_l_b.value * f)


def combine_couplings(lamb: CouplingFactors, hyp: CouplingFactors) -> CouplingFactors:
    """Superpose two couplings: g = g_lamb + g_hyp - 1 componentwise."""
    return CouplingFactors(
        lamb.g_a + (hyp.g_a - 1.0),
        lamb.g_b + (hyp.g_b - 1.0),
    )


def lamb_lambdas(
    state: QuantumState,
    alpha: float,
    Z_alpha: float,
    bethe: BetheLogTable,
    binding_correction: bool = False,
) -> tuple[LambdaFactor, LambdaFactor]:
    lams = tuple(
        lambda_lamb(state.n, state.kappa, l, alpha, Z_alpha, bethe)
        for l in (state.l_a, state.l_b)
    )
    if binding_correction:
        lams = tuple(apply_binding_correction(lam, Z_alpha) for lam in lams)
    return lams  # type: ignore[return-value]


def hyperfine_lambdas(
    state: QuantumState,
    constants: PhysicalConstants,
    Z_alpha: float,
    corrections: bool = False,
    user_delta: float = 0.0,
) -> tuple[LambdaFactor, LambdaFactor]:
    if state.S is None:
        raise DomainError(f"hyperfine coupling needs the total spin S on {state.label}")
    lams = tuple(
        lambda_hyperfine(state.kappa, l, state.S, constants) for l in (state.l_a, state.l_b)
    )
    if corrections:
        lams = tuple(apply_hyperfine_corrections(lam, Z_alpha, user_delta) for lam in lams)
    return lams  # type: ignore[return-value]


class CouplingKind(str, enum.Enum):
    DIRAC = "dirac"
    LAMB = "lamb"
    HYPERFINE = "hyperfine"
    COMBINED = "combined"


def coupling_for(
    kind: CouplingKind | str,
    state: QuantumState,
    Z_alpha: float,
    f: float,
    constants: PhysicalConstants,
    bethe: BetheLogTable | None = None,
    *,
    binding_correction: bool = False,
    hyperfine_corrections: bool = False,
    user_delta: float = 0.0,
) -> CouplingFactors:
    """Coupling of the given kind for ``state`` with nonlinear factor ``f``."""
    kind = CouplingKind(kind)
    if kind is CouplingKind.DIRAC:
        return IDENTITY
    lamb = hyp = IDENTITY
    if kind in (CouplingKind.LAMB, CouplingKind.COMBINED):
        if bethe is None:
            raise DomainError("the Lamb coupling needs a Bethe-logarithm table")
        lam_a, lam_b = lamb_lambdas(state, constants.alpha, Z_alpha, bethe, binding_correction)
        lamb = build_coupling(state, lam_a, lam_b, f)
    if kind in (CouplingKind.HYPERFINE, CouplingKind.COMBINED):
        lam_a, lam_b = hyperfine_lambdas(
            state, constants, Z_alpha, hyperfine_corrections, user_delta
        )
        hyp = build_coupling(state, lam_a, lam_b, f)
    if kind is CouplingKind.LAMB:
        return lamb
    if kind is CouplingKind.HYPERFINE:
        return hyp
    return combine_couplings(lamb, hyp)
