"""Lamb shift, hyperfine splitting and comparison against reference values."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .constants import (
    BetheLogTable,
    PhysicalConstants,
    Quantity,
    ReferenceRecord,
    SourceTag,
    load_bethe_table,
    load_constants,
)
from .coupling import IDENTITY, CouplingKind, coupling_for
from .dirac import nonlinear_factor, sommerfeld_binding
from .eigensolver import EnergyLevel, dirac_terms, solve_effective
from .errors import DomainError
from .states import QuantumState, make_state


class SplittingKind(str, enum.Enum):
    LAMB = "lamb"
    HYPERFINE = "hyperfine"


class LambOrder(str, enum.Enum):
    ZALPHA4 = "zalpha4"
    ZALPHA5 = "zalpha5"


ORDER_LABELS = {
    LambOrder.ZALPHA4: "alpha(Zalpha)^4",
    LambOrder.ZALPHA5: "alpha(Zalpha)^5",
}
INCREMENT_LABEL = "delta_alpha(Zalpha)^5"

_QUANTITY = {
    SplittingKind.LAMB: Quantity.LAMB_SHIFT,
    SplittingKind.HYPERFINE: Quantity.HYPERFINE_SPLITTING,
}
_SOURCE_PRIORITY = {
    SourceTag.QED_REFERENCE: 0,
    SourceTag.EXPERIMENT: 1,
    SourceTag.PAPER: 2,
}


@dataclass(frozen=True)
class SplittingResult:
    """E(upper) - E(lower) in MHz.

    ``components`` is (upper, lower); it is empty for increments, which are
    differences of two splittings.
    """

    Z: int
    n: int
    kind: SplittingKind
    order_label: str
    value_MHz: float
    components: tuple[EnergyLevel, ...] = ()
    flags: tuple[str, ...] = ()

    @property
    def quantity(self) -> Quantity:
        return _QUANTITY[self.kind]

    @property
    def is_increment(self) -> bool:
        return self.order_label == INCREMENT_LABEL


@dataclass(frozen=True)
class ComparisonRow:
    result: SplittingResult
    reference: Optional[ReferenceRecord]
    discrepancy_percent: Optional[float]


def to_MHz(delta_epsilon: float, constants: PhysicalConstants) -> float:
    return delta_epsilon * constants.mc2_eV * constants.eV_to_MHz


def _splitting(Z, n, kind, order_label, upper, lower, constants, flags=()):
    # upper - lower in energy is lower.binding - upper.binding
    value = to_MHz(lower.binding - upper.binding, constants)
    return SplittingResult(Z, n, kind, order_label, value, (upper, lower), tuple(flags))


def _defaults(constants, bethe):
    return (constants or load_constants()), (bethe if bethe is not None else load_bethe_table())


def lamb_level(
    Z: int,
    state: QuantumState,
    constants: PhysicalConstants,
    bethe: BetheLogTable,
    binding_correction: bool = False,
) -> EnergyLevel:
    z = Z * constants.alpha
    g = coupling_for(
        CouplingKind.LAMB,
        state,
        z,
        nonlinear_factor(state, z),
        constants,
        bethe,
        binding_correction=binding_correction,
    )
    return solve_effective(state, z, g)


def lamb_shift(
    Z: int,
    n: int,
    order: LambOrder | str = LambOrder.ZALPHA4,
    constants: Optional[PhysicalConstants] = None,
    bethe: Optional[BetheLogTable] = None,
) -> SplittingResult:
    """E(ns_1/2) - E(np_1/2) with Lamb couplings on both levels."""
    order = LambOrder(order)
    constants, bethe = _defaults(constants, bethe)
    if n < 2:
        raise DomainError(f"the s1/2 - p1/2 splitting needs n >= 2, got {n}")
    binding = order is LambOrder.ZALPHA5
    s_level = lamb_level(Z, make_state(n, -1), constants, bethe, binding)
    p_level = lamb_level(Z, make_state(n, +1), constants, bethe, binding)
    return _splitting(Z, n, SplittingKind.LAMB, ORDER_LABELS[order], s_level, p_level, constants)


def lamb_increment(
    Z: int,
    n: int,
    constants: Optional[PhysicalConstants] = None,
    bethe: Optional[BetheLogTable] = None,
) -> SplittingResult:
    """Change of the Lamb splitting from the (1 + Z alpha) binding correction."""
    constants, bethe = _defaults(constants, bethe)
    low = lamb_shift(Z, n, LambOrder.ZALPHA4, constants, bethe)
    high = lamb_shift(Z, n, LambOrder.ZALPHA5, constants, bethe)
    return SplittingResult(
        Z, n, SplittingKind.LAMB, INCREMENT_LABEL, high.value_MHz - low.value_MHz
    )


def hyperfine_level(
    Z: int,
    state: QuantumState,
    constants: PhysicalConstants,
    with_corrections: bool = False,
    user_delta: float = 0.0,
) -> EnergyLevel:
    z = Z * constants.alpha
    g = coupling_for(
        CouplingKind.HYPERFINE,
        state,
        z,
        nonlinear_factor(state, z),
        constants,
        hyperfine_corrections=with_corrections,
        user_delta=user_delta,
    )
    return solve_effective(state, z, g)


def hyperfine_splitting(
    Z: int,
    n: int,
    constants: Optional[PhysicalConstants] = None,
    with_corrections: bool = False,
    user_delta: float = 0.0,
) -> SplittingResult:
    """E(ns_1/2, S=1) - E(ns_1/2, S=0)."""
    constants = constants or load_constants()
    triplet = hyperfine_level(Z, make_state(n, -1, 1), constants, with_corrections, user_delta)
    singlet = hyperfine_level(Z, make_state(n, -1, 0), constants, with_corrections, user_delta)
    label = "alpha4+breit" if with_corrections else "alpha4"
    flags = ("extrapolated_Z",) if Z != 1 else ()
    return _splitting(
        Z, n, SplittingKind.HYPERFINE, label, triplet, singlet, constants, flags
    )


def combined_level(
    Z: int,
    state: QuantumState,
    constants: Optional[PhysicalConstants] = None,
    bethe: Optional[BetheLogTable] = None,
    **coupling_options,
) -> EnergyLevel:
    """Level with the Lamb and hyperfine couplings superposed.

    The breakdown splits the shift from the Dirac value into the Lamb-only
    and hyperfine-only shifts plus the remaining cross term.
    """
    constants, bethe = _defaults(constants, bethe)
    if state.S is None:
        raise DomainError(f"combined level needs the total spin S on {state.label}")
    z = Z * constants.alpha
    f = nonlinear_factor(state, z)

    def solve(kind):
        g = coupling_for(kind, state, z, f, constants, bethe, **coupling_options)
        return solve_effective(state, z, g)

    both = solve(CouplingKind.COMBINED)
    lamb_only = solve(CouplingKind.LAMB)
    hyp_only = solve(CouplingKind.HYPERFINE)
    w_dirac = sommerfeld_binding(state, z)
    terms = dirac_terms(state, z)
    lamb_part = w_dirac - lamb_only.binding
    hyp_part = w_dirac - hyp_only.binding
    breakdown = (
        *terms,
        ("dirac_higher", -w_dirac - sum(v for _, v in terms)),
        ("lamb", lamb_part),
        ("hyperfine", hyp_part),
        ("lamb_hyperfine_cross", w_dirac - both.binding - lamb_part - hyp_part),
    )
    flags = ("hyperfine_extrapolated_Z",) if Z != 1 else ()
    return EnergyLevel(
        both.epsilon, both.binding, state, both.coupling, breakdown, both.report, flags
    )


def combined_hyperfine_splitting(
    Z: int,
    n: int,
    constants: Optional[PhysicalConstants] = None,
    bethe: Optional[BetheLogTable] = None,
    **coupling_options,
) -> SplittingResult:
    """S=1 minus S=0 splitting of ns_1/2 with the combined coupling."""
    constants, bethe = _defaults(constants, bethe)
    triplet = combined_level(Z, make_state(n, -1, 1), constants, bethe, **coupling_options)
    singlet = combined_level(Z, make_state(n, -1, 0), constants, bethe, **coupling_options)
    return _splitting(
        Z, n, SplittingKind.HYPERFINE, "combined", triplet, singlet, constants, triplet.flags
    )


def dirac_level(Z: int, state: QuantumState, constants: PhysicalConstants) -> EnergyLevel:
    return solve_effective(state, Z * constants.alpha, IDENTITY)


def invert_lamb_splitting(
    target_MHz: float, Z: int, n: int, constants: PhysicalConstants
) -> float:
    """Bethe logarithm L(n,0) for which the leading-order closed-form
    ns_1/2 - np_1/2 splitting equals ``target_MHz``."""
    z = Z * constants.alpha
    unit = 4.0 / (3.0 * math.pi * n**3) * constants.alpha * z**4
    bracket = target_MHz / to_MHz(unit, constants)
    return bracket - 19.0 / 30.0 + 2.0 * math.log(z) + 3.0 / 8.0


def _discrepancy(value: float, reference: float) -> float:
    return 100.0 * abs(value - reference) / abs(reference)


def compare(
    results: Iterable[SplittingResult], references: Sequence[ReferenceRecord]
) -> list[ComparisonRow]:
    """Pair each result with its best reference on (Z, n, quantity).

    qed_reference is preferred over experiment, experiment over paper; ties
    keep the first record. Increment references match increment results only.
    """
    rows = []
    for result in results:
        matches = [
            (i, ref)
            for i, ref in enumerate(references)
            if (ref.Z, ref.n, ref.quantity) == (result.Z, result.n, result.quantity)
            and ref.is_increment == result.is_increment
        ]
        if not matches:
            rows.append(ComparisonRow(result, None, None))
            continue
        _, best = min(matches, key=lambda item: (_SOURCE_PRIORITY[item[1].source], item[0]))
        rows.append(ComparisonRow(result, best, _discrepancy(result.value_MHz, best.value_MHz)))
    return rows
