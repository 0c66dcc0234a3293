"""Quantum numbers of Dirac-Coulomb bound states and their spectroscopic labels."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError

ORBITAL_LETTERS = "spdfghik"

_LABEL_RE = re.compile(r"^(\d+)([a-z])_\{(\d+)/2\}$")


@dataclass(frozen=True)
class QuantumState:
    """A bound state (n, kappa), optionally tagged with the total spin S.

    Use :func:`make_state` rather than constructing directly; the derived
    fields (j, l_a, l_b) are filled in there.
    """

    n: int
    kappa: int
    j: Fraction
    l_a: int
    l_b: int
    S: Optional[int] = None

    @property
    def n_radial(self) -> int:
        """Number of radial nodes n' = n - |kappa|."""
        return self.n - abs(self.kappa)

    @property
    def label(self) -> str:
        return render_label(self)

    def with_spin(self, S: Optional[int]) -> "QuantumState":
        return make_state(self.n, self.kappa, S)


def make_state(n: int, kappa: int, S: Optional[int] = None) -> QuantumState:
    if not isinstance(n, int) or not isinstance(kappa, int):
        raise DomainError(f"n and kappa must be integers, got n={n!r}, kappa={kappa!r}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if kappa == 0:
        raise DomainError("kappa must be nonzero")
    if abs(kappa) > n:
        raise DomainError(f"|kappa| = {abs(kappa)} exceeds n = {n}")
    if kappa == n:
        # would need l_a = n; the series has no node-free kappa > 0 solution
        raise DomainError(f"kappa = +{n} is not a bound state for n = {n} (l_a would equal n)")
    if S is not None and S not in (0, 1):
        raise DomainError(f"S must be 0 or 1, got {S!r}")
    j = Fraction(2 * abs(kappa) - 1, 2)
    if kappa > 0:
        l_a, l_b = kappa, kappa - 1
    else:
        l_a, l_b = -kappa - 1, -kappa
    return QuantumState(n=n, kappa=kappa, j=j, l_a=l_a, l_b=l_b, S=S)


def render_label(state: QuantumState) -> str:
    if state.l_a >= len(ORBITAL_LETTERS):
        raise DomainError(f"no spectroscopic letter for l = {state.l_a}")
    return f"{state.n}{ORBITAL_LETTERS[state.l_a]}_{{{int(2 * state.j)}/2}}"


def parse_label(text: str, S: Optional[int] = None) -> QuantumState:
    """Parse labels like ``2s_{1/2}`` or ``3d_{5/2}``."""
    m = _LABEL_RE.match(text.strip())
    if m is None:
        raise DomainError(f"cannot parse state label {text!r}")
    n = int(m.group(1))
    letter = m.group(2)
    two_j = int(m.group(3))
    if letter not in ORBITAL_LETTERS:
        raise DomainError(f"unknown orbital letter {letter!r} in {text!r}")
    l = ORBITAL_LETTERS.index(letter)
    if two_j == 2 * l + 1:
        kappa = -(l + 1)
    elif two_j == 2 * l - 1:
        kappa = l
    else:
        raise DomainError(f"j = {two_j}/2 is inconsistent with l = {l} in {text!r}")
    if l >= n:
        raise DomainError(f"l = {l} requires n > {l}, got n = {n}")
    return make_state(n, kappa, S)
