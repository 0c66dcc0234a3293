"""Physical constants, Bethe-logarithm tables and reference values.

Everything here is loaded from small UTF-8 text files: ``key = value`` for
constants and run options, comma-separated rows for the tables. ``#`` starts
a comment anywhere on a line. The shipped defaults live in ``effdirac/data``.
"""

from __future__ import annotations

import csv
import enum
import io
import math
import os
from dataclasses import dataclass, fields
from importlib import resources
from types import MappingProxyType
from typing import Iterator, Mapping, TextIO, Union

from .errors import ConfigError, MissingBetheEntry

Source = Union[str, "os.PathLike[str]", TextIO]

CONSTANT_KEYS = ("alpha", "mc2_eV", "g_p", "kappa_p", "mass_ratio", "eV_to_MHz")
SETTING_KEYS = ("user_delta_hyperfine", "enable_binding_correction")

# g_p = 2 (1 + kappa_p) must hold to this relative tolerance
G_P_RTOL = 1e-5


@dataclass(frozen=True)
class PhysicalConstants:
    alpha: float
    mc2_eV: float
    g_p: float
    kappa_p: float
    mass_ratio: float
    eV_to_MHz: float

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not (math.isfinite(value) and value > 0):
                raise ConfigError(f"{f.name} must be finite and positive, got {value!r}")
        if not self.alpha < 0.01:
            raise ConfigError(f"alpha must be below 0.01, got {self.alpha!r}")
        expected = 2.0 * (1.0 + self.kappa_p)
        if abs(self.g_p - expected) > G_P_RTOL * expected:
            raise ConfigError(
                f"g_p={self.g_p!r} inconsistent with kappa_p={self.kappa_p!r} "
                f"(2(1+kappa_p) = {expected!r})"
            )

    @property
    def mc2_MHz(self) -> float:
        """Electron rest energy expressed as a frequency."""
        return self.mc2_eV * self.eV_to_MHz


@dataclass(frozen=True)
class Settings:
    """Run options read from the same file as the constants."""

    user_delta_hyperfine: float = 0.0
    enable_binding_correction: bool = False


def _open_text(source: Source) -> TextIO:
    if isinstance(source, (str, os.PathLike)):
        return open(source, encoding="utf-8")
    return source


def _data_text(name: str) -> TextIO:
    return io.StringIO(resources.files("effdirac.data").joinpath(name).read_text("utf-8"))


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_key_values(source: Source) -> dict[str, str]:
    """Read ``key = value`` lines into a dict of raw strings."""
    stream = _open_text(source)
    try:
        out: dict[str, str] = {}
        for lineno, raw in enumerate(stream, start=1):
            line = _strip_comment(raw)
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if not key:
                raise ConfigError(f"line {lineno}: empty key")
            if key in out:
                raise ConfigError(f"duplicate key {key!r}")
            out[key] = value
        return out
    finally:
        if stream is not source:
            stream.close()


def _parse_positive(key: str, text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {text!r} as a number") from None
    if not math.isfinite(value) or value <= 0:
        raise ConfigError(f"{key}: expected a finite positive number, got {text!r}")
    return value


def _check_keys(raw: Mapping[str, str]) -> None:
    for key in raw:
        if key not in CONSTANT_KEYS and key not in SETTING_KEYS:
            raise ConfigError(f"unknown config key {key!r}")


def _constants_from(raw: Mapping[str, str], base: Mapping[str, float]) -> PhysicalConstants:
    values = dict(base)
    for key in CONSTANT_KEYS:
        if key in raw:
            values[key] = _parse_positive(key, raw[key])
    # overriding only one of g_p / kappa_p carries the other along
    if "g_p" in raw and "kappa_p" not in raw:
        values["kappa_p"] = values["g_p"] / 2.0 - 1.0
    elif "kappa_p" in raw and "g_p" not in raw:
        values["g_p"] = 2.0 * (1.0 + values["kappa_p"])
    return PhysicalConstants(**values)


def _default_raw() -> dict[str, str]:
    return parse_key_values(_data_text("constants.cfg"))


def load_constants(config: Source | None = None) -> PhysicalConstants:
    """Return the shipped constants, with any keys in ``config`` overriding them."""
    defaults = _default_raw()
    base = {key: _parse_positive(key, defaults[key]) for key in CONSTANT_KEYS}
    if config is None:
        return PhysicalConstants(**base)
    raw = parse_key_values(config)
    _check_keys(raw)
    return _constants_from(raw, base)


def _parse_bool(key: str, text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ConfigError(f"{key}: cannot parse {text!r} as a boolean")


def load_settings(config: Source | None = None) -> Settings:
    raw = _default_raw()
    if config is not None:
        override = parse_key_values(config)
        _check_keys(override)
        raw.update(override)
    delta_text = raw.get("user_delta_hyperfine", "0")
    try:
        delta = float(delta_text)
    except ValueError:
        raise ConfigError(f"user_delta_hyperfine: cannot parse {delta_text!r}") from None
    if not math.isfinite(delta):
        raise ConfigError("user_delta_hyperfine must be finite")
    binding = _parse_bool(
        "enable_binding_correction", raw.get("enable_binding_correction", "false")
    )
    return Settings(user_delta_hyperfine=delta, enable_binding_correction=binding)


def load_config(config: Source | None = None) -> tuple[PhysicalConstants, Settings]:
    """Constants and settings from one file (read once, so streams work)."""
    if config is None:
        return load_constants(), load_settings()
    text = _open_text(config)
    try:
        content = text.read()
    finally:
        if text is not config:
            text.close()
    return load_constants(io.StringIO(content)), load_settings(io.StringIO(content))


def _csv_rows(source: Source) -> Iterator[tuple[int, list[str]]]:
    """Yield (line number, fields) for non-blank, non-comment rows."""
    stream = _open_text(source)
    try:
        for lineno, raw in enumerate(stream, start=1):
            line = _strip_comment(raw)
            if not line:
                continue
            yield lineno, [cell.strip() for cell in next(csv.reader([line]))]
    finally:
        if stream is not source:
            stream.close()


class BetheLogTable(Mapping[tuple[int, int], float]):
    """Read-only map from (n, l) to the tabulated Bethe logarithm."""

    def __init__(self, entries: Mapping[tuple[int, int], float]):
        self._entries = MappingProxyType(dict(entries))

    def __getitem__(self, key: tuple[int, int]) -> float:
        return self._entries[key]

    def __iter__(self):
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __repr__(self) -> str:
        return f"BetheLogTable({len(self)} entries)"

    def get(self, n: int, l: int, default=None):  # type: ignore[override]
        return self._entries.get((n, l), default)

    def lookup(self, n: int, l: int) -> float:
        try:
            return self._entries[(n, l)]
        except KeyError:
            raise MissingBetheEntry(n, l) from None


def load_bethe_table(source: Source | None = None) -> BetheLogTable:
    """Load ``n,l,L`` rows. With no source, the calibrated default table."""
    if source is None:
        source = _data_text("bethe_log.csv")
    entries: dict[tuple[int, int], float] = {}
    for lineno, row in _csv_rows(source):
        if row and row[0] == "n":
            continue
        if len(row) != 3:
            raise ConfigError(f"line {lineno}: expected n,l,L, got {row!r}")
        try:
            n, l = int(row[0]), int(row[1])
            value = float(row[2])
        except ValueError:
            raise ConfigError(f"line {lineno}: non-numeric entry {row!r}") from None
        if not math.isfinite(value):
            raise ConfigError(f"line {lineno}: non-finite Bethe logarithm")
        if n < 1 or not 0 <= l < n:
            raise ConfigError(f"line {lineno}: invalid (n, l) = ({n}, {l})")
        if (n, l) in entries:
            raise ConfigError(f"line {lineno}: duplicate entry for (n={n}, l={l})")
        entries[(n, l)] = value
    return BetheLogTable(entries)


def textbook_bethe_table() -> BetheLogTable:
    """Uncalibrated -ln k0 values, for sensitivity runs."""
    return load_bethe_table(_data_text("bethe_log_textbook.csv"))


class Quantity(str, enum.Enum):
    LAMB_SHIFT = "lamb_shift"
    HYPERFINE_SPLITTING = "hyperfine_splitting"
    LEVEL_ENERGY = "level_energy"


class SourceTag(str, enum.Enum):
    PAPER = "paper"
    QED_REFERENCE = "qed_reference"
    EXPERIMENT = "experiment"


@dataclass(frozen=True)
class ReferenceRecord:
    label: str
    Z: int
    n: int
    quantity: Quantity
    value_MHz: float
    source: SourceTag

    def __post_init__(self):
        if not math.isfinite(self.value_MHz):
            raise ConfigError(f"{self.label}: value_MHz must be finite")

    @property
    def is_increment(self) -> bool:
        """True for records holding a higher-order increment rather than a full splitting."""
        return self.label.endswith("_increment")


def load_reference_records(source: Source | None = None) -> list[ReferenceRecord]:
    if source is None:
        source = _data_text("reference.csv")
    records = []
    for lineno, row in _csv_rows(source):
        if row and row[0] == "label":
            continue
        if len(row) != 6:
            raise ConfigError(f"line {lineno}: expected 6 columns, got {len(row)}")
        label, z_text, n_text, quantity, value_text, source_tag = row
        try:
            tag = SourceTag(source_tag)
        except ValueError:
            raise ConfigError(f"line {lineno}: unknown source tag {source_tag!r}") from None
        try:
            qty = Quantity(quantity)
        except ValueError:
            raise ConfigError(f"line {lineno}: unknown quantity {quantity!r}") from None
        try:
            Z, n, value = int(z_text), int(n_text), float(value_text)
        except ValueError:
            raise ConfigError(f"line {lineno}: non-numeric field in {row!r}") from None
        records.append(ReferenceRecord(label, Z, n, qty, value, tag))
    return records
