"""Abstraction levels and per-level weighting.

Concepts are compared at seven levels of abstraction, ordered from the
most concrete (parts) to the most abstract (actions). Aggregate scores
weight the levels; two named presets are provided and arbitrary
non-negative weights are accepted.
"""

from __future__ import annotations

from enum import IntEnum
from typing import Iterable, Mapping, Sequence

from .errors import UnknownLevel, ZeroWeightSum

__all__ = [
    "AbstractionLevel",
    "LEVELS",
    "LevelWeights",
    "default_weights",
    "uniform_weights",
    "resolve_weights",
    "WEIGHT_PRESETS",
]


class AbstractionLevel(IntEnum):
    """One of the seven strata at which concepts are described."""

    PART = 1
    ORGAN = 2
    EFFECT = 3
    PHENOMENON = 4
    INPUT = 5
    STATE_CHANGE = 6
    ACTION = 7

    @property
    def column(self) -> str:
        """Identifier used in file headers and JSON keys."""
        return _COLUMNS[self]

    @classmethod
    def from_column(cls, name: str) -> "AbstractionLevel":
        key = name.strip().lower()
        for level, col in _COLUMNS.items():
            if col == key:
                return level
        raise UnknownLevel(f"unknown abstraction level {name!r}")

    @classmethod
    def coerce(cls, value: "AbstractionLevel | int | str") -> "AbstractionLevel":
        if isinstance(value, AbstractionLevel):
            return value
        if isinstance(value, int):
            try:
                return cls(value)
            except ValueError:
                raise UnknownLevel(f"abstraction level index {value} outside 1..7") from None
        return cls.from_column(str(value))


_COLUMNS = {
    AbstractionLevel.PART: "part",
    AbstractionLevel.ORGAN: "organ",
    AbstractionLevel.EFFECT: "effect",
    AbstractionLevel.PHENOMENON: "phenomenon",
    AbstractionLevel.INPUT: "input",
    AbstractionLevel.STATE_CHANGE: "state_change",
    AbstractionLevel.ACTION: "action",
}

LEVELS: tuple[AbstractionLevel, ...] = tuple(AbstractionLevel)


class LevelWeights:
    """Non-negative weight per abstraction level; the sum must be positive.

    Scores aggregated with these weights are ratios, so scaling all
    weights by a positive constant leaves every result unchanged.
    """

    def __init__(self, weights: Mapping[AbstractionLevel | int | str, float]):
        table: dict[AbstractionLevel, float] = {lvl: 0.0 for lvl in LEVELS}
        for key, value in weights.items():
            level = AbstractionLevel.coerce(key)
            w = float(value)
            if w < 0:
                raise ValueError(f"negative weight {w} for level {level.column}")
            table[level] = w
        if sum(table.values()) <= 0:
            raise ZeroWeightSum("level weights must sum to a positive value")
        self._table = table

    def __getitem__(self, level: AbstractionLevel | int | str) -> float:
        return self._table[AbstractionLevel.coerce(level)]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LevelWeights) and self._table == other._table

    def __repr__(self) -> str:
        pairs = ", ".join(f"{lvl.column}={w:g}" for lvl, w in self._table.items())
        return f"LevelWeights({pairs})"

    def as_dict(self) -> dict[AbstractionLevel, float]:
        return dict(self._table)

    def vector(self, levels: Iterable[AbstractionLevel] = LEVELS) -> list[float]:
        return [self._table[lvl] for lvl in levels]


def default_weights() -> LevelWeights:
    """Weights ascending with abstraction: parts weigh 1, actions weigh 7."""
    return LevelWeights({lvl: float(lvl.value) for lvl in LEVELS})


def uniform_weights() -> LevelWeights:
    """Every level weighs 1."""
    return LevelWeights({lvl: 1.0 for lvl in LEVELS})


WEIGHT_PRESETS = {
    "paper-default": default_weights,
    "uniform": uniform_weights,
}


def resolve_weights(spec: "str | LevelWeights | Mapping | Sequence[float]") -> LevelWeights:
    """Turn a preset name, mapping, or 7-value sequence into LevelWeights."""
    if isinstance(spec, LevelWeights):
        return spec
    if isinstance(spec, str):
        try:
            return WEIGHT_PRESETS[spec]()
        except KeyError:
            raise ValueError(
                f"unknown weight preset {spec!r}; expected one of {sorted(WEIGHT_PRESETS)}"
            ) from None
    if isinstance(spec, Mapping):
        return LevelWeights(spec)
    values = list(spec)
    if len(values) != len(LEVELS):
        raise ValueError(f"expected {len(LEVELS)} weights, got {len(values)}")
    return LevelWeights(dict(zip(LEVELS, values)))
