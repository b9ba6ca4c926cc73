"""Concept spaces: a named set of concepts, each described by one or more
seven-construct instances.

Constructors are deliberately permissive so that partially entered data can
be stored and inspected; :func:`validate_space` reports every violation
instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .levels import LEVELS, AbstractionLevel

__all__ = [
    "SapphireInstance",
    "Concept",
    "ConceptSpace",
    "Violation",
    "ValidationReport",
    "validate_space",
]


@dataclass(frozen=True)
class SapphireInstance:
    """One causal description of a concept: a text per abstraction level.

    Texts may be empty; missing slots are reported by validation rather
    than rejected here.
    """

    instance_id: int
    constructs: Mapping[AbstractionLevel, str]

    @classmethod
    def of(cls, instance_id: int, **texts: str) -> "SapphireInstance":
        """Build an instance from keyword texts (``part=...``), filling
        absent levels with empty strings."""
        table = {lvl: "" for lvl in LEVELS}
        for key, value in texts.items():
            table[AbstractionLevel.from_column(key)] = value
        return cls(instance_id, table)

    def text(self, level: AbstractionLevel | int | str) -> str:
        return self.constructs.get(AbstractionLevel.coerce(level), "")


@dataclass(frozen=True)
class Concept:
    """A design concept: an id, a display name, and ordered instances."""

    concept_id: int
    name: str
    instances: tuple[SapphireInstance, ...]

    def __post_init__(self):
        object.__setattr__(self, "instances", tuple(self.instances))


@dataclass(frozen=True)
class ConceptSpace:
    """The set of alternative concepts produced for one design problem."""

    space_id: str
    problem: str
    concepts: tuple[Concept, ...]

    def __post_init__(self):
        object.__setattr__(self, "concepts", tuple(self.concepts))

    def __len__(self) -> int:
        return len(self.concepts)

    @property
    def concept_ids(self) -> tuple[int, ...]:
        return tuple(c.concept_id for c in self.concepts)

    def concept(self, concept_id: int) -> Concept:
        for c in self.concepts:
            if c.concept_id == concept_id:
                return c
        raise KeyError(concept_id)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    severity: str = "error"  # "error" | "warning"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """True when no error-severity violations are present."""
        return not any(v.severity == "error" for v in self.violations)

    @property
    def empty(self) -> bool:
        return not self.violations

    def __iter__(self):
        return iter(self.violations)

    def add(self, code: str, message: str, severity: str = "error") -> None:
        self.violations.append(Violation(code, message, severity))


def validate_space(space: ConceptSpace) -> ValidationReport:
    """Check a concept space against its structural rules.

    Never raises: every problem found becomes an entry in the report, and a
    well-formed space yields an empty report. Empty construct texts are
    flagged as warnings only, since partially specified concepts are legal
    during data entry.
    """
    report = ValidationReport()
    if not space.concepts:
        report.add("empty-space", "concept space has no concepts")
        return report

    seen_concepts: set[int] = set()
    for concept in space.concepts:
        cid = concept.concept_id
        if cid in seen_concepts:
            report.add("duplicate-concept-id", f"concept id {cid} appears more than once")
        seen_concepts.add(cid)

        if not concept.instances:
            report.add("no-instances", f"concept {cid} has no instances")
            continue

        ids = [inst.instance_id for inst in concept.instances]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            report.add(
                "duplicate-instance-id",
                f"concept {cid} repeats instance id(s) {dupes}",
            )
        elif sorted(ids) != list(range(1, len(ids) + 1)):
            report.add(
                "noncontiguous-instance-ids",
                f"concept {cid} instance ids {sorted(ids)} are not 1..{len(ids)}",
            )

        for inst in concept.instances:
            for level in LEVELS:
                if level not in inst.constructs:
                    report.add(
                        "missing-construct",
                        f"concept {cid} instance {inst.instance_id} lacks a"
                        f" {level.column} slot",
                    )
                elif not inst.constructs[level].strip():
                    report.add(
                        "empty-construct",
                        f"concept {cid} instance {inst.instance_id} has empty"
                        f" {level.column} text",
                        severity="warning",
                    )
    return report
