"""File formats: concept-space tables, genealogy-tree files, and results.

The tabular space format is one row per instance with the exact header
``concept_id,concept_name,instance_id,part,organ,effect,phenomenon,input,
state_change,action``. Exports are deterministic byte-for-byte: fixed key
order, two-space JSON indent, full-precision floats.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Mapping

from .analysis import Dendrogram, level_boxplot
from .errors import DuplicateInstance, ParseError, SchemaError
from .levels import LEVELS, AbstractionLevel, LevelWeights
from .rqid import AssessmentResult
from .spaces import Concept, ConceptSpace, SapphireInstance
from .distance import DistanceMatrix
from .trees import GenealogyTree, IdeaNode, TreeLevel

__all__ = [
    "SPACE_CSV_HEADER",
    "import_space",
    "load_space_csv",
    "load_space_json",
    "space_to_rows",
    "export_space",
    "load_tree_json",
    "result_to_dict",
    "result_from_dict",
    "export_results",
    "load_results",
]

SPACE_CSV_HEADER = [
    "concept_id",
    "concept_name",
    "instance_id",
    "part",
    "organ",
    "effect",
    "phenomenon",
    "input",
    "state_change",
    "action",
]


def _rows_to_space(space_id: str, problem: str, rows: list[dict[str, Any]]) -> ConceptSpace:
    seen: set[tuple[int, int]] = set()
    by_concept: dict[int, tuple[str, list[SapphireInstance]]] = {}
    for idx, row in enumerate(rows, start=1):
        try:
            cid = int(row["concept_id"])
            iid = int(row["instance_id"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"row {idx}: bad concept_id/instance_id: {exc}") from exc
        if (cid, iid) in seen:
            raise DuplicateInstance(
                f"row {idx}: concept {cid} instance {iid} appears twice"
            )
        seen.add((cid, iid))
        name = str(row.get("concept_name", ""))
        constructs = {
            lvl: str(row.get(lvl.column, "")) for lvl in LEVELS if lvl.column in row
        }
        if cid not in by_concept:
            by_concept[cid] = (name, [])
        by_concept[cid][1].append(SapphireInstance(iid, constructs))
    concepts = tuple(
        Concept(cid, name, tuple(sorted(instances, key=lambda i: i.instance_id)))
        for cid, (name, instances) in by_concept.items()
    )
    return ConceptSpace(space_id, problem, concepts)


def load_space_csv(text: str, space_id: str = "", problem: str = "") -> ConceptSpace:
    """Parse the tabular format from a string.

    The header must match exactly; the first out-of-place column is named
    in the error. Quoted fields may contain commas and newlines.
    """
    stream = io.StringIO(text)
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty file", line=1) from None
    header = [h.strip() for h in header]
    if header != SPACE_CSV_HEADER:
        for pos, expected in enumerate(SPACE_CSV_HEADER):
            got = header[pos] if pos < len(header) else "<missing>"
            if got != expected:
                raise SchemaError(
                    f"column {pos + 1}: expected {expected!r}, got {got!r}"
                )
        raise SchemaError(f"unexpected extra columns {header[len(SPACE_CSV_HEADER):]}")
    rows = []
    for row in reader:
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(SPACE_CSV_HEADER):
            raise ParseError(
                f"expected {len(SPACE_CSV_HEADER)} fields, got {len(row)}",
                line=reader.line_num,
            )
        rows.append(dict(zip(SPACE_CSV_HEADER, row)))
    return _rows_to_space(space_id, problem, rows)


def load_space_json(text: str) -> ConceptSpace:
    """Parse the document format: space metadata plus nested concepts."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    if not isinstance(doc, dict) or "concepts" not in doc:
        raise SchemaError("space document must be an object with a 'concepts' list")
    concepts = []
    seen: set[tuple[int, int]] = set()
    for c in doc["concepts"]:
        try:
            cid = int(c["concept_id"])
        except (KeyError, TypeError, ValueError):
            raise SchemaError("every concept needs an integer concept_id") from None
        instances = []
        for inst in c.get("instances", []):
            iid = int(inst.get("instance_id", 0))
            if (cid, iid) in seen:
                raise DuplicateInstance(f"concept {cid} instance {iid} appears twice")
            seen.add((cid, iid))
            constructs = {
                AbstractionLevel.from_column(k): str(v)
                for k, v in inst.get("constructs", {}).items()
            }
            instances.append(SapphireInstance(iid, constructs))
        instances.sort(key=lambda i: i.instance_id)
        concepts.append(Concept(cid, str(c.get("name", "")), tuple(instances)))
    return ConceptSpace(
        str(doc.get("space_id", "")), str(doc.get("problem", "")), tuple(concepts)
    )


def import_space(path: str, fmt: str | None = None) -> ConceptSpace:
    """Load a concept space from a CSV or JSON file.

    The format is inferred from the extension unless given. Instances are
    grouped by concept and ordered by instance id; run
    :func:`variant.spaces.validate_space` on the result for the full
    violation report.
    """
    if fmt is None:
        fmt = "json" if path.lower().endswith(".json") else "csv"
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "csv":
        return load_space_csv(text, space_id=_stem(path))
    if fmt == "json":
        return load_space_json(text)
    raise ValueError(f"unknown space format {fmt!r}")


def _stem(path: str) -> str:
    base = path.replace("\\", "/").rsplit("/", 1)[-1]
    return base.rsplit(".", 1)[0]


def space_to_rows(space: ConceptSpace) -> list[dict[str, str]]:
    rows = []
    for concept in space.concepts:
        for inst in concept.instances:
            row = {
                "concept_id": str(concept.concept_id),
                "concept_name": concept.name,
                "instance_id": str(inst.instance_id),
            }
            for lvl in LEVELS:
                row[lvl.column] = inst.text(lvl)
            rows.append(row)
    return rows


def space_to_dict(space: ConceptSpace) -> dict:
    return {
        "space_id": space.space_id,
        "problem": space.problem,
        "concepts": [
            {
                "concept_id": c.concept_id,
                "name": c.name,
                "instances": [
                    {
                        "instance_id": inst.instance_id,
                        "constructs": {
                            lvl.column: inst.text(lvl) for lvl in LEVELS
                        },
                    }
                    for inst in c.instances
                ],
            }
            for c in space.concepts
        ],
    }


def export_space(space: ConceptSpace, path: str, fmt: str | None = None) -> None:
    """Write a space back out; re-importing yields a structurally equal space."""
    if fmt is None:
        fmt = "json" if path.lower().endswith(".json") else "csv"
    if fmt == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=SPACE_CSV_HEADER)
            writer.writeheader()
            writer.writerows(space_to_rows(space))
    elif fmt == "json":
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(space_to_dict(space), fh, indent=2, ensure_ascii=False)
            fh.write("\n")
    else:
        raise ValueError(f"unknown space format {fmt!r}")


def load_tree_json(path: str) -> GenealogyTree:
    """Load a single-function genealogy tree.

    Schema: ``{"levels": [{"alpha", "weight"}...], "nodes": [{"level",
    "label", "parent", "count"}...], "function_weights": [...]}``. The flat
    node list describes one function's tree; function_weights must then be
    a single value.
    """
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(
                f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno
            ) from exc
    try:
        levels = [TreeLevel(int(l["alpha"]), float(l["weight"])) for l in doc["levels"]]
        nodes = [
            IdeaNode(
                level=int(n["level"]),
                label=str(n["label"]),
                count=int(n["count"]),
                parent=None if n.get("parent") is None else str(n["parent"]),
            )
            for n in doc["nodes"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad tree file: {exc}") from exc
    fw = doc.get("function_weights", [1.0])
    if len(fw) != 1:
        raise SchemaError(
            "a flat node list describes one function; function_weights must have one entry"
        )
    return GenealogyTree(tuple(levels), (tuple(nodes),), (float(fw[0]),))


# ---------------------------------------------------------------------------
# results


def _matrix_to_list(matrix: DistanceMatrix) -> list[list[float]]:
    return [[float(v) for v in row] for row in matrix.values]


def _boxplot_block(result: AssessmentResult) -> list[dict]:
    stats = level_boxplot(result.per_concept_per_level, result.concept_ids)
    return [
        {
            "level": s.level.column,
            "q1": s.q1,
            "median": s.median,
            "q3": s.q3,
            "whisker_low": s.whisker_low,
            "whisker_high": s.whisker_high,
            "mean": s.mean,
            "outliers": [
                {"concept_id": cid, "value": v} for cid, v in s.outliers
            ],
        }
        for s in stats
    ]


def result_to_dict(
    result: AssessmentResult,
    config: Mapping[str, Any],
    clusters: Mapping[str, Any] | None = None,
    dgram: Dendrogram | None = None,
) -> dict:
    """Assemble the result document with a fixed key order."""
    doc: dict[str, Any] = {
        "overall": result.overall,
        "per_level": {lvl.column: result.per_level[lvl] for lvl in LEVELS},
        "per_concept": [
            {"concept_id": cid, "name": name, "score": score}
            for cid, name, score in zip(
                result.concept_ids, result.concept_names, result.per_concept
            )
        ],
        "per_concept_per_level": [
            {
                "concept_id": cid,
                "scores": {
                    lvl.column: result.per_concept_per_level[lvl][i] for lvl in LEVELS
                },
            }
            for i, cid in enumerate(result.concept_ids)
        ],
        "weighted_matrix": _matrix_to_list(result.weighted_matrix),
        "config": dict(config),
        "plots": {"boxplot": _boxplot_block(result)},
    }
    if clusters is not None:
        doc["clusters"] = dict(clusters)
    if dgram is not None:
        doc["dendrogram"] = {
            "leaves": list(dgram.leaves),
            "merges": [[a, b, h] for a, b, h in dgram.merges],
        }
    return doc


def result_from_dict(doc: Mapping[str, Any]) -> AssessmentResult:
    """Rebuild an in-memory result from its document form."""
    per_concept = doc["per_concept"]
    concept_ids = tuple(int(c["concept_id"]) for c in per_concept)
    names = tuple(str(c.get("name", "")) for c in per_concept)
    per_concept_per_level = {
        lvl: tuple(
            float(entry["scores"][lvl.column]) for entry in doc["per_concept_per_level"]
        )
        for lvl in LEVELS
    }
    config = doc.get("config", {})
    weights = config.get("weights") or {lvl.column: 1.0 for lvl in LEVELS}
    return AssessmentResult(
        space_id=str(config.get("space_id", "")),
        concept_ids=concept_ids,
        concept_names=names,
        per_concept_per_level=per_concept_per_level,
        per_level={
            lvl: float(doc["per_level"][lvl.column]) for lvl in LEVELS
        },
        per_concept=tuple(float(c["score"]) for c in per_concept),
        overall=float(doc["overall"]),
        weighted_matrix=DistanceMatrix(
            "weighted", [[float(v) for v in row] for row in doc["weighted_matrix"]]
        ),
        weights_used=LevelWeights(
            {AbstractionLevel.from_column(k): float(v) for k, v in weights.items()}
        ),
        provider_id=str(config.get("provider_id", config.get("provider", ""))),
    )


def dump_result_json(doc: Mapping[str, Any]) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _result_csv(doc: Mapping[str, Any]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["section", "key", "subkey", "value"])
    writer.writerow(["overall", "", "", repr(float(doc["overall"]))])
    for col, v in doc["per_level"].items():
        writer.writerow(["per_level", col, "", repr(float(v))])
    for entry in doc["per_concept"]:
        writer.writerow(
            ["per_concept", entry["concept_id"], entry["name"], repr(float(entry["score"]))]
        )
    for entry in doc["per_concept_per_level"]:
        for col, v in entry["scores"].items():
            writer.writerow(
                ["per_concept_per_level", entry["concept_id"], col, repr(float(v))]
            )
    matrix = doc["weighted_matrix"]
    for i, row in enumerate(matrix):
        for j, v in enumerate(row):
            writer.writerow(["weighted_matrix", i, j, repr(float(v))])
    if "clusters" in doc:
        for i, label in enumerate(doc["clusters"].get("labels", [])):
            writer.writerow(["cluster_label", i, "", label])
    return out.getvalue()


def export_results(doc: Mapping[str, Any], path: str, fmt: str | None = None) -> None:
    """Write a result document to disk, deterministically.

    JSON keeps the full document; CSV flattens it into
    (section, key, subkey, value) rows for spreadsheet use.
    """
    if fmt is None:
        fmt = "csv" if path.lower().endswith(".csv") else "json"
    if fmt == "json":
        payload = dump_result_json(doc)
    elif fmt == "csv":
        payload = _result_csv(doc)
    else:
        raise ValueError(f"unknown result format {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(payload)


def load_results(path: str) -> dict:
    """Read a result document back (JSON form only)."""
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(
                f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno
            ) from exc
