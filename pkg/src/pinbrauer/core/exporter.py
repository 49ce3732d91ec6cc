import json
from typing import Any, Dict, List, Mapping, Optional, Sequence

from pinbrauer.core.characters import MultiplicityMap
from pinbrauer.core.linalg import SparseLinearMap
from pinbrauer.core.ops import tensor_key_label


def to_json(data: Any) -> str:
    """
    Exports a report to a JSON string.

    Args:
        data: Any JSON-compatible structure (dicts, lists, strings, numbers).

    Returns:
        A JSON formatted string.
    """
    return json.dumps(data, indent=2)


def to_table(rows: Sequence[Mapping[str, Any]], columns: Optional[Sequence[str]] = None) -> str:
    """Renders a list of flat dicts as an aligned plain-text table."""
    if not rows:
        return "(empty)"
    columns = list(columns or rows[0].keys())

    def cell(v: Any) -> str:
        if isinstance(v, bool):
            return "yes" if v else "no"
        if isinstance(v, (list, tuple)):
            return ",".join(str(x) for x in v)
        return str(v)

    cells = [[cell(r.get(c, "")) for c in columns] for r in rows]
    widths = [max(len(c), *(len(line[i]) for line in cells)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for line in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(line, widths)))
    return "\n".join(lines)


def matrix_record(m: SparseLinearMap, labels: bool = True) -> Dict[str, Any]:
    """Coordinate-list export of an exact matrix; values in the textual a+b*sqrt2 format."""
    record: Dict[str, Any] = {
        "shape": [len(m.codomain), len(m.domain)],
        "nnz": m.nnz(),
        "entries": [list(e) for e in m.to_coo()],
    }
    if labels:
        record["rows"] = [tensor_key_label(k) for k in m.codomain]
        record["columns"] = [tensor_key_label(k) for k in m.domain]
    return record


def multiplicity_records(mm: MultiplicityMap) -> List[Dict[str, Any]]:
    """Sorted (label, multiplicity) rows of a decomposition."""
    return [
        {"label": label.to_dict(), "name": str(label), "multiplicity": mult}
        for label, mult in sorted(mm.items(), key=lambda item: item[0].sort_key())
    ]


def counts_records(counts: Mapping[tuple, int], key: str = "partition") -> List[Dict[str, Any]]:
    return [{key: list(p), "count": c} for p, c in sorted(counts.items())]
