"""JSON formats for graphs, codes, column sets, certificates, reports and results."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .bch import ColumnSet, StrengthReport
from .constructions import CliqueCertificate, ExplicitGraphCode, LinearGraphCode, doubled_clique_certificate
from .errors import DomainError
from .families import (
    AllCliques,
    CliquesUpTo,
    Explicit,
    ForbiddenFamily,
    IsoCopiesOf,
    Matching,
    Star,
)
from .gf2 import BitMatrix, from_hex, to_hex
from .graph import LabeledGraph, num_edges
from .search import CliqueWitness, ExactResult
from .verification import EXHAUSTIVE, Sampled, VerificationReport


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def write_json(obj: Any, path: str | Path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: invalid JSON ({exc})") from exc


def _int(obj: dict, key: str) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise DomainError(f"field {key!r} must be an integer")
    return v


# graphs

def graph_to_json(g: LabeledGraph) -> dict:
    return {"n": g.n, "edges": [[i, j] for i, j in g.edges()]}


def graph_from_json(obj: Any) -> LabeledGraph:
    if not isinstance(obj, dict):
        raise DomainError("graph must be a JSON object")
    n = _int(obj, "n")
    if n < 1:
        raise DomainError("graph needs n >= 1")
    edges = obj.get("edges")
    if not isinstance(edges, list):
        raise DomainError("graph field 'edges' must be a list")
    seen = set()
    for e in edges:
        if (not isinstance(e, list) or len(e) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in e)):
            raise DomainError(f"edge {e!r} is not a pair of integers")
        i, j = e
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise DomainError(f"edge {e!r} out of range for n={n}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise DomainError(f"duplicate edge {list(key)}")
        seen.add(key)
    return LabeledGraph.from_edges(n, seen)


def graphs_from_json(obj: Any) -> list[LabeledGraph]:
    """A single graph object, a list of them, or {"graphs": [...]} / {"copies": [...]}."""
    if isinstance(obj, dict):
        for key in ("graphs", "copies"):
            if key in obj:
                obj = obj[key]
                break
    if isinstance(obj, dict):
        return [graph_from_json(obj)]
    if not isinstance(obj, list):
        raise DomainError("expected a graph, a list of graphs, or {'graphs': [...]}")
    return [graph_from_json(g) for g in obj]


# codes

def code_to_json(code: LinearGraphCode | ExplicitGraphCode) -> dict:
    if isinstance(code, LinearGraphCode):
        N = code.num_edges
        return {
            "n": code.n,
            "type": "linear",
            "provenance": code.provenance,
            "parity_rows": [to_hex(r, N) for r in code.parity.rows],
        }
    return {"n": code.n, "type": "explicit", "members": [graph_to_json(g) for g in code.members]}


def code_from_json(obj: Any) -> LinearGraphCode | ExplicitGraphCode:
    if not isinstance(obj, dict):
        raise DomainError("code must be a JSON object")
    kind = obj.get("type")
    if kind == "linear":
        n = _int(obj, "n")
        N = num_edges(n)
        rows = obj.get("parity_rows")
        if not isinstance(rows, list) or not all(isinstance(r, str) for r in rows):
            raise DomainError("'parity_rows' must be a list of hex strings")
        parity = BitMatrix(N, tuple(from_hex(r, N) for r in rows))
        return LinearGraphCode(n, parity, dict(obj.get("provenance") or {}))
    if kind == "explicit":
        members = [graph_from_json(g) for g in obj.get("members", [])]
        n = obj.get("n", members[0].n if members else None)
        if not isinstance(n, int):
            raise DomainError("explicit code needs 'n'")
        return ExplicitGraphCode(n, tuple(members))
    raise DomainError(f"unknown code type {kind!r}")


# BCH columns

def columnset_to_json(cs: ColumnSet, report: StrengthReport | None = None) -> dict:
    out = {
        "s": cs.s,
        "t": cs.t,
        "augmented": cs.parity_augmented,
        "modulus": cs.modulus,
        "columns": [to_hex(c, cs.width) for c in cs.columns],
    }
    if report is not None:
        out["certification"] = {
            "method": report.method,
            "max_size": report.max_size,
            "subsets_checked": report.subsets_checked,
            "seed": report.seed,
            "violations": [list(v) for v in report.violations],
        }
    return out


def columnset_from_json(obj: Any) -> ColumnSet:
    s, t = _int(obj, "s"), _int(obj, "t")
    aug = bool(obj.get("augmented", False))
    width = t * s + (1 if aug else 0)
    cols = tuple(from_hex(c, width) for c in obj["columns"])
    return ColumnSet(s, t, aug, _int(obj, "modulus"), cols)


# certificates

def certificate_to_json(cert: CliqueCertificate) -> dict:
    return {
        "hprime": graph_to_json(cert.hprime),
        "indep": list(cert.indep),
        "n": cert.n,
        "m": cert.m,
        "copies": [graph_to_json(g) for g in cert.copies],
        "bound": str(cert.bound),
        "vertex_bound": str(cert.vertex_bound),
    }


def certificate_from_json(obj: Any) -> CliqueCertificate:
    """Rebuilds (and so re-checks) the certificate, then compares it with the file."""
    hprime = graph_from_json(obj["hprime"])
    cert = doubled_clique_certificate(hprime, obj["indep"], _int(obj, "n"))
    stored = [graph_from_json(g) for g in obj.get("copies", [])]
    if stored != list(cert.copies) or obj.get("m") != cert.m:
        raise DomainError("certificate copies do not match the construction")
    return cert


# families

def parse_family(text: str, base: Path | None = None) -> ForbiddenFamily:
    """Family grammar: star:<t> | matching:<t> | cliques | cliques<=r | iso:<file> | explicit:<file>."""
    base = base or Path(".")
    text = text.strip()
    try:
        if text == "cliques":
            return AllCliques()
        if text.startswith("cliques<="):
            return CliquesUpTo(int(text[len("cliques<="):]))
        if text.startswith("star:"):
            return Star(int(text[5:]))
        if text.startswith("matching:"):
            return Matching(int(text[9:]))
    except ValueError as exc:
        raise DomainError(f"bad family descriptor {text!r}") from exc
    if text.startswith("iso:"):
        return IsoCopiesOf(graph_from_json(read_json(base / text[4:])))
    if text.startswith("explicit:"):
        return Explicit(tuple(graphs_from_json(read_json(base / text[9:]))))
    raise DomainError(f"bad family descriptor {text!r}")


# reports and results

def mode_to_json(mode) -> Any:
    if mode == EXHAUSTIVE:
        return EXHAUSTIVE
    return {"sampled": {"seed": mode.seed, "count": mode.count}}


def mode_from_json(obj: Any):
    if obj == EXHAUSTIVE:
        return EXHAUSTIVE
    s = obj["sampled"]
    return Sampled(s["seed"], s["count"])


def report_to_json(report: VerificationReport) -> dict:
    violations = []
    for v in report.violations:
        item: dict[str, Any] = {"copy": graph_to_json(v.copy)}
        if v.pair is not None:
            item["pair"] = [graph_to_json(g) for g in v.pair]
        if v.syndrome is not None:
            item["syndrome"] = v.syndrome.to_hex()
        violations.append(item)
    return {
        "family": report.family,
        "mode": mode_to_json(report.mode),
        "copies_checked": report.copies_checked,
        "violation_count": report.violation_count,
        "passed": report.passed,
        "violations": violations,
    }


def result_to_json(result: ExactResult, fam: ForbiddenFamily | None = None) -> dict:
    # wall-clock time stays out of files so reruns are byte-identical
    out: dict[str, Any] = {}
    if fam is not None:
        out["family"] = fam.descriptor()
    return out | {
        "value": result.value,
        "status": result.status,
        "witness": code_to_json(result.witness),
        "stats": {"nodes": result.nodes},
    }


def witness_to_json(w: CliqueWitness | None, n: int) -> dict:
    if w is None:
        return {"n": n, "found": False}
    return {
        "n": n,
        "found": True,
        "subset": list(w.subset),
        "intersections": list(w.intersections),
        "parities": list(w.parities),
    }

