"""Model files: JSON documents with a top-level ``kind`` discriminator.

::

    {"kind": "relational", "points": 3, "edges": [[0, 1]], "symmetrize": true}
    {"kind": "topology", "points": 4, "preorder": [[1, 0], [1, 2]], "algebra": "rc"}
    {"kind": "edc", "n": 2, "leq": [[0, 1]], "C": [[1, 1]], "Chat": [[0, 0]], "ll": [[0, 0], [0, 1], [1, 1]]}
    {"kind": "family", "parent": {...relational...}, "sets": [[], [0], [0, 1, 2]]}

All indices are 0-based. A topology may give ``closed_sets`` instead of a
preorder. An optional ``"version": 1`` is accepted on every kind.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .edc import EDCLattice, build_edc
from .errors import IndexOutOfRange, ParseError
from .lattice import mask_of, validate_lattice
from .models import (
    FiniteTopology,
    RelationalSystem,
    full_discrete_edc,
    rc_algebra,
    ro_algebra,
    sub_discrete_edc,
)

FORMAT_VERSION = 1
KINDS = ("relational", "topology", "edc", "family")


@dataclass(frozen=True, eq=False)
class Model:
    kind: str
    E: EDCLattice
    document: dict
    system: RelationalSystem | None = None
    topology: FiniteTopology | None = None


# ------------------------------------------------------------------ schema helpers


def _field(doc: dict, key: str, where: str, default: Any = ...) -> Any:
    if key not in doc:
        if default is ...:
            raise ParseError(f"{where}: missing field {key!r}")
        return default
    return doc[key]


def _int(value: Any, where: str, low: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < low:
        raise ParseError(f"{where}: expected an integer >= {low}, got {value!r}")
    return value


def _pairs(value: Any, where: str, bound: int) -> list[tuple[int, int]]:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list of pairs")
    out = []
    for k, p in enumerate(value):
        if not (isinstance(p, list) and len(p) == 2):
            raise ParseError(f"{where}[{k}]: expected a pair [i, j]")
        i, j = (_int(x, f"{where}[{k}]") for x in p)
        if i >= bound or j >= bound:
            raise IndexOutOfRange(f"{where}[{k}]: index out of range 0..{bound - 1}")
        out.append((i, j))
    return out


def _index_lists(value: Any, where: str, bound: int) -> list[int]:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list of index lists")
    masks = []
    for k, s in enumerate(value):
        if not isinstance(s, list):
            raise ParseError(f"{where}[{k}]: expected a list of point indices")
        idx = [_int(x, f"{where}[{k}]") for x in s]
        if any(x >= bound for x in idx):
            raise IndexOutOfRange(f"{where}[{k}]: point index out of range 0..{bound - 1}")
        masks.append(mask_of(idx))
    return masks


def _check_keys(doc: dict, allowed: set[str], where: str) -> None:
    extra = sorted(set(doc) - allowed - {"kind", "version"})
    if extra:
        raise ParseError(f"{where}: unknown field(s) {', '.join(extra)}")
    if "version" in doc and doc["version"] != FORMAT_VERSION:
        raise ParseError(f"{where}: unsupported version {doc['version']!r}")


def _matrix(pairs: list[tuple[int, int]], n: int) -> np.ndarray:
    M = np.zeros((n, n), dtype=bool)
    for i, j in pairs:
        M[i, j] = True
    return M


# ------------------------------------------------------------------ kinds


def _relational(doc: dict, where: str) -> RelationalSystem:
    _check_keys(doc, {"points", "edges", "symmetrize"}, where)
    m = _int(_field(doc, "points", where), f"{where}.points", 1)
    edges = _pairs(_field(doc, "edges", where, []), f"{where}.edges", m)
    sym = _field(doc, "symmetrize", where, False)
    if not isinstance(sym, bool):
        raise ParseError(f"{where}.symmetrize: expected true or false")
    return RelationalSystem.from_edges(m, edges, symmetrize=sym)


def _topology(doc: dict, where: str) -> FiniteTopology:
    _check_keys(doc, {"points", "preorder", "closed_sets", "algebra"}, where)
    m = _int(_field(doc, "points", where), f"{where}.points", 1)
    if "closed_sets" in doc:
        if "preorder" in doc:
            raise ParseError(f"{where}: give either preorder or closed_sets, not both")
        return FiniteTopology(m, frozenset(_index_lists(doc["closed_sets"], f"{where}.closed_sets", m)))
    return FiniteTopology.from_preorder(m, _pairs(_field(doc, "preorder", where, []), f"{where}.preorder", m))


def _edc(doc: dict, where: str) -> EDCLattice:
    _check_keys(doc, {"n", "leq", "C", "Chat", "ll", "labels"}, where)
    n = _int(_field(doc, "n", where), f"{where}.n", 1)
    leq = _matrix(_pairs(_field(doc, "leq", where), f"{where}.leq", n), n)
    leq |= np.eye(n, dtype=bool)
    for k in range(n):  # reflexive-transitive closure of the listed pairs
        leq |= leq[:, k:k + 1] & leq[k:k + 1, :]
    labels = _field(doc, "labels", where, None)
    if labels is not None and not (isinstance(labels, list) and all(isinstance(x, str) for x in labels)):
        raise ParseError(f"{where}.labels: expected a list of strings")
    L = validate_lattice(leq, labels=labels)
    mats = [_matrix(_pairs(_field(doc, key, where), f"{where}.{key}", n), n) for key in ("C", "Chat", "ll")]
    return build_edc(L, *mats)


def build_model(doc: Any, force: bool = False) -> Model:
    if not isinstance(doc, dict):
        raise ParseError("$: expected a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ParseError(f"$.kind: expected one of {', '.join(KINDS)}, got {kind!r}")
    if kind == "relational":
        S = _relational(doc, "$")
        return Model(kind, full_discrete_edc(S, force), doc, system=S)
    if kind == "family":
        _check_keys(doc, {"parent", "sets"}, "$")
        parent = _field(doc, "parent", "$")
        if not isinstance(parent, dict) or parent.get("kind", "relational") != "relational":
            raise ParseError("$.parent: expected a relational block")
        S = _relational(parent, "$.parent")
        sets = _index_lists(_field(doc, "sets", "$"), "$.sets", S.m)
        return Model(kind, sub_discrete_edc(S, sets, force), doc, system=S)
    if kind == "topology":
        T = _topology(doc, "$")
        algebra = doc.get("algebra", "rc")
        if algebra not in ("rc", "ro"):
            raise ParseError(f"$.algebra: expected 'rc' or 'ro', got {algebra!r}")
        return Model(kind, rc_algebra(T) if algebra == "rc" else ro_algebra(T), doc, topology=T)
    return Model(kind, _edc(doc, "$"), doc)


def loads(text: str, force: bool = False) -> Model:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return build_model(doc, force)


def load(path: str | Path, force: bool = False) -> Model:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text, force)


# ------------------------------------------------------------------ export


def _pair_list(M: np.ndarray) -> list[list[int]]:
    return [[int(i), int(j)] for i, j in np.argwhere(M)]


def edc_document(E: EDCLattice) -> dict:
    """Canonical explicit form of any structure; parses back to an equal one."""
    strict = E.leq & ~np.eye(E.n, dtype=bool)
    doc = {
        "kind": "edc",
        "n": E.n,
        "leq": _pair_list(strict),
        "C": _pair_list(E.C),
        "Chat": _pair_list(E.Chat),
        "ll": _pair_list(E.Ll),
    }
    if E.lattice.labels is not None:
        doc["labels"] = list(E.lattice.labels)
    return doc


def canonical_json(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(E: EDCLattice) -> str:
    return hashlib.sha256(canonical_json(edc_document(E)).encode("utf-8")).hexdigest()


def dumps(doc: Any) -> str:
    """Stable pretty form used for files written by the CLI."""
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def relational_document(S: RelationalSystem) -> dict:
    return {"kind": "relational", "points": S.m, "edges": [list(e) for e in S.edges()], "symmetrize": True}
