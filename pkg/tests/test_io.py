import json
import random

import pytest

from conftest import FIXTURES
from edclattice import io
from edclattice.corpus import random_mutants
from edclattice.errors import (
    FamilyNotClosed,
    IndexOutOfRange,
    InvalidTopology,
    NotDistributive,
    NotReflexiveSymmetric,
    ParseError,
)


def test_load_fixtures(w3, chain_model):
    assert io.load(FIXTURES / "w3.json").E == w3
    assert io.load(FIXTURES / "chain_family.json").E == chain_model


def test_malformed_reports_position():
    with pytest.raises(ParseError) as exc:
        io.load(FIXTURES / "malformed.json")
    assert (exc.value.line, exc.value.column) == (3, 19)
    assert "line 3, column 19" in str(exc.value)


@pytest.mark.parametrize("doc,err", [
    ([], ParseError),
    ({"kind": "graph"}, ParseError),
    ({"kind": "relational"}, ParseError),
    ({"kind": "relational", "points": 2, "edges": [[0, 5]]}, IndexOutOfRange),
    ({"kind": "relational", "points": 2, "edges": [[0, 1]]}, NotReflexiveSymmetric),
    ({"kind": "relational", "points": 2, "edges": [], "colour": 1}, ParseError),
    ({"kind": "relational", "points": 2, "edges": [], "version": 2}, ParseError),
    ({"kind": "family", "parent": {"points": 2, "edges": []}, "sets": [[], [0], [1]]}, FamilyNotClosed),
    ({"kind": "topology", "points": 2, "closed_sets": [[], [0]]}, InvalidTopology),
    ({"kind": "edc", "n": 5, "leq": [[0, 1], [0, 2], [0, 3], [1, 4], [2, 4], [3, 4]], "C": [], "Chat": [], "ll": []},
     NotDistributive),
])
def test_schema_errors(doc, err):
    with pytest.raises(err):
        io.build_model(doc)


def test_symmetrize_and_version(w3):
    doc = {"kind": "relational", "points": 3, "edges": [[0, 1], [1, 0]], "version": 1}
    assert io.build_model(doc).E == w3


def test_topology_kinds():
    doc = {"kind": "topology", "points": 2, "preorder": [[1, 0]]}
    rc = io.build_model(doc)
    assert rc.topology is not None and rc.E.n == 2
    ro = io.build_model({**doc, "algebra": "ro"})
    assert ro.E.n == rc.E.n
    explicit = io.build_model({"kind": "topology", "points": 2, "closed_sets": [[], [1], [0, 1]]})
    assert explicit.topology.closed_sets == rc.topology.closed_sets


def test_round_trip(w3, corpus):
    rng = random.Random(1)
    models = [w3] + [m.E for m in corpus] + [M for *_, M in random_mutants(rng, w3, 5)]
    for E in models:
        doc = io.edc_document(E)
        back = io.loads(json.dumps(doc)).E
        assert back == E
        assert io.digest(back) == io.digest(E)
        assert [back.label(a) for a in range(back.n)] == [E.label(a) for a in range(E.n)]


def test_digest_is_stable(w3):
    assert io.digest(w3) == io.digest(io.load(FIXTURES / "w3.json").E)
    assert len(io.digest(w3)) == 64
