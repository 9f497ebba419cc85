import itertools

import numpy as np
import pytest

from conftest import el
from edclattice.edc import build_edc, with_relations
from edclattice.errors import NotPrime
from edclattice.lattice import ElementSet, chain, enumerate_prime_filters
from edclattice.representation import (
    canonical_structure,
    contact_canonical_relation,
    is_transitive,
    rc_contact_matrix,
    stone_map,
    verify_contact_facts,
    verify_metatheorems,
    verify_relational_representation,
    verify_universal_fragment,
)


def brute_rc(E, G, D):
    """The four-conjunct definition evaluated pair by pair."""
    for a, b in itertools.product(range(E.n), repeat=2):
        ina, inb = bool(G >> a & 1), bool(D >> b & 1)
        if ina and inb and not E.C[a, b]:
            return False
        if not ina and not inb and not E.Chat[a, b]:
            return False
        if ina and not inb and E.Ll[a, b]:
            return False
        if not ina and inb and E.Ll[b, a]:
            return False
    return True


def test_w3_canonical_structure(w3):
    cs = canonical_structure(w3)
    assert cs.size == 3
    U = [sum(1 << a for a in range(8) if a >> x & 1) for x in range(3)]
    assert list(cs.points) == sorted(U)
    expected = np.array([[1, 1, 0], [1, 1, 0], [0, 0, 1]], dtype=bool)
    order = [U.index(p) for p in cs.points]
    assert np.array_equal(cs.Rc, expected[np.ix_(order, order)])


def test_rc_matches_definition(corpus):
    for m in corpus[:40]:
        cs = canonical_structure(m.E)
        for i, G in enumerate(cs.points):
            for j, D in enumerate(cs.points):
                assert cs.Rc[i, j] == brute_rc(m.E, G, D)
        assert cs.is_reflexive_symmetric()


def test_single_point_chain():
    L = chain(2)
    E = build_edc(L, [[0, 0], [0, 1]], [[1, 0], [0, 0]], L.leq)
    cs = canonical_structure(E)
    assert cs.size == 1 and cs.Rc[0, 0]


def test_ideal_mode_matches_filter_mode(corpus):
    for m in corpus[:30]:
        E = m.E
        f, i = canonical_structure(E, "filters"), canonical_structure(E, "ideals")
        comp = [E.lattice.full & ~p for p in f.points]
        assert sorted(comp) == sorted(i.points)
        pos = [i.points.index(c) for c in comp]
        assert np.array_equal(i.Rc[np.ix_(pos, pos)], f.Rc)


def test_stone_map(w3):
    cs = canonical_structure(w3)
    h = stone_map(w3, el(w3, "{1,2}"), cs)
    U = [sum(1 << a for a in range(8) if a >> x & 1) for x in range(3)]
    assert h == (1 << cs.points.index(U[0])) | (1 << cs.points.index(U[1]))
    assert stone_map(w3, w3.bottom) == 0 and stone_map(w3, w3.top) == 0b111
    for a in range(8):
        for b in range(8):
            if w3.leq[a, b]:
                assert stone_map(w3, a) & ~stone_map(w3, b) == 0


def test_relational_representation_examples(w3, chain_model):
    assert verify_relational_representation(w3).passed
    assert verify_relational_representation(chain_model).passed


def test_relational_representation_detects_mutant(w3):
    C = np.array(w3.C)
    a, b = el(w3, "{1}"), el(w3, "{2}")
    C[a, b] = C[b, a] = False
    rep = verify_relational_representation(with_relations(w3, C=C))
    assert not rep.passed and not rep.preserves["C"]
    assert rep.witnesses["C"]


def test_universal_fragment(corpus):
    for m in corpus[:30]:
        assert verify_universal_fragment(m.E)["passed"]


def test_contact_relation(w3):
    pf = enumerate_prime_filters(w3.lattice)
    U = {next(x for x in range(3) if all(a >> x & 1 for a in F.elements())): F for F in pf}
    assert contact_canonical_relation(w3, U[0], U[1])
    assert not contact_canonical_relation(w3, U[0], U[2])
    for F in pf:
        assert contact_canonical_relation(w3, F, F)
    with pytest.raises(NotPrime):
        contact_canonical_relation(w3, ElementSet(1 << w3.top), U[0])


def test_contact_facts(corpus):
    for m in corpus:
        r = verify_contact_facts(m.E)
        assert r["C"] and r["Chat"], m.name


def test_metatheorems(w3, path3):
    r = verify_metatheorems(w3)
    assert r["RC_equals_Rc"] and r["Rc_transitive"] and r["passed"]
    r = verify_metatheorems(path3)
    assert not r["axioms"]["Nor1"] and not r["Rc_transitive"] and r["passed"]


def test_rc_contact_matrix_is_reflexive(corpus):
    for m in corpus[:20]:
        pts = [F.members for F in enumerate_prime_filters(m.E.lattice)]
        R = rc_contact_matrix(m.E, pts)
        assert R.diagonal().all() and np.array_equal(R, R.T)


def test_is_transitive():
    assert is_transitive(np.eye(3, dtype=bool))
    P = np.array([[1, 1, 0], [1, 1, 1], [0, 1, 1]], dtype=bool)
    assert not is_transitive(P)
