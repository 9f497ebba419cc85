import numpy as np
import pytest

from conftest import el
from edclattice.edc import check_extra_axiom, satisfies
from edclattice.errors import EmptyPointClass, NotAClan, NotASubstructure
from edclattice.lattice import enumerate_prime_filters, is_ideal
from edclattice.points import (
    SPACE_KINDS,
    build_point_space,
    c_separability,
    chat_separability,
    check_substructure,
    clan_boundary_characterization,
    clan_enumeration,
    efilter_enumeration,
    enumerate_clans,
    enumerate_efilters,
    image_inclusion,
    is_clan,
    is_cocluster,
    is_dense,
    is_dual_dense,
    is_efilter,
    verify_preservation_lemmas,
    verify_topological_representation,
)


def ultra(x):
    return sum(1 << a for a in range(8) if a >> x & 1)


U1, U2, U3 = ultra(0), ultra(1), ultra(2)


def brute(E, pred):
    return [m for m in range(1 << E.n) if pred(E, m)]


def test_w3_clans(w3):
    clans = enumerate_clans(w3)
    assert sorted(c.members for c in clans) == sorted([U1, U2, U3, U1 | U2])
    assert sorted(c.members for c in enumerate_clans(w3, "maximal")) == sorted([U1 | U2, U3])
    assert sorted(c.members for c in enumerate_clans(w3, "cluster")) == sorted([U1 | U2, U3])
    assert clan_enumeration(w3).agree


def test_w3_efilters(w3):
    masks = [f.members for f in enumerate_efilters(w3)]
    assert U1 & U2 in masks
    assert efilter_enumeration(w3).agree
    for F in enumerate_prime_filters(w3.lattice):
        assert F.members in masks


def test_enumerations_match_brute_force(corpus):
    for m in corpus:
        if m.E.n > 10:
            continue
        assert [c.members for c in enumerate_clans(m.E)] == brute(m.E, is_clan)
        assert [f.members for f in enumerate_efilters(m.E)] == brute(m.E, is_efilter)


def test_clan_facts(corpus):
    for m in corpus:
        E = m.E
        clans = enumerate_clans(E)
        masks = [c.members for c in clans]
        maximal = [c.members for c in clans if "maximal" in c.tags]
        for F in enumerate_prime_filters(E.lattice):
            assert F.members in masks
        for c in masks:
            assert is_ideal(E.lattice, E.lattice.full & ~c)
            assert any(c & ~M == 0 for M in maximal)
        for c in clans:
            if "cluster" in c.tags:
                assert "maximal" in c.tags
        if check_extra_axiom(E, "Nor1").passed:
            assert all("cluster" in c.tags for c in clans if "maximal" in c.tags)
        for f in enumerate_efilters(E):
            if is_cocluster(E, f.members):
                assert "minimal" in f.tags


def test_w3_spaces(w3):
    sp = build_point_space(w3, "maxclans")
    assert sp.size == 2
    pos = {p.members: i for i, p in enumerate(sp.points)}
    assert sp.h(el(w3, "{1}")) == 1 << pos[U1 | U2]
    assert sp.h(el(w3, "{3}")) == 1 << pos[U3]
    clans = build_point_space(w3, "clans")
    assert clans.size == 4 and clans.h(w3.top) == 0b1111
    cl = build_point_space(w3, "clusters")
    assert [p.members for p in cl.points] == [p.members for p in sp.points] and cl.basis == sp.basis


def test_w3_clan_space_representation(w3):
    rep = verify_topological_representation(w3, build_point_space(w3, "clans"))
    assert rep.passed
    for name in ("contact", "non_tangential", "dual_contact", "dual_dense",
                 "C_separability_C", "C_separability_Chat", "C_separability_Ll", "T0"):
        assert rep[name].holds and rep[name].required
    assert "finite space: compactness holds trivially" in rep.notes


def test_w3_cluster_separation(w3):
    sp = build_point_space(w3, "clusters")
    rep = verify_topological_representation(w3, sp)
    sep = rep["cluster_separation"]
    assert sep.holds and sep.required
    i, j, a, b = sep.detail["witnesses"][0]
    G, D = sp.points[i].members, sp.points[j].members
    assert not G >> a & 1 and not D >> b & 1 and w3.join[a, b] == w3.top


def test_w3_all_spaces_pass(w3):
    for kind in SPACE_KINDS:
        assert verify_topological_representation(w3, build_point_space(w3, kind)).passed, kind


def test_chain_model_flags_unmet_preconditions(chain_model):
    rep = verify_topological_representation(chain_model, build_point_space(chain_model, "clans"))
    assert not rep.preconditions["ExtOhat"]
    assert any(n.startswith("preconditions not met") for n in rep.notes)
    assert not rep["images_regular_closed"].holds and not rep["images_regular_closed"].required


def test_empty_point_class():
    from edclattice.edc import build_edc
    from edclattice.lattice import chain

    L = chain(2)
    # no contact at all: the only candidate clan {1} fails 1 C 1
    E = build_edc(L, np.zeros((2, 2)), np.zeros((2, 2)), L.leq)
    with pytest.raises(EmptyPointClass):
        build_point_space(E, "clans")


def test_clan_boundary(w3):
    clans = enumerate_clans(w3)
    G = next(c for c in clans if c.members == U1 | U2)
    r = clan_boundary_characterization(w3, G, el(w3, "{3}"))
    assert r["I"] and r["II"] and r["III"] and r["equivalent"]
    space = build_point_space(w3, "clans")
    for c in clans:
        assert all(clan_boundary_characterization(w3, c, a, space)["equivalent"] for a in range(w3.n))
        assert clan_boundary_characterization(w3, c, w3.bottom, space)["I"]
        assert not clan_boundary_characterization(w3, c, w3.top, space)["I"]
    with pytest.raises(NotAClan):
        clan_boundary_characterization(w3, 1 << w3.bottom, 0)


def test_separability_on_identity(w3):
    sub = list(range(w3.n))
    assert all(v["holds"] for v in c_separability(w3, sub).values())
    assert all(v["holds"] for v in chat_separability(w3, sub).values())
    assert is_dense(w3, sub)["holds"] and is_dual_dense(w3, sub)["holds"]
    rep = verify_preservation_lemmas(w3, w3, sub)
    assert rep["passed"] and all(r["applies"] for r in rep["rows"])


def test_chain_inside_w3(w3, chain_model):
    inc = [el(w3, chain_model.label(a)) for a in range(chain_model.n)]
    rep = verify_preservation_lemmas(chain_model, w3, inc)
    assert rep["passed"]
    for r in rep["rows"]:
        if r["applies"]:
            assert r["sub"] == r["whole"]
    with pytest.raises(NotASubstructure):
        check_substructure(chain_model, w3, [0, 1, 2, 2])


def test_preservation_into_clan_space(corpus):
    for m in corpus:
        E = m.E
        if not satisfies(E, "ExtOhat", "URichLl", "URichChat"):
            continue
        sp = build_point_space(E, "clans")
        target, idx = image_inclusion(E, sp)
        rep = verify_preservation_lemmas(E, target, idx)
        assert rep["passed"], m.name
        conc = next(r for r in rep["rows"] if r["axiom"] == "ConC")
        assert conc["applies"] and conc["sub"] == conc["whole"]
