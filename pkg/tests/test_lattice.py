import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edclattice.errors import KindMismatch, NoBounds, NotAPartialOrder, NotDisjoint, NotDistributive, TooLarge
from edclattice.lattice import (
    ElementSet,
    chain,
    enumerate_prime_filters,
    enumerate_prime_ideals,
    filter_sum,
    is_filter,
    is_prime_ideal,
    lattice_from_sets,
    powerset_lattice,
    prime_filters_by_scan,
    principal_filter_ideal,
    separation,
    strong_filter_extension,
    strong_ideal_extension,
    strong_witness_ok,
    validate_lattice,
)

P3 = powerset_lattice(3)


def m3_order():
    # 0, three atoms, 1
    leq = np.eye(5, dtype=bool)
    leq[0, :] = True
    leq[:, 4] = True
    return leq


def brute_distributive_failure(leq):
    """Independent oracle: lub/glb by explicit bound search, then every triple."""
    n = len(leq)

    def lub(a, b):
        ups = [x for x in range(n) if leq[a, x] and leq[b, x]]
        return next(x for x in ups if all(leq[x, y] for y in ups))

    def glb(a, b):
        lows = [x for x in range(n) if leq[x, a] and leq[x, b]]
        return next(x for x in lows if all(leq[y, x] for y in lows))

    for a, b, c in itertools.product(range(n), repeat=3):
        if glb(a, lub(b, c)) != lub(glb(a, b), glb(a, c)):
            return a, b, c
    return None


def random_set_lattice(rng, k=4):
    fam = {0, (1 << k) - 1} | {rng.randrange(1 << k) for _ in range(rng.randint(1, 4))}
    while True:
        new = {a | b for a in fam for b in fam} | {a & b for a in fam for b in fam}
        if new <= fam:
            break
        fam |= new
    sets = sorted(fam)
    return lattice_from_sets(sets)


def test_two_element_chain():
    L = chain(2)
    assert (L.n, L.bottom, L.top) == (2, 0, 1)


def test_m3_not_distributive_with_witness():
    leq = m3_order()
    with pytest.raises(NotDistributive) as exc:
        validate_lattice(leq)
    assert brute_distributive_failure(leq) == exc.value.witness


def test_powerset_is_valid_with_eight_elements():
    assert P3.n == 8
    L = validate_lattice(P3.leq, P3.join, P3.meet)
    assert L == P3


def test_order_errors():
    with pytest.raises(NotAPartialOrder):
        validate_lattice(np.array([[True, True], [True, True]]))
    with pytest.raises(NotAPartialOrder):
        validate_lattice(np.array([[False]]))
    with pytest.raises(NoBounds):
        validate_lattice(np.eye(2, dtype=bool))


def test_principal_filter_of_atom():
    F = principal_filter_ideal(P3, 0b001, "up")
    assert F.kind == "filter"
    assert sorted(P3.label(x) for x in F.elements()) == sorted(["{1}", "{1,2}", "{1,3}", "{1,2,3}"])
    assert principal_filter_ideal(P3, P3.top, "up").elements() == [P3.top]
    assert principal_filter_ideal(P3, P3.bottom, "down").elements() == [P3.bottom]


def test_filter_sum_of_disjoint_atoms_is_improper():
    A = principal_filter_ideal(P3, 0b001)
    B = principal_filter_ideal(P3, 0b010)
    S = filter_sum(P3, A, B)
    assert S.members == P3.full
    top = ElementSet(1 << P3.top, "filter")
    assert filter_sum(P3, A, top) == A


def test_filter_sum_kind_mismatch():
    with pytest.raises(KindMismatch):
        filter_sum(P3, principal_filter_ideal(P3, 1), principal_filter_ideal(P3, 1, "down"))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 7), st.integers(0, 7), st.integers(0, 7))
def test_filter_sum_laws(a, b, c):
    A, B, C = (principal_filter_ideal(P3, x) for x in (a, b, c))
    AB = filter_sum(P3, A, B)
    assert AB == filter_sum(P3, B, A)
    assert filter_sum(P3, AB, C) == filter_sum(P3, A, filter_sum(P3, B, C))
    assert A.members & ~AB.members == 0
    assert is_filter(P3, AB.members)


def test_prime_filters_of_powerset_are_principal_ultrafilters():
    pf = enumerate_prime_filters(P3)
    assert len(pf) == 3
    for x in range(3):
        U = sum(1 << a for a in range(8) if a >> x & 1)
        assert ElementSet(U, "prime-filter") in pf
    assert pf == prime_filters_by_scan(P3)


def test_prime_filters_of_chains():
    assert [f.elements() for f in enumerate_prime_filters(chain(2))] == [[1]]
    assert sorted(f.elements() for f in enumerate_prime_filters(chain(3))) == [[1, 2], [2]]


@pytest.mark.parametrize("seed", range(15))
def test_prime_filter_enumeration_matches_scan(seed):
    L = random_set_lattice(random.Random(seed))
    assert enumerate_prime_filters(L) == prime_filters_by_scan(L)
    for F in enumerate_prime_filters(L):
        assert is_prime_ideal(L, L.full & ~F.members)
    assert [I.members for I in enumerate_prime_ideals(L)] == sorted(L.full & ~F.members for F in enumerate_prime_filters(L))


@pytest.mark.parametrize("seed", range(10))
def test_both_distributive_laws(seed):
    L = random_set_lattice(random.Random(seed))
    n = L.n
    a, b, c = np.meshgrid(range(n), range(n), range(n), indexing="ij")
    assert (L.meet[a, L.join[b, c]] == L.join[L.meet[a, b], L.meet[a, c]]).all()
    assert (L.join[a, L.meet[b, c]] == L.meet[L.join[a, b], L.join[a, c]]).all()


def test_scan_guardrail():
    with pytest.raises(TooLarge):
        prime_filters_by_scan(chain(30))


def test_strong_extension_example():
    F0 = principal_filter_ideal(P3, 0b011)
    I0 = principal_filter_ideal(P3, 0b100, "down")
    F = strong_filter_extension(P3, F0, I0)
    U1 = sum(1 << a for a in range(8) if a & 1)
    assert F.members == U1
    assert strong_witness_ok(P3, F.members, I0.members)


def test_strong_extension_returns_maximal_prime_input():
    U3 = principal_filter_ideal(P3, 0b100)
    I0 = ElementSet(1 << P3.bottom, "ideal")
    assert strong_filter_extension(P3, U3, I0).members == U3.members


def test_strong_extension_not_disjoint():
    with pytest.raises(NotDisjoint):
        strong_filter_extension(P3, principal_filter_ideal(P3, 1), principal_filter_ideal(P3, 3, "down"))


def all_filters(L):
    return [m for m in range(1 << L.n) if is_filter(L, m)]


@pytest.mark.parametrize("seed", range(8))
def test_strong_extension_postconditions_exhaustive(seed):
    L = random_set_lattice(random.Random(seed), k=3)
    filters = all_filters(L)
    ideals = [m for m in range(1 << L.n) if is_filter(L.dual(), m)]
    for f0 in filters:
        for i0 in ideals:
            if f0 & i0:
                continue
            F = strong_filter_extension(L, ElementSet(f0, "filter"), ElementSet(i0, "ideal"))
            assert F.members & f0 == f0 and not F.members & i0
            assert F.members in [p.members for p in prime_filters_by_scan(L)]
            assert strong_witness_ok(L, F.members, i0)
            # maximal among filters containing F0 and avoiding I0
            assert not any(g != F.members and g & F.members == F.members and not g & i0 for g in filters)
            I = strong_ideal_extension(L, ElementSet(f0, "filter"), ElementSet(i0, "ideal"))
            assert I.members & i0 == i0 and not I.members & f0
            assert is_prime_ideal(L, I.members)


def test_separation_examples():
    F, I = separation(P3, principal_filter_ideal(P3, 0b001), principal_filter_ideal(P3, 0b110, "down"))
    U1 = sum(1 << a for a in range(8) if a & 1)
    assert F.members == U1 and I.members == P3.full & ~U1


def test_separation_random_pairs():
    rng = random.Random(11)
    for _ in range(20):
        a, b = rng.randrange(8), rng.randrange(8)
        F0 = principal_filter_ideal(P3, a)
        I0 = principal_filter_ideal(P3, b, "down")
        if F0.members & I0.members:
            continue
        F, I = separation(P3, F0, I0)
        assert F.members | I.members == P3.full and not F.members & I.members
        assert F0.members & ~F.members == 0 and I0.members & ~I.members == 0
