"""Canonical relational structure over prime filters and the Stone map.

The relational representation is verified without building the powerset
of canonical points: every relation on images ``h(a)`` is evaluated from
neighbourhood bitmasks directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .edc import EDCLattice, check_core_axioms, check_extra_axiom
from .errors import NotPrime
from .lattice import ElementSet, enumerate_prime_filters, enumerate_prime_ideals, is_prime_filter, is_prime_ideal
from .models import RelationalSystem, _edc_on_sets


def membership(E: EDCLattice, points: list[int] | tuple[int, ...]) -> np.ndarray:
    """Boolean matrix ``M[p, a]``: element ``a`` belongs to point ``p``."""
    M = np.zeros((len(points), E.n), dtype=bool)
    for i, p in enumerate(points):
        for a in range(E.n):
            M[i, a] = bool(p >> a & 1)
    return M


def _all_pairs(M1: np.ndarray, rel: np.ndarray, M2: np.ndarray) -> np.ndarray:
    """``out[i, j]`` iff ``rel[a, b]`` for every a in row i of M1 and b in row j of M2."""
    bad = M1.astype(np.int64) @ (~rel).astype(np.int64) @ M2.T.astype(np.int64)
    return bad == 0


def _no_pairs(M1: np.ndarray, rel: np.ndarray, M2: np.ndarray) -> np.ndarray:
    hits = M1.astype(np.int64) @ rel.astype(np.int64) @ M2.T.astype(np.int64)
    return hits == 0


def canonical_matrix(E: EDCLattice, M: np.ndarray) -> np.ndarray:
    """The four-conjunct canonical relation between the prime filters in ``M``."""
    N = ~M
    return (
        _all_pairs(M, E.C, M)
        & _all_pairs(N, E.Chat, N)
        & _no_pairs(M, E.Ll, N)
        & _no_pairs(M, E.Ll, N).T
    )


def canonical_ideal_matrix(E: EDCLattice, M: np.ndarray) -> np.ndarray:
    """The dual definition over prime ideals given as rows of ``M``.

    For ideals I, J: a∈I, b∈J gives a Ch b; a∉I, b∉J gives a C b;
    a∈I, b∉J forbids b << a; a∉I, b∈J forbids a << b.
    """
    N = ~M
    return (
        _all_pairs(M, E.Chat, M)
        & _all_pairs(N, E.C, N)
        & _no_pairs(N, E.Ll, M).T
        & _no_pairs(N, E.Ll, M)
    )


@dataclass(frozen=True, eq=False)
class CanonicalStructure:
    mode: str
    points: tuple[int, ...]
    Rc: np.ndarray

    @property
    def size(self) -> int:
        return len(self.points)

    def is_reflexive_symmetric(self) -> bool:
        return bool(self.Rc.diagonal().all() and np.array_equal(self.Rc, self.Rc.T))


def canonical_structure(E: EDCLattice, mode: str = "filters") -> CanonicalStructure:
    if mode == "filters":
        pts = tuple(F.members for F in enumerate_prime_filters(E.lattice))
        Rc = canonical_matrix(E, membership(E, pts))
    elif mode == "ideals":
        pts = tuple(I.members for I in enumerate_prime_ideals(E.lattice))
        Rc = canonical_ideal_matrix(E, membership(E, pts))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    Rc.setflags(write=False)
    return CanonicalStructure(mode, pts, Rc)


def stone_images(E: EDCLattice, points: tuple[int, ...] | list[int]) -> list[int]:
    """``h(a)`` for every element, as bitmasks over point positions."""
    out = [0] * E.n
    for i, p in enumerate(points):
        a = p
        j = 0
        while a:
            if a & 1:
                out[j] |= 1 << i
            a >>= 1
            j += 1
    return out


def stone_map(E: EDCLattice, a: int, cs: CanonicalStructure | None = None) -> int:
    E.lattice.check_index(a)
    pts = cs.points if cs is not None else tuple(F.members for F in enumerate_prime_filters(E.lattice))
    return stone_images(E, pts)[a]


# ------------------------------------------------------------------ embedding


@dataclass
class EmbeddingReport:
    injective: bool
    preserves: dict[str, bool]
    witnesses: dict[str, tuple] = field(default_factory=dict)
    points: int = 0

    @property
    def passed(self) -> bool:
        return self.injective and all(self.preserves.values())

    def to_dict(self) -> dict:
        return {
            "points": self.points,
            "injective": self.injective,
            "preserves": dict(self.preserves),
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
            "passed": self.passed,
        }


def adjacency_relations(R: np.ndarray, sets: list[int]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """C, Ch, << between point sets under an arbitrary adjacency matrix ``R``."""
    m = R.shape[0]
    full = (1 << m) - 1
    N = [0] * m
    for x in range(m):
        for y in range(m):
            if R[x, y]:
                N[x] |= 1 << y

    def hood(s: int) -> int:
        out = 0
        x = 0
        while s:
            if s & 1:
                out |= N[x]
            s >>= 1
            x += 1
        return out

    k = len(sets)
    Na = [hood(s) for s in sets]
    Nc = [hood(full & ~s) for s in sets]
    C = np.zeros((k, k), dtype=bool)
    Chat = np.zeros((k, k), dtype=bool)
    Ll = np.zeros((k, k), dtype=bool)
    for i in range(k):
        for j in range(k):
            C[i, j] = Na[i] & sets[j] != 0
            Chat[i, j] = Nc[i] & (full & ~sets[j]) != 0
            Ll[i, j] = Na[i] & (full & ~sets[j]) == 0
    return C, Chat, Ll


def _first(mask: np.ndarray) -> tuple:
    idx = np.argwhere(mask)
    return tuple(int(x) for x in idx[0]) if len(idx) else ()


def check_embedding(
    E: EDCLattice,
    images: list[int],
    target_ops: dict,
    C2: np.ndarray,
    Chat2: np.ndarray,
    Ll2: np.ndarray,
    points: int,
) -> EmbeddingReport:
    """Compare ``E`` with the image structure.

    ``target_ops`` supplies ``bottom``, ``top``, ``join(x, y)`` and
    ``meet(x, y)`` on image sets; ``C2``/``Chat2``/``Ll2`` are the target
    relations between images, indexed like the source elements.
    """
    n = E.n
    arr = images
    pres: dict[str, bool] = {}
    wit: dict[str, tuple] = {}
    injective = len(set(arr)) == n
    if not injective:
        seen: dict[int, int] = {}
        for a, s in enumerate(arr):
            if s in seen:
                wit["injective"] = (seen[s], a)
                break
            seen[s] = a
    pres["bottom"] = arr[E.bottom] == target_ops["bottom"]
    pres["top"] = arr[E.top] == target_ops["top"]
    jbad = np.zeros((n, n), dtype=bool)
    mbad = np.zeros((n, n), dtype=bool)
    sub = np.zeros((n, n), dtype=bool)
    for a in range(n):
        for b in range(n):
            jbad[a, b] = arr[int(E.join[a, b])] != target_ops["join"](arr[a], arr[b])
            mbad[a, b] = arr[int(E.meet[a, b])] != target_ops["meet"](arr[a], arr[b])
            sub[a, b] = arr[a] & ~arr[b] == 0
    checks = {
        "join": jbad,
        "meet": mbad,
        "leq": E.leq != sub,
        "C": E.C != C2,
        "Chat": E.Chat != Chat2,
        "Ll": E.Ll != Ll2,
    }
    for k, bad in checks.items():
        pres[k] = not bad.any()
        if bad.any():
            wit[k] = _first(bad)
    return EmbeddingReport(injective, pres, wit, points)


def verify_relational_representation(E: EDCLattice, cs: CanonicalStructure | None = None) -> EmbeddingReport:
    cs = cs or canonical_structure(E, "filters")
    images = stone_images(E, cs.points)
    C2, Chat2, Ll2 = adjacency_relations(cs.Rc, images)
    full = (1 << cs.size) - 1
    ops = {"bottom": 0, "top": full, "join": lambda x, y: x | y, "meet": lambda x, y: x & y}
    return check_embedding(E, images, ops, C2, Chat2, Ll2, cs.size)


def verify_universal_fragment(E: EDCLattice, cs: CanonicalStructure | None = None) -> dict:
    """Core axioms re-checked on the image of ``h`` inside the canonical frame."""
    cs = cs or canonical_structure(E, "filters")
    if not cs.is_reflexive_symmetric():
        return {"checked": False, "reason": "canonical relation is not reflexive and symmetric", "passed": False}
    images = stone_images(E, cs.points)
    family = sorted(set(images))
    S = RelationalSystem(cs.size, cs.Rc)
    full = S.full
    closed = all(a | b in family and a & b in family for a in family for b in family)
    if not closed or 0 not in family or full not in family:
        return {"checked": False, "reason": "image is not a bounded set lattice", "passed": False}
    image = _edc_on_sets(S, family)
    rep = check_core_axioms(image)
    return {"checked": True, "passed": rep.passed, "failures": [f.axiom for f in rep.failures]}


# ------------------------------------------------------------------ R_C


def _require(E: EDCLattice, S: ElementSet, kind: str) -> None:
    ok = is_prime_filter(E.lattice, S.members) if kind == "filter" else is_prime_ideal(E.lattice, S.members)
    if not ok:
        raise NotPrime(f"{sorted(S.elements())} is not a prime {kind}")


def contact_canonical_relation(E: EDCLattice, U: ElementSet, V: ElementSet, relation: str = "C") -> bool:
    """``relation="C"``: all of U×V in contact, for prime filters.

    ``relation="Chat"``: all of U×V in dual contact, for prime ideals.
    """
    if relation == "C":
        _require(E, U, "filter")
        _require(E, V, "filter")
        rel = E.C
    elif relation == "Chat":
        _require(E, U, "ideal")
        _require(E, V, "ideal")
        rel = E.Chat
    else:
        raise ValueError(f"unknown relation {relation!r}")
    return all(rel[a, b] for a in U.elements() for b in V.elements())


def rc_contact_matrix(E: EDCLattice, points: tuple[int, ...] | list[int]) -> np.ndarray:
    """R_C between the given prime filters."""
    M = membership(E, list(points))
    return _all_pairs(M, E.C, M)


def rchat_matrix(E: EDCLattice, points: tuple[int, ...] | list[int]) -> np.ndarray:
    """R_Ch between prime filters, read through their complementary prime ideals."""
    N = ~membership(E, list(points))
    return _all_pairs(N, E.Chat, N)


def verify_contact_facts(E: EDCLattice) -> dict:
    """a C b iff some R_C-related prime filters contain a and b; the dual
    statement for Ch with prime filters omitting a and b."""
    pts = [F.members for F in enumerate_prime_filters(E.lattice)]
    M = membership(E, pts).astype(np.int64)
    RC = rc_contact_matrix(E, pts).astype(np.int64)
    RCh = rchat_matrix(E, pts).astype(np.int64)
    N = 1 - M
    via_c = (M.T @ RC @ M) > 0
    via_ch = (N.T @ RCh @ N) > 0
    bad_c = via_c != E.C
    bad_ch = via_ch != E.Chat
    return {
        "C": not bad_c.any(),
        "Chat": not bad_ch.any(),
        "witness_C": _first(bad_c),
        "witness_Chat": _first(bad_ch),
    }


def is_transitive(R: np.ndarray) -> bool:
    Ri = R.astype(np.int64)
    return bool(((Ri @ Ri) > 0)[~R].sum() == 0)


def verify_metatheorems(E: EDCLattice, cs: CanonicalStructure | None = None) -> dict:
    """Instances of three implications about the canonical relation.

    (a) U-rich for << and Ch gives R_C = R^c; (b) Nor1-3 give a transitive
    R^c; (c) a non-transitive R^c forces some Nor axiom to fail.
    """
    cs = cs or canonical_structure(E, "filters")
    RC = rc_contact_matrix(E, cs.points)
    axioms = {k: check_extra_axiom(E, k).passed for k in ("URichLl", "URichChat", "Nor1", "Nor2", "Nor3")}
    transitive = is_transitive(cs.Rc)
    equal = bool(np.array_equal(RC, cs.Rc))
    rich = axioms["URichLl"] and axioms["URichChat"]
    nor = axioms["Nor1"] and axioms["Nor2"] and axioms["Nor3"]
    rows = [
        {"claim": "urich_implies_RC_equals_Rc", "applies": rich, "holds": equal if rich else None},
        {"claim": "nor_implies_transitive", "applies": nor, "holds": transitive if nor else None},
        {
            "claim": "nontransitive_implies_nor_failure",
            "applies": not transitive,
            "holds": (not nor) if not transitive else None,
        },
    ]
    return {
        "axioms": axioms,
        "Rc_transitive": transitive,
        "RC_equals_Rc": equal,
        "rows": rows,
        "passed": all(r["holds"] is not False for r in rows),
    }
