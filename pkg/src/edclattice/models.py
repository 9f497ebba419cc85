"""Concrete EDC-lattices: discrete models over adjacency frames and
regular closed / regular open algebras of finite topologies.

Points are ``0..m-1`` internally and printed 1-based, so the point set
``{0, 1}`` is labelled ``{1,2}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .edc import EDCLattice, build_edc, check_extra_axiom
from .errors import FamilyNotClosed, InvalidTopology, NotReflexiveSymmetric, TooLarge
from .lattice import bits, lattice_from_sets, mask_of

POINT_LIMIT = 6
FAMILY_LIMIT = 64


def set_label(mask: int) -> str:
    if not mask:
        return "∅"
    return "{" + ",".join(str(i + 1) for i in bits(mask)) + "}"


def parse_set_label(text: str) -> int:
    """Inverse of :func:`set_label`; accepts ``∅``, ``{}`` and ``{1,3}``."""
    text = text.strip()
    if text in ("∅", "{}", ""):
        return 0
    inner = text.strip("{}")
    return mask_of(int(x) - 1 for x in inner.split(",") if x.strip())


# ------------------------------------------------------------------ relational


@dataclass(frozen=True, eq=False)
class RelationalSystem:
    m: int
    R: np.ndarray

    def __post_init__(self) -> None:
        R = np.asarray(self.R, dtype=bool)
        if self.m < 1 or R.shape != (self.m, self.m):
            raise NotReflexiveSymmetric(f"adjacency must be a {self.m}x{self.m} matrix over a nonempty set")
        if not R.diagonal().all():
            raise NotReflexiveSymmetric(f"R is not reflexive at point {int(np.flatnonzero(~R.diagonal())[0]) + 1}")
        if not np.array_equal(R, R.T):
            i, j = np.argwhere(R != R.T)[0]
            raise NotReflexiveSymmetric(f"R is not symmetric at ({i + 1}, {j + 1})")
        R = R.copy()
        R.setflags(write=False)
        object.__setattr__(self, "R", R)

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[Sequence[int]], symmetrize: bool = False) -> "RelationalSystem":
        R = np.eye(m, dtype=bool)
        for i, j in edges:
            if not (0 <= i < m and 0 <= j < m):
                raise NotReflexiveSymmetric(f"edge ({i}, {j}) outside 0..{m - 1}")
            R[i, j] = True
            if symmetrize:
                R[j, i] = True
        return cls(m, R)

    @property
    def full(self) -> int:
        return (1 << self.m) - 1

    def neighbourhoods(self) -> np.ndarray:
        """``N[x]`` is the bitset of points adjacent to ``x``."""
        weights = 1 << np.arange(self.m, dtype=np.int64)
        return (self.R.astype(np.int64) * weights[None, :]).sum(axis=1)

    def neighbourhood(self, mask: int) -> int:
        N = self.neighbourhoods()
        out = 0
        for x in bits(mask):
            out |= int(N[x])
        return out

    def is_transitive(self) -> bool:
        R = self.R.astype(np.int64)
        return bool(((R @ R > 0) <= self.R).all())

    def edges(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in np.argwhere(self.R) if i < j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RelationalSystem):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.R, other.R)

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class SetFamily:
    parent: RelationalSystem
    sets: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sets", tuple(sorted(set(int(s) for s in self.sets))))
        validate_family(self.parent.m, self.sets)


def validate_family(m: int, sets: Sequence[int]) -> None:
    full = (1 << m) - 1
    present = set(sets)
    for s in sets:
        if s & ~full:
            raise FamilyNotClosed(f"set {set_label(s)} uses points outside 1..{m}", s)
    for need in (0, full):
        if need not in present:
            raise FamilyNotClosed(f"family lacks {set_label(need)}", need)
    ordered = sorted(present)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            for c in (a | b, a & b):
                if c not in present:
                    raise FamilyNotClosed(
                        f"family is not closed: {set_label(c)} from {set_label(a)} and {set_label(b)} is missing", c
                    )


def _image_sets(N: np.ndarray, sets: np.ndarray) -> np.ndarray:
    """Neighbourhood N(a) of each point bitset in ``sets``."""
    out = np.zeros_like(sets)
    for x, nx in enumerate(N):
        out |= np.where((sets >> x) & 1 == 1, nx, 0)
    return out


def relations_on_sets(S: RelationalSystem, sets: Sequence[int]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """C, Ch and << between the given point sets, induced by adjacency.

    a C b iff some x in a is adjacent to some y in b; a Ch b iff some x outside
    a is adjacent to some y outside b; a << b fails iff some x in a is adjacent
    to some y outside b.
    """
    arr = np.asarray(sets, dtype=np.int64)
    full = S.full
    N = S.neighbourhoods()
    Na = _image_sets(N, arr)
    Nc = _image_sets(N, full & ~arr)
    C = (Na[:, None] & arr[None, :]) != 0
    Chat = (Nc[:, None] & (full & ~arr)[None, :]) != 0
    Ll = (Na[:, None] & (full & ~arr)[None, :]) == 0
    return C, Chat, Ll


def full_discrete_edc(S: RelationalSystem, force: bool = False) -> EDCLattice:
    """All subsets of the points; element ``i`` is the point set with bitmask ``i``."""
    if S.m > POINT_LIMIT and not force:
        raise TooLarge(f"{S.m} points exceed the powerset limit of {POINT_LIMIT}")
    sets = list(range(1 << S.m))
    return _edc_on_sets(S, sets)


def sub_discrete_edc(S: RelationalSystem, family: SetFamily | Sequence[int], force: bool = False) -> EDCLattice:
    sets = family.sets if isinstance(family, SetFamily) else tuple(sorted(set(family)))
    if len(sets) > FAMILY_LIMIT and not force:
        raise TooLarge(f"family of {len(sets)} sets exceeds limit {FAMILY_LIMIT}")
    validate_family(S.m, sets)
    return _edc_on_sets(S, list(sets))


def _edc_on_sets(S: RelationalSystem, sets: list[int]) -> EDCLattice:
    L = lattice_from_sets(sets, [set_label(s) for s in sets])
    C, Chat, Ll = relations_on_sets(S, sets)
    return build_edc(L, C, Chat, Ll, regions=sets)


def index_of_set(E: EDCLattice, mask: int) -> int:
    if E.regions is None:
        raise ValueError("structure has no region labels")
    return E.regions.index(mask)


# ------------------------------------------------------------------ topology


@dataclass(frozen=True)
class FiniteTopology:
    m: int
    closed_sets: frozenset[int]

    def __post_init__(self) -> None:
        closed = frozenset(int(s) for s in self.closed_sets)
        object.__setattr__(self, "closed_sets", closed)
        full = (1 << self.m) - 1
        if self.m < 1:
            raise InvalidTopology("a topology needs at least one point")
        if 0 not in closed or full not in closed:
            raise InvalidTopology("closed sets must include the empty set and the whole space")
        for s in closed:
            if s & ~full:
                raise InvalidTopology(f"closed set {set_label(s)} uses points outside 1..{self.m}")
        ordered = sorted(closed)
        for i, a in enumerate(ordered):
            for b in ordered[i + 1:]:
                if a | b not in closed or a & b not in closed:
                    raise InvalidTopology(f"closed sets not closed under union/intersection at {set_label(a)}, {set_label(b)}")
        self._cache_point_closures()

    @classmethod
    def _trusted(cls, m: int, closed: Iterable[int]) -> "FiniteTopology":
        """Skip the quadratic closure check for families closed by construction."""
        T = object.__new__(cls)
        object.__setattr__(T, "m", m)
        object.__setattr__(T, "closed_sets", frozenset(closed))
        T._cache_point_closures()
        return T

    def _cache_point_closures(self) -> None:
        full = (1 << self.m) - 1
        pc = [full] * self.m
        for c in self.closed_sets:
            for x in bits(c):
                pc[x] &= c
        object.__setattr__(self, "_point_closure", tuple(pc))

    @classmethod
    def from_preorder(cls, m: int, edges: Iterable[Sequence[int]]) -> "FiniteTopology":
        """Alexandrov topology: an edge ``(i, j)`` means ``i <= j``; closed sets are down-sets."""
        le = np.eye(m, dtype=bool)
        for i, j in edges:
            if not (0 <= i < m and 0 <= j < m):
                raise InvalidTopology(f"preorder edge ({i}, {j}) outside 0..{m - 1}")
            le[i, j] = True
        for k in range(m):  # Warshall
            le |= le[:, k:k + 1] & le[k:k + 1, :]
        down = [mask_of(np.flatnonzero(le[:, j])) for j in range(m)]
        closed = []
        for s in range(1 << m):
            if all((down[j] & ~s) == 0 for j in bits(s)):
                closed.append(s)
        return cls._trusted(m, closed)

    @classmethod
    def discrete(cls, m: int) -> "FiniteTopology":
        return cls._trusted(m, range(1 << m))

    @property
    def full(self) -> int:
        return (1 << self.m) - 1

    @property
    def open_sets(self) -> frozenset[int]:
        return frozenset(self.full & ~c for c in self.closed_sets)

    def closure(self, a: int) -> int:
        # in a finite space the closure of a set is the union of its point closures
        out = 0
        for x in bits(a):
            out |= self._point_closure[x]  # type: ignore[attr-defined]
        return out

    def interior(self, a: int) -> int:
        return self.full & ~self.closure(self.full & ~a)

    def specialization(self) -> np.ndarray:
        """``le[x, y]`` iff x lies in the closure of {y}."""
        le = np.zeros((self.m, self.m), dtype=bool)
        for y in range(self.m):
            for x in bits(self.closure(1 << y)):
                le[x, y] = True
        return le

    def minimal_open(self, x: int) -> int:
        """Smallest open set containing ``x``: the points whose closure contains x."""
        return mask_of(y for y in range(self.m) if self._point_closure[y] >> x & 1)  # type: ignore[attr-defined]

    def regular_closed(self) -> list[int]:
        return sorted(a for a in self.closed_sets if self.closure(self.interior(a)) == a)

    def regular_open(self) -> list[int]:
        return sorted(a for a in self.open_sets if self.interior(self.closure(a)) == a)


def topology_ops(T: FiniteTopology, a: int, which: str) -> int:
    if which == "closure":
        return T.closure(a)
    if which == "interior":
        return T.interior(a)
    raise ValueError(f"unknown operation {which!r}")


def _closure_of_family(family: set[int], basis: Iterable[int], op) -> set[int]:
    for b in basis:
        family |= {op(b, c) for c in family}
    return family


def topology_from_closed_basis(m: int, basis: Iterable[int]) -> FiniteTopology:
    """Closed sets generated by a closed basis.

    The basis is first closed under finite unions; intersections of such
    sets are then closed under union by distributivity, so the result is a
    topology.
    """
    full = (1 << m) - 1
    basis = set(basis) | {0}
    unions = _closure_of_family(set(basis), list(basis), lambda a, b: a | b)
    closed = _closure_of_family({full}, list(unions), lambda a, b: a & b)
    return FiniteTopology._trusted(m, closed | {0})


def topology_from_open_basis(m: int, basis: Iterable[int]) -> FiniteTopology:
    """Open sets are unions of finite intersections of basis sets."""
    full = (1 << m) - 1
    basis = set(basis) | {full}
    meets = _closure_of_family(set(basis), list(basis), lambda a, b: a & b)
    opens = _closure_of_family({0}, list(meets), lambda a, b: a | b)
    return FiniteTopology._trusted(m, {full & ~o for o in opens | {full}})


def rc_algebra(T: FiniteTopology) -> EDCLattice:
    sets = T.regular_closed()
    full = T.full
    L = lattice_from_sets(
        sets,
        [set_label(s) for s in sets],
        meet_op=lambda a, b: T.closure(T.interior(a & b)),
    )
    ints = [T.interior(s) for s in sets]
    cl_comp = [T.closure(full & ~s) for s in sets]
    C = np.array([[a & b != 0 for b in sets] for a in sets], dtype=bool)
    Chat = np.array([[(ia | ib) != full for ib in ints] for ia in ints], dtype=bool)
    Ll = np.array([[a & cb == 0 for cb in cl_comp] for a in sets], dtype=bool)
    return build_edc(L, C, Chat, Ll, regions=sets)


def ro_algebra(T: FiniteTopology) -> EDCLattice:
    sets = T.regular_open()
    full = T.full
    L = lattice_from_sets(
        sets,
        [set_label(s) for s in sets],
        join_op=lambda a, b: T.interior(T.closure(a | b)),
    )
    cls_ = [T.closure(s) for s in sets]
    C = np.array([[ca & cb != 0 for cb in cls_] for ca in cls_], dtype=bool)
    Chat = np.array([[(a | b) != full for b in sets] for a in sets], dtype=bool)
    Ll = np.array([[ca & ~b == 0 for b in sets] for ca in cls_], dtype=bool)
    return build_edc(L, C, Chat, Ll, regions=sets)


def ro_rc_isomorphism(T: FiniteTopology) -> dict:
    """Check that closure maps RO(T) onto RC(T) preserving everything, with interior as inverse."""
    ro, rc = ro_algebra(T), rc_algebra(T)
    assert ro.regions is not None and rc.regions is not None
    image = [rc.regions.index(T.closure(s)) if T.closure(s) in rc.regions else -1 for s in ro.regions]
    bijective = -1 not in image and sorted(image) == list(range(rc.n))
    inverse = bijective and all(T.interior(rc.regions[image[i]]) == s for i, s in enumerate(ro.regions))
    out = {"bijective": bijective, "inverse_is_interior": inverse}
    if bijective:
        p = np.array(image)
        out["leq"] = bool(np.array_equal(ro.leq, rc.leq[np.ix_(p, p)]))
        out["join"] = bool(np.array_equal(p[ro.join], rc.join[np.ix_(p, p)]))
        out["meet"] = bool(np.array_equal(p[ro.meet], rc.meet[np.ix_(p, p)]))
        for rel in ("C", "Chat", "Ll"):
            out[rel] = bool(np.array_equal(getattr(ro, rel), getattr(rc, rel)[np.ix_(p, p)]))
    out["ok"] = all(v for v in out.values())
    return out


# ------------------------------------------------------------------ properties


def topo_properties(T: FiniteTopology) -> dict:
    """Separation and connectedness flags of a finite space.

    ``compact`` is constant True. ``notes`` lists flags whose value is forced
    by finiteness and therefore says little about the axioms involved.
    """
    full = T.full
    closures = [T.closure(1 << x) for x in range(T.m)]
    t0 = len(set(closures)) == T.m
    t1 = all(c == 1 << x for x, c in enumerate(closures))
    mins = [T.minimal_open(x) for x in range(T.m)]
    t2 = all(mins[x] & mins[y] == 0 for x in range(T.m) for y in range(x + 1, T.m))
    clopen = [c for c in T.closed_sets if (full & ~c) in T.closed_sets]
    connected = sorted(clopen) == [0, full] or (T.m == 1)
    rc = T.regular_closed()
    rc_meets = {full}
    for r in rc:
        rc_meets |= {r & x for x in rc_meets}
    semiregular = all(c in rc_meets for c in T.closed_sets)
    opens = [o for o in T.open_sets if o]
    weakly_regular = semiregular and all(any(T.closure(b) & ~a == 0 for b in opens) for a in opens)
    kappa_normal = True
    for i, a in enumerate(rc):
        for b in rc[i:]:
            if a & b:
                continue
            ua = _open_hull(T, a, mins)
            ub = _open_hull(T, b, mins)
            if ua & ub:
                kappa_normal = False
    discrete = len(T.closed_sets) == 1 << T.m
    notes = []
    if discrete:
        notes.append("discrete space: T0, T1, T2, weak regularity and kappa-normality hold for any discrete space")
    if t1 and not discrete:
        notes.append("finite T1 space that is not discrete: inconsistent")
    if T.m == 1:
        notes.append("one-point space: every flag is degenerate")
    return {
        "T0": t0,
        "T1": t1,
        "T2": t2,
        "compact": True,
        "connected": connected,
        "semiregular": semiregular,
        "weakly_regular": weakly_regular,
        "kappa_normal": kappa_normal,
        "discrete": discrete,
        "notes": notes,
    }


def _open_hull(T: FiniteTopology, a: int, mins: list[int]) -> int:
    out = 0
    for x in bits(a):
        out |= mins[x]
    return out


def check_topo_axiom_equivalences(T: FiniteTopology) -> dict:
    """Compare topological flags with axioms of the regular closed algebra."""
    props = topo_properties(T)
    E = rc_algebra(T)

    def ax(*names: str) -> dict[str, bool]:
        return {k: check_extra_axiom(E, k).passed for k in names}

    rows = []
    con = ax("ConC", "ConChat")
    rows.append({"property": "connected", "topology": props["connected"], "axioms": con})
    nor = ax("Nor1", "Nor2", "Nor3")
    rows.append({"property": "kappa_normal", "topology": props["kappa_normal"], "axioms": nor})
    if props["semiregular"]:
        ext = ax("ExtC", "ExtChat")
        rows.append({"property": "weakly_regular", "topology": props["weakly_regular"], "axioms": ext})
    for r in rows:
        r["agree"] = all(v == r["topology"] for v in r["axioms"].values())
        r["degenerate"] = props["discrete"] or T.m == 1
    return {
        "properties": props,
        "rows": rows,
        "agree": all(r["agree"] for r in rows),
        "rc_size": E.n,
        "closed_sets": [set_label(c) for c in sorted(T.closed_sets)],
    }
