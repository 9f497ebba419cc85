"""Abstract points (clans, E-filters and their refinements) and the
canonical finite spaces they span.

Clans are enumerated twice: by a depth-first scan that checks the clan
conditions directly, and as unions of prime filters that are pairwise
related by R_C. E-filters likewise: principal filters checked directly,
and intersections of R_Ch-related prime filters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .edc import EDCLattice, check_extra_axiom
from .errors import ConstructionMismatch, EmptyPointClass, NotAClan, NotASubstructure, TooLarge
from .lattice import bits, enumerate_prime_filters, mask_of
from .models import FiniteTopology, rc_algebra, ro_algebra, topo_properties, topology_from_closed_basis, topology_from_open_basis
from .representation import EmbeddingReport, check_embedding, rc_contact_matrix, rchat_matrix, stone_images

SCAN_LIMIT = 20
CLIQUE_LIMIT = 64
MAX_CLIQUES = 200_000

CLAN_KINDS = ("all", "maximal", "cluster")
EFILTER_KINDS = ("all", "minimal", "cocluster")
SPACE_KINDS = ("clans", "maxclans", "clusters", "efilters", "minimal-efilters", "coclusters")


@dataclass(frozen=True)
class Clan:
    members: int
    tags: frozenset[str] = frozenset()

    def __contains__(self, a: int) -> bool:
        return bool(self.members >> a & 1)

    def elements(self) -> list[int]:
        return list(bits(self.members))


@dataclass(frozen=True)
class EFilter:
    members: int
    tags: frozenset[str] = frozenset()

    def __contains__(self, a: int) -> bool:
        return bool(self.members >> a & 1)

    def elements(self) -> list[int]:
        return list(bits(self.members))


# ------------------------------------------------------------------ predicates


def is_clan(E: EDCLattice, mask: int) -> bool:
    els = list(bits(mask))
    if not (mask >> E.top & 1) or mask >> E.bottom & 1:
        return False
    for a in els:
        if E.lattice.up(a) & ~mask:
            return False
        for b in els:
            if not E.C[a, b]:
                return False
    out = [x for x in range(E.n) if not mask >> x & 1]
    for a in out:
        for b in out:
            if mask >> int(E.join[a, b]) & 1:
                return False
    return True


def is_cluster(E: EDCLattice, mask: int) -> bool:
    if not is_clan(E, mask):
        return False
    els = list(bits(mask))
    for a in range(E.n):
        if not mask >> a & 1 and all(E.C[a, b] for b in els):
            return False
    return True


def is_efilter(E: EDCLattice, mask: int) -> bool:
    if not (mask >> E.top & 1) or mask >> E.bottom & 1:
        return False
    els = list(bits(mask))
    for a in els:
        if E.lattice.up(a) & ~mask:
            return False
        for b in els:
            if not mask >> int(E.meet[a, b]) & 1:
                return False
    out = [x for x in range(E.n) if not mask >> x & 1]
    return all(E.Chat[a, b] for a in out for b in out)


def is_cocluster(E: EDCLattice, mask: int) -> bool:
    if not is_efilter(E, mask):
        return False
    out = [x for x in range(E.n) if not mask >> x & 1]
    for a in bits(mask):
        if all(E.Chat[a, b] for b in out):
            return False
    return True


# ------------------------------------------------------------------ scans


def _descending(E: EDCLattice) -> list[int]:
    """Elements ordered so that everything above x comes before x."""
    size = E.leq.sum(axis=0)  # number of elements below
    return sorted(range(E.n), key=lambda x: (-int(size[x]), x))


def clans_by_scan(E: EDCLattice) -> list[int]:
    """Depth-first search over up-sets, pruning on the clan conditions."""
    order = _descending(E)
    up = [E.lattice.up(x) & ~(1 << x) for x in range(E.n)]
    out: list[int] = []

    def rec(i: int, inside: int, outside: int) -> None:
        if i == len(order):
            out.append(inside)
            return
        x = order[i]
        # x in: strict upper bounds all in, contact with every member incl. itself
        if x != E.bottom and up[x] & ~inside == 0 and E.C[x, x] and all(E.C[x, y] for y in bits(inside)):
            rec(i + 1, inside | 1 << x, outside)
        # x out: top must be in, and joins of excluded pairs stay out
        if x != E.top and all(not inside >> int(E.join[x, y]) & 1 for y in bits(outside | 1 << x)):
            rec(i + 1, inside, outside | 1 << x)

    rec(0, 0, 0)
    return sorted(out)


def efilters_by_scan(E: EDCLattice) -> list[int]:
    """Every filter of a finite lattice is principal; keep the ``[a)`` meeting E-fil 2."""
    found = set()
    for a in range(E.n):
        if a == E.bottom:
            continue
        F = E.lattice.up(a)
        out = np.array([not F >> x & 1 for x in range(E.n)])
        if E.Chat[np.ix_(out, out)].all():
            found.add(F)
    return sorted(found)


def _antichain_cliques(rel: np.ndarray, comparable: np.ndarray, limit: int) -> list[list[int]]:
    """Nonempty sets of vertices pairwise related by ``rel`` and pairwise incomparable."""
    p = rel.shape[0]
    ok = rel & ~comparable
    cliques: list[list[int]] = []

    def rec(current: list[int], cands: list[int]) -> None:
        for k, v in enumerate(cands):
            if not rel[v, v]:
                continue
            nxt = current + [v]
            cliques.append(nxt)
            if len(cliques) > limit:
                raise TooLarge(f"more than {limit} cliques; pass force to lift the limit")
            rec(nxt, [w for w in cands[k + 1:] if ok[v, w]])

    rec([], list(range(p)))
    return cliques


def _prime_points(E: EDCLattice) -> tuple[list[int], np.ndarray]:
    pts = [F.members for F in enumerate_prime_filters(E.lattice)]
    comparable = np.array(
        [[a != b and (a & ~b == 0 or b & ~a == 0) for b in pts] for a in pts], dtype=bool
    ).reshape(len(pts), len(pts))
    return pts, comparable


def clans_by_cliques(E: EDCLattice, force: bool = False) -> list[int]:
    pts, comparable = _prime_points(E)
    if not pts:
        return []
    rel = rc_contact_matrix(E, pts)
    cliques = _antichain_cliques(rel, comparable, 1 << 62 if force else MAX_CLIQUES)
    out = set()
    for q in cliques:
        u = 0
        for i in q:
            u |= pts[i]
        out.add(u)
    return sorted(out)


def efilters_by_cliques(E: EDCLattice, force: bool = False) -> list[int]:
    pts, comparable = _prime_points(E)
    if not pts:
        return []
    rel = rchat_matrix(E, pts)
    cliques = _antichain_cliques(rel, comparable, 1 << 62 if force else MAX_CLIQUES)
    out = set()
    for q in cliques:
        u = E.lattice.full
        for i in q:
            u &= pts[i]
        out.add(u)
    return sorted(out)


@dataclass
class Enumeration:
    """Both constructions of a point class and whether they were compared."""

    scan: list[int] | None
    cliques: list[int]
    compared: bool

    @property
    def agree(self) -> bool | None:
        return self.scan == self.cliques if self.compared else None


def _enumerate(
    E: EDCLattice,
    scan: Callable[[EDCLattice], list[int]],
    cliques: Callable[..., list[int]],
    force: bool,
) -> Enumeration:
    if E.n > CLIQUE_LIMIT and not force:
        raise TooLarge(f"{E.n} elements exceed the point enumeration limit {CLIQUE_LIMIT}")
    via_cliques = cliques(E, force=force)
    if E.n <= SCAN_LIMIT or force:
        return Enumeration(scan(E), via_cliques, True)
    return Enumeration(None, via_cliques, False)


def clan_enumeration(E: EDCLattice, force: bool = False) -> Enumeration:
    return _enumerate(E, clans_by_scan, clans_by_cliques, force)


def efilter_enumeration(E: EDCLattice, force: bool = False) -> Enumeration:
    return _enumerate(E, efilters_by_scan, efilters_by_cliques, force)


def _maximal(masks: list[int]) -> set[int]:
    return {a for a in masks if not any(b != a and a & ~b == 0 for b in masks)}


def _minimal(masks: list[int]) -> set[int]:
    return {a for a in masks if not any(b != a and b & ~a == 0 for b in masks)}


def enumerate_clans(E: EDCLattice, kind: str = "all", force: bool = False) -> list[Clan]:
    if kind not in CLAN_KINDS:
        raise ValueError(f"kind must be one of {CLAN_KINDS}")
    en = clan_enumeration(E, force)
    if en.compared and not en.agree:
        raise ConstructionMismatch("clan scan and clique construction disagree")
    masks = en.cliques
    maximal = _maximal(masks)
    clans = []
    for m in masks:
        tags = set()
        if m in maximal:
            tags.add("maximal")
        if is_cluster(E, m):
            tags.add("cluster")
        clans.append(Clan(m, frozenset(tags)))
    if kind == "all":
        return clans
    return [c for c in clans if kind in c.tags]


def enumerate_efilters(E: EDCLattice, kind: str = "all", force: bool = False) -> list[EFilter]:
    if kind not in EFILTER_KINDS:
        raise ValueError(f"kind must be one of {EFILTER_KINDS}")
    en = efilter_enumeration(E, force)
    if en.compared and not en.agree:
        raise ConstructionMismatch("E-filter scan and clique construction disagree")
    masks = en.cliques
    minimal = _minimal(masks)
    out = []
    for m in masks:
        tags = set()
        if m in minimal:
            tags.add("minimal")
        if is_cocluster(E, m):
            tags.add("cocluster")
        out.append(EFilter(m, frozenset(tags)))
    if kind == "all":
        return out
    return [f for f in out if kind in f.tags]


# ------------------------------------------------------------------ spaces


@dataclass(frozen=True, eq=False)
class PointSpace:
    kind: str
    points: tuple
    basis_kind: str
    basis: tuple[int, ...]
    topology: FiniteTopology
    h_source: EDCLattice

    @property
    def size(self) -> int:
        return len(self.points)

    def h(self, a: int) -> int:
        return self.basis[a]


_SPACE_SOURCES = {
    "clans": ("closed", "all"),
    "maxclans": ("closed", "maximal"),
    "clusters": ("closed", "cluster"),
    "efilters": ("open", "all"),
    "minimal-efilters": ("open", "minimal"),
    "coclusters": ("open", "cocluster"),
}


def build_point_space(E: EDCLattice, points: str = "clans", force: bool = False) -> PointSpace:
    if points not in _SPACE_SOURCES:
        raise ValueError(f"points must be one of {SPACE_KINDS}")
    basis_kind, kind = _SPACE_SOURCES[points]
    pts: Sequence[Clan | EFilter]
    if basis_kind == "closed":
        pts = enumerate_clans(E, kind, force)
    else:
        pts = enumerate_efilters(E, kind, force)
    if not pts:
        raise EmptyPointClass(f"no {points} in this structure")
    basis = tuple(stone_images(E, [p.members for p in pts]))
    m = len(pts)
    if basis_kind == "closed":
        T = topology_from_closed_basis(m, basis)
    else:
        T = topology_from_open_basis(m, basis)
    return PointSpace(points, tuple(pts), basis_kind, basis, T, E)


# ------------------------------------------------------------------ embedding quality


def _sub_index(images: list[int], target: EDCLattice) -> list[int] | None:
    regions = target.regions
    assert regions is not None
    pos = {r: i for i, r in enumerate(regions)}
    if any(s not in pos for s in images):
        return None
    return [pos[s] for s in images]


def _exists2(A: np.ndarray, K: np.ndarray, B: np.ndarray) -> np.ndarray:
    """``out[x, y]``: some i, j with A[x, i], K[i, j], B[y, j]."""
    return (A.astype(np.int64) @ K.astype(np.int64) @ B.T.astype(np.int64)) > 0


def _clause(premise: np.ndarray, conclusion: np.ndarray) -> dict:
    bad = premise & ~conclusion
    idx = np.argwhere(bad)
    return {"holds": not bad.any(), "witness": [int(x) for x in idx[0]] if len(idx) else []}


def c_separability(D2: EDCLattice, sub: Sequence[int]) -> dict[str, dict]:
    """The three C-separability clauses for the sublattice ``sub`` of ``D2``."""
    s = np.asarray(sub, dtype=np.int64)
    le = D2.leq
    ones = D2.join == D2.top
    notC1 = ~D2.C[np.ix_(s, s)]
    return {
        "C": _clause(~D2.C, _exists2(le[:, s], notC1, le[:, s])),
        "Chat": _clause(~D2.Chat, _exists2(ones[:, s], notC1, ones[:, s])),
        "Ll": _clause(D2.Ll, _exists2(le[:, s], notC1, ones[:, s])),
    }


def chat_separability(D2: EDCLattice, sub: Sequence[int]) -> dict[str, dict]:
    """Order duals of the C-separability clauses."""
    s = np.asarray(sub, dtype=np.int64)
    ge = D2.leq.T
    zeros = D2.meet == D2.bottom
    notCh1 = ~D2.Chat[np.ix_(s, s)]
    return {
        "C": _clause(~D2.C, _exists2(zeros[:, s], notCh1, zeros[:, s])),
        "Chat": _clause(~D2.Chat, _exists2(ge[:, s], notCh1, ge[:, s])),
        "Ll": _clause(D2.Ll, _exists2(zeros[:, s], notCh1, ge[:, s])),
    }


def is_dense(D2: EDCLattice, sub: Sequence[int]) -> dict:
    s = np.asarray(sub, dtype=np.int64)
    ok = (D2.leq[np.ix_(s, np.arange(D2.n))] & (s != D2.bottom)[:, None]).any(axis=0)
    ok[D2.bottom] = True
    bad = np.flatnonzero(~ok)
    return {"holds": not len(bad), "witness": [int(bad[0])] if len(bad) else []}


def is_dual_dense(D2: EDCLattice, sub: Sequence[int]) -> dict:
    s = np.asarray(sub, dtype=np.int64)
    ok = (D2.leq[np.ix_(np.arange(D2.n), s)] & (s != D2.top)[None, :]).any(axis=1)
    ok[D2.top] = True
    bad = np.flatnonzero(~ok)
    return {"holds": not len(bad), "witness": [int(bad[0])] if len(bad) else []}


@dataclass
class Clause:
    name: str
    holds: bool
    required: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"clause": self.name, "holds": self.holds, "required": self.required, **self.detail}


@dataclass
class TopologicalReport:
    space: str
    basis_kind: str
    points: int
    closed_sets: int
    algebra_size: int
    preconditions: dict[str, bool]
    clauses: list[Clause]
    notes: list[str]

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.clauses if c.required)

    def __getitem__(self, name: str) -> Clause:
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "space": self.space,
            "basis": self.basis_kind,
            "points": self.points,
            "closed_sets": self.closed_sets,
            "algebra_size": self.algebra_size,
            "preconditions": dict(self.preconditions),
            "clauses": [c.to_dict() for c in self.clauses],
            "notes": list(self.notes),
            "passed": self.passed,
        }


CLOSED_PRECONDITIONS = ("ExtOhat", "URichLl", "URichChat")
OPEN_PRECONDITIONS = ("ExtO", "ORichLl", "ORichC")


def verify_topological_representation(E: EDCLattice, space: PointSpace) -> TopologicalReport:
    """Check the canonical map into RC (closed basis) or RO (open basis).

    Every clause is evaluated; a clause counts toward the verdict only when
    the axioms it depends on hold in ``E``.
    """
    closed = space.basis_kind == "closed"
    T = space.topology
    target = rc_algebra(T) if closed else ro_algebra(T)
    pre_names = CLOSED_PRECONDITIONS if closed else OPEN_PRECONDITIONS
    extra = ("ExtC", "Nor1") if closed else ("ExtChat", "Nor2")
    pre = {k: check_extra_axiom(E, k).passed for k in pre_names + extra}
    # the T1 and T2 point classes only represent faithfully under Ext and Nor
    needed = list(pre_names)
    if space.kind in ("maxclans", "clusters", "minimal-efilters", "coclusters"):
        needed.append(extra[0])
    if space.kind in ("clusters", "coclusters"):
        needed.append(extra[1])
    rich = all(pre[k] for k in needed)
    clauses: list[Clause] = []
    notes = ["finite space: compactness holds trivially"]
    images = list(space.basis)
    idx = _sub_index(images, target)
    in_algebra = idx is not None
    kind_word = "regular closed" if closed else "regular open"
    clauses.append(Clause(f"images_{'regular_closed' if closed else 'regular_open'}", in_algebra, rich,
                          {} if in_algebra else {"witness": [next(a for a, s in enumerate(images) if s not in set(target.regions or ()))]}))
    full = T.full
    if in_algebra:
        assert idx is not None
        p = np.asarray(idx, dtype=np.int64)
        if closed:
            ops = {"bottom": 0, "top": full, "join": lambda x, y: x | y,
                   "meet": lambda x, y: T.closure(T.interior(x & y))}
        else:
            ops = {"bottom": 0, "top": full, "meet": lambda x, y: x & y,
                   "join": lambda x, y: T.interior(T.closure(x | y))}
        emb: EmbeddingReport = check_embedding(
            E, images, ops,
            target.C[np.ix_(p, p)], target.Chat[np.ix_(p, p)], target.Ll[np.ix_(p, p)], space.size,
        )
        lattice_ok = emb.injective and all(emb.preserves[k] for k in ("bottom", "top", "join", "meet", "leq"))
        clauses.append(Clause("lattice_embedding", lattice_ok, rich,
                              {"witnesses": {k: list(v) for k, v in emb.witnesses.items() if k not in ("C", "Chat", "Ll")}}))
        for name, rel in (("contact", "C"), ("non_tangential", "Ll"), ("dual_contact", "Chat")):
            clauses.append(Clause(name, emb.preserves[rel], rich, {"witness": list(emb.witnesses.get(rel, ()))}))
        if closed:
            dd = is_dual_dense(target, idx)
            clauses.append(Clause("dual_dense", dd["holds"], rich, {"witness": dd["witness"]}))
            sep = c_separability(target, idx)
            prefix = "C_separability"
        else:
            dd = is_dense(target, idx)
            clauses.append(Clause("dense", dd["holds"], rich, {"witness": dd["witness"]}))
            sep = chat_separability(target, idx)
            prefix = "Chat_separability"
        for k, v in sep.items():
            clauses.append(Clause(f"{prefix}_{k}", v["holds"], rich, {"witness": v["witness"]}))
        all_sep = all(v["holds"] for v in sep.values())
        rich_pair = ("URichLl", "URichChat") if closed else ("ORichLl", "ORichC")
        embedded = lattice_ok and all(emb.preserves[k] for k in ("C", "Chat", "Ll"))
        # a separable embedding forces the rich axioms; without an embedding there is nothing to test
        limitation = not (embedded and all_sep) or all(check_extra_axiom(E, k).passed for k in rich_pair)
        clauses.append(Clause("limitation", limitation, True,
                              {"embedded": embedded, "separable": all_sep, "needs": list(rich_pair)}))
    else:
        notes.append(f"some h(a) is not {kind_word}; embedding clauses skipped")

    props = topo_properties(T)
    clauses.append(Clause("T0", props["T0"], True))
    pts = [p.members for p in space.points]
    if space.kind in ("maxclans", "minimal-efilters"):
        singletons = all(T.closure(1 << i) == 1 << i for i in range(space.size))
        clauses.append(Clause("closed_points", singletons, rich))
    if space.kind == "clusters":
        ok, wit = _pair_separation(E, pts, lambda a, b: E.join[a, b] == E.top, outside=True)
        clauses.append(Clause("cluster_separation", ok, pre["Nor1"], {"witnesses": wit}))
    if space.kind == "coclusters":
        ok, wit = _pair_separation(E, pts, lambda a, b: E.meet[a, b] == E.bottom, outside=False)
        clauses.append(Clause("cocluster_separation", ok, pre["Nor2"], {"witnesses": wit}))
    if not rich:
        missing = [k for k in needed if not pre[k]]
        notes.append("preconditions not met: " + ", ".join(missing))
    return TopologicalReport(
        space.kind, space.basis_kind, space.size, len(T.closed_sets), target.n, pre, clauses, notes
    )


def _pair_separation(E: EDCLattice, pts: list[int], good, outside: bool) -> tuple[bool, list]:
    """For each pair of distinct points find a, b (outside or inside them) with ``good(a, b)``."""
    wit = []
    ok = True
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            A = [a for a in range(E.n) if bool(pts[i] >> a & 1) != outside]
            B = [b for b in range(E.n) if bool(pts[j] >> b & 1) != outside]
            found = next(((a, b) for a in A for b in B if good(a, b)), None)
            if found is None:
                ok = False
                wit.append([i, j, None, None])
            else:
                wit.append([i, j, found[0], found[1]])
    return ok, wit


# ------------------------------------------------------------------ clan boundary


def clan_boundary_characterization(E: EDCLattice, clan: Clan | int, a: int, space: PointSpace | None = None) -> dict:
    """Three conditions on a clan and an element, expected to coincide.

    (I) every c with a + c = 1 lies in the clan; (II) the clan lies in the
    closure of the complement of h(a); (III) some prime filter inside the
    clan omits a.
    """
    mask = clan.members if isinstance(clan, Clan) else int(clan)
    E.lattice.check_index(a)
    if not is_clan(E, mask):
        raise NotAClan(f"{sorted(bits(mask))} is not a clan")
    one = all(mask >> c & 1 for c in range(E.n) if E.join[a, c] == E.top)
    primes = [F.members for F in enumerate_prime_filters(E.lattice)]
    three = any(U & ~mask == 0 and not U >> a & 1 for U in primes)
    if space is None or space.basis_kind != "closed":
        space = build_point_space(E, "clans")
    pts = [p.members for p in space.points]
    if mask not in pts:
        raise NotAClan("clan is not a point of the given space")
    i = pts.index(mask)
    T = space.topology
    two = bool(T.closure(T.full & ~space.basis[a]) >> i & 1)
    return {"I": one, "II": two, "III": three, "equivalent": one == two == three}


# ------------------------------------------------------------------ preservation


def check_substructure(D1: EDCLattice, D2: EDCLattice, inclusion: Sequence[int]) -> None:
    f = np.asarray(inclusion, dtype=np.int64)
    if f.shape != (D1.n,) or len(set(f.tolist())) != D1.n or (f < 0).any() or (f >= D2.n).any():
        raise NotASubstructure("inclusion must be an injective map into the larger structure")
    if f[D1.bottom] != D2.bottom or f[D1.top] != D2.top:
        raise NotASubstructure("inclusion does not preserve the bounds")
    if not np.array_equal(f[D1.join], D2.join[np.ix_(f, f)]):
        raise NotASubstructure("inclusion does not preserve joins")
    if not np.array_equal(f[D1.meet], D2.meet[np.ix_(f, f)]):
        raise NotASubstructure("inclusion does not preserve meets")
    for rel in ("C", "Chat", "Ll"):
        if not np.array_equal(getattr(D1, rel), getattr(D2, rel)[np.ix_(f, f)]):
            raise NotASubstructure(f"{rel} is not the restriction of the larger structure")


U_TRANSFER = (("ExtC", True), ("ConC", False), ("Nor1", False), ("URichLl", False), ("URichChat", False))
O_TRANSFER = (("ExtChat", True), ("ConChat", False), ("Nor2", False), ("ORichLl", False), ("ORichC", False))


def verify_preservation_lemmas(D1: EDCLattice, D2: EDCLattice, inclusion: Sequence[int]) -> dict:
    """Axiom transfer between a substructure and the whole.

    Under C-separability the axioms ExtC (also needing dual density), ConC,
    Nor1, URichLl and URichChat hold in both or neither; under
    Ch-separability the same for ExtChat (needing density), ConChat, Nor2,
    ORichLl and ORichC.
    """
    check_substructure(D1, D2, inclusion)
    sub = list(inclusion)
    csep = c_separability(D2, sub)
    chsep = chat_separability(D2, sub)
    dd = is_dual_dense(D2, sub)
    dn = is_dense(D2, sub)
    c_ok = all(v["holds"] for v in csep.values())
    ch_ok = all(v["holds"] for v in chsep.values())
    rows = []
    for group, sep_ok, density, items in (
        ("C", c_ok, dd["holds"], U_TRANSFER),
        ("Chat", ch_ok, dn["holds"], O_TRANSFER),
    ):
        for axiom, needs_density in items:
            applies = sep_ok and (density or not needs_density)
            v1 = check_extra_axiom(D1, axiom).passed
            v2 = check_extra_axiom(D2, axiom).passed
            rows.append({
                "group": group,
                "axiom": axiom,
                "applies": applies,
                "sub": v1,
                "whole": v2,
                "holds": (v1 == v2) if applies else None,
            })
    return {
        "C_separability": csep,
        "Chat_separability": chsep,
        "dual_dense": dd,
        "dense": dn,
        "rows": rows,
        "passed": all(r["holds"] is not False for r in rows),
    }


def image_inclusion(E: EDCLattice, space: PointSpace) -> tuple[EDCLattice, list[int]]:
    """The algebra of the space and the positions of ``h(a)`` inside it."""
    target = rc_algebra(space.topology) if space.basis_kind == "closed" else ro_algebra(space.topology)
    idx = _sub_index(list(space.basis), target)
    if idx is None:
        raise NotASubstructure("h does not land in the algebra of the space")
    return target, idx


def mask_to_points(mask: int) -> list[int]:
    return list(bits(mask))


__all__ = [
    "SPACE_KINDS", "CLAN_KINDS", "EFILTER_KINDS",
    "Clan", "EFilter", "PointSpace", "TopologicalReport", "Clause",
    "is_clan", "is_cluster", "is_efilter", "is_cocluster",
    "clans_by_scan", "clans_by_cliques", "efilters_by_scan", "efilters_by_cliques",
    "clan_enumeration", "efilter_enumeration", "enumerate_clans", "enumerate_efilters",
    "build_point_space", "verify_topological_representation", "clan_boundary_characterization",
    "c_separability", "chat_separability", "is_dense", "is_dual_dense",
    "check_substructure", "verify_preservation_lemmas", "image_inclusion", "mask_of",
]
