"""Finite bounded distributive lattices, filters, ideals and the extension lemmas.

Elements are dense indices ``0..n-1``. Subsets of the carrier are Python ints
used as bitsets (bit ``i`` set means element ``i`` is a member). Wherever a
choice among several valid answers exists, the numerically least bitset wins.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    IndexOutOfRange,
    KindMismatch,
    NoBounds,
    NotALattice,
    NotAPartialOrder,
    NotDisjoint,
    NotDistributive,
    TooLarge,
)

SCAN_LIMIT = 24

FILTER_KINDS = ("filter", "prime-filter")
IDEAL_KINDS = ("ideal", "prime-ideal")


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True, eq=False)
class Lattice:
    leq: np.ndarray
    join: np.ndarray
    meet: np.ndarray
    bottom: int
    top: int
    labels: tuple[str, ...] | None = None

    @property
    def n(self) -> int:
        return self.leq.shape[0]

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def label(self, a: int) -> str:
        if self.labels is not None:
            return self.labels[a]
        return str(a)

    def check_index(self, *elements: int) -> None:
        for a in elements:
            if not (0 <= int(a) < self.n):
                raise IndexOutOfRange(f"element {a} outside 0..{self.n - 1}")

    def up(self, a: int) -> int:
        return mask_of(np.flatnonzero(self.leq[a]))

    def down(self, a: int) -> int:
        return mask_of(np.flatnonzero(self.leq[:, a]))

    def dual(self) -> "Lattice":
        return Lattice(
            leq=_frozen(self.leq.T),
            join=self.meet,
            meet=self.join,
            bottom=self.top,
            top=self.bottom,
            labels=self.labels,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return (
            self.bottom == other.bottom
            and self.top == other.top
            and np.array_equal(self.leq, other.leq)
            and np.array_equal(self.join, other.join)
            and np.array_equal(self.meet, other.meet)
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class ElementSet:
    members: int
    kind: str = "plain"

    def __contains__(self, a: int) -> bool:
        return bool(self.members >> a & 1)

    def elements(self) -> list[int]:
        return list(bits(self.members))

    def __len__(self) -> int:
        return bin(self.members).count("1")


def _bounds_of(leq: np.ndarray, pair: tuple[int, int], upper: bool) -> int:
    a, b = pair
    if upper:
        cand = np.flatnonzero(leq[a] & leq[b])
        best = [c for c in cand if leq[c, cand].all()]
    else:
        cand = np.flatnonzero(leq[:, a] & leq[:, b])
        best = [c for c in cand if leq[cand, c].all()]
    if len(best) != 1:
        kind = "least upper" if upper else "greatest lower"
        raise NotALattice(f"elements {a} and {b} have no {kind} bound", (a, b))
    return int(best[0])


def validate_lattice(
    leq: Sequence[Sequence[bool]] | np.ndarray,
    join: Sequence[Sequence[int]] | np.ndarray | None = None,
    meet: Sequence[Sequence[int]] | np.ndarray | None = None,
    labels: Sequence[str] | None = None,
) -> Lattice:
    """Build a :class:`Lattice` from raw tables, checking every invariant.

    Missing ``join``/``meet`` tables are synthesized from ``leq``. Supplied
    tables must agree with the least upper and greatest lower bounds.
    """
    leq = np.asarray(leq, dtype=bool)
    if leq.ndim != 2 or leq.shape[0] != leq.shape[1] or leq.shape[0] == 0:
        raise NotAPartialOrder("order table must be a non-empty square matrix")
    n = leq.shape[0]
    if not leq.diagonal().all():
        i = int(np.flatnonzero(~leq.diagonal())[0])
        raise NotAPartialOrder(f"order is not reflexive at {i}")
    both = leq & leq.T
    np.fill_diagonal(both, False)
    if both.any():
        i, j = (int(x) for x in np.argwhere(both)[0])
        raise NotAPartialOrder(f"order is not antisymmetric: {i} <= {j} <= {i}")
    # transitivity: leq∘leq ⊆ leq
    comp = (leq.astype(np.int32) @ leq.astype(np.int32)) > 0
    if (comp & ~leq).any():
        i, j = (int(x) for x in np.argwhere(comp & ~leq)[0])
        raise NotAPartialOrder(f"order is not transitive at ({i}, {j})")

    bottoms = np.flatnonzero(leq.all(axis=1))
    tops = np.flatnonzero(leq.all(axis=0))
    if len(bottoms) != 1 or len(tops) != 1:
        raise NoBounds("order has no least or no greatest element")
    bottom, top = int(bottoms[0]), int(tops[0])

    lub = np.empty((n, n), dtype=np.int64)
    glb = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            lub[a, b] = lub[b, a] = _bounds_of(leq, (a, b), True)
            glb[a, b] = glb[b, a] = _bounds_of(leq, (a, b), False)
    if join is not None:
        join = np.asarray(join, dtype=np.int64)
        if join.shape != (n, n) or not np.array_equal(join, lub):
            bad = np.argwhere(join != lub) if join.shape == (n, n) else [(0, 0)]
            raise NotALattice("join table disagrees with least upper bounds", tuple(int(x) for x in bad[0]))
    if meet is not None:
        meet = np.asarray(meet, dtype=np.int64)
        if meet.shape != (n, n) or not np.array_equal(meet, glb):
            bad = np.argwhere(meet != glb) if meet.shape == (n, n) else [(0, 0)]
            raise NotALattice("meet table disagrees with greatest lower bounds", tuple(int(x) for x in bad[0]))

    # meet(a, join(b, c)) == join(meet(a, b), meet(a, c)), scanned in (a, b, c) order
    lhs = glb[np.arange(n)[:, None, None], lub[None, :, :]]
    rhs = lub[glb[:, :, None], glb[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        w = tuple(int(x) for x in bad[0])
        raise NotDistributive(f"distributivity fails at (a, b, c) = {w}", w)  # type: ignore[arg-type]

    if labels is not None and len(labels) != n:
        raise NotAPartialOrder("label count does not match element count")
    return Lattice(
        leq=_frozen(leq),
        join=_frozen(lub),
        meet=_frozen(glb),
        bottom=bottom,
        top=top,
        labels=tuple(labels) if labels is not None else None,
    )


def lattice_from_sets(
    sets: Sequence[int],
    labels: Sequence[str] | None = None,
    join_op: Callable[[int, int], int] | None = None,
    meet_op: Callable[[int, int], int] | None = None,
) -> Lattice:
    """Lattice of a family of point bitsets ordered by inclusion.

    Join and meet default to union and intersection; regular closed and
    regular open carriers pass their own operations. The family must be
    closed under whichever operations are used; the caller checks that.
    """
    sets = list(sets)
    # wide point sets (more than 62 points) fall back to Python ints
    dtype = np.int64 if max(sets) < 1 << 62 else object
    arr = np.array(sets, dtype=dtype)
    order = np.argsort(arr, kind="stable")
    ranked = arr[order]

    def locate(values: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(ranked, values)
        return order[pos]

    leq = ((arr[:, None] & ~arr[None, :]) == 0).astype(bool)
    if join_op is None:
        join = locate(arr[:, None] | arr[None, :])
    else:
        join = locate(np.array([[join_op(a, b) for b in sets] for a in sets], dtype=dtype))
    if meet_op is None:
        meet = locate(arr[:, None] & arr[None, :])
    else:
        meet = locate(np.array([[meet_op(a, b) for b in sets] for a in sets], dtype=dtype))
    sizes = [bin(s).count("1") for s in sets]
    bottom = sizes.index(min(sizes))
    top = sizes.index(max(sizes))
    return Lattice(_frozen(leq), _frozen(join.astype(np.int64)), _frozen(meet.astype(np.int64)),
                   bottom, top, tuple(labels) if labels is not None else None)


def chain(n: int) -> Lattice:
    leq = np.triu(np.ones((n, n), dtype=bool))
    return validate_lattice(leq)


def powerset_lattice(k: int) -> Lattice:
    from .models import set_label

    sets = list(range(1 << k))
    return lattice_from_sets(sets, [set_label(s) for s in sets])


# ---------------------------------------------------------------- predicates


def is_filter(L: Lattice, mask: int) -> bool:
    if not mask >> L.top & 1:
        return False
    members = list(bits(mask))
    for a in members:
        if L.up(a) & ~mask:
            return False
    for i, a in enumerate(members):
        for b in members[i:]:
            if not mask >> int(L.meet[a, b]) & 1:
                return False
    return True


def is_ideal(L: Lattice, mask: int) -> bool:
    return is_filter(L.dual(), mask)


def is_prime_filter(L: Lattice, mask: int) -> bool:
    if not is_filter(L, mask) or mask >> L.bottom & 1:
        return False
    n = L.n
    for a in range(n):
        for b in range(a, n):
            if mask >> int(L.join[a, b]) & 1 and not (mask >> a & 1 or mask >> b & 1):
                return False
    return True


def is_prime_ideal(L: Lattice, mask: int) -> bool:
    return is_prime_filter(L.dual(), mask)


def _is_kind(L: Lattice, S: ElementSet, kinds: tuple[str, ...]) -> bool:
    if S.kind in kinds:
        return True
    if S.kind == "plain":
        check = is_filter if kinds == FILTER_KINDS else is_ideal
        return check(L, S.members)
    return False


# ---------------------------------------------------------------- operations


def principal_filter_ideal(L: Lattice, a: int, direction: str = "up") -> ElementSet:
    """``[a)`` for ``direction='up'`` and ``(a]`` for ``direction='down'``."""
    L.check_index(a)
    if direction == "up":
        return ElementSet(L.up(a), "filter")
    if direction == "down":
        return ElementSet(L.down(a), "ideal")
    raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")


def filter_sum(L: Lattice, A: ElementSet, B: ElementSet) -> ElementSet:
    """Smallest filter (ideal) containing two filters (ideals)."""
    if A.kind in FILTER_KINDS and B.kind in FILTER_KINDS:
        op, closure, kind = L.meet, L.up, "filter"
    elif A.kind in IDEAL_KINDS and B.kind in IDEAL_KINDS:
        op, closure, kind = L.join, L.down, "ideal"
    else:
        raise KindMismatch(f"cannot sum a {A.kind} with a {B.kind}")
    out = 0
    for a in bits(A.members):
        for b in bits(B.members):
            out |= closure(int(op[a, b]))
    return ElementSet(out, kind)


def join_irreducibles(L: Lattice) -> list[int]:
    """Nonzero elements with exactly one lower cover."""
    out = []
    strict = L.leq & ~np.eye(L.n, dtype=bool)
    for j in range(L.n):
        if j == L.bottom:
            continue
        below = np.flatnonzero(strict[:, j])
        covers = [x for x in below if not (strict[x, below]).any()]
        if len(covers) == 1:
            out.append(j)
    return out


def enumerate_prime_filters(L: Lattice) -> list[ElementSet]:
    """All prime filters, ordered by bitset value.

    In a finite distributive lattice each prime filter is ``[j)`` for a unique
    join-irreducible ``j``.
    """
    masks = sorted(L.up(j) for j in join_irreducibles(L))
    return [ElementSet(m, "prime-filter") for m in masks]


def enumerate_prime_ideals(L: Lattice) -> list[ElementSet]:
    """Prime ideals, found as prime filters of the order dual."""
    return [ElementSet(s.members, "prime-ideal") for s in enumerate_prime_filters(L.dual())]


def _all_subsets(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def prime_filters_by_scan(L: Lattice, force: bool = False) -> list[ElementSet]:
    """Exhaustive scan over all ``2**n`` subsets, kept as an independent oracle."""
    n = L.n
    if n > SCAN_LIMIT and not force:
        raise TooLarge(f"subset scan over {n} elements refused (limit {SCAN_LIMIT})")
    S = _all_subsets(n)

    def has(i: int) -> np.ndarray:
        return (S >> i) & 1 == 1

    ok = has(L.top) & ~has(L.bottom)
    for a in range(n):
        ha = has(a)
        for b in range(n):
            if a == b:
                continue
            if L.leq[a, b]:
                ok &= ~ha | has(b)
            if a < b:
                hb = has(b)
                ok &= ~(ha & hb) | has(int(L.meet[a, b]))
                ok &= ~has(int(L.join[a, b])) | ha | hb
    return [ElementSet(int(m), "prime-filter") for m in np.flatnonzero(ok)]


def strong_filter_extension(L: Lattice, F0: ElementSet, I0: ElementSet) -> ElementSet:
    """Prime filter ``F ⊇ F0`` missing ``I0`` with the strong witness property.

    Every filter of a finite lattice is principal, so the filters extending
    ``F0`` and avoiding ``I0`` are the ``[g)`` with ``g <= min F0`` and
    ``g ∉ I0``. The maximal ones correspond to the minimal such ``g``.
    """
    if not _is_kind(L, F0, FILTER_KINDS):
        raise KindMismatch("F0 must be a filter")
    if not _is_kind(L, I0, IDEAL_KINDS):
        raise KindMismatch("I0 must be an ideal")
    if F0.members & I0.members:
        raise NotDisjoint("F0 and I0 intersect")
    f0 = _generator(L, F0.members, L.meet)
    cands = [g for g in range(L.n) if L.leq[g, f0] and g not in I0]
    minimal = [g for g in cands if not any(h != g and L.leq[h, g] for h in cands)]
    F = min(L.up(g) for g in minimal)
    return ElementSet(F, "prime-filter")


def strong_ideal_extension(L: Lattice, F0: ElementSet, I0: ElementSet) -> ElementSet:
    D = L.dual()
    I = strong_filter_extension(D, ElementSet(I0.members, "filter"), ElementSet(F0.members, "ideal"))
    return ElementSet(I.members, "prime-ideal")


def strong_witness_ok(L: Lattice, F: int, I0: int) -> bool:
    """``(∀x∉F)(∃y∈F)(x·y ∈ I0)``."""
    members = list(bits(F))
    for x in range(L.n):
        if F >> x & 1:
            continue
        if not any(I0 >> int(L.meet[x, y]) & 1 for y in members):
            return False
    return True


def separation(L: Lattice, F0: ElementSet, I0: ElementSet) -> tuple[ElementSet, ElementSet]:
    F = strong_filter_extension(L, F0, I0)
    return F, ElementSet(L.full & ~F.members, "prime-ideal")


def _generator(L: Lattice, mask: int, op: np.ndarray) -> int:
    it = bits(mask)
    g = next(it)
    for a in it:
        g = int(op[g, a])
    return g
