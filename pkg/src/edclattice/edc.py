"""EDC-lattices: a lattice with contact, dual contact and non-tangential inclusion.

Construction never filters: the checkers must be able to hold broken
candidates and report on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import formulas as fm
from .axioms import CORE, EXTRA, MEREOTOPOLOGICAL, RCC8, RCC8_ORDER
from .errors import DimensionMismatch, NoRelationMatched, UnknownAxiom, ZeroRegion
from .lattice import Lattice, _frozen


@dataclass(frozen=True, eq=False)
class EDCLattice:
    lattice: Lattice
    C: np.ndarray
    Chat: np.ndarray
    Ll: np.ndarray
    # point bitsets of each element when the carrier is a family of sets
    regions: tuple[int, ...] | None = None

    # the evaluators in :mod:`formulas` read these directly
    @property
    def n(self) -> int:
        return self.lattice.n

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @property
    def top(self) -> int:
        return self.lattice.top

    @property
    def leq(self) -> np.ndarray:
        return self.lattice.leq

    @property
    def join(self) -> np.ndarray:
        return self.lattice.join

    @property
    def meet(self) -> np.ndarray:
        return self.lattice.meet

    def label(self, a: int) -> str:
        return self.lattice.label(a)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EDCLattice):
            return NotImplemented
        return (
            self.lattice == other.lattice
            and np.array_equal(self.C, other.C)
            and np.array_equal(self.Chat, other.Chat)
            and np.array_equal(self.Ll, other.Ll)
        )

    __hash__ = None  # type: ignore[assignment]


def build_edc(
    L: Lattice,
    C: np.ndarray | Iterable,
    Chat: np.ndarray | Iterable,
    Ll: np.ndarray | Iterable,
    regions: Iterable[int] | None = None,
) -> EDCLattice:
    mats = []
    for name, m in (("C", C), ("Chat", Chat), ("Ll", Ll)):
        arr = np.asarray(m, dtype=bool)
        if arr.shape != (L.n, L.n):
            raise DimensionMismatch(f"{name} has shape {arr.shape}, expected {(L.n, L.n)}")
        mats.append(_frozen(arr))
    return EDCLattice(L, *mats, regions=tuple(regions) if regions is not None else None)


def with_relations(E: EDCLattice, **mats: np.ndarray) -> EDCLattice:
    """Copy of ``E`` with some relation matrices replaced."""
    return build_edc(
        E.lattice,
        mats.get("C", E.C),
        mats.get("Chat", E.Chat),
        mats.get("Ll", E.Ll),
        regions=E.regions,
    )


# ------------------------------------------------------------------ reports


@dataclass(frozen=True)
class AxiomResult:
    axiom: str
    formula: str
    passed: bool
    variables: tuple[str, ...] = ()
    counterexample: tuple[int, ...] | None = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def witness(self) -> dict[str, int]:
        return dict(zip(self.variables, self.counterexample or ()))

    def describe(self, E: EDCLattice) -> str:
        if self.passed:
            return ""
        return ", ".join(f"{v}={E.label(x)}" for v, x in self.witness().items())

    def to_dict(self, E: EDCLattice | None = None) -> dict:
        d: dict = {"axiom": self.axiom, "status": self.status}
        if not self.passed:
            d["counterexample"] = list(self.counterexample or ())
            d["variables"] = list(self.variables)
            if E is not None:
                d["witness"] = {v: E.label(x) for v, x in self.witness().items()}
        return d


@dataclass(frozen=True)
class AxiomReport:
    entries: tuple[AxiomResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def failures(self) -> list[AxiomResult]:
        return [e for e in self.entries if not e.passed]

    def __getitem__(self, name: str) -> AxiomResult:
        for e in self.entries:
            if e.axiom == name:
                return e
        raise KeyError(name)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def evaluate(E: EDCLattice, name: str, text: str) -> AxiomResult:
    f = fm.parse(text)
    free = tuple(fm.free_variables(f))
    cx = fm.first_violation(E, f, list(free))
    return AxiomResult(name, text, cx is None, free, cx)


def confirm_counterexample(E: EDCLattice, result: AxiomResult) -> bool:
    """Re-substitute a reported counterexample with the scalar evaluator."""
    if result.passed:
        return False
    return not fm.holds_at(E, fm.parse(result.formula), result.witness())


def _check_table(E: EDCLattice, table: Mapping[str, str], names: Iterable[str] | None) -> AxiomReport:
    names = list(table) if names is None else list(names)
    return AxiomReport(tuple(evaluate(E, k, table[k]) for k in names))


def check_core_axioms(E: EDCLattice, names: Iterable[str] | None = None) -> AxiomReport:
    return _check_table(E, CORE, names)


def check_mereotopological_axioms(E: EDCLattice) -> AxiomReport:
    return _check_table(E, MEREOTOPOLOGICAL, None)


def check_extra_axiom(E: EDCLattice, name: str) -> AxiomResult:
    if name not in EXTRA:
        raise UnknownAxiom(f"unknown axiom {name!r}; expected one of {', '.join(EXTRA)}")
    return evaluate(E, name, EXTRA[name])


def check_extra_axioms(E: EDCLattice, names: Iterable[str] | None = None) -> AxiomReport:
    names = list(EXTRA) if names is None else list(names)
    return AxiomReport(tuple(check_extra_axiom(E, k) for k in names))


def satisfies(E: EDCLattice, *names: str) -> bool:
    return all(check_extra_axiom(E, k).passed for k in names)


def is_valid(E: EDCLattice) -> bool:
    return check_core_axioms(E).passed


# ------------------------------------------------------------------ derived


def overlap_matrix(E: EDCLattice) -> np.ndarray:
    return E.meet != E.bottom


def underlap_matrix(E: EDCLattice) -> np.ndarray:
    return E.join != E.top


def derived_relation(E: EDCLattice, rel: str, a: int, b: int) -> bool:
    E.lattice.check_index(a, b)
    if rel == "O":
        return bool(E.meet[a, b] != E.bottom)
    if rel in ("Ohat", "Oh"):
        return bool(E.join[a, b] != E.top)
    raise ValueError(f"unknown derived relation {rel!r}")


def dualize(E: EDCLattice) -> EDCLattice:
    """The same carrier read upside down: C and Ch swap, << is transposed."""
    return EDCLattice(E.lattice.dual(), E.Chat, E.C, _frozen(E.Ll.T), regions=E.regions)


# ------------------------------------------------------------------ RCC-8

RCC8_FORMULAS = {k: fm.parse(v) for k, v in RCC8.items()}


def rcc8_matrices(E: EDCLattice) -> dict[str, np.ndarray]:
    """Each RCC-8 formula evaluated independently over all pairs."""
    return {k: ~fm.violations(E, f, ["a", "b"]) for k, f in RCC8_FORMULAS.items()}


def rcc8_classify(E: EDCLattice, a: int, b: int) -> str:
    E.lattice.check_index(a, b)
    if a == E.bottom or b == E.bottom:
        raise ZeroRegion("RCC-8 relations are defined for nonzero regions only")
    env = {"a": a, "b": b}
    for name in RCC8_ORDER:
        if fm.holds_at(E, RCC8_FORMULAS[name], env):
            return name
    raise NoRelationMatched(f"no RCC-8 relation holds between {E.label(a)} and {E.label(b)}")


@dataclass(frozen=True)
class RCC8Table:
    elements: tuple[int, ...]
    relation: dict[tuple[int, int], str]
    match_counts: dict[tuple[int, int], int]

    @property
    def jepd(self) -> bool:
        return all(c == 1 for c in self.match_counts.values())

    def jepd_violations(self) -> list[tuple[int, int]]:
        return [p for p, c in self.match_counts.items() if c != 1]


def rcc8_table(E: EDCLattice, pairs: Iterable[tuple[int, int]] | None = None) -> RCC8Table:
    nonzero = tuple(x for x in range(E.n) if x != E.bottom)
    if pairs is None:
        pairs = [(a, b) for a in nonzero for b in nonzero]
    mats = rcc8_matrices(E)
    counts = sum(m.astype(np.int64) for m in mats.values())
    relation: dict[tuple[int, int], str] = {}
    match_counts: dict[tuple[int, int], int] = {}
    for a, b in pairs:
        match_counts[(a, b)] = int(counts[a, b])
        relation[(a, b)] = rcc8_classify(E, a, b)
    return RCC8Table(nonzero, relation, match_counts)


def rcc8_jepd(E: EDCLattice) -> bool:
    mats = rcc8_matrices(E)
    counts = sum(m.astype(np.int64) for m in mats.values())
    nz = np.array([x for x in range(E.n) if x != E.bottom], dtype=np.int64)
    return bool((counts[np.ix_(nz, nz)] == 1).all())
