"""Seeded generators for test corpora: adjacency frames, set families,
preorders and single-pair mutants."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .edc import EDCLattice, check_core_axioms, with_relations
from .models import (
    FiniteTopology,
    RelationalSystem,
    full_discrete_edc,
    rc_algebra,
    ro_algebra,
    sub_discrete_edc,
)

RELATIONS = ("C", "Chat", "Ll")


def random_relational(rng: random.Random, m: int, p: float | None = None) -> RelationalSystem:
    p = rng.random() if p is None else p
    edges = [(i, j) for i in range(m) for j in range(i + 1, m) if rng.random() < p]
    return RelationalSystem.from_edges(m, edges, symmetrize=True)


def close_family(m: int, seeds: list[int]) -> list[int]:
    full = (1 << m) - 1
    fam = {0, full} | set(seeds)
    while True:
        new = {a | b for a in fam for b in fam} | {a & b for a in fam for b in fam}
        if new <= fam:
            return sorted(fam)
        fam |= new


def random_family(rng: random.Random, m: int, max_size: int = 20) -> list[int]:
    """A bounded sublattice of the powerset generated by a few random sets."""
    full = (1 << m) - 1
    for _ in range(50):
        k = rng.randint(2, 6)
        fam = close_family(m, [rng.randint(1, full) for _ in range(k)])
        if len(fam) <= max_size:
            return fam
    return [0, full]


def random_preorder(rng: random.Random, m: int, p: float | None = None) -> list[tuple[int, int]]:
    p = rng.random() * 0.6 if p is None else p
    return [(i, j) for i in range(m) for j in range(m) if i != j and rng.random() < p]


def random_topology(rng: random.Random, m: int) -> tuple[FiniteTopology, list[tuple[int, int]]]:
    edges = random_preorder(rng, m)
    return FiniteTopology.from_preorder(m, edges), edges


@dataclass
class CorpusModel:
    name: str
    E: EDCLattice
    source: dict = field(default_factory=dict)


def mixed_corpus(seed: int = 0, count: int = 60, max_n: int = 20) -> list[CorpusModel]:
    """Full discrete models, sub-family models and RC/RO algebras, each with at most ``max_n`` elements."""
    rng = random.Random(seed)
    out: list[CorpusModel] = []
    kinds = ("full", "family", "rc", "ro")
    i = 0
    while len(out) < count:
        kind = kinds[i % len(kinds)]
        i += 1
        if kind == "full":
            m = rng.randint(2, 4)
            S = random_relational(rng, m)
            E = full_discrete_edc(S)
            src = {"kind": "relational", "points": m, "edges": [list(e) for e in S.edges()], "symmetrize": True}
        elif kind == "family":
            m = rng.randint(3, 5)
            S = random_relational(rng, m)
            fam = random_family(rng, m, max_n)
            E = sub_discrete_edc(S, fam)
            src = {
                "kind": "family",
                "parent": {"kind": "relational", "points": m, "edges": [list(e) for e in S.edges()], "symmetrize": True},
                "sets": [[x for x in range(m) if s >> x & 1] for s in fam],
            }
        else:
            m = rng.randint(3, 5)
            T, edges = random_topology(rng, m)
            E = rc_algebra(T) if kind == "rc" else ro_algebra(T)
            src = {"kind": "topology", "points": m, "preorder": [list(e) for e in edges], "algebra": kind}
        if E.n > max_n or E.n < 3:
            continue
        out.append(CorpusModel(f"{kind}-{len(out):03d}", E, src))
    return out


def toggles(E: EDCLattice) -> Iterator[tuple[str, int, int, EDCLattice]]:
    """Every structure differing from ``E`` in exactly one relation pair."""
    for rel in RELATIONS:
        M = getattr(E, rel)
        for a in range(E.n):
            for b in range(E.n):
                X = np.array(M, copy=True)
                X[a, b] = not X[a, b]
                yield rel, a, b, with_relations(E, **{rel: X})


def random_mutants(rng: random.Random, E: EDCLattice, count: int) -> list[tuple[str, int, int, EDCLattice]]:
    pairs = [(rel, a, b) for rel in RELATIONS for a in range(E.n) for b in range(E.n)]
    chosen = rng.sample(pairs, min(count, len(pairs)))
    out = []
    for rel, a, b in chosen:
        X = np.array(getattr(E, rel), copy=True)
        X[a, b] = not X[a, b]
        out.append((rel, a, b, with_relations(E, **{rel: X})))
    return out


def failing_axioms(E: EDCLattice) -> list[str]:
    return [f.axiom for f in check_core_axioms(E).failures]
