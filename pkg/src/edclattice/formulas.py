"""A closed first-order language over (meet, join, <=, C, Ch, <<, O, Oh, 0, 1).

Formulas are written as text and parsed once::

    a C (b + c) -> a C b | a C c
    a << b -> exists c: b + c = 1 & ~(a C c)

Free variables are universally quantified in order of first appearance. Two
evaluators share the AST: :func:`violations` broadcasts every variable along
its own numpy axis, and :func:`holds_at` walks the tree for one assignment.
The second is what re-checks counterexamples reported by the first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Protocol, Union

import numpy as np

RELATIONS = ("leq", "eq", "C", "Chat", "Ll", "O", "Ohat")

# ------------------------------------------------------------------ AST


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int  # 0 or 1


@dataclass(frozen=True)
class Op:
    op: str  # "meet" | "join"
    left: "Term"
    right: "Term"


Term = Union[Var, Const, Op]


@dataclass(frozen=True)
class Atom:
    rel: str
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Implies:
    premise: "Formula"
    conclusion: "Formula"


@dataclass(frozen=True)
class Exists:
    names: tuple[str, ...]
    body: "Formula"


Formula = Union[Atom, Not, And, Or, Implies, Exists]


class Structure(Protocol):
    """Anything exposing the tables the evaluators read."""

    n: int
    bottom: int
    top: int
    leq: np.ndarray
    join: np.ndarray
    meet: np.ndarray
    C: np.ndarray
    Chat: np.ndarray
    Ll: np.ndarray


# ------------------------------------------------------------------ parser

_TOKEN = re.compile(r"\s*(->|<=|<<|!=|[A-Za-z_][A-Za-z0-9_']*|[01]|[()&|~+*=:,])")
_RELOPS = {"<=": "leq", "=": "eq", "C": "C", "Ch": "Chat", "<<": "Ll", "O": "O", "Oh": "Ohat"}


class FormulaSyntaxError(ValueError):
    pass


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[str] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise FormulaSyntaxError(f"bad character at {pos} in {self.text!r}")
            self.tokens.append(m.group(1))
            pos = m.end()
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise FormulaSyntaxError(f"expected {expected or 'token'} at token {self.i} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.implication()
        if self.peek() is not None:
            raise FormulaSyntaxError(f"trailing input at token {self.i} in {self.text!r}")
        return f

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        parts = [self.conjunction()]
        while self.peek() == "|":
            self.take()
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self) -> Formula:
        parts = [self.unary()]
        while self.peek() == "&":
            self.take()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok == "exists":
            self.take()
            names = [self.take()]
            while self.peek() == ",":
                self.take()
                names.append(self.take())
            self.take(":")
            return Exists(tuple(names), self.implication())
        if tok == "(":
            save = self.i
            try:
                self.take("(")
                f = self.implication()
                self.take(")")
                if self.peek() not in _RELOPS and self.peek() not in ("+", "*"):
                    return f
            except FormulaSyntaxError:
                pass
            self.i = save
        return self.atom()

    def atom(self) -> Formula:
        left = self.term()
        tok = self.take()
        if tok == "!=":
            return Not(Atom("eq", left, self.term()))
        if tok not in _RELOPS:
            raise FormulaSyntaxError(f"expected a relation, got {tok!r} in {self.text!r}")
        return Atom(_RELOPS[tok], left, self.term())

    def term(self) -> Term:
        left = self.product()
        while self.peek() == "+":
            self.take()
            left = Op("join", left, self.product())
        return left

    def product(self) -> Term:
        left = self.factor()
        while self.peek() == "*":
            self.take()
            left = Op("meet", left, self.factor())
        return left

    def factor(self) -> Term:
        tok = self.take()
        if tok == "(":
            t = self.term()
            self.take(")")
            return t
        if tok in ("0", "1"):
            return Const(int(tok))
        if re.fullmatch(r"[a-z][A-Za-z0-9_']*", tok) and tok != "exists":
            return Var(tok)
        raise FormulaSyntaxError(f"unexpected {tok!r} in {self.text!r}")


@lru_cache(maxsize=None)
def parse(text: str) -> Formula:
    return _Parser(text).parse()


# ------------------------------------------------------------------ variables


def _term_vars(t: Term, out: list[str]) -> None:
    if isinstance(t, Var):
        if t.name not in out:
            out.append(t.name)
    elif isinstance(t, Op):
        _term_vars(t.left, out)
        _term_vars(t.right, out)


def _vars(f: Formula, bound: tuple[str, ...], free: list[str], all_bound: list[str]) -> None:
    if isinstance(f, Atom):
        found: list[str] = []
        _term_vars(f.left, found)
        _term_vars(f.right, found)
        for v in found:
            if v not in bound and v not in free:
                free.append(v)
    elif isinstance(f, Not):
        _vars(f.body, bound, free, all_bound)
    elif isinstance(f, (And, Or)):
        for p in f.parts:
            _vars(p, bound, free, all_bound)
    elif isinstance(f, Implies):
        _vars(f.premise, bound, free, all_bound)
        _vars(f.conclusion, bound, free, all_bound)
    elif isinstance(f, Exists):
        for name in f.names:
            if name not in all_bound:
                all_bound.append(name)
        _vars(f.body, bound + f.names, free, all_bound)


def free_variables(f: Formula) -> list[str]:
    free: list[str] = []
    _vars(f, (), free, [])
    return free


def bound_variables(f: Formula) -> list[str]:
    bound: list[str] = []
    _vars(f, (), [], bound)
    return bound


# ------------------------------------------------------------------ vectorized


def _relation(S: Structure, rel: str) -> np.ndarray:
    if rel == "leq":
        return S.leq
    if rel == "C":
        return S.C
    if rel == "Chat":
        return S.Chat
    if rel == "Ll":
        return S.Ll
    raise KeyError(rel)


class _Vectorized:
    def __init__(self, S: Structure, axes: dict[str, int], ndim: int):
        self.S = S
        self.axes = axes
        self.ndim = ndim

    def term(self, t: Term) -> np.ndarray:
        if isinstance(t, Var):
            shape = [1] * self.ndim
            shape[self.axes[t.name]] = self.S.n
            return np.arange(self.S.n).reshape(shape)
        if isinstance(t, Const):
            return np.asarray(self.S.top if t.value else self.S.bottom)
        table = self.S.meet if t.op == "meet" else self.S.join
        return table[self.term(t.left), self.term(t.right)]

    def formula(self, f: Formula) -> np.ndarray:
        if isinstance(f, Atom):
            x, y = self.term(f.left), self.term(f.right)
            if f.rel == "eq":
                return x == y
            if f.rel == "O":
                return self.S.meet[x, y] != self.S.bottom
            if f.rel == "Ohat":
                return self.S.join[x, y] != self.S.top
            return _relation(self.S, f.rel)[x, y]
        if isinstance(f, Not):
            return ~self.formula(f.body)
        if isinstance(f, And):
            out = self.formula(f.parts[0])
            for p in f.parts[1:]:
                out = out & self.formula(p)
            return out
        if isinstance(f, Or):
            out = self.formula(f.parts[0])
            for p in f.parts[1:]:
                out = out | self.formula(p)
            return out
        if isinstance(f, Implies):
            return ~self.formula(f.premise) | self.formula(f.conclusion)
        if isinstance(f, Exists):
            body = self.formula(f.body)
            body = np.broadcast_to(body, np.broadcast_shapes(body.shape, (1,) * self.ndim))
            axes = tuple(self.axes[v] for v in f.names)
            return body.any(axis=axes, keepdims=True)
        raise TypeError(f)


def violations(S: Structure, f: Formula, order: list[str] | None = None) -> np.ndarray:
    """Boolean array over the universal variables, True where ``f`` fails.

    Axis ``i`` of the result ranges over the ``i``-th variable of ``order``
    (default: free variables in order of first appearance).
    """
    free = order if order is not None else free_variables(f)
    bound = [v for v in bound_variables(f) if v not in free]
    names = free + bound
    axes = {v: i for i, v in enumerate(names)}
    ev = _Vectorized(S, axes, len(names))
    ok = ev.formula(f)
    ok = np.broadcast_to(ok, np.broadcast_shapes(np.shape(ok), (1,) * len(names)))
    if bound:
        ok = ok.reshape(ok.shape[: len(free)])
    ok = np.broadcast_to(ok, (S.n,) * len(free))
    return ~ok


def first_violation(S: Structure, f: Formula, order: list[str] | None = None) -> tuple[int, ...] | None:
    bad = violations(S, f, order)
    if bad.ndim == 0:
        return () if bool(bad) else None
    flat = np.flatnonzero(bad)
    if not len(flat):
        return None
    return tuple(int(i) for i in np.unravel_index(int(flat[0]), bad.shape))


# ------------------------------------------------------------------ scalar


def _term_value(S: Structure, t: Term, env: dict[str, int]) -> int:
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Const):
        return S.top if t.value else S.bottom
    a, b = _term_value(S, t.left, env), _term_value(S, t.right, env)
    return int((S.meet if t.op == "meet" else S.join)[a][b])


def holds_at(S: Structure, f: Formula, env: dict[str, int]) -> bool:
    """Evaluate ``f`` under one assignment, looping over existential witnesses."""
    if isinstance(f, Atom):
        x, y = _term_value(S, f.left, env), _term_value(S, f.right, env)
        if f.rel == "eq":
            return x == y
        if f.rel == "O":
            return int(S.meet[x][y]) != S.bottom
        if f.rel == "Ohat":
            return int(S.join[x][y]) != S.top
        return bool(_relation(S, f.rel)[x][y])
    if isinstance(f, Not):
        return not holds_at(S, f.body, env)
    if isinstance(f, And):
        return all(holds_at(S, p, env) for p in f.parts)
    if isinstance(f, Or):
        return any(holds_at(S, p, env) for p in f.parts)
    if isinstance(f, Implies):
        return (not holds_at(S, f.premise, env)) or holds_at(S, f.conclusion, env)
    if isinstance(f, Exists):
        return _exists(S, f.names, f.body, dict(env))
    raise TypeError(f)


def _exists(S: Structure, names: tuple[str, ...], body: Formula, env: dict[str, int]) -> bool:
    if not names:
        return holds_at(S, body, env)
    for v in range(S.n):
        env[names[0]] = v
        if _exists(S, names[1:], body, env):
            return True
    return False


# ------------------------------------------------------------------ duality


def _dual_term(t: Term) -> Term:
    if isinstance(t, Var):
        return t
    if isinstance(t, Const):
        return Const(1 - t.value)
    return Op("join" if t.op == "meet" else "meet", _dual_term(t.left), _dual_term(t.right))


_DUAL_REL = {"C": "Chat", "Chat": "C", "O": "Ohat", "Ohat": "O", "eq": "eq"}


def dual_formula(f: Formula) -> Formula:
    """Swap 0/1, meet/join, C/Ch, O/Oh, and reverse <= and <<."""
    if isinstance(f, Atom):
        left, right = _dual_term(f.left), _dual_term(f.right)
        if f.rel in ("leq", "Ll"):
            return Atom(f.rel, right, left)
        return Atom(_DUAL_REL[f.rel], left, right)
    if isinstance(f, Not):
        return Not(dual_formula(f.body))
    if isinstance(f, And):
        return And(tuple(dual_formula(p) for p in f.parts))
    if isinstance(f, Or):
        return Or(tuple(dual_formula(p) for p in f.parts))
    if isinstance(f, Implies):
        return Implies(dual_formula(f.premise), dual_formula(f.conclusion))
    if isinstance(f, Exists):
        return Exists(f.names, dual_formula(f.body))
    raise TypeError(f)
