"""Signatures, formulas, parsing/printing, substitution and flexible morphisms.

Formulas are immutable trees over a fixed enumerable variable set x0, x1, ...
Nodes are interned, so structural equality usually resolves by identity, but
``==`` stays structural for nodes built outside the factories.
"""

from __future__ import annotations

import itertools
import re
from typing import Iterable, Iterator


_NAME_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
_VAR_RE = re.compile(r"x[0-9]+\Z")


class FormulaSyntaxError(ValueError):
    """Parse failure; ``offset`` is the byte offset of the offending token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class Formula:
    __slots__ = ("_hash",)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return print_formula(self)


class Var(Formula):
    __slots__ = ("index",)
    _pool: dict[int, "Var"] = {}

    def __new__(cls, index: int):
        node = cls._pool.get(index)
        if node is None:
            if index < 0:
                raise ValueError(f"variable index must be nonnegative: {index}")
            node = object.__new__(cls)
            node.index = index
            node._hash = hash((1, index))
            cls._pool[index] = node
        return node

    def __eq__(self, other):
        return self is other or (isinstance(other, Var) and other.index == self.index)

    __hash__ = Formula.__hash__


class App(Formula):
    __slots__ = ("name", "args")
    _pool: dict[tuple, "App"] = {}

    def __new__(cls, name: str, args: Iterable[Formula] = ()):
        args = tuple(args)
        key = (name, args)
        node = cls._pool.get(key)
        if node is None:
            node = object.__new__(cls)
            node.name = name
            node.args = args
            node._hash = hash(key)
            cls._pool[key] = node
        return node

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, App)
            and self._hash == other._hash
            and self.name == other.name
            and self.args == other.args
        )

    __hash__ = Formula.__hash__


class Signature:
    """An ordered list of connectives (name, arity); the order is canonical."""

    def __init__(self, connectives: Iterable[tuple[str, int]]):
        conns = tuple((str(n), int(a)) for n, a in connectives)
        seen = set()
        for name, arity in conns:
            if not _NAME_RE.match(name) or _VAR_RE.match(name):
                raise ValueError(f"bad connective name: {name!r}")
            if arity < 0:
                raise ValueError(f"negative arity for {name}")
            if name in seen:
                raise ValueError(f"duplicate connective: {name}")
            seen.add(name)
        self.connectives = conns
        self._arity = dict(conns)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.connectives)

    def arity(self, name: str) -> int:
        return self._arity[name]

    def __contains__(self, name: str) -> bool:
        return name in self._arity

    def extends(self, other: "Signature") -> bool:
        """True when every connective of ``other`` appears here with equal arity."""
        return all(n in self._arity and self._arity[n] == a for n, a in other.connectives)

    def __eq__(self, other):
        return isinstance(other, Signature) and self.connectives == other.connectives

    def __hash__(self):
        return hash(self.connectives)

    def __repr__(self):
        return "Signature([%s])" % ", ".join(f"{n}/{a}" for n, a in self.connectives)

    def to_json(self) -> dict:
        return {"connectives": [{"name": n, "arity": a} for n, a in self.connectives]}

    @classmethod
    def from_json(cls, data: dict) -> "Signature":
        return cls([(c["name"], c["arity"]) for c in data["connectives"]])


def print_formula(phi: Formula) -> str:
    if isinstance(phi, Var):
        return f"x{phi.index}"
    return "%s(%s)" % (phi.name, ",".join(print_formula(a) for a in phi.args))


_TOKEN_RE = re.compile(r"\s*(?:([a-z][a-z0-9_]*)|([(),])|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        word, punct, bad = m.groups()
        start = m.start(1) if word else m.start(2) if punct else m.start(3)
        if bad:
            raise FormulaSyntaxError(f"unexpected character {bad!r}", start)
        if word:
            kind = "var" if _VAR_RE.match(word) else "name"
            tokens.append((kind, word, start))
        else:
            tokens.append((punct, punct, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_formula(sig: Signature, text: str) -> Formula:
    """Parse ``formula := var | name "(" formula ("," formula)* ")"``.

    Raises FormulaSyntaxError (with byte offset) on malformed input, unknown
    connectives and arity mismatches.
    """
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def advance():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_one() -> Formula:
        kind, value, off = advance()
        if kind == "var":
            return Var(int(value[1:]))
        if kind != "name":
            raise FormulaSyntaxError(f"expected a formula, found {value!r}" if value else "expected a formula", off)
        if value not in sig:
            raise FormulaSyntaxError(f"unknown connective {value!r}", off)
        kind2, value2, off2 = advance()
        if kind2 != "(":
            raise FormulaSyntaxError(f"expected '(' after connective {value!r}", off2)
        args = [parse_one()]
        while True:
            kind3, value3, off3 = advance()
            if kind3 == ",":
                args.append(parse_one())
            elif kind3 == ")":
                break
            else:
                raise FormulaSyntaxError(f"expected ',' or ')', found {value3!r}" if value3 else "unexpected end of input", off3)
        if len(args) != sig.arity(value):
            raise FormulaSyntaxError(
                f"arity mismatch: {value} expects {sig.arity(value)} argument(s), got {len(args)}", off
            )
        return App(value, args)

    phi = parse_one()
    kind, value, off = peek()
    if kind != "end":
        raise FormulaSyntaxError(f"trailing input {value!r}", off)
    return phi


def variables(phi: Formula) -> frozenset[int]:
    out: set[int] = set()
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            out.add(node.index)
        else:
            stack.extend(node.args)
    return frozenset(out)


def formula_depth(phi: Formula) -> int:
    """Nodes on the longest root-to-leaf path; a variable has depth 1."""
    if isinstance(phi, Var):
        return 1
    if not phi.args:
        return 1
    return 1 + max(formula_depth(a) for a in phi.args)


def formula_over(sig: Signature, phi: Formula) -> bool:
    if isinstance(phi, Var):
        return True
    return (
        phi.name in sig
        and sig.arity(phi.name) == len(phi.args)
        and all(formula_over(sig, a) for a in phi.args)
    )


def substitute(phi: Formula, sigma: dict[int, Formula]) -> Formula:
    """Simultaneous substitution; unmapped variables stay fixed."""
    if isinstance(phi, Var):
        return sigma.get(phi.index, phi)
    return App(phi.name, tuple(substitute(a, sigma) for a in phi.args))


class FlexibleMorphism:
    """Sends each n-ary source connective to a target formula in x0..x_{n-1}."""

    def __init__(self, source: Signature, target: Signature, assignment: dict[str, Formula]):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        for name, arity in source.connectives:
            if name not in self.assignment:
                raise ValueError(f"no assignment for connective {name}")
            image = self.assignment[name]
            if not formula_over(target, image):
                raise ValueError(f"image of {name} is not a formula over the target signature")
            if any(v >= arity for v in variables(image)):
                raise ValueError(f"image of {name} uses variables beyond x0..x{arity - 1}")
        extra = set(self.assignment) - set(source.names)
        if extra:
            raise ValueError(f"assignment for unknown connectives: {sorted(extra)}")

    @classmethod
    def identity(cls, sig: Signature) -> "FlexibleMorphism":
        assignment = {
            name: App(name, tuple(Var(i) for i in range(arity)))
            for name, arity in sig.connectives
        }
        return cls(sig, sig, assignment)

    def __call__(self, name: str) -> Formula:
        return self.assignment[name]

    def __eq__(self, other):
        return (
            isinstance(other, FlexibleMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.assignment == other.assignment
        )

    def __repr__(self):
        body = ", ".join(f"{n}:{print_formula(f)}" for n, f in sorted(self.assignment.items()))
        return f"FlexibleMorphism({body})"


def extend_morphism(f: FlexibleMorphism, phi: Formula) -> Formula:
    """The unique extension: variables are fixed, c(args) becomes f(c)[xi|args]."""
    if isinstance(phi, Var):
        return phi
    mapped = [extend_morphism(f, a) for a in phi.args]
    return substitute(f(phi.name), dict(enumerate(mapped)))


def compose_morphisms(g: FlexibleMorphism, f: FlexibleMorphism) -> FlexibleMorphism:
    """(g . f)(c) = extension of g applied to f(c); needs f.target = g.source."""
    if f.target != g.source:
        raise ValueError("signature mismatch: f.target must equal g.source")
    assignment = {name: extend_morphism(g, f(name)) for name in f.source.names}
    return FlexibleMorphism(f.source, g.target, assignment)


def enumerate_formulas(sig: Signature, num_vars: int, max_depth: int) -> list[Formula]:
    """All formulas with variables among x0..x_{num_vars-1} and depth <= max_depth.

    Deterministic order: by depth, then signature order, then argument order.
    """
    if num_vars < 1 or max_depth < 1:
        return []
    atoms = [Var(i) for i in range(num_vars)]
    atoms += [App(name, ()) for name, arity in sig.connectives if arity == 0]
    by_depth: list[list[Formula]] = [atoms]
    everything = list(atoms)
    for _depth in range(2, max_depth + 1):
        shallower = [phi for layer in by_depth for phi in layer]
        deepest = by_depth[-1]
        layer: list[Formula] = []
        for name, arity in sig.connectives:
            if arity == 0:
                continue
            layer.extend(
                App(name, args)
                for args in _tuples_with_max(shallower, deepest, arity)
            )
        by_depth.append(layer)
        everything.extend(layer)
    return everything


def _tuples_with_max(pool: list[Formula], deepest: list[Formula], arity: int) -> Iterator[tuple[Formula, ...]]:
    # tuples over pool with at least one component in the deepest layer,
    # enumerated in plain product order over the pool
    deepest_set = set(map(id, deepest))
    if arity == 1:
        for a in deepest:
            yield (a,)
        return
    for args in itertools.product(pool, repeat=arity):
        if any(id(a) in deepest_set for a in args):
            yield args


def random_formula(rng, sig: Signature, num_vars: int, max_depth: int) -> Formula:
    """Seeded random formula within the depth/variable bounds."""
    if max_depth <= 1 or not sig.connectives:
        return Var(rng.randrange(num_vars))
    if rng.random() < 0.3:
        return Var(rng.randrange(num_vars))
    name, arity = sig.connectives[rng.randrange(len(sig.connectives))]
    return App(name, tuple(random_formula(rng, sig, num_vars, max_depth - 1) for _ in range(arity)))


def load_signature(path: str) -> Signature:
    import json

    with open(path) as fh:
        return Signature.from_json(json.load(fh))
