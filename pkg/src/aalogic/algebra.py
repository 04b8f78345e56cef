"""Finite algebras over a signature: evaluation, homomorphisms, congruences,
quotients, the Leibniz operator and logic filters.

Carriers are always {0, ..., n-1}. Operation tables are stored flat in
row-major order (first index = leftmost argument).
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .syntax import Formula, Signature, Var


class FiniteAlgebra:
    def __init__(self, signature: Signature, size: int, tables: dict[str, Sequence[int]]):
        if size < 1:
            raise ValueError("carrier must be nonempty")
        self.signature = signature
        self.size = size
        flat: dict[str, tuple[int, ...]] = {}
        for name, arity in signature.connectives:
            if name not in tables:
                raise ValueError(f"missing table for {name}")
            table = tuple(tables[name])
            if len(table) != size**arity:
                raise ValueError(f"table for {name} has {len(table)} entries, expected {size**arity}")
            if any(not (0 <= v < size) for v in table):
                raise ValueError(f"table for {name} has out-of-range entries")
            flat[name] = table
        extra = set(tables) - set(signature.names)
        if extra:
            raise ValueError(f"tables for unknown connectives: {sorted(extra)}")
        self.tables = flat
        self._hash = hash((signature, size, tuple(sorted(flat.items()))))

    def op(self, name: str, *args: int) -> int:
        index = 0
        for a in args:
            index = index * self.size + a
        return self.tables[name][index]

    def elements(self) -> range:
        return range(self.size)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteAlgebra)
            and self.signature == other.signature
            and self.size == other.size
            and self.tables == other.tables
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FiniteAlgebra(size={self.size}, ops={list(self.tables)})"

    def to_json(self) -> dict:
        return {
            "signature": self.signature.to_json(),
            "size": self.size,
            "tables": {name: _nest(self.tables[name], self.size, self.signature.arity(name)) for name in self.tables},
        }

    @classmethod
    def from_json(cls, data: dict, signature: Signature | None = None) -> "FiniteAlgebra":
        sig = signature if signature is not None else Signature.from_json(data["signature"])
        size = data["size"]
        tables = {name: _flatten(table) for name, table in data["tables"].items()}
        return cls(sig, size, tables)


def _nest(flat: tuple[int, ...], size: int, arity: int):
    if arity == 0:
        return flat[0]
    if arity == 1:
        return list(flat)
    step = size ** (arity - 1)
    return [_nest(flat[i * step : (i + 1) * step], size, arity - 1) for i in range(size)]


def _flatten(table) -> list[int]:
    if isinstance(table, int):
        return [table]
    out: list[int] = []
    for entry in table:
        if isinstance(entry, int):
            out.append(entry)
        else:
            out.extend(_flatten(entry))
    return out


def evaluate(A: FiniteAlgebra, phi: Formula, v: dict[int, int]) -> int:
    """Homomorphic extension of the valuation ``v`` applied to ``phi``."""
    if isinstance(phi, Var):
        try:
            return v[phi.index]
        except KeyError:
            raise ValueError(f"no binding for x{phi.index}") from None
    if phi.name not in A.tables:
        raise ValueError(f"connective {phi.name} not interpreted in this algebra")
    index = 0
    for arg in phi.args:
        index = index * A.size + evaluate(A, arg, v)
    return A.tables[phi.name][index]


def homomorphisms(A: FiniteAlgebra, B: FiniteAlgebra) -> list[tuple[int, ...]]:
    """All maps h with h(c(a..)) = c(h(a)..), in lexicographic table order."""
    if A.signature != B.signature:
        raise ValueError("signature mismatch")
    out = []
    arg_spaces = {
        name: list(itertools.product(A.elements(), repeat=arity))
        for name, arity in A.signature.connectives
    }
    for h in itertools.product(B.elements(), repeat=A.size):
        if all(
            h[A.op(name, *args)] == B.op(name, *(h[a] for a in args))
            for name, _ in A.signature.connectives
            for args in arg_spaces[name]
        ):
            out.append(h)
    return out


def is_isomorphism(A: FiniteAlgebra, B: FiniteAlgebra, h: Sequence[int]) -> bool:
    return len(set(h)) == A.size == B.size and tuple(h) in homomorphisms(A, B)


def find_isomorphism(A: FiniteAlgebra, B: FiniteAlgebra) -> tuple[int, ...] | None:
    if A.size != B.size or A.signature != B.signature:
        return None
    for h in homomorphisms(A, B):
        if len(set(h)) == A.size:
            return h
    return None


class Congruence:
    """Partition of {0..n-1} in canonical form: element -> least representative."""

    __slots__ = ("size", "rep")

    def __init__(self, size: int, rep: Sequence[int]):
        rep = tuple(rep)
        if len(rep) != size or any(rep[r] != r for r in rep) or any(not 0 <= r <= i for i, r in enumerate(rep)):
            raise ValueError("not a least-representative map")
        self.size = size
        self.rep = rep

    @classmethod
    def from_pairs(cls, size: int, pairs: Iterable[tuple[int, int]]) -> "Congruence":
        parent = list(range(size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in pairs:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        return cls(size, tuple(find(i) for i in range(size)))

    @classmethod
    def identity(cls, size: int) -> "Congruence":
        return cls(size, range(size))

    @classmethod
    def from_blocks(cls, size: int, blocks: Iterable[Iterable[int]]) -> "Congruence":
        return cls.from_pairs(size, [(block[0], b) for block in map(list, blocks) for b in block])

    def related(self, a: int, b: int) -> bool:
        return self.rep[a] == self.rep[b]

    def blocks(self) -> list[list[int]]:
        by_rep: dict[int, list[int]] = {}
        for i, r in enumerate(self.rep):
            by_rep.setdefault(r, []).append(i)
        return [by_rep[r] for r in sorted(by_rep)]

    def is_identity(self) -> bool:
        return all(r == i for i, r in enumerate(self.rep))

    def num_blocks(self) -> int:
        return len(set(self.rep))

    def contains(self, other: "Congruence") -> bool:
        return all(self.related(i, other.rep[i]) for i in range(self.size))

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.rep == other.rep

    def __hash__(self):
        return hash(self.rep)

    def __repr__(self):
        return "Congruence(%s)" % "|".join(",".join(map(str, b)) for b in self.blocks())


def is_congruence(A: FiniteAlgebra, theta: Congruence) -> bool:
    for name, arity in A.signature.connectives:
        if arity == 0:
            continue
        for args in itertools.product(A.elements(), repeat=arity):
            for pos in range(arity):
                a = args[pos]
                for b in range(a + 1, A.size):
                    if theta.related(a, b):
                        other = args[:pos] + (b,) + args[pos + 1 :]
                        if not theta.related(A.op(name, *args), A.op(name, *other)):
                            return False
    return True


def congruence_generated(A: FiniteAlgebra, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence containing ``pairs``: equivalence closure plus closure
    under one-step translations c(.., a, ..) ~ c(.., b, ..) until fixpoint."""
    pairs = list(pairs)
    for a, b in pairs:
        if not (0 <= a < A.size and 0 <= b < A.size):
            raise ValueError(f"element out of range: {(a, b)}")
    theta = Congruence.from_pairs(A.size, pairs)
    while True:
        new_pairs: list[tuple[int, int]] = []
        for name, arity in A.signature.connectives:
            if arity == 0:
                continue
            for args in itertools.product(A.elements(), repeat=arity):
                value = A.op(name, *args)
                for pos in range(arity):
                    a = args[pos]
                    for b in range(A.size):
                        if b != a and theta.related(a, b):
                            other = args[:pos] + (b,) + args[pos + 1 :]
                            w = A.op(name, *other)
                            if not theta.related(value, w):
                                new_pairs.append((value, w))
        if not new_pairs:
            return theta
        theta = Congruence.from_pairs(A.size, list(zip(theta.rep, range(A.size))) + new_pairs)


def all_congruences(A: FiniteAlgebra) -> list[Congruence]:
    """Every congruence of A, by brute force over all partitions."""
    out = []
    for rgs in _restricted_growth_strings(A.size):
        first_of: dict[int, int] = {}
        rep = []
        for i, label in enumerate(rgs):
            rep.append(first_of.setdefault(label, i))
        theta = Congruence(A.size, rep)
        if is_congruence(A, theta):
            out.append(theta)
    return out


def _restricted_growth_strings(n: int):
    string = [0] * n

    def rec(i: int, max_label: int):
        if i == n:
            yield tuple(string)
            return
        for label in range(max_label + 2):
            string[i] = label
            yield from rec(i + 1, max(max_label, label))

    yield from rec(1, 0) if n > 0 else iter(())


def quotient(A: FiniteAlgebra, theta: Congruence) -> tuple[FiniteAlgebra, tuple[int, ...]]:
    """Quotient algebra (blocks indexed by ascending least representatives)
    together with the projection map element -> block index."""
    if theta.size != A.size:
        raise ValueError("partition size mismatch")
    if not is_congruence(A, theta):
        raise ValueError("partition is not compatible with the operations")
    reps = sorted(set(theta.rep))
    block_index = {r: i for i, r in enumerate(reps)}
    proj = tuple(block_index[theta.rep[a]] for a in range(A.size))
    tables = {}
    for name, arity in A.signature.connectives:
        table = []
        for args in itertools.product(reps, repeat=arity):
            table.append(proj[A.op(name, *args)])
        tables[name] = table
    return FiniteAlgebra(A.signature, len(reps), tables), proj


def compatible(theta: Congruence, F: Iterable[int]) -> bool:
    F = set(F)
    return all(b in F for a in F for b in range(theta.size) if theta.related(a, b))


def unary_polynomials(A: FiniteAlgebra) -> set[tuple[int, ...]]:
    """All unary polynomial functions, generated breadth-first from the tables
    with constants until the set of induced functions stabilizes."""
    identity = tuple(range(A.size))
    funcs = {identity}
    frontier = [identity]
    while frontier:
        new: list[tuple[int, ...]] = []
        for f in frontier:
            for name, arity in A.signature.connectives:
                if arity == 0:
                    continue
                for pos in range(arity):
                    for consts in itertools.product(A.elements(), repeat=arity - 1):
                        g = tuple(
                            A.op(name, *(consts[:pos] + (f[x],) + consts[pos:]))
                            for x in A.elements()
                        )
                        if g not in funcs:
                            funcs.add(g)
                            new.append(g)
        frontier = new
    return funcs


def leibniz(A: FiniteAlgebra, F: Iterable[int]) -> Congruence:
    """Largest congruence compatible with F, via the unary-polynomial
    characterization: a ~ b iff p(a) and p(b) agree on F-membership for
    every unary polynomial p."""
    F = set(F)
    if any(not 0 <= a < A.size for a in F):
        raise ValueError("filter element out of range")
    polys = unary_polynomials(A)
    profile = {a: tuple(p[a] in F for p in sorted(polys)) for a in A.elements()}
    pairs = [
        (a, b)
        for a in A.elements()
        for b in range(a + 1, A.size)
        if profile[a] == profile[b]
    ]
    return Congruence.from_pairs(A.size, pairs)


def leibniz_bruteforce(A: FiniteAlgebra, F: Iterable[int]) -> Congruence:
    """Oracle: the maximum compatible congruence, by full enumeration."""
    F = set(F)
    compat = [theta for theta in all_congruences(A) if compatible(theta, F)]
    best = max(compat, key=lambda t: sum(1 for a in range(t.size) for b in range(t.size) if t.related(a, b)))
    if not all(best.contains(theta) for theta in compat):
        raise RuntimeError("no greatest compatible congruence found; algebra encoding is broken")
    return best


def is_reduced(A: FiniteAlgebra, F: Iterable[int]) -> bool:
    return leibniz(A, F).is_identity()


def reduce_matrix(A: FiniteAlgebra, F: Iterable[int]) -> tuple[FiniteAlgebra, frozenset[int]]:
    """Quotient by the Leibniz congruence, with the image filter."""
    F = set(F)
    theta = leibniz(A, F)
    B, proj = quotient(A, theta)
    return B, frozenset(proj[a] for a in F)


def _theorem_values(logic, A: FiniteAlgebra, num_vars: int, depth: int) -> frozenset[int]:
    from .syntax import enumerate_formulas

    values: set[int] = set()
    for phi in enumerate_formulas(A.signature, num_vars, depth):
        if logic.proves((), phi):
            vars_ = sorted({v for v in _formula_vars(phi)})
            for assignment in itertools.product(A.elements(), repeat=len(vars_)):
                values.add(evaluate(A, phi, dict(zip(vars_, assignment))))
    return frozenset(values)


def _formula_vars(phi: Formula):
    from .syntax import variables

    return variables(phi)


_theorem_cache: dict[tuple, frozenset[int]] = {}


def theorem_values(logic, A: FiniteAlgebra, num_vars: int | None = None, depth: int = 2) -> frozenset[int]:
    """Values taken by bounded-depth theorems of ``logic`` in A, under every
    valuation. Bounds default to min(|A|, 3) variables at depth 2."""
    if num_vars is None:
        num_vars = min(A.size, 3)
    key = (logic, A, num_vars, depth)
    if key not in _theorem_cache:
        _theorem_cache[key] = _theorem_values(logic, A, num_vars, depth)
    return _theorem_cache[key]


def _require_implicative(logic):
    imp = getattr(logic, "implication", None)
    if imp is None:
        raise ValueError("logic is not implicative: no designated implication connective")
    return imp


_SPOT_THEOREM_TEXTS = (
    # deeper theorems than the default enumeration bound reaches; used to
    # notice when the bounded closure misses theorem values on an algebra
    "neg(neg(or(x0,neg(x0))))",
    "neg(neg(imp(neg(neg(x0)),x0)))",
    "neg(and(x0,neg(x0)))",
    "imp(neg(x0),imp(x0,x1))",
    "imp(and(x0,x1),or(x1,x0))",
)


_spot_cache: dict[tuple, tuple[Formula, ...]] = {}


def _spot_theorems(logic, sig: Signature) -> tuple[Formula, ...]:
    from .syntax import parse_formula

    key = (logic, sig)
    if key not in _spot_cache:
        out = []
        for text in _SPOT_THEOREM_TEXTS:
            try:
                phi = parse_formula(sig, text)
            except ValueError:
                continue
            if logic.proves((), phi):
                out.append(phi)
        _spot_cache[key] = tuple(out)
    return _spot_cache[key]


def filter_closure(logic, A: FiniteAlgebra, S: Iterable[int], num_vars: int | None = None, depth: int = 2,
                   spot_check: bool = True) -> frozenset[int]:
    """Least superset of S containing all bounded-theorem values and closed
    under modus ponens for the logic's implication. A spot-check with a few
    deeper theorems raises (reported, not silent) when the enumeration bound
    was too small for this algebra."""
    imp = _require_implicative(logic)
    if imp not in A.tables:
        raise ValueError(f"algebra does not interpret {imp}")
    F = set(S)
    if any(not 0 <= a < A.size for a in F):
        raise ValueError("element out of range")
    F |= theorem_values(logic, A, num_vars, depth)
    table = A.tables[imp]
    changed = True
    while changed:
        changed = False
        for a in list(F):
            row = a * A.size
            for b in A.elements():
                if b not in F and table[row + b] in F:
                    F.add(b)
                    changed = True
    result = frozenset(F)
    if spot_check and not is_filter(logic, A, result):
        raise RuntimeError(
            "closure bound exhausted: a theorem takes a value outside the closure, or "
            "detachment escapes it; raise num_vars/depth"
        )
    return result


def is_filter(logic, A: FiniteAlgebra, F: Iterable[int], num_vars: int | None = None, depth: int = 2) -> bool:
    """Bounded l-filter check for implicative logics: contains every bounded
    theorem value (plus a handful of deeper spot theorems) and is closed under
    modus ponens."""
    imp = _require_implicative(logic)
    F = set(F)
    if not theorem_values(logic, A, num_vars, depth) <= F:
        return False
    for phi in _spot_theorems(logic, A.signature):
        vars_ = sorted(_formula_vars(phi))
        for assignment in itertools.product(A.elements(), repeat=len(vars_)):
            if evaluate(A, phi, dict(zip(vars_, assignment))) not in F:
                return False
    table = A.tables[imp]
    for a in F:
        row = a * A.size
        for b in A.elements():
            if table[row + b] in F and b not in F:
                return False
    return True


def all_filters(logic, A: FiniteAlgebra, max_size: int = 8) -> list[frozenset[int]]:
    """Every subset passing the filter check, smallest first (the order is
    compatible with inclusion)."""
    if A.size > max_size:
        raise ValueError(f"carrier too large for exhaustive filter enumeration (> {max_size})")
    out = []
    for k in range(A.size + 1):
        for subset in itertools.combinations(A.elements(), k):
            F = frozenset(subset)
            if is_filter(logic, A, F):
                out.append(F)
    return out


def load_algebra(path: str) -> FiniteAlgebra:
    """Algebra file: size and per-connective tables; the signature may be
    inline or a path relative to the algebra file."""
    import json
    import os

    with open(path) as fh:
        data = json.load(fh)
    sig_entry = data["signature"]
    if isinstance(sig_entry, str):
        from .syntax import load_signature

        sig = load_signature(os.path.join(os.path.dirname(path), sig_entry))
    else:
        sig = Signature.from_json(sig_entry)
    return FiniteAlgebra.from_json(data, sig)
