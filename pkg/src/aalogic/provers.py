"""Exact decision procedures: classical and intuitionistic provability over
{neg, imp, and, or, iff}, a Kripke countermodel search usable as an
independent refutation oracle, and equational consequence over finite
algebra classes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .algebra import FiniteAlgebra, evaluate
from .syntax import App, Formula, Var, variables


@dataclass(frozen=True)
class Equation:
    lhs: Formula
    rhs: Formula

    def __repr__(self):
        return f"{self.lhs!r} == {self.rhs!r}"


BOOLEAN_CONNECTIVES = ("neg", "imp", "and", "or", "iff")


# ---------------------------------------------------------------------------
# classical provability: bit-parallel truth tables
# ---------------------------------------------------------------------------

def _truth_bits(phi: Formula, columns: dict[int, int], full: int) -> int:
    """Bitmask of rows (valuations) where phi is true."""
    if isinstance(phi, Var):
        return columns[phi.index]
    name = phi.name
    if name == "neg":
        return full ^ _truth_bits(phi.args[0], columns, full)
    a = _truth_bits(phi.args[0], columns, full)
    b = _truth_bits(phi.args[1], columns, full)
    if name == "imp":
        return (full ^ a) | b
    if name == "and":
        return a & b
    if name == "or":
        return a | b
    if name == "iff":
        return full ^ (a ^ b)
    raise ValueError(f"connective {name} is not a classical connective")


def cpc_decide(gamma: Iterable[Formula], phi: Formula) -> bool:
    """Gamma entails phi classically: every two-valued valuation making all of
    Gamma true makes phi true."""
    gamma = tuple(gamma)
    vars_ = sorted(set().union(variables(phi), *(variables(g) for g in gamma)))
    rows = 1 << len(vars_)
    full = (1 << rows) - 1
    columns = {}
    for j, v in enumerate(vars_):
        mask = 0
        for row in range(rows):
            if (row >> j) & 1:
                mask |= 1 << row
        columns[v] = mask
    ok = full
    for g in gamma:
        ok &= _truth_bits(g, columns, full)
    return ok & ~_truth_bits(phi, columns, full) & full == 0


# ---------------------------------------------------------------------------
# intuitionistic provability: contraction-free sequent search
# ---------------------------------------------------------------------------

_BOT = App("_bot", ())


def _desugar(phi: Formula) -> Formula:
    """Rewrite neg/iff in terms of imp/and and an internal falsum."""
    if isinstance(phi, Var):
        return phi
    name = phi.name
    if name == "neg":
        return App("imp", (_desugar(phi.args[0]), _BOT))
    if name == "iff":
        a, b = map(_desugar, phi.args)
        return App("and", (App("imp", (a, b)), App("imp", (b, a))))
    if name in ("imp", "and", "or"):
        return App(name, tuple(map(_desugar, phi.args)))
    raise ValueError(f"connective {name} is not an intuitionistic connective")


def _is_atom(phi: Formula) -> bool:
    return isinstance(phi, Var)


_sequent_memo: dict[tuple, bool] = {}


def clear_proof_cache():
    _sequent_memo.clear()


def _prove(ctx: frozenset, goal: Formula) -> bool:
    key = (ctx, goal)
    cached = _sequent_memo.get(key)
    if cached is not None:
        return cached
    if len(_sequent_memo) > 4_000_000:
        _sequent_memo.clear()
    result = _prove_inner(set(ctx), goal)
    _sequent_memo[key] = result
    return result


def _prove_inner(ctx: set, goal: Formula) -> bool:
    # invertible phase: rewrite the sequent until only branching rules apply
    while True:
        if _BOT in ctx or goal in ctx:
            return True
        if isinstance(goal, App) and goal.name == "and":
            a, b = goal.args
            return _prove(frozenset(ctx), a) and _prove(frozenset(ctx), b)
        if isinstance(goal, App) and goal.name == "imp":
            ctx = set(ctx)
            ctx.add(goal.args[0])
            goal = goal.args[1]
            continue
        reduced = False
        for phi in list(ctx):
            if not isinstance(phi, App):
                continue
            if phi.name == "and":
                ctx.discard(phi)
                ctx.update(phi.args)
                reduced = True
                break
            if phi.name == "or":
                a, b = phi.args
                rest = frozenset(ctx - {phi})
                return _prove(rest | {a}, goal) and _prove(rest | {b}, goal)
            if phi.name == "imp":
                ant, cons = phi.args
                if ant == _BOT:
                    ctx.discard(phi)
                    reduced = True
                    break
                if _is_atom(ant) and ant in ctx:
                    ctx.discard(phi)
                    ctx.add(cons)
                    reduced = True
                    break
                if isinstance(ant, App) and ant.name == "and":
                    c, d = ant.args
                    ctx.discard(phi)
                    ctx.add(App("imp", (c, App("imp", (d, cons)))))
                    reduced = True
                    break
                if isinstance(ant, App) and ant.name == "or":
                    c, d = ant.args
                    ctx.discard(phi)
                    ctx.add(App("imp", (c, cons)))
                    ctx.add(App("imp", (d, cons)))
                    reduced = True
                    break
        if not reduced:
            break
    frozen = frozenset(ctx)
    # branching phase: disjunction on the right, nested implication on the left
    if isinstance(goal, App) and goal.name == "or":
        if _prove(frozen, goal.args[0]) or _prove(frozen, goal.args[1]):
            return True
    for phi in frozen:
        if isinstance(phi, App) and phi.name == "imp":
            ant, cons = phi.args
            if isinstance(ant, App) and ant.name == "imp":
                rest = frozen - {phi}
                if _prove(rest | {App("imp", (ant.args[1], cons))}, ant) and _prove(rest | {cons}, goal):
                    return True
    return False


def ipc_decide(gamma: Iterable[Formula], phi: Formula) -> bool:
    """Gamma entails phi intuitionistically, decided by terminating
    contraction-free sequent search with Gamma as the antecedent."""
    ctx = frozenset(_desugar(g) for g in gamma)
    return _prove(ctx, _desugar(phi))


# ---------------------------------------------------------------------------
# Kripke countermodel search (sound refuter, exhaustive up to a world bound)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KripkeModel:
    worlds: int
    up: tuple[int, ...]          # up[w] = bitmask of successors (reflexive, transitive)
    valuation: dict              # var index -> bitmask of worlds (an upset)
    world: int                   # world where the premises hold and the goal fails


def _preorders(n: int) -> tuple:
    if n not in _preorder_cache:
        _preorder_cache[n] = tuple(_enumerate_preorders(n))
    return _preorder_cache[n]


_preorder_cache: dict[int, tuple] = {}


def _enumerate_preorders(n: int):
    diagonal = 0
    for i in range(n):
        diagonal |= 1 << (i * n + i)
    off_diag = [(i, j) for i in range(n) for j in range(n) if i != j]
    for bits in itertools.product((0, 1), repeat=len(off_diag)):
        rel = diagonal
        for (i, j), b in zip(off_diag, bits):
            if b:
                rel |= 1 << (i * n + j)
        ok = True
        for i in range(n):
            for j in range(n):
                if rel >> (i * n + j) & 1:
                    for k in range(n):
                        if rel >> (j * n + k) & 1 and not rel >> (i * n + k) & 1:
                            ok = False
                            break
                    if not ok:
                        break
            if not ok:
                break
        if ok:
            yield tuple(
                sum(1 << j for j in range(n) if rel >> (i * n + j) & 1) for i in range(n)
            )


_upset_cache: dict[tuple, list[int]] = {}


def _upsets(n: int, up: tuple[int, ...]) -> list[int]:
    if up not in _upset_cache:
        _upset_cache[up] = [
            s
            for s in range(1 << n)
            if all(up[w] & ~s == 0 for w in range(n) if s >> w & 1)
        ]
    return _upset_cache[up]


def _forces(w: int, phi: Formula, up, val, memo) -> bool:
    key = (w, phi)
    cached = memo.get(key)
    if cached is not None:
        return cached
    if isinstance(phi, Var):
        result = bool(val[phi.index] >> w & 1)
    else:
        name = phi.name
        if name == "and":
            result = all(_forces(w, a, up, val, memo) for a in phi.args)
        elif name == "or":
            result = any(_forces(w, a, up, val, memo) for a in phi.args)
        elif name == "imp":
            a, b = phi.args
            result = all(
                not _forces(u, a, up, val, memo) or _forces(u, b, up, val, memo)
                for u in range(len(up))
                if up[w] >> u & 1
            )
        elif name == "neg":
            a = phi.args[0]
            result = all(not _forces(u, a, up, val, memo) for u in range(len(up)) if up[w] >> u & 1)
        elif name == "iff":
            a, b = phi.args
            result = _forces(w, App("imp", (a, b)), up, val, memo) and _forces(
                w, App("imp", (b, a)), up, val, memo
            )
        elif name == "_bot":
            result = False
        else:
            raise ValueError(f"connective {name} is not an intuitionistic connective")
    memo[key] = result
    return result


def kripke_countermodel(gamma: Iterable[Formula], phi: Formula, max_worlds: int = 4) -> Optional[KripkeModel]:
    """Search all Kripke models with at most ``max_worlds`` worlds for one
    refuting Gamma |- phi. Returns None when no countermodel that small exists."""
    gamma = tuple(gamma)
    vars_ = sorted(set().union(variables(phi), *(variables(g) for g in gamma)))
    for n in range(1, max_worlds + 1):
        for up in _preorders(n):
            upsets = _upsets(n, up)
            for assignment in itertools.product(upsets, repeat=len(vars_)):
                val = dict(zip(vars_, assignment))
                memo: dict = {}
                for w in range(n):
                    if all(_forces(w, g, up, val, memo) for g in gamma) and not _forces(
                        w, phi, up, val, memo
                    ):
                        return KripkeModel(n, up, val, w)
    return None


def kripke_refutes(gamma: Iterable[Formula], phi: Formula, max_worlds: int = 4) -> bool:
    return kripke_countermodel(gamma, phi, max_worlds) is not None


# ---------------------------------------------------------------------------
# equational consequence over finite algebra classes
# ---------------------------------------------------------------------------

def equational_consequence(
    K: Sequence[FiniteAlgebra], gamma: Iterable[Equation], eq: Equation
) -> bool:
    """For every algebra in K and every valuation satisfying all premise
    equations, the conclusion equation holds."""
    gamma = tuple(gamma)
    vars_ = sorted(
        set().union(
            variables(eq.lhs),
            variables(eq.rhs),
            *(variables(e.lhs) | variables(e.rhs) for e in gamma),
        )
    )
    for A in K:
        for assignment in itertools.product(A.elements(), repeat=len(vars_)):
            v = dict(zip(vars_, assignment))
            if all(evaluate(A, e.lhs, v) == evaluate(A, e.rhs, v) for e in gamma):
                if evaluate(A, eq.lhs, v) != evaluate(A, eq.rhs, v):
                    return False
    return True


def quasiidentity_holds(
    A: FiniteAlgebra, premises: Iterable[Equation], conclusion: Equation
) -> bool:
    return equational_consequence([A], premises, conclusion)
