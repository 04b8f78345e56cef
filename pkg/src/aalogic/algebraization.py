"""Algebraizing pairs: the equation/formula translations, condition checks
for algebraizability, quasivariety axiom generation, the Lindenbaum property
and direct Boolean/Heyting law checks."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .algebra import FiniteAlgebra
from .provers import Equation, equational_consequence
from .semantics import LogicSpec, consequence
from .syntax import (
    App,
    Formula,
    Signature,
    Var,
    enumerate_formulas,
    parse_formula,
    print_formula,
    substitute,
    variables,
)


class AlgebraizingPair:
    """Equivalence formulas (two variables) plus defining equations (one
    variable, stored as (lhs, rhs) formula pairs)."""

    def __init__(self, delta: Sequence[Formula], tau: Sequence[tuple[Formula, Formula]]):
        self.delta = tuple(delta)
        self.tau = tuple((l, r) for l, r in tau)
        if not self.delta or not self.tau:
            raise ValueError("delta and tau must be nonempty")
        for d in self.delta:
            if not variables(d) <= {0, 1}:
                raise ValueError(f"equivalence formula {d!r} must use only x0, x1")
        for l, r in self.tau:
            if not variables(l) <= {0} or not variables(r) <= {0}:
                raise ValueError("defining equations must use only x0")

    def __eq__(self, other):
        return isinstance(other, AlgebraizingPair) and (self.delta, self.tau) == (other.delta, other.tau)

    def __hash__(self):
        return hash((self.delta, self.tau))

    def __repr__(self):
        ds = ",".join(map(print_formula, self.delta))
        ts = ",".join(f"({print_formula(l)},{print_formula(r)})" for l, r in self.tau)
        return f"AlgebraizingPair(delta=[{ds}], tau=[{ts}])"

    def to_json(self) -> dict:
        return {
            "delta": [print_formula(d) for d in self.delta],
            "tau": [[print_formula(l), print_formula(r)] for l, r in self.tau],
        }

    @classmethod
    def from_json(cls, data: dict, sig: Signature) -> "AlgebraizingPair":
        delta = [parse_formula(sig, t) for t in data["delta"]]
        tau = [(parse_formula(sig, l), parse_formula(sig, r)) for l, r in data["tau"]]
        return cls(delta, tau)

    @classmethod
    def load(cls, path: str, sig: Signature) -> "AlgebraizingPair":
        with open(path) as fh:
            return cls.from_json(json.load(fh), sig)


def tau_translate(pair: AlgebraizingPair, phi: Formula) -> tuple[Equation, ...]:
    """The defining equations instantiated at phi."""
    return tuple(Equation(substitute(l, {0: phi}), substitute(r, {0: phi})) for l, r in pair.tau)


def delta_translate(pair: AlgebraizingPair, eq: Equation) -> tuple[Formula, ...]:
    """The equivalence formulas instantiated at an equation's two sides."""
    return tuple(substitute(d, {0: eq.lhs, 1: eq.rhs}) for d in pair.delta)


def _delta_at(pair: AlgebraizingPair, phi: Formula, psi: Formula) -> tuple[Formula, ...]:
    return delta_translate(pair, Equation(phi, psi))


def _delta_tau(pair: AlgebraizingPair, phi: Formula) -> tuple[Formula, ...]:
    out = []
    for eq in tau_translate(pair, phi):
        out.extend(_delta_at(pair, eq.lhs, eq.rhs))
    return tuple(out)


@dataclass
class ConditionResult:
    passed: bool
    instances: int
    witness: Optional[str] = None


@dataclass
class BPReport:
    logic: str
    bounds: dict
    universe_size: int
    class_count: int
    conditions: dict[str, ConditionResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions.values())

    def to_json(self) -> dict:
        return {
            "logic": self.logic,
            "bounds": self.bounds,
            "universe_size": self.universe_size,
            "interderivability_classes": self.class_count,
            "conditions": {
                k: {"passed": c.passed, "instances": c.instances, "witness": c.witness}
                for k, c in self.conditions.items()
            },
            "passed": self.passed,
        }

    def to_text(self) -> str:
        lines = [
            f"algebraizability conditions for {self.logic} "
            f"(vars={self.bounds['vars']}, depth={self.bounds['depth']}, "
            f"universe={self.universe_size}, classes={self.class_count})"
        ]
        for k, c in self.conditions.items():
            status = "pass" if c.passed else "FAIL"
            extra = f" witness: {c.witness}" if c.witness else ""
            lines.append(f"  ({k}) {status} [{c.instances} instances]{extra}")
        lines.append("overall: " + ("pass" if self.passed else "FAIL"))
        return "\n".join(lines)


def _interderivability_classes(l: LogicSpec, universe: Sequence[Formula]) -> list[Formula]:
    """One representative per interderivability class, in universe order."""
    reps: list[Formula] = []
    for phi in universe:
        if not any(l.interderivable(phi, r) for r in reps):
            reps.append(phi)
    return reps


def check_bp_conditions(l: LogicSpec, pair: AlgebraizingPair, num_vars: int, depth: int,
                        congruential: Optional[bool] = None) -> BPReport:
    """Check the five algebraizability conditions on every formula tuple within
    the bounds. For congruential logics the tuple conditions are checked on
    interderivability-class representatives, which decides them for the whole
    universe."""
    if num_vars < 1 or depth < 1:
        raise ValueError("bounds must be >= 1")
    if congruential is None:
        congruential = l.kind in ("cpc", "ipc")
    universe = enumerate_formulas(l.signature, num_vars, depth)
    reps = _interderivability_classes(l, universe) if congruential else list(universe)
    report = BPReport(
        logic=l.name,
        bounds={"vars": num_vars, "depth": depth, "congruential_dedup": congruential},
        universe_size=len(universe),
        class_count=len(reps),
    )

    def witness(*formulas: Formula) -> str:
        return ", ".join(print_formula(f) for f in formulas)

    # (a) every formula is delta-related to itself
    result = ConditionResult(True, 0)
    for phi in universe:
        result.instances += 1
        if not all(l.proves((), d) for d in _delta_at(pair, phi, phi)):
            result.passed, result.witness = False, witness(phi)
            break
    report.conditions["a"] = result

    # (b) symmetry
    result = ConditionResult(True, 0)
    for phi, psi in itertools.product(reps, repeat=2):
        result.instances += 1
        prem = _delta_at(pair, phi, psi)
        if not all(l.proves(prem, d) for d in _delta_at(pair, psi, phi)):
            result.passed, result.witness = False, witness(phi, psi)
            break
    report.conditions["b"] = result

    # (c) transitivity
    result = ConditionResult(True, 0)
    for phi, psi, chi in itertools.product(reps, repeat=3):
        result.instances += 1
        prem = _delta_at(pair, phi, psi) + _delta_at(pair, psi, chi)
        if not all(l.proves(prem, d) for d in _delta_at(pair, phi, chi)):
            result.passed, result.witness = False, witness(phi, psi, chi)
            break
    report.conditions["c"] = result

    # (d) congruence, per connective
    result = ConditionResult(True, 0)
    for name, arity in l.signature.connectives:
        if not result.passed:
            break
        for combo in itertools.product(reps, repeat=2 * arity):
            result.instances += 1
            phis, psis = combo[:arity], combo[arity:]
            prem = tuple(
                d for p, q in zip(phis, psis) for d in _delta_at(pair, p, q)
            )
            if not all(
                l.proves(prem, d) for d in _delta_at(pair, App(name, phis), App(name, psis))
            ):
                result.passed = False
                result.witness = f"{name}: " + witness(*combo)
                break
    report.conditions["d"] = result

    # (e) every formula is interderivable with delta of its defining equations
    result = ConditionResult(True, 0)
    for phi in universe:
        result.instances += 1
        image = _delta_tau(pair, phi)
        if not (all(l.proves((phi,), d) for d in image) and l.proves(image, phi)):
            result.passed, result.witness = False, witness(phi)
            break
    report.conditions["e"] = result

    return report


def check_interpretation(l: LogicSpec, pair: AlgebraizingPair, K: Sequence[FiniteAlgebra],
                         gamma: Iterable[Formula], phi: Formula) -> tuple[bool, bool]:
    """Both sides of the faithful-interpretation equivalence: the logic's
    consequence and the equational consequence of the translated sentence."""
    gamma = tuple(gamma)
    left = consequence(l, gamma, phi)
    premises = tuple(eq for g in gamma for eq in tau_translate(pair, g))
    right = all(equational_consequence(K, premises, eq) for eq in tau_translate(pair, phi))
    return left, right


def check_inverse_condition(l: LogicSpec, pair: AlgebraizingPair, K: Sequence[FiniteAlgebra],
                            eq: Equation) -> tuple[bool, bool]:
    """Both directions of eq =||= tau(delta(eq)) over K."""
    image = tuple(
        e for d in delta_translate(pair, eq) for e in tau_translate(pair, d)
    )
    forward = all(equational_consequence(K, (eq,), e) for e in image)
    backward = equational_consequence(K, image, eq)
    return forward, backward


def detachment_check(l: LogicSpec, pair: AlgebraizingPair, phi: Formula, psi: Formula) -> bool:
    """phi together with phi-delta-psi entails psi."""
    return consequence(l, (phi,) + _delta_at(pair, phi, psi), psi)


@dataclass(frozen=True)
class QuasiIdentity:
    kind: str  # "i", "ii" or "iii"
    premises: tuple[Equation, ...]
    conclusion: Equation

    def __repr__(self):
        prem = " & ".join(map(repr, self.premises)) or "true"
        return f"[{self.kind}] {prem} -> {self.conclusion!r}"


def qv_axioms(l: LogicSpec, pair: AlgebraizingPair, depth: int, num_vars: int,
              max_premises: int = 2, premise_depth: int | None = None) -> list[QuasiIdentity]:
    """The three kinds of quasi-identities presenting the quasivariety: the
    reflexivity equations, the faithfulness quasi-identity, and one
    quasi-identity per bounded entailment of the logic (conclusions up to
    ``depth``, premise sets of at most ``max_premises`` formulas up to
    ``premise_depth``, which defaults to min(depth, 2))."""
    x0, x1 = Var(0), Var(1)
    axioms: list[QuasiIdentity] = []
    for d in pair.delta:
        refl = substitute(d, {0: x0, 1: x0})
        for eq in tau_translate(pair, refl):
            axioms.append(QuasiIdentity("i", (), eq))
    premises = tuple(
        eq
        for d in pair.delta
        for eq in tau_translate(pair, substitute(d, {0: x0, 1: x1}))
    )
    axioms.append(QuasiIdentity("ii", premises, Equation(x0, x1)))

    conclusions = enumerate_formulas(l.signature, num_vars, depth)
    premise_pool = enumerate_formulas(
        l.signature, num_vars, min(depth, 2) if premise_depth is None else premise_depth
    )
    seen: set[QuasiIdentity] = set()
    for size in range(0, max_premises + 1):
        for gamma in itertools.combinations(premise_pool, size):
            for phi in conclusions:
                if consequence(l, gamma, phi):
                    prem = tuple(eq for g in gamma for eq in tau_translate(pair, g))
                    for eq in tau_translate(pair, phi):
                        qi = QuasiIdentity("iii", prem, eq)
                        if qi not in seen:
                            seen.add(qi)
                            axioms.append(qi)
    return axioms


@dataclass
class LindReport:
    logic: str
    bounds: dict
    passed: bool
    instances: int
    witness: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "logic": self.logic,
            "bounds": self.bounds,
            "passed": self.passed,
            "instances": self.instances,
            "witness": self.witness,
        }

    def to_text(self) -> str:
        status = "pass" if self.passed else "FAIL"
        extra = f" witness: {self.witness}" if self.witness else ""
        return (
            f"lindenbaum property for {self.logic} "
            f"(vars={self.bounds['vars']}, depth={self.bounds['depth']}): "
            f"{status} [{self.instances} instances]{extra}"
        )


def is_lindenbaum(l: LogicSpec, pair: AlgebraizingPair, num_vars: int, depth: int) -> LindReport:
    """Bounded check that interderivability coincides with provable
    delta-equivalence."""
    universe = enumerate_formulas(l.signature, num_vars, depth)
    report = LindReport(l.name, {"vars": num_vars, "depth": depth}, True, 0)
    for phi, psi in itertools.combinations_with_replacement(universe, 2):
        report.instances += 1
        inter = l.interderivable(phi, psi)
        provable = all(l.proves((), d) for d in _delta_at(pair, phi, psi))
        if inter != provable:
            report.passed = False
            report.witness = (
                f"{print_formula(phi)}, {print_formula(psi)}: "
                f"interderivable={inter}, delta-provable={provable}"
            )
            break
    return report


# ---------------------------------------------------------------------------
# direct Boolean / Heyting law checks
# ---------------------------------------------------------------------------

def _find_unit(A: FiniteAlgebra, opname: str) -> Optional[int]:
    for u in A.elements():
        if all(A.op(opname, a, u) == a and A.op(opname, u, a) == a for a in A.elements()):
            return u
    return None


def qv_membership(cls_name: str, A: FiniteAlgebra) -> bool:
    """Law check: bounded distributive lattice with residuated implication for
    'heyting'; additionally excluded middle for 'boolean'."""
    if cls_name not in ("boolean", "heyting"):
        raise ValueError(f"unknown class {cls_name!r} (use 'boolean' or 'heyting')")
    for req in ("neg", "imp", "and", "or"):
        if req not in A.tables:
            raise ValueError(f"algebra does not interpret {req}")

    meet = lambda a, b: A.op("and", a, b)
    join = lambda a, b: A.op("or", a, b)
    els = list(A.elements())

    for a in els:
        if meet(a, a) != a or join(a, a) != a:
            return False
        for b in els:
            if meet(a, b) != meet(b, a) or join(a, b) != join(b, a):
                return False
            if meet(a, join(a, b)) != a or join(a, meet(a, b)) != a:
                return False
            for c in els:
                if meet(a, meet(b, c)) != meet(meet(a, b), c):
                    return False
                if join(a, join(b, c)) != join(join(a, b), c):
                    return False
                if meet(a, join(b, c)) != join(meet(a, b), meet(a, c)):
                    return False
    top = _find_unit(A, "and")
    bottom = _find_unit(A, "or")
    if top is None or bottom is None:
        return False

    leq = lambda a, b: meet(a, b) == a
    for a in els:
        for b in els:
            for c in els:
                if leq(meet(a, b), c) != leq(a, A.op("imp", b, c)):
                    return False
    for a in els:
        if A.op("neg", a) != A.op("imp", a, bottom):
            return False
    if "iff" in A.tables:
        for a in els:
            for b in els:
                if A.op("iff", a, b) != meet(A.op("imp", a, b), A.op("imp", b, a)):
                    return False
    if cls_name == "boolean":
        return all(join(a, A.op("neg", a)) == top for a in els)
    return True
