"""Matrix models, matrix consequence, reducts along flexible morphisms, and
the model-translation half of the satisfaction condition."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import provers
from .algebra import FiniteAlgebra, evaluate
from .syntax import (
    FlexibleMorphism,
    Formula,
    Signature,
    enumerate_formulas,
    extend_morphism,
    formula_over,
    variables,
)

BUILTIN_SIGNATURE = Signature(
    [("neg", 1), ("imp", 2), ("and", 2), ("or", 2), ("iff", 2)]
)


@dataclass(frozen=True)
class Matrix:
    """An algebra with a designated subset of truth values."""

    algebra: FiniteAlgebra
    filter: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "filter", frozenset(self.filter))
        if any(not 0 <= a < self.algebra.size for a in self.filter):
            raise ValueError("filter element out of range")

    def __repr__(self):
        return f"Matrix(size={self.algebra.size}, filter={sorted(self.filter)})"


def matrix_satisfies(M: Matrix, gamma: Iterable[Formula], phi: Formula) -> bool:
    """Every valuation sending all of gamma into the filter sends phi there too.
    Valuations range over the variables occurring in the query."""
    return matrix_violation(M, gamma, phi) is None


def matrix_violation(M: Matrix, gamma: Iterable[Formula], phi: Formula) -> Optional[dict[int, int]]:
    gamma = tuple(gamma)
    vars_ = sorted(set().union(variables(phi), *(variables(g) for g in gamma)))
    A, F = M.algebra, M.filter
    for assignment in itertools.product(A.elements(), repeat=len(vars_)):
        v = dict(zip(vars_, assignment))
        if all(evaluate(A, g, v) in F for g in gamma) and evaluate(A, phi, v) not in F:
            return v
    return None


class LogicSpec:
    """A decidable consequence engine over a signature: either a finite family
    of matrices or one of the built-in provers."""

    def __init__(self, kind: str, signature: Signature, matrices: Sequence[Matrix] = (),
                 implication: str | None = None, name: str | None = None):
        if kind not in ("cpc", "ipc", "matrix"):
            raise ValueError(f"unknown engine kind: {kind}")
        if kind == "matrix" and not matrices:
            raise ValueError("a matrix family must be nonempty")
        if kind in ("cpc", "ipc"):
            if not BUILTIN_SIGNATURE.extends(signature):
                raise ValueError("built-in engines only support sublanguages of neg/imp/and/or/iff")
            implication = implication or ("imp" if "imp" in signature else None)
        for M in matrices:
            if M.algebra.signature != signature:
                raise ValueError("matrix signature mismatch")
        if implication is not None and (implication not in signature or signature.arity(implication) != 2):
            raise ValueError(f"implication connective {implication!r} must be binary in the signature")
        self.kind = kind
        self.signature = signature
        self.matrices = tuple(matrices)
        self.implication = implication
        self.name = name or kind

    @classmethod
    def cpc(cls, signature: Signature | None = None) -> "LogicSpec":
        return cls("cpc", signature or BUILTIN_SIGNATURE, name="cpc")

    @classmethod
    def ipc(cls, signature: Signature | None = None) -> "LogicSpec":
        return cls("ipc", signature or BUILTIN_SIGNATURE, name="ipc")

    @classmethod
    def from_matrices(cls, signature: Signature, matrices: Sequence[Matrix],
                      implication: str | None = None, name: str | None = None) -> "LogicSpec":
        return cls("matrix", signature, matrices, implication, name or "matrix-logic")

    def proves(self, gamma: Iterable[Formula], phi: Formula) -> bool:
        gamma = tuple(gamma)
        if self.kind == "cpc":
            return provers.cpc_decide(gamma, phi)
        if self.kind == "ipc":
            return provers.ipc_decide(gamma, phi)
        return all(matrix_satisfies(M, gamma, phi) for M in self.matrices)

    def interderivable(self, phi: Formula, psi: Formula) -> bool:
        return self.proves((phi,), psi) and self.proves((psi,), phi)

    def _key(self):
        return (self.kind, self.signature, self.matrices, self.implication)

    def __eq__(self, other):
        return isinstance(other, LogicSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"LogicSpec({self.name})"


def consequence(l: LogicSpec, gamma: Iterable[Formula], phi: Formula) -> bool:
    """Decide gamma |- phi in the given logic."""
    gamma = tuple(gamma)
    for f in gamma + (phi,):
        if not formula_over(l.signature, f):
            raise ValueError(f"formula {f!r} is not over the logic's signature")
    return l.proves(gamma, phi)


def reduct(h: FlexibleMorphism, M: FiniteAlgebra) -> FiniteAlgebra:
    """Interpret each source connective c as the M-evaluation of h(c); the
    carrier is unchanged."""
    if M.signature != h.target:
        raise ValueError("algebra is not over the morphism's target signature")
    tables = {}
    for name, arity in h.source.connectives:
        image = h(name)
        table = []
        for args in itertools.product(M.elements(), repeat=arity):
            table.append(evaluate(M, image, dict(enumerate(args))))
        tables[name] = table
    return FiniteAlgebra(h.source, M.size, tables)


@dataclass(frozen=True)
class LogicMorphism:
    """A flexible morphism between the signatures of two logics, intended to
    preserve consequence (checked only on bounded instances)."""

    source: LogicSpec
    target: LogicSpec
    morphism: FlexibleMorphism

    def __post_init__(self):
        if self.morphism.source != self.source.signature or self.morphism.target != self.target.signature:
            raise ValueError("morphism signatures do not match the logics")

    def translate(self, phi: Formula) -> Formula:
        return extend_morphism(self.morphism, phi)

    def preserves_consequence(self, num_vars: int = 2, depth: int = 2, gamma_size: int = 1,
                              limit: int = 2000) -> Optional[tuple]:
        """Bounded check; returns a violating (gamma, phi) or None."""
        universe = enumerate_formulas(self.source.signature, num_vars, depth)
        gammas: list[tuple] = [()]
        for size in range(1, gamma_size + 1):
            gammas.extend(itertools.combinations(universe, size))
        count = 0
        for phi in universe:
            for gamma in gammas:
                if count >= limit:
                    return None
                count += 1
                if self.source.proves(gamma, phi):
                    image_gamma = tuple(self.translate(g) for g in gamma)
                    if not self.target.proves(image_gamma, self.translate(phi)):
                        return (gamma, phi)
        return None


def identity_morphism(l: LogicSpec) -> LogicMorphism:
    return LogicMorphism(l, l, FlexibleMorphism.identity(l.signature))


def mod_translate(h: LogicMorphism, M: Matrix, check: bool = True,
                  num_vars: int = 2, depth: int = 2, samples: int = 60) -> Matrix:
    """Translate a matrix model of the target logic along h: take the reduct
    of the algebra and keep the filter. With ``check`` on, spot-check that the
    filter is still closed under bounded source-logic consequences."""
    translated = Matrix(reduct(h.morphism, M.algebra), M.filter)
    if check:
        witness = _filter_check(h.source, translated, num_vars, depth, samples)
        if witness is not None:
            gamma, phi, v = witness
            raise ValueError(
                f"filter is not closed under source consequences: {list(gamma)} |- {phi!r} "
                f"fails at valuation {v}"
            )
    return translated


def _filter_check(logic: LogicSpec, M: Matrix, num_vars: int, depth: int, samples: int):
    universe = enumerate_formulas(logic.signature, num_vars, depth)
    count = 0
    for phi in universe:
        for gamma in itertools.chain([()], ((g,) for g in universe)):
            if count >= samples:
                return None
            if logic.proves(gamma, phi):
                count += 1
                v = matrix_violation(M, gamma, phi)
                if v is not None:
                    return gamma, phi, v
    return None


def satisfaction_condition_check(h: LogicMorphism, M: Matrix, gamma: Iterable[Formula],
                                 phi: Formula) -> bool:
    """Whether [M |= translated sentence] equals [translated model |= sentence];
    expected always true."""
    gamma = tuple(gamma)
    image_gamma = tuple(h.translate(g) for g in gamma)
    left = matrix_satisfies(M, image_gamma, h.translate(phi))
    right = matrix_satisfies(mod_translate(h, M, check=False), gamma, phi)
    return left == right


def load_logic(path: str) -> LogicSpec:
    """Logic spec file: a signature plus either a builtin engine name or a
    matrix family (algebra entries may be paths relative to this file)."""
    import json
    import os

    from .algebra import load_algebra
    from .syntax import load_signature

    with open(path) as fh:
        data = json.load(fh)
    engine = data.get("engine", data)
    sig_entry = data.get("signature")
    if isinstance(sig_entry, str):
        sig = load_signature(os.path.join(os.path.dirname(path), sig_entry))
    elif sig_entry is not None:
        sig = Signature.from_json(sig_entry)
    else:
        sig = None
    if engine.get("kind") == "builtin":
        name = engine["name"]
        if name == "cpc":
            return LogicSpec.cpc(sig)
        if name == "ipc":
            return LogicSpec.ipc(sig)
        raise ValueError(f"unknown builtin logic {name!r}")
    if engine.get("kind") == "matrix":
        if sig is None:
            raise ValueError("matrix logic spec needs a signature")
        matrices = []
        for entry in engine["matrices"]:
            alg = entry["algebra"]
            if isinstance(alg, str):
                A = load_algebra(os.path.join(os.path.dirname(path), alg))
            else:
                A = FiniteAlgebra.from_json(alg, sig if "signature" not in alg else None)
            matrices.append(Matrix(A, frozenset(entry["filter"])))
        return LogicSpec.from_matrices(sig, matrices, implication=data.get("implication"))
    raise ValueError("logic spec file has no recognizable engine")
