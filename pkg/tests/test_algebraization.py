import pytest

from aalogic import (
    AlgebraizingPair,
    Equation,
    LogicSpec,
    Matrix,
    Signature,
    Var,
    check_bp_conditions,
    check_interpretation,
    check_inverse_condition,
    delta_translate,
    detachment_check,
    is_lindenbaum,
    qv_axioms,
    qv_membership,
    quasiidentity_holds,
    tau_translate,
)
from aalogic.syntax import enumerate_formulas
from aalogic import corpus


class TestTranslations:
    def test_tau_on_variable(self, pair, F):
        eqs = tau_translate(pair, F("x1"))
        assert eqs == (Equation(F("imp(x1,x1)"), F("x1")),)

    def test_tau_on_top(self, pair, F):
        top = F("imp(x0,x0)")
        eqs = tau_translate(pair, top)
        assert eqs == (Equation(F("imp(imp(x0,x0),imp(x0,x0))"), top),)

    def test_tau_substitutes(self, pair, F):
        eqs = tau_translate(pair, F("neg(x0)"))
        assert eqs == (Equation(F("imp(neg(x0),neg(x0))"), F("neg(x0)")),)

    def test_delta(self, pair, F):
        assert delta_translate(pair, Equation(F("x0"), F("x1"))) == (F("iff(x0,x1)"),)
        phi = F("and(x0,x1)")
        assert delta_translate(pair, Equation(phi, phi)) == (F("iff(and(x0,x1),and(x0,x1))"),)

    def test_delta_two_formulas(self, F):
        two = AlgebraizingPair(
            [F("imp(x0,x1)"), F("imp(x1,x0)")], [(F("imp(x0,x0)"), F("x0"))]
        )
        assert len(delta_translate(two, Equation(F("x0"), F("x1")))) == 2

    def test_variable_bounds_enforced(self, F):
        with pytest.raises(ValueError):
            AlgebraizingPair([F("iff(x0,x2)")], [(F("x0"), F("x0"))])
        with pytest.raises(ValueError):
            AlgebraizingPair([F("iff(x0,x1)")], [(F("x1"), F("x0"))])

    def test_pair_file_roundtrip(self, pair):
        from aalogic.semantics import BUILTIN_SIGNATURE

        loaded = AlgebraizingPair.load("data/cpc_pair.json", BUILTIN_SIGNATURE)
        assert loaded == pair


class TestConditions:
    def test_cpc_passes(self, cpc, pair):
        report = check_bp_conditions(cpc, pair, 2, 2)
        assert report.passed
        assert all(r.passed for r in report.conditions.values())

    def test_ipc_passes_small(self, ipc, pair):
        report = check_bp_conditions(ipc, pair, 1, 2)
        assert report.passed

    def test_perturbed_pair_fails_symmetry(self, cpc):
        report = check_bp_conditions(cpc, corpus.perturbed_pair(), 2, 2)
        assert not report.passed
        assert not report.conditions["b"].passed
        assert report.conditions["b"].witness is not None
        assert report.conditions["a"].passed

    def test_neg_only_logic_fails_reflexivity_first(self):
        sig = Signature([("neg", 1)])
        neg_table = {"neg": [1, 0]}
        from aalogic.algebra import FiniteAlgebra

        logic = LogicSpec.from_matrices(
            sig, [Matrix(FiniteAlgebra(sig, 2, neg_table), frozenset({1}))]
        )
        degenerate = AlgebraizingPair([Var(0)], [(Var(0), Var(0))])
        report = check_bp_conditions(logic, degenerate, 1, 2, congruential=False)
        assert not report.conditions["a"].passed

    def test_bounds_validated(self, cpc, pair):
        with pytest.raises(ValueError):
            check_bp_conditions(cpc, pair, 0, 2)

    def test_monotonicity_under_strengthening(self, sig, pair, b2, h3):
        weaker = LogicSpec.from_matrices(
            sig,
            [Matrix(b2, frozenset({1})), Matrix(h3, frozenset({2}))],
            implication="imp",
        )
        stronger = LogicSpec.from_matrices(sig, [Matrix(b2, frozenset({1}))], implication="imp")
        weak_report = check_bp_conditions(weaker, pair, 1, 2, congruential=False)
        strong_report = check_bp_conditions(stronger, pair, 1, 2, congruential=False)
        assert weak_report.passed
        assert strong_report.passed

    def test_equivalent_delta_gives_same_verdicts(self, cpc, F):
        split = AlgebraizingPair(
            [F("imp(x0,x1)"), F("imp(x1,x0)")], [(F("imp(x0,x0)"), F("x0"))]
        )
        a = check_bp_conditions(cpc, corpus.classical_pair(), 2, 2)
        b = check_bp_conditions(cpc, split, 2, 2)
        assert {k: v.passed for k, v in a.conditions.items()} == {
            k: v.passed for k, v in b.conditions.items()
        }


class TestInterpretation:
    def test_trivial(self, cpc, pair, b2, F):
        assert check_interpretation(cpc, pair, [b2], (F("x0"),), F("x0")) == (True, True)

    def test_peirce(self, cpc, pair, b2, peirce):
        assert check_interpretation(cpc, pair, [b2], (), peirce) == (True, True)

    def test_wrong_semantics_mismatch(self, ipc, pair, b2, peirce):
        assert check_interpretation(ipc, pair, [b2], (), peirce) == (False, True)

    def test_cpc_agrees_on_bounded_instances(self, cpc, pair, b2, sig):
        for phi in enumerate_formulas(sig, 2, 2):
            left, right = check_interpretation(cpc, pair, [b2], (), phi)
            assert left == right

    def test_ipc_sound_direction(self, ipc, pair, h3, b2, sig):
        # finite families can over-approve; the prover side must stay below
        for phi in enumerate_formulas(sig, 2, 2):
            left, right = check_interpretation(ipc, pair, [h3, b2], (), phi)
            if left:
                assert right


class TestInverseAndDetachment:
    def test_inverse_on_b2(self, cpc, pair, b2, F):
        assert check_inverse_condition(cpc, pair, [b2], Equation(F("x0"), F("x1"))) == (True, True)

    def test_inverse_trivial(self, cpc, pair, b2, F):
        phi = F("and(x0,x1)")
        assert check_inverse_condition(cpc, pair, [b2], Equation(phi, phi)) == (True, True)

    def test_inverse_on_chain(self, ipc, pair, h3, F):
        assert check_inverse_condition(ipc, pair, [h3], Equation(F("x0"), F("x1"))) == (True, True)

    def test_detachment(self, cpc, ipc, pair, F):
        assert detachment_check(cpc, pair, F("x0"), F("x1"))
        assert detachment_check(cpc, pair, F("x0"), F("x0"))
        assert detachment_check(ipc, pair, F("x0"), F("x1"))


@pytest.fixture(scope="module")
def axioms(cpc, pair):
    return qv_axioms(cpc, pair, depth=2, num_vars=2)


class TestQuasivarietyAxioms:
    def test_kind_i_shape(self, axioms, F):
        first = [q for q in axioms if q.kind == "i"]
        assert len(first) == 1
        eq = first[0].conclusion
        assert eq == Equation(F("imp(iff(x0,x0),iff(x0,x0))"), F("iff(x0,x0)"))

    def test_kind_ii_shape(self, axioms, F):
        second = [q for q in axioms if q.kind == "ii"]
        assert len(second) == 1
        qi = second[0]
        assert qi.conclusion == Equation(Var(0), Var(1))
        assert qi.premises == (
            Equation(F("imp(iff(x0,x1),iff(x0,x1))"), F("iff(x0,x1)")),
        )

    def test_kind_iii_contains_modus_ponens(self, axioms, F, pair):
        mp_premises = tau_translate(pair, F("x0")) + tau_translate(pair, F("imp(x0,x1)"))
        mp_conclusion = tau_translate(pair, F("x1"))[0]
        assert any(
            q.kind == "iii" and set(q.premises) == set(mp_premises) and q.conclusion == mp_conclusion
            for q in axioms
        )

    def test_all_hold_in_b2(self, axioms, b2):
        for q in axioms:
            assert quasiidentity_holds(b2, q.premises, q.conclusion)

    def test_some_kind_iii_fails_on_chain(self, cpc, pair, h3):
        # the separating entailments (excluded middle and friends) are depth 3
        deeper = qv_axioms(cpc, pair, depth=3, num_vars=2, max_premises=0)
        assert any(
            q.kind == "iii" and not quasiidentity_holds(h3, q.premises, q.conclusion)
            for q in deeper
        )

    def test_kind_ii_holds_in_every_heyting_algebra(self, axioms):
        # delta-faithfulness is a Heyting fact, not a Boolean one: a<->b = top
        # forces a = b in any Heyting algebra, so kind (ii) cannot separate
        kind2 = next(q for q in axioms if q.kind == "ii")
        for _, A in corpus.heyting_corpus():
            assert quasiidentity_holds(A, kind2.premises, kind2.conclusion)


class TestLindenbaum:
    def test_cpc(self, cpc, pair):
        report = is_lindenbaum(cpc, pair, 2, 2)
        assert report.passed and report.witness is None

    def test_ipc(self, ipc, pair):
        report = is_lindenbaum(ipc, pair, 2, 2)
        assert report.passed

    def test_lukasiewicz_is_not_lindenbaum(self, l3, pair):
        report = is_lindenbaum(l3, pair, 2, 3)
        assert not report.passed
        assert report.witness is not None


class TestQvMembership:
    def test_b2_boolean(self, b2):
        assert qv_membership("boolean", b2)
        assert qv_membership("heyting", b2)

    def test_h3_heyting_not_boolean(self, h3):
        assert qv_membership("heyting", h3)
        assert not qv_membership("boolean", h3)

    def test_diamond_boolean(self, b4):
        assert qv_membership("boolean", b4)

    def test_lukasiewicz_is_neither(self):
        A = corpus.lukasiewicz3()
        assert not qv_membership("heyting", A)
        assert not qv_membership("boolean", A)

    def test_corpus_classification(self):
        for _, A in corpus.heyting_corpus():
            assert qv_membership("heyting", A)
        for _, A in corpus.boolean_corpus():
            assert qv_membership("boolean", A)

    def test_signature_requirement(self):
        sig = Signature([("neg", 1)])
        from aalogic.algebra import FiniteAlgebra

        A = FiniteAlgebra(sig, 2, {"neg": [1, 0]})
        with pytest.raises(ValueError):
            qv_membership("boolean", A)

    def test_unknown_class(self, b2):
        with pytest.raises(ValueError):
            qv_membership("modal", b2)
