import json
import random

import pytest

from operadforge.comb import (
    BCI,
    BCIWK,
    BCPMI,
    BIBULLET,
    AppP,
    Axiom,
    Bullet,
    CApp,
    Coef,
    CombError,
    ConstRef,
    Id,
    Prim,
    Signature,
    UnsupportedTrace,
    axiom_suite,
    b_power_apply,
    b_power_element,
    beta_check_abstraction,
    bracket_abstract,
    capp,
    comb_equal,
    comb_normal_form,
    compose,
    derive_classical_S,
    format_cterm,
    parse_cterm,
    poly_arity,
    poly_instantiate,
    run_axiom,
    sample_closed,
    to_lambda,
)
from operadforge.normalize import Verdict
from operadforge.terms import Discipline, alpha_eq, parse, pretty

B, C, I, W, K = Prim("B"), Prim("C"), Prim("I"), Prim("W"), Prim("K")
a, b, c = ConstRef("a"), ConstRef("b"), ConstRef("c")


class TestSignature:
    def test_disciplines(self):
        assert BIBULLET.discipline is Discipline.PLANAR
        assert BCI.discipline is Discipline.LINEAR
        assert BCPMI.discipline is Discipline.BRAIDED
        assert BCIWK.discipline is Discipline.CARTESIAN

    def test_trace_extension_gate(self):
        Signature("BCpmI", trace_extension=True)
        with pytest.raises(CombError):
            Signature("BIbullet", trace_extension=True)
        with pytest.raises(CombError):
            Signature("SK")


class TestSyntax:
    def test_round_trips(self):
        for src in (
            "B",
            "B a b c",
            "(a b)*",
            "a**",
            "a o b o c",
            "(a o b) c",
            "B b* (B a* B)",
            "Tr (Tr (C+ o C+ o C+))",
            "Tr (Tr o B Tr o B C o C)",
            "W (B K I)",
        ):
            t = parse_cterm(src)
            assert parse_cterm(format_cterm(t)) == t

    def test_compose_desugars_to_b(self):
        assert parse_cterm("a o b") == capp(B, a, b)
        assert parse_cterm("a o b o c") == capp(B, a, capp(B, b, c))
        assert parse_cterm("a b o c") == capp(B, CApp(a, b), c)

    def test_star_binds_tightest(self):
        assert parse_cterm("B a*") == CApp(B, Bullet(a))
        assert parse_cterm("(a b)*") == Bullet(CApp(a, b))

    def test_errors(self):
        for bad in ("", "(a", "a )", "o a", "*"):
            with pytest.raises(CombError):
                parse_cterm(bad)


class TestToLambda:
    def test_primitive_table(self):
        table = {
            "B": r"\f x y. f (x y)",
            "C": r"\f x y. f y x",
            "I": r"\x. x",
            "W": r"\f x. f x x",
            "K": r"\f x. f",
            "C+": r"\f x y. [{3; 1}] (f y x)",
            "C-": r"\f x y. [{3; -1}] (f y x)",
        }
        disc = {
            "B": Discipline.PLANAR,
            "C": Discipline.LINEAR,
            "I": Discipline.PLANAR,
            "W": Discipline.CARTESIAN,
            "K": Discipline.CARTESIAN,
            "C+": Discipline.BRAIDED,
            "C-": Discipline.BRAIDED,
        }
        for name, src in table.items():
            assert to_lambda(Prim(name), disc[name]) == parse(src)

    def test_bullet(self):
        assert to_lambda(Bullet(ConstRef("p")), Discipline.PLANAR) == parse(r"\f. f p")

    def test_discipline_gates(self):
        with pytest.raises(CombError):
            to_lambda(C, Discipline.PLANAR)
        with pytest.raises(CombError):
            to_lambda(Prim("C+"), Discipline.LINEAR)
        with pytest.raises(CombError):
            to_lambda(W, Discipline.LINEAR)
        with pytest.raises(UnsupportedTrace):
            to_lambda(Prim("Tr"), Discipline.BRAIDED)


class TestCombEqual:
    def test_planar_bi(self):
        assert comb_equal(parse_cterm("B I"), I, BIBULLET) is Verdict.EQUAL

    def test_cartesian_counit(self):
        assert comb_equal(parse_cterm("W o K"), I, BCIWK) is Verdict.EQUAL

    def test_braided_exchanges_distinct(self):
        assert comb_equal(parse_cterm("C+"), parse_cterm("C-"), BCPMI) is Verdict.NOT_EQUAL

    def test_trace_refused(self):
        with pytest.raises(UnsupportedTrace):
            comb_equal(parse_cterm("Tr I"), I, Signature("BCpmI", trace_extension=True))

    def test_composition_monoid(self, rng):
        for sig in (BIBULLET, BCI, BCPMI, BCIWK):
            for _ in range(6):
                x, y, z = (sample_closed(sig, rng, max_depth=2) for _ in range(3))
                lhs = compose(compose(x, y), z)
                rhs = compose(x, compose(y, z))
                assert comb_equal(lhs, rhs, sig) is Verdict.EQUAL
                assert comb_equal(compose(I, x), x, sig) is Verdict.EQUAL
                assert comb_equal(compose(x, I), x, sig) is Verdict.EQUAL

    def test_internalized_algebra_isomorphism(self, rng):
        # the image of application: (a b)* equals b* o a* o B, and the
        # round trip through the image recovers the element: a* I = a
        for _ in range(8):
            x = sample_closed(BIBULLET, rng, max_depth=2)
            y = sample_closed(BIBULLET, rng, max_depth=2)
            lhs = Bullet(CApp(x, y))
            rhs = parse_cterm("y* o x* o B")
            from operadforge.comb import subst_consts

            rhs = subst_consts(rhs, {"x": x, "y": y})
            assert comb_equal(lhs, rhs, BIBULLET) is Verdict.EQUAL
            assert comb_equal(CApp(Bullet(x), I), x, BIBULLET) is Verdict.EQUAL


class TestBPowers:
    def test_element_powers(self):
        assert b_power_element(0) == I
        assert b_power_element(1) == B
        assert b_power_element(2) == compose(B, B)

    def test_apply_powers(self):
        assert b_power_apply(0, a) == a
        assert b_power_apply(2, a) == CApp(B, CApp(B, a))


class TestBracketAbstraction:
    def test_variable_alone(self):
        assert bracket_abstract(Id(), BIBULLET) == I

    def test_variable_applied_to_coefficient(self):
        assert bracket_abstract(AppP(Id(), Coef(a)), BIBULLET) == capp(B, Bullet(a), I)

    def test_coefficient_applied_to_variable(self):
        assert bracket_abstract(AppP(Coef(a), Id()), BIBULLET) == capp(B, a, I)

    def test_planar_order_enforced(self):
        swapped = AppP(Id(1), Id(0))
        with pytest.raises(CombError):
            bracket_abstract(swapped, BIBULLET)
        assert beta_check_abstraction(swapped, BCI, samples=2) is Verdict.EQUAL

    def test_linear_forbids_weakening_and_contraction(self):
        with pytest.raises(CombError):
            bracket_abstract(AppP(Coef(a), Coef(b)), BCI)  # no variable at all
        dup = AppP(Id(0), Id(0))
        with pytest.raises(CombError):
            bracket_abstract(dup, BCI)
        assert beta_check_abstraction(dup, BCIWK, samples=2) is Verdict.EQUAL

    def test_cartesian_weakening(self):
        # arity 2 with variable 0 vacuous: b x1
        p = AppP(Coef(b), Id(1))
        closed = bracket_abstract(p, BCIWK)
        assert comb_equal(capp(closed, a, c), capp(b, c), BCIWK) is Verdict.EQUAL
        with pytest.raises(CombError):
            bracket_abstract(p, BCI)
        with pytest.raises(CombError):
            bracket_abstract(p, BIBULLET)

    def test_certification_across_signatures(self, rng):
        polys = [
            AppP(Id(), Id()),
            AppP(AppP(Id(), Coef(a)), Id()),
            AppP(Coef(a), AppP(Id(), Coef(b))),
        ]
        for sig in (BIBULLET, BCI, BCPMI):
            for p in polys:
                assert beta_check_abstraction(p, sig, samples=3) is Verdict.EQUAL

    def test_closed_output(self, rng):
        for sig in (BIBULLET, BCI, BCIWK):
            p = AppP(AppP(Id(), Coef(sample_closed(sig, rng, max_depth=1))), Id())
            out = bracket_abstract(p, sig)
            assert comb_equal(
                capp(out, a, b),
                poly_instantiate(p, [a, b]),
                sig,
            ) is Verdict.EQUAL

    def test_poly_arity(self):
        assert poly_arity(AppP(Id(), AppP(Id(), Coef(a)))) == 2
        assert poly_arity(Coef(a)) == 0


class TestAxiomSuites:
    def test_row_inventories(self):
        planar = [r.axiom for r in axiom_suite(BIBULLET, samples=1, seed=0)]
        assert planar == ["BI", "app*", "B*", "I*", "**"]
        linear = [r.axiom for r in axiom_suite(BCI, samples=1, seed=0)]
        assert linear == [
            "B", "C", "I", "lambda", "rho", "alpha", "cox1", "cox2", "cox3", "bc",
        ]
        braided = [r.axiom for r in axiom_suite(BCPMI, samples=1, seed=0)]
        assert len(braided) == 12 and "C2" in braided

    def test_all_pass_small(self):
        for sig in (BIBULLET, BCI, BCPMI, BCIWK):
            for r in axiom_suite(sig, samples=4, seed=1):
                assert r.status == "pass", (sig.tag, r.axiom, r.lhs_nf, r.rhs_nf)

    def test_negative_control(self):
        mutated = Axiom("BoB", (("B o B", "B"),))
        report = run_axiom(mutated, BIBULLET, samples=4, seed=0)
        assert report.status == "fail"
        assert report.lhs_nf != report.rhs_nf

    def test_negative_control_with_metavars(self):
        mutated = Axiom("bad-C", (("C a b c", "a b c"),), ("a", "b", "c"))
        report = run_axiom(mutated, BCI, samples=8, seed=0)
        assert report.status == "fail"
        assert report.witness_bindings is not None

    def test_reports_serialize(self):
        reports = axiom_suite(BIBULLET, samples=2, seed=0)
        payload = json.dumps([r.as_dict() for r in reports])
        parsed = json.loads(payload)
        assert {row["axiom"] for row in parsed} == {"BI", "app*", "B*", "I*", "**"}
        assert all(set(row) == {"axiom", "status", "lhs_nf", "rhs_nf", "witness_bindings"} for row in parsed)

    def test_determinism(self):
        r1 = [r.as_dict() for r in axiom_suite(BCI, samples=5, seed=9)]
        r2 = [r.as_dict() for r in axiom_suite(BCI, samples=5, seed=9)]
        assert r1 == r2


class TestClassicalDuplicator:
    def test_behavior(self, rng):
        S = derive_classical_S()
        for _ in range(6):
            x, y, z = (sample_closed(BCIWK, rng, max_depth=1) for _ in range(3))
            v = comb_equal(capp(S, x, y, z), capp(x, z, CApp(y, z)), BCIWK)
            if v is Verdict.FUEL_EXHAUSTED:
                continue
            assert v is Verdict.EQUAL
        assert comb_equal(capp(K, a, b), a, BCIWK) is Verdict.EQUAL
        assert comb_equal(capp(W, a, b), capp(a, b, b), BCIWK) is Verdict.EQUAL

    def test_word_uses_only_permitted_primitives(self):
        from operadforge.comb import prims_used

        assert prims_used(derive_classical_S()) <= {"B", "C", "I", "W"}

    def test_requires_cartesian_signature(self):
        with pytest.raises(CombError):
            derive_classical_S(BCI)


class TestSampler:
    def test_deterministic(self):
        r1, r2 = random.Random(5), random.Random(5)
        assert [sample_closed(BCI, r1) for _ in range(10)] == [
            sample_closed(BCI, r2) for _ in range(10)
        ]

    def test_respects_signature(self):
        from operadforge.comb import prims_used

        rng = random.Random(2)
        for sig in (BIBULLET, BCI, BCPMI, BCIWK):
            for _ in range(20):
                assert prims_used(sample_closed(sig, rng)) <= set(sig.primitives)

    def test_cartesian_samples_normalize(self, rng):
        for _ in range(20):
            t = sample_closed(BCIWK, rng)
            comb_normal_form(t, BCIWK, fuel=2000)
