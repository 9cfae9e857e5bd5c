import json
import math

import pytest

from paraquant.bridge import (
    InconsistencyReport,
    UnsatisfiableFormulaError,
    locality_report,
    non_explosion_certificate,
    superposition_formula,
)
from paraquant.chsh import TSIRELSON_BOUND, result_for_s
from paraquant.formulas import Neg, Var, parse, render, strong_negation
from paraquant.semantics import is_admissible


class TestSuperpositionFormula:
    def test_two_states(self):
        assert superposition_formula(2) == parse("~a1 & a1 & ~a2 & a2")

    def test_single_state(self):
        assert superposition_formula(1) == parse("~a1 & a1")

    def test_three_states(self):
        f = superposition_formula(3)
        assert f == parse("~a1 & a1 & ~a2 & a2 & ~a3 & a3")

    def test_validation(self):
        with pytest.raises(ValueError):
            superposition_formula(0)


class TestCertificates:
    def test_superposition_certificate(self):
        cert = non_explosion_certificate(superposition_formula(2), "eta")
        assert is_admissible(cert)
        for name in ("a1", "a2"):
            v = Var(name)
            assert cert[v] == 1 and cert[Neg(v)] == 1
        assert cert[Var("eta")] == 0

    def test_plain_glut_certificate(self):
        cert = non_explosion_certificate(parse("p & ~p"), "q")
        assert cert[Var("p")] == 1
        assert cert[Neg(Var("p"))] == 1
        assert cert[Var("q")] == 0

    def test_strong_negation_has_no_certificate(self):
        f = strong_negation(Var("p")) & Var("p")
        with pytest.raises(UnsatisfiableFormulaError):
            non_explosion_certificate(f, "q")

    def test_fresh_variable_must_be_fresh(self):
        with pytest.raises(ValueError):
            non_explosion_certificate(parse("p & ~p"), "p")

    def test_certificates_up_to_four_states(self):
        for n in range(1, 5):
            cert = non_explosion_certificate(superposition_formula(n), "eta")
            assert is_admissible(cert)
            assert cert[Var("eta")] == 0


class TestLocalityReport:
    def test_tsirelson_report(self):
        report = locality_report(result_for_s(TSIRELSON_BOUND))
        assert not report.classical_regime
        assert report.degree == pytest.approx(100.0, abs=1e-6)
        asserted = {render(f) for f in report.asserted}
        assert asserted == {"b1", "b2", "b1 -> g", "b2 -> ~g"}
        verdicts = dict((rv.query, rv.verdict) for rv in report.verdicts)
        assert verdicts["T |= g"].status == "valid"
        assert verdicts["T |= ~g"].status == "valid"
        assert verdicts["T |= eta (fresh)"].status == "invalid"
        non_explosion = verdicts["{g, ~g} |= eta (non-explosion)"]
        assert non_explosion.status == "invalid"
        assert is_admissible(non_explosion.countermodel)
        assert verdicts["{g, ~g} |= g & ~g (adjunction)"].status == "valid"

    def test_classical_regime_report(self):
        report = locality_report(result_for_s(2.0))
        assert report.classical_regime
        assert report.degree == pytest.approx(0.0, abs=1e-9)
        asserted = {render(f) for f in report.asserted}
        assert asserted == {"b1", "b1 -> g"}
        verdicts = dict((rv.query, rv.verdict) for rv in report.verdicts)
        assert verdicts["T |= g"].status == "valid"
        assert verdicts["T |= ~g"].status == "invalid"

    def test_intermediate_s(self):
        report = locality_report(result_for_s(2.5))
        assert not report.classical_regime
        assert report.degree == pytest.approx(60.3553390593, abs=1e-6)

    def test_every_invalid_verdict_has_admissible_countermodel(self):
        for s in (1.0, 2.0, 2.3, TSIRELSON_BOUND):
            report = locality_report(result_for_s(s))
            for rv in report.verdicts:
                if rv.verdict.status == "invalid":
                    assert rv.verdict.countermodel is not None
                    assert is_admissible(rv.verdict.countermodel)
                else:
                    assert rv.verdict.countermodel is None

    def test_asserted_set_never_entails_fresh(self):
        for s in (1.5, 2.0, 2.7):
            report = locality_report(result_for_s(s))
            verdicts = dict((rv.query, rv.verdict) for rv in report.verdicts)
            assert verdicts["T |= eta (fresh)"].status == "invalid"

    def test_deterministic(self):
        a = locality_report(result_for_s(2.6))
        b = locality_report(result_for_s(2.6))
        assert a == b

    def test_serialization(self):
        report = locality_report(result_for_s(2.4))
        payload = report.to_dict()
        text = json.dumps(payload)
        assert json.loads(text) == payload
        assert payload["s_value"] == pytest.approx(2.4, abs=1e-9)
        assert {v["query"] for v in payload["verdicts"]} == {
            "T |= g",
            "T |= ~g",
            "T |= eta (fresh)",
            "{g, ~g} |= eta (non-explosion)",
            "{g, ~g} |= g & ~g (adjunction)",
        }
        human = report.to_text()
        assert "degree of inconsistency" in human
        assert "non-explosion" in human
