"""Tie the quantum results to the logic: superposition as a glutty
conjunction, the locality/non-locality pair, and machine-checked
non-explosion certificates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chsh import CLASSICAL_LIMIT, ChshResult
from .formulas import And, Formula, Neg, Var, render, variables
from .semantics import (
    DEFAULT_BRANCH_BUDGET,
    Valuation,
    Verdict,
    entails,
)


class UnsatisfiableFormulaError(ValueError):
    """The formula has no admissible model, so it entails everything."""


def superposition_formula(n_states: int) -> Formula:
    """The glutty state description ~a1 & a1 & ... & ~an & an over fresh variables."""
    if n_states < 1:
        raise ValueError("need at least one state")
    conjuncts: list[Formula] = []
    for i in range(1, n_states + 1):
        v = Var(f"a{i}")
        conjuncts.extend((Neg(v), v))
    out = conjuncts[0]
    for c in conjuncts[1:]:
        out = And(out, c)
    return out


def non_explosion_certificate(
    f: Formula,
    fresh: str,
    budget: int = DEFAULT_BRANCH_BUDGET,
    iff_mode: str = "conjunctive",
) -> Valuation:
    """An admissible valuation making f true and the fresh variable false.

    Witnesses that f does not entail an arbitrary proposition. Raises
    UnsatisfiableFormulaError when f has no admissible model (entailment
    is then vacuous and explosion holds trivially).
    """
    if fresh in variables(f):
        raise ValueError(f"variable {fresh!r} occurs in the formula")
    verdict = entails([f], Var(fresh), budget=budget, iff_mode=iff_mode)
    if verdict.status == "invalid":
        return verdict.countermodel
    raise UnsatisfiableFormulaError(
        f"{render(f)} is unsatisfiable; it vacuously entails everything"
    )


@dataclass(frozen=True)
class Proposition:
    name: str
    formula: Formula
    reading: str


@dataclass(frozen=True)
class ReportVerdict:
    query: str
    verdict: Verdict


@dataclass(frozen=True)
class InconsistencyReport:
    """Locality analysis of a CHSH result, with machine-checked verdicts."""

    s_value: float
    degree: float
    classical_regime: bool
    propositions: tuple[Proposition, ...]
    asserted: tuple[Formula, ...]
    verdicts: tuple[ReportVerdict, ...]

    def to_dict(self) -> dict:
        return {
            "s_value": self.s_value,
            "degree": self.degree,
            "classical_regime": self.classical_regime,
            "propositions": [
                {"name": p.name, "formula": render(p.formula), "reading": p.reading}
                for p in self.propositions
            ],
            "asserted": [render(f) for f in self.asserted],
            "verdicts": [
                {
                    "query": rv.query,
                    "status": rv.verdict.status,
                    "countermodel": None
                    if rv.verdict.countermodel is None
                    else [
                        {"formula": render(f), "value": v}
                        for f, v in rv.verdict.countermodel.items()
                    ],
                }
                for rv in self.verdicts
            ],
        }

    def to_text(self) -> str:
        lines = [
            f"S = {self.s_value:.6f}, degree of inconsistency = {self.degree:.4f}",
            "regime: classical (no non-locality evidence)"
            if self.classical_regime
            else "regime: non-classical (S exceeds the classical limit)",
            "propositions:",
        ]
        for p in self.propositions:
            lines.append(f"  {p.name}: {render(p.formula)}  [{p.reading}]")
        lines.append("asserted: " + ", ".join(render(f) for f in self.asserted))
        lines.append("verdicts:")
        for rv in self.verdicts:
            line = f"  {rv.query}: {rv.verdict.status}"
            if rv.verdict.countermodel is not None:
                cm = ", ".join(
                    f"{render(f)}={v}" for f, v in rv.verdict.countermodel.items()
                )
                line += f"  [countermodel: {cm}]"
            lines.append(line)
        return "\n".join(lines) + "\n"


def locality_report(
    result: ChshResult, budget: int = DEFAULT_BRANCH_BUDGET
) -> InconsistencyReport:
    """Analyze a CHSH outcome as a locality/non-locality inconsistency.

    With S above the classical limit the theory asserts both the locality
    axiom and the instantaneous-correlation axiom, deriving g and ~g; the
    report then certifies that this glut does not explode. At or below the
    limit only locality is asserted.
    """
    b1 = Var("b1")
    b2 = Var("b2")
    g = Var("g")
    eta = Var("eta")
    propositions = (
        Proposition("beta1", b1, "physical influences propagate at most at light speed"),
        Proposition("beta2", b2, "entangled outcomes correlate instantaneously at any distance"),
        Proposition("gamma", g, "locality is established"),
        Proposition("not-gamma", Neg(g), "locality is not established"),
    )
    s = result.s_value
    classical_regime = s <= CLASSICAL_LIMIT
    if classical_regime:
        asserted: tuple[Formula, ...] = (b1, b1 >> g)
    else:
        asserted = (b1, b2, b1 >> g, b2 >> Neg(g))
    checks = [
        ("T |= g", entails(asserted, g, budget=budget)),
        ("T |= ~g", entails(asserted, Neg(g), budget=budget)),
        ("T |= eta (fresh)", entails(asserted, eta, budget=budget)),
        ("{g, ~g} |= eta (non-explosion)", entails([g, Neg(g)], eta, budget=budget)),
        ("{g, ~g} |= g & ~g (adjunction)", entails([g, Neg(g)], And(g, Neg(g)), budget=budget)),
    ]
    return InconsistencyReport(
        s_value=s,
        degree=result.degree,
        classical_regime=classical_regime,
        propositions=propositions,
        asserted=asserted,
        verdicts=tuple(ReportVerdict(q, v) for q, v in checks),
    )
