"""Three-valued paraconsistent layer: the value B for superposed states,
min/max connectives over F < B < T, and the angle-to-truth-degree mapping.

B ("both") is designated alongside T and is a fixed point of negation, so a
proposition and its negation can be jointly designated without spreading
truth to unrelated propositions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

from .chsh import TwoQubitState


class TruthValue3(IntEnum):
    F = 0
    B = 1
    T = 2

    def __str__(self) -> str:
        return self.name


DESIGNATED = (TruthValue3.B, TruthValue3.T)


def is_designated(a: TruthValue3) -> bool:
    return a != TruthValue3.F


def neg3(a: TruthValue3) -> TruthValue3:
    """Order-dual negation with B fixed: T <-> F, B -> B."""
    return TruthValue3(2 - a)


def and3(a: TruthValue3, b: TruthValue3) -> TruthValue3:
    return TruthValue3(min(a, b))


def or3(a: TruthValue3, b: TruthValue3) -> TruthValue3:
    return TruthValue3(max(a, b))


def implies3(a: TruthValue3, b: TruthValue3) -> TruthValue3:
    return or3(neg3(a), b)


@dataclass(frozen=True)
class TruthDegree:
    """Complementary degrees of truth and falsity (they sum to 1)."""

    degree_true: float
    degree_false: float

    def __post_init__(self):
        if abs(self.degree_true + self.degree_false - 1.0) > 1e-12:
            raise ValueError("degrees of truth and falsity must sum to 1")


def angle_to_truth_degree(theta: float) -> TruthDegree:
    """Rotation angle as a truth degree: 0 is completely true, pi completely false.

    Uses the state-overlap convention cos^2(theta/2); periodic in 2*pi.
    """
    return TruthDegree(math.cos(theta / 2.0) ** 2, math.sin(theta / 2.0) ** 2)


_WEIGHT_TOL = 1e-12


def assign_superposition(
    state: TwoQubitState, qubit: int
) -> dict[str, TruthValue3]:
    """Three-valued reading of one qubit of a (possibly entangled) state.

    p reads "the qubit is in |0>", q reads "the qubit is in |1>"; each gets
    T or F when the opposite basis weight vanishes and B otherwise.
    """
    w0, w1 = state.reduced_weights(qubit)

    def grade(weight_for: float, weight_against: float) -> TruthValue3:
        if weight_against <= _WEIGHT_TOL:
            return TruthValue3.T
        if weight_for <= _WEIGHT_TOL:
            return TruthValue3.F
        return TruthValue3.B

    return {"p": grade(w0, w1), "q": grade(w1, w0)}


def truth_table_csv() -> str:
    """All connective tables as CSV: op,a,b,result (9 rows per binary op)."""
    values = (TruthValue3.F, TruthValue3.B, TruthValue3.T)
    lines = ["op,a,b,result"]
    for a in values:
        lines.append(f"neg,{a},,{neg3(a)}")
    for name, fn in (("and", and3), ("or", or3), ("implies", implies3)):
        for a in values:
            for b in values:
                lines.append(f"{name},{a},{b},{fn(a, b)}")
    return "\n".join(lines) + "\n"
