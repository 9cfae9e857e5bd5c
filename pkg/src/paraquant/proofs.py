"""Hilbert-style derivations: the 12 axiom schemas, schema matching, and a
line-by-line proof checker with modus ponens as the single inference rule.

Proof-script format (one line each, 1-based consecutive numbering):

    <n>. <formula> ; premise
    <n>. <formula> ; ax <id> [<var>=<formula> ...]
    <n>. <formula> ; mp <i> <j>

where line <i> holds the antecedent and line <j> the implication.  Axiom
bindings may be omitted; the checker then infers them by matching.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .formulas import (
    And,
    Formula,
    Implies,
    Neg,
    Or,
    Var,
    children,
    parse,
    render,
    substitute,
    well_behaved,
    ParseError,
)


@dataclass(frozen=True)
class AxiomSchema:
    id: int
    pattern: Formula


def _schemas() -> tuple[AxiomSchema, ...]:
    a, b, c = Var("a"), Var("b"), Var("c")
    wa, wb = well_behaved(a), well_behaved(b)
    return (
        AxiomSchema(1, a >> (b >> a)),
        AxiomSchema(2, (a >> b) >> ((a >> (b >> c)) >> (a >> c))),
        # id 3 is modus ponens, a rule rather than a schema
        AxiomSchema(4, (a & b) >> a),
        AxiomSchema(5, (a & b) >> b),
        AxiomSchema(6, a >> (b >> (a & b))),
        AxiomSchema(7, a >> (a | b)),
        AxiomSchema(8, b >> (a | b)),
        AxiomSchema(9, (a >> c) >> ((b >> c) >> ((a | b) >> c))),
        AxiomSchema(10, wb >> ((a >> b) >> ((a >> ~b) >> ~a))),
        AxiomSchema(
            11,
            (wa & wb)
            >> (
                (well_behaved(a & b) & well_behaved(a | b))
                & well_behaved(a >> b)
            ),
        ),
        AxiomSchema(12, a | ~a),
        AxiomSchema(13, ~~a >> a),
    )


_AXIOMS = _schemas()
_AXIOM_BY_ID = {s.id: s for s in _AXIOMS}

MODUS_PONENS_ID = 3


def axiom_schemas() -> tuple[AxiomSchema, ...]:
    """The 12 axiom schemas in canonical order (id 3 is reserved for MP)."""
    return _AXIOMS


def match_schema(f: Formula, schema: AxiomSchema) -> dict[str, Formula] | None:
    """The unique binding with substitute(schema.pattern, binding) == f, or None."""
    binding: dict[str, Formula] = {}

    def walk(pattern: Formula, target: Formula) -> bool:
        if isinstance(pattern, Var):
            bound = binding.get(pattern.name)
            if bound is None:
                binding[pattern.name] = target
                return True
            return bound == target
        if type(pattern) is not type(target):
            return False
        return all(
            walk(pc, tc) for pc, tc in zip(children(pattern), children(target))
        )

    return binding if walk(schema.pattern, f) else None


# ---------------------------------------------------------------------------
# Derivations

@dataclass(frozen=True)
class Premise:
    pass


@dataclass(frozen=True)
class Axiom:
    schema_id: int
    binding: tuple[tuple[str, Formula], ...] = ()


@dataclass(frozen=True)
class ModusPonens:
    antecedent: int  # 1-based line holding the antecedent
    implication: int  # 1-based line holding the implication


Justification = Premise | Axiom | ModusPonens


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class Derivation:
    lines: tuple[ProofLine, ...]


class DerivationError(ValueError):
    """A rejected proof line; carries the 1-based line number and a reason code."""

    def __init__(self, line: int, reason: str, message: str):
        super().__init__(f"line {line}: {reason}: {message}")
        self.line = line
        self.reason = reason


def check_derivation(d: Derivation, premises: Iterable[Formula] = ()) -> Formula:
    """Verify every line; return the derived theorem (the last line's formula).

    Reason codes raised: not-a-premise, unknown-axiom, schema-mismatch,
    forward-reference, mp-shape-mismatch.
    """
    premise_set = set(premises)
    if not d.lines:
        raise DerivationError(0, "empty", "derivation has no lines")
    for lineno, line in enumerate(d.lines, start=1):
        just = line.justification
        if isinstance(just, Premise):
            if line.formula not in premise_set:
                raise DerivationError(
                    lineno, "not-a-premise", f"{render(line.formula)} was not assumed"
                )
        elif isinstance(just, Axiom):
            schema = _AXIOM_BY_ID.get(just.schema_id)
            if schema is None:
                raise DerivationError(
                    lineno, "unknown-axiom", f"no axiom schema {just.schema_id}"
                )
            if just.binding:
                built = substitute(schema.pattern, dict(just.binding))
                if built != line.formula:
                    raise DerivationError(
                        lineno,
                        "schema-mismatch",
                        f"binding instantiates schema {schema.id} to {render(built)}, "
                        f"not {render(line.formula)}",
                    )
            elif match_schema(line.formula, schema) is None:
                raise DerivationError(
                    lineno,
                    "schema-mismatch",
                    f"{render(line.formula)} does not match schema {schema.id}",
                )
        else:
            i, j = just.antecedent, just.implication
            if not (1 <= i < lineno and 1 <= j < lineno):
                raise DerivationError(
                    lineno,
                    "forward-reference",
                    f"mp {i} {j} must cite strictly earlier lines",
                )
            antecedent = d.lines[i - 1].formula
            implication = d.lines[j - 1].formula
            if not (
                isinstance(implication, Implies)
                and implication.left == antecedent
                and implication.right == line.formula
            ):
                raise DerivationError(
                    lineno,
                    "mp-shape-mismatch",
                    f"line {j} is not {render(antecedent)} -> {render(line.formula)}",
                )
    return d.lines[-1].formula


# ---------------------------------------------------------------------------
# Proof scripts

class ProofScriptError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


_LINE_RE = re.compile(r"^\s*(\d+)\.\s*(.*?)\s*;\s*(.*?)\s*$")
_BINDING_RE = re.compile(r"([A-Za-z][A-Za-z0-9_]*)\s*=")


def _parse_bindings(text: str, lineno: int) -> tuple[tuple[str, Formula], ...]:
    parts = _BINDING_RE.split(text)
    if parts[0].strip():
        raise ProofScriptError(lineno, f"malformed axiom bindings: {text!r}")
    out = []
    for k in range(1, len(parts), 2):
        name, text = parts[k], parts[k + 1].strip()
        if not text:
            raise ProofScriptError(lineno, f"empty binding for {name!r}")
        try:
            out.append((name, parse(text)))
        except ParseError as exc:
            raise ProofScriptError(lineno, f"bad formula in binding {name!r}: {exc}")
    return tuple(out)


def parse_proof_script(text: str) -> Derivation:
    """Parse the line-oriented proof format; raises ProofScriptError."""
    lines: list[ProofLine] = []
    expected = 1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0]
        if not stripped.strip():
            continue
        m = _LINE_RE.match(stripped)
        if m is None:
            raise ProofScriptError(lineno, f"expected '<n>. <formula> ; <justification>', got {raw!r}")
        number, formula_text, just_text = m.groups()
        if int(number) != expected:
            raise ProofScriptError(lineno, f"expected line number {expected}, got {number}")
        expected += 1
        try:
            formula = parse(formula_text)
        except ParseError as exc:
            raise ProofScriptError(lineno, f"bad formula: {exc}")
        words = just_text.split()
        if not words:
            raise ProofScriptError(lineno, "missing justification")
        tag = words[0].lower()
        if tag == "premise":
            if len(words) > 1:
                raise ProofScriptError(lineno, "premise takes no arguments")
            just: Justification = Premise()
        elif tag == "ax":
            if len(words) < 2 or not words[1].isdigit():
                raise ProofScriptError(lineno, "ax needs a numeric schema id")
            rest = just_text.split(None, 2)
            binding_text = rest[2] if len(rest) == 3 else ""
            just = Axiom(
                int(words[1]),
                _parse_bindings(binding_text, lineno) if binding_text else (),
            )
        elif tag == "mp":
            if len(words) != 3 or not (words[1].isdigit() and words[2].isdigit()):
                raise ProofScriptError(lineno, "mp needs two line numbers")
            just = ModusPonens(int(words[1]), int(words[2]))
        else:
            raise ProofScriptError(lineno, f"unknown justification {tag!r}")
        lines.append(ProofLine(formula, just))
    if not lines:
        raise ProofScriptError(0, "script has no proof lines")
    return Derivation(tuple(lines))


def script_premises(d: Derivation) -> list[Formula]:
    """Formulas the script assumes via premise-justified lines, in order."""
    out: list[Formula] = []
    for line in d.lines:
        if isinstance(line.justification, Premise) and line.formula not in out:
            out.append(line.formula)
    return out
