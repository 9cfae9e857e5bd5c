"""Propositional formulas: AST, parser, printer, and the derived-operator transforms.

Concrete syntax (ASCII with Unicode aliases accepted on input):

    formula := iff ; iff := imp ("<->" iff)? ; imp := or ("->" imp)? ;
    or := and ("|" and)* ; and := unary ("&" unary)* ;
    unary := "~" unary | "(" formula ")" | ident ;
    ident := [A-Za-z][A-Za-z0-9_]*

Precedence ~ > & > | > -> > <-> ; -> and <-> are right-associative,
& and | left-associative.  '#' starts a comment running to end of line.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping


class Formula:
    """Base class for formula nodes. Instances are immutable and hashable."""

    __slots__ = ()

    def __invert__(self) -> "Neg":
        return Neg(self)

    def __and__(self, other: "Formula") -> "And":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Or":
        return Or(self, other)

    def __rshift__(self, other: "Formula") -> "Implies":
        return Implies(self, other)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True, repr=False)
class Var(Formula):
    name: str

    def __repr__(self) -> str:
        return f"Var({self.name!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Neg(Formula):
    child: Formula

    def __repr__(self) -> str:
        return f"Neg({render(self.child)!r})"


@dataclass(frozen=True, slots=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"And({render(self.left)!r}, {render(self.right)!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"Or({render(self.left)!r}, {render(self.right)!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"Implies({render(self.left)!r}, {render(self.right)!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Iff(Formula):
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"Iff({render(self.left)!r}, {render(self.right)!r})"


BINARY_TYPES = (And, Or, Implies, Iff)

IFF_MODES = ("conjunctive", "disjunctive")


class ParseError(ValueError):
    """Syntax error with the byte offset of the offending token and the expected-token set."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...]):
        super().__init__(f"{message} at offset {offset} (expected {', '.join(expected)})")
        self.offset = offset
        self.expected = expected


class UnboundVariableError(ValueError):
    """A schema variable with no binding."""

    def __init__(self, name: str):
        super().__init__(f"no binding for schema variable {name!r}")
        self.name = name


# ---------------------------------------------------------------------------
# Tokenizer / parser

_SYMBOL_ALIASES = {"¬": "~", "∧": "&", "∨": "|", "→": "->", "↔": "<->"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Return (kind, lexeme, char_position) triples; kind is one of
    '~ & | -> <-> ( ) ident end'."""
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
        elif ch == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif ch.isalpha():
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
        elif ch in "()~&|":
            tokens.append((ch, ch, i))
            i += 1
        elif text.startswith("<->", i):
            tokens.append(("<->", "<->", i))
            i += 3
        elif text.startswith("->", i):
            tokens.append(("->", "->", i))
            i += 2
        elif ch in _SYMBOL_ALIASES:
            tokens.append((_SYMBOL_ALIASES[ch], ch, i))
            i += 1
        else:
            raise ParseError(
                f"unexpected character {ch!r}",
                _byte_offset(text, i),
                ("formula",),
            )
    tokens.append(("end", "", n))
    return tokens


def _byte_offset(text: str, char_pos: int) -> int:
    return len(text[:char_pos].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: tuple[str, ...]):
        kind, lexeme, char_pos = self.tokens[self.pos]
        shown = lexeme if kind != "end" else "end of input"
        raise ParseError(
            f"unexpected {shown!r}", _byte_offset(self.text, char_pos), expected
        )

    def parse_formula(self) -> Formula:
        left = self.parse_imp()
        if self.peek() == "<->":
            self.advance()
            return Iff(left, self.parse_formula())
        return left

    def parse_imp(self) -> Formula:
        left = self.parse_or()
        if self.peek() == "->":
            self.advance()
            return Implies(left, self.parse_imp())
        return left

    def parse_or(self) -> Formula:
        node = self.parse_and()
        while self.peek() == "|":
            self.advance()
            node = Or(node, self.parse_and())
        return node

    def parse_and(self) -> Formula:
        node = self.parse_unary()
        while self.peek() == "&":
            self.advance()
            node = And(node, self.parse_unary())
        return node

    def parse_unary(self) -> Formula:
        kind = self.peek()
        if kind == "~":
            self.advance()
            return Neg(self.parse_unary())
        if kind == "(":
            self.advance()
            node = self.parse_formula()
            if self.peek() != ")":
                self.fail(("')'",))
            self.advance()
            return node
        if kind == "ident":
            _, name, _ = self.advance()
            return Var(name)
        self.fail(("'~'", "'('", "identifier"))


def parse(text: str) -> Formula:
    """Parse one formula. Raises ParseError with a byte offset on bad input."""
    parser = _Parser(text)
    node = parser.parse_formula()
    if parser.peek() != "end":
        parser.fail(("end of input", "operator"))
    return node


def parse_lines(text: str) -> list[tuple[int, Formula]]:
    """Parse a formula file: one formula per line, '#' comments, blank lines skipped.

    Returns (1-based line number, formula) pairs; ParseError gains a .line attribute.
    """
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0]
        if not stripped.strip():
            continue
        try:
            out.append((lineno, parse(stripped)))
        except ParseError as exc:
            exc.line = lineno
            raise
    return out


# ---------------------------------------------------------------------------
# Printer

_PRECEDENCE = {Iff: 1, Implies: 2, Or: 3, And: 4, Neg: 5, Var: 6}
_INFIX = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def render(f: Formula) -> str:
    """Minimal-parenthesization text; parse(render(f)) is structurally f."""
    prec = _PRECEDENCE[type(f)]
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Neg):
        inner = render(f.child)
        if _PRECEDENCE[type(f.child)] < prec:
            inner = f"({inner})"
        return f"~{inner}"
    left, right = render(f.left), render(f.right)
    if isinstance(f, (And, Or)):  # left-associative
        if _PRECEDENCE[type(f.left)] < prec:
            left = f"({left})"
        if _PRECEDENCE[type(f.right)] <= prec:
            right = f"({right})"
    else:  # right-associative
        if _PRECEDENCE[type(f.left)] <= prec:
            left = f"({left})"
        if _PRECEDENCE[type(f.right)] < prec:
            right = f"({right})"
    return f"{left} {_INFIX[type(f)]} {right}"


# ---------------------------------------------------------------------------
# Derived operators and structural helpers

def well_behaved(f: Formula) -> Formula:
    """The well-behavedness marker for f: ~(f & ~f)."""
    return Neg(And(f, Neg(f)))


def strong_negation(f: Formula) -> Formula:
    """Strong (explosive) negation: ~f & ~(f & ~f)."""
    return And(Neg(f), well_behaved(f))


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, Var):
        return ()
    if isinstance(f, Neg):
        return (f.child,)
    return (f.left, f.right)


def subformulas(f: Formula) -> list[Formula]:
    """Post-order listing of distinct subformulas; f itself is last."""
    seen: dict[Formula, None] = {}

    def walk(node: Formula):
        for child in children(node):
            walk(child)
        if node not in seen:
            seen[node] = None

    walk(f)
    return list(seen)


def node_count(f: Formula) -> int:
    """Number of nodes of the formula tree (shared subtrees counted per occurrence)."""
    return 1 + sum(node_count(c) for c in children(f))


def variables(f: Formula) -> list[str]:
    """Variable names in first-occurrence order."""
    out: dict[str, None] = {}
    for sub in subformulas(f):
        if isinstance(sub, Var):
            out[sub.name] = None
    return list(out)


def substitute(schema: Formula, binding: Mapping[str, Formula]) -> Formula:
    """Uniformly replace schema variables. Raises UnboundVariableError on a missing name."""
    if isinstance(schema, Var):
        try:
            return binding[schema.name]
        except KeyError:
            raise UnboundVariableError(schema.name) from None
    if isinstance(schema, Neg):
        return Neg(substitute(schema.child, binding))
    return type(schema)(
        substitute(schema.left, binding), substitute(schema.right, binding)
    )


def expand_iff(f: Formula, mode: str = "conjunctive") -> Formula:
    """Expand biconditionals definitionally.

    conjunctive (default): a <-> b  becomes  (a -> b) & (b -> a)
    disjunctive:           a <-> b  becomes  (a -> b) | (b -> a)

    The disjunctive form makes the biconditional a positive-logic tautology;
    it is kept as a switch for fidelity to sources that define it that way.
    """
    if mode not in IFF_MODES:
        raise ValueError(f"iff mode must be one of {IFF_MODES}, got {mode!r}")
    if isinstance(f, Var):
        return f
    if isinstance(f, Neg):
        return Neg(expand_iff(f.child, mode))
    left = expand_iff(f.left, mode)
    right = expand_iff(f.right, mode)
    if isinstance(f, Iff):
        combine = And if mode == "conjunctive" else Or
        return combine(Implies(left, right), Implies(right, left))
    return type(f)(left, right)


def iter_subtrees(f: Formula) -> Iterator[Formula]:
    """Every subtree occurrence, pre-order (duplicates included)."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))
