"""Bivaluation semantics for the paraconsistent calculus: admissibility,
valuation enumeration, and entailment with countermodel extraction.

A valuation assigns 0/1 to every member of a subformula-closed set.
Admissibility over that set:

  1. a false formula has a true negation;
  2. a true double negation has a true base;
  3. a true well-behavedness marker ~(b & ~b) excludes b and ~b being
     jointly true (the reductio rule with implication values derived from
     the implication condition: taking a := b makes a -> b and a -> ~b
     both true under a glut, forcing b false);
  4-6. implication, conjunction and disjunction are truth-functional;
  7. markers of jointly well-behaved operands are true, for marker
     instances present in the set.

Negation is otherwise unconstrained: both a formula and its negation may
be true.  Truth-functional nodes are computed bottom-up; only variables
and negation nodes branch, so a query costs at most 2^k scans for k
branching nodes (capped by a configurable budget).

``entails``/``is_valid`` decide the consequence a total valuation on *all*
formulas would induce; on top of the rules above they track forced
well-behavedness through compounds (rule 7 applied to markers outside the
closure) and reject assignments no total valuation extends.  Countermodels
they emit are still admissible over the plain closure.  ``is_admissible``
and ``enumerate_valuations`` use the plain closure rules only, so that
enumeration matches brute-force filtering over the same set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

from . import _kernels
from ._kernels import AND, IMP, NEG, OR, VAR
from .formulas import (
    And,
    Formula,
    Iff,
    Implies,
    Neg,
    Or,
    Var,
    children,
    expand_iff,
    render,
)

DEFAULT_BRANCH_BUDGET = 24

_CHUNK = 1 << 16


class BudgetExceededError(RuntimeError):
    """The query needs more branching nodes than the configured budget."""

    def __init__(self, needed: int, budget: int):
        super().__init__(
            f"query needs {needed} branching nodes, budget is {budget}"
        )
        self.needed = needed
        self.budget = budget


class NonClosedSetError(ValueError):
    """A valuation domain that is not closed under subformulas."""


class Valuation:
    """Immutable total assignment of 0/1 over a subformula-closed set."""

    __slots__ = ("_formulas", "_values", "_lookup")

    def __init__(self, assignment: Mapping[Formula, int] | Iterable[tuple[Formula, int]]):
        items = assignment.items() if isinstance(assignment, Mapping) else assignment
        formulas = []
        values = []
        for f, v in items:
            formulas.append(f)
            values.append(int(v))
        self._formulas = tuple(formulas)
        self._values = tuple(values)
        self._lookup = dict(zip(self._formulas, self._values))

    @property
    def formulas(self) -> tuple[Formula, ...]:
        return self._formulas

    @property
    def values(self) -> tuple[int, ...]:
        return self._values

    def value(self, f: Formula) -> int:
        return self._lookup[f]

    def __getitem__(self, f: Formula) -> int:
        return self._lookup[f]

    def __contains__(self, f: Formula) -> bool:
        return f in self._lookup

    def __len__(self) -> int:
        return len(self._formulas)

    def items(self) -> Iterator[tuple[Formula, int]]:
        return iter(zip(self._formulas, self._values))

    def as_dict(self) -> dict[Formula, int]:
        return dict(self._lookup)

    def __eq__(self, other) -> bool:
        return isinstance(other, Valuation) and self._lookup == other._lookup

    def __hash__(self) -> int:
        return hash(frozenset(self._lookup.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{render(f)}: {v}" for f, v in self.items())
        return f"Valuation({{{body}}})"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a validity/entailment query."""

    status: str  # "valid" | "invalid"
    countermodel: Valuation | None
    branches_explored: int

    @property
    def is_valid(self) -> bool:
        return self.status == "valid"


def closure(formulas: Iterable[Formula]) -> list[Formula]:
    """Deterministic subformula closure: post-order per input, duplicates dropped."""
    seen: dict[Formula, None] = {}

    def walk(node: Formula):
        for child in children(node):
            walk(child)
        if node not in seen:
            seen[node] = None

    for f in formulas:
        walk(f)
    return list(seen)


_KIND_OF = {Var: VAR, Neg: NEG, And: AND, Or: OR, Implies: IMP}


class _Plan:
    """Compiled closure: index arrays plus propagated constraints for the kernels."""

    def __init__(
        self,
        formulas: list[Formula],
        premises: Iterable[Formula] = (),
        conclusion: Formula | None = None,
        classical: bool = False,
        enriched: bool = False,
    ):
        self.formulas = formulas
        self.classical = classical
        self.enriched = enriched
        n = len(formulas)
        index = {f: i for i, f in enumerate(formulas)}
        self.index = index
        kind = np.empty(n, np.int8)
        cl = np.full(n, -1, np.int32)
        cr = np.full(n, -1, np.int32)
        neg_of = np.full(n, -1, np.int32)
        negneg = np.full(n, -1, np.int32)
        wb_of = np.full(n, -1, np.int32)
        wb_base = np.full(n, -1, np.int32)
        for i, f in enumerate(formulas):
            if isinstance(f, Iff):
                raise ValueError("biconditionals must be expanded before evaluation")
            kind[i] = _KIND_OF[type(f)]
            if isinstance(f, Neg):
                c = index[f.child]
                cl[i] = c
                neg_of[c] = i
                if isinstance(f.child, Neg):
                    negneg[i] = index[f.child.child]
                base = _marker_base(f)
                if base is not None:
                    b = index[base]
                    wb_base[i] = b
                    wb_of[b] = i
            elif not isinstance(f, Var):
                cl[i] = index[f.left]
                cr[i] = index[f.right]
        triples = []
        for i in range(n):
            b = wb_base[i]
            if b >= 0 and kind[b] >= AND:
                a0 = wb_of[cl[b]]
                b0 = wb_of[cr[b]]
                if a0 >= 0 and b0 >= 0:
                    triples.append((a0, b0, i))
        self.kind = kind
        self.cl = cl
        self.cr = cr
        self.neg_of = neg_of
        self.negneg = negneg
        self.wb_of = wb_of
        self.wb_base = wb_base
        self.r7a = np.array([t[0] for t in triples], np.int32)
        self.r7b = np.array([t[1] for t in triples], np.int32)
        self.r7c = np.array([t[2] for t in triples], np.int32)

        # Propagate premise/conclusion constraints to fix bits up front.
        req = np.full(n, -1, np.int8)
        self.unsat = False
        pending = [(index[p], 1) for p in premises]
        if conclusion is not None:
            pending.append((index[conclusion], 0))
        while pending:
            i, v = pending.pop()
            if req[i] >= 0:
                if req[i] != v:
                    self.unsat = True
                    break
                continue
            req[i] = v
            kd = kind[i]
            if kd == AND and v == 1:
                pending.append((cl[i], 1))
                pending.append((cr[i], 1))
            elif kd == OR and v == 0:
                pending.append((cl[i], 0))
                pending.append((cr[i], 0))
            elif kd == IMP and v == 0:
                pending.append((cl[i], 1))
                pending.append((cr[i], 0))
            elif kd == NEG:
                if v == 0:
                    pending.append((cl[i], 1))
                elif negneg[i] >= 0 and not classical:
                    pending.append((negneg[i], 1))
                if classical:
                    pending.append((cl[i], 1 - v))
            if classical and neg_of[i] >= 0:
                pending.append((neg_of[i], 1 - v))
            elif v == 0 and neg_of[i] >= 0:
                pending.append((neg_of[i], 1))
        self.req = req

        bit_slot = np.full(n, -1, np.int32)
        init_val = np.zeros(n, np.int8)
        bits = []
        for i in range(n):
            branches = kind[i] == VAR or (kind[i] == NEG and not classical)
            if not branches:
                continue
            if req[i] >= 0:
                init_val[i] = req[i]
            else:
                bit_slot[i] = len(bits)
                bits.append(i)
        self.bit_slot = bit_slot
        self.init_val = init_val
        self.bit_nodes = bits
        self.n_bits = len(bits)

    def kernel_args(self):
        return (
            self.kind,
            self.cl,
            self.cr,
            self.bit_slot,
            self.init_val,
            self.req,
            self.negneg,
            self.neg_of,
            self.wb_of,
            self.wb_base,
            self.r7a,
            self.r7b,
            self.r7c,
            1 if self.classical else 0,
            1 if self.enriched else 0,
        )


def _marker_base(f: Formula) -> Formula | None:
    """The x such that f is the well-behavedness marker ~(x & ~x), else None."""
    if (
        isinstance(f, Neg)
        and isinstance(f.child, And)
        and isinstance(f.child.right, Neg)
        and f.child.right.child == f.child.left
    ):
        return f.child.left
    return None


def _scan_plan(plan: _Plan, stop_first: bool, use_numba: bool | None = None):
    """Yield (combo, values-row) for admissible assignments, ascending."""
    numba = _kernels.USING_NUMBA if use_numba is None else use_numba
    scan = _kernels.scan_nb if numba else _kernels.scan_np
    args = plan.kernel_args()
    n = len(plan.formulas)
    total = 1 << plan.n_bits
    if numba and stop_first:
        out_vals = np.empty((1, n), np.int8)
        out_combos = np.empty(1, np.int64)
        count = scan(0, total, *args, out_vals, out_combos, 1)
        if count:
            yield int(out_combos[0]), out_vals[0]
        return
    chunk = min(_CHUNK, total)
    out_vals = np.empty((chunk, n), np.int8)
    out_combos = np.empty(chunk, np.int64)
    for lo in range(0, total, chunk):
        hi = min(lo + chunk, total)
        count = scan(lo, hi, *args, out_vals, out_combos, 1 if stop_first else 0)
        for r in range(count):
            yield int(out_combos[r]), out_vals[r].copy()
        if stop_first and count:
            return


def _as_valuation(plan: _Plan, row: np.ndarray) -> Valuation:
    return Valuation(zip(plan.formulas, (int(v) for v in row)))


def _prepare(formulas: Iterable[Formula], iff_mode: str) -> list[Formula]:
    out = []
    for f in formulas:
        g = expand_iff(f, iff_mode)
        if g not in out:
            out.append(g)
    return out


def is_admissible(valuation: Valuation) -> bool:
    """Check the admissibility rules over the valuation's own formula set.

    Raises NonClosedSetError when the set is not subformula-closed. This is
    the reference predicate: deliberately direct, independent of the scan
    kernels, so enumeration can be cross-checked against brute force.
    """
    val = valuation.as_dict()
    for f in val:
        if isinstance(f, Iff):
            raise ValueError("biconditionals must be expanded before evaluation")
        for child in children(f):
            if child not in val:
                raise NonClosedSetError(
                    f"{render(child)} (subformula of {render(f)}) is missing"
                )
    markers = []
    for f, v in val.items():
        if isinstance(f, Neg):
            if val[f.child] == 0 and v == 0:
                return False  # rule 1
            if isinstance(f.child, Neg) and v == 1 and val[f.child.child] == 0:
                return False  # rule 2
            base = _marker_base(f)
            if base is not None:
                markers.append((f, base))
        elif isinstance(f, And):
            if v != (val[f.left] & val[f.right]):
                return False  # rule 5
        elif isinstance(f, Or):
            if v != (val[f.left] | val[f.right]):
                return False  # rule 6
        elif isinstance(f, Implies):
            if v != ((1 - val[f.left]) | val[f.right]):
                return False  # rule 4
    for marker, base in markers:
        if val[marker] == 1 and val[base] == 1 and val[Neg(base)] == 1:
            return False  # rule 3, derived implication instance
    marker_of = {base: marker for marker, base in markers}
    for marker, base in markers:
        if isinstance(base, (And, Or, Implies)):
            m_left = marker_of.get(base.left)
            m_right = marker_of.get(base.right)
            if (
                m_left is not None
                and m_right is not None
                and val[m_left] == 1
                and val[m_right] == 1
                and val[marker] == 0
            ):
                return False  # rule 7
    return True


def enumerate_valuations(
    formulas: Iterable[Formula],
    budget: int = DEFAULT_BRANCH_BUDGET,
    iff_mode: str = "conjunctive",
    use_numba: bool | None = None,
) -> Iterator[Valuation]:
    """Stream every admissible valuation over the subformula closure.

    Deterministic order: ascending packed bit pattern, the earliest
    branching subformula varying fastest. Raises BudgetExceededError when
    the closure has more branching (variable/negation) nodes than budget.
    """
    fs = _prepare(formulas, iff_mode)
    if not fs:
        raise ValueError("need at least one formula")
    plan = _Plan(closure(fs))
    if plan.n_bits > budget:
        raise BudgetExceededError(plan.n_bits, budget)
    for _, row in _scan_plan(plan, stop_first=False, use_numba=use_numba):
        yield _as_valuation(plan, row)


def _decide(
    premises: Iterable[Formula],
    conclusion: Formula,
    budget: int,
    iff_mode: str,
    classical: bool,
    use_numba: bool | None,
) -> Verdict:
    prem = _prepare(premises, iff_mode)
    concl = expand_iff(conclusion, iff_mode)
    plan = _Plan(
        closure(prem + [concl]),
        premises=prem,
        conclusion=concl,
        classical=classical,
        enriched=not classical,
    )
    if plan.unsat:
        return Verdict("valid", None, 0)
    if plan.n_bits > budget:
        raise BudgetExceededError(plan.n_bits, budget)
    for combo, row in _scan_plan(plan, stop_first=True, use_numba=use_numba):
        return Verdict("invalid", _as_valuation(plan, row), combo + 1)
    return Verdict("valid", None, 1 << plan.n_bits)


def entails(
    premises: Iterable[Formula],
    conclusion: Formula,
    budget: int = DEFAULT_BRANCH_BUDGET,
    iff_mode: str = "conjunctive",
    use_numba: bool | None = None,
) -> Verdict:
    """Does every admissible valuation satisfying the premises satisfy the conclusion?

    Invalid verdicts carry the first countermodel in enumeration order; it is
    admissible over the query's closure and falsifies the query.
    """
    return _decide(premises, conclusion, budget, iff_mode, False, use_numba)


def is_valid(
    f: Formula,
    budget: int = DEFAULT_BRANCH_BUDGET,
    iff_mode: str = "conjunctive",
    use_numba: bool | None = None,
) -> Verdict:
    """Premise-free entailment: is f true under every admissible valuation?"""
    return _decide((), f, budget, iff_mode, False, use_numba)


def classical_entails(
    premises: Iterable[Formula],
    conclusion: Formula,
    budget: int = DEFAULT_BRANCH_BUDGET,
    iff_mode: str = "conjunctive",
    use_numba: bool | None = None,
) -> Verdict:
    """Two-valued truth-functional oracle: negation is forced to 1 - value."""
    return _decide(premises, conclusion, budget, iff_mode, True, use_numba)
