"""Deterministic generators and brute-force oracles shared across tests."""

from __future__ import annotations

import itertools

from paraquant.formulas import And, Formula, Implies, Neg, Or, Var, subformulas
from paraquant.semantics import Valuation, closure, is_admissible

DEFAULT_VARS = ("a", "b", "c", "d")


def gen_formula(rng, var_names=DEFAULT_VARS, depth=4, leaf_bias=0.3) -> Formula:
    """Random formula over ~, &, |, -> with leaf-biased recursion."""
    if depth <= 0 or rng.random() < leaf_bias:
        return Var(var_names[int(rng.integers(len(var_names)))])
    pick = rng.random()
    if pick < 0.28:
        return Neg(gen_formula(rng, var_names, depth - 1, leaf_bias))
    left = gen_formula(rng, var_names, depth - 1, leaf_bias)
    right = gen_formula(rng, var_names, depth - 1, leaf_bias)
    if pick < 0.52:
        return And(left, right)
    if pick < 0.76:
        return Or(left, right)
    return Implies(left, right)


def is_marker(f: Formula) -> bool:
    """Is f the well-behavedness shape ~(x & ~x)?"""
    return (
        isinstance(f, Neg)
        and isinstance(f.child, And)
        and isinstance(f.child.right, Neg)
        and f.child.right.child == f.child.left
    )


def has_marker(f: Formula) -> bool:
    return any(is_marker(s) for s in subformulas(f))


def gen_marker_free(rng, var_names=DEFAULT_VARS, depth=4, leaf_bias=0.3) -> Formula:
    """A formula with no ~(x & ~x) subpattern.

    Pairing such a formula with its negation stays satisfiable, because a
    premised marker over a glut is the one shape that genuinely explodes.
    """
    while True:
        f = gen_formula(rng, var_names, depth, leaf_bias)
        if not has_marker(f):
            return f


def brute_force_valuations(formulas) -> list[Valuation]:
    """All admissible valuations by filtering every assignment over the closure."""
    nodes = closure(formulas)
    out = []
    for bits in itertools.product((0, 1), repeat=len(nodes)):
        v = Valuation(zip(nodes, bits))
        if is_admissible(v):
            out.append(v)
    return out
