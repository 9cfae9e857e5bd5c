#!/usr/bin/env python3
"""Time the numba kernels against their pure-numpy fallbacks.

Covers the two hot loops: the valuation scan behind decide/enumerate and
the game tally. Run from the repository root:

    python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from paraquant import _kernels
from paraquant.chsh import play_chsh_game
from paraquant.formulas import And, Implies, Neg, Or, Var, parse
from paraquant.semantics import entails, enumerate_valuations


def time_call(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def glut_chain(n):
    """A premise whose scan branches on 2n nodes (n variables, n negations)."""
    out = None
    for i in range(n):
        v = Var(f"x{i}")
        clause = Or(v, Neg(v))
        out = clause if out is None else And(out, clause)
    return out


def entailment_case(n_bits):
    """A query that is valid but reveals it only after scanning every combo."""
    premise = glut_chain((n_bits - 2) // 2)
    y0, y1 = Var("y0"), Var("y1")
    conclusion = Or(Or(And(y0, y1), And(y0, Neg(y1))), Neg(y0))
    return premise, conclusion


def bench_scan(rows):
    for n_bits in (12, 16, 20):
        premise, conclusion = entailment_case(n_bits)

        def run(use_numba):
            return entails([premise], conclusion, use_numba=use_numba)

        t_nb, v_nb = time_call(lambda: run(True))
        t_np, v_np = time_call(lambda: run(False))
        assert v_nb == v_np and v_nb.status == "valid"
        rows.append((f"scan entails ({n_bits} bits, full space)", t_nb, t_np))

    fs = [parse("(a -> b) & (~a | c) | ~(b & c) & (d | ~d)")]

    def enumerate_all(use_numba):
        return sum(1 for _ in enumerate_valuations(fs, use_numba=use_numba))

    t_nb, c_nb = time_call(lambda: enumerate_all(True))
    t_np, c_np = time_call(lambda: enumerate_all(False))
    assert c_nb == c_np
    rows.append((f"enumerate ({c_nb} models)", t_nb, t_np))


def bench_game(rows):
    def run(use_numba):
        return play_chsh_game(
            "quantum-optimal", 1_000_000, seed=7, use_numba=use_numba
        )

    t_nb, r_nb = time_call(lambda: run(True))
    t_np, r_np = time_call(lambda: run(False))
    assert r_nb == r_np
    rows.append(("game tally (1e6 rounds)", t_nb, t_np))


def main():
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")
    # warm the jit compiles outside the timed region
    entails([Var("p"), Neg(Var("p"))], Var("q"), use_numba=True)
    play_chsh_game("quantum-optimal", 1000, seed=0, use_numba=True)

    rows = []
    bench_scan(rows)
    bench_game(rows)

    name_w = max(len(r[0]) for r in rows)
    print(f"{'case':<{name_w}}  {'numba':>10}  {'numpy':>10}  {'speedup':>8}")
    for name, t_nb, t_np in rows:
        print(
            f"{name:<{name_w}}  {t_nb * 1e3:>8.2f}ms  {t_np * 1e3:>8.2f}ms  "
            f"{t_np / t_nb:>7.1f}x"
        )


if __name__ == "__main__":
    main()
