"""The numba kernels and their numpy fallbacks must agree bit for bit."""

import subprocess
import sys

import numpy as np
import pytest

from paraquant import _kernels
from paraquant.chsh import play_chsh_game
from paraquant.formulas import Var, parse, well_behaved
from paraquant.semantics import classical_entails, entails, enumerate_valuations, is_valid

from helpers import gen_formula

pytestmark = pytest.mark.skipif(
    not _kernels.HAVE_NUMBA, reason="numba unavailable; only one path to test"
)


def test_flag_reflects_environment():
    code = (
        "import paraquant._kernels as k; print(k.USING_NUMBA)"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={"PATH": "/usr/bin:/bin", "PARAQUANT_DISABLE_NUMBA": "1"},
        capture_output=True,
        text=True,
        cwd="/",
    )
    assert out.stdout.strip() == "False"


def test_enumeration_paths_identical(rng):
    for _ in range(25):
        fs = [gen_formula(rng, depth=4) for _ in range(int(rng.integers(1, 3)))]
        a = list(enumerate_valuations(fs, use_numba=True))
        b = list(enumerate_valuations(fs, use_numba=False))
        assert a == b


def test_entailment_paths_identical(rng):
    for _ in range(40):
        gamma = [gen_formula(rng, depth=4) for _ in range(int(rng.integers(0, 3)))]
        c = gen_formula(rng, depth=4)
        va = entails(gamma, c, use_numba=True)
        vb = entails(gamma, c, use_numba=False)
        assert va == vb


def test_validity_and_classical_paths_identical(rng):
    for _ in range(25):
        f = gen_formula(rng, depth=4)
        assert is_valid(f, use_numba=True) == is_valid(f, use_numba=False)
        assert classical_entails([], f, use_numba=True) == classical_entails(
            [], f, use_numba=False
        )


def test_enriched_queries_agree_on_marked_premises(rng):
    for _ in range(15):
        gamma = [gen_formula(rng, depth=3)] + [
            well_behaved(Var(n)) for n in ("a", "b")
        ]
        c = gen_formula(rng, depth=3)
        assert entails(gamma, c, use_numba=True) == entails(
            gamma, c, use_numba=False
        )


def test_game_paths_identical():
    for strategy in ("quantum-optimal", "custom"):
        angles = (0.1, 1.2, 0.5, -0.9) if strategy == "custom" else None
        a = play_chsh_game(strategy, 50_000, seed=11, angles=angles, use_numba=True)
        b = play_chsh_game(strategy, 50_000, seed=11, angles=angles, use_numba=False)
        assert a == b


def test_game_tally_raw_equivalence(rng):
    settings = rng.integers(0, 4, size=10_000).astype(np.int64)
    us = rng.random(10_000)
    cum = np.sort(rng.random((4, 4)), axis=1)
    cum[:, 3] = 1.0
    win_lut = rng.integers(0, 2, size=(4, 4)).astype(np.int64)
    assert _kernels.game_tally_nb(settings, us, cum, win_lut) == _kernels.game_tally_np(
        settings, us, cum, win_lut
    )
