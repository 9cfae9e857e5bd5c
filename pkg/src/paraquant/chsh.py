"""Exact two-qubit simulation: entangled states, rotated +/-1 observables,
correlators, the nonlocal game, and the inconsistency surface.

Observables live in the x-z plane: A(theta) = cos(theta) Z + sin(theta) X,
with eigenvalues exactly +1/-1.  Everything is computed by dense
4-dimensional linear algebra; no sampling noise enters except in the game
simulator, which is seeded and bit-reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels

TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)
CLASSICAL_LIMIT = 2.0

SIGN_PATTERNS = ("paper-eq4", "standard", "max")
ANGLE_MAPS = ("pair-offset", "absolute")

_NORM_TOL = 1e-12


class TwoQubitState:
    """Four complex amplitudes over |00>, |01>, |10>, |11>, unit norm."""

    __slots__ = ("_amplitudes",)

    def __init__(self, amplitudes):
        amps = np.asarray(amplitudes, dtype=np.complex128).reshape(4).copy()
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > _NORM_TOL:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm_sq!r}")
        amps.setflags(write=False)
        self._amplitudes = amps

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amplitudes

    def reduced_weights(self, qubit: int) -> tuple[float, float]:
        """Computational-basis weights (w0, w1) of one qubit, by partial trace."""
        probs = np.abs(self._amplitudes) ** 2
        if qubit == 0:
            return float(probs[0] + probs[1]), float(probs[2] + probs[3])
        if qubit == 1:
            return float(probs[0] + probs[2]), float(probs[1] + probs[3])
        raise ValueError("qubit index must be 0 or 1")

    def __repr__(self) -> str:
        a = ", ".join(f"{z:.5g}" for z in self._amplitudes)
        return f"TwoQubitState([{a}])"


def _normalized(raw: np.ndarray) -> TwoQubitState:
    norm = float(np.linalg.norm(raw))
    if norm <= 1e-15:
        raise ValueError("zero vector cannot be normalized into a state")
    return TwoQubitState(raw / norm)


def bell_phi_plus() -> TwoQubitState:
    """The maximally entangled state (|00> + |11>) / sqrt(2)."""
    s = 1.0 / math.sqrt(2.0)
    return TwoQubitState([s, 0.0, 0.0, s])


def entangled_state(alpha: complex, beta: complex) -> TwoQubitState:
    """alpha |00> + beta |11>, renormalized; rejects the zero vector."""
    return _normalized(np.array([alpha, 0.0, 0.0, beta], dtype=np.complex128))


def product_state(qubit_a, qubit_b) -> TwoQubitState:
    """Tensor product of two single-qubit vectors, renormalized."""
    a = np.asarray(qubit_a, dtype=np.complex128).reshape(2)
    b = np.asarray(qubit_b, dtype=np.complex128).reshape(2)
    return _normalized(np.kron(a, b))


def pair_superposition(qa, qb, qa2, qb2) -> TwoQubitState:
    """Normalized |qa>|qb> + |qa2>|qb2> (superposed product terms)."""
    a = np.asarray(qa, dtype=np.complex128).reshape(2)
    b = np.asarray(qb, dtype=np.complex128).reshape(2)
    a2 = np.asarray(qa2, dtype=np.complex128).reshape(2)
    b2 = np.asarray(qb2, dtype=np.complex128).reshape(2)
    return _normalized(np.kron(a, b) + np.kron(a2, b2))


def epr_state() -> TwoQubitState:
    """The anticorrelated pair (|-> |+> + |+> |->) / sqrt(2).

    Built from the product terms; equals (|00> - |11>) / sqrt(2).
    """
    s = 1.0 / math.sqrt(2.0)
    plus = np.array([s, s])
    minus = np.array([s, -s])
    return pair_superposition(minus, plus, plus, minus)


@dataclass(frozen=True)
class Observable:
    """A +1/-1 measurement along angle theta in the x-z plane."""

    theta: float

    @property
    def matrix(self) -> np.ndarray:
        c, s = math.cos(self.theta), math.sin(self.theta)
        return np.array([[c, s], [s, -c]])


def expectation(state: TwoQubitState, theta_a: float, theta_b: float) -> float:
    """<psi| A(theta_a) (x) B(theta_b) |psi>, exactly, in [-1, 1]."""
    m = np.kron(Observable(theta_a).matrix, Observable(theta_b).matrix)
    psi = state.amplitudes
    return float(np.real(np.conj(psi) @ m @ psi))


def joint_probabilities(
    state: TwoQubitState, theta_a: float, theta_b: float
) -> tuple[float, float, float, float]:
    """Outcome probabilities P(++), P(+-), P(-+), P(--) for the joint measurement."""
    eye = np.eye(2)
    ma = Observable(theta_a).matrix
    mb = Observable(theta_b).matrix
    psi = state.amplitudes
    out = []
    for sa in (1.0, -1.0):
        pa = (eye + sa * ma) / 2.0
        for sb in (1.0, -1.0):
            pb = (eye + sb * mb) / 2.0
            p = float(np.real(np.conj(psi) @ np.kron(pa, pb) @ psi))
            out.append(max(0.0, p))
    return tuple(out)


@dataclass(frozen=True)
class ChshResult:
    """The four correlators, the combined S value, and the inconsistency degree."""

    e_ab: float
    e_abp: float
    e_apb: float
    e_apbp: float
    s_value: float
    degree: float

    @property
    def correlators(self) -> tuple[float, float, float, float]:
        return (self.e_ab, self.e_abp, self.e_apb, self.e_apbp)


def inconsistency_degree(s_value: float) -> float:
    """|S - 2| rescaled so the classical limit maps to 0 and 2*sqrt(2) to 100."""
    d = abs(s_value - CLASSICAL_LIMIT) * 100.0 / (TSIRELSON_BOUND - CLASSICAL_LIMIT)
    return min(100.0, max(0.0, d))


def chsh_s(
    state: TwoQubitState,
    theta_a: float,
    theta_a2: float,
    theta_b: float,
    theta_b2: float,
    pattern: str = "max",
) -> ChshResult:
    """Combine the four correlators into an S value.

    paper-eq4:  |E(a,b) - E(a,b')| + |E(a',b) + E(a',b')|
    standard:   E(a,b) + E(a,b') + E(a',b) - E(a',b')  (signed)
    max:        the largest |sum with one sign flipped| over the four choices
    """
    e1 = expectation(state, theta_a, theta_b)
    e2 = expectation(state, theta_a, theta_b2)
    e3 = expectation(state, theta_a2, theta_b)
    e4 = expectation(state, theta_a2, theta_b2)
    if pattern == "paper-eq4":
        s = abs(e1 - e2) + abs(e3 + e4)
    elif pattern == "standard":
        s = e1 + e2 + e3 - e4
    elif pattern == "max":
        total = e1 + e2 + e3 + e4
        s = max(abs(total - 2.0 * e) for e in (e1, e2, e3, e4))
    else:
        raise ValueError(f"sign pattern must be one of {SIGN_PATTERNS}, got {pattern!r}")
    return ChshResult(e1, e2, e3, e4, s, inconsistency_degree(s))


def result_for_s(s_value: float) -> ChshResult:
    """An honestly computed ChshResult whose S equals s_value (0 <= s <= 2*sqrt(2)).

    Uses the one-parameter family a=0, a'=pi/2, b=pi/4+t, b'=3pi/4+t on the
    maximally entangled state, whose grouped-absolute S is 2*sqrt(2)*cos(t).
    """
    if not 0.0 <= s_value <= TSIRELSON_BOUND + 1e-9:
        raise ValueError(f"S must lie in [0, 2*sqrt(2)], got {s_value!r}")
    t = math.acos(min(1.0, s_value / TSIRELSON_BOUND))
    return chsh_s(
        bell_phi_plus(),
        0.0,
        math.pi / 2.0,
        math.pi / 4.0 + t,
        3.0 * math.pi / 4.0 + t,
        pattern="paper-eq4",
    )


# ---------------------------------------------------------------------------
# The nonlocal game

STRATEGIES = ("quantum-optimal", "classical-best", "custom")

_OPTIMAL_ALICE = (0.0, math.pi / 2.0)
_OPTIMAL_BOB = (math.pi / 4.0, -math.pi / 4.0)


@dataclass(frozen=True)
class GameResult:
    strategy: str
    rounds: int
    seed: int
    wins: int
    win_rate: float

    def as_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "rounds": self.rounds,
            "seed": self.seed,
            "wins": self.wins,
            "win_rate": self.win_rate,
        }


def play_chsh_game(
    strategy: str,
    rounds: int,
    seed: int = 0,
    angles: tuple[float, float, float, float] | None = None,
    state: TwoQubitState | None = None,
    use_numba: bool | None = None,
) -> GameResult:
    """Simulate i.i.d. rounds with uniform input bits; win when a xor b = x and y.

    quantum-optimal measures the maximally entangled state with Alice in
    {Z, X} and Bob in {(Z+X)/sqrt(2), (Z-X)/sqrt(2)}; outcomes map +1 -> 0,
    -1 -> 1.  classical-best is the deterministic all-zeros strategy.
    Results are bit-identical for a given seed.
    """
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    rng = np.random.default_rng(seed)
    xs = rng.integers(0, 2, size=rounds, dtype=np.int64)
    ys = rng.integers(0, 2, size=rounds, dtype=np.int64)
    if strategy == "classical-best":
        wins = int(np.sum((xs & ys) == 0))
        return GameResult(strategy, rounds, seed, wins, wins / rounds)
    if strategy == "quantum-optimal":
        alice, bob = _OPTIMAL_ALICE, _OPTIMAL_BOB
    elif strategy == "custom":
        if angles is None or len(angles) != 4:
            raise ValueError("custom strategy needs angles (a0, a1, b0, b1)")
        alice, bob = (angles[0], angles[1]), (angles[2], angles[3])
    else:
        raise ValueError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
    shared = bell_phi_plus() if state is None else state
    us = rng.random(rounds)
    settings = 2 * xs + ys
    cum = np.empty((4, 4))
    win_lut = np.zeros((4, 4), np.int64)
    outcome_bits = ((0, 0), (0, 1), (1, 0), (1, 1))  # +1 -> 0, -1 -> 1
    for x in (0, 1):
        for y in (0, 1):
            probs = joint_probabilities(shared, alice[x], bob[y])
            cum[2 * x + y] = np.cumsum(probs)
            for o, (a_bit, b_bit) in enumerate(outcome_bits):
                if (a_bit ^ b_bit) == (x & y):
                    win_lut[2 * x + y, o] = 1
    numba = _kernels.USING_NUMBA if use_numba is None else use_numba
    tally = _kernels.game_tally_nb if numba else _kernels.game_tally_np
    wins = int(tally(settings, us, cum, win_lut))
    return GameResult(strategy, rounds, seed, wins, wins / rounds)


# ---------------------------------------------------------------------------
# The inconsistency surface

def _cell_angles(x: float, y: float, angle_map: str):
    if angle_map == "pair-offset":
        return (
            0.0,
            x * math.pi / 2.0,
            y * math.pi / 2.0 + math.pi / 4.0,
            y * math.pi / 2.0 - math.pi / 4.0,
        )
    if angle_map == "absolute":
        return (
            x * math.pi,
            x * math.pi + math.pi / 2.0,
            y * math.pi + math.pi / 4.0,
            y * math.pi - math.pi / 4.0,
        )
    raise ValueError(f"angle map must be one of {ANGLE_MAPS}, got {angle_map!r}")


def scan_surface(
    grid_n: int,
    angle_map: str = "pair-offset",
    pattern: str = "max",
    state: TwoQubitState | None = None,
) -> np.ndarray:
    """Uniform grid over [0, 1]^2 mapped to measurement angles; rows (x, y, S, D).

    Row-major: x varies slowest. The grid includes the endpoints, so the
    optimal configuration is hit exactly and the maximal degree is 100.
    """
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    shared = bell_phi_plus() if state is None else state
    coords = np.linspace(0.0, 1.0, grid_n)
    rows = np.empty((grid_n * grid_n, 4))
    k = 0
    for x in coords:
        for y in coords:
            a, a2, b, b2 = _cell_angles(float(x), float(y), angle_map)
            res = chsh_s(shared, a, a2, b, b2, pattern=pattern)
            rows[k] = (x, y, res.s_value, res.degree)
            k += 1
    return rows


def surface_csv(rows: np.ndarray) -> str:
    """CSV with header x,y,S,D and 9 significant digits per field."""
    lines = ["x,y,S,D"]
    for x, y, s, d in rows:
        lines.append(f"{x:.9g},{y:.9g},{s:.9g},{d:.9g}")
    return "\n".join(lines) + "\n"
