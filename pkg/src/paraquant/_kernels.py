"""Hot loops behind the decision procedure and the game simulator.

Two implementations of each kernel: a numba-compiled one and a pure-numpy
one. Both scan candidate assignments in ascending order of the packed bit
pattern and must produce bit-identical results; the numpy path is selected
by setting PARAQUANT_DISABLE_NUMBA=1 (or when numba is not importable).

Valuation-scan argument conventions (arrays indexed by closure position,
children always before parents):

    kind      int8   0 var, 1 negation, 2 conjunction, 3 disjunction, 4 implication
    cl, cr    int32  child indices (cr unused for var/negation)
    bit_slot  int32  combo bit feeding this node, -1 if fixed or computed
    init_val  int8   value of a fixed var/negation node
    req       int8   required value (-1 none) checked during evaluation
    negneg    int32  for ~~y nodes: index of y, else -1
    neg_of    int32  index of the negation of this node, else -1
    wb_of     int32  index of this node's well-behavedness marker ~(x & ~x), else -1
    wb_base   int32  for marker nodes: index of the marked x, else -1
    r7a/r7b/r7c      well-behavedness propagation triples (a0, b0, (a.b)0)

Admissibility of a candidate (non-classical mode):

  * truth-functional nodes are computed, never branched;
  * a negation must be true when its child is false;
  * a true double negation forces its base true;
  * a true marker ~(x & ~x) forbids x and ~x both true (the reductio rule
    instantiated with derived implication values);
  * jointly well-behaved operands force the compound's marker true.

Enriched mode additionally tracks *forced* well-behavedness (values a total
valuation would be compelled to give the marker of every node, whether or
not the marker is in the closure) and rejects candidates whose forced
markers clash with a glut or with an assigned marker value.
"""

from __future__ import annotations

import os

import numpy as np

VAR, NEG, AND, OR, IMP = 0, 1, 2, 3, 4

NUMBA_DISABLED = os.environ.get("PARAQUANT_DISABLE_NUMBA", "") not in ("", "0")

try:
    if NUMBA_DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

USING_NUMBA = HAVE_NUMBA


def scan_np(
    lo,
    hi,
    kind,
    cl,
    cr,
    bit_slot,
    init_val,
    req,
    negneg,
    neg_of,
    wb_of,
    wb_base,
    r7a,
    r7b,
    r7c,
    classical,
    enriched,
    out_vals,
    out_combos,
    stop_first,
):
    """Vectorized scan of combos [lo, hi); fills admissible rows, returns count."""
    n = kind.shape[0]
    cap = out_combos.shape[0]
    m = hi - lo
    combos = np.arange(lo, hi, dtype=np.int64)
    vals = np.empty((m, n), np.int8)
    ok = np.ones(m, np.bool_)
    for i in range(n):
        kd = kind[i]
        if kd == VAR or (kd == NEG and not classical):
            s = bit_slot[i]
            if s >= 0:
                col = ((combos >> np.int64(s)) & 1).astype(np.int8)
            else:
                col = np.full(m, init_val[i], np.int8)
        elif kd == NEG:
            col = 1 - vals[:, cl[i]]
        elif kd == AND:
            col = vals[:, cl[i]] & vals[:, cr[i]]
        elif kd == OR:
            col = vals[:, cl[i]] | vals[:, cr[i]]
        else:
            col = (1 - vals[:, cl[i]]) | vals[:, cr[i]]
        vals[:, i] = col
        if req[i] >= 0:
            ok &= col == req[i]
    if not classical:
        for i in range(n):
            if kind[i] == NEG:
                ok &= (vals[:, cl[i]] | vals[:, i]) == 1
                g = negneg[i]
                if g >= 0:
                    ok &= ~((vals[:, i] == 1) & (vals[:, g] == 0))
            x = wb_base[i]
            if x >= 0:
                ok &= (vals[:, i] & vals[:, x] & vals[:, neg_of[x]]) == 0
        for t in range(r7a.shape[0]):
            ok &= (vals[:, r7a[t]] & vals[:, r7b[t]] & (1 - vals[:, r7c[t]])) == 0
        if enriched:
            wbf = np.empty((m, n), np.bool_)
            for i in range(n):
                w = vals[:, i] == 0
                if neg_of[i] >= 0:
                    w |= vals[:, neg_of[i]] == 0
                if wb_of[i] >= 0:
                    w |= vals[:, wb_of[i]] == 1
                if kind[i] == NEG:
                    w |= vals[:, cl[i]] == 0
                elif kind[i] >= AND:
                    w |= wbf[:, cl[i]] & wbf[:, cr[i]]
                wbf[:, i] = w
                if neg_of[i] >= 0:
                    ok &= ~(w & (vals[:, i] == 1) & (vals[:, neg_of[i]] == 1))
                if wb_of[i] >= 0:
                    ok &= ~(w & (vals[:, wb_of[i]] == 0))
    hits = np.flatnonzero(ok)
    if stop_first and hits.shape[0] > 1:
        hits = hits[:1]
    if hits.shape[0] > cap:
        hits = hits[:cap]
    count = hits.shape[0]
    out_combos[:count] = combos[hits]
    out_vals[:count] = vals[hits]
    return count


def _scan_py(
    lo,
    hi,
    kind,
    cl,
    cr,
    bit_slot,
    init_val,
    req,
    negneg,
    neg_of,
    wb_of,
    wb_base,
    r7a,
    r7b,
    r7c,
    classical,
    enriched,
    out_vals,
    out_combos,
    stop_first,
):
    """Scalar scan; the numba-compiled twin of scan_np."""
    n = kind.shape[0]
    cap = out_combos.shape[0]
    vals = np.empty(n, np.int8)
    wbf = np.empty(n, np.int8)
    found = 0
    for combo in range(lo, hi):
        good = True
        for i in range(n):
            kd = kind[i]
            if kd == VAR or (kd == NEG and classical == 0):
                s = bit_slot[i]
                if s >= 0:
                    v = np.int8((combo >> s) & 1)
                else:
                    v = init_val[i]
            elif kd == NEG:
                v = 1 - vals[cl[i]]
            elif kd == AND:
                v = vals[cl[i]] & vals[cr[i]]
            elif kd == OR:
                v = vals[cl[i]] | vals[cr[i]]
            else:
                v = (1 - vals[cl[i]]) | vals[cr[i]]
            if req[i] >= 0 and v != req[i]:
                good = False
                break
            vals[i] = v
        if not good:
            continue
        if classical == 0:
            for i in range(n):
                if kind[i] == NEG:
                    if vals[cl[i]] == 0 and vals[i] == 0:
                        good = False
                        break
                    g = negneg[i]
                    if g >= 0 and vals[i] == 1 and vals[g] == 0:
                        good = False
                        break
                x = wb_base[i]
                if x >= 0 and vals[i] == 1 and vals[x] == 1 and vals[neg_of[x]] == 1:
                    good = False
                    break
            if not good:
                continue
            for t in range(r7a.shape[0]):
                if vals[r7a[t]] == 1 and vals[r7b[t]] == 1 and vals[r7c[t]] == 0:
                    good = False
                    break
            if not good:
                continue
            if enriched == 1:
                for i in range(n):
                    w = np.int8(0)
                    if vals[i] == 0:
                        w = 1
                    if w == 0 and neg_of[i] >= 0 and vals[neg_of[i]] == 0:
                        w = 1
                    if w == 0 and wb_of[i] >= 0 and vals[wb_of[i]] == 1:
                        w = 1
                    if w == 0 and kind[i] == NEG and vals[cl[i]] == 0:
                        w = 1
                    if w == 0 and kind[i] >= AND and wbf[cl[i]] == 1 and wbf[cr[i]] == 1:
                        w = 1
                    wbf[i] = w
                    if w == 1:
                        if neg_of[i] >= 0 and vals[i] == 1 and vals[neg_of[i]] == 1:
                            good = False
                            break
                        if wb_of[i] >= 0 and vals[wb_of[i]] == 0:
                            good = False
                            break
                if not good:
                    continue
        out_combos[found] = combo
        for i in range(n):
            out_vals[found, i] = vals[i]
        found += 1
        if stop_first == 1 or found == cap:
            return found
    return found


def _game_tally_py(settings, us, cum, win_lut):
    """Count wins over pre-drawn rounds; the numba twin of game_tally_np."""
    wins = 0
    for r in range(settings.shape[0]):
        s = settings[r]
        u = us[r]
        o = 0
        while o < 3 and u >= cum[s, o]:
            o += 1
        wins += win_lut[s, o]
    return wins


def game_tally_np(settings, us, cum, win_lut):
    """Vectorized win count over pre-drawn rounds.

    settings: per-round input pair index (2*x + y); us: uniform draws in [0, 1);
    cum: per-setting cumulative outcome probabilities (4 outcomes);
    win_lut: 1 where the outcome pair wins for that setting.
    """
    o = np.minimum((us[:, None] >= cum[settings, :]).sum(axis=1), 3)
    return int(win_lut[settings, o].sum())


if HAVE_NUMBA:
    scan_nb = njit(cache=True)(_scan_py)
    game_tally_nb = njit(cache=True)(_game_tally_py)
else:
    scan_nb = None
    game_tally_nb = None

scan = scan_nb if USING_NUMBA else scan_np
game_tally = game_tally_nb if USING_NUMBA else game_tally_np
