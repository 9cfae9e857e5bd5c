"""Command-line entry point.

Subcommands: parse, decide, prove-check, truth-tables, chsh (expect | s |
game | scan), bridge report.  Options may come from a TOML config file
(--config, or the PARAQUANT_CONFIG environment variable for the default
path); explicit flags win.

Exit codes: 0 success, 1 logical-negative result (invalid entailment or a
rejected proof), 2 input error, 3 branching budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, fields, replace

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from . import bridge as bridge_mod
from . import chsh as chsh_mod
from . import lp as lp_mod
from .formulas import ParseError, parse, parse_lines, render
from .proofs import (
    DerivationError,
    ProofScriptError,
    check_derivation,
    parse_proof_script,
    script_premises,
)
from .semantics import (
    BudgetExceededError,
    Verdict,
    classical_entails,
    entails,
)

CONFIG_ENV_VAR = "PARAQUANT_CONFIG"


@dataclass(frozen=True)
class Config:
    iff_mode: str = "conjunctive"
    branch_budget: int = 24
    sign_pattern: str = "max"
    angle_map: str = "pair-offset"
    seed: int = 0
    output_format: str = "text"


_CONFIG_KEYS = {f.name for f in fields(Config)}


def load_config(path: str | None, overrides: dict) -> Config:
    """Defaults, then the TOML file (if any), then explicit flag overrides."""
    cfg = Config()
    path = path or os.environ.get(CONFIG_ENV_VAR)
    if path:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
        unknown = set(data) - _CONFIG_KEYS
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg = replace(cfg, **data)
    cfg = replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
    if cfg.iff_mode not in ("conjunctive", "disjunctive"):
        raise ValueError(f"bad iff_mode {cfg.iff_mode!r}")
    if cfg.sign_pattern not in chsh_mod.SIGN_PATTERNS:
        raise ValueError(f"bad sign_pattern {cfg.sign_pattern!r}")
    if cfg.angle_map not in chsh_mod.ANGLE_MAPS:
        raise ValueError(f"bad angle_map {cfg.angle_map!r}")
    if cfg.output_format not in ("text", "json", "csv"):
        raise ValueError(f"bad output_format {cfg.output_format!r}")
    if cfg.branch_budget < 0:
        raise ValueError("branch_budget must be nonnegative")
    return cfg


def _build_parser() -> argparse.ArgumentParser:
    # Shared flags are accepted before or after the subcommand; SUPPRESS keeps
    # a subparser's unset flag from clobbering a value parsed at the top level.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="TOML config file")
    common.add_argument(
        "--format",
        dest="output_format",
        choices=("text", "json", "csv"),
        default=argparse.SUPPRESS,
    )
    common.add_argument(
        "--iff-mode",
        dest="iff_mode",
        choices=("conjunctive", "disjunctive"),
        default=argparse.SUPPRESS,
    )
    common.add_argument(
        "--budget",
        dest="branch_budget",
        type=int,
        default=argparse.SUPPRESS,
        help="branching-node cap",
    )
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(
        prog="paraquant",
        description="Paraconsistent propositional logic and the CHSH game, bridged.",
        parents=[common],
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser(
        "parse", help="parse a formula file and print canonical forms", parents=[common]
    )
    sp.add_argument("file")

    sp = sub.add_parser("decide", help="decide validity or entailment", parents=[common])
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--valid", metavar="FORMULA")
    mode.add_argument(
        "--entails", nargs=2, metavar=("PREMISES_FILE", "FORMULA")
    )
    sp.add_argument("--classical", action="store_true", help="two-valued oracle")

    sp = sub.add_parser("prove-check", help="check a proof script", parents=[common])
    sp.add_argument("script")
    sp.add_argument("--premises", help="restrict premises to this formula file")

    sub.add_parser(
        "truth-tables",
        help="dump the three-valued connective tables as CSV",
        parents=[common],
    )

    sp = sub.add_parser("chsh", help="two-qubit correlation tools")
    chsh_sub = sp.add_subparsers(dest="chsh_command", required=True)

    se = chsh_sub.add_parser("expect", help="single correlator", parents=[common])
    se.add_argument("--theta-a", type=float, required=True)
    se.add_argument("--theta-b", type=float, required=True)
    se.add_argument("--alpha", type=complex, help="amplitude of |00> (entangled state)")
    se.add_argument("--beta", type=complex, help="amplitude of |11> (entangled state)")

    ss = chsh_sub.add_parser("s", help="four-correlator S value", parents=[common])
    ss.add_argument("--angles", nargs=4, type=float, required=True,
                    metavar=("A", "A2", "B", "B2"))
    ss.add_argument("--pattern", dest="sign_pattern", choices=chsh_mod.SIGN_PATTERNS)

    sg = chsh_sub.add_parser("game", help="simulate the nonlocal game", parents=[common])
    sg.add_argument("--strategy", choices=chsh_mod.STRATEGIES, required=True)
    sg.add_argument("--rounds", type=int, required=True)
    sg.add_argument("--angles", nargs=4, type=float, metavar=("A0", "A1", "B0", "B1"))

    sc = chsh_sub.add_parser(
        "scan", help="inconsistency-degree surface as CSV", parents=[common]
    )
    sc.add_argument("--grid", type=int, required=True)
    sc.add_argument("--out", help="output CSV path (default: stdout)")
    sc.add_argument("--angle-map", dest="angle_map", choices=chsh_mod.ANGLE_MAPS)

    sp = sub.add_parser("bridge", help="logical analysis of quantum results")
    bridge_sub = sp.add_subparsers(dest="bridge_command", required=True)
    br = bridge_sub.add_parser(
        "report", help="locality inconsistency report", parents=[common]
    )
    src = br.add_mutually_exclusive_group(required=True)
    src.add_argument("--s-value", type=float)
    src.add_argument("--angles", nargs=4, type=float, metavar=("A", "A2", "B", "B2"))

    return p


def _verdict_payload(query: str, verdict: Verdict, elapsed_ms: float) -> dict:
    return {
        "query": query,
        "status": verdict.status,
        "countermodel": None
        if verdict.countermodel is None
        else [
            {"formula": render(f), "value": v} for f, v in verdict.countermodel.items()
        ],
        "branches_explored": verdict.branches_explored,
        "elapsed_ms": elapsed_ms,
    }


def _print_verdict(query: str, verdict: Verdict, elapsed_ms: float, cfg: Config, out):
    if cfg.output_format == "json":
        print(json.dumps(_verdict_payload(query, verdict, elapsed_ms)), file=out)
        return
    print(f"{query}: {verdict.status}", file=out)
    if verdict.countermodel is not None:
        for f, v in verdict.countermodel.items():
            print(f"  {render(f)} = {v}", file=out)


def _cmd_parse(args, cfg: Config, out) -> int:
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    parsed = parse_lines(text)
    if cfg.output_format == "json":
        print(
            json.dumps([{"line": n, "formula": render(f)} for n, f in parsed]),
            file=out,
        )
    else:
        for _, f in parsed:
            print(render(f), file=out)
    return 0


def _cmd_decide(args, cfg: Config, out) -> int:
    decide = classical_entails if args.classical else entails
    t0 = time.perf_counter()
    if args.valid is not None:
        f = parse(args.valid)
        verdict = decide([], f, budget=cfg.branch_budget, iff_mode=cfg.iff_mode)
        query = f"|= {render(f)}"
    else:
        premises_file, conclusion_text = args.entails
        with open(premises_file, encoding="utf-8") as fh:
            premises = [f for _, f in parse_lines(fh.read())]
        conclusion = parse(conclusion_text)
        verdict = decide(
            premises, conclusion, budget=cfg.branch_budget, iff_mode=cfg.iff_mode
        )
        shown = ", ".join(render(f) for f in premises)
        query = f"{{{shown}}} |= {render(conclusion)}"
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    _print_verdict(query, verdict, elapsed_ms, cfg, out)
    return 0 if verdict.status == "valid" else 1


def _cmd_prove_check(args, cfg: Config, out) -> int:
    with open(args.script, encoding="utf-8") as fh:
        derivation = parse_proof_script(fh.read())
    if args.premises:
        with open(args.premises, encoding="utf-8") as fh:
            premises = [f for _, f in parse_lines(fh.read())]
    else:
        premises = script_premises(derivation)
    theorem = check_derivation(derivation, premises)
    if cfg.output_format == "json":
        print(
            json.dumps(
                {"status": "ok", "lines": len(derivation.lines), "theorem": render(theorem)}
            ),
            file=out,
        )
    else:
        print(f"ok: {len(derivation.lines)} lines, theorem {render(theorem)}", file=out)
    return 0


def _cmd_chsh(args, cfg: Config, out) -> int:
    if args.chsh_command == "expect":
        if (args.alpha is None) != (args.beta is None):
            raise ValueError("--alpha and --beta must be given together")
        if args.alpha is not None:
            state = chsh_mod.entangled_state(args.alpha, args.beta)
        else:
            state = chsh_mod.bell_phi_plus()
        e = chsh_mod.expectation(state, args.theta_a, args.theta_b)
        if cfg.output_format == "json":
            print(
                json.dumps(
                    {"theta_a": args.theta_a, "theta_b": args.theta_b, "expectation": e}
                ),
                file=out,
            )
        else:
            print(f"E({args.theta_a:g}, {args.theta_b:g}) = {e:.9g}", file=out)
        return 0
    if args.chsh_command == "s":
        res = chsh_mod.chsh_s(
            chsh_mod.bell_phi_plus(), *args.angles, pattern=cfg.sign_pattern
        )
        if cfg.output_format == "json":
            print(
                json.dumps(
                    {
                        "angles": list(args.angles),
                        "pattern": cfg.sign_pattern,
                        "correlators": list(res.correlators),
                        "s_value": res.s_value,
                        "degree": res.degree,
                    }
                ),
                file=out,
            )
        else:
            e = res.correlators
            print(
                f"E = ({e[0]:.6f}, {e[1]:.6f}, {e[2]:.6f}, {e[3]:.6f})  "
                f"S[{cfg.sign_pattern}] = {res.s_value:.9g}  D = {res.degree:.9g}",
                file=out,
            )
        return 0
    if args.chsh_command == "game":
        angles = tuple(args.angles) if args.angles else None
        result = chsh_mod.play_chsh_game(
            args.strategy, args.rounds, seed=cfg.seed, angles=angles
        )
        if cfg.output_format == "json":
            print(json.dumps(result.as_dict()), file=out)
        else:
            print(
                f"{result.strategy}: {result.wins}/{result.rounds} wins "
                f"(rate {result.win_rate:.6f}, seed {result.seed})",
                file=out,
            )
        return 0
    # scan
    rows = chsh_mod.scan_surface(
        args.grid, angle_map=cfg.angle_map, pattern=cfg.sign_pattern
    )
    csv_text = chsh_mod.surface_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(csv_text)
        print(f"wrote {rows.shape[0]} rows to {args.out}", file=out)
    else:
        out.write(csv_text)
    return 0


def _cmd_bridge(args, cfg: Config, out) -> int:
    if args.s_value is not None:
        result = chsh_mod.result_for_s(args.s_value)
    else:
        result = chsh_mod.chsh_s(
            chsh_mod.bell_phi_plus(), *args.angles, pattern=cfg.sign_pattern
        )
    report = bridge_mod.locality_report(result, budget=cfg.branch_budget)
    if cfg.output_format == "json":
        print(json.dumps(report.to_dict()), file=out)
    else:
        out.write(report.to_text())
    return 0


def run(argv: list[str], out=None, err=None) -> int:
    """Execute one CLI invocation; returns the exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return 2 if code else 0
    try:
        # shared flags use SUPPRESS defaults so a subcommand cannot clobber a
        # value parsed at the top level; absent attributes mean "not given"
        cfg = load_config(
            getattr(args, "config", None),
            {
                "output_format": getattr(args, "output_format", None),
                "iff_mode": getattr(args, "iff_mode", None),
                "branch_budget": getattr(args, "branch_budget", None),
                "seed": getattr(args, "seed", None),
            },
        )
        for key in ("sign_pattern", "angle_map"):
            value = getattr(args, key, None)
            if value is not None:
                cfg = replace(cfg, **{key: value})
        if args.command == "parse":
            return _cmd_parse(args, cfg, out)
        if args.command == "decide":
            return _cmd_decide(args, cfg, out)
        if args.command == "prove-check":
            return _cmd_prove_check(args, cfg, out)
        if args.command == "truth-tables":
            out.write(lp_mod.truth_table_csv())
            return 0
        if args.command == "chsh":
            return _cmd_chsh(args, cfg, out)
        return _cmd_bridge(args, cfg, out)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=err)
        return 3
    except DerivationError as exc:
        print(f"rejected: {exc}", file=err)
        return 1
    except (ParseError, ProofScriptError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
