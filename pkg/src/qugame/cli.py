"""Command-line entry point: ``qugame <subcommand> ...``.

Every subcommand prints (or writes with ``--output``) a JSON report that
embeds the resolved run configuration. Exit status is 0 on success, 1
when the analysis itself reports a failure, and 2 on bad input.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
import warnings

import numpy as np

from . import __version__
from .classical import builtin_games, pareto_optimal_outcomes, pure_nash_equilibria
from .config import RunConfig, default_seed
from .csd import circuit_to_unitary, csd4, factors_to_circuit, phase_aligned_error
from .engine import DistancePreference, LocalUnitaryGame, exact_equilibria, nash_iterate
from .ewl import ENTANGLER_J, basis_payoffs, ewl_equilibrium_scan, recovers_classical_game
from ._validation import check_unitary
from .exceptions import GameFormatError, NonUnitaryInput, NormalizationFailure, QugameError
from .io import (
    circuit_to_json,
    dumps,
    load_game,
    load_matrix,
    matrix_to_json,
    sig12,
    write_atomic,
)
from .mechanism import candidate_report, seed_strategies
from .mixed import DegenerateGameWarning, mixed_nash_2x2

log = logging.getLogger("qugame")

EXIT_OK = 0
EXIT_ANALYSIS_FAILED = 1
EXIT_BAD_INPUT = 2


class AnalysisFailed(Exception):
    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


def _profile_names(game, profile):
    return game.profile_names(profile)


def cmd_analyze(args, config):
    game = load_game(args.game)
    return {
        "game": game.name or args.game,
        "pure_nash": [_profile_names(game, p) for p in pure_nash_equilibria(game)],
        "pareto": pareto_optimal_outcomes(game),
    }


def cmd_mix(args, config):
    game = load_game(args.game)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DegenerateGameWarning)
        try:
            equilibria = mixed_nash_2x2(game)
        except ValueError as exc:
            raise GameFormatError(args.game, str(exc)) from exc
    return {
        "warnings": [str(w.message) for w in caught],
        "game": game.name or args.game,
        "strategies": [list(s) for s in game.strategies],
        "equilibria": [[[sig12(v) for v in p], [sig12(v) for v in q]] for p, q in equilibria],
        "pure_nash": [_profile_names(game, p) for p in pure_nash_equilibria(game)],
    }


def cmd_quantize(args, config):
    game = load_game(args.game)
    entangler = load_matrix(args.entangler) if args.entangler else ENTANGLER_J
    try:
        payoffs = basis_payoffs(game, check_unitary(entangler, 4, name="entangler"))
    except ValueError as exc:
        raise GameFormatError(args.game, str(exc)) from exc
    try:
        report = ewl_equilibrium_scan(
            payoffs,
            args.grid,
            full_phase=args.full_phase,
            entangler=entangler,
            construction=args.construction,
        )
    except NonUnitaryInput:
        raise
    except ValueError as exc:
        raise GameFormatError("--grid", str(exc)) from exc
    report["game"] = game.name or args.game
    report["basis_payoffs"] = payoffs.tolist()
    report["entangler"] = matrix_to_json(entangler)
    report["recovers_classical_game"] = recovers_classical_game(entangler)
    return report


def cmd_qnash(args, config):
    unitary = load_matrix(args.unitary)
    game = LocalUnitaryGame(unitary, DistancePreference.from_indices(args.target_i, args.target_ii))
    runs = []
    for k, (x0, y0) in enumerate(seed_strategies(args.seeds, config.seed)):
        result = nash_iterate(game, x0, y0, max_iter=args.max_iter, tol=args.tol)
        entry = {"seed_index": k, "status": result.status, "iterations": result.iterations}
        entry.update(candidate_report(game, result.candidate))
        runs.append(entry)
    return {
        "targets": [args.target_i, args.target_ii],
        "runs": runs,
        "exact_equilibria": [candidate_report(game, c) for c in exact_equilibria(game)],
    }


def cmd_csd(args, config):
    unitary = load_matrix(args.unitary)
    factors = csd4(unitary)
    circuit = factors_to_circuit(factors)
    rebuilt = circuit_to_unitary(circuit)
    error = float(np.max(np.abs(rebuilt - unitary)))
    report = {
        "theta": [factors.theta1, factors.theta2],
        "factors": {name: matrix_to_json(getattr(factors, name)) for name in ("L0", "L1", "R0", "R1")},
        "reconstruction_error": error,
        "phase_aligned_error": phase_aligned_error(rebuilt, unitary),
        "n_gates": len(circuit),
    }
    if args.emit_circuit:
        write_atomic(args.emit_circuit, dumps(circuit_to_json(circuit)))
        report["circuit_file"] = args.emit_circuit
    else:
        report["circuit"] = circuit_to_json(circuit)
    if error >= config.reconstruction_tol:
        raise AnalysisFailed(f"reconstruction error {error:.3e} exceeds tolerance", report)
    return report


def cmd_builtin(args, config):
    games = builtin_games()
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        names = [args.name] if args.name else sorted(games)
        written = []
        for name in names:
            if name not in games:
                raise GameFormatError("name", f"unknown builtin game {name!r}; choose from {sorted(games)}")
            path = os.path.join(args.out_dir, f"{name}.json")
            write_atomic(path, dumps(games[name].to_dict()))
            written.append(path)
        return {"written": written}
    if args.name is None:
        return {"games": sorted(games)}
    if args.name not in games:
        raise GameFormatError("name", f"unknown builtin game {args.name!r}; choose from {sorted(games)}")
    return games[args.name].to_dict()


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
    common.add_argument(
        "--seed", type=int, default=None, help="random seed (default: $QUGAME_SEED or 1729)"
    )
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="qugame", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="pure Nash equilibria and Pareto-optimal outcomes")
    p.add_argument("game", help="game definition file (JSON)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("mix", parents=[common], help="mixed equilibria of a 2x2 game")
    p.add_argument("game", help="game definition file (JSON)")
    p.set_defaults(func=cmd_mix)

    p = sub.add_parser("quantize", parents=[common], help="quantized versions of a 2x2 game")
    qsub = p.add_subparsers(dest="scheme", required=True)
    q = qsub.add_parser("ewl", parents=[common], help="grid probe of EWL equilibria")
    q.add_argument("--game", required=True, help="2x2 game definition file")
    q.add_argument("--grid", type=int, required=True, help="grid points per strategy parameter (>= 2)")
    q.add_argument("--full-phase", action="store_true", help="add the phase of the first amplitude as a third parameter")
    q.add_argument("--entangler", help="4x4 complex matrix file replacing the default J")
    q.add_argument(
        "--construction",
        choices=("circuit", "formula"),
        default="circuit",
        help="state construction: entangling circuit (default) or closed-form amplitudes",
    )
    q.set_defaults(func=cmd_quantize)

    p = sub.add_parser("qnash", parents=[common], help="equilibria of a quantum game U(x (x) y)")
    p.add_argument("--unitary", required=True, help="4x4 complex matrix file")
    p.add_argument("--target-i", type=int, required=True, help="player I's preferred basis ket, 1..4")
    p.add_argument("--target-ii", type=int, required=True, help="player II's preferred basis ket, 1..4")
    p.add_argument("--seeds", type=int, default=4, help="number of seeded starting points (default 4)")
    p.add_argument("--tol", type=float, default=1e-8, help="convergence tolerance (default 1e-8)")
    p.add_argument("--max-iter", type=int, default=1000, help="best-response rounds per run (default 1000)")
    p.set_defaults(func=cmd_qnash)

    p = sub.add_parser("csd", parents=[common], help="cosine-sine circuit for a 4x4 unitary")
    p.add_argument("--unitary", required=True, help="4x4 complex matrix file")
    p.add_argument("--emit-circuit", help="also write the circuit JSON to this file")
    p.set_defaults(func=cmd_csd)

    p = sub.add_parser("builtin", parents=[common], help="list builtin games or dump one as a game file")
    p.add_argument("name", nargs="?", help="G, matching_pennies or prisoners_dilemma")
    p.add_argument("--out-dir", help="write <name>.json game files into this directory")
    p.set_defaults(func=cmd_builtin)
    return parser


def _config_for(args, seed):
    inputs = {k: getattr(args, k) for k in ("game", "unitary", "entangler", "name") if getattr(args, k, None)}
    return RunConfig(
        subcommand=args.command if args.command != "quantize" else f"quantize {args.scheme}",
        inputs=inputs,
        convergence_tol=getattr(args, "tol", 1e-8),
        max_iter=getattr(args, "max_iter", 1000),
        grid_density=getattr(args, "grid", None),
        seeds=getattr(args, "seeds", None),
        seed=seed,
        output=args.output,
    )


def _emit(report, output):
    text = dumps(report)
    if output:
        write_atomic(output, text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        seed = args.seed if args.seed is not None else default_seed()
        config = _config_for(args, seed)
        if getattr(args, "grid", 2) < 2:
            raise GameFormatError("--grid", "grid density must be at least 2")
        if getattr(args, "seeds", 1) is not None and getattr(args, "seeds", 1) < 0:
            raise GameFormatError("--seeds", "must be non-negative")
        if getattr(args, "max_iter", 1) < 1:
            raise GameFormatError("--max-iter", "must be at least 1")
        log.info("running %s", config.subcommand)
        result = args.func(args, config)
        status = EXIT_OK
    except AnalysisFailed as exc:
        print(f"qugame: {exc}", file=sys.stderr)
        result, status = exc.report, EXIT_ANALYSIS_FAILED
    except NormalizationFailure as exc:
        print(f"qugame: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS_FAILED
    except (GameFormatError, NonUnitaryInput) as exc:
        print(f"qugame: error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (QugameError, ValueError) as exc:
        print(f"qugame: error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    if args.command == "builtin" and args.name and not args.out_dir:
        # a single builtin is dumped as a bare game file, ready for other subcommands
        _emit(result, args.output)
        return status
    _emit({"command": config.subcommand, "config": config.to_dict(), "result": result}, args.output)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
