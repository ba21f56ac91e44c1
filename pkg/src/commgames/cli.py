"""Command-line front end.

Subcommands: check, synth, feasibility, sweep (game-space | locus |
noise), montecarlo, nsbox, worstcase, strict-audit.  Exit codes: 0 for a
win / feasible / confirmed result, 2 for an honest negative (losing
check, infeasible game), 1 for errors (malformed input, unsupported
resource).  All JSON output is canonical (sorted keys, fixed separators,
no timestamps), so identical inputs give byte-identical outputs.

Seeds resolve in order: --seed flag, COMMGAMES_SEED environment
variable, then the library default of the operation.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys

import numpy as np

from .classical import (
    CorrelatedStrategy,
    DeterministicStrategy,
    MixedStrategy,
    mixed_feasibility_report,
    strict_sr_protocol,
    synth_sr_strategy,
    visit_matrix_correlated,
    visit_matrix_mixed,
)
from .games import GameSpec, VisitMatrix, check_game, uniform_game
from .hull import hull_membership_oracle
from .nsbox import NsBox, cup_game_success, classical_cup_bound, pr_box
from .polygon import (
    PolygonStrategy,
    strict_polygon_infeasibility,
    synth_even_gon,
    synth_square_h3,
    visit_matrix_polygon,
)
from .quantum import (
    QubitStrategy,
    h3_locus_points,
    montecarlo_classical_floor,
    noise_advantage_region,
    synth_h3_general,
    synth_h4_symmetric,
    synth_sic_strict,
    synth_uniform_odd,
    visit_matrix_qubit,
)
from .strict import strict_1bitsr_infeasibility
from .worstcase import (
    classical_worstcase_bound,
    classical_worstcase_strategy,
    quantum_worstcase_strategy,
    sr_worstcase_strategy,
    worst_case_success,
)

RESOURCES = ("cbit", "cbit-sr", "qubit", "polygon:<n>")


class CapabilityError(Exception):
    """Requested (resource, game) combination has no synthesizer."""

    def __init__(self, message: str):
        supported = (
            "supported synth combinations: "
            "cbit + any non-strict game (when feasible); "
            "cbit-sr + any game; "
            "qubit + 3-games, uniform odd games, strict 3/4-games, "
            "4-games with equal tail marginals; "
            "polygon:4 + 3-games; polygon:2n + uniform n-games; "
            "polygon:6 + the strict 3-game"
        )
        super().__init__(f"{message} ({supported})")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as err:
        raise SystemExit(f"error: cannot read {path}: {err.strerror}")


def _parse_json(path: str) -> dict:
    text = _read_file(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise SystemExit(
            f"error: malformed JSON in {path}: line {err.lineno} column {err.colno}:"
            f" {err.msg}"
        )


def _load_game(path: str) -> GameSpec:
    obj = _parse_json(path)
    try:
        return GameSpec.from_json(_dump(obj))
    except (KeyError, TypeError, ValueError) as err:
        raise SystemExit(f"error: invalid game in {path}: {err}")


def _load_strategy(path: str):
    obj = _parse_json(path)
    text = _dump(obj)
    try:
        if "branches" in obj:
            return CorrelatedStrategy.from_json(text)
        if "alpha" in obj:
            return MixedStrategy.from_json(text)
        if "polygon_n" in obj:
            return PolygonStrategy.from_json(text)
        if "encodings" in obj:
            return QubitStrategy.from_json(text)
        if "encode" in obj and "decode" in obj:
            return DeterministicStrategy.from_json(text)
    except (KeyError, TypeError, ValueError) as err:
        raise SystemExit(f"error: invalid strategy in {path}: {err}")
    raise SystemExit(
        f"error: unrecognized strategy in {path}: expected keys for a mixed"
        " (alpha/r/q), correlated (branches), deterministic (encode/decode),"
        " qubit (encodings/effects) or polygon (polygon_n/...) strategy"
    )


def _strategy_matrix(strategy) -> VisitMatrix:
    if isinstance(strategy, DeterministicStrategy):
        return visit_matrix_mixed(strategy.to_mixed())
    if isinstance(strategy, MixedStrategy):
        return visit_matrix_mixed(strategy)
    if isinstance(strategy, CorrelatedStrategy):
        return visit_matrix_correlated(strategy)
    if isinstance(strategy, QubitStrategy):
        return visit_matrix_qubit(strategy)
    if isinstance(strategy, PolygonStrategy):
        return visit_matrix_polygon(strategy)
    raise SystemExit(f"error: no visit matrix for {type(strategy).__name__}")


def _resolve_seed(flag_value, default: int) -> int:
    if flag_value is not None:
        return int(flag_value)
    env = os.environ.get("COMMGAMES_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(f"error: COMMGAMES_SEED={env!r} is not an integer")
    return default


def _write_out(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text + ("" if text.endswith("\n") else "\n"))
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------- check


def _cmd_check(args) -> int:
    spec = _load_game(args.game)
    strategy = _load_strategy(args.strategy)
    try:
        vm = _strategy_matrix(strategy)
        verdict = check_game(spec, vm, tol=args.tol)
    except ValueError as err:
        raise SystemExit(f"error: {err}")
    if args.matrix:
        _write_out(vm.to_json(), args.matrix)
    _write_out(
        _dump(
            {
                "max_violation": verdict.max_violation,
                "tol": args.tol,
                "wins": verdict.wins,
                "witness": verdict.witness,
            }
        ),
        args.out,
    )
    return 0 if verdict.wins else 2


# ---------------------------------------------------------------- synth


def _is_uniform(gamma: np.ndarray) -> bool:
    return bool(np.abs(gamma - gamma.mean()).max() < 1e-12)


def _synth_cbit(spec: GameSpec):
    if spec.strict:
        if spec.n == 2:
            return MixedStrategy(alpha=(1.0, 0.0), r=(0.0, 1.0), q=(1.0, 0.0))
        return None  # proven infeasible: two coins cannot fill n>=3 columns
    report = mixed_feasibility_report(spec)
    if report.certificate is None:
        return None
    from .classical import mixed_strategy_from_certificate

    return mixed_strategy_from_certificate(report.certificate, spec)


def _synth_qubit(spec: GameSpec):
    gamma = spec.gamma_array()
    if spec.strict:
        if spec.n == 3:
            return synth_uniform_odd(3)
        if spec.n == 4:
            return synth_sic_strict()
        raise CapabilityError(f"no qubit synthesizer for the strict {spec.n}-game")
    if spec.n == 3:
        return synth_h3_general(spec)
    if spec.n % 2 == 1 and _is_uniform(gamma):
        return synth_uniform_odd(spec.n)
    if spec.n == 4 and np.abs(gamma[1:] - gamma[1:].mean()).max() < 1e-12:
        return synth_h4_symmetric(float(gamma[0]))
    raise CapabilityError(f"no qubit synthesizer for this {spec.n}-game")


def _synth_polygon(spec: GameSpec, sides: int):
    gamma = spec.gamma_array()
    if spec.strict:
        if sides == 6 and spec.n == 3:
            return synth_even_gon(3)
        raise CapabilityError(
            f"no polygon:{sides} synthesizer for the strict {spec.n}-game"
        )
    if sides == 4 and spec.n == 3:
        return synth_square_h3(spec)
    if sides == 2 * spec.n and _is_uniform(gamma):
        return synth_even_gon(spec.n)
    raise CapabilityError(f"no polygon:{sides} synthesizer for this {spec.n}-game")


def _cmd_synth(args) -> int:
    spec = _load_game(args.game)
    resource = args.resource
    try:
        if resource == "cbit":
            strategy = _synth_cbit(spec)
            if strategy is None:
                _write_out(
                    _dump({"feasible": False, "resource": "cbit"}), args.out
                )
                return 2
        elif resource == "cbit-sr":
            strategy = (
                strict_sr_protocol(spec.n) if spec.strict else synth_sr_strategy(spec)
            )
        elif resource == "qubit":
            strategy = _synth_qubit(spec)
        elif resource.startswith("polygon:"):
            try:
                sides = int(resource.split(":", 1)[1])
            except ValueError:
                raise SystemExit(f"error: bad polygon resource {resource!r}")
            strategy = _synth_polygon(spec, sides)
        else:
            raise SystemExit(
                f"error: unknown resource {resource!r}; choose from"
                f" {', '.join(RESOURCES)}"
            )
    except CapabilityError as err:
        raise SystemExit(f"error: {err}")
    except ValueError as err:
        raise SystemExit(f"error: {err}")
    _write_out(strategy.to_json(), args.out)
    return 0


# ---------------------------------------------------------------- feasibility


def _cmd_feasibility(args) -> int:
    spec = _load_game(args.game)
    if args.resource == "cbit":
        try:
            report = mixed_feasibility_report(spec, tol=args.tol)
        except ValueError as err:
            raise SystemExit(f"error: {err}")
        obj = {
            "boundary_indeterminate": report.boundary_indeterminate,
            "certificate": None
            if report.certificate is None
            else json.loads(report.certificate.to_json()),
            "feasible": report.feasible,
            "partitions_checked": report.partitions_checked,
            "resource": "cbit",
        }
        _write_out(_dump(obj), args.out)
        return 0 if report.feasible else 2
    if args.resource == "unbounded-sr":
        verdict = hull_membership_oracle(spec, exact=args.exact)
        obj = {
            "exact": verdict.exact,
            "feasible": verdict.feasible_with_unbounded_sr,
            "resource": "unbounded-sr",
            "witness": verdict.to_json_obj()["witness"],
        }
        _write_out(_dump(obj), args.out)
        return 0 if verdict.feasible_with_unbounded_sr else 2
    raise SystemExit(
        f"error: unknown feasibility resource {args.resource!r};"
        " choose cbit or unbounded-sr"
    )


# ---------------------------------------------------------------- sweeps


def _compositions(total: int, parts: int):
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        counts = []
        for c in cuts:
            counts.append(c - prev - 1)
            prev = c
        counts.append(total + parts - 2 - prev)
        yield counts


def _cmd_sweep_game_space(args) -> int:
    n, grid = args.n, args.grid
    lines = [",".join([f"gamma{i + 1}" for i in range(n)] + ["label"])]
    cap = 1.0 - 1.0 / n
    for counts in _compositions(grid, n):
        gamma = [c / grid for c in counts]
        if max(gamma) > cap + 1e-12:
            label = "unphysical"
        else:
            report = mixed_feasibility_report(GameSpec(gamma=tuple(gamma)))
            label = "mixed-winnable" if report.feasible else "sr-winnable"
        lines.append(",".join([repr(g) for g in gamma] + [label]))
    _write_out("\n".join(lines), args.out)
    return 0


def _cmd_sweep_locus(args) -> int:
    try:
        gammas = [float(v) for v in args.gamma1.split(",")]
    except ValueError:
        raise SystemExit(f"error: bad --gamma1 list {args.gamma1!r}")
    lines = ["gamma1,theta2,theta3,gamma2,gamma3,mid_x,mid_z,residual"]
    for g1 in gammas:
        if not 0.0 < g1 < 2.0 / 3.0:
            raise SystemExit(f"error: gamma1={g1} outside the open interval (0, 2/3)")
        for row in h3_locus_points(g1, num=args.num):
            lines.append(
                ",".join(
                    repr(v)
                    for v in (
                        g1,
                        row["theta2"],
                        row["theta3"],
                        row["gamma2"],
                        row["gamma3"],
                        row["mid_x"],
                        row["mid_z"],
                        row["residual"],
                    )
                )
            )
    _write_out("\n".join(lines), args.out)
    return 0


def _cmd_sweep_noise(args) -> int:
    lines = ["eps_e,eps_d,boundary_value,advantage"]
    for e, d, b, adv in noise_advantage_region(num=args.num):
        lines.append(f"{e!r},{d!r},{b!r},{'true' if adv else 'false'}")
    _write_out("\n".join(lines), args.out)
    return 0


# ---------------------------------------------------------------- montecarlo


def _cmd_montecarlo(args) -> int:
    seed = _resolve_seed(args.seed, 0)
    result = montecarlo_classical_floor(samples=args.samples, seed=seed)
    obj = {
        "min_error": result.min_error,
        "raw_sample_min": result.raw_sample_min,
        "refined_min": result.refined_min,
        "samples": result.samples,
        "seed": result.seed,
        "strategy": json.loads(result.strategy.to_json()),
    }
    _write_out(_dump(obj), args.out)
    return 0


# ---------------------------------------------------------------- nsbox


def _cmd_nsbox(args) -> int:
    if args.pr:
        box = pr_box()
    elif args.box:
        obj = _parse_json(args.box)
        try:
            box = NsBox.from_json(_dump(obj))
        except (KeyError, TypeError, ValueError) as err:
            raise SystemExit(f"error: invalid box in {args.box}: {err}")
    else:
        raise SystemExit("error: nsbox needs --box FILE or --pr")
    cup = cup_game_success(box)
    out = {
        "chsh": box.chsh(),
        "classical_cup_bound": classical_cup_bound(),
        "correlator_chsh": box.correlator_chsh(),
        "cup": {
            "average": cup.average,
            "p12": cup.p12,
            "p13": cup.p13,
            "p14": cup.p14,
            "p23": cup.p23,
            "p24": cup.p24,
            "p34": cup.p34,
        },
    }
    _write_out(_dump(out), args.out)
    return 0


# ---------------------------------------------------------------- worstcase


def _cmd_worstcase(args) -> int:
    if args.resource == "cbit":
        seed = _resolve_seed(args.seed, 5)
        bound = classical_worstcase_bound(starts=args.starts, seed=seed)
        strategy = classical_worstcase_strategy()
        obj = {
            "bound": bound.bound,
            "numeric_max": bound.numeric_max,
            "resource": "cbit",
            "starts": bound.starts,
            "seed": bound.seed,
            "strategy": json.loads(strategy.to_json()),
            "worst_case_success": worst_case_success(strategy),
        }
    elif args.resource == "cbit-sr":
        strategy = sr_worstcase_strategy()
        obj = {
            "resource": "cbit-sr",
            "strategy": json.loads(strategy.to_json()),
            "worst_case_success": worst_case_success(strategy),
        }
    elif args.resource == "qubit":
        strategy = quantum_worstcase_strategy()
        obj = {
            "resource": "qubit",
            "strategy": json.loads(strategy.to_json()),
            "worst_case_success": worst_case_success(strategy),
        }
    else:
        raise SystemExit(
            f"error: unknown worstcase resource {args.resource!r};"
            " choose cbit, cbit-sr or qubit"
        )
    _write_out(_dump(obj), args.out)
    return 0


# ---------------------------------------------------------------- strict-audit


def _cmd_strict_audit(args) -> int:
    seed = _resolve_seed(args.seed, 2024)
    rows = []

    u3 = uniform_game(3)
    cbit_u3 = mixed_feasibility_report(u3)
    sr_u3 = check_game(u3, visit_matrix_correlated(synth_sr_strategy(u3)), tol=1e-9)
    rows.append(("cbit < cbit+sr", "uniform 3-game",
                 f"mixed infeasible ({cbit_u3.partitions_checked} partitions);"
                 f" sr wins (dev {sr_u3.max_violation:.1e})",
                 (not cbit_u3.feasible) and sr_u3.wins))

    q_u3 = check_game(u3, visit_matrix_qubit(synth_uniform_odd(3)), tol=1e-12)
    rows.append(("cbit < qubit", "uniform 3-game",
                 f"mixed infeasible; qubit ring wins (dev {q_u3.max_violation:.1e})",
                 (not cbit_u3.feasible) and q_u3.wins))

    p_u3 = check_game(u3, visit_matrix_polygon(synth_even_gon(3)), tol=1e-12)
    rows.append(("cbit < polygon", "uniform 3-game",
                 f"mixed infeasible; hexagon wins (dev {p_u3.max_violation:.1e})",
                 (not cbit_u3.feasible) and p_u3.wins))

    from .games import strict_game

    s4 = strict_game(4)
    one_bit = strict_1bitsr_infeasibility(
        starts=args.starts, seed=seed, run_symbolic=not args.skip_symbolic
    )
    sic = check_game(s4, visit_matrix_qubit(synth_sic_strict()), tol=1e-12)
    sym = ""
    ok_sym = True
    if one_bit.symbolic is not None:
        ok_sym = one_bit.symbolic.all_rejected
        sym = f"; symbolic audit {'rejects all' if ok_sym else 'INCOMPLETE'}"
    rows.append(("cbit+1bit-sr < qubit", "strict 4-game",
                 f"1-bit residual {one_bit.min_residual:.3f}{sym};"
                 f" tetrahedron wins (dev {sic.max_violation:.1e})",
                 one_bit.infeasible and ok_sym and sic.wins))

    proto = strict_sr_protocol(4)
    proto_v = check_game(s4, visit_matrix_correlated(proto), tol=1e-12)
    rows.append(("cbit+1bit-sr < cbit+log2(3)-sr", "strict 4-game",
                 f"1-bit residual {one_bit.min_residual:.3f};"
                 f" {proto.sr_bits:.3f}-bit protocol wins (dev {proto_v.max_violation:.1e})",
                 one_bit.infeasible and proto_v.wins))

    poly = strict_polygon_infeasibility(
        args.polygon_n, starts=args.polygon_starts, seed=_resolve_seed(args.seed, 7)
    )
    rows.append(("polygon < qubit", "strict 4-game",
                 f"{args.polygon_n}-gon residual {poly.min_residual:.3f};"
                 f" tetrahedron wins (dev {sic.max_violation:.1e})",
                 poly.infeasible and sic.wins))

    widths = [max(len(r[i]) for r in rows + [("relation", "game", "evidence", True)])
              for i in range(3)]
    lines = [
        f"{'relation':<{widths[0]}}  {'game':<{widths[1]}}  "
        f"{'evidence':<{widths[2]}}  status"
    ]
    ok = True
    for rel, game, evidence, passed in rows:
        ok = ok and passed
        lines.append(
            f"{rel:<{widths[0]}}  {game:<{widths[1]}}  {evidence:<{widths[2]}}  "
            + ("confirmed" if passed else "FAILED")
        )
    _write_out("\n".join(lines), args.out)
    return 0 if ok else 2


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commgames",
        description="Solvers and checkers for one-bit restaurant games over"
        " classical, qubit, and polygon-theory resources.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify a strategy against a game")
    p.add_argument("--game", required=True, help="game JSON file")
    p.add_argument("--strategy", required=True, help="strategy JSON file")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--matrix", help="also write the visit matrix JSON here")
    p.add_argument("-o", "--out", help="write the verdict JSON here")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("synth", help="synthesize a winning strategy")
    p.add_argument("--game", required=True)
    p.add_argument("--resource", required=True,
                   help="cbit, cbit-sr, qubit, or polygon:<sides>")
    p.add_argument("-o", "--out")
    p.set_defaults(fn=_cmd_synth)

    p = sub.add_parser("feasibility", help="decide classical feasibility")
    p.add_argument("--game", required=True)
    p.add_argument("--resource", default="cbit", help="cbit or unbounded-sr")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--exact", action="store_true", default=None,
                   help="force exact rational arithmetic (unbounded-sr)")
    p.add_argument("-o", "--out")
    p.set_defaults(fn=_cmd_feasibility)

    p = sub.add_parser("sweep", help="CSV sweeps over games or noise")
    sweep_sub = p.add_subparsers(dest="sweep_kind", required=True)

    q = sweep_sub.add_parser("game-space", help="label a simplex grid of games")
    q.add_argument("--n", type=int, default=3)
    q.add_argument("--grid", type=int, default=40)
    q.add_argument("-o", "--out")
    q.set_defaults(fn=_cmd_sweep_game_space)

    q = sweep_sub.add_parser("locus", help="two-angle family along fixed gamma1")
    q.add_argument("--gamma1", required=True, help="comma-separated values")
    q.add_argument("--num", type=int, default=65)
    q.add_argument("-o", "--out")
    q.set_defaults(fn=_cmd_sweep_locus)

    q = sweep_sub.add_parser("noise", help="depolarizing advantage region")
    q.add_argument("--num", type=int, default=101)
    q.add_argument("-o", "--out")
    q.set_defaults(fn=_cmd_sweep_noise)

    p = sub.add_parser("montecarlo", help="sampled classical floor of the error"
                                          " functional")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--out")
    p.set_defaults(fn=_cmd_montecarlo)

    p = sub.add_parser("nsbox", help="CHSH and cup-game values of a box")
    p.add_argument("--box", help="box JSON file")
    p.add_argument("--pr", action="store_true", help="use the extremal box")
    p.add_argument("-o", "--out")
    p.set_defaults(fn=_cmd_nsbox)

    p = sub.add_parser("worstcase", help="worst-case guessing game values")
    p.add_argument("--resource", required=True, help="cbit, cbit-sr, or qubit")
    p.add_argument("--starts", type=int, default=20_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--out")
    p.set_defaults(fn=_cmd_worstcase)

    p = sub.add_parser("strict-audit", help="order-of-merit table of resource"
                                            " separations, backed by runs")
    p.add_argument("--starts", type=int, default=20_000,
                   help="numeric starts for the 1-bit no-go")
    p.add_argument("--polygon-n", type=int, default=8)
    p.add_argument("--polygon-starts", type=int, default=40)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--skip-symbolic", action="store_true")
    p.add_argument("-o", "--out")
    p.set_defaults(fn=_cmd_strict_audit)

    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; keep 2 reserved for honest
        # negative verdicts and report bad usage as a plain error instead.
        return 0 if exc.code in (0, None) else 1
    try:
        return args.fn(args)
    except SystemExit:
        raise
    except BrokenPipeError:
        return 1


if __name__ == "__main__":
    sys.exit(main())
