import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

# Add parent directory to sys.path
sys.path.append(str(Path(__file__).parent.parent))

from config.settings import SearchConfig
from constants.certificates import strengthen_with_construction
from constants.predictions import predicted_constants
from constants.search import certify_lower_bound, compute_constant
from engine.zerosum import has_zero_sum
from reporting.emitter import FORMATS, build_report, emit_report
from reporting.models import RunManifest
from reporting.payloads import (
    check_payload, constant_payload, explore_payload, extremal_payload, verdict_payload, weights_payload,
)
from utils.cache_service import CacheService, normalize_payload
from utils.errors import UnknownIdentifierError, UsageError, ZeroSumLabError
from utils.logger import get_execution_logger, get_logger
from utils.validation import parse_mode, parse_modulus, parse_sequence, parse_weight_spec, validate_identifier
from verifier.explore import explore_dsn, explore_transfer
from verifier.extremal import Strategy, audit_family, enumerate_extremal
from verifier.lemmas import verify_lemma
from verifier.registry import get_registry
from verifier.theorems import Verdict, restricted_weights, verify_theorem

logger = get_logger(__name__)
execution_logger = get_execution_logger()

# payload -> exit status
ExitRule = Callable[[Dict[str, Any]], int]


def _search_config(args) -> SearchConfig:
    return SearchConfig.from_engine_config(
        threads=args.threads,
        node_budget=args.node_budget,
        time_budget_seconds=args.time_budget,
        sample_seed=getattr(args, "seed", None),
        exploratory=getattr(args, "exploratory", False),
    )


def _cache(args) -> CacheService:
    if args.no_cache:
        return CacheService("")
    return CacheService(args.cache_dir)


# ------------------------------------------------------------------ commands

def cmd_constant(args) -> Tuple[str, Dict[str, Any], ExitRule]:
    modulus = parse_modulus(args.n)
    spec = parse_weight_spec(args.weights)
    mode = parse_mode(args.mode)
    weightset = spec.build(modulus)
    config = _search_config(args)

    def compute() -> Dict[str, Any]:
        result = compute_constant(weightset, mode, config)
        if not result.exhaustive:
            result = strengthen_with_construction(weightset, result)
        certified = None
        if result.certificate is not None:
            certified = certify_lower_bound(modulus, weightset, result.certificate, mode)
        return constant_payload(result, weightset, predicted_constants(modulus, weightset), certified)

    inputs = {"n": modulus.n, "weights": weightset.label, "mode": mode.value}
    payload = _cache(args).get_or_compute("constant", inputs, compute, lambda p: p["exhaustive"])
    return "constant", payload, lambda p: 0 if p["exhaustive"] else 1


def _lemma_params(args) -> Dict[str, int]:
    params = {"d": args.d, "p_prime": args.p, "p": args.lemma_p, "max_length": args.max_length}
    return {k: v for k, v in params.items() if v is not None}


def cmd_verify(args) -> Tuple[str, Dict[str, Any], ExitRule]:
    identifier = args.theorem
    if not validate_identifier(identifier):
        raise UnknownIdentifierError(f"malformed theorem id {identifier!r}")
    registry = get_registry()
    modulus = parse_modulus(args.n)
    config = _search_config(args)
    strategy = Strategy(args.strategy)

    if registry.is_theorem(identifier):
        entry = registry.get_theorem(identifier)
        inputs = {"id": identifier, "n": modulus.n, "p_prime": args.p, "strategy": strategy.value}

        def compute() -> Dict[str, Any]:
            report = verify_theorem(identifier, modulus, args.p, config, strategy)
            weights = restricted_weights(entry, modulus, args.p).label
            return verdict_payload(report, weights, list(entry.modes))
    elif registry.is_lemma(identifier):
        params = _lemma_params(args)
        inputs = {"id": identifier, "n": modulus.n, "params": params, "samples": args.samples,
                  "seed": config.sample_seed}

        def compute() -> Dict[str, Any]:
            report = verify_lemma(identifier, modulus, params, config, args.samples)
            return verdict_payload(report, None, [])
    else:
        logger.error(f"Unknown identifier {identifier}")
        raise UnknownIdentifierError(f"unknown theorem id '{identifier}'")

    inputs.update({"exploratory": config.exploratory, "max_counterexamples": config.max_counterexamples})
    payload = _cache(args).get_or_compute("verify", inputs, compute,
                                         lambda p: p["verdict"] != Verdict.WITHHELD.value)
    return "verify", payload, lambda p: 0 if p["verdict"] == Verdict.VERIFIED.value else 1


def cmd_extremal(args) -> Tuple[str, Dict[str, Any], ExitRule]:
    modulus = parse_modulus(args.n)
    weightset = parse_weight_spec(args.weights).build(modulus)
    mode = parse_mode(args.mode)
    strategy = Strategy(args.strategy)
    config = _search_config(args)

    def compute() -> Dict[str, Any]:
        result = compute_constant(weightset, mode, config)
        constant, source = result.value, "search"
        if not result.exhaustive:
            prediction = predicted_constants(modulus, weightset)
            if not prediction.covered:
                raise UsageError(f"constant {mode.value}_{weightset.label}({modulus.n}) is unknown "
                                 f"(search budget exhausted)")
            constant, source = prediction.value(mode), "closed form"
        family = enumerate_extremal(modulus, weightset, mode, strategy, constant, config=config)
        audit = audit_family(family) if family.complete else None
        payload = extremal_payload(family, audit, expand=args.expand)
        payload["stats"]["constant_source"] = source
        payload["stats"]["nodes"] += result.nodes
        return payload

    inputs = {"n": modulus.n, "weights": weightset.label, "mode": mode.value, "strategy": strategy.value,
              "expand": args.expand}
    payload = _cache(args).get_or_compute("extremal", inputs, compute, lambda p: p["complete"])

    def exit_rule(p: Dict[str, Any]) -> int:
        return 0 if p["complete"] and p["stats"].get("audit_ok") else 1

    return "extremal", payload, exit_rule


def cmd_check(args) -> Tuple[str, Dict[str, Any], ExitRule]:
    modulus = parse_modulus(args.n)
    weightset = parse_weight_spec(args.weights).build(modulus)
    mode = parse_mode(args.mode)
    sequence = parse_sequence(args.sequence, modulus)
    check = has_zero_sum(sequence, weightset, mode, want_witness=True)
    if check.witness is not None and not check.witness.verify(sequence, weightset.elements):
        logger.error(f"Witness failed re-verification for {sequence.serialize()}")
    payload = normalize_payload(check_payload(sequence, weightset, mode, check))
    return "check", payload, lambda p: 0 if p["zero_sum"] else 1


def cmd_weights(args) -> Tuple[str, Dict[str, Any], ExitRule]:
    modulus = parse_modulus(args.n)
    weightset = parse_weight_spec(args.weights).build(modulus)
    inputs = {"n": modulus.n, "weights": weightset.label}
    payload = _cache(args).get_or_compute("weights", inputs, lambda: weights_payload(weightset))
    return "weights", payload, lambda p: 0


def cmd_explore(args) -> Tuple[str, Dict[str, Any], ExitRule]:
    modulus = parse_modulus(args.n)
    mode = parse_mode(args.mode)
    config = _search_config(args)
    if args.question == "dsn":
        exploration = explore_dsn(modulus, config, mode)
    else:
        exploration = explore_transfer(modulus, mode, config)
    payload = normalize_payload(explore_payload(exploration, "S"))
    # informational
    return "explore", payload, lambda p: 1


COMMANDS = {
    "constant": cmd_constant,
    "verify": cmd_verify,
    "extremal": cmd_extremal,
    "check": cmd_check,
    "weights": cmd_weights,
    "explore": cmd_explore,
}


# ------------------------------------------------------------------ parsing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", required=True, help="Odd modulus n ≥ 3")
    common.add_argument("--format", choices=FORMATS, default="table", help="Output format")
    common.add_argument("--json", dest="format", action="store_const", const="json", help="Same as --format json")
    common.add_argument("--no-cache", action="store_true", help="Ignore the disk cache")
    common.add_argument("--cache-dir", default=None, help="Cache directory (default: $ZSLAB_CACHE)")
    common.add_argument("--threads", type=int, default=None, help="Worker processes (default: $ZSLAB_THREADS)")
    common.add_argument("--node-budget", type=int, default=None)
    common.add_argument("--time-budget", type=float, default=None, help="Seconds")

    parser = argparse.ArgumentParser(prog="zslab", description="Weighted zero-sum constants and extremal sequences")
    subparsers = parser.add_subparsers(dest="command")

    constant_parser = subparsers.add_parser("constant", parents=[common], help="Compute D or C for a weight set")
    constant_parser.add_argument("--weights", required=True, help="U | Q | S | L:<p> | custom:<r1,r2,...>")
    constant_parser.add_argument("--mode", default="D", help="D (subsequence) or C (consecutive)")

    verify_parser = subparsers.add_parser("verify", parents=[common], help="Verify a theorem or lemma instance")
    verify_parser.add_argument("--theorem", "--lemma", dest="theorem", required=True, help="Registry identifier")
    verify_parser.add_argument("--p", type=int, default=None, help="Prime divisor p' of n")
    verify_parser.add_argument("--lemma-p", type=int, default=None, help="Second prime divisor p for s2l / s2l3")
    verify_parser.add_argument("--d", type=int, default=None, help="Divisor d for u2s / lifts'")
    verify_parser.add_argument("--max-length", type=int, default=None, help="Longest sequence in lemma scans")
    verify_parser.add_argument("--strategy", choices=[s.value for s in Strategy], default=Strategy.CANONICAL.value)
    verify_parser.add_argument("--samples", type=int, default=None, help="Sample this many lemma instances")
    verify_parser.add_argument("--seed", type=int, default=None, help="Sampling seed (default: $ZSLAB_SEED)")
    verify_parser.add_argument("--exploratory", action="store_true", help="Run outside the stated hypotheses")

    extremal_parser = subparsers.add_parser("extremal", parents=[common], help="Enumerate extremal sequences")
    extremal_parser.add_argument("--weights", required=True)
    extremal_parser.add_argument("--mode", default="D")
    extremal_parser.add_argument("--strategy", choices=[s.value for s in Strategy], default=Strategy.CANONICAL.value)
    extremal_parser.add_argument("--expand", action="store_true", help="List every sequence, not one per class")

    check_parser = subparsers.add_parser("check", parents=[common], help="Test one sequence for a weighted zero-sum")
    check_parser.add_argument("--weights", required=True)
    check_parser.add_argument("--mode", default="D")
    check_parser.add_argument("--sequence", required=True, help="Comma-separated residues")

    weights_parser = subparsers.add_parser("weights", parents=[common], help="Dump a weight set")
    weights_parser.add_argument("--weights", required=True)

    explore_parser = subparsers.add_parser("explore", parents=[common], help="Informational runs outside proven ranges")
    explore_parser.add_argument("question", choices=["dsn", "transfer"])
    explore_parser.add_argument("--mode", default="D")

    return parser


def _manifest(argv: List[str], payload: Dict[str, Any], elapsed_ms: float) -> RunManifest:
    stats = payload.get("stats", {})
    exhaustive = payload.get("exhaustive", payload.get("complete", True))
    return RunManifest(
        command=" ".join(["zslab", *argv]),
        modulus=payload["n"],
        weights=payload.get("weights"),
        mode=payload.get("mode"),
        timings={"wall_ms": round(elapsed_ms, 3)},
        exhaustive=bool(exhaustive),
        nodes=stats.get("nodes") or 0,
        seed=stats.get("seed"),
    )


def _emit_error(message: str, fmt: str) -> None:
    if fmt in ("json", "jsonl"):
        print(json.dumps({"error": message}))
    else:
        print(f"error: {message}", file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2

    started = time.perf_counter()
    try:
        kind, payload, exit_rule = COMMANDS[args.command](args)
        elapsed = (time.perf_counter() - started) * 1000
        report = build_report(kind, payload, _manifest(argv, payload, elapsed))
        print(emit_report(report, args.format))
        status = exit_rule(payload)
    except ZeroSumLabError as e:
        logger.error(f"{args.command} failed: {e}")
        _emit_error(str(e), args.format)
        return 2

    execution_logger.info("cli_command", command=args.command, exit_status=status,
                          wall_ms=round((time.perf_counter() - started) * 1000, 3))
    return status


if __name__ == "__main__":
    sys.exit(main())
