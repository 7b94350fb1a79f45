"""Command-line entry point: ``biratkit run`` and ``biratkit check``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional

from .errors import BiratError, MathError, ScriptError
from .groebner import Ideal, format_ideal
from .hilbert import dim_degree
from .polynomial import Polynomial, format_polynomial
from .random_source import RandomSource
from .ratmap import (
    DETERMINISTIC,
    PROBABILISTIC,
    RationalMap,
    approximate_inverse_map,
    degree_of_map,
    image_ideal,
    inverse_map,
    is_birational,
    is_dominant,
    kernel_component,
    preimage_ideal,
    projective_degrees,
)
from .script import Command, SessionScript, parse_script
from .segre import ChowClass, format_chow, segre_class_in_variety

JSON_SCHEMA = 1
# commands whose answer depends on random choices
RANDOMIZED = {"degrees", "degree", "birational", "dominant", "preimage", "segre", "approxinverse"}


@dataclass
class ResultRecord:
    command: Command
    result: object
    mode: str
    seed: int
    seconds: float
    trials: int = 0


@dataclass
class Options:
    deterministic: bool = False
    seed: int = 0
    max_degree: Optional[int] = None
    trials: int = 0

    @property
    def mode(self) -> str:
        return DETERMINISTIC if self.deterministic else PROBABILISTIC


class Session:
    """Executes the commands of a parsed script."""

    def __init__(self, script: SessionScript, options: Options):
        self.script = script
        self.options = options
        self.maps: Dict[str, RationalMap] = {}

    def map(self, name: str) -> RationalMap:
        hit = self.maps.get(name)
        if hit is not None:
            return hit
        spec = self.script.maps[name]
        if spec.forms is None:
            raise MathError(f"map {name} is produced by `inverse {spec.derived_from}`, which has not run yet")
        sc = self.script
        src_ideal = sc.ideals[spec.source_ideal] if spec.source_ideal else Ideal(sc.rings[spec.source], [])
        tgt_ideal = sc.ideals[spec.target_ideal] if spec.target_ideal else Ideal(sc.rings[spec.target], [])
        phi = RationalMap(src_ideal, tgt_ideal, spec.forms)
        self.maps[name] = phi
        return phi

    def run(self) -> List[ResultRecord]:
        return list(self.iter_run())

    def iter_run(self):
        for cmd in self.script.commands:
            yield self.execute(cmd)

    def execute(self, cmd: Command) -> ResultRecord:
        opts = self.options
        start = time.perf_counter()
        if opts.trials and cmd.name in RANDOMIZED and not opts.deterministic:
            counts: Counter = Counter()
            for t in range(opts.trials):
                value = self._evaluate(cmd, RandomSource(opts.seed + t))
                counts[_freeze(value)] += 1
            result = sorted(counts.items(), key=lambda kv: (-kv[1], repr(kv[0])))
            trials = opts.trials
        else:
            result = self._evaluate(cmd, RandomSource(opts.seed))
            trials = 0
        return ResultRecord(cmd, result, opts.mode, opts.seed, time.perf_counter() - start, trials)

    def _evaluate(self, cmd: Command, rng: RandomSource):
        mode = self.options.mode
        bound = self.options.max_degree
        name, args = cmd.name, cmd.args
        sc = self.script
        if name == "degrees":
            return projective_degrees(self.map(args[0]), mode, rng)
        if name == "degree":
            return degree_of_map(self.map(args[0]), mode, rng)
        if name == "birational":
            return is_birational(self.map(args[0]), mode, rng, bound or 4)
        if name == "dominant":
            return is_dominant(self.map(args[0]), mode, rng, bound or 4)
        if name == "image":
            return image_ideal(self.map(args[0]))
        if name == "kernel":
            return kernel_component(self.map(args[0]), int(args[1]))
        if name in ("inverse", "approxinverse"):
            phi = self.map(args[0])
            if name == "inverse":
                psi = inverse_map(phi, bound)
            else:
                psi = approximate_inverse_map(phi, rng, True, bound)
            self.maps[f"{args[0]}_inv"] = psi
            return psi
        if name == "preimage":
            return preimage_ideal(self.map(args[0]), sc.ideals[args[1]], mode, rng)
        if name == "segre":
            B = sc.ideals[args[0]]
            X = sc.ideals[cmd.in_ideal] if cmd.in_ideal else Ideal(B.ring, [])
            return segre_class_in_variety(X, B, mode, rng)
        if name == "dims":
            return list(dim_degree(sc.ideals[args[0]]))
        raise ValueError(f"unknown command {name}")


def _freeze(value):
    if isinstance(value, list):
        return tuple(_freeze(v) for v in value)
    if isinstance(value, RationalMap):
        return ("map",) + tuple(format_polynomial(f) for f in value.forms)
    if isinstance(value, Ideal):
        return format_ideal(value)
    return value


# formatting -----------------------------------------------------------------------

def _text(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, ChowClass):
        return format_chow(value)
    if isinstance(value, Ideal):
        return format_ideal(value)
    if isinstance(value, RationalMap):
        return "[" + ", ".join(format_polynomial(f) for f in value.forms) + "]"
    if isinstance(value, tuple) and value and value[0] == "map":
        return "[" + ", ".join(value[1:]) + "]"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_text(v) for v in value) + "]"
    if isinstance(value, Polynomial):
        return format_polynomial(value)
    return str(value)


def _json_value(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, ChowClass):
        return {"ambient_dim": value.ambient_dim, "coeffs": [str(c) for c in value.coeffs]}
    if isinstance(value, Ideal):
        return [format_polynomial(g) for g in value.gens]
    if isinstance(value, RationalMap):
        return [format_polynomial(f) for f in value.forms]
    if isinstance(value, tuple) and value and value[0] == "map":
        return list(value[1:])
    if isinstance(value, str):
        return value
    if isinstance(value, Polynomial):
        return format_polynomial(value)
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return str(value)


def format_output(record: ResultRecord, as_json: bool = False) -> str:
    cmd = record.command
    if as_json:
        if record.trials:
            result = [{"value": _json_value(v), "count": c} for v, c in record.result]
        else:
            result = _json_value(record.result)
        payload = {
            "schema": JSON_SCHEMA,
            "command": cmd.name,
            "args": cmd.args + (["in", cmd.in_ideal] if cmd.in_ideal else []),
            "mode": record.mode,
            "seed": record.seed,
        }
        if record.trials:
            payload["trials"] = record.trials
        payload["result"] = result
        return json.dumps(payload, separators=(",", ":"))
    if record.trials:
        body = "; ".join(f"{_text(v)} x {c}" for v, c in record.result)
        return f"{cmd.name} ({record.trials} trials): {body}"
    return f"{cmd.name}: {_text(record.result)}"


# entry point ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biratkit", description="Computations with rational maps between projective varieties.")
    sub = parser.add_subparsers(dest="action", required=True)
    run = sub.add_parser("run", help="execute a session script")
    run.add_argument("script")
    run.add_argument("--deterministic", action="store_true", help="certified symbolic computation instead of random sections")
    run.add_argument("--seed", type=int, default=0, help="seed of the random source (default 0)")
    run.add_argument("--max-degree", type=int, default=None, help="degree bound for kernel and inverse searches")
    run.add_argument("--json", action="store_true", help="one JSON object per result")
    run.add_argument("--trials", type=int, default=0, help="repeat randomized commands with seeds seed..seed+n-1")
    run.add_argument("--timings", action="store_true", help="report wall time per command on stderr")
    check = sub.add_parser("check", help="parse a session script without running it")
    check.add_argument("script")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        with open(args.script, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        script = parse_script(text)
    except ScriptError as exc:
        print(f"{args.script}: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.action == "check":
        print(f"ok: {len(script.statements)} statements, {len(script.commands)} commands")
        return 0
    if args.trials < 0:
        print("error: --trials must be non-negative", file=sys.stderr)
        return 2
    opts = Options(args.deterministic, args.seed, args.max_degree, args.trials)
    session = Session(script, opts)
    for cmd in script.commands:
        try:
            record = session.execute(cmd)
        except BiratError as exc:
            print(f"{args.script}:{cmd.line}: {cmd.echo()}: {type(exc).__name__}: {exc}", file=sys.stderr)
            return exc.exit_code
        print(format_output(record, args.json), flush=True)
        if args.timings:
            print(f"{cmd.echo()}: {record.seconds:.3f} s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
