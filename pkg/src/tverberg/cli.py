"""Command-line front end: generation, checking, enumeration, and reports.

This is the only I/O boundary of the package.  Every command reads JSON files
in the formats of sequence_from_json / partition_from_json, prints either an
aligned-text report or (with --json) a machine-readable document, and exits
with 0 on success or PASS, 1 on a FAIL verdict, and 2 on any input problem.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact import scalar, scalar_str
from .fillings import (
    InvalidFillingError,
    dominance_report,
    enumerate_valid_fillings,
    filling_to_json,
    find_dominant_filling,
    monomial_value,
    rainbow_filling,
    sign_flip_witness,
)
from .partitions import (
    CertificateMismatchError,
    DegeneratePointsError,
    Partition,
    decide_tverberg,
    enumerate_rainbow,
    enumerate_tverberg,
    is_rainbow,
    is_strong_general_position,
    partition_from_json,
    partition_to_json,
    tverberg_number,
)
from .sequences import (
    NotDominantError,
    PointSequence,
    default_threshold,
    dominance_profile,
    gen_power_sequence,
    gen_super_dominant,
    ordered_lift,
    sequence_from_json,
    sequence_to_json,
    uniform_exponents,
)

PASS, FAIL, INPUT_ERROR = 0, 1, 2


class InputError(ValueError):
    """A bad flag, file, or unmet precondition; maps to exit status 2."""


@dataclass
class RunConfig:
    """Everything one invocation needs, validated up front."""

    command: str
    seq_path: Optional[str] = None
    partition_path: Optional[str] = None
    out_path: Optional[str] = None
    d: Optional[int] = None
    r: Optional[int] = None
    q: Optional[Fraction] = None
    base: Fraction = Fraction(2)
    schedule: str = "chain"
    seed: int = 0
    oracle: bool = False
    as_json: bool = False

    def __post_init__(self):
        if self.d is not None and self.d < 1:
            raise InputError("--d must be at least 1")
        if self.r is not None and self.r < 2:
            raise InputError("--r must be at least 2")
        if self.q is not None and self.q <= 1:
            raise InputError("--q must exceed 1")
        if self.base <= 1:
            raise InputError("--base must exceed 1")
        if self.seed < 0:
            raise InputError("--seed must be non-negative")


# ---------------------------------------------------------------------------
# input and output plumbing


def _load_payload(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _load_sequence(path: str) -> PointSequence:
    payload = _load_payload(path)
    try:
        return sequence_from_json(payload)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"bad sequence file {path}: {exc}") from exc


def _load_partition(path: str) -> Partition:
    payload = _load_payload(path)
    try:
        return partition_from_json(payload)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"bad partition file {path}: {exc}") from exc


def _emit(config: RunConfig, lines: Sequence[str], payload: dict) -> None:
    text = json.dumps(payload, indent=2) if config.as_json else "\n".join(lines)
    if config.out_path:
        with open(config.out_path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _format_partition(partition: Partition) -> str:
    return " | ".join("{" + ",".join(str(e) for e in cls) + "}" for cls in partition.classes)


def _grid_lines(filling) -> list:
    cells = [
        [f"z{k}" if cell is None else str(cell) for cell in row]
        for k, row in enumerate(filling.grid)
    ]
    width = max(len(c) for row in cells for c in row)
    width = max(width, len(f"A{filling.r}"))
    header = "        " + "  ".join(f"A{m}".rjust(width) for m in range(1, filling.r + 1))
    lines = [header]
    for k, row in enumerate(cells):
        lines.append(f"row {k}".ljust(8) + "  ".join(c.rjust(width) for c in row))
    return lines


def _derive_r(points: PointSequence, declared: Optional[int]) -> int:
    n, d = points.length, points.dim
    if (n - 1) % (d + 1) != 0:
        raise InputError(f"a {d}-dimensional sequence of length {n} fits no class count")
    r = (n - 1) // (d + 1) + 1
    if declared is not None and declared != r:
        raise InputError(f"--r {declared} contradicts the sequence shape (expects r = {r})")
    return r


def _resolve_instance(config: RunConfig, partition: Optional[Partition] = None):
    """Points plus (d, r, q) from a file or from the stock constructor."""
    if config.seq_path:
        points = _load_sequence(config.seq_path)
        d = points.dim
        r = _derive_r(points, config.r)
        if config.d is not None and config.d != d:
            raise InputError(f"--d {config.d} contradicts the sequence file (d = {d})")
        q = config.q if config.q is not None else default_threshold(d, r)
        source = f"file {config.seq_path}"
    else:
        if partition is not None:
            r = partition.r
            if (partition.n - 1) % (r - 1) != 0:
                raise InputError("partition size fits no dimension")
            d = (partition.n - 1) // (r - 1) - 1
            if config.d is not None and config.d != d:
                raise InputError(f"--d {config.d} contradicts the partition (d = {d})")
            if config.r is not None and config.r != r:
                raise InputError(f"--r {config.r} contradicts the partition (r = {r})")
        else:
            if config.d is None or config.r is None:
                raise InputError("need --seq FILE, or --d and --r to construct an instance")
            d, r = config.d, config.r
        built = gen_super_dominant(d, r, config.q, config.base)
        points, q = built.points, built.q
        source = f"constructed super-dominant (base {config.base})"
    if partition is not None and partition.n != points.length:
        raise InputError(
            f"partition covers {partition.n} elements but the sequence has {points.length}"
        )
    return points, d, r, q, source


def _profile_for(points: PointSequence, q: Fraction):
    try:
        ordered, coords = ordered_lift(points, q)
        return dominance_profile(ordered, q), coords
    except NotDominantError as exc:
        raise InputError(f"sequence not dominant: {exc}") from exc


# ---------------------------------------------------------------------------
# commands


def cmd_gen(config: RunConfig) -> int:
    if config.d is None or config.r is None:
        raise InputError("gen needs --d and --r")
    n = tverberg_number(config.r, config.d)
    if config.schedule == "chain":
        points = gen_super_dominant(config.d, config.r, config.q, config.base).points
    elif config.schedule == "uniform":
        points = gen_power_sequence(config.base, uniform_exponents(config.d, n))
    else:
        raise InputError(f"unknown schedule {config.schedule!r}")
    payload = sequence_to_json(points)
    _emit(config, [json.dumps(payload, indent=2)], payload)
    return PASS


def cmd_check(config: RunConfig) -> int:
    if not config.seq_path or not config.partition_path:
        raise InputError("check needs --seq and --partition")
    points = _load_sequence(config.seq_path)
    partition = _load_partition(config.partition_path)
    if partition.n != points.length:
        raise InputError(
            f"partition covers {partition.n} elements but the sequence has {points.length}"
        )
    verdict = decide_tverberg(points, partition)
    lines = []
    if verdict.is_tverberg:
        lines.append("verdict: TVERBERG")
        lines.append("z = (" + ", ".join(scalar_str(x) for x in verdict.z) + ")")
        lines.append("alphas: " + ", ".join(scalar_str(a) for a in verdict.alphas))
    else:
        lines.append(f"verdict: NOT TVERBERG ({verdict.reason})")
    if verdict.base_sign is not None:
        lines.append(f"base determinant sign: {verdict.base_sign:+d}")
        lines.append(
            "Cramer signs: " + ", ".join(f"{s:+d}" for s in verdict.det_signs)
        )
    payload = {
        "is_tverberg": verdict.is_tverberg,
        "reason": verdict.reason,
        "z": [scalar_str(x) for x in verdict.z] if verdict.z is not None else None,
        "alphas": [scalar_str(a) for a in verdict.alphas] if verdict.alphas is not None else None,
        "base_sign": verdict.base_sign,
        "det_signs": list(verdict.det_signs) if verdict.det_signs is not None else None,
    }
    _emit(config, lines, payload)
    return PASS if verdict.is_tverberg else FAIL


def cmd_enumerate(config: RunConfig) -> int:
    if not config.seq_path:
        raise InputError("enumerate needs --seq")
    points = _load_sequence(config.seq_path)
    r = _derive_r(points, config.r)
    found = enumerate_tverberg(points)
    lines = [f"n = {points.length}, d = {points.dim}, r = {r}"]
    lines.append(f"tverberg partitions: {len(found)}")
    lines.extend("  " + _format_partition(p) for p in found)
    payload = {
        "n": points.length,
        "d": points.dim,
        "r": r,
        "count": len(found),
        "partitions": [partition_to_json(p) for p in found],
    }
    _emit(config, lines, payload)
    return PASS


def cmd_rainbow(config: RunConfig) -> int:
    if config.d is None or config.r is None:
        raise InputError("rainbow needs --d and --r")
    found = enumerate_rainbow(config.d, config.r)
    lines = [f"rainbow partitions for d = {config.d}, r = {config.r}: {len(found)}"]
    lines.extend("  " + _format_partition(p) for p in found)
    payload = {
        "d": config.d,
        "r": config.r,
        "count": len(found),
        "partitions": [partition_to_json(p) for p in found],
    }
    _emit(config, lines, payload)
    return PASS


def cmd_verify_universality(config: RunConfig) -> int:
    points, d, r, _, source = _resolve_instance(config)
    tverberg_set = enumerate_tverberg(points)
    rainbow_set = enumerate_rainbow(d, r)
    only_tverberg = [p for p in tverberg_set if p not in rainbow_set]
    only_rainbow = [p for p in rainbow_set if p not in tverberg_set]
    equal = not only_tverberg and not only_rainbow
    lines = [
        f"instance: d = {d}, r = {r}, n = {points.length} ({source})",
        f"tverberg partitions: {len(tverberg_set)}",
        f"rainbow partitions:  {len(rainbow_set)}",
    ]
    if equal:
        lines.append("PASS: the Tverberg partitions are exactly the rainbow partitions")
    else:
        lines.append("FAIL: the two sets differ")
        lines.extend("  tverberg only: " + _format_partition(p) for p in only_tverberg)
        lines.extend("  rainbow only:  " + _format_partition(p) for p in only_rainbow)
    payload = {
        "d": d,
        "r": r,
        "n": points.length,
        "source": source,
        "pass": equal,
        "tverberg": [partition_to_json(p) for p in tverberg_set],
        "rainbow": [partition_to_json(p) for p in rainbow_set],
        "tverberg_only": [partition_to_json(p) for p in only_tverberg],
        "rainbow_only": [partition_to_json(p) for p in only_rainbow],
    }
    _emit(config, lines, payload)
    return PASS if equal else FAIL


def cmd_dominant(config: RunConfig) -> int:
    if not config.partition_path:
        raise InputError("dominant needs --partition")
    partition = _load_partition(config.partition_path)
    points, d, r, q, source = _resolve_instance(config, partition)
    profile, coords = _profile_for(points, q)
    lines = [f"instance: d = {d}, r = {r}, q = {scalar_str(q)} ({source})"]
    records = []
    agree = True
    for ell in range(1, partition.n + 1):
        filling = find_dominant_filling(partition, ell, profile)
        mono = monomial_value(filling, points, coords)
        lines.append("")
        lines.append(f"ell = {ell}  dominant monomial sign {mono.sign:+d}")
        lines.extend(_grid_lines(filling))
        record = {
            "ell": ell,
            "filling": filling_to_json(filling),
            "sign": mono.sign,
        }
        if config.oracle:
            report = dominance_report(points, partition, ell, q)
            best = max(
                (monomial_value(f, points, coords) for f in enumerate_valid_fillings(partition, ell)),
                key=lambda m: abs(m.value),
            )
            ell_ok = report.ok and best.filling == filling
            agree = agree and ell_ok
            record["oracle"] = "agree" if ell_ok else "disagree"
            lines.append(f"oracle: {'AGREE' if ell_ok else 'DISAGREE'}")
            if not ell_ok:
                lines.extend("  " + v for v in report.violations)
        records.append(record)
    if config.oracle:
        lines.append("")
        lines.append("ORACLE AGREE" if agree else "ORACLE DISAGREE")
    payload = {
        "d": d,
        "r": r,
        "q": scalar_str(q),
        "source": source,
        "ells": records,
    }
    if config.oracle:
        payload["oracle_agree"] = agree
    _emit(config, lines, payload)
    return PASS if agree else FAIL


def cmd_witness(config: RunConfig) -> int:
    if not config.partition_path:
        raise InputError("witness needs --partition")
    partition = _load_partition(config.partition_path)
    points, d, r, q, source = _resolve_instance(config, partition)
    if is_rainbow(partition, d):
        raise InputError("partition is rainbow; no sign-flip witness exists")
    profile, _ = _profile_for(points, q)
    pair = sign_flip_witness(partition, profile)
    lines = [f"instance: d = {d}, r = {r}, q = {scalar_str(q)} ({source})"]
    payload = {"d": d, "r": r, "q": scalar_str(q), "source": source}
    if pair is None:
        lines.append("FAIL: no consecutive same-class pair shares its marker pattern")
        payload["witness"] = None
        _emit(config, lines, payload)
        return FAIL
    ell1, ell2 = pair
    verdict = decide_tverberg(points, partition)
    lines.append(
        f"witness pair: {ell1}, {ell2} (class {partition.class_of(ell1)});"
        " their dominant fillings share every marker position"
    )
    lines.append(
        "decide_tverberg: "
        + ("TVERBERG (unexpected)" if verdict.is_tverberg else f"NOT TVERBERG ({verdict.reason})")
    )
    payload["witness"] = [ell1, ell2]
    payload["is_tverberg"] = verdict.is_tverberg
    _emit(config, lines, payload)
    return FAIL if verdict.is_tverberg else PASS


def cmd_sgp(config: RunConfig) -> int:
    if not config.seq_path:
        raise InputError("sgp needs --seq")
    points = _load_sequence(config.seq_path)
    r = config.r if config.r is not None else _derive_r(points, None)
    ok = is_strong_general_position(points, r)
    lines = [f"strong general position (r = {r}): {'yes' if ok else 'no'}"]
    payload = {"r": r, "strong_general_position": ok}
    _emit(config, lines, payload)
    return PASS if ok else FAIL


# ---------------------------------------------------------------------------
# argument parsing


_COMMANDS = {
    "gen": cmd_gen,
    "check": cmd_check,
    "enumerate": cmd_enumerate,
    "rainbow": cmd_rainbow,
    "verify-universality": cmd_verify_universality,
    "dominant": cmd_dominant,
    "witness": cmd_witness,
    "sgp": cmd_sgp,
}

_HELP = {
    "gen": "construct a point sequence and print its JSON document",
    "check": "decide whether one partition is Tverberg for a sequence",
    "enumerate": "list every Tverberg partition of a sequence",
    "rainbow": "list the rainbow partitions for (d, r)",
    "verify-universality": "compare Tverberg and rainbow partition sets, PASS/FAIL",
    "dominant": "print the dominant grid filling for every omitted column",
    "witness": "find a consecutive same-class pair with matching marker patterns",
    "sgp": "check strong general position",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tverberg",
        description="Exact-arithmetic Tverberg partition toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, handler in _COMMANDS.items():
        cmd = sub.add_parser(name, help=_HELP[name])
        cmd.set_defaults(handler=handler)
        cmd.add_argument("--d", type=int, help="ambient dimension")
        cmd.add_argument("--r", type=int, help="number of classes")
        cmd.add_argument("--q", type=Fraction, help="dominance threshold, e.g. 721 or 3/2")
        cmd.add_argument("--seq", metavar="FILE", help="point sequence JSON file")
        cmd.add_argument("--partition", metavar="FILE", help="partition JSON file")
        cmd.add_argument(
            "--schedule",
            choices=("chain", "uniform"),
            default="chain",
            help="gen only: chain builds a verified super-dominant instance, "
            "uniform a plain geometric one",
        )
        cmd.add_argument("--base", type=Fraction, default=Fraction(2), help="power base for gen")
        cmd.add_argument("--oracle", action="store_true", help="dominant only: brute-force cross-check")
        cmd.add_argument(
            "--seed",
            type=int,
            default=0,
            help="seed for randomized controls; current commands are deterministic",
        )
        cmd.add_argument("--out", metavar="FILE", help="write the report to FILE instead of stdout")
        cmd.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else PASS
    try:
        config = RunConfig(
            command=ns.command,
            seq_path=ns.seq,
            partition_path=ns.partition,
            out_path=ns.out,
            d=ns.d,
            r=ns.r,
            q=scalar(ns.q) if ns.q is not None else None,
            base=scalar(ns.base),
            schedule=ns.schedule,
            seed=ns.seed,
            oracle=ns.oracle,
            as_json=ns.json,
        )
        return ns.handler(config)
    except (InputError, NotDominantError, DegeneratePointsError, InvalidFillingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except CertificateMismatchError as exc:
        print(f"error: internal cross-check failed: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
