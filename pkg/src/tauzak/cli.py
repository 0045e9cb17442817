"""Command line front end.

Subcommands:

  tauzak group-info DESCRIPTOR
  tauzak zak DESCRIPTOR SIGNAL --out DIR
  tauzak tau-zak DESCRIPTOR SIGNAL --out DIR
  tauzak verify DESCRIPTOR [--seed N] [--trials N] [--tol X] [--out DIR]
  tauzak showcase {heisenberg,torus,sl2} [model flags] [--seed ...]

Inputs are JSON (descriptors and signals, formats in serialize), outputs are
CSV tables plus a JSON manifest.  Identical (descriptor, seed) pairs produce
byte-identical outputs.  Exit codes: 0 success, 1 verification failure,
2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from tauzak import serialize
from tauzak.actions import ActingGroup, SemidirectSystem
from tauzak.groups import StructureError
from tauzak.plane import SampledPlaneSystem, probe_bumps, probe_system
from tauzak.verify import (
    run_finite_suite,
    run_heisenberg_checks,
    run_plane_suite,
    run_torus_checks,
)
from tauzak.zak import zak

DEFAULT_SEED = 20240915
DEFAULT_TRIALS = 25
DEFAULT_TOL = 1e-9


class InputError(Exception):
    """Bad paths, malformed JSON, mismatched dimensions: exit code 2."""


@dataclass
class RunConfig:
    command: str
    descriptor_path: str | None = None
    signal_path: str | None = None
    out_dir: str | None = None
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    tol: float = DEFAULT_TOL


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _print_results(results) -> bool:
    all_passed = True
    for r in results:
        status = "[PASS]" if r.passed else "[FAIL]"
        line = f"{status} {r.name:<30} deviation {r.deviation:.3e}  tol {r.tolerance:g}"
        if r.detail:
            line += f"  ({r.detail})"
        print(line)
        all_passed &= r.passed
    return all_passed


def _write_manifest(config: RunConfig, payload: dict) -> None:
    if config.out_dir is None:
        return
    os.makedirs(config.out_dir, exist_ok=True)
    payload = dict(payload)
    payload["command"] = config.command
    payload["seed"] = config.seed
    serialize.save_json(os.path.join(config.out_dir, "manifest.json"), payload)


# ---------------------------------------------------------------------------
# group-info

def _invariance_verdict(group, lattice, acting_gens, labels) -> str:
    if not acting_gens:
        return "tau-invariant: trivially (no acting set declared)"
    acting = ActingGroup.from_generators(
        group, [tuple(tuple(int(x) for x in row) for row in g) for g in acting_gens],
        labels=labels)
    for i, auto in enumerate(acting.elements):
        for row in lattice.canonical_basis:
            image = auto(group.element(row))
            if not lattice.contains(image):
                return (f"not tau-invariant: {acting.labels[i]} maps "
                        f"{tuple(row)} to {image.residues} outside the subgroup")
    return "tau-invariant: yes"


def cmd_group_info(config: RunConfig) -> int:
    descriptor = _load_json(config.descriptor_path)
    if descriptor.get("model") == "sl2":
        system = serialize.build_system(descriptor)
        print(f"plane system: alpha={system.alpha}, beta={system.beta}")
        print(f"slices: {len(system.sigmas)}")
        print(f"samples per axis: {system.samples}")
        print(f"support radius: {system.support_radius}")
        print("lattice preserved by every slice: yes")
        return 0
    if descriptor.get("model") in ("heisenberg", "torus"):
        system = serialize.build_system(descriptor)
        group, lattice = system.group, system.lattice
        acting_info = f"|H| = {len(system.acting)}"
        verdict = "tau-invariant: yes"
    else:
        group, lattice = serialize.build_group(descriptor)
        acting_info = None
        verdict = _invariance_verdict(group, lattice,
                                      descriptor.get("H_generators"),
                                      descriptor.get("labels"))
    ann = lattice.annihilator()
    print(f"moduli: {group.moduli}")
    print(f"|K| = {group.order}")
    print(f"|L| = {lattice.order}")
    print(f"|L_perp| = {ann.order}")
    print(f"transversal size |K/L| = {group.order // lattice.order}")
    print(f"dual transversal size = {group.order // ann.order}")
    if acting_info:
        print(acting_info)
    print(verdict)
    return 0


# ---------------------------------------------------------------------------
# transforms

def cmd_zak(config: RunConfig) -> int:
    descriptor = _load_json(config.descriptor_path)
    group, lattice = serialize.build_group(descriptor)
    signal = serialize.signal_from_json(group, _load_json(config.signal_path))
    array = zak(signal, lattice)
    os.makedirs(config.out_dir, exist_ok=True)
    serialize.write_zak_csv(os.path.join(config.out_dir, "zak.csv"), array)
    agree = abs(array.norm_sq - signal.norm_sq) <= config.tol * max(1.0, signal.norm_sq)
    _write_manifest(config, {
        "descriptor": descriptor,
        "files": ["zak.csv"],
        "input_norm_sq": signal.norm_sq,
        "output_norm_sq": array.norm_sq,
        "norms_agree": agree,
    })
    print(f"input norm^2  {signal.norm_sq:.12g}")
    print(f"output norm^2 {array.norm_sq:.12g}")
    return 0 if agree else 1


def cmd_tau_zak(config: RunConfig) -> int:
    from tauzak.tau_zak import tau_zak as transform

    descriptor = _load_json(config.descriptor_path)
    system = serialize.build_system(descriptor)
    if not isinstance(system, SemidirectSystem):
        raise InputError("tau-zak needs a finite system descriptor")
    f = serialize.sd_signal_from_json(system, _load_json(config.signal_path))
    field = transform(f)
    manifest = serialize.export_field(field, config.out_dir)
    agree = abs(field.norm_sq - f.norm_sq) <= config.tol * max(1.0, f.norm_sq)
    manifest.update({
        "descriptor": descriptor,
        "input_norm_sq": f.norm_sq,
        "output_norm_sq": field.norm_sq,
        "norms_agree": agree,
    })
    _write_manifest(config, manifest)
    print(f"slices: {', '.join(s['label'] for s in manifest['slices'])}")
    print(f"input norm^2  {f.norm_sq:.12g}")
    print(f"output norm^2 {field.norm_sq:.12g}")
    return 0 if agree else 1


# ---------------------------------------------------------------------------
# verification

def _suite_for(descriptor, system, config: RunConfig) -> list:
    if isinstance(system, SampledPlaneSystem):
        return run_plane_suite(system, tol=config.tol)
    results = run_finite_suite(system, seed=config.seed, trials=config.trials,
                               tol=config.tol)
    model = descriptor.get("model")
    if model == "heisenberg":
        results += run_heisenberg_checks(system, seed=config.seed,
                                         trials=config.trials)
    if model == "torus":
        results += run_torus_checks(system, seed=config.seed, tol=config.tol)
    return results


def cmd_verify(config: RunConfig) -> int:
    descriptor = _load_json(config.descriptor_path)
    system = serialize.build_system(descriptor)
    results = _suite_for(descriptor, system, config)
    all_passed = _print_results(results)
    _write_manifest(config, {
        "descriptor": descriptor,
        "trials": config.trials,
        "tolerance": config.tol,
        "results": [r.as_dict() for r in results],
    })
    return 0 if all_passed else 1


def cmd_showcase(config: RunConfig, args) -> int:
    if args.model == "heisenberg":
        descriptor = {"model": "heisenberg", "level": args.level}
    elif args.model == "torus":
        descriptor = {"model": "torus", "modulus": args.modulus,
                      "n": args.n, "m": args.m}
    else:
        system = probe_system(args.samples)
        results = run_plane_suite(system, bumps=probe_bumps(), tol=config.tol)
        all_passed = _print_results(results)
        _write_manifest(config, {
            "model": "sl2",
            "parameters": {"samples": args.samples,
                           "alpha": str(system.alpha),
                           "beta": str(system.beta)},
            "results": [r.as_dict() for r in results],
        })
        return 0 if all_passed else 1

    system = serialize.build_system(descriptor)
    results = _suite_for(descriptor, system, config)
    all_passed = _print_results(results)
    _write_manifest(config, {
        "descriptor": descriptor,
        "trials": config.trials,
        "results": [r.as_dict() for r in results],
    })
    return 0 if all_passed else 1


# ---------------------------------------------------------------------------
# argument wiring

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tauzak",
        description="Zak transforms on finite abelian groups and semidirect "
                    "products, with verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_required=False):
        p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                       help="seed for the portable generator")
        p.add_argument("--trials", type=int, default=DEFAULT_TRIALS,
                       help="random trials per identity")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                       help="identity tolerance")
        p.add_argument("--out", required=out_required,
                       help="output directory for CSV tables and manifest")

    p = sub.add_parser("group-info", help="report sizes and invariance")
    p.add_argument("descriptor")

    p = sub.add_parser("zak", help="transform of a plain signal")
    p.add_argument("descriptor")
    p.add_argument("signal")
    common(p, out_required=True)

    p = sub.add_parser("tau-zak", help="transform of a slice-indexed signal")
    p.add_argument("descriptor")
    p.add_argument("signal")
    common(p, out_required=True)

    p = sub.add_parser("verify", help="run the identity suite")
    p.add_argument("descriptor")
    common(p)

    p = sub.add_parser("showcase", help="built-in example systems")
    model_sub = p.add_subparsers(dest="model", required=True)
    ph = model_sub.add_parser("heisenberg")
    ph.add_argument("--level", type=int, default=8)
    common(ph)
    pt = model_sub.add_parser("torus")
    pt.add_argument("--modulus", type=int, default=12)
    pt.add_argument("--n", type=int, default=2)
    pt.add_argument("--m", type=int, default=4)
    common(pt)
    ps = model_sub.add_parser("sl2")
    ps.add_argument("--samples", type=int, default=16)
    common(ps)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    config = RunConfig(
        command=args.command,
        descriptor_path=getattr(args, "descriptor", None),
        signal_path=getattr(args, "signal", None),
        out_dir=getattr(args, "out", None),
        seed=getattr(args, "seed", DEFAULT_SEED),
        trials=getattr(args, "trials", DEFAULT_TRIALS),
        tol=getattr(args, "tol", DEFAULT_TOL),
    )
    try:
        if args.command == "group-info":
            return cmd_group_info(config)
        if args.command == "zak":
            return cmd_zak(config)
        if args.command == "tau-zak":
            return cmd_tau_zak(config)
        if args.command == "verify":
            return cmd_verify(config)
        if args.command == "showcase":
            return cmd_showcase(config, args)
    except (InputError, StructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
