"""``scf`` command-line front end.

Exit codes: 0 holds / query true, 1 query false, 10 fails (witness found),
2 usage error, 3 engine refusal, 4 internal verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from scf import __version__
from scf._scan import default_workers
from scf.circle import (
    CongruenceWitness,
    decide_scf_circle,
    default_modulus_bound,
    normalize_weights,
    verify_witness_circle,
)
from scf.errors import InvalidInput, NoWitness, Refusal, ScfError
from scf.so3 import So3Witness, SpinSequence, decide_scf_so3, search_open_question, verify_witness_so3
from scf.sympair import (
    DEFAULT_THETA,
    PairFamily,
    build_witness_so_sum,
    catalog,
    classify_pair,
    verify_pair_witness,
)
from scf.torus import (
    GroupTag,
    TorusElement,
    as_turn,
    canonical_form,
    conjugate_in,
    format_turn,
    fusion_witness,
    infer_embedding,
)
from scf.verdict import Fails

EXIT_HOLDS = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_REFUSAL = 3
EXIT_INTERNAL = 4
EXIT_FAILS = 10

SUBCOMMANDS = ("circle", "so3", "so3-search", "weyl-conj", "fusion", "sympair")


@dataclass
class RunConfig:
    subcommand: str
    params: dict[str, Any] = field(default_factory=dict)
    output: str = "text"
    workers: int = 1
    out_path: Path | None = None

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise InvalidInput(f"unknown subcommand {self.subcommand!r}")
        if self.workers < 1:
            raise InvalidInput("workers must be >= 1")
        for key in ("m_max", "q_max", "sum_max", "q"):
            value = self.params.get(key)
            if value is not None and value < 1:
                raise InvalidInput(f"{key} must be positive, got {value}")


@dataclass
class Report:
    config: dict
    verdicts: list[dict]
    disclaimers: list[str]
    exit_code: int
    text: str
    wall_time: float = 0.0
    tool_version: str = __version__

    def to_json(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "config": self.config,
            "verdicts": self.verdicts,
            "disclaimers": self.disclaimers,
            "wall_time": round(self.wall_time, 6),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


class VerificationError(ScfError):
    """An engine produced a witness that failed independent re-verification."""


def _circle(cfg: RunConfig) -> Report:
    a = normalize_weights(cfg.params["weights"])
    m_max = cfg.params.get("m_max") or default_modulus_bound(a)
    verdict = decide_scf_circle(a, m_max, cfg.workers)
    row = {"weights": list(a.weights), **verdict.to_json()}
    if isinstance(verdict, Fails):
        if not verify_witness_circle(a, verdict.witness):
            raise VerificationError(f"circle witness {verdict.witness} did not verify")
        w = verdict.witness
        text = f"H{a} does NOT strongly control fusion in U({len(a)}): {w.k}*a = a (mod {w.m}) as multisets"
        notes = []
    else:
        text = f"H{a} in U({len(a)}): SCF verified up to modulus {m_max}"
        notes = [f"holds only up to modulus {m_max}; no general bound on the modulus is known"]
    config = {"subcommand": "circle", "weights": list(a.weights), "m_max": m_max}
    return Report(config, [row], notes, EXIT_FAILS if isinstance(verdict, Fails) else EXIT_HOLDS, text)


def _so3_row(spins: SpinSequence, verdict) -> dict:
    if isinstance(verdict, Fails) and not verify_witness_so3(spins, verdict.witness):
        raise VerificationError(f"SO(3) witness {verdict.witness} did not verify")
    return {"spins": list(spins.spins), **verdict.to_json()}


def _so3_text(spins: SpinSequence, verdict) -> str:
    if isinstance(verdict, Fails):
        w = verdict.witness
        return f"{str(spins):<20} fails   rotations {w.p}/{w.q} and {w.p_prime}/{w.q} fuse"
    return f"{str(spins):<20} holds   up to denominator {verdict.bound}"


def _torsion_note(q_max: int) -> str:
    return f"holds only for rotations by p/q with q <= {q_max}; irrational angles are not examined"


def _so3(cfg: RunConfig) -> Report:
    spins = SpinSequence.of(*cfg.params["spins"])
    q_max = cfg.params["q_max"]
    verdict = decide_scf_so3(spins, q_max, cfg.workers)
    row = _so3_row(spins, verdict)
    fails = isinstance(verdict, Fails)
    config = {"subcommand": "so3", "spins": list(spins.spins), "q_max": q_max}
    notes = [] if fails else [_torsion_note(q_max)]
    return Report(config, [row], notes, EXIT_FAILS if fails else EXIT_HOLDS, _so3_text(spins, verdict))


def _so3_search(cfg: RunConfig) -> Report:
    sum_max, q_max = cfg.params["sum_max"], cfg.params["q_max"]
    rows = search_open_question(sum_max, q_max, cfg.workers)
    verdicts = [_so3_row(r.spins, r.verdict) for r in rows]
    lines = [f"{'spins':<20} outcome"] + [_so3_text(r.spins, r.verdict) for r in rows]
    config = {"subcommand": "so3-search", "sum_max": sum_max, "q_max": q_max}
    return Report(config, verdicts, [_torsion_note(q_max)], EXIT_HOLDS, "\n".join(lines))


def _weyl_conj(cfg: RunConfig) -> Report:
    group: GroupTag = cfg.params["group"]
    x = TorusElement(tuple(cfg.params["x"]), group)
    y = TorusElement(tuple(cfg.params["y"]), group)
    cx, cy = canonical_form(x), canonical_form(y)
    same = conjugate_in(x, y, group)
    row = {"x": cx.to_json(), "y": cy.to_json(), "conjugate": same}
    text = f"x ~ {cx}\ny ~ {cy}\n{'conjugate' if same else 'not conjugate'} in {group.label()}"
    config = {"subcommand": "weyl-conj", "group": group.to_json(),
              "x": [format_turn(t) for t in x.turns], "y": [format_turn(t) for t in y.turns]}
    return Report(config, [row], [], EXIT_HOLDS if same else EXIT_FALSE, text)


def _fusion(cfg: RunConfig) -> Report:
    sub: GroupTag = cfg.params["sub"]
    amb: GroupTag = cfg.params["amb"]
    q = cfg.params["q"]
    rule = infer_embedding(sub, amb)
    hit = fusion_witness(sub, amb, rule, q)
    row = {"sub": sub.to_json(), "amb": amb.to_json(), "embedding": rule.value}
    if hit is None:
        row.update(outcome="holds", bound=q)
        text = f"{sub.label()} < {amb.label()}: no fusion among {q}-torsion torus elements"
        notes = [f"exhaustive over elements of order dividing {q} only"]
    else:
        x, y = hit
        row.update(outcome="fails", x=x.to_json(), y=y.to_json())
        text = f"{sub.label()} < {amb.label()}: {x} and {y} fuse"
        notes = []
    config = {"subcommand": "fusion", "sub": sub.to_json(), "amb": amb.to_json(), "q": q}
    return Report(config, [row], notes, EXIT_HOLDS if hit is None else EXIT_FAILS, text)


def _sympair(cfg: RunConfig) -> Report:
    if cfg.params.get("list"):
        cases = catalog()
        rows = [c.to_json() for c in cases]
        width = max(len(c.label) for c in cases)
        lines = [f"{'pair':<{width}}  {'any H':<26} connected H"]
        lines += [f"{r['pair']:<{width}}  {r['status']:<26} {r['connected_status']}" for r in rows]
        return Report({"subcommand": "sympair", "list": True}, rows, [], EXIT_HOLDS, "\n".join(lines))
    family = PairFamily(cfg.params["family"])
    params = {k: v for k, v in cfg.params.items() if k in ("n", "p", "q", "kind") and v is not None}
    case = classify_pair(family, **params)
    row = case.to_json()
    lines = [f"{case.label}: {row['status']} (connected H: {row['connected_status']})"]
    if family is PairFamily.SO_SUM_ODD:
        theta = cfg.params.get("theta") or DEFAULT_THETA
        w = build_witness_so_sum(params["p"], params["q"], theta)
        ambient_conj, sub_conj = verify_pair_witness(w)
        if (ambient_conj, sub_conj) != (True, False):
            raise VerificationError("symmetric-pair witness did not verify")
        row["witness"] = w.to_json()
        row["verification"] = {"ambient_conjugate": ambient_conj, "subgroup_conjugate": sub_conj}
        lines.append(f"X = {w.X}\nY = {w.Y}\nX ~ Y in {w.ambient.label()}, not in the subgroup")
    config = {"subcommand": "sympair", "family": family.value,
              **{k: v for k, v in params.items()}}
    if "theta" in cfg.params and cfg.params["theta"] is not None:
        config["theta"] = format_turn(cfg.params["theta"])
    code = EXIT_HOLDS if case.status is None else EXIT_FAILS
    return Report(config, [row], [], code, "\n".join(lines))


_DISPATCH = {
    "circle": _circle,
    "so3": _so3,
    "so3-search": _so3_search,
    "weyl-conj": _weyl_conj,
    "fusion": _fusion,
    "sympair": _sympair,
}


def run(config: RunConfig) -> Report:
    start = time.perf_counter()
    report = _DISPATCH[config.subcommand](config)
    report.wall_time = time.perf_counter() - start
    return report


def reverify(verdict: dict) -> bool:
    """Re-check a serialized circle / SO(3) verdict against its inputs."""
    if verdict.get("outcome") != "fails":
        return "bound" in verdict
    if "weights" in verdict:
        a = normalize_weights(verdict["weights"])
        return verify_witness_circle(a, CongruenceWitness.from_json(verdict))
    if "spins" in verdict:
        return verify_witness_so3(SpinSequence.of(*verdict["spins"]), So3Witness.from_json(verdict))
    raise InvalidInput("verdict carries neither weights nor spins")


# argument parsing

def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _turn_list(text: str) -> list:
    text = text.strip()
    if text.startswith("["):
        items = json.loads(text)
    else:
        items = [x for x in text.split(",") if x.strip()]
    try:
        return [as_turn(str(x)) for x in items]
    except InvalidInput as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _turn(text: str):
    try:
        return as_turn(text)
    except InvalidInput as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


_FAMILY_ALIASES = {
    "a": "UnitaryA", "u": "UnitaryA", "su": "SpecialUnitaryA", "b": "OddOrthogonalB",
    "c": "SymplecticC", "sp": "SymplecticC", "d": "EvenOrthogonalD", "o": "FullOrthogonal",
}


def _group_from_matrix(kind: str, n: int) -> GroupTag:
    builders = {"u": GroupTag.u, "su": GroupTag.su, "so": GroupTag.so, "sp": GroupTag.sp, "o": GroupTag.o}
    try:
        return builders[kind.lower()](n)
    except KeyError as exc:
        raise InvalidInput(f"unknown group type {kind!r}; use one of {sorted(builders)}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scf", description="Strong fusion control for compact classical groups.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report on stdout")
    common.add_argument("--workers", type=int, default=None, help="worker processes (default: $SCF_WORKERS or 1)")
    common.add_argument("--out", type=Path, default=None, help="also write the JSON report to this file")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("circle", parents=[common], help="circle subgroup H(a) of U(n)")
    p.add_argument("--weights", type=_int_list, required=True)
    p.add_argument("--m-max", type=int, default=None)

    p = sub.add_parser("so3", parents=[common], help="SO(3) via a sum of irreducibles")
    p.add_argument("--spins", type=_int_list, required=True)
    p.add_argument("--q-max", type=int, default=200)

    p = sub.add_parser("so3-search", parents=[common], help="classify all spin sequences up to a sum")
    p.add_argument("--sum-max", type=int, required=True)
    p.add_argument("--q-max", type=int, default=200)

    p = sub.add_parser("weyl-conj", parents=[common], help="torus conjugacy query")
    p.add_argument("--family", required=True, help="u, su, b, c/sp, d, o or a full family name")
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--size", type=int, default=None, help="matrix size (O(n) only)")
    p.add_argument("--x", type=_turn_list, required=True, help="comma list of p/q turns or JSON array")
    p.add_argument("--y", type=_turn_list, required=True)

    p = sub.add_parser("fusion", parents=[common], help="elementwise fusion of a torus inclusion")
    p.add_argument("--sub", nargs=2, metavar=("TYPE", "N"), required=True)
    p.add_argument("--amb", nargs=2, metavar=("TYPE", "N"), required=True)
    p.add_argument("--q", type=int, default=6)

    p = sub.add_parser("sympair", parents=[common], help="symmetric-pair catalog and witnesses")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--list", action="store_true")
    group.add_argument("--family", choices=[f.value for f in PairFamily])
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--kind")
    p.add_argument("--theta", type=_turn, default=None)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    workers = args.workers if args.workers is not None else default_workers()
    output = "json" if args.json else "text"
    cmd = args.subcommand
    if cmd == "circle":
        params = {"weights": args.weights, "m_max": args.m_max}
    elif cmd == "so3":
        params = {"spins": args.spins, "q_max": args.q_max}
    elif cmd == "so3-search":
        params = {"sum_max": args.sum_max, "q_max": args.q_max}
    elif cmd == "weyl-conj":
        family = _FAMILY_ALIASES.get(args.family.lower(), args.family)
        rank = args.rank if args.rank is not None else (args.size // 2 if args.size else None)
        if rank is None:
            raise InvalidInput("weyl-conj needs --rank (or --size for O(n))")
        params = {"group": GroupTag(family, rank, args.size), "x": args.x, "y": args.y}
    elif cmd == "fusion":
        try:
            sub_group = _group_from_matrix(args.sub[0], int(args.sub[1]))
            amb_group = _group_from_matrix(args.amb[0], int(args.amb[1]))
        except ValueError as exc:
            raise InvalidInput(f"bad group size: {exc}") from exc
        params = {"sub": sub_group, "amb": amb_group, "q": args.q}
    else:
        params = {"list": args.list, "family": args.family, "n": args.n, "p": args.p,
                  "q": args.q, "kind": args.kind, "theta": args.theta}
    return RunConfig(cmd, params, output, workers, args.out)


def _error(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        config = config_from_args(args)
        report = run(config)
    except (InvalidInput, NoWitness, ValueError, KeyError) as exc:
        return _error("usage", str(exc), EXIT_USAGE)
    except Refusal as exc:
        return _error("refusal", str(exc), EXIT_REFUSAL)
    except VerificationError as exc:
        return _error("verification", str(exc), EXIT_INTERNAL)
    if config.out_path is not None:
        config.out_path.write_text(report.dumps() + "\n")
    if config.output == "json":
        print(report.dumps())
    else:
        print(report.text)
        for note in report.disclaimers:
            print(f"note: {note}")
    return report.exit_code


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
