"""Command line front end.

Exit codes: 0 when a verdict (finite or not) was computed, 1 on bad input,
2 on an internal error, including disagreement between the two projective
routes under ``check --route both``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .criterion import (
    decide,
    dependent_beta,
    module_always_finite,
    witness_vector,
)
from .errors import ConstructionError, InputError
from .geometry import maximal_admissible_faces
from .io import (
    curve_from_json,
    dump_problem,
    dumps,
    face_to_json,
    limit_to_json,
    parse_problem,
    report_to_json,
    spec_digest,
    verdict_to_json,
    _gaussian,
)
from .oracle import curve_limit, sample_survey

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class RouteDisagreement(RuntimeError):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _envelope(command: str, spec, body: dict) -> dict:
    return {
        "tool": "orbitclosure",
        "version": __version__,
        "command": command,
        "input_sha256": spec_digest(spec),
        "mode": spec.mode,
        **body,
    }


def cmd_check(spec, args) -> dict:
    if spec.mode == "affine" or args.route == "lift":
        verdict = decide(spec, "lift")
        route = "affine" if spec.mode == "affine" else "lift"
    elif args.route == "direct":
        verdict = decide(spec, "direct")
        route = "direct"
    else:
        verdict = decide(spec, "lift")
        other = decide(spec, "direct")
        if verdict.finite != other.finite:
            raise RouteDisagreement(
                f"lift route says finite={verdict.finite}, direct route says finite={other.finite}"
            )
        route = "both"
    body = {"route": route, "verdict": verdict_to_json(verdict)}
    if args.modality:
        body["modality"] = verdict.modality
    return body


def cmd_faces(spec, args) -> dict:
    faces = maximal_admissible_faces(spec.points(), lifted=spec.mode == "projective")
    return {"faces": [face_to_json(f) for f in faces]}


def cmd_module_check(spec, args) -> dict:
    modules = [(c.character, c.degree) for c in spec.components]
    ok, face = module_always_finite(spec.k, modules, spec.mode)
    body = {"always_finite": ok, "face": None if face is None else face_to_json(face)}
    if not ok:
        beta = dependent_beta(spec.k, modules, spec.mode, face)
        witness = witness_vector(spec.k, modules, spec.mode, face, beta)
        body["beta"] = list(beta)
        body["witness_spec"] = json.loads(dump_problem(witness))
        if args.emit_witness:
            Path(args.emit_witness).write_text(dump_problem(witness), encoding="utf-8")
    return body


def cmd_oracle(spec, args) -> dict:
    verdict = decide(spec)
    sample = None
    if args.sample:
        sample = [_gaussian(s, f"--sample[{i}]") for i, s in enumerate(args.sample)]
    faces = []
    for rep in verdict.reports:
        ev = sample_survey(spec, rep.face.indices, sample, size=args.size)
        faces.append({
            **report_to_json(rep),
            "survey": {
                "evidence": "infinite" if ev.infinite else "finite",
                "classes": ev.classes,
                "sample": [d.to_json() for d in ev.sample],
            },
        })
    infinite_evidence = any(f["survey"]["evidence"] == "infinite" for f in faces)
    return {
        "criterion_finite": verdict.finite,
        "evidence": "infinite" if infinite_evidence else "finite",
        "agrees": infinite_evidence != verdict.finite,
        "faces": faces,
    }


def cmd_limit(spec, args) -> dict:
    try:
        curve_data = json.loads(args.curve)
    except json.JSONDecodeError as exc:
        raise InputError(f"--curve: column {exc.colno}: {exc.msg}") from exc
    curve = curve_from_json(curve_data)
    projective = {"projective": True, "affine": False}.get(args.as_mode)
    limit = curve_limit(spec, curve, projective)
    return {"limit": limit_to_json(limit)}


COMMANDS = {
    "check": cmd_check,
    "faces": cmd_faces,
    "module-check": cmd_module_check,
    "oracle": cmd_oracle,
    "limit": cmd_limit,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitclosure",
        description="Decide whether an orbit closure of (C*)^k x SL2 on binary forms has finitely many orbits.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("problem", help="problem JSON file, or - for stdin")
        p.add_argument("-o", "--output", help="write the report here instead of stdout")
        return p

    p = add("check", "decide finiteness and report a witness when infinite")
    p.add_argument("--route", choices=("lift", "direct", "both"), default="lift",
                   help="projective decision route (ignored for affine problems)")
    p.add_argument("--modality", action="store_true", help="also report the modality (0 or 1)")

    p = add("module-check", "decide finiteness for every vector of the module (roots ignored)")
    p.add_argument("--emit-witness", metavar="PATH", help="write a problem with infinitely many orbits here")

    add("faces", "list inclusion-maximal admissible faces with normals")

    p = add("oracle", "sample standard vectors per face and count torus-orbit classes")
    p.add_argument("--size", type=int, default=8, help="default sample size")
    p.add_argument("--sample", nargs="+", help="explicit sample values (rationals)")

    p = add("limit", "limit of a normal-form curve applied to the problem vector")
    p.add_argument("--curve", required=True,
                   help='curve JSON, e.g. \'{"r":[-1],"p":-1,"q":-1,"c":"1","h":["-1"]}\'')
    p.add_argument("--as", dest="as_mode", choices=("affine", "projective"),
                   help="override the problem's mode for the limit")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = parse_problem(_read(args.problem))
        body = COMMANDS[args.command](spec, args)
        text = dumps(_envelope(args.command, spec, body))
    except (InputError, ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RouteDisagreement as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
