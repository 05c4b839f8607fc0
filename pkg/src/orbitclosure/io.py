"""JSON reading and writing of problems, verdicts and limits."""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .criterion import ComponentSpec, FaceReport, ProblemSpec, Verdict, Violation, Witness
from .errors import InputError
from .geometry import Face
from .lattice import IntMatrix, KernelBasis
from .numbers import GaussianRational, to_fraction
from .oracle import BinaryForm, CurveSpec, LimitVector


def _fail(path: str, message: str):
    raise InputError(f"{path}: {message}")


def _expect(value, kind, path: str, what: str):
    if kind is int:
        ok = isinstance(value, int) and not isinstance(value, bool)
    else:
        ok = isinstance(value, kind)
    if not ok:
        _fail(path, f"expected {what}, got {json.dumps(value)}")
    return value


def _rational(value, path: str):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        _fail(path, f"expected a rational string like \"p/q\", got {json.dumps(value)}")
    try:
        return to_fraction(value)
    except (ValueError, TypeError) as exc:
        _fail(path, str(exc))


def _gaussian(value, path: str) -> GaussianRational:
    if isinstance(value, dict):
        extra = set(value) - {"re", "im", "mult"}
        if extra:
            _fail(path, f"unknown keys {sorted(extra)}")
        return GaussianRational(
            _rational(value.get("re", "0"), f"{path}.re"),
            _rational(value.get("im", "0"), f"{path}.im"),
        )
    return GaussianRational(_rational(value, path))


def problem_from_json(data: Any) -> ProblemSpec:
    _expect(data, dict, "$", "an object")
    extra = set(data) - {"k", "mode", "components"}
    if extra:
        _fail("$", f"unknown keys {sorted(extra)}")
    for key in ("k", "mode", "components"):
        if key not in data:
            _fail("$", f"missing key {key!r}")
    k = _expect(data["k"], int, "$.k", "a nonnegative integer")
    if k < 0:
        _fail("$.k", "must be nonnegative")
    mode = data["mode"]
    if mode not in ("affine", "projective"):
        _fail("$.mode", f"expected \"affine\" or \"projective\", got {json.dumps(mode)}")
    comps_raw = _expect(data["components"], list, "$.components", "a list")
    if not comps_raw:
        _fail("$.components", "at least one component is required")
    comps = []
    for i, raw in enumerate(comps_raw):
        path = f"$.components[{i}]"
        _expect(raw, dict, path, "an object")
        extra = set(raw) - {"character", "degree", "roots"}
        if extra:
            _fail(path, f"unknown keys {sorted(extra)}")
        character = _expect(raw.get("character"), list, f"{path}.character", "a list of integers")
        for j, c in enumerate(character):
            _expect(c, int, f"{path}.character[{j}]", "an integer")
        if len(character) != k:
            _fail(f"{path}.character", f"has length {len(character)}, expected k={k}")
        degree = _expect(raw.get("degree"), int, f"{path}.degree", "a nonnegative integer")
        if degree < 0:
            _fail(f"{path}.degree", "must be nonnegative")
        roots = []
        seen = {}
        for j, r in enumerate(_expect(raw.get("roots", []), list, f"{path}.roots", "a list")):
            rpath = f"{path}.roots[{j}]"
            _expect(r, dict, rpath, "an object")
            value = _gaussian(r, rpath)
            mult = _expect(r.get("mult"), int, f"{rpath}.mult", "a positive integer")
            if mult <= 0:
                _fail(f"{rpath}.mult", "must be positive")
            if value in seen:
                _fail(rpath, f"root {value} repeats roots[{seen[value]}]")
            seen[value] = j
            roots.append((value, mult))
        total = sum(m for _, m in roots)
        if total > degree:
            _fail(f"{path}.roots", f"multiplicities sum to {total}, more than degree {degree}")
        comps.append(ComponentSpec(tuple(character), degree, tuple(roots)))
    return ProblemSpec(k, mode, tuple(comps))


def parse_problem(text: str) -> ProblemSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return problem_from_json(data)


def problem_to_json(spec: ProblemSpec) -> dict:
    return {
        "k": spec.k,
        "mode": spec.mode,
        "components": [
            {
                "character": list(c.character),
                "degree": c.degree,
                "roots": [{**a.to_json(), "mult": m} for a, m in c.roots],
            }
            for c in spec.components
        ],
    }


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2) + "\n"


def dump_problem(spec: ProblemSpec) -> str:
    return dumps(problem_to_json(spec))


def spec_digest(spec: ProblemSpec) -> str:
    return hashlib.sha256(dump_problem(spec).encode()).hexdigest()


def _ints_as_strings(vec) -> list[str] | None:
    return None if vec is None else [str(x) for x in vec]


def face_to_json(face: Face) -> dict:
    return {"indices": list(face.indices), "normal": _ints_as_strings(face.normal), "dim": face.dim}


def face_from_json(data: dict) -> Face:
    normal = data.get("normal")
    return Face(
        tuple(data["indices"]),
        None if normal is None else tuple(int(x) for x in normal),
        data.get("dim", 0),
    )


def report_to_json(rep: FaceReport) -> dict:
    v = rep.violation
    return {
        **face_to_json(rep.face),
        "kernel_matrix": rep.kernel.source.tolist(),
        "kernel": [list(b) for b in rep.kernel.vectors],
        "violation": None if v is None else {"beta": list(v.beta), "root": v.root.to_json(), "value": v.value},
    }


def report_from_json(data: dict) -> FaceReport:
    rows = data["kernel_matrix"]
    source = IntMatrix.from_rows(rows, ncols=len(data["indices"]))
    kernel = KernelBasis(tuple(tuple(b) for b in data["kernel"]), source)
    v = data.get("violation")
    violation = None if v is None else Violation(tuple(v["beta"]), GaussianRational.from_json(v["root"]), v["value"])
    return FaceReport(face_from_json(data), kernel, violation)


def verdict_to_json(verdict: Verdict) -> dict:
    w = verdict.witness
    return {
        "finite": verdict.finite,
        "modality": verdict.modality,
        "faces": [report_to_json(r) for r in verdict.reports],
        "witness": None if w is None else {
            "face": list(w.face),
            "beta": list(w.beta),
            "root": w.root.to_json(),
            "value": w.value,
        },
    }


def verdict_from_json(data: dict) -> Verdict:
    w = data.get("witness")
    witness = None if w is None else Witness(
        tuple(w["face"]), tuple(w["beta"]), GaussianRational.from_json(w["root"]), w["value"]
    )
    return Verdict(
        data["finite"],
        data["modality"],
        tuple(report_from_json(r) for r in data["faces"]),
        witness,
    )


def curve_from_json(data: Any) -> CurveSpec:
    _expect(data, dict, "curve", "an object")
    extra = set(data) - {"r", "p", "q", "c", "h"}
    if extra:
        _fail("curve", f"unknown keys {sorted(extra)}")
    r = _expect(data.get("r", []), list, "curve.r", "a list of integers")
    for j, x in enumerate(r):
        _expect(x, int, f"curve.r[{j}]", "an integer")
    p = _expect(data.get("p"), int, "curve.p", "an integer")
    q = _expect(data.get("q", 0), int, "curve.q", "an integer")
    c = _gaussian(data.get("c", "0"), "curve.c")
    h_raw = _expect(data.get("h", ["-1"]), list, "curve.h", "a list of coefficients")
    h = tuple(_gaussian(x, f"curve.h[{j}]") for j, x in enumerate(h_raw)) or (GaussianRational(-1),)
    return CurveSpec(tuple(r), p, q, c, h)


def form_to_json(form: BinaryForm | None) -> dict | None:
    if form is None:
        return None
    mono = form.as_monomial()
    return {
        "text": str(form),
        "coeffs": [c.to_json() for c in form.coeffs],
        "monomial": None if mono is None else {"coeff": mono[0].to_json(), "x": mono[1], "y": mono[2]},
    }


def limit_to_json(limit: LimitVector) -> dict:
    return {
        "case": limit.case,
        "divergent": limit.divergent,
        "exponents": list(limit.exponents),
        "entries": [form_to_json(f) for f in limit.entries],
        "rescale": None if limit.rescale is None else {
            "base": limit.rescale[0].to_json(),
            "denominator": limit.rescale[1],
        },
    }
