"""Finiteness decisions for orbit closures of (C*)^k x SL2 acting on binary forms.

A problem is a list of components. Component ``i`` is the form
``x^(n_i - e_i(inf)) * prod_a (a x + y)^(e_i(a))`` living in the simple
summand with torus character ``chi_i`` and degree ``n_i``. The orbit closure
has finitely many orbits exactly when, on every inclusion-maximal admissible
face of the characteristic cone, each integer relation ``beta`` among the
face characters (plus ``sum(beta) == 0`` in the projective case) also
annihilates the multiplicity vector ``(e_i(a))_i`` for every root ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Literal, Mapping, Sequence

from .errors import ConstructionError, InputError
from .geometry import (
    CharPoint,
    Face,
    inclusion_maximal,
    admissible_normal,
    argmin_normal,
    maximal_admissible_faces,
)
from .lattice import IntMatrix, KernelBasis, kernel_basis, rank_over_rationals
from .numbers import GaussianRational

Mode = Literal["affine", "projective"]
Route = Literal["lift", "direct"]

MAX_DIRECT_COMPONENTS = 12


@dataclass(frozen=True)
class ComponentSpec:
    character: tuple[int, ...]
    degree: int
    roots: tuple[tuple[GaussianRational, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "character", tuple(int(c) for c in self.character))
        if isinstance(self.roots, Mapping):
            items = list(self.roots.items())
        else:
            items = list(self.roots)
        roots = []
        for root, mult in items:
            root = GaussianRational.coerce(root)
            if not isinstance(mult, int) or isinstance(mult, bool) or mult <= 0:
                raise InputError(f"root multiplicity {mult!r} must be a positive integer")
            roots.append((root, mult))
        roots.sort(key=lambda rm: rm[0].sort_key())
        if len({r for r, _ in roots}) != len(roots):
            raise InputError("root values of a component must be pairwise distinct")
        if not isinstance(self.degree, int) or self.degree < 0:
            raise InputError(f"degree {self.degree!r} must be a nonnegative integer")
        if sum(m for _, m in roots) > self.degree:
            raise InputError(
                f"total root multiplicity {sum(m for _, m in roots)} exceeds degree {self.degree}"
            )
        object.__setattr__(self, "roots", tuple(roots))

    @property
    def root_map(self) -> dict[GaussianRational, int]:
        return dict(self.roots)

    def multiplicity(self, a: GaussianRational) -> int:
        for root, mult in self.roots:
            if root == a:
                return mult
        return 0

    @property
    def e_infinity(self) -> int:
        return sum(m for _, m in self.roots)

    def without_roots(self) -> "ComponentSpec":
        return ComponentSpec(self.character, self.degree)


@dataclass(frozen=True)
class ProblemSpec:
    k: int
    mode: Mode
    components: tuple[ComponentSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if self.mode not in ("affine", "projective"):
            raise InputError(f"unknown mode {self.mode!r}")
        if self.k < 0:
            raise InputError("k must be nonnegative")
        if not self.components:
            raise InputError("a problem needs at least one component")
        for i, comp in enumerate(self.components):
            if len(comp.character) != self.k:
                raise InputError(
                    f"component {i}: character has length {len(comp.character)}, expected k={self.k}"
                )

    def points(self) -> list[CharPoint]:
        return [CharPoint(c.character, c.degree, i) for i, c in enumerate(self.components)]

    def lifted(self) -> "ProblemSpec":
        """The affine problem for the extra scalar torus: characters become (1, chi)."""
        return ProblemSpec(
            self.k + 1,
            "affine",
            tuple(ComponentSpec((1, *c.character), c.degree, c.roots) for c in self.components),
        )


@dataclass(frozen=True)
class Violation:
    beta: tuple[int, ...]
    root: GaussianRational
    value: int


@dataclass(frozen=True)
class FaceReport:
    face: Face
    kernel: KernelBasis
    violation: Violation | None = None

    @property
    def passed(self) -> bool:
        return self.violation is None


@dataclass(frozen=True)
class Witness:
    face: tuple[int, ...]
    beta: tuple[int, ...]
    root: GaussianRational
    value: int


@dataclass(frozen=True)
class Verdict:
    finite: bool
    modality: int
    reports: tuple[FaceReport, ...] = field(default=())
    witness: Witness | None = None


def character_matrix(spec: ProblemSpec, indices: Sequence[int], mode: Mode | None = None) -> IntMatrix:
    """Columns ``chi_i`` for ``i`` in ``indices``; projective mode appends a row of ones."""
    mode = mode or spec.mode
    rows = [[spec.components[i].character[r] for i in indices] for r in range(spec.k)]
    if mode == "projective":
        rows.append([1] * len(indices))
    return IntMatrix.from_rows(rows, ncols=len(indices))


def face_condition(spec: ProblemSpec, face, mode: Mode | None = None) -> FaceReport:
    """Check ``sum_i e_i(a) beta_i == 0`` for every kernel basis vector and every root ``a``."""
    if not isinstance(face, Face):
        face = Face(tuple(sorted(face)))
    indices = face.indices
    if not indices:
        raise InputError("face_condition needs a nonempty face")
    if not set(indices) <= set(range(len(spec.components))):
        raise InputError("face refers to unknown components")
    kernel = kernel_basis(character_matrix(spec, indices, mode))
    comps = [spec.components[i] for i in indices]
    roots = sorted({r for c in comps for r, _ in c.roots}, key=GaussianRational.sort_key)
    for beta in kernel.vectors:
        for a in roots:
            value = sum(c.multiplicity(a) * b for c, b in zip(comps, beta))
            if value:
                return FaceReport(face, kernel, Violation(beta, a, value))
    return FaceReport(face, kernel)


def _verdict(reports: Iterable[FaceReport]) -> Verdict:
    reports = tuple(sorted(reports, key=lambda r: r.face.indices))
    witness = None
    for rep in reports:
        if rep.violation is not None:
            v = rep.violation
            witness = Witness(rep.face.indices, v.beta, v.root, v.value)
            break
    finite = witness is None
    return Verdict(finite, 0 if finite else 1, reports, witness)


def decide_affine(spec: ProblemSpec) -> Verdict:
    if spec.mode != "affine":
        raise InputError("decide_affine needs an affine problem")
    faces = maximal_admissible_faces(spec.points(), lifted=False)
    return _verdict(face_condition(spec, f) for f in faces if f.indices)


def _direct_faces(spec: ProblemSpec) -> list[Face]:
    points = spec.points()
    s = len(points)
    if s > MAX_DIRECT_COMPONENTS:
        raise InputError(f"direct route enumerates subsets; refusing {s} > {MAX_DIRECT_COMPONENTS} components")
    found = {}
    for size in range(1, s + 1):
        for subset in combinations(range(s), size):
            res = argmin_normal(points, subset)
            if res is not None:
                normal, level = res
                found[subset] = (-level, *normal)
    keep = inclusion_maximal(found)
    faces = []
    for fs in keep:
        idx = tuple(sorted(fs))
        dim = rank_over_rationals(IntMatrix.from_columns([points[i].lifted for i in idx], spec.k + 2))
        faces.append(Face(idx, found[idx], dim))
    return sorted(faces, key=lambda f: f.indices)


def decide_projective(spec: ProblemSpec, route: Route = "lift") -> Verdict:
    """Projective decision; ``lift`` runs the affine test for characters (1, chi),
    ``direct`` works with argmin faces of the unlifted polytope."""
    if spec.mode != "projective":
        raise InputError("decide_projective needs a projective problem")
    if route == "lift":
        return decide_affine(spec.lifted())
    if route == "direct":
        return _verdict(face_condition(spec, f, "projective") for f in _direct_faces(spec))
    raise InputError(f"unknown route {route!r}")


def decide(spec: ProblemSpec, route: Route = "lift") -> Verdict:
    if spec.mode == "affine":
        return decide_affine(spec)
    return decide_projective(spec, route)


def modality(spec: ProblemSpec) -> int:
    return decide(spec).modality


def _module_points(k: int, modules) -> list[CharPoint]:
    pts = []
    for i, m in enumerate(modules):
        character, degree = (m.character, m.degree) if isinstance(m, ComponentSpec) else m
        if len(character) != k:
            raise InputError(f"module {i}: character length {len(character)} != k={k}")
        pts.append(CharPoint(tuple(character), int(degree), i))
    if not pts:
        raise InputError("need at least one module")
    return pts


def module_always_finite(k: int, modules, mode: Mode) -> tuple[bool, Face | None]:
    """Whether every orbit closure in the module has finitely many orbits.

    ``modules`` holds ``(character, degree)`` pairs or root-free ComponentSpecs.
    On failure the offending inclusion-maximal admissible face is returned.

    Every unit vector ``E_j`` with ``n_j != 0`` has to lie in the row space of
    the face's character matrix, degree-zero columns included. Without
    degree-zero components this is plain independence of the remaining
    characters; with them, a relation through a constant component also counts.
    """
    points = _module_points(k, modules)
    spec = ProblemSpec(k, mode, tuple(ComponentSpec(p.character, p.degree) for p in points))
    for face in maximal_admissible_faces(points, lifted=mode == "projective"):
        for beta in kernel_basis(character_matrix(spec, face.indices)).vectors:
            if any(b and points[i].degree for i, b in zip(face.indices, beta)):
                return False, face
    return True, None


def dependent_beta(k: int, modules, mode: Mode, face: Face) -> tuple[int, ...]:
    """A kernel basis vector of the face's character matrix that is nonzero at some positive-degree index."""
    points = _module_points(k, modules)
    spec = ProblemSpec(k, mode, tuple(ComponentSpec(p.character, p.degree) for p in points))
    kernel = kernel_basis(character_matrix(spec, face.indices))
    for beta in kernel.vectors:
        if any(b and points[i].degree for i, b in zip(face.indices, beta)):
            return beta
    raise ConstructionError("face characters are independent on positive-degree indices")


def witness_vector(k: int, modules, mode: Mode, face, beta: Sequence[int], j: int | None = None) -> ProblemSpec:
    """A problem in the given module whose orbit closure has infinitely many orbits.

    ``beta`` is indexed along ``face`` (sorted). Component ``j`` gets the single
    root 0 with multiplicity 1, so ``sum e_i(0) beta_i == beta_j != 0``.
    """
    points = _module_points(k, modules)
    indices = tuple(sorted(face.indices if isinstance(face, Face) else face))
    beta = tuple(int(b) for b in beta)
    if len(beta) != len(indices):
        raise ConstructionError("beta length does not match the face")
    if not any(beta):
        raise ConstructionError("beta must be nonzero")
    base = ProblemSpec(k, mode, tuple(ComponentSpec(p.character, p.degree) for p in points))
    if any(character_matrix(base, indices).apply(beta)):
        raise ConstructionError("beta is not an integer relation among the face characters")
    if admissible_normal(points, indices, lifted=mode == "projective") is None:
        raise ConstructionError(f"face {list(indices)} is not admissible")
    candidates = [i for i, b in zip(indices, beta) if b != 0 and points[i].degree >= 1]
    if j is None:
        if not candidates:
            raise ConstructionError("no face index with nonzero beta and positive degree")
        j = candidates[0]
    elif j not in candidates:
        raise ConstructionError(f"index {j} has zero beta or degree 0")
    comps = tuple(
        ComponentSpec(p.character, p.degree, ((GaussianRational(0), 1),) if p.index == j else ())
        for p in points
    )
    return ProblemSpec(k, mode, comps)
