"""Exact rational cone machinery over the characteristic points.

Everything here works with :class:`fractions.Fraction` and Python integers;
there are no tolerances. The sizes this is meant for are small (a dozen
points, ambient dimension under ten), so the algorithms favour plainness:
double description for dual cones and Fourier-Motzkin elimination for
feasibility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .lattice import IntMatrix, rank_over_rationals
from .numbers import dot, primitive

RationalVector = tuple  # tuple of Fraction (or int), one entry per ambient coordinate


@dataclass(frozen=True)
class CharPoint:
    """Characteristic point (character, degree) of the component with id ``index``."""

    character: tuple[int, ...]
    degree: int
    index: int

    def __post_init__(self):
        object.__setattr__(self, "character", tuple(int(c) for c in self.character))
        if self.degree < 0:
            raise ValueError(f"negative degree {self.degree} for point {self.index}")

    @property
    def coords(self) -> tuple[int, ...]:
        return (*self.character, self.degree)

    @property
    def lifted(self) -> tuple[int, ...]:
        return (1, *self.character, self.degree)


@dataclass(frozen=True)
class Face:
    indices: tuple[int, ...]
    normal: tuple[int, ...] | None = None
    dim: int = 0

    def __contains__(self, i: int) -> bool:
        return i in self.indices


@dataclass(frozen=True)
class DualCone:
    normals: tuple[tuple[int, ...], ...]
    lineality: tuple[tuple[int, ...], ...] = field(default=())


def _coords(points: Sequence[CharPoint], lifted: bool) -> list[tuple[int, ...]]:
    if not points:
        raise ValueError("need at least one characteristic point")
    dims = {len(p.character) for p in points}
    if len(dims) != 1:
        raise ValueError("characteristic points have characters of different lengths")
    return [p.lifted if lifted else p.coords for p in points]


# ---------------------------------------------------------------------------
# small exact linear algebra


def _rref(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Reduced row echelon form (nonzero rows only)."""
    mat = [[Fraction(x) for x in r] for r in rows]
    top = 0
    for col in range(ncols):
        piv = next((r for r in range(top, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[top], mat[piv] = mat[piv], mat[top]
        lead = mat[top][col]
        mat[top] = [x / lead for x in mat[top]]
        for r in range(len(mat)):
            if r != top and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[top])]
        top += 1
    return mat[:top]


def _rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(_rref(rows, ncols)) if rows else 0


def _nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[int, ...]]:
    """Primitive integer basis of the rational nullspace, one vector per free column."""
    reduced = _rref(rows, ncols) if rows else []
    pivots = []
    for r in reduced:
        pivots.append(next(j for j, x in enumerate(r) if x != 0))
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r, pc in zip(reduced, pivots):
            vec[pc] = -r[free]
        basis.append(primitive(vec))
    return basis


def _project_out(vec: Sequence[Fraction], ortho: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Orthogonal projection of ``vec`` onto the complement of span(ortho) (ortho pairwise orthogonal)."""
    out = [Fraction(x) for x in vec]
    for o in ortho:
        oo = dot(o, o)
        f = dot(out, o) / oo
        if f:
            out = [a - f * b for a, b in zip(out, o)]
    return out


def _gram_schmidt(vectors: Sequence[Sequence]) -> list[list[Fraction]]:
    ortho: list[list[Fraction]] = []
    for v in vectors:
        w = _project_out(v, ortho)
        if any(w):
            ortho.append(w)
    return ortho


# ---------------------------------------------------------------------------
# dual cone by double description


def dual_cone(generators: Sequence[Sequence], dim: int) -> DualCone:
    """Dual cone ``{N : <g, N> >= 0 for all generators g}``.

    Returned as its extreme rays modulo the lineality space (primitive
    integer normals, projected orthogonally off the lineality and sorted) and
    a canonical basis of the lineality space itself, i.e. of the orthogonal
    complement of the generators' span.
    """
    for g in generators:
        if len(g) != dim:
            raise ValueError(f"generator {tuple(g)} has length {len(g)}, expected {dim}")
    lineality: list[list[Fraction]] = [
        [Fraction(int(i == j)) for j in range(dim)] for i in range(dim)
    ]
    rays: list[list[Fraction]] = []
    processed: list[list[Fraction]] = []

    for g in generators:
        a = [Fraction(x) for x in g]
        if not any(a):
            continue
        vals = [dot(a, l) for l in lineality]
        pivot = next((i for i, v in enumerate(vals) if v != 0), None)
        if pivot is not None:
            l0 = lineality[pivot]
            v0 = vals[pivot]
            if v0 < 0:
                l0 = [-x for x in l0]
                v0 = -v0
            lineality = [
                [x - (v / v0) * y for x, y in zip(l, l0)]
                for i, (l, v) in enumerate(zip(lineality, vals))
                if i != pivot
            ]
            rays = [[x - (dot(a, r) / v0) * y for x, y in zip(r, l0)] for r in rays]
            rays.append(l0)
        else:
            pos, zero, neg = [], [], []
            for r in rays:
                s = dot(a, r)
                (pos if s > 0 else neg if s < 0 else zero).append((r, s))
            new_rays = [r for r, _ in pos] + [r for r, _ in zero]
            target = dim - len(lineality) - 1
            for rp, sp in pos:
                for rn, sn in neg:
                    cand = [sp * x - sn * y for x, y in zip(rn, rp)]
                    tight = [c for c in processed if dot(c, cand) == 0]
                    tight.append(a)
                    if _rank(tight, dim) == target:
                        new_rays.append(cand)
            rays = new_rays
        processed.append(a)
        ortho = _gram_schmidt(lineality)
        seen = {}
        for r in rays:
            key = primitive(_project_out(r, ortho))
            if any(key):
                seen.setdefault(key, [Fraction(x) for x in key])
        rays = list(seen.values())

    ortho = _gram_schmidt(lineality)
    normals = sorted({primitive(_project_out(r, ortho)) for r in rays})
    lin_basis = tuple(_nullspace([g for g in generators], dim)) if lineality else ()
    return DualCone(tuple(normals), lin_basis)


# ---------------------------------------------------------------------------
# faces


def _face_dim(coords: Sequence[Sequence[int]], indices: Sequence[int], width: int) -> int:
    if not indices:
        return 0
    return rank_over_rationals(IntMatrix.from_columns([coords[i] for i in indices], width))


def enumerate_faces(points: Sequence[CharPoint], lifted: bool = False) -> list[Face]:
    """All index sets cut out by a nonzero supporting normal of the cone over ``points``.

    Each face carries a supporting normal whose zero set among the points is
    exactly the face. The whole index set appears only when the cone is not
    full-dimensional.
    """
    coords = _coords(points, lifted)
    width = len(coords[0])
    dc = dual_cone(coords, width)
    everything = tuple(range(len(coords)))

    faces: dict[tuple[int, ...], tuple[int, ...]] = {}
    for n in dc.normals:
        zero = tuple(i for i, x in enumerate(coords) if dot(x, n) == 0)
        updates = {zero: n}
        for f, fn in faces.items():
            meet = tuple(sorted(set(f) & set(zero)))
            if meet not in faces and meet not in updates:
                updates[meet] = tuple(a + b for a, b in zip(fn, n))
        for f, fn in updates.items():
            faces.setdefault(f, fn)
    if dc.lineality:
        faces.setdefault(everything, dc.lineality[0])

    return [
        Face(f, primitive(normal), _face_dim(coords, f, width))
        for f, normal in sorted(faces.items())
    ]


# ---------------------------------------------------------------------------
# Fourier-Motzkin feasibility with back-substitution


def _normalize(coeffs: Sequence[Fraction], rhs: Fraction) -> tuple[tuple[Fraction, ...], Fraction]:
    """Positive rescaling so that the largest |coefficient| is 1."""
    scale = max(abs(c) for c in coeffs)
    return tuple(c / scale for c in coeffs), rhs / scale


def _pick(lo: Fraction | None, hi: Fraction | None) -> Fraction:
    if (lo is None or lo <= 0) and (hi is None or hi >= 0):
        return Fraction(0)
    if lo is not None and lo > 0:
        c = Fraction(math.ceil(lo))
        return c if hi is None or c <= hi else lo
    f = Fraction(math.floor(hi))
    return f if lo is None or f >= lo else hi


def fm_solve(
    nvars: int,
    equalities: Sequence[tuple[Sequence, object]],
    inequalities: Sequence[tuple[Sequence, object]],
) -> list[Fraction] | None:
    """A point with ``a.x == b`` for every equality and ``a.x >= b`` for every inequality, or None."""
    eqs = [([Fraction(c) for c in a], Fraction(b)) for a, b in equalities]
    ineqs = [([Fraction(c) for c in a], Fraction(b)) for a, b in inequalities]
    for a, _ in eqs + ineqs:
        if len(a) != nvars:
            raise ValueError("constraint length does not match variable count")

    # Gaussian elimination of the equalities; substitution recorded for later.
    substitutions: list[tuple[int, list[Fraction], Fraction]] = []
    while eqs:
        a, b = eqs.pop(0)
        piv = next((j for j, c in enumerate(a) if c != 0), None)
        if piv is None:
            if b != 0:
                return None
            continue
        lead = a[piv]
        a = [c / lead for c in a]
        b = b / lead
        substitutions.append((piv, a, b))

        def subst(row, rhs):
            f = row[piv]
            if not f:
                return row, rhs
            return [x - f * y for x, y in zip(row, a)], rhs - f * b

        eqs = [subst(r, s) for r, s in eqs]
        ineqs = [subst(r, s) for r, s in ineqs]
    eliminated = {piv for piv, _, _ in substitutions}

    # Fourier-Motzkin; a derived row is dropped when its history is larger than
    # one plus the number of variables it has effectively eliminated (Imbert).
    supports = [frozenset(j for j, c in enumerate(a) if c) for a, _ in ineqs]
    system = {}
    for idx, (a, b) in enumerate(ineqs):
        if not any(a):
            if b > 0:
                return None
            continue
        key, rhs = _normalize(a, b)
        hist = frozenset([idx])
        if key not in system or rhs > system[key][0]:
            system[key] = (rhs, hist)

    stages: list[tuple[int, list[tuple[tuple[Fraction, ...], Fraction]]]] = []
    for var in range(nvars):
        if var in eliminated:
            continue
        involved = [(k, v) for k, v in system.items() if k[var] != 0]
        if not involved:
            continue
        stages.append((var, [(k, v[0]) for k, v in involved]))
        lower = [(k, v) for k, v in involved if k[var] > 0]
        upper = [(k, v) for k, v in involved if k[var] < 0]
        rest = {k: v for k, v in system.items() if k[var] == 0}
        for kl, (bl, hl) in lower:
            for ku, (bu, hu) in upper:
                hist = hl | hu
                fl, fu = kl[var], -ku[var]
                coeffs = [fu * x + fl * y for x, y in zip(kl, ku)]
                rhs = fu * bl + fl * bu
                if not any(coeffs):
                    if rhs > 0:
                        return None
                    continue
                touched = frozenset().union(*(supports[h] for h in hist))
                gone = sum(1 for j in touched if coeffs[j] == 0)
                if len(hist) > gone + 1:
                    continue
                key, nrhs = _normalize(coeffs, rhs)
                old = rest.get(key)
                if old is None or nrhs > old[0] or (nrhs == old[0] and len(hist) < len(old[1])):
                    rest[key] = (nrhs, hist)
        system = rest
    if system:
        raise AssertionError("unresolved constraints after elimination")

    x = [Fraction(0)] * nvars
    for var, rows in reversed(stages):
        lo = hi = None
        for k, b in rows:
            others = sum((k[j] * x[j] for j in range(nvars) if j != var), Fraction(0))
            bound = (b - others) / k[var]
            if k[var] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None and lo > hi:
            raise AssertionError("back-substitution produced an empty interval")
        x[var] = _pick(lo, hi)
    for piv, a, b in reversed(substitutions):
        x[piv] = b - sum((a[j] * x[j] for j in range(nvars) if j != piv), Fraction(0))
    return x


# ---------------------------------------------------------------------------
# admissibility


def admissible_normal(
    points: Sequence[CharPoint], subset, lifted: bool = False
) -> tuple[int, ...] | None:
    """Primitive R with last entry < 0, zero on ``subset`` and positive elsewhere, if any."""
    coords = _coords(points, lifted)
    subset = set(subset)
    if not subset <= set(range(len(coords))):
        raise ValueError("subset refers to unknown point indices")
    width = len(coords[0])
    last = [Fraction(0)] * (width - 1) + [Fraction(-1)]
    eqs = [(c, 0) for i, c in enumerate(coords) if i in subset]
    ineqs = [(c, 1) for i, c in enumerate(coords) if i not in subset] + [(last, 1)]
    sol = fm_solve(width, eqs, ineqs)
    if sol is None:
        return None
    normal = primitive(sol)
    values = [dot(c, normal) for c in coords]
    assert normal[-1] < 0
    assert all((v == 0) == (i in subset) and v >= 0 for i, v in enumerate(values))
    return normal


def argmin_normal(points: Sequence[CharPoint], subset) -> tuple[tuple[int, ...], int] | None:
    """Polytope reading: R with last entry < 0 whose minimum over the points is attained exactly on ``subset``.

    Returns ``(R, level)`` scaled jointly to primitive integers, where ``level``
    is the minimum value. Works on unlifted points with an extra offset variable.
    """
    coords = _coords(points, False)
    subset = set(subset)
    if not subset or not subset <= set(range(len(coords))):
        raise ValueError("subset must be a nonempty set of known point indices")
    width = len(coords[0])
    # variables: R (width entries), then the level m
    eqs = [((*c, -1), 0) for i, c in enumerate(coords) if i in subset]
    ineqs = [((*c, -1), 1) for i, c in enumerate(coords) if i not in subset]
    ineqs.append(((*([0] * (width - 1)), -1, 0), 1))
    sol = fm_solve(width + 1, eqs, ineqs)
    if sol is None:
        return None
    scaled = primitive(sol)
    normal, level = scaled[:-1], scaled[-1]
    values = [dot(c, normal) for c in coords]
    assert normal[-1] < 0 and min(values) == level
    assert all((v == level) == (i in subset) for i, v in enumerate(values))
    return normal, level


def inclusion_maximal(sets):
    sets = [frozenset(s) for s in sets]
    return [s for s in sets if not any(s < t for t in sets)]


def maximal_admissible_faces(points: Sequence[CharPoint], lifted: bool = False) -> list[Face]:
    """Inclusion-maximal admissible faces, each with a witness normal."""
    coords = _coords(points, lifted)
    width = len(coords[0])
    admissible = {}
    for face in enumerate_faces(points, lifted):
        normal = admissible_normal(points, face.indices, lifted)
        if normal is not None:
            admissible[face.indices] = normal
    keep = inclusion_maximal(admissible)
    out = []
    for s in keep:
        idx = tuple(sorted(s))
        out.append(Face(idx, admissible[idx], _face_dim(coords, idx, width)))
    return sorted(out, key=lambda f: f.indices)
