"""Independent evidence for the criterion: curve limits, standard vectors, torus orbits.

None of this decides anything on its own. ``curve_limit`` evaluates limits
``lim_{t->0} gamma(t) v`` for curves in the Borel subgroup written in normal
form, ``standard_vector`` produces the points those limits land on for
generic parameters, and ``sample_survey`` counts how many torus orbits a
handful of standard vectors fall into.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .criterion import ComponentSpec, ProblemSpec
from .errors import InputError
from .geometry import CharPoint, admissible_normal, inclusion_maximal
from .lattice import IntMatrix, kernel_basis
from .numbers import ONE, ZERO, GaussianRational, dot

MAX_BRUTE_FORCE_POINTS = 12


# ---------------------------------------------------------------------------
# binary forms


@dataclass(frozen=True)
class BinaryForm:
    """``sum_j coeffs[j] * x^(n-j) * y^j`` with ``n = len(coeffs) - 1``."""

    coeffs: tuple[GaussianRational, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def monomial(cls, coeff, x_exp: int, y_exp: int) -> "BinaryForm":
        coeffs = [ZERO] * (x_exp + y_exp + 1)
        coeffs[y_exp] = GaussianRational.coerce(coeff)
        return cls(tuple(coeffs))

    @classmethod
    def linear(cls, a, b) -> "BinaryForm":
        """``a x + b y``."""
        return cls((GaussianRational.coerce(a), GaussianRational.coerce(b)))

    @classmethod
    def from_component(cls, comp: ComponentSpec) -> "BinaryForm":
        """``x^(n - e(inf)) * prod (a x + y)^e(a)``."""
        form = cls.monomial(ONE, comp.degree - comp.e_infinity, 0)
        for a, mult in comp.roots:
            for _ in range(mult):
                form = form * cls.linear(a, ONE)
        return form

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return BinaryForm(tuple(out))

    def scale(self, c) -> "BinaryForm":
        c = GaussianRational.coerce(c)
        return BinaryForm(tuple(c * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_monomial(self) -> tuple[GaussianRational, int, int] | None:
        """``(coefficient, x-exponent, y-exponent)`` if exactly one term is nonzero."""
        nz = [j for j, c in enumerate(self.coeffs) if c]
        if len(nz) != 1:
            return None
        j = nz[0]
        return self.coeffs[j], self.degree - j, j

    def __str__(self) -> str:
        terms = []
        n = self.degree
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "*".join(
                s for s in (
                    f"x^{n - j}" if n - j > 1 else "x" if n - j == 1 else "",
                    f"y^{j}" if j > 1 else "y" if j == 1 else "",
                ) if s
            )
            coef = str(c)
            if c.im and c.re:
                coef = f"({coef})"
            terms.append(f"{coef}*{mono}" if mono else coef)
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# curves and their limits


@dataclass(frozen=True)
class CurveSpec:
    """``(t^r_1, ..., t^r_k, [[t^p, c h(t) t^q], [0, t^-p]])``; ``h`` lists coefficients from t^0 up."""

    r: tuple[int, ...]
    p: int
    q: int = 0
    c: GaussianRational = ZERO
    h: tuple[GaussianRational, ...] = (GaussianRational(-1),)

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        object.__setattr__(self, "c", GaussianRational.coerce(self.c))
        h = [GaussianRational.coerce(x) for x in self.h]
        while len(h) > 1 and not h[-1]:
            h.pop()
        object.__setattr__(self, "h", tuple(h))
        if self.c:
            if not self.q < -self.p:
                raise InputError(f"normal form needs q < -p when c != 0 (p={self.p}, q={self.q})")
            if not h or h[0] != GaussianRational(-1):
                raise InputError("normal form needs h(0) = -1")
            if len(h) - 1 >= -self.p - self.q:
                raise InputError(f"normal form needs deg h < -p-q = {-self.p - self.q}")

    @property
    def case(self) -> int:
        if not self.c:
            return 1 if self.p == 0 else 2 if self.p > 0 else 3
        if self.p == self.q:
            return 4 if len(self.h) == 1 else 5
        return 6 if self.p > self.q else 7

    def lowest_h_term(self) -> tuple[int, GaussianRational]:
        """First nonconstant nonzero term ``(l, h_l)`` of ``h``; only meaningful when h is not -1."""
        for l, coef in enumerate(self.h[1:], start=1):
            if coef:
                return l, coef
        raise ValueError("h is constant")


@dataclass(frozen=True)
class LimitVector:
    """Per-component limit: ``None`` for a vanishing component, else its limiting form.

    ``exponents`` are the leading t-exponents (after the projective shift), and
    ``rescale`` records ``(base, denominator)`` when the torus element that turns
    the limit into a standard vector involves ``base^(m/denominator)``.
    """

    entries: tuple[BinaryForm | None, ...]
    exponents: tuple[int, ...]
    divergent: bool
    case: int
    rescale: tuple[GaussianRational, int] | None = None


def root_product(comp: ComponentSpec, d: GaussianRational) -> GaussianRational:
    """``prod_{a != d} (a - d)^e(a)``."""
    out = ONE
    for a, mult in comp.roots:
        if a != d:
            out = out * (a - d) ** mult
    return out


def _leading_term(comp: ComponentSpec, pairing: int, curve: CurveSpec) -> tuple[int, BinaryForm]:
    n, e_inf = comp.degree, comp.e_infinity
    p, q, c = curve.p, curve.q, curve.c
    case = curve.case
    if case == 1:
        return pairing, BinaryForm.from_component(comp)
    if case == 2:
        return pairing - 2 * p * e_inf, BinaryForm.monomial(ONE, n - e_inf, e_inf)
    if case == 3:
        e0 = comp.multiplicity(ZERO)
        return pairing - 2 * p * e0, BinaryForm.monomial(root_product(comp, ZERO), n - e0, e0)
    if case == 4:
        ec = comp.multiplicity(c)
        return pairing - 2 * p * ec, BinaryForm.monomial(root_product(comp, c), n - ec, ec)
    if case == 5:
        l, h_l = curve.lowest_h_term()
        ec = comp.multiplicity(c)
        return pairing + l * ec, BinaryForm.monomial((c * h_l) ** ec * root_product(comp, c), n, 0)
    if case == 6:
        return pairing + (q - p) * e_inf, BinaryForm.monomial((-c) ** e_inf, n, 0)
    e0 = comp.multiplicity(ZERO)
    return pairing + (q - p) * e0, BinaryForm.monomial((-c) ** e0 * root_product(comp, ZERO), n, 0)


def curve_limit(spec: ProblemSpec, curve: CurveSpec, projective: bool | None = None) -> LimitVector:
    """Limit of ``gamma(t) v`` as t -> 0 (of the line through it when projective)."""
    if projective is None:
        projective = spec.mode == "projective"
    if len(curve.r) != spec.k:
        raise InputError(f"curve has {len(curve.r)} torus exponents, expected k={spec.k}")
    R = (*curve.r, curve.p)
    terms = [_leading_term(comp, dot((*comp.character, comp.degree), R), curve) for comp in spec.components]
    exps = [e for e, _ in terms]
    if projective:
        shift = min(exps)
        exps = [e - shift for e in exps]
    divergent = any(e < 0 for e in exps)
    entries = tuple(form if e == 0 else None for e, (_, form) in zip(exps, terms))

    rescale = None
    if curve.case == 5:
        l, h_l = curve.lowest_h_term()
        rescale = (curve.c * h_l, l)
    elif curve.case in (6, 7):
        rescale = (-curve.c, curve.q - curve.p)
    return LimitVector(entries, tuple(exps), divergent, curve.case, rescale)


# ---------------------------------------------------------------------------
# standard vectors and torus orbits


@dataclass(frozen=True)
class StandardVector:
    face: tuple[int, ...]
    d: GaussianRational | None  # None stands for the point at infinity
    values: tuple[GaussianRational, ...]


def standard_vector(spec: ProblemSpec, face, d: GaussianRational | None) -> StandardVector:
    """Coefficients ``p_i(d)`` of ``v(d, R) = (p_i(d) x^n_i)_{i in face}``."""
    face = tuple(sorted(face))
    if d is None:
        return StandardVector(face, None, tuple(ONE for _ in face))
    d = GaussianRational.coerce(d)
    values = []
    for i in face:
        comp = spec.components[i]
        if comp.multiplicity(d):
            raise InputError(f"d = {d} is a root of component {i}")
        values.append(root_product(comp, d))
    return StandardVector(face, d, tuple(values))


def _monomial_value(x: Sequence[GaussianRational], beta: Sequence[int]) -> GaussianRational:
    out = ONE
    for xi, b in zip(x, beta):
        if b:
            out = out * xi ** b
    return out


def torus_equivalent(x, y, characters: IntMatrix, homogenize: bool = False) -> bool:
    """Whether ``x`` and ``y`` lie in one orbit of the torus acting through the given columns."""
    x = [GaussianRational.coerce(v) for v in x]
    y = [GaussianRational.coerce(v) for v in y]
    if len(x) != len(y) or len(x) != characters.ncols:
        raise InputError("tuples and character matrix disagree in length")
    if not all(x) or not all(y):
        raise InputError("torus orbit test needs entrywise nonzero tuples")
    if homogenize:
        characters = IntMatrix(characters.entries + ((1,) * characters.ncols,), characters.ncols)
    for beta in kernel_basis(characters).vectors:
        if _monomial_value(x, beta) != _monomial_value(y, beta):
            return False
    return True


@dataclass(frozen=True)
class SurveyEvidence:
    infinite: bool
    classes: int
    sample: tuple[GaussianRational, ...]


def default_sample(spec: ProblemSpec, face, size: int = 8) -> list[GaussianRational]:
    """The first ``size`` positive integers that are not roots of any face component."""
    roots = {r for i in face for r, _ in spec.components[i].roots}
    out = []
    n = 1
    while len(out) < size:
        g = GaussianRational(n)
        if g not in roots:
            out.append(g)
        n += 1
    return out


def sample_survey(spec: ProblemSpec, face, sample=None, size: int = 8) -> SurveyEvidence:
    """Partition standard vectors over ``sample`` into torus-orbit classes.

    Two or more classes is evidence of infinitely many orbits, one class of
    finitely many.
    """
    face = tuple(sorted(face))
    if not face:
        raise InputError("sample_survey needs a nonempty face")
    if sample is None:
        sample = default_sample(spec, face, size)
    sample = [GaussianRational.coerce(d) for d in sample]
    if len(set(sample)) != len(sample):
        raise InputError("sample values must be pairwise distinct")
    if not sample:
        raise InputError("empty sample")
    columns = [(*spec.components[i].character, spec.components[i].degree) for i in face]
    chars = IntMatrix.from_columns(columns, spec.k + 1)
    homogenize = spec.mode == "projective"
    reps: list[StandardVector] = []
    for d in sample:
        sv = standard_vector(spec, face, d)
        if not any(torus_equivalent(sv.values, r.values, chars, homogenize) for r in reps):
            reps.append(sv)
    return SurveyEvidence(len(reps) >= 2, len(reps), tuple(sample))


# ---------------------------------------------------------------------------
# brute-force admissible faces


def brute_force_admissible(points: Sequence[CharPoint], lifted: bool = False) -> list[tuple[int, ...]]:
    """Inclusion-maximal admissible index sets, by testing every subset."""
    s = len(points)
    if s > MAX_BRUTE_FORCE_POINTS:
        raise InputError(f"refusing to brute-force {s} > {MAX_BRUTE_FORCE_POINTS} points")
    feasible = [
        subset
        for size in range(s + 1)
        for subset in combinations(range(s), size)
        if admissible_normal(points, subset, lifted) is not None
    ]
    return sorted(tuple(sorted(f)) for f in inclusion_maximal(feasible))
