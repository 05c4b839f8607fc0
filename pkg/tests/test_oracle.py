import random
from collections import defaultdict
from fractions import Fraction

import pytest

from orbitclosure.criterion import ComponentSpec, ProblemSpec, decide, face_condition
from orbitclosure.errors import InputError
from orbitclosure.geometry import CharPoint, maximal_admissible_faces
from orbitclosure.lattice import IntMatrix
from orbitclosure.numbers import GaussianRational as G
from orbitclosure.oracle import (
    BinaryForm,
    CurveSpec,
    brute_force_admissible,
    curve_limit,
    sample_survey,
    standard_vector,
    torus_equivalent,
)
from randspec import ROOT_POOL, random_spec, random_specs

A, B, C, D, E = range(5)


# --- an independent expansion of gamma(t) v ---------------------------------------


def _mul(p, q):
    out = defaultdict(lambda: G(0))
    for (t1, y1), a in p.items():
        for (t2, y2), b in q.items():
            out[(t1 + t2, y1 + y2)] = out[(t1 + t2, y1 + y2)] + a * b
    return {k: v for k, v in out.items() if v}


def expand(comp, curve):
    """All terms of gamma(t) v_i as {(t-exponent, y-exponent): coefficient}."""
    p, q, c = curve.p, curve.q, curve.c
    poly = {(sum(a * b for a, b in zip(comp.character, curve.r)), 0): G(1)}
    for _ in range(comp.degree - comp.e_infinity):
        poly = _mul(poly, {(p, 0): G(1)})
    for a, mult in comp.roots:
        factor = defaultdict(lambda: G(0))
        factor[(p, 0)] += a
        if c:
            for j, hj in enumerate(curve.h):
                factor[(q + j, 0)] += c * hj
        factor[(-p, 1)] += G(1)
        factor = {k: v for k, v in factor.items() if v}
        for _ in range(mult):
            poly = _mul(poly, factor)
    return poly


def leading(comp, curve):
    poly = expand(comp, curve)
    low = min(t for t, _ in poly)
    coeffs = [G(0)] * (comp.degree + 1)
    for (t, y), v in poly.items():
        if t == low:
            coeffs[y] = v
    return low, BinaryForm(tuple(coeffs))


def random_curve(rng, k):
    r = tuple(rng.randint(-2, 2) for _ in range(k))
    if rng.random() < 0.3:
        return CurveSpec(r, rng.randint(-2, 2))
    p = rng.randint(-3, 1)
    q = rng.randint(p - 3, -p - 1)
    deg = rng.randint(0, -p - q - 1)
    h = [G(-1)] + [rng.choice([G(0), G(1), G(-2), G(0, 1)]) for _ in range(deg)]
    if rng.random() < 0.4:
        h = [G(-1)]
    c = rng.choice([x for x in ROOT_POOL if x] + [G(3)])
    return CurveSpec(r, p, q, c, tuple(h))


def test_case_formulas_match_expansion():
    rng = random.Random(2024)
    cases = set()
    for _ in range(400):
        spec = random_spec(rng, rng.choice(["affine", "projective"]), max_k=2)
        curve = random_curve(rng, spec.k)
        cases.add(curve.case)
        lim = curve_limit(spec, curve, projective=False)
        for comp, exp, entry in zip(spec.components, lim.exponents, lim.entries):
            want_exp, want_form = leading(comp, curve)
            assert exp == want_exp, (comp, curve)
            if exp == 0:
                assert entry == want_form, (comp, curve)
            else:
                assert entry is None
        assert lim.divergent == any(e < 0 for e in lim.exponents)
    assert cases == set(range(1, 8))


# --- curve_limit examples -----------------------------------------------------------


@pytest.mark.parametrize("d", [1, 2, 3])
def test_example1_limit(example1, d):
    curve = CurveSpec((-1,), -1, -1, G(d), (G(-1),))
    assert curve.case == 4
    lim = curve_limit(example1, curve, projective=True)
    want = [None, None,
            BinaryForm.monomial((d + 1) ** 2, 4, 0),
            BinaryForm.monomial(d * (d + 1), 3, 0),
            BinaryForm.monomial(1, 2, 0)]
    assert list(lim.entries) == want
    assert not lim.divergent


def test_identity_curve_gives_v(example1):
    lim = curve_limit(example1, CurveSpec((0,), 0), projective=False)
    assert lim.case == 1
    assert list(lim.entries) == [BinaryForm.from_component(c) for c in example1.components]


def test_single_component_pairing():
    spec = ProblemSpec(1, "affine", (ComponentSpec((1,), 1, {G(0): 1}),))
    lim = curve_limit(spec, CurveSpec((0,), 0))
    assert lim.entries == (BinaryForm.linear(0, 1),) and not lim.divergent
    lim = curve_limit(spec, CurveSpec((-1,), 0))
    assert lim.exponents == (-1,) and lim.divergent


def test_rescaling_is_reported_symbolically():
    spec = ProblemSpec(1, "projective", (ComponentSpec((1,), 2, {G(1): 1}),))
    lim = curve_limit(spec, CurveSpec((0,), 1, -3, G(2), (G(-1),)))
    assert lim.case == 6 and lim.rescale == (G(-2), -4)
    lim = curve_limit(spec, CurveSpec((0,), -2, -2, G(1), (G(-1), G(0), G(5))))
    assert lim.case == 5 and lim.rescale == (G(5), 2)


def test_curve_normal_form_is_enforced():
    with pytest.raises(InputError):
        CurveSpec((0,), -1, 1, G(1))  # q >= -p
    with pytest.raises(InputError):
        CurveSpec((0,), -1, -1, G(1), (G(1),))  # h(0) != -1
    with pytest.raises(InputError):
        CurveSpec((0,), -1, -1, G(1), (G(-1), G(0), G(1)))  # deg h >= -p-q
    spec = ProblemSpec(2, "affine", (ComponentSpec((1, 0), 1),))
    with pytest.raises(InputError):
        curve_limit(spec, CurveSpec((0,), 0))


def test_generic_case4_limit_is_standard_vector():
    rng = random.Random(77)
    checked = 0
    for _ in range(200):
        spec = random_spec(rng, "projective", max_k=2)
        r = tuple(rng.randint(-2, 2) for _ in range(spec.k))
        p = rng.randint(-3, -1)
        c = G(rng.randint(3, 9), rng.randint(0, 2))
        if any(comp.multiplicity(c) for comp in spec.components):
            continue
        lim = curve_limit(spec, CurveSpec(r, p, p, c, (G(-1),)), projective=True)
        face = [i for i, e in enumerate(lim.exponents) if e == 0]
        sv = standard_vector(spec, face, c)
        for i, val in zip(face, sv.values):
            assert lim.entries[i] == BinaryForm.monomial(val, spec.components[i].degree, 0)
        checked += 1
    assert checked > 100


# --- standard vectors ---------------------------------------------------------------


def test_standard_vectors_example1(example1):
    assert standard_vector(example1, (C, D, E), G(1)).values == (4, 2, 1)
    assert standard_vector(example1, (C, D, E), G(2)).values == (9, 6, 1)
    assert standard_vector(example1, (C, D, E), None).values == (1, 1, 1)
    with pytest.raises(InputError):
        standard_vector(example1, (C, D, E), G(0))


# --- torus orbits -------------------------------------------------------------------


def test_torus_equivalence_examples():
    chars = IntMatrix.from_rows([[2, 3, 4]])
    x, y = (G(4), G(2), G(1)), (G(9), G(6), G(1))
    assert torus_equivalent(x, x, chars, True)
    assert not torus_equivalent(x, y, chars, True)
    full = IntMatrix.identity(3)
    assert torus_equivalent(x, y, full)
    with pytest.raises(InputError):
        torus_equivalent((G(0), G(1), G(1)), y, chars)


def _act(x, chars, t, scalar=None):
    out = []
    for i, xi in enumerate(x):
        v = xi
        for r, tr in enumerate(t):
            v = v * tr ** chars.entries[r][i]
        if scalar is not None:
            v = v * scalar
        out.append(v)
    return tuple(out)


def test_torus_equivalence_is_an_equivalence_and_group_invariant():
    rng = random.Random(5)
    vals = [G(1), G(2), G(-3), G(Fraction(1, 2)), G(0, 1), G(1, 1)]
    for _ in range(150):
        m, n = rng.randint(1, 2), rng.randint(1, 4)
        chars = IntMatrix.from_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)])
        hom = rng.random() < 0.5
        x, y, z = ([rng.choice(vals) for _ in range(n)] for _ in range(3))
        assert torus_equivalent(x, x, chars, hom)
        assert torus_equivalent(x, y, chars, hom) == torus_equivalent(y, x, chars, hom)
        if torus_equivalent(x, y, chars, hom) and torus_equivalent(y, z, chars, hom):
            assert torus_equivalent(x, z, chars, hom)
        t = [rng.choice(vals) for _ in range(m)]
        moved = _act(x, chars, t, rng.choice(vals) if hom else None)
        assert torus_equivalent(x, moved, chars, hom)


# --- sampling survey -----------------------------------------------------------------


def test_survey_example1(example1):
    ev = sample_survey(example1, (C, D, E), [G(i) for i in range(1, 6)])
    assert ev.infinite and ev.classes >= 2
    ev = sample_survey(example1, (B, C), [G(i) for i in range(1, 6)])
    assert not ev.infinite and ev.classes == 1
    assert sample_survey(example1, (C, D, E), [G(1)]).classes == 1


def test_survey_default_sample_avoids_roots(example1):
    ev = sample_survey(example1, (C, D, E))
    assert len(ev.sample) == 8 and G(0) not in ev.sample and G(-1) not in ev.sample


def test_survey_rejects_bad_samples(example1):
    with pytest.raises(InputError):
        sample_survey(example1, (C, D, E), [G(1), G(1)])
    with pytest.raises(InputError):
        sample_survey(example1, (C, D, E), [G(-1)])


def test_passing_faces_give_one_class():
    for mode in ("affine", "projective"):
        for spec in random_specs(8, 60, mode):
            for rep in decide(spec).reports:
                ev = sample_survey(spec, rep.face.indices)
                assert ev.infinite == (not rep.passed)


# --- brute-force admissible faces ----------------------------------------------------


def test_brute_force_examples(example1):
    pts = example1.points()
    assert brute_force_admissible(pts, lifted=True) == [(B, C), (C, D, E)]
    assert brute_force_admissible(pts) == [(B,)]
    assert brute_force_admissible([CharPoint((), 3, 0)]) == []
    with pytest.raises(InputError):
        brute_force_admissible([CharPoint((), 1, i) for i in range(13)])


def test_brute_force_matches_face_enumeration():
    for mode in ("affine", "projective"):
        for spec in random_specs(19, 60, mode):
            lifted = mode == "projective"
            pts = spec.points()
            assert brute_force_admissible(pts, lifted) == [
                f.indices for f in maximal_admissible_faces(pts, lifted)
            ]
