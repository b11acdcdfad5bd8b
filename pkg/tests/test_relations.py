"""Depth/index parameters, relation formula, vanishing pipelines, region."""

import dataclasses
import json
import math
import random
from fractions import Fraction

import pytest

from swcalc.errors import (
    AbundanceUndetermined,
    ConjectureNotAssumed,
    HypothesisViolation,
    InadmissibleParity,
    LambdaNotOrthogonal,
    NotCharacteristic,
)
from swcalc.lattice import (
    CohClass,
    DiagonalBlock,
    HyperbolicBlock,
    E8Block,
    IntegralLattice,
    characteristic_vector,
    pairing,
    square,
)
from swcalc.manifest import parse_manifest
from swcalc.manifold import BasicClassEntry, FourManifold, characteristic_number
from swcalc.relations import (
    RelationQuery,
    VERDICT_FAIL,
    VERDICT_PASS,
    VERDICT_PASS_VACUOUS,
    Window,
    basic_class_bound,
    degree_admissible,
    depth_value,
    dswrel_value,
    dvanish_applies,
    dvanish_theorem_check,
    i_lambda,
    index_value,
    level_and_index,
    r_lambda,
    region_data,
    sst_check,
)
from swcalc.series import Direction, jet_expand, sw_series, twist

H = IntegralLattice.from_blocks([HyperbolicBlock()])


def unit(rank, i):
    return CohClass.unit(rank, i)


def test_depth_index_examples(catalog):
    k3 = catalog["K3"]
    lam = 2 * unit(22, 0) - 2 * unit(22, 1)  # square -8
    assert r_lambda(k3, lam) == 2 == i_lambda(k3, lam)
    assert characteristic_number(k3) == 2


def test_depth_index_at_shifted_square():
    # square -(chi+sigma)+4 gives (c-4, c+4)
    rng = random.Random(31)
    for _ in range(200):
        chi = rng.randint(-100, 100)
        sigma = rng.randint(-100, 100)
        sigma -= (chi + sigma) % 4
        c = Fraction(-(7 * chi + 11 * sigma), 4)
        sq = -(chi + sigma) + 4
        assert depth_value(chi, sigma, sq) == c - 4
        assert index_value(chi, sigma, sq) == c + 4


def test_depth_plus_index_is_twice_c():
    rng = random.Random(37)
    for _ in range(300):
        chi = rng.randint(-100, 100)
        sigma = rng.randint(-100, 100)
        sq = rng.randint(-60, 60)
        c = Fraction(-(7 * chi + 11 * sigma), 4)
        assert depth_value(chi, sigma, sq) + index_value(chi, sigma, sq) == 2 * c


def test_depth_equals_index_iff_central_square():
    rng = random.Random(41)
    for _ in range(300):
        chi = rng.randint(-50, 50)
        sigma = rng.randint(-50, 50)
        sq = rng.randint(-40, 40)
        equal = depth_value(chi, sigma, sq) == index_value(chi, sigma, sq)
        assert equal == (sq == -(chi + sigma))


def test_level_and_index_e4(catalog):
    e4 = catalog["E4"]
    k = CohClass((2,) + (0,) * 45)
    u, v = unit(46, 2), unit(46, 3)
    lam16 = 2 * u - 4 * v
    data = level_and_index(e4, lam16, 4, k)
    assert data.level == 0 and data.dirac_index == 0
    assert data.level_is_integral
    lam12 = 2 * u - 3 * v
    data = level_and_index(e4, lam12, 0, k)
    assert data.level == 0 and data.dirac_index == 2
    assert data.p1_prime == data.p1 + 4 * data.level


def test_level_and_index_orthogonality_error(catalog):
    e4 = catalog["E4"]
    k = CohClass((2,) + (0,) * 45)
    with pytest.raises(LambdaNotOrthogonal):
        level_and_index(e4, unit(46, 1), 0, k)


def test_degree_admissible_k3(catalog):
    k3 = catalog["K3"]
    w0 = CohClass.zero(22)
    admissible = [d for d in range(9) if degree_admissible(k3, w0, d)]
    assert admissible == [2, 6]


def test_degree_admissible_zero_topology():
    m = FourManifold("flat", 0, 0, 1, H, ())
    w0 = CohClass.zero(2)
    admissible = [d for d in range(9) if degree_admissible(m, w0, d)]
    assert admissible == [0, 4, 8]


def test_degree_admissible_e4_odd_w(catalog):
    e4 = catalog["E4"]
    w = 2 * unit(46, 0) - unit(46, 1)  # w.w = -4
    admissible = [d for d in range(9) if degree_admissible(e4, w, d)]
    assert admissible == [0, 4, 8]


def test_dvanish_applies(catalog):
    e4 = catalog["E4"]
    u, v = unit(46, 2), unit(46, 3)
    lam = 2 * u - 4 * v  # square -16, r = i = 4
    assert dvanish_applies(e4, lam, 3)
    assert not dvanish_applies(e4, lam, 4)
    k3 = catalog["K3"]
    lam8 = 2 * unit(22, 0) - 2 * unit(22, 1)
    assert dvanish_applies(k3, lam8, 1)


def test_dvanish_applies_needs_conjecture(catalog):
    e4 = dataclasses.replace(catalog["E4"], assume_conjecture=False)
    lam = 2 * unit(46, 2) - 4 * unit(46, 3)
    with pytest.raises(ConjectureNotAssumed):
        dvanish_applies(e4, lam, 3)


def test_relation_query_invariant():
    with pytest.raises(HypothesisViolation):
        RelationQuery(CohClass((0, 0)), CohClass((0, 0)), 1, 1)


def test_dswrel_e4_spot_zero(catalog):
    # lambda = 2e-3g in the second hyperbolic block, w = 2e-g, delta = m = 0
    e4 = catalog["E4"]
    u, v = unit(46, 2), unit(46, 3)
    lam = 2 * u - 3 * v
    w = 2 * u - v
    value = dswrel_value(e4, RelationQuery(w, lam, 0, 0))
    assert value.is_zero()
    assert r_lambda(e4, lam) == 0 and i_lambda(e4, lam) == 8


def test_dswrel_e4_nonzero_spot(catalog):
    # lambda of square -14 puts the boundary at delta = 2; by hand the
    # signed sum collapses to -2 <f, h>^2
    e4 = catalog["E4"]
    u, v = unit(46, 2), unit(46, 3)
    lam = u - 7 * v
    value = dswrel_value(e4, RelationQuery(lam, lam, 2, 0))
    assert value.min_total_degree() == 2
    d = Direction.of([0, 1] + [0] * 44)  # <f, d> = 1
    assert value.evaluate(d) == -2
    d2 = Direction.of([0, Fraction(3, 2)] + [0] * 44)
    assert value.evaluate(d2) == Fraction(-9, 2)


def test_dswrel_point_insertion_changes_sign_only(catalog):
    # at delta = 2, m = 1 the monomial degree drops to zero and the value
    # is the plain signed sum, which vanishes for the catalog data
    e4 = catalog["E4"]
    u, v = unit(46, 2), unit(46, 3)
    lam = u - 7 * v
    value = dswrel_value(e4, RelationQuery(lam, lam, 2, 1))
    assert value.is_zero()


def test_dswrel_hypothesis_violations(catalog):
    e4 = catalog["E4"]
    u, v = unit(46, 2), unit(46, 3)
    lam = 2 * u - 3 * v  # r = 0
    w = 2 * u - v
    with pytest.raises(HypothesisViolation) as e:
        dswrel_value(e4, RelationQuery(w, lam, 2, 0))
    assert e.value.precondition == "delta_equals_r_lambda"
    g = unit(46, 1)  # pairs with the fiber classes
    with pytest.raises(HypothesisViolation) as e:
        dswrel_value(e4, RelationQuery(w, g, 0, 0))
    assert e.value.precondition == "lambda_in_basic_class_complement"
    with pytest.raises(HypothesisViolation) as e:
        dswrel_value(e4, RelationQuery(w + unit(46, 2), lam, 0, 0))
    assert e.value.precondition == "w_minus_lambda_characteristic"


def test_dswrel_needs_conjecture(catalog):
    e4 = dataclasses.replace(catalog["E4"], assume_conjecture=False)
    u, v = unit(46, 2), unit(46, 3)
    with pytest.raises(ConjectureNotAssumed):
        dswrel_value(e4, RelationQuery(2 * u - v, 2 * u - 3 * v, 0, 0))


def test_dswrel_inadmissible_parity():
    # odd square for lam forces a half-integer exponent somewhere
    lat = IntegralLattice.from_blocks([DiagonalBlock((1, -1))])
    m = FourManifold("odd", 4, -4, 0, lat, (), True)
    lam = CohClass((2, 1))  # square 3, r = 1, i = 7
    w = lam + CohClass((1, 1))
    assert r_lambda(m, lam) == 1 and i_lambda(m, lam) == 7
    with pytest.raises(InadmissibleParity):
        dswrel_value(m, RelationQuery(w, lam, 1, 0))


def jet_oracle(m, w, lam, delta, mm):
    """Relation value recomputed through the twisted-jet route."""
    c = characteristic_number(m)
    d = delta - 2 * mm
    tw = twist(sw_series(m, w), lam, -1)
    jet = jet_expand(tw, d).homogeneous_part(d)
    lam_sq = square(m.form, lam)
    sign_exp = mm - 1 + lam_sq // 2 - pairing(m.form, lam, w)
    sign = -1 if sign_exp % 2 else 1
    scale = Fraction(2) ** int(1 - (c + delta) / 2) * sign * math.factorial(d)
    return jet.scale(scale)


def relation_grid(m, block_units, squares_by_delta, fiber):
    """Valid (w, lam, delta, mm) queries built inside one hyperbolic block."""
    u, v = block_units
    out = []
    for delta, squares in squares_by_delta.items():
        for a, b in squares:
            lam = a * u + b * v
            for w in (lam, lam + 2 * fiber):
                for mm in range(delta // 2 + 1):
                    out.append((w, lam, delta, mm))
    return out


def test_dswrel_matches_jet_oracle_e4_e6(catalog):
    grids = {
        "E4": {0: [(1, -6), (2, -3), (3, -2), (6, -1)], 2: [(1, -7), (7, -1)]},
        "E6": {0: [(1, -9), (3, -3), (9, -1)], 2: [(1, -10), (2, -5), (5, -2), (10, -1)]},
    }
    for name, squares in grids.items():
        m = catalog[name]
        rank = m.form.rank
        fiber = unit(rank, 0)
        queries = relation_grid(m, (unit(rank, 2), unit(rank, 3)), squares, fiber)
        assert queries
        for w, lam, delta, mm in queries:
            assert r_lambda(m, lam) == delta
            value = dswrel_value(m, RelationQuery(w, lam, delta, mm))
            oracle = jet_oracle(m, w, lam, delta, mm)
            assert value.variables == oracle.variables
            assert value.coefficients == oracle.coefficients


def test_dswrel_oracle_on_synthetic_manifolds():
    # random simple-type data over the E4 topology with two isotropic
    # class directions, so the relation polynomial is genuinely
    # multivariate; the formula route must match the jet route exactly
    from swcalc.manifold import validate

    rng = random.Random(53)
    form = IntegralLattice.from_blocks([HyperbolicBlock()] * 7 + [E8Block(-1)] * 4)
    lam_coeffs = [(1, -7), (7, -1), (-1, 7), (-7, 1)]
    for _ in range(20):
        units = rng.sample([unit(46, i) for i in range(4)], k=2)
        entries = []
        for u in units:
            s = rng.choice([1, 2, 3, -1, -2])
            entries.append(BasicClassEntry(2 * u, s))
            entries.append(BasicClassEntry(-2 * u, s))
        m = FourManifold("synthetic", 48, -32, 7, form, tuple(entries))
        assert validate(m).passed
        a, b = rng.choice(lam_coeffs)
        lam = a * unit(46, 4) + b * unit(46, 5)  # square -14: r = 2, i = 6
        assert r_lambda(m, lam) == 2 and i_lambda(m, lam) == 6
        t = CohClass(tuple(rng.randint(-1, 1) for _ in range(46)))
        w = lam + 2 * t
        for mm in (0, 1):
            value = dswrel_value(m, RelationQuery(w, lam, 2, mm))
            oracle = jet_oracle(m, w, lam, 2, mm)
            assert value.variables == oracle.variables
            assert value.coefficients == oracle.coefficients


def test_dswrel_cross_lambda_consistency_e6(catalog):
    # congruent classes with the same square give the same polynomial
    e6 = catalog["E6"]
    u, v = unit(70, 2), unit(70, 3)
    pairs = [
        (1 * u - 9 * v, 9 * u - 1 * v, 0),
        (1 * u - 10 * v, 5 * u - 2 * v, 2),   # hmm: (1,-10) vs (5,-2) both odd,even
        (1 * u - 11 * v, 11 * u - 1 * v, 4),
    ]
    eval_grid = [
        Direction.of([0, a] + [b, c] + [0] * 66)
        for a in range(3) for b in range(3) for c in range(3)
    ]
    for lam, lam2, delta in pairs:
        assert (lam - lam2).is_even()
        assert square(e6.form, lam) == square(e6.form, lam2)
        w = lam
        for mm in range(delta // 2 + 1):
            val1 = dswrel_value(e6, RelationQuery(w, lam, delta, mm))
            val2 = dswrel_value(e6, RelationQuery(w, lam2, delta, mm))
            for d in eval_grid:
                assert val1.evaluate(d) == val2.evaluate(d)


def test_dswrel_e6_quartic_value(catalog):
    # hand computation: the square -22 class at delta = 4 gives -24 <f,h>^4
    e6 = catalog["E6"]
    u, v = unit(70, 2), unit(70, 3)
    lam = u - 11 * v
    value = dswrel_value(e6, RelationQuery(lam, lam, 4, 0))
    d = Direction.of([0, 1] + [0] * 68)
    assert value.evaluate(d) == -24


def test_dswrel_empty_support_is_zero_polynomial():
    # no basic classes: the signed sum is empty for any admissible query.
    # K3 topology with the support erased keeps the datum consistent.
    form = IntegralLattice.from_blocks([HyperbolicBlock()] * 3 + [E8Block(-1)] * 2)
    m = FourManifold("empty", 24, -16, 3, form, (), True)
    lam = CohClass((1, -3) + (0,) * 20)  # square -6, r = 0, i = 4
    assert r_lambda(m, lam) == 0 and i_lambda(m, lam) == 4
    value = dswrel_value(m, RelationQuery(lam, lam, 0, 0))
    assert value.is_zero()
    assert value.variables == ()


def test_sign_identity_sampled(catalog):
    rng = random.Random(43)
    for name, m in catalog.items():
        rank = m.form.rank
        w2 = characteristic_vector(m.form)
        for _ in range(40):
            lam = CohClass(tuple(rng.randint(-2, 2) for _ in range(rank)))
            uu = CohClass(tuple(rng.randint(-1, 1) for _ in range(rank)))
            w = lam + w2 + 2 * uu
            lhs = square(m.form, lam) - 2 * pairing(m.form, lam, w)
            rhs = m.sigma - square(m.form, w)
            assert (lhs - rhs) % 8 == 0


def test_sst_k3_vacuous(catalog):
    report = sst_check(catalog["K3"], CohClass.zero(22))
    assert report.verdict == VERDICT_PASS_VACUOUS
    assert report.c == 2


def test_sst_e4_sharp(catalog):
    report = sst_check(catalog["E4"], CohClass.zero(46))
    assert report.verdict == VERDICT_PASS
    assert report.order.kind == "exact" and report.order.value == 2
    assert report.required_order == 2
    assert (report.r0, report.i0) == (4, 4)
    assert (report.r1, report.i1) == (0, 8)
    assert len(report.entries) == 1
    entry = report.entries[0]
    assert entry.d == 0 and entry.m == 0 and entry.delta == 0
    assert entry.vanishing_applies and entry.relation_is_zero


def test_sst_e4_user_supplied_pair(catalog):
    e4 = catalog["E4"]
    u, v = unit(46, 2), unit(46, 3)
    report = sst_check(e4, CohClass.zero(46),
                       lambda0=u - 8 * v, lambda1=u - 6 * v)
    assert report.verdict == VERDICT_PASS


def test_sst_rejects_bad_user_pair(catalog):
    e4 = catalog["E4"]
    u, v = unit(46, 2), unit(46, 3)
    with pytest.raises(HypothesisViolation):
        sst_check(e4, CohClass.zero(46), lambda0=u - 7 * v, lambda1=u - 6 * v)
    with pytest.raises(HypothesisViolation):
        sst_check(e4, CohClass.zero(46), lambda0=2 * u - 4 * v, lambda1=2 * u - 3 * v)


def test_sst_not_characteristic(catalog):
    with pytest.raises(NotCharacteristic):
        sst_check(catalog["E4"], unit(46, 0))


def test_sst_needs_conjecture(catalog):
    e4 = dataclasses.replace(catalog["E4"], assume_conjecture=False)
    with pytest.raises(ConjectureNotAssumed):
        sst_check(e4, CohClass.zero(46))


def test_sst_corrupted_e4(fixtures_dir):
    manifest = parse_manifest((fixtures_dir / "e4_corrupted.json").read_text())
    m = manifest.to_manifold()
    from swcalc.manifold import validate

    assert validate(m).passed
    report = sst_check(m, CohClass.zero(46))
    assert report.verdict == VERDICT_FAIL
    assert report.order == dataclasses.replace(report.order, kind="exact", value=0)
    assert not report.entries[0].relation_is_zero


def test_sst_abundance_undetermined():
    # all seven hyperbolic blocks are consumed by basic classes, leaving a
    # negative definite complement
    rank = 46
    classes = []
    for i in range(14):
        for s in (2, -2):
            coords = [0] * rank
            coords[i] = s
            classes.append({"coords": coords, "sw": 1})
    manifest = parse_manifest(json.dumps({
        "schema_version": 1,
        "name": "E4-rigid",
        "chi": 48, "sigma": -32, "b_plus": 7,
        "form": [{"type": "H"}] * 7 + [{"type": "E8", "sign": -1}] * 4,
        "basic_classes": classes,
        "assume_conjecture": True,
    }))
    m = manifest.to_manifold()
    from swcalc.manifold import validate

    assert validate(m).passed
    with pytest.raises(AbundanceUndetermined):
        sst_check(m, CohClass.zero(rank))


def test_sst_all_catalog(catalog):
    for name, m in catalog.items():
        w = characteristic_vector(m.form)
        report = sst_check(m, w)
        assert report.verdict in (VERDICT_PASS, VERDICT_PASS_VACUOUS), name


def test_dvanish_e4_trace(catalog, fixtures_dir):
    e4 = catalog["E4"]
    report = dvanish_theorem_check(e4, CohClass.zero(46))
    expected = json.loads((fixtures_dir / "e4_dvanish_trace.json").read_text())
    assert report.trace_dict() == expected


def test_dvanish_e3_case_four_empty_sweep(catalog):
    e3 = catalog["E3"]
    f = CohClass((1, 1) + (0,) * 32)
    report = dvanish_theorem_check(e3, f)
    assert report.verdict == VERDICT_PASS
    assert report.case_mod_8 == 4
    assert report.admissible_d == ()
    assert report.r == -1 and report.i == 7


def test_dvanish_e5_relation_route(catalog):
    e5 = catalog["E5"]
    f = CohClass((1, 1) + (0,) * 56)
    report = dvanish_theorem_check(e5, f)
    assert report.verdict == VERDICT_PASS
    assert report.case_mod_8 == 4
    assert report.admissible_d == (1,)
    assert [(e.d, e.m, e.route) for e in report.entries] == [(1, 0, "relation")]


def test_dvanish_k3_trivial(catalog):
    report = dvanish_theorem_check(catalog["K3"], CohClass.zero(22))
    assert report.verdict == VERDICT_PASS
    assert report.admissible_d == ()


def test_bound_e6(catalog):
    report = basic_class_bound(catalog["E6"])
    assert report.applicable
    assert report.b == 3
    assert report.strict_holds is False
    assert report.nonstrict_holds is True
    assert report.verdict == VERDICT_FAIL
    assert basic_class_bound(catalog["E6"], strict=False).verdict == VERDICT_PASS
    # slope bound: 0 >= 6 - 6 - 1
    assert report.slope_lhs == 0 and report.slope_rhs == -1 and report.slope_holds


def test_bound_e3(catalog):
    report = basic_class_bound(catalog["E3"])
    assert report.b == 1
    assert report.strict_holds is False
    assert report.nonstrict_holds is False  # 1 < 3/2
    assert report.slope_lhs == 0 and report.slope_rhs == 0 and report.slope_holds


def test_bound_empty_support():
    m = FourManifold("empty", 4, 0, 2, H, ())
    report = basic_class_bound(m)
    assert not report.applicable
    assert report.verdict == VERDICT_PASS_VACUOUS


def test_region_k3(catalog):
    k3 = catalog["K3"]
    w0 = CohClass.zero(22)
    region = region_data(k3, w0)
    assert region.intersection == (-8, 2)
    assert region.contains(-8, 1)
    assert not region.contains(-8, 2)
    assert region.triangle == (
        (Fraction(-10), Fraction(0)), (Fraction(-8), Fraction(2)), (Fraction(-6), Fraction(0))
    )
    # brute-force enumeration oracle over the window
    win = region.window
    expected = []
    for lam_sq in range(win.lam_min, win.lam_max + 1):
        for delta in range(win.delta_min, win.delta_max + 1):
            if (2 * delta + 2 * 0 + 12) % 8 == 0 and (lam_sq - 0 + 16) % 4 == 0:
                expected.append((lam_sq, delta))
    assert list(region.marked) == expected
    assert all(p[0] % 8 == 0 for p in region.white)
    assert set(region.white) == {p for p in region.marked if p[0] % 8 == 0}


def test_region_e4_window(catalog):
    e4 = catalog["E4"]
    w0 = CohClass.zero(46)
    region = region_data(e4, w0, Window(-24, -8, 0, 8))
    assert region.intersection == (-16, 4)
    expected = []
    for lam_sq in range(-24, -7):
        for delta in range(0, 9):
            if (2 * delta + 24) % 8 == 0 and (lam_sq + 32) % 4 == 0:
                expected.append((lam_sq, delta))
    assert list(region.marked) == expected
