"""Input validation and derived scalar invariants."""

import dataclasses
import random

from swcalc.lattice import CohClass, HyperbolicBlock, E8Block, IntegralLattice
from swcalc.manifold import (
    BasicClassEntry,
    FourManifold,
    basic_class_count,
    c1_squared,
    c1_squared_of,
    characteristic_number,
    characteristic_number_of,
    holomorphic_euler,
    holomorphic_euler_of,
    validate,
)


def failed_names(m):
    return {c.name.split(".")[-1] for c in validate(m).failures()}


def test_catalog_entries_validate(catalog):
    for name, m in catalog.items():
        report = validate(m)
        assert report.passed, (name, report.failures())


def test_k3_chi_corruption(catalog):
    m = dataclasses.replace(catalog["K3"], chi=25)
    names = failed_names(m)
    assert "euler_number" in names
    assert "chi_plus_sigma_mod_4" in names


def test_k3_single_field_corruptions(catalog):
    k3 = catalog["K3"]
    mutations = (
        dataclasses.replace(k3, chi=k3.chi + 4),     # euler_number
        dataclasses.replace(k3, sigma=k3.sigma + 4),  # signature
        dataclasses.replace(k3, sigma=k3.sigma + 1),  # mod 4 and signature
        dataclasses.replace(k3, b_plus=k3.b_plus + 1),
        dataclasses.replace(
            k3, basic_classes=(BasicClassEntry(CohClass((1,) + (0,) * 21), 1),)
        ),  # not characteristic, wrong square
        dataclasses.replace(
            k3, basic_classes=(BasicClassEntry(CohClass.zero(22), 0),)
        ),  # sw = 0
    )
    for mutant in mutations:
        assert not validate(mutant).passed


def test_conjugation_asymmetry_detected(catalog):
    # unequal values on a +- pair with chi_h even must fail
    e4 = catalog["E4"]
    f2 = CohClass((2,) + (0,) * 45)
    entries = (
        BasicClassEntry(f2, 1),
        BasicClassEntry(CohClass.zero(46), -2),
        BasicClassEntry(-f2, 2),
    )
    m = dataclasses.replace(e4, basic_classes=entries)
    assert "conjugation_symmetry" in failed_names(m)


def test_form_signature_mismatch_flagged():
    # topology claiming sigma = -8 over a signature -16 form
    form = IntegralLattice.from_blocks([HyperbolicBlock()] * 7 + [E8Block(-1)] * 2)
    m = FourManifold("skew", 32, -8, 12, form, ())
    assert "form_signature" in failed_names(m)


def test_non_simple_type_flagged():
    form = IntegralLattice.from_blocks([HyperbolicBlock()] * 3 + [E8Block(-1)] * 2)
    k = CohClass((2, 2) + (0,) * 20)  # k.k = 8 != 0 = 2chi+3sigma
    m = FourManifold("bad", 24, -16, 3, form,
                     (BasicClassEntry(k, 1), BasicClassEntry(-k, 1)))
    assert "sw_simple_type" in failed_names(m)


def test_duplicate_class_flagged(catalog):
    k3 = catalog["K3"]
    m = dataclasses.replace(
        k3,
        basic_classes=(BasicClassEntry(CohClass.zero(22), 1),
                       BasicClassEntry(CohClass.zero(22), 1)),
    )
    assert "distinct" in failed_names(m)


def test_characteristic_number_examples():
    assert characteristic_number_of(24, -16) == 2
    assert characteristic_number_of(0, 0) == 0
    assert characteristic_number_of(48, -32) == 4


def test_derived_scalar_examples(catalog):
    k3 = catalog["K3"]
    assert holomorphic_euler(k3) == 2
    assert c1_squared(k3) == 0
    e3 = catalog["E3"]
    assert holomorphic_euler(e3) == 3
    assert c1_squared(e3) == 0
    assert characteristic_number(e3) == 3


def test_characteristic_number_identity_random():
    # c = chi_h - c1^2 for every (chi, sigma), not only geometric ones
    rng = random.Random(5)
    for _ in range(500):
        chi = rng.randint(-300, 300)
        sigma = rng.randint(-300, 300)
        assert characteristic_number_of(chi, sigma) == (
            holomorphic_euler_of(chi, sigma) - c1_squared_of(chi, sigma)
        )


def test_basic_class_count(catalog):
    assert basic_class_count(catalog["K3"]) == 1
    assert basic_class_count(catalog["E3"]) == 1
    assert basic_class_count(catalog["E4"]) == 2
    assert basic_class_count(catalog["E5"]) == 2
    assert basic_class_count(catalog["E6"]) == 3


def test_basic_class_count_negation_invariance(catalog):
    for m in catalog.values():
        flipped = dataclasses.replace(
            m,
            basic_classes=tuple(
                BasicClassEntry(-e.k, e.sw) for e in m.basic_classes
            ),
        )
        assert basic_class_count(flipped) == basic_class_count(m)
