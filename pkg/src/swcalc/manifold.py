"""The validated input datum: topology, intersection form, basic classes."""

from dataclasses import dataclass
from fractions import Fraction

from .lattice import (
    CohClass,
    IntegralLattice,
    block_signature,
    is_characteristic,
    pairing,
    square,
)


@dataclass(frozen=True)
class BasicClassEntry:
    """A basic class k together with its integer invariant value."""

    k: CohClass
    sw: int


@dataclass(frozen=True)
class FourManifold:
    name: str
    chi: int
    sigma: int
    b_plus: int
    form: IntegralLattice
    basic_classes: tuple[BasicClassEntry, ...]
    assume_conjecture: bool = True


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.ok)


def validate(m: FourManifold) -> ValidationReport:
    """Run every internal-consistency check; failures are reported, not raised."""
    checks = []

    def check(name, ok, detail=""):
        checks.append(CheckResult(name, bool(ok), detail))

    rank = m.form.rank
    check("b_plus", m.b_plus > 1, f"b_plus = {m.b_plus}, must exceed 1")
    check("euler_number", m.chi == 2 + rank,
          f"chi = {m.chi}, form rank = {rank}, need chi = 2 + rank")
    mod4_ok = (m.chi + m.sigma) % 4 == 0
    check("chi_plus_sigma_mod_4", mod4_ok,
          f"chi + sigma = {m.chi + m.sigma}, must be 0 mod 4")
    check("signature", m.sigma == 2 * m.b_plus - rank,
          f"sigma = {m.sigma}, expected {2 * m.b_plus - rank} from b_plus and rank")
    form_sig = block_signature(m.form)
    check("form_signature", m.sigma == form_sig,
          f"sigma = {m.sigma}, but the block form has signature {form_sig}")

    st = 2 * m.chi + 3 * m.sigma
    seen = {}
    for idx, entry in enumerate(m.basic_classes):
        label = f"basic_classes[{idx}]"
        check(f"{label}.sw_nonzero", entry.sw != 0, "sw must be nonzero")
        if len(entry.k.coords) != rank:
            check(f"{label}.coords_length", False,
                  f"coords length {len(entry.k.coords)} != rank {rank}")
            continue
        check(f"{label}.coords_length", True, "")
        if entry.k.coords in seen:
            check(f"{label}.distinct", False, f"duplicate class {list(entry.k.coords)}")
        else:
            seen[entry.k.coords] = entry.sw
        check(f"{label}.characteristic", is_characteristic(m.form, entry.k),
              f"class {list(entry.k.coords)} is not characteristic")
        sq = square(m.form, entry.k)
        check(f"{label}.sw_simple_type", sq == st,
              f"k.k = {sq}, simple type requires {st}")

    if mod4_ok:
        eps = -1 if ((m.chi + m.sigma) // 4) % 2 else 1
        ok = True
        detail = ""
        for coords, sw in seen.items():
            neg = tuple(-x for x in coords)
            partner = seen.get(neg)
            if partner != eps * sw:
                ok = False
                detail = (f"entry ({list(coords)}, {sw}) needs partner "
                          f"({list(neg)}, {eps * sw}), found {partner}")
                break
        check("conjugation_symmetry", ok, detail)

    return ValidationReport(tuple(checks))


def characteristic_number_of(chi: int, sigma: int) -> Fraction:
    return Fraction(-(7 * chi + 11 * sigma), 4)


def holomorphic_euler_of(chi: int, sigma: int) -> Fraction:
    return Fraction(chi + sigma, 4)


def c1_squared_of(chi: int, sigma: int) -> int:
    return 2 * chi + 3 * sigma


def characteristic_number(m: FourManifold) -> Fraction:
    """The invariant -(7*chi + 11*sigma)/4, equal to chi_h - c1^2."""
    c = characteristic_number_of(m.chi, m.sigma)
    assert c == holomorphic_euler_of(m.chi, m.sigma) - c1_squared_of(m.chi, m.sigma)
    return c


def holomorphic_euler(m: FourManifold) -> Fraction:
    return holomorphic_euler_of(m.chi, m.sigma)


def c1_squared(m: FourManifold) -> int:
    return c1_squared_of(m.chi, m.sigma)


def basic_class_count(m: FourManifold) -> int:
    """Number of basic classes up to sign; the zero class counts once."""
    orbits = set()
    for entry in m.basic_classes:
        neg = tuple(-x for x in entry.k.coords)
        orbits.add(max(entry.k.coords, neg))
    return len(orbits)


def basic_class_set(m: FourManifold) -> tuple[CohClass, ...]:
    return tuple(e.k for e in m.basic_classes)


def orthogonality_defect(m: FourManifold, lam: CohClass):
    """First basic class not orthogonal to lam, or None."""
    for entry in m.basic_classes:
        if pairing(m.form, lam, entry.k) != 0:
            return entry.k
    return None
