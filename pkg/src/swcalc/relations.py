"""Executable relations between the basic-class data and Donaldson degrees.

The two governing quantities for a class lam are

    r(lam) = -lam.lam - (11*chi + 15*sigma)/4     (depth parameter)
    i(lam) =  lam.lam - (3*chi + 7*sigma)/4       (index parameter)

They satisfy r + i = 2c where c is the characteristic number, and they
agree exactly when lam.lam = -(chi+sigma).  Degrees delta strictly below
both force vanishing of the degree-delta invariants; delta = r(lam) with
delta < i(lam) gives an explicit finite formula, implemented here as an
exact homogeneous polynomial.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AbundanceUndetermined,
    ConjectureNotAssumed,
    HypothesisViolation,
    InadmissibleParity,
    LambdaNotOrthogonal,
    NonIntegralC,
    NotCharacteristic,
)
from .lattice import (
    CohClass,
    HyperbolicPair,
    construct_abundance_classes,
    find_hyperbolic_pair,
    is_characteristic,
    orthogonal_complement,
    pairing,
    square,
)
from .manifold import (
    FourManifold,
    basic_class_count,
    basic_class_set,
    characteristic_number,
    c1_squared,
    holomorphic_euler,
    orthogonality_defect,
)
from .series import Jet, _span_reduce, sw_series, vanishing_order

VERDICT_PASS = "pass"
VERDICT_PASS_VACUOUS = "pass-vacuous"
VERDICT_FAIL = "fail"
VERDICT_UNDETERMINED = "undetermined"


def depth_value(chi: int, sigma: int, lam_square: int) -> Fraction:
    return Fraction(-(11 * chi + 15 * sigma), 4) - lam_square


def index_value(chi: int, sigma: int, lam_square: int) -> Fraction:
    return Fraction(-(3 * chi + 7 * sigma), 4) + lam_square


def r_lambda(m: FourManifold, lam: CohClass) -> Fraction:
    return depth_value(m.chi, m.sigma, square(m.form, lam))


def i_lambda(m: FourManifold, lam: CohClass) -> Fraction:
    return index_value(m.chi, m.sigma, square(m.form, lam))


@dataclass(frozen=True)
class LevelData:
    """Level and index bookkeeping for one (lam, delta) choice."""

    p1: int
    p1_prime: int
    level: Fraction
    dirac_index: Fraction

    @property
    def level_is_integral(self) -> bool:
        return self.level.denominator == 1


def level_and_index(m: FourManifold, lam: CohClass, delta: int, k: CohClass) -> LevelData:
    """Stratum level (delta - r)/4 and Dirac index (i - delta)/4 for lam.

    Requires lam orthogonal to every basic class.  A non-integral level is
    reported in the result, not raised; it signals an inadmissible
    combination rather than bad input.
    """
    defect = orthogonality_defect(m, lam)
    if defect is not None:
        raise LambdaNotOrthogonal(
            f"lam pairs nontrivially with basic class {list(defect.coords)}"
        )
    three_quarters = Fraction(3 * (m.chi + m.sigma), 4)
    p1 = -delta - three_quarters
    if p1.denominator != 1:
        raise HypothesisViolation("chi_plus_sigma_mod_4", "3(chi+sigma)/4 not integral")
    lam_sq = square(m.form, lam)
    p1_prime = square(m.form, k - lam)
    expected = 2 * m.chi + 3 * m.sigma + lam_sq
    if p1_prime != expected:
        raise HypothesisViolation(
            "simple_type_orthogonality",
            f"(k-lam).(k-lam) = {p1_prime}, expected {expected}",
        )
    r = depth_value(m.chi, m.sigma, lam_sq)
    i = index_value(m.chi, m.sigma, lam_sq)
    level = (delta - r) / 4
    dirac = (i - delta) / 4
    data = LevelData(int(p1), p1_prime, level, dirac)
    assert Fraction(data.p1_prime) == data.p1 + 4 * data.level
    assert data.level + data.dirac_index == (i - r) / 4
    return data


def degree_admissible(m: FourManifold, w: CohClass, delta: int) -> bool:
    """Mod-8 degree rule: 2*delta = -2*w.w - (3/2)(chi+sigma) (mod 8)."""
    rhs = -2 * square(m.form, w) - 3 * (m.chi + m.sigma) // 2
    return (2 * delta - rhs) % 8 == 0


def dvanish_applies(m: FourManifold, lam: CohClass, delta: int) -> bool:
    """True when delta < r(lam) and delta < i(lam), under the conjecture flag."""
    if not m.assume_conjecture:
        raise ConjectureNotAssumed(
            "the vanishing branch is conditional on the multiplicity conjecture"
        )
    return delta < r_lambda(m, lam) and delta < i_lambda(m, lam)


@dataclass(frozen=True)
class RelationQuery:
    """Query for the degree-(delta-2m) invariant with m point insertions."""

    w: CohClass
    lam: CohClass
    delta: int
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise HypothesisViolation("m_nonnegative", f"m = {self.m}")
        if self.delta < 2 * self.m:
            raise HypothesisViolation(
                "delta_at_least_2m", f"delta = {self.delta}, m = {self.m}"
            )

    @property
    def d(self) -> int:
        return self.delta - 2 * self.m


def _linear_form_power(row, d: int, width: int):
    """(sum_j row[j] * x_j)^d as a dict of exponent multi-indices.

    Computed by repeated polynomial multiplication, not by multinomial
    coefficients; the jet expander provides an independent route.
    """
    poly = {(0,) * width: Fraction(1)}
    base = {}
    for j, c in enumerate(row):
        if c:
            key = tuple(1 if t == j else 0 for t in range(width))
            base[key] = c
    for _ in range(d):
        nxt: dict[tuple[int, ...], Fraction] = {}
        for a, ca in poly.items():
            for b, cb in base.items():
                key = tuple(x + y for x, y in zip(a, b))
                v = nxt.get(key, Fraction(0)) + ca * cb
                if v:
                    nxt[key] = v
                else:
                    nxt.pop(key, None)
        poly = nxt
        if not poly:
            break
    return poly


def dswrel_value(m: FourManifold, q: RelationQuery) -> Jet:
    """The exact degree-(delta-2m) homogeneous polynomial in h.

    Value: 2^(1-(c+delta)/2) * (-1)^(m-1+lam.lam/2-lam.w) *
    sum over basic classes of the signed invariant times <k-lam, h>^(delta-2m).
    The sign prefactor is cross-checked against (-1)^((sigma-w.w)/2).
    """
    if not m.assume_conjecture:
        raise ConjectureNotAssumed(
            "the relation formula is conditional on the multiplicity conjecture"
        )
    defect = orthogonality_defect(m, q.lam)
    if defect is not None:
        raise HypothesisViolation(
            "lambda_in_basic_class_complement",
            f"lam pairs with basic class {list(defect.coords)}",
        )
    if not is_characteristic(m.form, q.w - q.lam):
        raise HypothesisViolation(
            "w_minus_lambda_characteristic", "w - lam is not an integral lift of w2"
        )
    r = r_lambda(m, q.lam)
    i = i_lambda(m, q.lam)
    if q.delta != r:
        raise HypothesisViolation("delta_equals_r_lambda", f"delta = {q.delta}, r = {r}")
    if not q.delta < i:
        raise HypothesisViolation("delta_below_i_lambda", f"delta = {q.delta}, i = {i}")

    c = characteristic_number(m)
    if (c + q.delta) % 2 != 0:
        raise InadmissibleParity(f"(c + delta)/2 = {(c + q.delta) / 2} is not an integer")
    lam_sq = square(m.form, q.lam)
    lam_dot_w = pairing(m.form, q.lam, q.w)
    if lam_sq % 2:
        raise InadmissibleParity(f"lam.lam = {lam_sq} is odd")
    sign_exp = q.m - 1 + lam_sq // 2 - lam_dot_w

    wsq = square(m.form, q.w)
    assert (m.sigma - wsq) % 2 == 0
    assert (lam_sq // 2 - lam_dot_w - (m.sigma - wsq) // 2) % 2 == 0
    assert (lam_sq - 2 * lam_dot_w - (m.sigma - wsq)) % 8 == 0

    prefactor = Fraction(2) ** int(1 - (c + q.delta) / 2)
    if sign_exp % 2:
        prefactor = -prefactor

    shifted = []
    for entry in m.basic_classes:
        e = wsq + pairing(m.form, entry.k, q.w)
        if e % 2:
            raise InadmissibleParity(f"w.w + k.w = {e} is odd")
        sign = -1 if (e // 2) % 2 else 1
        shifted.append((Fraction(sign * entry.sw), entry.k - q.lam))

    # merge and sort exactly as the series engine does, so that both
    # routes agree on the variable basis
    merged: dict[tuple[int, ...], Fraction] = {}
    for coeff, k in shifted:
        merged[k.coords] = merged.get(k.coords, Fraction(0)) + coeff
    ordered = [(merged[cs], CohClass(cs)) for cs in sorted(merged) if merged[cs] != 0]

    classes = [k for _, k in ordered]
    pivots, rows = _span_reduce(m.form, classes, classes)
    width = len(pivots)
    d = q.d
    coeffs: dict[tuple[int, ...], Fraction] = {}
    for (coeff, _), row in zip(ordered, rows):
        for alpha, v in _linear_form_power(row, d, width).items():
            total = coeffs.get(alpha, Fraction(0)) + coeff * v * prefactor
            if total:
                coeffs[alpha] = total
            else:
                coeffs.pop(alpha, None)
    return Jet(m.form, pivots, coeffs, d)


def _resolve_pair(m: FourManifold, radius: int) -> HyperbolicPair:
    complement = orthogonal_complement(m.form, basic_class_set(m))
    pair = find_hyperbolic_pair(complement, radius)
    if pair is None:
        raise AbundanceUndetermined(
            f"no hyperbolic pair found in the basic-class complement at radius {radius}"
        )
    return pair


def _require_characteristic(m: FourManifold, w: CohClass, with_mod8: bool):
    if not is_characteristic(m.form, w):
        raise NotCharacteristic(f"w = {list(w.coords)} is not an integral lift of w2")
    if with_mod8 and (square(m.form, w) - m.sigma) % 8 != 0:
        raise NotCharacteristic(
            f"w.w = {square(m.form, w)} is not congruent to sigma = {m.sigma} mod 8"
        )


def _verify_supplied_pair(m, lambda0, lambda1):
    cs = m.chi + m.sigma
    if square(m.form, lambda0) != -cs:
        raise HypothesisViolation("lambda0_square", f"need {-cs}")
    if square(m.form, lambda1) != -cs + 4:
        raise HypothesisViolation("lambda1_square", f"need {-cs + 4}")
    if not (lambda0 - lambda1).is_even():
        raise HypothesisViolation("lambda0_lambda1_congruent_mod_2", "")
    for lam, name in ((lambda0, "lambda0"), (lambda1, "lambda1")):
        defect = orthogonality_defect(m, lam)
        if defect is not None:
            raise HypothesisViolation(
                f"{name}_in_basic_class_complement",
                f"pairs with {list(defect.coords)}",
            )


@dataclass(frozen=True)
class SstEntry:
    d: int
    m: int
    delta: int
    vanishing_applies: bool
    relation_value: Jet
    relation_is_zero: bool


@dataclass(frozen=True)
class SstReport:
    verdict: str
    manifold: str
    w: CohClass
    c: Fraction
    required_order: int | None
    order: object | None  # VanishingOrder, absent in the vacuous branch
    lambda0: CohClass | None
    lambda1: CohClass | None
    r0: Fraction | None = None
    i0: Fraction | None = None
    r1: Fraction | None = None
    i1: Fraction | None = None
    entries: tuple[SstEntry, ...] = ()
    notes: tuple[str, ...] = ()


def sst_check(
    m: FourManifold,
    w: CohClass,
    lambda0: CohClass | None = None,
    lambda1: CohClass | None = None,
    radius: int = 3,
    cap: int | None = None,
) -> SstReport:
    """Test the superconformal vanishing bound and replay its derivation.

    Verdict is pass-vacuous when c - 3 < 0.  Otherwise the series must
    vanish to order at least c - 2.  The trace pins, for every m >= 0
    with d = c - 4 - 2m >= 0, the vanishing branch for the square
    -(chi+sigma) class and the explicit relation sum for the square
    -(chi+sigma)+4 class; each relation sum is asserted to be the zero
    polynomial.
    """
    if not m.assume_conjecture:
        raise ConjectureNotAssumed("the vanishing bound is conditional on the conjecture")
    _require_characteristic(m, w, with_mod8=True)
    c = characteristic_number(m)
    if c.denominator != 1:
        raise NonIntegralC(f"characteristic number {c} is not an integer")
    notes = []
    if c - 3 < 0:
        return SstReport(
            VERDICT_PASS_VACUOUS, m.name, w, c, None, None, None, None,
            notes=(f"c = {c}: c - 3 < 0, nothing to check",),
        )
    c_int = int(c)
    required = c_int - 2
    cap = c_int + 4 if cap is None else cap
    series = sw_series(m, w)
    order = vanishing_order(series, cap)

    if (lambda0 is None) != (lambda1 is None):
        raise HypothesisViolation("lambda_pair_supplied_together", "")
    if lambda0 is None:
        pair = _resolve_pair(m, radius)
        classes = construct_abundance_classes(pair, m.chi, m.sigma)
        lambda0, lambda1 = classes.lambda0, classes.lambda1
    _verify_supplied_pair(m, lambda0, lambda1)

    r0, i0 = r_lambda(m, lambda0), i_lambda(m, lambda0)
    r1, i1 = r_lambda(m, lambda1), i_lambda(m, lambda1)
    assert r0 == c == i0
    assert r1 == c - 4 and i1 == c + 4

    entries = []
    all_zero = True
    delta = c_int - 4
    mm = 0
    while c_int - 4 - 2 * mm >= 0:
        d = c_int - 4 - 2 * mm
        applies = dvanish_applies(m, lambda0, delta)
        query = RelationQuery(w + lambda1, lambda1, delta, mm)
        value = dswrel_value(m, query)
        # prefactor consistency: 2^(1-(c+delta)/2) == 2^(1-(c+d)/2-m)
        assert 1 - (c_int + delta) // 2 == 1 - (c_int + d) // 2 - mm
        is_zero = value.is_zero()
        all_zero = all_zero and is_zero and applies
        entries.append(SstEntry(d, mm, delta, applies, value, is_zero))
        mm += 1

    ok = order.satisfies(required) and all_zero
    if not order.satisfies(required):
        notes.append(f"series vanishing order {order} is below required {required}")
    if not all_zero:
        notes.append("a relation sum failed to vanish; data inconsistent with the conjectures")
    return SstReport(
        VERDICT_PASS if ok else VERDICT_FAIL,
        m.name, w, c, required, order, lambda0, lambda1,
        r0, i0, r1, i1, tuple(entries), tuple(notes),
    )


@dataclass(frozen=True)
class DvanishEntry:
    d: int
    m: int
    route: str  # "vanishing" or "relation"
    value_is_zero: bool


@dataclass(frozen=True)
class DvanishReport:
    verdict: str
    manifold: str
    w: CohClass
    c: Fraction
    case_mod_8: int
    case_label: str
    lam: CohClass
    lam_square: int
    r: Fraction
    i: Fraction
    d_max: int
    admissible_d: tuple[int, ...]
    w_shift_sign: int
    entries: tuple[DvanishEntry, ...]
    notes: tuple[str, ...]

    def trace_dict(self) -> dict:
        """Deterministic trace for fixture comparison and reports."""
        return {
            "manifold": self.manifold,
            "w": list(self.w.coords),
            "case_mod_8": self.case_mod_8,
            "case": self.case_label,
            "c": str(self.c),
            "lambda": list(self.lam.coords),
            "lambda_square": self.lam_square,
            "r_lambda": str(self.r),
            "i_lambda": str(self.i),
            "d_max": self.d_max,
            "admissible_d": list(self.admissible_d),
            "w_shift_sign": self.w_shift_sign,
            "entries": [
                {"d": e.d, "m": e.m, "route": e.route, "value": "0" if e.value_is_zero else "nonzero"}
                for e in self.entries
            ],
            "verdict": self.verdict,
        }


def dvanish_theorem_check(m: FourManifold, w: CohClass, radius: int = 3) -> DvanishReport:
    """Replay the degree-sweep vanishing argument for all d <= c - 1.

    Splits on -(chi+sigma) mod 8.  In the 0 case a single all-even class
    of square -(chi+sigma) covers every admissible degree through the
    vanishing branch; in the 4 case degrees up to c-8 use the vanishing
    branch and d = c-4 is settled by the explicit relation sum, which is
    asserted to vanish.
    """
    if not m.assume_conjecture:
        raise ConjectureNotAssumed("the vanishing sweep is conditional on the conjecture")
    _require_characteristic(m, w, with_mod8=False)
    c = characteristic_number(m)
    if c.denominator != 1:
        raise NonIntegralC(f"characteristic number {c} is not an integer")
    c_int = int(c)
    case = (-(m.chi + m.sigma)) % 8
    if case not in (0, 4):
        raise HypothesisViolation("chi_plus_sigma_mod_4", f"-(chi+sigma) = {case} mod 8")
    case_label = f"-(chi+sigma) = {case} (mod 8)"

    pair = _resolve_pair(m, radius)
    classes = construct_abundance_classes(pair, m.chi, m.sigma)
    lam = classes.lambda_even
    lam_sq = square(m.form, lam)
    expected_sq = -(m.chi + m.sigma) if case == 0 else -(m.chi + m.sigma) + 4
    assert lam_sq == expected_sq and lam.is_even()
    r = r_lambda(m, lam)
    i = i_lambda(m, lam)
    w_shift_sign = -1 if (lam_sq // 4) % 2 else 1

    d_max = c_int - 1
    admissible = [d for d in range(0, max(d_max + 1, 0)) if degree_admissible(m, w, d)]
    entries = []
    notes = []
    all_ok = True
    for d in admissible:
        for mm in range(0, d // 2 + 1):
            if d < r and d < i:
                applies = dvanish_applies(m, lam, d)
                entries.append(DvanishEntry(d, mm, "vanishing", applies))
                all_ok = all_ok and applies
            elif d == r:
                query = RelationQuery(w + lam, lam, d, mm)
                value = dswrel_value(m, query)
                # prefactor rewrite with the monomial degree d - 2m
                assert 1 - (c_int + d) // 2 == 1 - (c_int + (d - 2 * mm)) // 2 - mm
                is_zero = value.is_zero()
                entries.append(DvanishEntry(d, mm, "relation", is_zero))
                all_ok = all_ok and is_zero
            else:
                entries.append(DvanishEntry(d, mm, "uncovered", False))
                notes.append(f"degree d = {d} not covered by either branch")
                all_ok = False
    return DvanishReport(
        VERDICT_PASS if all_ok else VERDICT_FAIL,
        m.name, w, c, case, case_label, lam, lam_sq, r, i,
        d_max, tuple(admissible), w_shift_sign, tuple(entries), tuple(notes),
    )


@dataclass(frozen=True)
class BoundReport:
    applicable: bool
    b: int
    c: Fraction
    strict_holds: bool | None
    nonstrict_holds: bool | None
    slope_lhs: int | None   # c1^2
    slope_rhs: Fraction | None  # chi_h - 2b - 1
    slope_holds: bool | None
    verdict: str
    notes: tuple[str, ...]


def basic_class_bound(m: FourManifold, strict: bool = True) -> BoundReport:
    """Count bound b > c/2 (or >= with strict=False) and the slope bound.

    The slope inequality is evaluated exactly as printed,
    c1^2 >= chi_h - 2b - 1, which is weaker than the direct rearrangement
    c1^2 > chi_h - 2b of the count bound; the discrepancy is noted.
    """
    b = basic_class_count(m)
    c = characteristic_number(m)
    notes = ("the printed slope bound is weaker than the rearranged count bound by 2",)
    if b == 0:
        return BoundReport(
            False, 0, c, None, None, None, None, None,
            VERDICT_PASS_VACUOUS, notes + ("no basic classes: hypothesis b > 0 fails",),
        )
    strict_holds = b > c / 2
    nonstrict_holds = b >= c / 2
    lhs = c1_squared(m)
    rhs = holomorphic_euler(m) - 2 * b - 1
    slope_holds = lhs >= rhs
    chosen = strict_holds if strict else nonstrict_holds
    return BoundReport(
        True, b, c, strict_holds, nonstrict_holds, lhs, rhs, slope_holds,
        VERDICT_PASS if chosen else VERDICT_FAIL, notes,
    )


@dataclass(frozen=True)
class Window:
    lam_min: int
    lam_max: int
    delta_min: int
    delta_max: int


@dataclass(frozen=True)
class RegionDescription:
    """The admissible-degree picture in the (lam.lam, delta) plane."""

    chi: int
    sigma: int
    c: Fraction
    w_square: int
    w_characteristic: bool
    intercept_r: Fraction  # r(lam.lam) = -lam.lam + intercept_r
    intercept_i: Fraction  # i(lam.lam) =  lam.lam + intercept_i
    intersection: tuple[int, Fraction]
    triangle: tuple[tuple[Fraction, Fraction], ...]
    window: Window
    delta_congruence: int  # marked deltas are this value mod 4
    lam_congruence: int    # marked squares are this value mod 4
    marked: tuple[tuple[int, int], ...]
    white: tuple[tuple[int, int], ...]

    def r_at(self, lam_square) -> Fraction:
        return -lam_square + self.intercept_r

    def i_at(self, lam_square) -> Fraction:
        return lam_square + self.intercept_i

    def contains(self, lam_square, delta) -> bool:
        return delta < self.r_at(lam_square) and delta < self.i_at(lam_square)


def default_window(m: FourManifold) -> Window:
    c = characteristic_number(m)
    center = -(m.chi + m.sigma)
    half = int(c) + 4 if c.denominator == 1 else 8
    return Window(center - half, center + half, 0, max(int(c) + 4, 4))


def region_data(m: FourManifold, w: CohClass, window: Window | None = None) -> RegionDescription:
    if window is None:
        window = default_window(m)
    c = characteristic_number(m)
    intercept_r = Fraction(-(11 * m.chi + 15 * m.sigma), 4)
    intercept_i = Fraction(-(3 * m.chi + 7 * m.sigma), 4)
    intersection = (-(m.chi + m.sigma), c)
    triangle = (
        (Fraction(intercept_r), Fraction(0)),
        (Fraction(intersection[0]), Fraction(c)),
        (Fraction(-intercept_i), Fraction(0)),
    )
    wsq = square(m.form, w)
    w_char = is_characteristic(m.form, w)
    rhs = -2 * wsq - 3 * (m.chi + m.sigma) // 2
    delta_cong = (rhs // 2) % 4 if rhs % 2 == 0 else -1
    lam_cong = (wsq - m.sigma) % 4
    marked = []
    white = []
    for lam_sq in range(window.lam_min, window.lam_max + 1):
        if lam_sq % 4 != lam_cong:
            continue
        for delta in range(window.delta_min, window.delta_max + 1):
            if (2 * delta - rhs) % 8 != 0:
                continue
            marked.append((lam_sq, delta))
            if w_char and lam_sq % 8 == 0:
                white.append((lam_sq, delta))
    # the r-line passes through (intercept_r, 0): triangle vertex order is
    # left foot, apex, right foot
    tri = tuple(sorted(triangle, key=lambda p: p[0]))
    return RegionDescription(
        m.chi, m.sigma, c, wsq, w_char, intercept_r, intercept_i,
        intersection, tri, window, delta_cong, lam_cong,
        tuple(marked), tuple(white),
    )
