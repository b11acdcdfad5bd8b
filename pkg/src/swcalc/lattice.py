"""Exact integer lattice arithmetic for intersection forms.

Everything here runs over plain Python integers (arbitrary precision) or
exact rationals; no floating point.  Lattices are described by symmetric
Gram matrices assembled from standard blocks: the rank-two hyperbolic
block, the E8 form with a sign, and diagonal blocks.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .errors import DimensionMismatch, NoCharacteristicVector, ParityError

# E8 Cartan matrix: chain 0-1-2-3-4-5-6 with node 7 attached to node 4
# (arm lengths 4, 2, 1 from the trivalent node).  Even, determinant 1.
E8_GRAM = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, 0),
    (0, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, -1),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, 0),
    (0, 0, 0, 0, -1, 0, 0, 2),
)


@dataclass(frozen=True)
class HyperbolicBlock:
    """The rank-two block [[0,1],[1,0]]."""

    @property
    def rank(self) -> int:
        return 2

    def gram_rows(self):
        return ((0, 1), (1, 0))


@dataclass(frozen=True)
class E8Block:
    sign: int = -1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"E8 sign must be +1 or -1, got {self.sign}")

    @property
    def rank(self) -> int:
        return 8

    def gram_rows(self):
        return tuple(tuple(self.sign * x for x in row) for row in E8_GRAM)


@dataclass(frozen=True)
class DiagonalBlock:
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))

    @property
    def rank(self) -> int:
        return len(self.entries)

    def gram_rows(self):
        n = len(self.entries)
        return tuple(
            tuple(self.entries[i] if i == j else 0 for j in range(n)) for i in range(n)
        )


Block = HyperbolicBlock | E8Block | DiagonalBlock


@dataclass(frozen=True)
class CohClass:
    """An integral cohomology class as a coordinate vector in the fixed basis."""

    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __add__(self, other: "CohClass") -> "CohClass":
        if len(self.coords) != len(other.coords):
            raise DimensionMismatch("cannot add classes of different rank")
        return CohClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "CohClass") -> "CohClass":
        return self + (-other)

    def __neg__(self) -> "CohClass":
        return CohClass(tuple(-a for a in self.coords))

    def __mul__(self, scalar: int) -> "CohClass":
        return CohClass(tuple(scalar * a for a in self.coords))

    __rmul__ = __mul__

    def is_even(self) -> bool:
        return all(a % 2 == 0 for a in self.coords)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    @staticmethod
    def zero(rank: int) -> "CohClass":
        return CohClass((0,) * rank)

    @staticmethod
    def unit(rank: int, index: int) -> "CohClass":
        return CohClass(tuple(1 if i == index else 0 for i in range(rank)))


@dataclass(frozen=True)
class IntegralLattice:
    """A lattice with a fixed basis, Gram matrix and block provenance."""

    blocks: tuple[Block, ...]
    gram: tuple[tuple[int, ...], ...]
    rank: int

    @staticmethod
    def from_blocks(blocks) -> "IntegralLattice":
        blocks = tuple(blocks)
        rank = sum(b.rank for b in blocks)
        gram = [[0] * rank for _ in range(rank)]
        offset = 0
        for b in blocks:
            rows = b.gram_rows()
            for i in range(b.rank):
                for j in range(b.rank):
                    gram[offset + i][offset + j] = rows[i][j]
            offset += b.rank
        return IntegralLattice(blocks, tuple(tuple(r) for r in gram), rank)

    def __post_init__(self):
        n = self.rank
        if len(self.gram) != n or any(len(r) != n for r in self.gram):
            raise ValueError("gram matrix shape does not match rank")
        if sum(b.rank for b in self.blocks) != n:
            raise ValueError("block ranks do not sum to the lattice rank")
        for i in range(n):
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("gram matrix is not symmetric")
        offset = 0
        for b in self.blocks:
            rows = b.gram_rows()
            for i in range(n):
                for j in range(offset, offset + b.rank):
                    expected = (
                        rows[i - offset][j - offset]
                        if offset <= i < offset + b.rank
                        else 0
                    )
                    if self.gram[i][j] != expected:
                        raise ValueError("gram matrix does not match the block list")
            offset += b.rank


def block_signature(lattice: IntegralLattice) -> int:
    """Signature of the form, computed blockwise (hyperbolic blocks are 0)."""
    total = 0
    for b in lattice.blocks:
        if isinstance(b, E8Block):
            total += 8 * b.sign
        elif isinstance(b, DiagonalBlock):
            total += sum((e > 0) - (e < 0) for e in b.entries)
    return total


def pairing(lattice: IntegralLattice, a: CohClass, b: CohClass) -> int:
    """Evaluate the intersection pairing a.b exactly."""
    n = lattice.rank
    if len(a.coords) != n or len(b.coords) != n:
        raise DimensionMismatch(
            f"class length does not match lattice rank {n}"
        )
    g = lattice.gram
    total = 0
    for i, ai in enumerate(a.coords):
        if ai:
            row = g[i]
            total += ai * sum(row[j] * bj for j, bj in enumerate(b.coords) if bj)
    return total


def square(lattice: IntegralLattice, a: CohClass) -> int:
    return pairing(lattice, a, a)


def pairing_rational(lattice: IntegralLattice, a, b) -> Fraction:
    """Pairing for rational coordinate vectors (plain sequences)."""
    n = lattice.rank
    if len(a) != n or len(b) != n:
        raise DimensionMismatch(f"vector length does not match lattice rank {n}")
    g = lattice.gram
    total = Fraction(0)
    for i in range(n):
        if a[i]:
            total += a[i] * sum(g[i][j] * b[j] for j in range(n) if b[j])
    return total


def _solve_gf2(rows, rhs):
    """Solve M x = rhs over GF(2); returns a 0/1 list or None if unsolvable.

    Free variables are set to zero, so the solution is deterministic.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[x & 1 for x in row] + [r & 1] for row, r in zip(rows, rhs)]
    pivots = []
    row = 0
    for col in range(n):
        pivot = next((i for i in range(row, m) if a[i][col]), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        for i in range(m):
            if i != row and a[i][col]:
                a[i] = [(x + y) & 1 for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for i in range(row, m):
        if a[i][n]:
            return None
    x = [0] * n
    for i, col in enumerate(pivots):
        x[col] = a[i][n]
    return x


def characteristic_vector(lattice: IntegralLattice) -> CohClass:
    """A class c with c.x = x.x (mod 2) for every basis vector x.

    Solved over GF(2); free variables are zero, so even lattices get the
    zero class.
    """
    n = lattice.rank
    rows = [list(lattice.gram[i]) for i in range(n)]
    rhs = [lattice.gram[i][i] for i in range(n)]
    sol = _solve_gf2(rows, rhs)
    if sol is None:
        raise NoCharacteristicVector(
            "mod-2 characteristic system is unsolvable; the form is degenerate"
        )
    return CohClass(tuple(sol))


def is_characteristic(lattice: IntegralLattice, c: CohClass) -> bool:
    """True iff c.x = x.x (mod 2) for every basis vector x."""
    n = lattice.rank
    if len(c.coords) != n:
        raise DimensionMismatch(f"class length does not match lattice rank {n}")
    for i in range(n):
        dot = sum(lattice.gram[i][j] * c.coords[j] for j in range(n))
        if (dot - lattice.gram[i][i]) % 2:
            return False
    return True


def _xgcd(a: int, b: int):
    """Extended gcd: returns (x, y, g) with x*a + y*b == g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return x, y, g


def _hermite_with_transform(mat):
    """Row Hermite form with transform: returns (h, u, rank), u @ mat == h.

    u is unimodular; pivots are positive and entries above each pivot are
    reduced into [0, pivot).  Deterministic.
    """
    a = [list(row) for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    row = 0
    for col in range(n):
        if row >= m:
            break
        pivot = next((i for i in range(row, m) if a[i][col]), None)
        if pivot is None:
            continue
        if pivot != row:
            a[row], a[pivot] = a[pivot], a[row]
            u[row], u[pivot] = u[pivot], u[row]
        for i in range(row + 1, m):
            if not a[i][col]:
                continue
            p, q = a[row][col], a[i][col]
            x, y, g = _xgcd(p, q)
            pg, qg = p // g, q // g
            a[row], a[i] = (
                [x * r + y * s for r, s in zip(a[row], a[i])],
                [-qg * r + pg * s for r, s in zip(a[row], a[i])],
            )
            u[row], u[i] = (
                [x * r + y * s for r, s in zip(u[row], u[i])],
                [-qg * r + pg * s for r, s in zip(u[row], u[i])],
            )
        if a[row][col] < 0:
            a[row] = [-x for x in a[row]]
            u[row] = [-x for x in u[row]]
        p = a[row][col]
        for i in range(row):
            q = a[i][col] // p
            if q:
                a[i] = [r - q * s for r, s in zip(a[i], a[row])]
                u[i] = [r - q * s for r, s in zip(u[i], u[row])]
        row += 1
    return a, u, row


def integer_kernel(mat, n: int):
    """A saturated basis for {x in Z^n : mat @ x == 0}.

    mat is a list of rows of length n; the result is a list of length-n
    integer vectors.  Saturation is automatic for kernels of integer maps.
    """
    m = len(mat)
    if m == 0:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    transposed = [[mat[i][j] for i in range(m)] for j in range(n)]
    h, u, rank = _hermite_with_transform(transposed)
    return [u[i] for i in range(rank, n)]


@dataclass(frozen=True)
class Sublattice:
    """A saturated sublattice with its restricted pairing."""

    ambient: IntegralLattice
    basis: tuple[CohClass, ...]
    restricted_gram: tuple[tuple[int, ...], ...]


def orthogonal_complement(lattice: IntegralLattice, classes) -> Sublattice:
    """The saturated sublattice {x : x.s == 0 for all s in classes}."""
    n = lattice.rank
    rows = []
    for s in classes:
        if len(s.coords) != n:
            raise DimensionMismatch(f"class length does not match lattice rank {n}")
        rows.append([sum(lattice.gram[i][j] * s.coords[j] for j in range(n)) for i in range(n)])
    kernel = integer_kernel(rows, n)
    basis = tuple(CohClass(tuple(v)) for v in kernel)
    restricted = tuple(
        tuple(pairing(lattice, a, b) for b in basis) for a in basis
    )
    return Sublattice(lattice, basis, restricted)


@dataclass(frozen=True)
class HyperbolicPair:
    """Classes e1, e2 with e1.e1 = e2.e2 = 0 and e1.e2 = 1."""

    e1: CohClass
    e2: CohClass


def _definiteness(gram):
    """Exact sign of a symmetric matrix: 'positive', 'negative' or None.

    Symmetric Gaussian elimination over the rationals; a zero pivot means
    the form is not definite (possibly degenerate), which is all the
    caller needs to know.
    """
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    signs = set()
    for k in range(n):
        p = a[k][k]
        if p == 0:
            return None
        signs.add(1 if p > 0 else -1)
        if len(signs) > 1:
            return None
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    if signs == {1}:
        return "positive"
    if signs == {-1}:
        return "negative"
    return None


def _quad(gram, v) -> int:
    total = 0
    n = len(v)
    for i in range(n):
        if v[i]:
            total += v[i] * sum(gram[i][j] * v[j] for j in range(n) if v[j])
    return total


def find_hyperbolic_pair(sub: Sublattice, radius: int = 3) -> HyperbolicPair | None:
    """Search the sublattice for a hyperbolic pair, ambient coordinates.

    Strategy: if the restricted Gram matrix exhibits a literal hyperbolic
    block between two basis vectors, return that pair at once.  Otherwise
    enumerate primitive isotropic vectors e with basis coordinates in
    [-radius, radius] (lexicographic order, most negative first) and for
    each look for an isotropic f with e.f = 1 in the same order; the
    first hit wins.  Definite forms are rejected without enumeration.

    Returning None never proves that no pair exists; it only means the
    bounded search was exhausted.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    g = sub.restricted_gram
    k = len(g)
    if k == 0:
        return None
    for i in range(k):
        if g[i][i] != 0:
            continue
        for j in range(i + 1, k):
            if g[j][j] == 0 and abs(g[i][j]) == 1:
                e = sub.basis[i]
                f = sub.basis[j] if g[i][j] == 1 else -sub.basis[j]
                return HyperbolicPair(e, f)
    if _definiteness(g) is not None:
        return None

    box = range(-radius, radius + 1)
    isotropic = [v for v in product(box, repeat=k) if any(v) and _quad(g, v) == 0]

    def to_ambient(v):
        out = CohClass.zero(sub.ambient.rank)
        for c, b in zip(v, sub.basis):
            if c:
                out = out + c * b
        return out

    for e in isotropic:
        if gcd(*e) != 1:
            continue
        cov = [sum(g[i][j] * e[j] for j in range(k)) for i in range(k)]
        if not any(cov):
            continue
        for f in isotropic:
            if sum(c * x for c, x in zip(cov, f)) == 1:
                return HyperbolicPair(to_ambient(e), to_ambient(f))
    return None


@dataclass(frozen=True)
class AbundanceClasses:
    """The output of the abundance construction.

    lambda0 and lambda1 are congruent mod 2 with squares -(chi+sigma) and
    -(chi+sigma)+4.  lambda_even has all-even coordinates (it is twice a
    class of the same sublattice) and carries the square selected by
    -(chi+sigma) mod 8: the first square when that residue is 0, the
    second when it is 4.
    """

    lambda0: CohClass
    lambda1: CohClass
    lambda_even: CohClass


def construct_abundance_classes(pair: HyperbolicPair, chi: int, sigma: int) -> AbundanceClasses:
    """Build the standard classes on a hyperbolic pair inside B-perp.

    With h = (chi+sigma)/4:

        lambda0 = e1 - 2h*e2          (square -4h)
        lambda1 = e1 + (2-2h)*e2      (square -4h+4, lambda0 - lambda1 = -2*e2)
        lambda_even = 2*e1 - h*e2     if h is even (square -4h)
                      2*e1 + (1-h)*e2 if h is odd  (square -4h+4)
    """
    if (chi + sigma) % 4 != 0:
        raise ParityError(f"chi + sigma = {chi + sigma} is not divisible by 4")
    h = (chi + sigma) // 4
    e1, e2 = pair.e1, pair.e2
    lambda0 = e1 + (-2 * h) * e2
    lambda1 = e1 + (2 - 2 * h) * e2
    if h % 2 == 0:
        lambda_even = 2 * e1 + (-h) * e2
    else:
        lambda_even = 2 * e1 + (1 - h) * e2
    return AbundanceClasses(lambda0, lambda1, lambda_even)
