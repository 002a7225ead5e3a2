"""The hypersimplex Delta_{n,2}: arrangement, chambers, moment map, weights.

Points live on the slice sum(xi) = 2 with 0 < xi_i < 1.  The arrangement
consists of the subset-sum hyperplanes sum_{i in S} x_i = 1 for
2 <= |S| <= n-2; on the slice S and its complement cut the same hyperplane,
so the canonical list keeps sizes 2..floor(n/2), and for even n the
half-size representative containing index 1.

All feasibility questions (chamber enumeration, wall detection) are decided
by exact rational Fourier-Motzkin elimination on strict inequalities; no
floating point enters anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .weyl import Perm, inverse as perm_inverse

Point = tuple[Fraction, ...]


class DomainError(ValueError):
    """Point outside the open slice of the hypersimplex."""


class RegularityError(ValueError):
    """Point lies on a subset-sum hyperplane; carries the violating subset."""

    def __init__(self, subset: frozenset[int]):
        self.subset = subset
        pretty = "{" + ",".join(str(i) for i in sorted(subset)) + "}"
        super().__init__(f"subset sum over {pretty} equals 1; the point is not regular")


class RankError(ValueError):
    """Matrix handed to the moment map has rank < 2."""


class WeightError(ValueError):
    """Weight vector outside the weight domain."""


class WeightNotSuitableError(WeightError):
    """Weight vector whose radial projection lands on an arrangement wall."""


# -- points ----------------------------------------------------------------

def parse_point(text: str) -> Point:
    return tuple(Fraction(part.strip()) for part in text.split(","))


def format_point(p: Point) -> str:
    return ",".join(str(c) for c in p)


def check_open_slice(xi: Point) -> None:
    if len(xi) < 4:
        raise DomainError("need at least 4 coordinates")
    if sum(xi) != 2:
        raise DomainError(f"coordinates must sum to 2, got {sum(xi)}")
    if any(not (0 < c < 1) for c in xi):
        raise DomainError("coordinates must satisfy 0 < xi_i < 1")


# -- the arrangement ---------------------------------------------------------

def canonicalize_subset(S: frozenset[int], n: int) -> tuple[frozenset[int], bool]:
    """Canonical representative of {S, S^c} and whether the complement was taken."""
    comp = frozenset(range(1, n + 1)) - S
    if len(S) < len(comp):
        return S, False
    if len(comp) < len(S):
        return comp, True
    return (S, False) if 1 in S else (comp, True)


def canonical_hyperplanes(n: int) -> tuple[frozenset[int], ...]:
    """Deduplicated subset-sum hyperplanes, ordered by (size, lexicographic)."""
    out = set()
    for k in range(2, n // 2 + 1):
        for combo in itertools.combinations(range(1, n + 1), k):
            S, _ = canonicalize_subset(frozenset(combo), n)
            out.add(S)
    return tuple(sorted(out, key=lambda S: (len(S), tuple(sorted(S)))))


def subset_sum(xi: Point, S: frozenset[int]) -> Fraction:
    return sum(xi[i - 1] for i in S)


def is_regular(xi: Point) -> bool:
    """True iff no subset sum of size 2..n-2 equals 1 (exact arithmetic)."""
    check_open_slice(xi)
    n = len(xi)
    for k in range(2, n - 1):
        for combo in itertools.combinations(range(1, n + 1), k):
            if subset_sum(xi, frozenset(combo)) == 1:
                return False
    return True


def _first_violation(xi: Point) -> frozenset[int] | None:
    n = len(xi)
    for k in range(2, n - 1):
        for combo in itertools.combinations(range(1, n + 1), k):
            if subset_sum(xi, frozenset(combo)) == 1:
                return frozenset(combo)
    return None


# -- exact Fourier-Motzkin ---------------------------------------------------

Row = tuple[tuple[Fraction, ...], Fraction]  # coeffs . x + const > 0, strict


def _normalize_row(coeffs, const) -> Row | None:
    """Scale to primitive integer form; None for the tautology 0 > negative."""
    nums = [c.numerator for c in coeffs] + [const.numerator]
    dens = [c.denominator for c in coeffs] + [const.denominator]
    m = 1
    for d in dens:
        m = m * d // gcd(m, d)
    ints = [n * (m // d) for n, d in zip(nums, dens)]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        return None
    ints = [v // g for v in ints]
    return tuple(Fraction(v) for v in ints[:-1]), Fraction(ints[-1])


class _Infeasible(Exception):
    pass


def _fm_sample(rows: list[Row], nvars: int) -> tuple[Fraction, ...] | None:
    """A rational point satisfying all strict rows, or None if infeasible."""
    system: set[Row] = set()
    for coeffs, const in rows:
        norm = _normalize_row(tuple(coeffs), const)
        if norm is None:
            continue
        c, k = norm
        if all(v == 0 for v in c):
            if k <= 0:
                return None
            continue
        system.add(norm)

    remaining = list(range(nvars))
    stages: list[tuple[int, set[Row]]] = []
    while remaining:
        # eliminate the variable producing the fewest pair combinations
        def cost(v):
            pos = sum(1 for c, _ in system if c[v] > 0)
            neg = sum(1 for c, _ in system if c[v] < 0)
            return pos * neg
        var = min(remaining, key=lambda v: (cost(v), v))
        remaining.remove(var)
        stages.append((var, set(system)))
        lower = [(c, k) for c, k in system if c[var] > 0]
        upper = [(c, k) for c, k in system if c[var] < 0]
        passthrough = {(c, k) for c, k in system if c[var] == 0}
        nxt = passthrough
        for cl, kl in lower:
            for cu, ku in upper:
                a, b = cl[var], -cu[var]
                coeffs = tuple(a * cu[i] + b * cl[i] for i in range(nvars))
                const = a * ku + b * kl
                norm = _normalize_row(coeffs, const)
                if norm is None:
                    continue
                c, k = norm
                if all(v == 0 for v in c):
                    if k <= 0:
                        return None
                    continue
                nxt.add(norm)
        system = nxt

    values: list[Fraction] = [Fraction(0)] * nvars
    for var, stage_rows in reversed(stages):
        low, high = None, None
        for c, k in stage_rows:
            if c[var] == 0:
                continue
            rest = k + sum(c[i] * values[i] for i in range(nvars) if i != var and c[i] != 0)
            bound = -rest / c[var]
            if c[var] > 0:
                low = bound if low is None else max(low, bound)
            else:
                high = bound if high is None else min(high, bound)
        if low is not None and high is not None:
            if not low < high:
                return None  # cannot happen after elimination, kept as a guard
            values[var] = (low + high) / 2
        elif low is not None:
            values[var] = low + 1
        elif high is not None:
            values[var] = high - 1
    return tuple(values)


def _slice_system(n: int, sign_constraints: list[tuple[frozenset[int], int]],
                  equal_subset: frozenset[int] | None = None):
    """Strict system in x_1..x_{n-1} after eliminating x_n = 2 - sum(others).

    sign_constraints holds (S, sign) meaning sign * (sum_S x - 1) > 0; an
    optional equality sum_{equal_subset} x = 1 is substituted away as well.
    Returns (rows, nvars, reconstruct) where reconstruct maps a reduced
    sample to the full n-coordinate point.
    """
    def subset_row(S: frozenset[int]) -> tuple[list[Fraction], Fraction]:
        # sum_S x - 1 over x_1..x_{n-1} with x_n substituted
        coeffs = [Fraction(0)] * (n - 1)
        const = Fraction(-1)
        for i in S:
            if i == n:
                const += 2
                for j in range(n - 1):
                    coeffs[j] -= 1
            else:
                coeffs[i - 1] += 1
        return coeffs, const

    rows: list[tuple[list[Fraction], Fraction]] = []
    for i in range(1, n):
        row = [Fraction(0)] * (n - 1)
        row[i - 1] = Fraction(1)
        rows.append((row, Fraction(0)))                      # x_i > 0
        rows.append(([-c for c in row], Fraction(1)))        # x_i < 1
    xn = ([Fraction(-1)] * (n - 1), Fraction(2))             # x_n > 0
    rows.append(xn)
    rows.append(([Fraction(1)] * (n - 1), Fraction(-1)))     # x_n < 1
    for S, sign in sign_constraints:
        coeffs, const = subset_row(S)
        if sign > 0:
            rows.append((coeffs, const))
        else:
            rows.append(([-c for c in coeffs], -const))

    if equal_subset is None:
        def reconstruct(sample):
            full = list(sample) + [2 - sum(sample)]
            return tuple(full)
        return [(tuple(c), k) for c, k in rows], n - 1, reconstruct

    # substitute the equality: pick the largest-index variable appearing in it
    eq_coeffs, eq_const = subset_row(equal_subset)
    pivot = max(i for i, c in enumerate(eq_coeffs) if c != 0)
    pc = eq_coeffs[pivot]
    reduced_rows = []
    for coeffs, const in rows:
        f = coeffs[pivot] / pc
        new = [c - f * e for c, e in zip(coeffs, eq_coeffs)]
        del new[pivot]
        reduced_rows.append((tuple(new), const - f * eq_const))

    def reconstruct(sample):
        partial = list(sample)
        partial.insert(pivot, Fraction(0))
        xp = (-eq_const - sum(eq_coeffs[i] * partial[i]
                              for i in range(n - 1) if i != pivot)) / pc
        partial[pivot] = xp
        return tuple(partial + [2 - sum(partial)])

    return reduced_rows, n - 2, reconstruct


def _interior_sample(n: int, sign_constraints) -> Point | None:
    rows, nvars, reconstruct = _slice_system(n, sign_constraints)
    sample = _fm_sample(rows, nvars)
    return None if sample is None else reconstruct(sample)


def _wall_sample(n: int, sign_constraints, wall: frozenset[int]) -> Point | None:
    others = [(S, s) for S, s in sign_constraints if S != wall]
    rows, nvars, reconstruct = _slice_system(n, others, equal_subset=wall)
    sample = _fm_sample(rows, nvars)
    return None if sample is None else reconstruct(sample)


# -- chambers ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Chamber:
    """A maximal chamber: sign vector, an exact interior point, and walls.

    The sign vector is aligned with canonical_hyperplanes(n); +1 means the
    subset sum over the canonical set exceeds 1.  Walls carry the ">1"
    orientation: for each facet-supporting hyperplane the stored index set
    is the side whose subset sum exceeds 1 on the chamber.
    """

    n: int
    signs: tuple[int, ...]
    representative: Point
    walls: tuple[frozenset[int], ...]

    def __eq__(self, other):
        if not isinstance(other, Chamber):
            return NotImplemented
        return self.n == other.n and self.signs == other.signs

    def __hash__(self):
        return hash((self.n, self.signs))

    def sign_of(self, S: frozenset[int]) -> int:
        """Sign of an arbitrary subset of size 2..n-2 on this chamber."""
        canon, flipped = canonicalize_subset(S, self.n)
        hyps = canonical_hyperplanes(self.n)
        s = self.signs[hyps.index(canon)]
        return -s if flipped else s

    def oriented_sets(self) -> tuple[frozenset[int], ...]:
        """All ">1"-oriented constraint sets (walls and non-walls alike)."""
        hyps = canonical_hyperplanes(self.n)
        full = frozenset(range(1, self.n + 1))
        out = []
        for S, s in zip(hyps, self.signs):
            out.append(S if s > 0 else full - S)
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "signs": {"".join(str(i) for i in sorted(S)): ("+" if s > 0 else "-")
                      for S, s in zip(canonical_hyperplanes(self.n), self.signs)},
            "walls": [sorted(W) for W in self.walls],
            "representative": [str(c) for c in self.representative],
        }


def sign_vector(xi: Point) -> tuple[int, ...]:
    n = len(xi)
    signs = []
    for S in canonical_hyperplanes(n):
        s = subset_sum(xi, S)
        if s == 1:
            raise RegularityError(S)
        signs.append(1 if s > 1 else -1)
    return tuple(signs)


def _constraints(n: int, signs: tuple[int, ...]):
    return list(zip(canonical_hyperplanes(n), signs))


def _compute_walls(n: int, signs: tuple[int, ...]) -> tuple[frozenset[int], ...]:
    """A constraint is a wall iff tightening it keeps all others satisfiable."""
    full = frozenset(range(1, n + 1))
    cons = _constraints(n, signs)
    walls = []
    for S, s in cons:
        if _wall_sample(n, cons, S) is not None:
            walls.append(S if s > 0 else full - S)
    return tuple(sorted(walls, key=lambda W: (len(W), tuple(sorted(W)))))


def chamber_of(xi: Point) -> Chamber:
    """Identify the maximal chamber containing a regular point."""
    check_open_slice(xi)
    violation = _first_violation(xi)
    if violation is not None:
        raise RegularityError(violation)
    signs = sign_vector(xi)
    return Chamber(len(xi), signs, xi, _compute_walls(len(xi), signs))


def enumerate_chambers(n: int) -> list[Chamber]:
    """All maximal chambers, by incremental hyperplane insertion."""
    if not 4 <= n <= 6:
        raise ValueError("chamber enumeration is supported for 4 <= n <= 6")
    hyps = canonical_hyperplanes(n)
    prefixes: list[tuple[int, ...]] = [()]
    for k in range(len(hyps)):
        nxt = []
        for signs in prefixes:
            for s in (1, -1):
                cand = signs + (s,)
                if _interior_sample(n, list(zip(hyps[:k + 1], cand))) is not None:
                    nxt.append(cand)
        prefixes = nxt
    chambers = []
    for signs in sorted(prefixes):
        rep = _interior_sample(n, list(zip(hyps, signs)))
        chambers.append(Chamber(n, signs, rep, _compute_walls(n, signs)))
    return chambers


# -- the S_n action ----------------------------------------------------------

def act_point(sigma: Perm, xi: Point) -> Point:
    """(sigma . xi)_i = xi_{sigma^{-1}(i)}: coordinates move with indices."""
    inv = perm_inverse(sigma)
    return tuple(xi[inv[i] - 1] for i in range(len(xi)))


def act_signs(sigma: Perm, signs: tuple[int, ...], n: int) -> tuple[int, ...]:
    inv = perm_inverse(sigma)
    hyps = canonical_hyperplanes(n)
    index = {S: k for k, S in enumerate(hyps)}
    out = []
    for S in hyps:
        T = frozenset(inv[i - 1] for i in S)
        canon, flipped = canonicalize_subset(T, n)
        s = signs[index[canon]]
        out.append(-s if flipped else s)
    return tuple(out)


def act_chamber(sigma: Perm, chamber: Chamber) -> Chamber:
    return Chamber(
        chamber.n,
        act_signs(sigma, chamber.signs, chamber.n),
        act_point(sigma, chamber.representative),
        tuple(sorted((frozenset(sigma[i - 1] for i in W) for W in chamber.walls),
                     key=lambda W: (len(W), tuple(sorted(W))))),
    )


def orbit_partition(chambers: list[Chamber], n: int) -> list[list[Chamber]]:
    """Partition under the S_n coordinate action; adjacent swaps generate."""
    index = {c.signs: i for i, c in enumerate(chambers)}
    gens = []
    for i in range(1, n):
        sigma = list(range(1, n + 1))
        sigma[i - 1], sigma[i] = sigma[i], sigma[i - 1]
        gens.append(tuple(sigma))
    seen: set[int] = set()
    orbits: list[list[Chamber]] = []
    for i, chamber in enumerate(chambers):
        if i in seen:
            continue
        orbit = []
        frontier = [i]
        seen.add(i)
        while frontier:
            j = frontier.pop()
            orbit.append(chambers[j])
            for sigma in gens:
                moved = act_signs(sigma, chambers[j].signs, n)
                k = index.get(moved)
                if k is None:
                    raise ValueError("chamber list is not closed under the S_n action")
                if k not in seen:
                    seen.add(k)
                    frontier.append(k)
        orbits.append(sorted(orbit, key=lambda c: c.signs))
    return sorted(orbits, key=lambda orbit: orbit[0].signs)


# -- the standard moment map --------------------------------------------------

@dataclass(frozen=True)
class GaussianRational:
    """Exact complex rational a + b*i, so |z|^2 stays in Q."""

    re: Fraction
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, tuple):
            return cls(Fraction(value[0]), Fraction(value[1]))
        return cls(Fraction(value))

    def __add__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0


def moment_map(rows) -> Point:
    """Standard moment map of the plane spanned by the two matrix rows.

    mu(L)_i is the total squared Pluecker mass of the pairs containing i,
    normalized by the full mass; the image lies in Delta_{n,2}.
    """
    if len(rows) != 2:
        raise ValueError("expected a 2 x n matrix")
    a = [GaussianRational.of(v) for v in rows[0]]
    b = [GaussianRational.of(v) for v in rows[1]]
    n = len(a)
    if len(b) != n:
        raise ValueError("rows of unequal length")
    mass = [Fraction(0)] * n
    total = Fraction(0)
    for j in range(n):
        for k in range(j + 1, n):
            minor = a[j] * b[k] - a[k] * b[j]
            w = minor.abs2()
            if w:
                mass[j] += w
                mass[k] += w
                total += w
    if total == 0:
        raise RankError("matrix has rank < 2: all Pluecker coordinates vanish")
    return tuple(m / total for m in mass)


def scaled_moment(xi: Point, lambda1: Fraction, lambda2: Fraction) -> Point:
    """Affine image mu_lambda = (lambda1 - lambda2) mu + lambda2 (1,...,1)."""
    l1, l2 = Fraction(lambda1), Fraction(lambda2)
    return tuple((l1 - l2) * c + l2 for c in xi)


# -- Hassett weights -----------------------------------------------------------

def check_weight_domain(weights: Point) -> None:
    if len(weights) < 4:
        raise WeightError("need at least 4 weights")
    if any(not (0 < a <= 1) for a in weights):
        raise WeightError("weights must satisfy 0 < a_i <= 1")
    if sum(weights) <= 2:
        raise WeightError("weights must satisfy sum(a) > 2")


def hassett_chamber(weights) -> Chamber:
    """Chamber of the radial projection xi = 2A / sum(A) of a weight vector."""
    weights = tuple(Fraction(a) for a in weights)
    check_weight_domain(weights)
    total = sum(weights)
    xi = tuple(2 * a / total for a in weights)
    violation = _first_violation(xi)
    if violation is not None:
        pretty = "{" + ",".join(str(i) for i in sorted(violation)) + "}"
        raise WeightNotSuitableError(
            f"weight vector is not suitable: its projection lies on the wall {pretty}")
    return chamber_of(xi)
