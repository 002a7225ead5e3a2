"""Kirwan-kernel ideals for torus reductions of G(n,2) at a maximal chamber.

The ambient ring is Q[e1, e2, h1..h_{n-2}, u1..un] where e_i stands for
sigma_i(x1, x2) and h_i for sigma_i(x3..xn); weights are 1, 2, 1..n-2 and 1.
The ideal contains the base relations sum_{a+b=i} e_a h_b - sigma_i(u) for
i = 1..n together with sum u_i, plus the divided-difference relations of the
admissible permutation pairs.

A pair (nu, tau) is admissible when w = nu^{-1} satisfies, in one-line
notation,
  C1: w(n) in {3..n}, any tau;
  C2: {w(1), w(n)} = {1, 2}, any tau;
  C3: w(n) in {1, 2} and the other small value sits at position j with
      2 <= j <= n-2, and the tail sum xi_{tau(j+1)} + ... + xi_{tau(n)}
      exceeds 1 on the chamber (small value at position n-1 admits no tau
      and is dropped).
The relation of the pair is d_w Delta with u_i renamed to u_{tau(i)},
rewritten in the block generators; pairs whose divided difference is not
symmetric in {x1, x2} and {x3..xn} contribute nothing (the Goldin filter).

The equivalent wall form of C3 -- some ">1"-oriented wall of the chamber is
contained in {tau(j+1), ..., tau(n)} -- is available via method="walls" and
is checked against the tail-sum form by the test suite on every maximal
chamber for n = 4, 5.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import weyl
from .algebra import Polynomial, VariableTable, block_reduce, elem_sym, substitute
from .hypersimplex import Chamber, subset_sum
from .weyl import Perm


@dataclass(frozen=True)
class AdmissiblePair:
    nu: Perm
    tau: Perm
    condition: str  # "C1" | "C2" | "C3"


@dataclass(frozen=True)
class KirwanIdeal:
    n: int
    table: VariableTable
    generators: tuple[Polynomial, ...]
    chamber: Chamber

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "variables": [{"name": v, "weight": w}
                          for v, w in zip(self.table.names, self.table.weights)],
            "generators": [str(g) for g in self.generators],
            "chamber": self.chamber.to_json(),
        }


def ambient_table(n: int) -> VariableTable:
    names = ("e1", "e2") + tuple(f"h{i}" for i in range(1, n - 1)) \
        + tuple(f"u{i}" for i in range(1, n + 1))
    weights = (1, 2) + tuple(range(1, n - 1)) + (1,) * n
    return VariableTable(names, weights)


def base_relations(n: int) -> list[Polynomial]:
    """sigma_i(x) - sigma_i(u) for i = 1..n, in block generators, plus sum(u)."""
    tab = ambient_table(n)
    one = Polynomial.constant(tab, 1)
    e = [one, tab.variable("e1"), tab.variable("e2")]
    h = [one] + [tab.variable(f"h{i}") for i in range(1, n - 1)]
    u_names = [f"u{i}" for i in range(1, n + 1)]
    rels = []
    for i in range(1, n + 1):
        lhs = Polynomial.zero(tab)
        for a in range(0, 3):
            b = i - a
            if 0 <= b <= n - 2:
                lhs = lhs + e[a] * h[b]
        rels.append(lhs - elem_sym(i, u_names, tab))
    rels.append(sum((tab.variable(v) for v in u_names), Polynomial.zero(tab)))
    return rels


# -- admissible permutations ---------------------------------------------

def _classify(w: Perm) -> tuple[str, int] | None:
    """Condition tag of the operator permutation, with j for C3; None if excluded."""
    n = len(w)
    if w[n - 1] >= 3:
        return "C1", 0
    other = 1 if w[n - 1] == 2 else 2
    j = w.index(other) + 1
    if j == 1:
        return "C2", 0
    if 2 <= j <= n - 2:
        return "C3", j
    return None  # j = n-1: no adequate tau


def _tail_ok_by_sum(chamber: Chamber, tail: frozenset[int]) -> bool:
    return subset_sum(chamber.representative, tail) > 1


def _tail_ok_by_walls(chamber: Chamber, tail: frozenset[int]) -> bool:
    return any(W <= tail for W in chamber.walls)


def _tail_predicate(method: str):
    if method == "tail-sum":
        return _tail_ok_by_sum
    if method == "walls":
        return _tail_ok_by_walls
    raise ValueError(f"unknown admissibility method: {method!r}")


def admissible_taus(n: int, j: int, chamber: Chamber,
                    method: str = "tail-sum") -> list[Perm]:
    """All tau whose tail {tau(j+1)..tau(n)} satisfies the C3 condition."""
    ok = _tail_predicate(method)
    good_tails = [frozenset(T) for T in itertools.combinations(range(1, n + 1), n - j)
                  if ok(chamber, frozenset(T))]
    out = []
    for tau in itertools.permutations(range(1, n + 1)):
        if frozenset(tau[j:]) in good_tails:
            out.append(tau)
    return out


def admissible_pairs(n: int, chamber: Chamber,
                     method: str = "tail-sum") -> list[AdmissiblePair]:
    """Every (nu, tau) admissible for the chamber; conditions on w = nu^{-1}."""
    if chamber.n != n:
        raise ValueError("chamber size does not match n")
    ok = _tail_predicate(method)
    all_taus = list(itertools.permutations(range(1, n + 1)))
    pairs = []
    for w in itertools.permutations(range(1, n + 1)):
        tag = _classify(w)
        if tag is None:
            continue
        condition, j = tag
        nu = weyl.inverse(w)
        if condition in ("C1", "C2"):
            taus = all_taus
        else:
            taus = [tau for tau in all_taus if ok(chamber, frozenset(tau[j:]))]
        for tau in taus:
            pairs.append(AdmissiblePair(nu, tau, condition))
    return pairs


# -- relation polynomials -------------------------------------------------

_schubert_cache: dict[tuple[int, Perm], Polynomial] = {}


def schubert_image(n: int, w: Perm) -> Polynomial:
    """d_w Delta(x, u), memoized along the left weak order."""
    key = (n, w)
    cached = _schubert_cache.get(key)
    if cached is not None:
        return cached
    if w == weyl.identity(n):
        value = weyl.det_poly(n)
    else:
        # strip a left descent: w = s_i (s_i w) with l(s_i w) = l(w) - 1
        inv = weyl.inverse(w)
        i = next(i for i in range(1, n) if inv[i - 1] > inv[i])
        value = weyl.divided_difference(i, schubert_image(n, weyl.left_multiply_simple(w, i)))
    _schubert_cache[key] = value
    return value


def _is_block_symmetric(f: Polynomial, n: int) -> bool:
    for i in [1] + list(range(3, n)):
        if weyl.swap_x(f, i) != f:
            return False
    return True


def _blocks(n: int) -> tuple[list[list[str]], list[list[str]]]:
    blocks = [["x1", "x2"], [f"x{i}" for i in range(3, n + 1)]]
    targets = [["e1", "e2"], [f"h{i}" for i in range(1, n - 1)]]
    return blocks, targets


def reduced_schubert_image(n: int, w: Perm) -> Polynomial | None:
    """Block rewrite of d_w Delta over the ambient table, or None if rejected."""
    from .algebra import SymmetryError
    g = schubert_image(n, w)
    blocks, targets = _blocks(n)
    try:
        reduced = block_reduce(g, blocks, targets)
    except SymmetryError:
        return None
    if reduced.table != ambient_table(n):
        raise AssertionError("block targets do not line up with the ambient table")
    return reduced


def relation_poly(pair: AdmissiblePair, n: int) -> Polynomial | None:
    """The pair's ideal generator, or None when the Goldin filter rejects it."""
    reduced = reduced_schubert_image(n, weyl.inverse(pair.nu))
    if reduced is None:
        return None
    mapping = {f"u{i}": f"u{pair.tau[i - 1]}" for i in range(1, n + 1)}
    return substitute(reduced, mapping)


def build_ideal(n: int, chamber: Chamber, method: str = "tail-sum") -> KirwanIdeal:
    """Base relations plus the deduplicated admissible relation polynomials.

    d_w Delta is computed once per operator permutation w and reused across
    tau; only w whose image passes the block-symmetry filter contribute.
    Generators are normalized to primitive form with positive leading
    coefficient and deduplicated as a set.
    """
    if chamber.n != n:
        raise ValueError("chamber size does not match n")
    tab = ambient_table(n)
    ok = _tail_predicate(method)
    seen: set = set()
    gens: list[Polynomial] = []

    def push(g: Polynomial) -> None:
        g = g.primitive()
        key = frozenset(g.coeffs.items())
        if key not in seen:
            seen.add(key)
            gens.append(g)

    for g in base_relations(n):
        push(g)

    all_taus = list(itertools.permutations(range(1, n + 1)))
    for w in itertools.permutations(range(1, n + 1)):
        tag = _classify(w)
        if tag is None:
            continue
        condition, j = tag
        if not _is_block_symmetric(schubert_image(n, w), n):
            continue
        reduced = reduced_schubert_image(n, w)
        if condition in ("C1", "C2"):
            taus = all_taus
        else:
            taus = [tau for tau in all_taus if ok(chamber, frozenset(tau[j:]))]
        for tau in taus:
            mapping = {f"u{i}": f"u{tau[i - 1]}" for i in range(1, n + 1)}
            push(substitute(reduced, mapping))

    gens.sort(key=lambda g: (g.degree(), str(g)))
    return KirwanIdeal(n, tab, tuple(gens), chamber)


def transport_ideal(ideal: KirwanIdeal, sigma: Perm) -> tuple[Polynomial, ...]:
    """Generators with u-variables permuted by sigma (u_i -> u_{sigma(i)})."""
    mapping = {f"u{i}": f"u{sigma[i - 1]}" for i in range(1, ideal.n + 1)}
    return tuple(substitute(g, mapping).primitive() for g in ideal.generators)
