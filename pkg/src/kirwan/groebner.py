"""Buchberger Groebner bases over Q, normal forms, and Betti tables.

All ideals handled here are homogeneous for the weighted grading of their
variable table, so degree-by-degree processing (sugar selection) is exact.
The reduced basis is monic and unique for a fixed monomial order, which
makes the disk cache and all downstream reports deterministic.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra import Exponent, Polynomial, VariableTable, format_polynomial, parse_polynomial


class DimensionError(ValueError):
    """Raised when a quotient expected to be finite-dimensional is not."""


@dataclass(frozen=True)
class MonomialOrder:
    """Weighted-degree reverse lexicographic order attached to a table."""

    table: VariableTable

    def key(self, exp: Exponent):
        return self.table.sort_key(exp)

    def leading_exponent(self, f: Polynomial) -> Exponent:
        return max(f.coeffs, key=self.key)


@dataclass(frozen=True)
class GroebnerBasis:
    polys: tuple[Polynomial, ...]
    order: MonomialOrder

    @property
    def table(self) -> VariableTable:
        return self.order.table

    def leading_exponents(self) -> list[Exponent]:
        return [self.order.leading_exponent(g) for g in self.polys]


@dataclass(frozen=True)
class GradedPresentation:
    """Generators-and-relations description of a weighted-graded quotient ring."""

    table: VariableTable
    relations: tuple[Polynomial, ...]
    label: str = ""

    def __post_init__(self):
        for r in self.relations:
            if not r.is_homogeneous():
                raise ValueError(f"relation is not homogeneous: {r}")


@dataclass(frozen=True)
class BettiTable:
    """Dimensions of the even-degree graded pieces: dims[2d] = b_{2d}."""

    dims: tuple[tuple[int, int], ...]

    @classmethod
    def from_weight_counts(cls, counts: dict[int, int]) -> "BettiTable":
        return cls(tuple(sorted((2 * w, c) for w, c in counts.items())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.dims)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.dims)

    def to_json(self) -> dict[str, int]:
        return {str(d): c for d, c in self.dims}

    def __str__(self):
        inner = ", ".join(f"{d}: {c}" for d, c in self.dims)
        return "{" + inner + "}"


# -- division ------------------------------------------------------------

def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of f under multivariate division by the basis."""
    if f.table != gb.table:
        raise ValueError("polynomial is not over the basis' variable table")
    order = gb.order
    divisors = [(order.leading_exponent(g), g.coeffs[order.leading_exponent(g)], g)
                for g in gb.polys if not g.is_zero()]
    remainder: dict[Exponent, Fraction] = {}
    work = dict(f.coeffs)
    while work:
        lt = max(work, key=order.key)
        c = work.pop(lt)
        for lm, lc, g in divisors:
            if _divides(lm, lt):
                shift = tuple(a - b for a, b in zip(lt, lm))
                scale = c / lc
                for e, gc in g.coeffs.items():
                    key = tuple(a + b for a, b in zip(e, shift))
                    if key == lt:
                        continue
                    s = work.get(key, 0) - scale * gc
                    if s:
                        work[key] = s
                    else:
                        work.pop(key, None)
                break
        else:
            remainder[lt] = c
    return Polynomial(f.table, remainder)


def _s_poly(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    lf, lg = order.leading_exponent(f), order.leading_exponent(g)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    mf = tuple(a - b for a, b in zip(lcm, lf))
    mg = tuple(a - b for a, b in zip(lcm, lg))
    cf, cg = f.coeffs[lf], g.coeffs[lg]
    tf = Polynomial(f.table, {mf: 1 / cf})
    tg = Polynomial(g.table, {mg: 1 / cg})
    return f * tf - g * tg


def buchberger(gens: list[Polynomial] | tuple[Polynomial, ...],
               order: MonomialOrder | None = None,
               cache_dir: str | os.PathLike | None = None) -> GroebnerBasis:
    """Reduced Groebner basis, deterministic for a fixed generator sequence.

    Pairs are selected by sugar degree, then by the order key of the lcm,
    then by insertion index; the classical product and chain criteria prune
    the pair set.  Intermediate reducers are kept primitive to limit
    coefficient growth; the final reduced basis is monic.
    """
    gens = [g for g in gens if not g.is_zero()]
    if order is None:
        if not gens:
            raise ValueError("cannot infer the order of an empty generator list")
        order = MonomialOrder(gens[0].table)
    for g in gens:
        if g.table != order.table:
            raise ValueError("generators over different variable tables")

    cached = _cache_load(gens, order, cache_dir)
    if cached is not None:
        return cached

    table = order.table
    basis: list[Polynomial] = []
    lms: list[Exponent] = []
    sugars: list[int] = []
    pairs: set[tuple[int, int]] = set()

    def lcm_exp(i: int, j: int) -> Exponent:
        return tuple(max(a, b) for a, b in zip(lms[i], lms[j]))

    def add(f: Polynomial, sugar: int) -> None:
        lf = order.leading_exponent(f)
        k = len(basis)
        # Gebauer-Moeller pruning of the updated pair set
        survivors = set()
        for (i, j) in pairs:
            old = lcm_exp(i, j)
            lif = tuple(max(a, b) for a, b in zip(lms[i], lf))
            ljf = tuple(max(a, b) for a, b in zip(lms[j], lf))
            if (not _divides(lf, old)) or lif == old or ljf == old:
                survivors.add((i, j))
        groups: dict[Exponent, list[int]] = {}
        for i in range(k):
            L = tuple(max(a, b) for a, b in zip(lms[i], lf))
            groups.setdefault(L, []).append(i)
        minimal_lcms: list[Exponent] = []
        for L in sorted(groups, key=order.key):
            if not any(_divides(Lk, L) for Lk in minimal_lcms):
                minimal_lcms.append(L)
        for L in minimal_lcms:
            coprime = any(
                L == tuple(a + b for a, b in zip(lms[i], lf)) for i in groups[L]
            )
            if not coprime:
                survivors.add((min(groups[L]), k))
        pairs.clear()
        pairs.update(survivors)
        basis.append(f)
        lms.append(lf)
        sugars.append(sugar)

    for g in gens:
        f = normal_form(g.primitive(), GroebnerBasis(tuple(basis), order))
        if not f.is_zero():
            add(f.primitive(), f.degree())

    def pair_key(p: tuple[int, int]):
        i, j = p
        L = lcm_exp(i, j)
        sugar = max(sugars[i] + table.weighted_degree(L) - table.weighted_degree(lms[i]),
                    sugars[j] + table.weighted_degree(L) - table.weighted_degree(lms[j]))
        return (sugar, order.key(L), i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        sugar = pair_key((i, j))[0]
        pairs.discard((i, j))
        s = _s_poly(basis[i], basis[j], order)
        r = normal_form(s, GroebnerBasis(tuple(basis), order))
        if not r.is_zero():
            add(r.primitive(), sugar)

    # minimalize: drop members whose leading term another one divides
    keep: list[int] = []
    for i in sorted(range(len(basis)), key=lambda i: order.key(lms[i])):
        if not any(_divides(lms[j], lms[i]) for j in keep):
            keep.append(i)
    minimal = [basis[i] for i in keep]
    reduced: list[Polynomial] = []
    for i, g in enumerate(minimal):
        others = GroebnerBasis(tuple(minimal[:i] + minimal[i + 1:]), order)
        reduced.append(normal_form(g, others).monic())
    reduced.sort(key=lambda g: order.key(order.leading_exponent(g)))
    result = GroebnerBasis(tuple(reduced), order)
    _cache_store(gens, order, result, cache_dir)
    return result


def contains(f: Polynomial, gens: list[Polynomial] | tuple[Polynomial, ...],
             order: MonomialOrder | None = None) -> bool:
    """Ideal membership via a Groebner basis of the generators."""
    gb = buchberger(list(gens), order)
    return normal_form(f, gb).is_zero()


# -- Betti tables ----------------------------------------------------------

def standard_monomials(gb: GroebnerBasis) -> list[Exponent]:
    """All monomials outside the leading-term ideal, or DimensionError."""
    table = gb.table
    n = len(table)
    lms = [lm for lm in gb.leading_exponents()]
    if any(sum(lm) == 0 for lm in lms):
        return []  # the unit ideal: zero ring
    for i in range(n):
        if not any(all(e == 0 for k, e in enumerate(lm) if k != i) and lm[i] > 0 for lm in lms):
            raise DimensionError(
                f"quotient is infinite-dimensional: no pure power of {table.names[i]} "
                "in the leading-term ideal")
    out: list[Exponent] = []
    frontier = [(0,) * n]
    seen = {(0,) * n}
    while frontier:
        nxt = []
        for exp in frontier:
            out.append(exp)
            for i in range(n):
                cand = exp[:i] + (exp[i] + 1,) + exp[i + 1:]
                if cand in seen:
                    continue
                seen.add(cand)
                if not any(_divides(lm, cand) for lm in lms):
                    nxt.append(cand)
        frontier = nxt
    return out


def betti(gb: GroebnerBasis) -> BettiTable:
    """Count standard monomials by weight; b_{2d} = that count."""
    counts: dict[int, int] = {}
    for exp in standard_monomials(gb):
        w = gb.table.weighted_degree(exp)
        counts[w] = counts.get(w, 0) + 1
    return BettiTable.from_weight_counts(counts)


@dataclass(frozen=True)
class ComparisonReport:
    label_a: str
    label_b: str
    betti_a: BettiTable
    betti_b: BettiTable
    equal: bool
    degrees: tuple[tuple[int, int, int], ...]  # (degree, dim_a, dim_b)

    @property
    def euler_a(self) -> int:
        return self.betti_a.total

    @property
    def euler_b(self) -> int:
        return self.betti_b.total

    def __str__(self):
        verdict = "equal" if self.equal else "DIFFERENT"
        lines = [f"{self.label_a} vs {self.label_b}: Hilbert series {verdict} "
                 f"(a necessary, not sufficient, isomorphism indicator)"]
        for d, a, b in self.degrees:
            mark = "==" if a == b else "!="
            lines.append(f"  degree {d}: {a} {mark} {b}")
        lines.append(f"  Euler characteristic: {self.euler_a} vs {self.euler_b}")
        return "\n".join(lines)


def presentation_basis(p: GradedPresentation,
                       cache_dir: str | os.PathLike | None = None) -> GroebnerBasis:
    return buchberger(list(p.relations), MonomialOrder(p.table), cache_dir=cache_dir)


def compare_presentations(a: GradedPresentation, b: GradedPresentation,
                          cache_dir: str | os.PathLike | None = None) -> ComparisonReport:
    """Compare two graded quotients degree by degree through their Betti tables."""
    ba = betti(presentation_basis(a, cache_dir))
    bb = betti(presentation_basis(b, cache_dir))
    da, db = ba.as_dict(), bb.as_dict()
    degrees = tuple(sorted((d, da.get(d, 0), db.get(d, 0)) for d in set(da) | set(db)))
    return ComparisonReport(a.label or "a", b.label or "b", ba, bb,
                            equal=(da == db), degrees=degrees)


# -- disk cache ------------------------------------------------------------

def default_cache_dir() -> Path | None:
    env = os.environ.get("KIRWAN_CACHE_DIR")
    if env == "":
        return None
    if env:
        return Path(env)
    return Path.home() / ".cache" / "kirwan"


_CACHE_VERSION = 1


def _content_hash(gens: list[Polynomial], order: MonomialOrder) -> str:
    payload = {
        "version": _CACHE_VERSION,
        "order": "wdegrevlex",
        "variables": [[n, w] for n, w in zip(order.table.names, order.table.weights)],
        "generators": sorted(format_polynomial(g) for g in gens),
    }
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


def _cache_path(gens, order, cache_dir) -> Path | None:
    if cache_dir is None:
        base = default_cache_dir()
    elif not cache_dir:
        return None
    else:
        base = Path(cache_dir)
    if base is None:
        return None
    return base / (_content_hash(gens, order) + ".json")


def _cache_load(gens, order, cache_dir) -> GroebnerBasis | None:
    path = _cache_path(gens, order, cache_dir)
    if path is None or not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
        polys = tuple(parse_polynomial(order.table, s) for s in data["basis"])
        return GroebnerBasis(polys, order)
    except (ValueError, KeyError, OSError):
        return None


def _cache_store(gens, order, gb: GroebnerBasis, cache_dir) -> None:
    path = _cache_path(gens, order, cache_dir)
    if path is None:
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        data = {
            "schema": 1,
            "input_hash": _content_hash(gens, order),
            "order": "wdegrevlex",
            "variables": [[n, w] for n, w in zip(order.table.names, order.table.weights)],
            "basis": [format_polynomial(g) for g in gb.polys],
        }
        path.write_text(json.dumps(data, sort_keys=True, indent=1))
    except OSError:
        pass
