"""Independent presentations used to cross-validate the Kirwan quotients.

Three pipelines with no shared machinery beyond the Groebner engine:
the boundary-divisor Chow ring of the moduli space of stable n-pointed
genus-zero curves (Keel), the Chow ring of heavy/light weighted spaces,
and Stanley-Reisner rings of smooth polygons.  Identification maps
between presentations are verified relation by relation; failures are
reported, not raised, since they may flag errata in the source formulas.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .algebra import Polynomial, VariableTable
from .groebner import (GradedPresentation, GroebnerBasis, MonomialOrder, buchberger,
                       normal_form)
from .reduction import KirwanIdeal


def _subset_name(S) -> str:
    return "D" + "".join(str(i) for i in sorted(S))


# -- Keel's presentation -------------------------------------------------

def _keel_classes(n: int) -> list[frozenset[int]]:
    """Canonical divisor classes: S with |S|, |S^c| >= 2 up to complement."""
    classes = set()
    for k in range(2, n - 1):
        for combo in itertools.combinations(range(1, n + 1), k):
            S = frozenset(combo)
            comp = frozenset(range(1, n + 1)) - S
            classes.add(min((len(S), tuple(sorted(S))), (len(comp), tuple(sorted(comp)))))
    return [frozenset(t[1]) for t in sorted(classes)]


def _keel_compatible(S: frozenset, T: frozenset, n: int) -> bool:
    full = frozenset(range(1, n + 1))
    return S <= T or T <= S or not (S & T) or (S | T) == full


def keel_presentation(n: int) -> GradedPresentation:
    """Boundary-divisor presentation of the Chow ring of the n-pointed space.

    One weight-1 generator per divisor class D^S = D^{S^c}; quadratic
    vanishing for incompatible pairs; for each choice of four distinct
    marked points the three pairing sums agree.
    """
    if n < 4:
        raise ValueError("need n >= 4 marked points")
    classes = _keel_classes(n)
    canon = {}
    for k in range(2, n - 1):
        for combo in itertools.combinations(range(1, n + 1), k):
            S = frozenset(combo)
            comp = frozenset(range(1, n + 1)) - S
            rep = min((len(S), tuple(sorted(S))), (len(comp), tuple(sorted(comp))))
            canon[S] = frozenset(rep[1])
    table = VariableTable(tuple(_subset_name(S) for S in classes), (1,) * len(classes))

    def var(S: frozenset) -> Polynomial:
        return table.variable(_subset_name(canon[S]))

    relations: list[Polynomial] = []
    for a, b in itertools.combinations(classes, 2):
        if not _keel_compatible(a, b, n):
            relations.append(var(a) * var(b))

    def pairing_sum(i: int, j: int, k: int, l: int) -> Polynomial:
        total = Polynomial.zero(table)
        for size in range(2, n - 1):
            for combo in itertools.combinations(range(1, n + 1), size):
                S = set(combo)
                if i in S and j in S and k not in S and l not in S:
                    total = total + var(frozenset(combo))
        return total

    for i, j, k, l in itertools.combinations(range(1, n + 1), 4):
        base = pairing_sum(i, j, k, l)
        relations.append(base - pairing_sum(i, k, j, l))
        relations.append(base - pairing_sum(i, l, j, k))
    relations = [r for r in relations if not r.is_zero()]
    return GradedPresentation(table, tuple(relations), label=f"keel(n={n})")


# -- heavy/light presentation ---------------------------------------------

def heavy_light_generating_sets(m: int, n: int, include_full: bool = False) -> list[frozenset[int]]:
    """S within {2..n} whose weight sum under (1,..,1,eps,..,eps) exceeds 1.

    With eps < 1/(n-m) the condition is combinatorial: at least two heavy
    indices, or one heavy index plus at least one light one.  The full set
    {2..n} is excluded unless include_full is set; including it adds a
    generator no linear relation touches and breaks the four-generator
    description of the (2,5) space.
    """
    out = []
    everything = frozenset(range(2, n + 1))
    for size in range(2, n):
        for combo in itertools.combinations(range(2, n + 1), size):
            S = frozenset(combo)
            if S == everything and not include_full:
                continue
            heavies = sum(1 for i in S if i <= m)
            if heavies >= 2 or (heavies == 1 and len(S) >= 2):
                out.append(S)
    return sorted(out, key=lambda S: (len(S), tuple(sorted(S))))


def heavy_light_presentation(m: int, n: int, include_full: bool = False) -> GradedPresentation:
    """Chow-ring presentation of the heavy/light space with m heavy points."""
    if not (2 <= m <= n) or n < 4:
        raise ValueError("need 2 <= m <= n and n >= 4")
    gens = heavy_light_generating_sets(m, n, include_full)
    table = VariableTable(tuple(_subset_name(S) for S in gens), (1,) * len(gens))

    def var(S: frozenset) -> Polynomial:
        return table.variable(_subset_name(S))

    relations: list[Polynomial] = []
    for a, b in itertools.combinations(gens, 2):
        if not (a <= b or b <= a or not (a & b)):
            relations.append(var(a) * var(b))

    heavy_pairs = [frozenset(p) for p in itertools.combinations(range(2, n + 1), 2)
                   if min(p) <= m]
    for P, Q in itertools.combinations(heavy_pairs, 2):
        lhs = Polynomial.zero(table)
        rhs = Polynomial.zero(table)
        for S in gens:
            if P <= S and not Q <= S:
                lhs = lhs + var(S)
            elif Q <= S and not P <= S:
                rhs = rhs + var(S)
        rel = lhs - rhs
        if not rel.is_zero():
            relations.append(rel)
    return GradedPresentation(table, tuple(relations),
                              label=f"heavy_light(m={m},n={n})")


# -- toric Stanley-Reisner rings -------------------------------------------

def load_polygon(name: str) -> list[tuple[int, int]]:
    data = json.loads(resources.files("kirwan.data").joinpath("toric_polygons.json").read_text())
    if name not in data:
        raise KeyError(f"unknown polygon {name!r}; have {sorted(data)}")
    return [tuple(v) for v in data[name]["vectors"]]


def toric_sr(num_edges: int, char_vectors) -> GradedPresentation:
    """Stanley-Reisner presentation of the smooth toric surface over a polygon.

    One weight-1 variable per edge in cyclic order; products of non-adjacent
    edges vanish (for the triangle, the triple product); the characteristic
    vectors contribute one linear form per lattice coordinate.  Adjacent
    characteristic vectors must span the lattice (determinant +-1).
    """
    vectors = [tuple(int(c) for c in v) for v in char_vectors]
    if num_edges != len(vectors) or num_edges < 3:
        raise ValueError("need one characteristic vector per edge, at least 3")
    for i in range(num_edges):
        a, b = vectors[i], vectors[(i + 1) % num_edges]
        det = a[0] * b[1] - a[1] * b[0]
        if det not in (1, -1):
            raise ValueError(
                f"characteristic data invalid at edges {i + 1},{(i % num_edges) + 2}: "
                f"determinant {det} is not a lattice basis")
    table = VariableTable(tuple(f"v{i}" for i in range(1, num_edges + 1)), (1,) * num_edges)
    v = [table.variable(f"v{i}") for i in range(1, num_edges + 1)]
    relations: list[Polynomial] = []
    if num_edges == 3:
        relations.append(v[0] * v[1] * v[2])
    else:
        for i, j in itertools.combinations(range(num_edges), 2):
            if (j - i) % num_edges not in (1, num_edges - 1):
                relations.append(v[i] * v[j])
    for coord in (0, 1):
        form = Polynomial.zero(table)
        for i in range(num_edges):
            form = form + vectors[i][coord] * v[i]
        relations.append(form)
    return GradedPresentation(table, tuple(relations), label=f"toric_polygon({num_edges})")


def toric_polygon_presentation(name: str) -> GradedPresentation:
    vectors = load_polygon(name)
    p = toric_sr(len(vectors), vectors)
    return GradedPresentation(p.table, p.relations, label=f"toric({name})")


# -- identification maps -----------------------------------------------------

@dataclass(frozen=True)
class IdentificationItem:
    relation: str
    image: str
    residue: str
    ok: bool
    skipped: bool = False


@dataclass(frozen=True)
class IdentificationReport:
    source_label: str
    target_label: str
    items: tuple[IdentificationItem, ...]
    all_ok: bool

    def failures(self) -> list[IdentificationItem]:
        return [it for it in self.items if not it.ok and not it.skipped]

    def __str__(self):
        lines = [f"identification {self.source_label} -> {self.target_label}: "
                 + ("all relations map to zero" if self.all_ok else "nonzero residues found")]
        for it in self.items:
            if it.skipped:
                lines.append(f"  [skip] {it.relation} (unmapped generator)")
            else:
                status = "0" if it.ok else f"residue {it.residue}"
                lines.append(f"  {it.relation} -> {status}")
        return "\n".join(lines)


def _target_data(target) -> tuple[VariableTable, tuple[Polynomial, ...], str]:
    if isinstance(target, KirwanIdeal):
        return target.table, target.generators, f"kirwan(n={target.n})"
    if isinstance(target, GradedPresentation):
        return target.table, target.relations, target.label or "presentation"
    raise TypeError("target must be a KirwanIdeal or GradedPresentation")


def verify_identification(mapping: dict[str, Polynomial],
                          source: GradedPresentation,
                          target,
                          allow_partial: bool = False,
                          cache_dir=None) -> IdentificationReport:
    """Push every source relation through the map and reduce in the target.

    mapping sends source generator names to polynomials over the target's
    table; images must be homogeneous of the same weight.  Relations whose
    generators are not all mapped are an error unless allow_partial, in
    which case they are reported as skipped.
    """
    table, gens, target_label = _target_data(target)
    for name, image in mapping.items():
        src_weight = source.table.weights[source.table.index(name)]
        if image.table != table:
            raise ValueError(f"image of {name} is not over the target table")
        if not image.is_homogeneous() or (not image.is_zero() and image.degree() != src_weight):
            raise ValueError(f"image of {name} does not preserve the grading")
    missing = set(source.table.names) - set(mapping)
    if missing and not allow_partial:
        raise ValueError(f"map does not cover source generators: {sorted(missing)}")

    gb = buchberger(list(gens), MonomialOrder(table), cache_dir=cache_dir)
    items: list[IdentificationItem] = []
    for rel in source.relations:
        used = {source.table.names[i] for exp in rel.coeffs for i, e in enumerate(exp) if e}
        if used & missing:
            items.append(IdentificationItem(str(rel), "", "", ok=True, skipped=True))
            continue
        image = Polynomial.zero(table)
        for exp, c in rel.coeffs.items():
            term = Polynomial.constant(table, c)
            for i, e in enumerate(exp):
                if e:
                    term = term * mapping[source.table.names[i]] ** e
            image = image + term
        residue = normal_form(image, gb)
        items.append(IdentificationItem(str(rel), str(image), str(residue), residue.is_zero()))
    all_ok = all(it.ok for it in items if not it.skipped)
    return IdentificationReport(source.label or "source", target_label, tuple(items), all_ok)
