"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial lives over a fixed table of named, weighted variables and is
stored as a dictionary mapping exponent tuples to nonzero Fraction
coefficients.  The weight of a variable is its algebraic grading (the
cohomological degree is twice the weight); the active monomial order is
weighted-degree reverse lexicographic with ties broken by the table's
variable order.

Everything here is immutable after construction and all operations are
pure, so values can be shared freely.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

Exponent = tuple[int, ...]


class DivisibilityError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


class SymmetryError(ValueError):
    """Raised when a polynomial expected to be block-symmetric is not."""


class UnknownVariableError(KeyError):
    """Raised when a variable name is not present in a table."""


@dataclass(frozen=True)
class VariableTable:
    """Ordered table of (name, weight) pairs fixing the ambient ring."""

    names: tuple[str, ...]
    weights: tuple[int, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False, default=None)

    def __post_init__(self):
        if len(self.names) != len(self.weights):
            raise ValueError("names and weights must have equal length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive integers")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.names)})

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(name) from None

    def weighted_degree(self, exp: Exponent) -> int:
        return sum(e * w for e, w in zip(exp, self.weights))

    def sort_key(self, exp: Exponent):
        """Key of the active order: larger key means larger monomial."""
        return (self.weighted_degree(exp), tuple(-e for e in reversed(exp)))

    def variable(self, name: str) -> "Polynomial":
        exp = [0] * len(self.names)
        exp[self.index(name)] = 1
        return Polynomial(self, {tuple(exp): Fraction(1)})


def table(*pairs: tuple[str, int]) -> VariableTable:
    """Convenience constructor: table(("x1", 1), ("x2", 1), ...)."""
    return VariableTable(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("table", "coeffs")

    def __init__(self, table: VariableTable, coeffs: dict[Exponent, Fraction]):
        clean = {e: c for e, c in coeffs.items() if c != 0}
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *args):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, table: VariableTable) -> "Polynomial":
        return cls(table, {})

    @classmethod
    def constant(cls, table: VariableTable, value) -> "Polynomial":
        return cls(table, {(0,) * len(table): Fraction(value)})

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Weighted total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(self.table.weighted_degree(e) for e in self.coeffs)

    def is_homogeneous(self) -> bool:
        degs = {self.table.weighted_degree(e) for e in self.coeffs}
        return len(degs) <= 1

    def leading_exponent(self) -> Exponent:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading term")
        return max(self.coeffs, key=self.table.sort_key)

    def leading_coefficient(self) -> Fraction:
        return self.coeffs[self.leading_exponent()]

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in decreasing monomial order (the canonical form)."""
        return sorted(self.coeffs.items(), key=lambda t: self.table.sort_key(t[0]), reverse=True)

    # -- ring operations ----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.table != self.table:
                raise ValueError("polynomials over different variable tables")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.table, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(self.table, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.table, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Polynomial(self.table, {e: v * c for e, v in self.coeffs.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial(self.table, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.table, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.table, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.table == other.table and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.table.names, frozenset(self.coeffs.items())))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    # -- normal forms ---------------------------------------------------

    def primitive(self) -> "Polynomial":
        """Scale to integer coefficients with content 1 and positive leading coefficient."""
        if not self.coeffs:
            return self
        den = 1
        for c in self.coeffs.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self.coeffs.values():
            num = gcd(num, abs(c.numerator * (den // c.denominator)))
        scale = Fraction(den, num)
        if self.leading_coefficient() < 0:
            scale = -scale
        return self * scale

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        return self * (1 / self.leading_coefficient())


# -- printing and parsing ----------------------------------------------

def format_polynomial(f: Polynomial) -> str:
    """Canonical text form: terms in decreasing order, coefficients as p/q."""
    if f.is_zero():
        return "0"
    pieces = []
    for i, (exp, coeff) in enumerate(f.sorted_terms()):
        factors = []
        for name, e in zip(f.table.names, exp):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if i == 0:
            pieces.append(("-" if coeff < 0 else "") + body)
        else:
            pieces.append((" - " if coeff < 0 else " + ") + body)
    return "".join(pieces)


_TERM_TOKEN = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<body>(?:[0-9]+(?:/[0-9]+)?|[A-Za-z][A-Za-z0-9]*(?:\^[0-9]+)?)"
    r"(?:\s*\*\s*(?:[0-9]+(?:/[0-9]+)?|[A-Za-z][A-Za-z0-9]*(?:\^[0-9]+)?))*)"
)


def parse_polynomial(table: VariableTable, text: str) -> Polynomial:
    """Parse the canonical text form back into a polynomial."""
    text = text.strip()
    if text == "0":
        return Polynomial.zero(table)
    pos = 0
    coeffs: dict[Exponent, Fraction] = {}
    first = True
    while pos < len(text):
        m = _TERM_TOKEN.match(text, pos)
        if not m or (not first and m.group("sign") is None):
            raise ValueError(f"cannot parse polynomial at: {text[pos:]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        coeff = Fraction(sign)
        exp = [0] * len(table)
        for factor in m.group("body").split("*"):
            factor = factor.strip()
            if factor[0].isdigit():
                coeff *= Fraction(factor)
            else:
                name, _, power = factor.partition("^")
                exp[table.index(name)] += int(power) if power else 1
        key = tuple(exp)
        s = coeffs.get(key, 0) + coeff
        if s:
            coeffs[key] = s
        else:
            coeffs.pop(key, None)
        pos = m.end()
        first = False
    return Polynomial(table, coeffs)


# -- spec operations -----------------------------------------------------

def elem_sym(k: int, names: tuple[str, ...] | list[str], table: VariableTable) -> Polynomial:
    """Elementary symmetric polynomial sigma_k over the given variables."""
    if k < 0 or k > len(names):
        raise ValueError(f"elementary symmetric index {k} out of range 0..{len(names)}")
    idx = [table.index(v) for v in names]
    coeffs: dict[Exponent, Fraction] = {}
    for subset in itertools.combinations(idx, k):
        exp = [0] * len(table)
        for i in subset:
            exp[i] = 1
        coeffs[tuple(exp)] = Fraction(1)
    return Polynomial(table, coeffs)


def substitute(f: Polynomial, mapping: dict[str, str]) -> Polynomial:
    """Rename variables of f according to mapping (v -> mapping[v]).

    The map must be injective on the variables that actually occur in f;
    unmapped variables stay fixed.
    """
    tab = f.table
    n = len(tab)
    target = list(range(n))
    for src, dst in mapping.items():
        target[tab.index(src)] = tab.index(dst)
    occurring = set()
    for exp in f.coeffs:
        occurring.update(i for i, e in enumerate(exp) if e)
    images = [target[i] for i in sorted(occurring)]
    if len(set(images)) != len(images):
        raise ValueError("substitution map is not injective on occurring variables")
    out: dict[Exponent, Fraction] = {}
    for exp, c in f.coeffs.items():
        new = [0] * n
        for i, e in enumerate(exp):
            if e:
                new[target[i]] += e
        out[tuple(new)] = c
    return Polynomial(tab, out)


def _is_var_difference(g: Polynomial) -> tuple[int, int] | None:
    """Return (a, b) if g = x_a - x_b for single variables, else None."""
    if len(g.coeffs) != 2:
        return None
    items = sorted(g.coeffs.items(), key=lambda t: g.table.sort_key(t[0]), reverse=True)
    (e1, c1), (e2, c2) = items
    if c1 != 1 or c2 != -1:
        return None
    if sum(e1) != 1 or sum(e2) != 1:
        return None
    return e1.index(1), e2.index(1)


def _divide_by_var_difference(f: Polynomial, a: int, b: int) -> Polynomial:
    """Exact division of f by (x_a - x_b) via Horner recursion on x_a."""
    levels: dict[int, dict[Exponent, Fraction]] = {}
    for exp, c in f.coeffs.items():
        k = exp[a]
        stripped = exp[:a] + (0,) + exp[a + 1:]
        levels.setdefault(k, {})[stripped] = c
    if not levels:
        return Polynomial.zero(f.table)
    out: dict[Exponent, Fraction] = {}
    carry: dict[Exponent, Fraction] = {}
    for k in range(max(levels), 0, -1):
        cur = dict(levels.get(k, {}))
        for exp, c in carry.items():
            s = cur.get(exp, 0) + c
            if s:
                cur[exp] = s
            else:
                cur.pop(exp, None)
        for exp, c in cur.items():
            out[exp[:a] + (k - 1,) + exp[a + 1:]] = c
        carry = {}
        for exp, c in cur.items():
            shifted = list(exp)
            shifted[b] += 1
            carry[tuple(shifted)] = c
    remainder = dict(levels.get(0, {}))
    for exp, c in carry.items():
        s = remainder.get(exp, 0) + c
        if s:
            remainder[exp] = s
        else:
            remainder.pop(exp, None)
    if remainder:
        raise DivisibilityError("division by variable difference is not exact")
    return Polynomial(f.table, out)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Return q with f = q*g, or raise DivisibilityError if no such q exists."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if f.is_zero():
        return Polynomial.zero(f.table)
    if f.table != g.table:
        raise ValueError("polynomials over different variable tables")
    pair = _is_var_difference(g)
    if pair is not None:
        return _divide_by_var_difference(f, *pair)
    lt_g = g.leading_exponent()
    lc_g = g.coeffs[lt_g]
    rest = Polynomial(g.table, {e: c for e, c in g.coeffs.items() if e != lt_g})
    quotient: dict[Exponent, Fraction] = {}
    r = f
    while not r.is_zero():
        lt_r = r.leading_exponent()
        diff = tuple(x - y for x, y in zip(lt_r, lt_g))
        if any(d < 0 for d in diff):
            raise DivisibilityError("polynomial division is not exact")
        c = r.coeffs[lt_r] / lc_g
        quotient[diff] = c
        # r -= c * x^diff * g, with the leading term cancelling by construction
        update = dict(r.coeffs)
        del update[lt_r]
        for e, gc in rest.coeffs.items():
            key = tuple(x + y for x, y in zip(e, diff))
            s = update.get(key, 0) - c * gc
            if s:
                update[key] = s
            else:
                update.pop(key, None)
        r = Polynomial(f.table, update)
    return Polynomial(f.table, quotient)


def block_reduce(
    f: Polynomial,
    blocks: list[list[str]],
    targets: list[list[str]],
) -> Polynomial:
    """Rewrite a blockwise-symmetric polynomial in block elementary symmetric generators.

    ``blocks`` lists disjoint groups of variables of f; ``targets`` supplies,
    for each block, the new variable names standing for sigma_1 .. sigma_k of
    that block (the i-th target carries weight i).  Variables of f outside all
    blocks pass through unchanged.  The output table is the concatenation of
    all targets followed by the untouched variables.

    Non-symmetry is detected during reduction: if the leading block exponent
    is ever not weakly decreasing the input was not block-symmetric and
    SymmetryError is raised.
    """
    tab = f.table
    block_idx = [[tab.index(v) for v in blk] for blk in blocks]
    flat = [i for blk in block_idx for i in blk]
    if len(set(flat)) != len(flat):
        raise ValueError("blocks must be disjoint")
    for blk, tgt in zip(block_idx, targets):
        if len(tgt) != len(blk):
            raise ValueError("each block needs exactly one target per variable")
    in_block = set(flat)
    passthrough = [i for i in range(len(tab)) if i not in in_block]

    out_names = tuple(t for tgt in targets for t in tgt) + tuple(tab.names[i] for i in passthrough)
    out_weights = tuple(i + 1 for tgt in targets for i in range(len(tgt))) + tuple(
        tab.weights[i] for i in passthrough
    )
    out_table = VariableTable(out_names, out_weights)

    target_offsets = []
    off = 0
    for tgt in targets:
        target_offsets.append(off)
        off += len(tgt)
    pass_offset = off

    # cache sigma_i per block, as polynomials over the input table
    sigmas = [
        [elem_sym(i, blocks[b], tab) for i in range(len(blocks[b]) + 1)]
        for b in range(len(blocks))
    ]

    def block_part(exp: Exponent) -> tuple[int, ...]:
        return tuple(exp[i] for i in flat)

    out: dict[Exponent, Fraction] = {}
    r = f
    while not r.is_zero():
        alpha = max(block_part(e) for e in r.coeffs)
        # leading block exponent must be weakly decreasing inside every block
        pos = 0
        deltas = []
        for blk in block_idx:
            part = alpha[pos:pos + len(blk)]
            if any(part[i] < part[i + 1] for i in range(len(part) - 1)):
                raise SymmetryError("polynomial is not symmetric within the given blocks")
            deltas.append([part[i] - (part[i + 1] if i + 1 < len(part) else 0)
                           for i in range(len(part))])
            pos += len(blk)
        coefficient_terms = {
            e: c for e, c in r.coeffs.items() if block_part(e) == alpha
        }
        # subtract (u-coefficient) * prod_b prod_i sigma_i(block_b)^delta_i
        sigma_prod = Polynomial.constant(tab, 1)
        for b, delta in enumerate(deltas):
            for i, d in enumerate(delta):
                if d:
                    sigma_prod = sigma_prod * sigmas[b][i + 1] ** d
        coeff_poly = Polynomial(tab, coefficient_terms)
        # rewrite the cancelled terms over the output table
        for e, c in coefficient_terms.items():
            new = [0] * len(out_table)
            for b, delta in enumerate(deltas):
                for i, d in enumerate(delta):
                    new[target_offsets[b] + i] = d
            for j, i in enumerate(passthrough):
                new[pass_offset + j] = e[i]
            key = tuple(new)
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        strip: dict[Exponent, Fraction] = {}
        for e, c in coeff_poly.coeffs.items():
            reduced = list(e)
            for i in flat:
                reduced[i] = 0
            strip[tuple(reduced)] = c
        r = r - Polynomial(tab, strip) * sigma_prod
    return Polynomial(out_table, out)
