"""Permutations of S_n, reduced words, and divided difference operators.

Permutations are tuples in one-line notation with 1-indexed values:
``w[i-1] = w(i)`` and the values are exactly 1..n.  Words are tuples of
simple transposition indices; the word (i_1, ..., i_l) denotes the
composition s_{i_1} o ... o s_{i_l} in which s_{i_l} acts first, and the
corresponding operator composition applies the rightmost divided
difference first.  This convention reproduces the worked chains
d_321 Delta = (x1-u3)(x1-u4)(x2-u4) for n=4 and
d_(34123121) Delta = (x1-u5)(x2-u5) for n=5.
"""

from __future__ import annotations

from .algebra import Polynomial, VariableTable, exact_divide

Perm = tuple[int, ...]
Word = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))

def validate(w: Perm) -> None:
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError(f"not a permutation in one-line notation: {w}")


def length(w: Perm) -> int:
    """Number of inversions = minimal word length."""
    validate(w)
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def inverse(w: Perm) -> Perm:
    validate(w)
    inv = [0] * len(w)
    for i, v in enumerate(w):
        inv[v - 1] = i + 1
    return tuple(inv)


def compose(a: Perm, b: Perm) -> Perm:
    """(a o b)(i) = a(b(i)); b acts first."""
    return tuple(a[b[i] - 1] for i in range(len(a)))


def simple(n: int, i: int) -> Perm:
    if not 1 <= i <= n - 1:
        raise ValueError(f"simple transposition index {i} out of range for S_{n}")
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def right_multiply_simple(w: Perm, i: int) -> Perm:
    """w o s_i: swap the entries at positions i, i+1."""
    out = list(w)
    out[i - 1], out[i] = out[i], out[i - 1]
    return tuple(out)


def left_multiply_simple(w: Perm, i: int) -> Perm:
    """s_i o w: swap the values i, i+1."""
    out = list(w)
    p, q = out.index(i), out.index(i + 1)
    out[p], out[q] = out[q], out[p]
    return tuple(out)


def reduced_word(w: Perm) -> Word:
    """Canonical reduced word: repeatedly strip the smallest descent.

    If i is the smallest position with w(i) > w(i+1) then w = (w o s_i) o s_i
    with l(w o s_i) = l(w) - 1, so the word is built from the right.
    """
    validate(w)
    word: list[int] = []
    cur = list(w)
    while True:
        descent = next((i for i in range(1, len(cur)) if cur[i - 1] > cur[i]), None)
        if descent is None:
            break
        cur[descent - 1], cur[descent] = cur[descent], cur[descent - 1]
        word.append(descent)
    return tuple(reversed(word))


def apply_word(n: int, word: Word) -> Perm:
    """Compose the word's transpositions, rightmost acting first."""
    w = identity(n)
    for i in reversed(word):
        w = compose(simple(n, i), w)
    return w


def word_to_string(word: Word) -> str:
    return " ".join(f"s{i}" for i in word)


def parse_word(text: str) -> Word:
    items = text.split()
    out = []
    for item in items:
        if not item.startswith("s"):
            raise ValueError(f"bad word token: {item!r}")
        out.append(int(item[1:]))
    return tuple(out)


def parse_perm(text: str) -> Perm:
    """Parse one-line notation like '43521' (single digits, n <= 9)."""
    w = tuple(int(ch) for ch in text.strip())
    validate(w)
    return w


def perm_to_string(w: Perm) -> str:
    return "".join(str(v) for v in w)


# -- the determinant polynomial and divided differences ------------------

def xu_table(n: int) -> VariableTable:
    """The ring Q[x1..xn, u1..un] with every variable of weight 1."""
    names = tuple(f"x{i}" for i in range(1, n + 1)) + tuple(f"u{i}" for i in range(1, n + 1))
    return VariableTable(names, (1,) * (2 * n))


def det_poly(n: int) -> Polynomial:
    """Product of (x_i - u_j) over all 1 <= i < j <= n."""
    if n < 2:
        raise ValueError("determinant polynomial needs n >= 2")
    tab = xu_table(n)
    f = Polynomial.constant(tab, 1)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            f = f * (tab.variable(f"x{i}") - tab.variable(f"u{j}"))
    return f


def swap_x(f: Polynomial, i: int) -> Polynomial:
    """The action of s_i on the x-variables only."""
    a = f.table.index(f"x{i}")
    b = f.table.index(f"x{i + 1}")
    out = {}
    for exp, c in f.coeffs.items():
        e = list(exp)
        e[a], e[b] = e[b], e[a]
        out[tuple(e)] = c
    return Polynomial(f.table, out)


def divided_difference(i: int, f: Polynomial) -> Polynomial:
    """d_i f = (f - s_i f) / (x_i - x_{i+1}); always an exact quotient."""
    tab = f.table
    numerator = f - swap_x(f, i)
    if numerator.is_zero():
        return Polynomial.zero(tab)
    divisor = tab.variable(f"x{i}") - tab.variable(f"x{i + 1}")
    return exact_divide(numerator, divisor)


def divided_difference_w(w: Perm, f: Polynomial) -> Polynomial:
    """Compose divided differences along any reduced word of w.

    The result is independent of the chosen word; the rightmost letter of
    the word acts first.
    """
    for i in reversed(reduced_word(w)):
        f = divided_difference(i, f)
        if f.is_zero():
            break
    return f
