"""Partial multi-valued functions on a finite base set.

A pmf from B^n to B^m is a relation graph stored as a dense bitset:
bit x*|B|^m + y is set iff the input tuple with code x may map to the
output tuple with code y.  Tuple codes are big-endian positional with
index 0 leftmost, so (x0,...,x_{k-1}) encodes as sum x_j * |B|^(k-1-j).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .config import ShapeError


def encode_tuple(digits: Sequence[int], base: int) -> int:
    code = 0
    for d in digits:
        if not 0 <= d < base:
            raise ValueError(f"digit {d} outside base {base}")
        code = code * base + d
    return code


def decode_tuple(code: int, arity: int, base: int) -> tuple:
    digits = [0] * arity
    for j in range(arity - 1, -1, -1):
        code, digits[j] = divmod(code, base)
    if code:
        raise ValueError("code out of range for arity")
    return tuple(digits)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Pmf:
    """A partial multi-valued function B^n -| B^m as a relation bitset."""

    base: int
    n: int
    m: int
    mask: int

    def __post_init__(self):
        cells = self.base ** self.n * self.base ** self.m
        if self.mask < 0 or self.mask >> cells:
            raise ValueError("graph bits outside B^n x B^m")

    @property
    def shape(self) -> tuple:
        return (self.n, self.m)

    def graph(self) -> list:
        """Graph pairs (input code, output code) in row-major order."""
        bm = self.base ** self.m
        return [divmod(i, bm) for i in iter_bits(self.mask)]

    def pairs(self) -> list:
        """Graph pairs as digit tuples."""
        return [(decode_tuple(x, self.n, self.base),
                 decode_tuple(y, self.m, self.base))
                for x, y in self.graph()]

    def size(self) -> int:
        return self.mask.bit_count()

    def maps(self, x: int, y: int) -> bool:
        return bool(self.mask >> (x * self.base ** self.m + y) & 1)

    def __repr__(self):
        body = ",".join(f"{x}:{y}" for x, y in self.graph())
        return f"Pmf({self.base};{self.n}->{self.m};{{{body}}})"


def from_graph(base: int, n: int, m: int, pairs) -> Pmf:
    bm = base ** m
    mask = 0
    for x, y in pairs:
        if not (0 <= x < base ** n and 0 <= y < bm):
            raise ValueError(f"pair ({x},{y}) outside B^{n} x B^{m}")
        mask |= 1 << (x * bm + y)
    return Pmf(base, n, m, mask)


def from_pairs(base: int, n: int, m: int, digit_pairs) -> Pmf:
    return from_graph(base, n, m,
                      [(encode_tuple(xs, base), encode_tuple(ys, base))
                       for xs, ys in digit_pairs])


def from_function(base: int, n: int, m: int, fn) -> Pmf:
    """Total function given as a map on digit tuples."""
    pairs = []
    for x in range(base ** n):
        ys = fn(decode_tuple(x, n, base))
        pairs.append((x, encode_tuple(ys, base)))
    return from_graph(base, n, m, pairs)


def identity(base: int, n: int) -> Pmf:
    return from_graph(base, n, n, [(x, x) for x in range(base ** n)])


def empty(base: int, n: int, m: int) -> Pmf:
    return Pmf(base, n, m, 0)


def compose(g: Pmf, f: Pmf) -> Pmf:
    """Relational join: (g o f)(x) ~ z iff exists y, f(x) ~ y and g(y) ~ z."""
    if f.base != g.base:
        raise ShapeError("base mismatch")
    if f.m != g.n:
        raise ShapeError(f"cannot compose {g.shape} after {f.shape}")
    return Pmf(f.base, f.n, g.m,
               compose_mask(f.mask, g.mask, f.base, f.n, f.m, g.m))


def compose_mask(fmask: int, gmask: int, base: int, n: int, m: int,
                 r: int) -> int:
    bm, br = base ** m, base ** r
    rows = [0] * bm
    for i in iter_bits(gmask):
        y, z = divmod(i, br)
        rows[y] |= 1 << z
    out = 0
    for i in iter_bits(fmask):
        x, y = divmod(i, bm)
        out |= rows[y] << (x * br)
    return out


def product(f: Pmf, g: Pmf) -> Pmf:
    """Parallel product; inputs of f occupy the leading coordinates."""
    if f.base != g.base:
        raise ShapeError("base mismatch")
    return Pmf(f.base, f.n + g.n, f.m + g.m,
               product_mask(f.mask, g.mask, f.base, f.n, f.m, g.n, g.m))


def product_mask(fmask: int, gmask: int, base: int, n1: int, m1: int,
                 n2: int, m2: int) -> int:
    bm1, bn2, bm2 = base ** m1, base ** n2, base ** m2
    gpairs = [divmod(i, bm2) for i in iter_bits(gmask)]
    out = 0
    for i in iter_bits(fmask):
        x1, y1 = divmod(i, bm1)
        for x2, y2 in gpairs:
            out |= 1 << ((x1 * bn2 + x2) * (bm1 * bm2) + y1 * bm2 + y2)
    return out


def inverse(f: Pmf) -> Pmf:
    bm = f.base ** f.m
    bn = f.base ** f.n
    mask = 0
    for i in iter_bits(f.mask):
        x, y = divmod(i, bm)
        mask |= 1 << (y * bn + x)
    return Pmf(f.base, f.m, f.n, mask)


def subfunction_of(f: Pmf, g: Pmf) -> bool:
    return (f.shape == g.shape and f.base == g.base
            and f.mask & ~g.mask == 0)


def is_total(f: Pmf) -> bool:
    bm = f.base ** f.m
    row = (1 << bm) - 1
    return all(f.mask >> (x * bm) & row for x in range(f.base ** f.n))


def is_univalued(f: Pmf) -> bool:
    bm = f.base ** f.m
    row = (1 << bm) - 1
    return all((f.mask >> (x * bm) & row).bit_count() <= 1
               for x in range(f.base ** f.n))


def is_surjective(f: Pmf) -> bool:
    hit = 0
    bm = f.base ** f.m
    for i in iter_bits(f.mask):
        hit |= 1 << (i % bm)
    return hit == (1 << bm) - 1


def is_injective(f: Pmf) -> bool:
    seen = 0
    bm = f.base ** f.m
    for i in iter_bits(f.mask):
        bit = 1 << (i % bm)
        if seen & bit and _preimages(f, i % bm) > 1:
            return False
        seen |= bit
    return True


def _preimages(f: Pmf, y: int) -> int:
    bm = f.base ** f.m
    return sum(1 for i in iter_bits(f.mask) if i % bm == y)


def is_permutation(f: Pmf) -> bool:
    return (f.n == f.m and is_total(f) and is_univalued(f)
            and is_injective(f) and is_surjective(f))


def predicates(f: Pmf) -> dict:
    return {
        "is_total": is_total(f),
        "is_univalued": is_univalued(f),
        "is_injective": is_injective(f),
        "is_surjective": is_surjective(f),
        "is_permutation": is_permutation(f),
    }


def variable_permutation(base: int, sigma: Sequence[int]) -> Pmf:
    """The coordinate shuffle x |-> (x_{sigma(0)}, ..., x_{sigma(n-1)})."""
    n = len(sigma)
    if sorted(sigma) != list(range(n)):
        raise ValueError("sigma is not a permutation")
    return from_function(base, n, n,
                         lambda xs: tuple(xs[j] for j in sigma))


def swap(base: int) -> Pmf:
    return variable_permutation(base, (1, 0))


def diagonal(base: int, m: int) -> Pmf:
    """Delta_m : B -> B^m, x |-> (x, ..., x)."""
    return from_function(base, 1, m, lambda xs: xs * m)


def projection(base: int, n: int, i: int) -> Pmf:
    if not 0 <= i < n:
        raise ValueError(f"projection index {i} outside arity {n}")
    return from_function(base, n, 1, lambda xs: (xs[i],))


def constant(base: int, b: int) -> Pmf:
    """The constant function B^0 -> B^1 with value b."""
    if not 0 <= b < base:
        raise ValueError(f"constant {b} outside base {base}")
    return from_graph(base, 0, 1, [(0, b)])


def project_output(f: Pmf, i: int) -> Pmf:
    """pi_{m,i} o f, computed directly on the graph."""
    if not 0 <= i < f.m:
        raise ValueError("output index out of range")
    bm = f.base ** f.m
    pairs = set()
    for idx in iter_bits(f.mask):
        x, y = divmod(idx, bm)
        pairs.add((x, decode_tuple(y, f.m, f.base)[i]))
    return from_graph(f.base, f.n, 1, pairs)


def structural_pmf(kind: str, base: int, **params) -> Pmf:
    """Named structural pmfs: swap, variable permutations, diagonals,
    projections, constants, and empty pmfs of any shape."""
    if kind == "swap":
        return swap(base)
    if kind == "variable_permutation":
        return variable_permutation(base, params["sigma"])
    if kind == "diagonal":
        return diagonal(base, params["m"])
    if kind == "projection":
        return projection(base, params["n"], params["i"])
    if kind == "constant":
        return constant(base, params["b"])
    if kind == "identity":
        return identity(base, params["n"])
    if kind == "empty":
        return empty(base, params["n"], params["m"])
    raise ValueError(f"unknown structural pmf kind: {kind}")
