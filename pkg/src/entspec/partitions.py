"""Exact integer partition counting and the convolution tables that give
the degeneracies of the entanglement spectrum.

Three base sequences are tabulated by dynamic programming over parts:

* ``p_distinct_odd[n]`` -- partitions of ``n`` into distinct odd parts,
* ``p_distinct[n]``     -- partitions into distinct parts,
* ``p_odd[n]``          -- partitions into odd parts (repetition allowed).

Euler's identity makes the last two equal term by term; they are kept as
independent recurrences precisely so that can be checked.  The
degeneracy sequences are the self-convolutions ``a = p_distinct_odd *
p_distinct_odd`` and ``b = p_distinct * p_distinct``.

All arithmetic is exact (Python integers); ``a[n]`` overflows 64 bits
near ``n ~ 4e4``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from operator import add

from .errors import ResourceLimitError

DEFAULT_N_CAP = 10**6


@dataclass(frozen=True)
class PartitionTable:
    """Exact partition counts and degeneracy convolutions up to ``n_max``."""

    n_max: int
    p_distinct_odd: list[int]
    p_distinct: list[int]
    p_odd: list[int]
    a: list[int]
    b: list[int]


def build_tables(n_max: int, cap: int = DEFAULT_N_CAP) -> PartitionTable:
    """Fill all tables for ``0 <= n <= n_max``.

    Distinct-part counts use a 0/1 knapsack over parts; the unbounded
    odd-part count uses per-residue prefix sums, which keeps the inner
    loops in C.  The convolutions are done as one exact big-integer
    squaring each (Kronecker substitution).
    """
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max!r}")
    if n_max > cap:
        raise ResourceLimitError(f"n_max={n_max} exceeds the configured cap {cap}")
    p_do = _distinct_parts(n_max, range(1, n_max + 1, 2))
    p_d = _distinct_parts(n_max, range(1, n_max + 1))
    p_o = _odd_parts(n_max)
    return PartitionTable(
        n_max=n_max,
        p_distinct_odd=p_do,
        p_distinct=p_d,
        p_odd=p_o,
        a=self_convolve(p_do),
        b=self_convolve(p_d),
    )


def _distinct_parts(n_max: int, parts) -> list[int]:
    # 0/1 knapsack: each slice assignment reads pre-update values.
    p = [0] * (n_max + 1)
    p[0] = 1
    for m in parts:
        p[m:] = list(map(add, p[m:], p[: n_max + 1 - m]))
    return p


def _odd_parts(n_max: int) -> list[int]:
    # Unbounded knapsack: adding part m is a running sum along every
    # residue class mod m.
    p = [0] * (n_max + 1)
    p[0] = 1
    for m in range(1, n_max + 1, 2):
        for r in range(m):
            p[r::m] = accumulate(p[r::m])
    return p


def self_convolve(seq: list[int]) -> list[int]:
    """Exact self-convolution ``c[n] = sum_l seq[l] * seq[n-l]`` truncated
    to ``len(seq)`` terms.

    Packs the sequence into one big integer with fixed-width limbs and
    squares it; limb width is sized so convolution coefficients cannot
    carry into a neighbour.
    """
    n = len(seq)
    if n == 0:
        return []
    max_bits = max(v.bit_length() for v in seq)
    width_bits = 2 * max_bits + n.bit_length() + 1
    width = (width_bits + 7) // 8  # bytes per limb
    packed = bytearray(n * width)
    for i, v in enumerate(seq):
        packed[i * width : i * width + (v.bit_length() + 7) // 8] = v.to_bytes(
            (v.bit_length() + 7) // 8 or 1, "little"
        )
    big = int.from_bytes(bytes(packed), "little")
    square = big * big
    raw = square.to_bytes(2 * n * width, "little")
    return [
        int.from_bytes(raw[i * width : (i + 1) * width], "little") for i in range(n)
    ]


def poly_mul_trunc(a: list[int], b: list[int], n_max: int) -> list[int]:
    """Exact product of two nonnegative-integer polynomials, truncated to
    degree ``n_max`` (Kronecker substitution)."""
    if not a or not b:
        return []
    max_bits = max(max(v.bit_length() for v in a), 1) + max(
        max(v.bit_length() for v in b), 1
    )
    width = (max_bits + min(len(a), len(b)).bit_length() + 1 + 7) // 8
    big_a = _pack(a, width)
    big_b = _pack(b, width)
    out_len = min(len(a) + len(b) - 1, n_max + 1)
    raw = (big_a * big_b).to_bytes((len(a) + len(b)) * width, "little")
    return [
        int.from_bytes(raw[i * width : (i + 1) * width], "little")
        for i in range(out_len)
    ]


def _pack(seq: list[int], width: int) -> int:
    packed = bytearray(len(seq) * width)
    for i, v in enumerate(seq):
        nb = (v.bit_length() + 7) // 8 or 1
        packed[i * width : i * width + nb] = v.to_bytes(nb, "little")
    return int.from_bytes(bytes(packed), "little")


def _product_expansion(parts: list[int], n_max: int) -> list[int]:
    """Coefficients of ``prod_m (1 + q^m)`` over the given parts, truncated
    to degree ``n_max``, multiplied pairwise as a balanced product tree.

    This is an algorithmically independent route to the same series the
    dynamic programs tabulate, used as a cross-check.
    """
    polys: list[list[int]] = []
    for m in parts:
        if m > n_max:
            break
        poly = [0] * (m + 1)
        poly[0] = poly[m] = 1
        polys.append(poly)
    if not polys:
        return [1] + [0] * n_max
    while len(polys) > 1:
        merged = []
        for i in range(0, len(polys) - 1, 2):
            merged.append(poly_mul_trunc(polys[i], polys[i + 1], n_max))
        if len(polys) % 2:
            merged.append(polys[-1])
        polys = merged
    out = polys[0]
    out.extend([0] * (n_max + 1 - len(out)))
    return out[: n_max + 1]


def series_coefficients_check(n_max: int, table: PartitionTable | None = None) -> bool:
    """Verify the product expansions against the DP tables.

    Expands ``prod_m (1 + q^(2m+1))`` and ``prod_m (1 + q^(2m))`` with
    exact polynomial multiplication and compares coefficient by
    coefficient: the first must reproduce ``p_distinct_odd``, and in the
    second the coefficient of ``q^(2n)`` must equal ``p_distinct[n]``
    (odd coefficients vanish).  Returns ``True`` iff everything matches.
    """
    if n_max > 4000:
        raise ValueError("series check is limited to n_max <= 4000")
    if table is None:
        table = build_tables(n_max)
    odd_series = _product_expansion(list(range(1, n_max + 1, 2)), n_max)
    if odd_series != table.p_distinct_odd[: n_max + 1]:
        return False
    even_series = _product_expansion(list(range(2, 2 * n_max + 1, 2)), 2 * n_max)
    for n in range(n_max + 1):
        if even_series[2 * n] != table.p_distinct[n]:
            return False
        if n and even_series[2 * n - 1] != 0:
            return False
    return True
