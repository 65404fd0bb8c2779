"""Exhaustive searches: residual-row optimization and optimality oracles.

`search_optimal_row` scans every candidate bottom row of a stacked
coefficient matrix and keeps the ones maximizing the prefix minimum-weight
profile.  `verify_optimal` enumerates every coefficient sequence for given
(n, k, delta) and decides whether a candidate's column-distance profile is
lexicographically maximal up to a finite horizon.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .convcode import (
    ConvCode,
    DistanceProfile,
    column_distances_exhaustive,
    internal_degree,
    is_delay_free,
)
from .gf2core import BitMatrix, BitVec

ROW_SEARCH_GUARD_BITS = 24
CODE_SEARCH_GUARD_BITS = 24
_ROW_CHUNK = 1 << 18


@dataclass(frozen=True)
class RowSearchResult:
    """Rows achieving the best prefix minimum-weight profile."""

    optimal_rows: tuple
    profile: tuple
    evaluated: int


@dataclass(frozen=True)
class OptimalityVerdict:
    """Outcome of the brute-force optimality check up to a horizon."""

    optimal: bool
    horizon: int
    witness: Optional[ConvCode]
    ties_at_horizon: bool


def wt_profile(stacked: BitMatrix, widths) -> Tuple[int, ...]:
    """For each s: minimum weight of the code generated by the first s columns."""
    nrows = stacked.rows
    if nrows == 0:
        raise ValueError("empty matrix")
    if nrows > 30:
        raise ValueError(f"{nrows} message bits exceed the exhaustion guard")
    codewords = []
    cw = 0
    prev = 0
    rows = stacked.row_bits
    for i in range(1, 1 << nrows):
        g = i ^ (i >> 1)
        cw ^= rows[(g ^ prev).bit_length() - 1]
        prev = g
        codewords.append(cw)
    out = []
    for s in widths:
        if not 0 < s <= stacked.cols:
            raise ValueError(f"width {s} out of range")
        mask = (1 << s) - 1
        out.append(min((c & mask).bit_count() for c in codewords))
    return tuple(out)


def _row_combos(rows) -> np.ndarray:
    """All 2^len(rows) XOR combinations, indexed by the selection mask."""
    combos = np.zeros(1 << len(rows), dtype=np.uint64)
    for i, r in enumerate(rows):
        half = 1 << i
        combos[half : 2 * half] = combos[:half] ^ np.uint64(r)
    return combos


def search_optimal_row(top: BitMatrix, objective: str = "lex") -> RowSearchResult:
    """Scan all rows g of length top.cols and keep the profile maximizers.

    With objective="lex" the full profile wt^1..wt^cols of [top; g] is
    maximized lexicographically; with objective="final" only wt^cols is
    maximized (the reported profile is then the lexicographic best among the
    selected rows).
    """
    if objective not in ("lex", "final"):
        raise ValueError(f"unknown objective {objective!r}")
    width = top.cols
    if width > ROW_SEARCH_GUARD_BITS:
        raise ValueError(f"2^{width} candidates exceed the search guard")
    combos = _row_combos(top.row_bits)
    fixed = combos[1:]  # nonzero combinations of the top rows alone
    masks = [np.uint64((1 << s) - 1) for s in range(1, width + 1)]
    fixed_min = np.array(
        [int(np.bitwise_count(fixed & m).min()) for m in masks], dtype=np.int64
    )

    best_rows: list = []
    best_profile = None
    total = 1 << width
    for start in range(0, total, _ROW_CHUNK):
        cands = np.arange(start, min(start + _ROW_CHUNK, total), dtype=np.uint64)
        x = cands[:, None] ^ combos[None, :]
        prof = np.empty((len(cands), width), dtype=np.int64)
        for s, m in enumerate(masks):
            prof[:, s] = np.minimum(
                np.bitwise_count(x & m).min(axis=1), fixed_min[s]
            )
        if objective == "final":
            order = [width - 1] + list(range(width - 1))
        else:
            order = list(range(width))
        live = np.ones(len(cands), dtype=bool)
        key = []
        for s in order:
            col = prof[live, s]
            mx = int(col.max())
            key.append(mx)
            live[live] = col == mx
            if objective == "final":
                break
        if objective == "final":
            # among the final-value maximizers, report the lex-best profile
            sub = prof[live]
            sub_live = np.ones(len(sub), dtype=bool)
            for s in range(width):
                col = sub[sub_live, s]
                mx = int(col.max())
                sub_live[sub_live] = col == mx
            chunk_profile = tuple(int(v) for v in sub[sub_live][0])
            chunk_key = (key[0],)
        else:
            chunk_profile = tuple(key)
            chunk_key = tuple(key)
        chunk_rows = [int(v) for v in cands[live]]
        prev_key = (
            None
            if best_profile is None
            else ((best_profile[-1],) if objective == "final" else best_profile)
        )
        if prev_key is None or chunk_key > prev_key:
            best_profile, best_rows = chunk_profile, chunk_rows
        elif chunk_key == prev_key:
            best_rows.extend(chunk_rows)
    return RowSearchResult(
        optimal_rows=tuple(BitVec(width, r) for r in best_rows),
        profile=best_profile,
        evaluated=total,
    )


# ---------------------------------------------------------------------------
# Brute-force optimality


def _enumerate_codes(n: int, k: int, delta: int):
    """Every delay-free coefficient sequence of degree exactly delta.

    For k = 1 the degree equals the top coefficient index, so G_delta must be
    nonzero.  For k > 1 trailing zero matrices are trimmed and the degree is
    re-derived from the k x k minors.
    """
    bits = k * n * (delta + 1)
    if bits > CODE_SEARCH_GUARD_BITS:
        raise ValueError(f"2^{bits} coefficient choices exceed the search guard")
    row_space = range(1 << n)
    mat_space = [
        tuple(rows) for rows in itertools.product(row_space, repeat=k)
    ]
    for seq in itertools.product(mat_space, repeat=delta + 1):
        if k == 1:
            if seq[0][0] == 0 or (delta > 0 and seq[-1][0] == 0):
                continue
            coeffs = tuple(BitMatrix(n, m) for m in seq)
            yield ConvCode(n, k, coeffs, delta)
        else:
            trimmed = list(seq)
            while len(trimmed) > 1 and all(r == 0 for r in trimmed[-1]):
                trimmed.pop()
            if all(r == 0 for r in trimmed[-1]):
                continue
            coeffs = tuple(BitMatrix(n, m) for m in trimmed)
            code = ConvCode(n, k, coeffs, delta)
            if not is_delay_free(code):
                continue
            if internal_degree(code) != delta:
                continue
            yield code


def optimal_codes_bruteforce(n: int, k: int, delta: int, horizon: int):
    """Lexicographically maximal profile over the space, with every achiever."""
    best = None
    achievers: list = []
    for code in _enumerate_codes(n, k, delta):
        profile = tuple(column_distances_exhaustive(code, horizon))
        if best is None or profile > best:
            best, achievers = profile, [code]
        elif profile == best:
            achievers.append(code)
    if best is None:
        raise ValueError("empty enumeration space")
    return best, achievers


def best_profile_bruteforce(n: int, k: int, delta: int, horizon: int):
    """The maximal profile and one witness code achieving it."""
    best, achievers = optimal_codes_bruteforce(n, k, delta, horizon)
    return DistanceProfile(best, None, "bruteforce"), achievers[0]


def codes_equivalent_by_column_permutation(a: ConvCode, b: ConvCode) -> bool:
    """True iff one fixed column permutation maps every G_i of a onto b's.

    Works on the multiset of column "tubes" (a column stacked through all
    coefficient matrices), which a simultaneous permutation reorders.
    """
    if (a.n, a.k) != (b.n, b.k):
        return False
    mu = max(a.mu, b.mu)
    return _padded_tubes(a, mu) == _padded_tubes(b, mu)


def _padded_tubes(c: ConvCode, mu: int):
    tubes = []
    for j in range(c.n):
        bits = 0
        pos = 0
        for i in range(mu + 1):
            g = c.coeff(i)
            for r in range(c.k):
                bits |= ((g.row_bits[r] >> j) & 1) << pos
                pos += 1
        tubes.append(bits)
    return sorted(tubes)


def verify_optimal(c: ConvCode, horizon: Optional[int] = None) -> OptimalityVerdict:
    """Decide whether c's profile is lexicographically maximal to the horizon.

    A tie is reported when some enumerated maximal code is not a column
    permutation of c; such codes agree with c through the horizon but could
    diverge beyond it.
    """
    if horizon is None:
        horizon = c.delta + 5
    profile = tuple(column_distances_exhaustive(c, horizon))
    best, achievers = optimal_codes_bruteforce(c.n, c.k, c.delta, horizon)
    if profile < best:
        return OptimalityVerdict(False, horizon, achievers[0], False)
    ties = any(
        not codes_equivalent_by_column_permutation(c, other) for other in achievers
    )
    return OptimalityVerdict(True, horizon, None, ties)
