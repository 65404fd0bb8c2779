"""Binary convolutional codes: representation, predicates, distances, bounds.

Column distances come from two independent algorithms — exhaustive message
enumeration over the truncated sliding matrix, and a minimum-weight dynamic
program on the shift-register state graph — which must always agree.  The
free distance is an exact shortest-path search on the same state graph.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .gf2core import (
    BitMatrix,
    BitVec,
    PolyMatrix,
    k_minors,
    poly_gcd,
    rank,
    vec_mat_mul,
    vstack,
)
from .simplex import min_weight_block_code

MESSAGE_GUARD_BITS = 30
STATE_GUARD_BITS = 24
_CHUNK_BITS = 22


@dataclass(frozen=True)
class ConvCode:
    """An (n, k, delta) code given by coefficient matrices G_0..G_mu.

    `delta` is the declared degree; constructors in this package always emit
    row-reduced matrices so the declared and measured degrees agree.
    """

    n: int
    k: int
    coeffs: tuple
    delta: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1 or self.delta < 0:
            raise ValueError("invalid code parameters")
        if not self.coeffs:
            raise ValueError("need at least G_0")
        for g in self.coeffs:
            if g.rows != self.k or g.cols != self.n:
                raise ValueError("coefficient matrix shape mismatch")
        if self.coeffs[-1].is_zero() and len(self.coeffs) > 1:
            raise ValueError("trailing zero coefficient matrix (G_mu must be nonzero)")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def mu(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> BitMatrix:
        """G_i, with G_i = 0 for i > mu."""
        if i <= self.mu:
            return self.coeffs[i]
        return BitMatrix.zeros(self.k, self.n)

    def to_poly_matrix(self) -> PolyMatrix:
        return PolyMatrix.from_coeffs(list(self.coeffs))

    def permute_columns(self, perm: Sequence[int]) -> "ConvCode":
        """Apply one column permutation to every coefficient matrix."""
        return ConvCode(
            self.n, self.k, tuple(g.permute_columns(perm) for g in self.coeffs),
            self.delta,
        )


@dataclass(frozen=True)
class DistanceProfile:
    """Column distances d_0..d_jmax, optionally with the free distance."""

    values: tuple
    free_distance: Optional[int] = None
    method: str = ""

    def __post_init__(self):
        vals = tuple(self.values)
        if any(b < a for a, b in zip(vals, vals[1:])):
            raise ValueError("column distances must be nondecreasing")
        if self.free_distance is not None and any(
            v > self.free_distance for v in vals
        ):
            raise ValueError("column distance exceeds free distance")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class BoundReport:
    """Per-j bounds: weight-based lower/upper, their cap, and generic bounds."""

    lower: tuple
    upper: tuple
    cap: tuple
    column_bounds: tuple
    singleton: int
    L: int


# ---------------------------------------------------------------------------
# Sliding matrices and column distances


def sliding_matrix(c: ConvCode, j: int) -> BitMatrix:
    """Truncated sliding generator matrix: block (r, s) is G_{s-r}."""
    if j < 0:
        raise ValueError("j must be >= 0")
    rows = []
    for r in range(j + 1):
        for row in range(c.k):
            bits = 0
            for s in range(r, j + 1):
                g = c.coeff(s - r)
                bits |= g.row_bits[row] << (s * c.n)
            rows.append(bits)
    return BitMatrix((j + 1) * c.n, tuple(rows))


def _block_weight_luts(c: ConvCode, jmax: int):
    """Weight lookup tables for the i-th output block as a function of the
    window of message blocks u_{i-W}..u_i, W = min(i, mu)."""
    k, mu = c.k, c.mu
    luts = []
    for w_blocks in range(min(jmax, mu) + 1):
        size = 1 << (k * (w_blocks + 1))
        lut = np.empty(size, dtype=np.int64)
        kmask = (1 << k) - 1
        for w in range(size):
            out = 0
            for d in range(w_blocks + 1):
                block = (w >> (k * d)) & kmask
                if block:
                    out ^= vec_mat_mul(BitVec(k, block), c.coeffs[w_blocks - d]).bits
            lut[w] = out.bit_count()
        luts.append(lut)
    return luts


def column_distances_exhaustive(c: ConvCode, jmax: int):
    """Exact d_0..d_jmax by enumerating every message prefix with u_0 != 0."""
    if not is_delay_free(c):
        raise ValueError("column distances need a delay-free generator matrix")
    if jmax < 0:
        raise ValueError("jmax must be >= 0")
    bits = c.k * (jmax + 1)
    if bits > MESSAGE_GUARD_BITS:
        raise ValueError(f"{bits} message bits exceed the exhaustion guard")
    luts = _block_weight_luts(c, jmax)
    kmask = (1 << c.k) - 1
    total = 1 << bits
    dist = [math.inf] * (jmax + 1)
    chunk = 1 << min(bits, _CHUNK_BITS)
    for start in range(0, total, chunk):
        idx = np.arange(start, start + chunk, dtype=np.int64)
        live = (idx & kmask) != 0
        if not live.any():
            continue
        cum = np.zeros(len(idx), dtype=np.int64)
        for i in range(jmax + 1):
            w_blocks = min(i, c.mu)
            win = (idx >> (c.k * (i - w_blocks))) & (
                (1 << (c.k * (w_blocks + 1))) - 1
            )
            cum += luts[w_blocks][win]
            dist[i] = min(dist[i], int(cum[live].min()))
    return [int(d) for d in dist]


def column_distance_exhaustive(c: ConvCode, j: int) -> int:
    return column_distances_exhaustive(c, j)[j]


# ---------------------------------------------------------------------------
# Shift-register encoder and trellis algorithms


class _Encoder:
    """Direct-form encoder: one shift register of length nu_r per input row."""

    def __init__(self, c: ConvCode):
        self.c = c
        self.nus = row_degrees(c)
        self.memory = sum(self.nus)
        # state bit (offset_r + d - 1) stores the input of row r from d steps ago
        self.offsets = []
        off = 0
        for nu in self.nus:
            self.offsets.append(off)
            off += nu
        # output contribution of each state bit
        self.state_contrib = []
        for r, nu in enumerate(self.nus):
            for d in range(1, nu + 1):
                self.state_contrib.append(c.coeffs[d].row_bits[r])
        self.input_contrib = [c.coeffs[0].row_bits[r] for r in range(c.k)]
        self._out_cache = {0: 0}

    def _state_output(self, state: int) -> int:
        out = self._out_cache.get(state)
        if out is None:
            out = 0
            s = state
            while s:
                i = (s & -s).bit_length() - 1
                out ^= self.state_contrib[i]
                s &= s - 1
            self._out_cache[state] = out
        return out

    def output_bits(self, state: int, u: int) -> int:
        out = self._state_output(state)
        for r in range(self.c.k):
            if (u >> r) & 1:
                out ^= self.input_contrib[r]
        return out

    def next_state(self, state: int, u: int) -> int:
        nxt = 0
        for r, nu in enumerate(self.nus):
            if nu == 0:
                continue
            off = self.offsets[r]
            reg = (state >> off) & ((1 << nu) - 1)
            reg = ((reg << 1) | ((u >> r) & 1)) & ((1 << nu) - 1)
            nxt |= reg << off
        return nxt


def column_distances_trellis(c: ConvCode, jmax: int):
    """Exact d_0..d_jmax by minimum-weight traversal of the encoder states."""
    if not is_delay_free(c):
        raise ValueError("column distances need a delay-free generator matrix")
    if jmax < 0:
        raise ValueError("jmax must be >= 0")
    enc = _Encoder(c)
    if enc.memory > STATE_GUARD_BITS:
        raise ValueError(f"{enc.memory} state bits exceed the memory guard")
    cur = {}
    for u in range(1, 1 << c.k):
        w = enc.output_bits(0, u).bit_count()
        s = enc.next_state(0, u)
        if w < cur.get(s, math.inf):
            cur[s] = w
    dist = [min(cur.values())]
    for _ in range(jmax):
        nxt = {}
        for s, w in cur.items():
            for u in range(1 << c.k):
                w2 = w + enc.output_bits(s, u).bit_count()
                s2 = enc.next_state(s, u)
                if w2 < nxt.get(s2, math.inf):
                    nxt[s2] = w2
        cur = nxt
        dist.append(min(cur.values()))
    return dist


def column_distance_trellis(c: ConvCode, j: int) -> int:
    return column_distances_trellis(c, j)[j]


def distance_profile(
    c: ConvCode, jmax: int, method: str = "auto", with_free: bool = False
) -> DistanceProfile:
    """Column-distance profile d_0..d_jmax, optionally with the free distance."""
    if method == "auto":
        method = "trellis" if sum(row_degrees(c)) <= STATE_GUARD_BITS else "exhaustive"
    if method == "exhaustive":
        values = column_distances_exhaustive(c, jmax)
    elif method == "trellis":
        values = column_distances_trellis(c, jmax)
    else:
        raise ValueError(f"unknown method {method!r}")
    free = free_distance(c) if with_free else None
    return DistanceProfile(tuple(values), free, method)


def free_distance(c: ConvCode) -> int:
    """Exact free distance via Dijkstra on the encoder state graph.

    Only defined here for non-catastrophic codes, where the free distance is
    attained by a finite excursion that leaves the zero state with a nonzero
    input and returns to it.
    """
    if not is_noncatastrophic(c):
        raise ValueError("free distance search requires a non-catastrophic code")
    enc = _Encoder(c)
    if enc.memory > STATE_GUARD_BITS:
        raise ValueError(f"{enc.memory} state bits exceed the memory guard")
    best = math.inf
    heap = []
    for u in range(1, 1 << c.k):
        w = enc.output_bits(0, u).bit_count()
        s = enc.next_state(0, u)
        if s == 0:
            best = min(best, w)
        else:
            heapq.heappush(heap, (w, s))
    settled = set()
    while heap:
        w, s = heapq.heappop(heap)
        if w >= best:
            break
        if s in settled:
            continue
        settled.add(s)
        for u in range(1 << c.k):
            w2 = w + enc.output_bits(s, u).bit_count()
            s2 = enc.next_state(s, u)
            if s2 == 0:
                best = min(best, w2)
            elif s2 not in settled:
                heapq.heappush(heap, (w2, s2))
    return int(best)


# ---------------------------------------------------------------------------
# Degrees and structural predicates


def row_degrees(c: ConvCode):
    """nu_r = largest i with a nonzero row r in G_i (0 for a constant row)."""
    degs = []
    for r in range(c.k):
        nu = 0
        for i in range(c.mu, 0, -1):
            if c.coeffs[i].row_bits[r]:
                nu = i
                break
        degs.append(nu)
    return degs


def external_degree(c: ConvCode) -> int:
    return sum(row_degrees(c))


def internal_degree(c: ConvCode) -> Optional[int]:
    """Max degree of the k x k minors, or None if all minors vanish."""
    minors = k_minors(c.to_poly_matrix())
    degs = [m.degree for m in minors if not m.is_zero()]
    return max(degs) if degs else None


def is_row_reduced(c: ConvCode) -> bool:
    return internal_degree(c) == external_degree(c)


def is_delay_free(c: ConvCode) -> bool:
    return rank(c.coeffs[0]) == c.k


def has_generic_row_degrees(c: ConvCode) -> bool:
    """Row degrees distribute delta as evenly as possible: t rows of
    ceil(delta/k) and k - t of floor(delta/k), t = delta + k - k*ceil(delta/k)."""
    k, delta = c.k, c.delta
    hi = -(-delta // k)
    t = delta + k - k * hi
    expected = [hi] * t + [delta // k] * (k - t)
    return sorted(row_degrees(c), reverse=True) == sorted(expected, reverse=True)


def is_noncatastrophic(c: ConvCode) -> bool:
    """Left primeness: the gcd of all k x k minors of G(z) is 1."""
    minors = [m for m in k_minors(c.to_poly_matrix()) if not m.is_zero()]
    if not minors:
        raise ValueError("G(z) is rank deficient")
    g = minors[0]
    for m in minors[1:]:
        g = poly_gcd(g, m)
        if g.bits == 1:
            return True
    return g.bits == 1


# ---------------------------------------------------------------------------
# Closed-form bounds


def singleton_bound(n: int, k: int, delta: int) -> int:
    """Generalized Singleton bound on the free distance."""
    return (n - k) * (delta // k + 1) + delta + 1


def column_bound(n: int, k: int, j: int) -> int:
    """Generic upper bound (n-k)(j+1)+1 on the j-th column distance."""
    return (n - k) * (j + 1) + 1


def L_value(n: int, k: int, delta: int) -> int:
    """Largest j at which the generic column bound can still be attained."""
    if n <= k:
        raise ValueError("L needs n > k")
    return delta // k + delta // (n - k)


def is_mdp(c: ConvCode) -> bool:
    """Whether d_L meets the generic bound (unattainable over GF(2) for L >= 1)."""
    L = L_value(c.n, c.k, c.delta)
    return distance_profile(c, L).values[L] == column_bound(c.n, c.k, L)


def row_weight_bounds(c: ConvCode, jmax: int) -> BoundReport:
    """Weight-based per-j lower and upper bounds on the column distances.

    lower[j] accumulates, over i <= j, the restricted minimum weight of the
    block code stacked as (G_i; ...; G_0) with the top k message coordinates
    not all zero; upper[j] is the best row-weight sum over i <= min(j, delta);
    cap[j] = n*(min(j, delta) + 1).
    """
    if not is_delay_free(c):
        raise ValueError("bounds need a delay-free generator matrix")
    lower = []
    acc = 0
    for i in range(jmax + 1):
        if i <= c.mu:
            stacked = vstack([c.coeff(t) for t in range(i, -1, -1)])
            acc += min_weight_block_code(stacked, restrict_top_nonzero=c.k)
        # for i > mu the increment is 0: take u = (u_0, 0, ..., 0)
        lower.append(acc)
    # For a row-reduced matrix every row degree is <= delta, so summing to
    # min(j, delta) is exact; a non-row-reduced row may keep contributing up
    # to mu, hence the max.
    reach = max(c.delta, c.mu)
    upper = []
    for j in range(jmax + 1):
        upper.append(
            min(
                sum(c.coeff(i).row_bits[r].bit_count() for i in range(min(j, reach) + 1))
                for r in range(c.k)
            )
        )
    cap = tuple(c.n * (min(j, reach) + 1) for j in range(jmax + 1))
    col = tuple(column_bound(c.n, c.k, j) for j in range(jmax + 1))
    return BoundReport(
        lower=tuple(lower),
        upper=tuple(upper),
        cap=cap,
        column_bounds=col,
        singleton=singleton_bound(c.n, c.k, c.delta),
        L=L_value(c.n, c.k, c.delta) if c.n > c.k else -1,
    )
