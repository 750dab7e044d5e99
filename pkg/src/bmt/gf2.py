"""GF(2) linear algebra on int-encoded vectors and point sets.

A vector in GF(2)^n is an int in [0, 2^n); bit i is the coefficient of the
i-th unit vector.  The nonzero vectors 1..2^n-1 are the points of the
projective geometry PG(n-1, 2).  A set of points is an int bitmask whose
bit p is set iff point p belongs to the set; bit 0 is never set.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np


def parity(x: int) -> int:
    return x.bit_count() & 1


def dot(w: int, x: int) -> int:
    """Standard bilinear form <w, x> over GF(2)."""
    return (w & x).bit_count() & 1


def mask_points(mask: int) -> list[int]:
    """Set bits of mask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def points_mask(points: Iterable[int]) -> int:
    mask = 0
    for p in points:
        mask |= 1 << p
    return mask


def rref(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced basis of the span, as an ascending tuple.

    Every basis vector has a distinct leading bit and that bit is clear in
    all the others, so equal subspaces always reduce to the same tuple.
    """
    pivots: dict[int, int] = {}
    for v in vectors:
        while v:
            lead = v.bit_length() - 1
            if lead in pivots:
                v ^= pivots[lead]
            else:
                pivots[lead] = v
                break
    for lead in sorted(pivots):
        v = pivots[lead]
        for other in list(pivots):
            if other != lead and (pivots[other] >> lead) & 1:
                pivots[other] ^= v
    return tuple(sorted(pivots.values()))


def rank(vectors: Iterable[int]) -> int:
    return len(rref(vectors))


def is_independent(vectors: Iterable[int]) -> bool:
    vecs = list(vectors)
    return rank(vecs) == len(vecs)


def span_members(basis: Iterable[int]) -> int:
    """Bitmask of the nonzero vectors spanned by basis."""
    members = [0]
    for v in basis:
        members += [s ^ v for s in members]
    mask = 0
    for s in members:
        mask |= 1 << s
    return mask & ~1


@dataclass(frozen=True)
class Flat:
    """A linear subspace, kept as dimension, reduced basis, point bitmask."""

    dim: int
    basis: tuple[int, ...]
    members: int

    def contains(self, p: int) -> bool:
        return (self.members >> p) & 1 == 1

    @property
    def size(self) -> int:
        """Number of projective points, 2^dim - 1."""
        return self.members.bit_count()

    def points(self) -> list[int]:
        return mask_points(self.members)


EMPTY_FLAT = Flat(0, (), 0)


def closure(points: Iterable[int], n: int) -> Flat:
    """Smallest flat of PG(n-1, 2) containing the given points."""
    pts = list(points)
    top = 1 << n
    for p in pts:
        if not 1 <= p < top:
            raise ValueError(f"point {p} out of range for dimension {n}")
    basis = rref(pts)
    return Flat(len(basis), basis, span_members(basis))


def functional_kernel(w: int, n: int) -> Flat:
    """The hyperplane {x : <w, x> = 0} of PG(n-1, 2), for w != 0."""
    if not 1 <= w < (1 << n):
        raise ValueError(f"functional {w} out of range for dimension {n}")
    pbit = (w & -w).bit_length() - 1
    vecs = []
    for i in range(n):
        if i == pbit:
            continue
        v = 1 << i
        if (w >> i) & 1:
            v |= 1 << pbit
        vecs.append(v)
    basis = rref(vecs)
    return Flat(n - 1, basis, span_members(basis))


def hyperplanes(n: int) -> Iterator[tuple[int, Flat]]:
    """All hyperplanes of PG(n-1, 2), by ascending defining functional."""
    for w in range(1, 1 << n):
        yield w, functional_kernel(w, n)


def hyperplane_functional(members: int, n: int) -> int:
    """Functional w whose kernel is the given dim n-1 flat bitmask.

    w is determined by which unit vectors lie inside the flat.
    """
    w = 0
    for i in range(n):
        if not (members >> (1 << i)) & 1:
            w |= 1 << i
    return w


def linear_system_solve(
    rows: Iterable[int], rhs: Iterable[int], n: int
) -> tuple[int | None, tuple[int, ...]]:
    """Solve <row_i, x> = rhs_i over GF(2)^n.

    Returns (least solution or None, reduced kernel basis).  The kernel
    basis is returned even when the system is inconsistent.
    """
    pivots: dict[int, tuple[int, int]] = {}
    inconsistent = False
    for row, b in zip(rows, rhs):
        v, t = row, b & 1
        while v:
            lead = v.bit_length() - 1
            if lead in pivots:
                pv, pt = pivots[lead]
                v ^= pv
                t ^= pt
            else:
                pivots[lead] = (v, t)
                break
        if v == 0 and t == 1:
            inconsistent = True
    for lead in sorted(pivots):
        v, t = pivots[lead]
        for other in list(pivots):
            if other != lead and (pivots[other][0] >> lead) & 1:
                ov, ot = pivots[other]
                pivots[other] = (ov ^ v, ot ^ t)
    # Kernel: one free vector per non-pivot bit.
    kernel = []
    for i in range(n):
        if i in pivots:
            continue
        v = 1 << i
        for lead, (pv, _) in pivots.items():
            if (pv >> i) & 1:
                v |= 1 << lead
        kernel.append(v)
    kbasis = rref(kernel)
    if inconsistent:
        return None, kbasis
    x = 0
    for lead, (_, t) in pivots.items():
        if t:
            x |= 1 << lead
    # Reduce to the least element of the solution coset.
    for k in sorted(kbasis, reverse=True):
        if (x >> (k.bit_length() - 1)) & 1:
            x ^= k
    return x, kbasis


@dataclass(frozen=True)
class LinearMap:
    """Linear map GF(2)^n_from -> GF(2)^n_to; images[i] is the image of 1<<i."""

    n_from: int
    n_to: int
    images: tuple[int, ...]

    def apply(self, x: int) -> int:
        y = 0
        while x:
            low = x & -x
            x ^= low
            y ^= self.images[low.bit_length() - 1]
        return y

    def apply_mask(self, mask: int) -> int:
        out = 0
        while mask:
            low = mask & -mask
            mask ^= low
            out |= 1 << self.apply(low.bit_length() - 1)
        return out

    def is_invertible(self) -> bool:
        return self.n_from == self.n_to and rank(self.images) == self.n_from


def identity_map(n: int) -> LinearMap:
    return LinearMap(n, n, tuple(1 << i for i in range(n)))


def compose(g: LinearMap, h: LinearMap) -> LinearMap:
    """g after h."""
    if h.n_to != g.n_from:
        raise ValueError("dimension mismatch in composition")
    return LinearMap(h.n_from, g.n_to, tuple(g.apply(im) for im in h.images))


def invert(m: LinearMap) -> LinearMap:
    if m.n_from != m.n_to:
        raise ValueError("only square maps can be inverted")
    n = m.n_from
    pivots: dict[int, tuple[int, int]] = {}
    for i in range(n):
        v, t = m.images[i], 1 << i
        while v:
            lead = v.bit_length() - 1
            if lead in pivots:
                pv, pt = pivots[lead]
                v ^= pv
                t ^= pt
            else:
                pivots[lead] = (v, t)
                break
        if v == 0:
            raise ValueError("map is singular")
    for lead in sorted(pivots):
        v, t = pivots[lead]
        for other in list(pivots):
            if other != lead and (pivots[other][0] >> lead) & 1:
                ov, ot = pivots[other]
                pivots[other] = (ov ^ v, ot ^ t)
    return LinearMap(n, n, tuple(pivots[i][1] for i in range(n)))


def random_invertible_map(n: int, rng: random.Random | int) -> LinearMap:
    if isinstance(rng, int):
        rng = random.Random(rng)
    while True:
        images = tuple(rng.getrandbits(n) for _ in range(n))
        m = LinearMap(n, n, images)
        if m.is_invertible():
            return m


def canonical_form_bits(n: int, bits: int) -> tuple[int, LinearMap]:
    """Least image of the point set under any invertible map, with a map
    achieving it.

    Point sets are ordered by their membership sequence at points 1, 2, ...;
    whichever set contains the first point where they differ comes first.
    The search enumerates preimage bases depth first, keeps only choices
    that are optimal block by block, and prunes equivalent branches with
    automorphisms harvested from equally good leaves.
    """
    full = (1 << (1 << n)) - 2
    if bits == 0 or bits == full:
        return bits, identity_map(n)
    size = 1 << n
    memb = bytearray(size)
    m = bits
    while m:
        low = m & -m
        m ^= low
        memb[low.bit_length() - 1] = 1
    absent = np.frombuffer(bytes(memb), dtype=np.uint8) ^ 1

    best_blocks: list[bytes] | None = None
    best_hp: list[int] | None = None
    best_images: list[int] | None = None
    auts: list[list[int]] = []
    aut_keys: set[tuple[int, ...]] = set()
    aut_cap = 240

    def dfs(
        images: list[int],
        hp: list[int],
        hp_arr: np.ndarray,
        spanmask: int,
        blocks: list[bytes],
    ) -> None:
        nonlocal best_blocks, best_hp, best_images
        depth = len(images)
        if best_blocks is not None and blocks > best_blocks[:depth]:
            return
        if depth == n:
            if best_blocks is None or blocks < best_blocks:
                best_blocks = list(blocks)
                best_hp = hp[:]
                best_images = images[:]
            elif blocks == best_blocks and len(auts) < aut_cap:
                phi = [0] * size
                for q in range(1, size):
                    phi[best_hp[q]] = hp[q]
                key = tuple(phi[1 << i] for i in range(n))
                if key not in aut_keys:
                    aut_keys.add(key)
                    auts.append(phi)
            return
        us = [u for u in range(1, size) if not (spanmask >> u) & 1]
        us_arr = np.array(us, dtype=np.int64)
        rows = np.packbits(absent[us_arr[:, None] ^ hp_arr[None, :]], axis=1)
        width = rows.shape[1]
        flat = rows.tobytes()
        min_bv = min(flat[i * width : (i + 1) * width] for i in range(len(us)))
        cands = [
            us[i] for i in range(len(us)) if flat[i * width : (i + 1) * width] == min_bv
        ]
        blocks.append(min_bv)
        covered = 0
        filtered: list[list[int]] = []
        filtered_at = -1
        for u in cands:
            if (covered >> u) & 1:
                continue
            if len(auts) != filtered_at:
                filtered = [phi for phi in auts if all(phi[x] == x for x in hp)]
                filtered_at = len(auts)
            block = [u ^ x for x in hp]
            sm = spanmask
            for y in block:
                sm |= 1 << y
            images.append(u)
            dfs(images, hp + block, np.concatenate([hp_arr, u ^ hp_arr]), sm, blocks)
            images.pop()
            covered |= 1 << u
            if filtered:
                frontier = [u]
                while frontier:
                    x = frontier.pop()
                    for phi in filtered:
                        y = phi[x]
                        if not (covered >> y) & 1:
                            covered |= 1 << y
                            frontier.append(y)
        blocks.pop()

    dfs([], [0], np.zeros(1, dtype=np.int64), 0, [])
    assert best_hp is not None and best_images is not None
    canon = 0
    for q in range(1, 1 << n):
        if memb[best_hp[q]]:
            canon |= 1 << q
    return canon, invert(LinearMap(n, n, tuple(best_images)))
