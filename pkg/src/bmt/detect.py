"""Witness searches and invariants: triangles, induced independent sets,
induced odd circuits, critical number, and recognizers for the special
shapes the decomposition bottoms out on.

Every search scans candidates in ascending point order, so results are
deterministic for a given input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TheoremViolation
from .gf2 import (
    EMPTY_FLAT,
    Flat,
    LinearMap,
    closure,
    functional_kernel,
    linear_system_solve,
    mask_points,
    points_mask,
    rank,
    rref,
    span_members,
)
from .construct import sag
from .matroid import Matroid, affine_witness, apply_map, is_affine, xor_translate

__all__ = [
    "Witness",
    "affine_witness",
    "is_affine",
    "find_triangle",
    "find_induced_is",
    "find_ai4_violation",
    "find_induced_odd_circuit",
    "i4tf_witness",
    "critical_number",
    "find_doubling_element",
    "recognize_affine_geometry",
    "recognize_sag",
]


@dataclass(frozen=True)
class Witness:
    """Checkable evidence that a point set fails some freeness property."""

    kind: str
    points: tuple[int, ...]
    param: int | None = None

    def verify(self, m: Matroid) -> bool:
        pts = self.points
        if len(set(pts)) != len(pts) or not all(m.contains(p) for p in pts):
            return False
        if self.kind == "triangle":
            return len(pts) == 3 and pts[0] ^ pts[1] ^ pts[2] == 0
        if self.kind == "induced_is":
            s = self.param
            if s is None or len(pts) != s or rank(pts) != s:
                return False
            return span_members(rref(pts)) & m.bits == points_mask(pts)
        if self.kind == "ai4_violation":
            if len(pts) != 4 or rank(pts) != 4:
                return False
            total = pts[0] ^ pts[1] ^ pts[2] ^ pts[3]
            return not any(m.contains(total ^ p) for p in pts)
        if self.kind == "odd_circuit":
            k = self.param
            if k is None or len(pts) != k or k % 2 == 0 or k < 3:
                return False
            total = 0
            for p in pts:
                total ^= p
            if total != 0 or rank(pts) != k - 1:
                return False
            return span_members(rref(pts)) & m.bits == points_mask(pts)
        return False


def find_triangle(m: Matroid) -> Witness | None:
    """First pair of elements whose sum is also an element."""
    pts = m.points
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            if m.contains(a ^ b):
                return Witness("triangle", (a, b, a ^ b))
    return None


# Pattern tables over all independent 4-subsets of the ambient geometry, in
# lex order: elements required, span points forbidden (induced independent
# set test), triple sums forbidden (the size 4 freeness test).
_TABLE_DIMS = (4, 5)
_quad_cache: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray, list[tuple[int, ...]]]] = {}


def _quad_tables(n: int):
    cached = _quad_cache.get(n)
    if cached is not None:
        return cached
    needs: list[int] = []
    span_avoids: list[int] = []
    triple_avoids: list[int] = []
    quads: list[tuple[int, ...]] = []
    top = 1 << n
    for p1 in range(1, top):
        for p2 in range(p1 + 1, top):
            s2 = (1 << p1) | (1 << p2) | (1 << (p1 ^ p2))
            for p3 in range(p2 + 1, top):
                if (s2 >> p3) & 1:
                    continue
                s3 = s2 | (1 << p3) | xor_translate(s2, p3)
                for p4 in range(p3 + 1, top):
                    if (s3 >> p4) & 1:
                        continue
                    s4 = s3 | (1 << p4) | xor_translate(s3, p4)
                    need = (1 << p1) | (1 << p2) | (1 << p3) | (1 << p4)
                    total = p1 ^ p2 ^ p3 ^ p4
                    trip = 0
                    for p in (p1, p2, p3, p4):
                        trip |= 1 << (total ^ p)
                    needs.append(need)
                    span_avoids.append(s4 ^ need)
                    triple_avoids.append(trip)
                    quads.append((p1, p2, p3, p4))
    table = (
        np.array(needs, dtype=np.uint64),
        np.array(span_avoids, dtype=np.uint64),
        np.array(triple_avoids, dtype=np.uint64),
        quads,
    )
    _quad_cache[n] = table
    return table


def find_induced_is(m: Matroid, s: int) -> Witness | None:
    """Least s elements that are independent and span no other element."""
    if not 2 <= s <= m.n:
        raise ValueError(f"need 2 <= s <= {m.n}, got {s}")
    if s == 4 and m.n in _TABLE_DIMS:
        needs, span_avoids, _, quads = _quad_tables(m.n)
        ev = np.uint64(m.bits)
        hit = ((needs & ev) == needs) & ((span_avoids & ev) == 0)
        idx = int(np.argmax(hit))
        if hit[idx]:
            return Witness("induced_is", quads[idx], 4)
        return None
    pts = m.points
    chosen: list[int] = []

    def rec(start: int, spanmask: int) -> bool:
        if len(chosen) == s:
            return True
        for i in range(start, len(pts)):
            x = pts[i]
            if (spanmask >> x) & 1:
                continue
            shifted = xor_translate(spanmask, x)
            if shifted & m.bits:
                continue
            chosen.append(x)
            if rec(i + 1, spanmask | (1 << x) | shifted):
                return True
            chosen.pop()
        return False

    if rec(0, 0):
        return Witness("induced_is", tuple(chosen), s)
    return None


def find_ai4_violation(m: Matroid) -> Witness | None:
    """Least independent 4-subset of E with all four triple sums off E."""
    if m.n < 4:
        return None
    if m.n in _TABLE_DIMS:
        needs, _, triple_avoids, quads = _quad_tables(m.n)
        ev = np.uint64(m.bits)
        hit = ((needs & ev) == needs) & ((triple_avoids & ev) == 0)
        idx = int(np.argmax(hit))
        if hit[idx]:
            return Witness("ai4_violation", quads[idx])
        return None
    pts = m.points
    chosen: list[int] = []

    def rec(start: int, spanmask: int, xorsum: int) -> bool:
        depth = len(chosen)
        for i in range(start, len(pts)):
            x = pts[i]
            if (spanmask >> x) & 1:
                continue
            # The sum of any completed triple must land off E; the first
            # three choices already fix one of the four.
            if depth == 2 and m.contains(xorsum ^ x):
                continue
            if depth == 3:
                total = xorsum ^ x
                if any(m.contains(total ^ p) for p in chosen):
                    continue
                chosen.append(x)
                return True
            chosen.append(x)
            nxt = spanmask | (1 << x) | xor_translate(spanmask, x)
            if rec(i + 1, nxt, xorsum ^ x):
                return True
            chosen.pop()
        return False

    if rec(0, 1, 0):
        return Witness("ai4_violation", tuple(chosen))
    return None


def i4tf_witness(m: Matroid) -> Witness | None:
    """Membership test for the triangle free, induced-I4 free class.

    Returns a triangle or an induced independent 4-subset when m is not a
    member, None when it is.  Triangles are checked first.
    """
    w = find_triangle(m)
    if w is not None:
        return w
    if m.n < 4:
        return None
    return find_induced_is(m, 4)


def find_induced_odd_circuit(m: Matroid, kmax: int | None = None) -> Witness | None:
    """Smallest induced odd circuit with at most kmax elements.

    Default kmax is the largest odd number not exceeding n+1, which is as
    far as an induced circuit can go in dimension n.
    """
    n = m.n
    if kmax is None:
        kmax = n + 1 if (n + 1) % 2 else n
        kmax = max(kmax, 3)
    if kmax % 2 == 0 or kmax < 3:
        raise ValueError(f"kmax must be odd and at least 3, got {kmax}")
    for k in range(3, kmax + 1, 2):
        w = _circuit_search(m, k)
        if w is not None:
            return w
    return None


def _circuit_search(m: Matroid, k: int) -> Witness | None:
    # Choose k-1 independent elements spanning nothing else of E except the
    # one point that closes the circuit, found at the last level.
    pts = m.points
    chosen: list[int] = []
    last = k - 2

    def rec(start: int, spanmask: int, xorsum: int) -> int | None:
        final = len(chosen) == last
        for i in range(start, len(pts)):
            x = pts[i]
            if (spanmask >> x) & 1:
                continue
            shifted = xor_translate(spanmask, x)
            hits = shifted & m.bits
            if final:
                if hits == 1 << (xorsum ^ x):
                    chosen.append(x)
                    return xorsum ^ x
            else:
                if hits:
                    continue
                chosen.append(x)
                got = rec(i + 1, spanmask | (1 << x) | shifted, xorsum ^ x)
                if got is not None:
                    return got
                chosen.pop()
        return None

    closing = rec(0, 0, 0)
    if closing is None:
        return None
    return Witness("odd_circuit", tuple(sorted(chosen + [closing])), k)


def critical_number(m: Matroid) -> int:
    """Least c such that some flat of codimension c misses every element."""
    if m.bits == 0:
        return 0
    if affine_witness(m) is not None:
        return 1
    n = m.n
    # Look for a codimension 2 kernel: a functional pair (w1, w2) where w2
    # hits every element surviving w1.  Small survivor sets first.  Neither
    # 0 nor w1 can solve the survivor system, so any solution works.
    order = []
    for w1 in range(1, 1 << n):
        amask = 0
        for p in m.points:
            if (w1 & p).bit_count() & 1 == 0:
                amask |= 1 << p
        order.append((amask.bit_count(), w1, amask))
    order.sort()
    for _, w1, amask in order:
        rows = mask_points(amask)
        sol, _ = linear_system_solve(rows, [1] * len(rows), n)
        if sol is not None:
            return 2
    full = (1 << (1 << n)) - 2
    return n - _largest_flat_dim(m.bits ^ full, m.bits, n)


def _largest_flat_dim(allowed: int, forbidden: int, n: int) -> int:
    # Largest d with a d-dimensional subspace whose points all lie in
    # allowed.  Plain DFS with a counting bound; only reached when the
    # critical number is at least 3.
    cands = mask_points(allowed)
    best = 0

    def rec(start: int, depth: int, spanmask: int) -> None:
        nonlocal best
        if depth > best:
            best = depth
        for i in range(start, len(cands)):
            remaining = len(cands) - i + (1 << depth) - 1
            if (remaining + 1).bit_length() - 1 <= best:
                return
            x = cands[i]
            if (spanmask >> x) & 1:
                continue
            shifted = xor_translate(spanmask, x)
            if shifted & forbidden:
                continue
            rec(i + 1, depth + 1, spanmask | (1 << x) | shifted)

    rec(0, 0, 0)
    return best


def find_doubling_element(m: Matroid) -> tuple[int, Flat] | None:
    """Least nonelement w with w + E = E, plus a hyperplane missing w."""
    for w in range(1, 1 << m.n):
        if xor_translate(m.bits, w) == m.bits:
            return w, functional_kernel(w & -w, m.n)
    return None


def recognize_affine_geometry(m: Matroid) -> tuple[Flat, Flat] | None:
    """Detect E = (its span) minus a hyperplane of the span.

    Returns (span flat, removed hyperplane flat) or None.  A single
    element is the degenerate case with an empty hyperplane.
    """
    if m.bits == 0:
        return None
    span = closure(m.points, m.n)
    if m.size != 1 << (span.dim - 1):
        return None
    missing = span.members ^ m.bits
    if span.dim == 1:
        return span, EMPTY_FLAT
    mbasis = rref(mask_points(missing))
    if len(mbasis) != span.dim - 1 or span_members(mbasis) != missing:
        return None
    return span, Flat(span.dim - 1, mbasis, missing)


def recognize_sag(m: Matroid) -> tuple[int, LinearMap] | None:
    """Detect a relabeled series extension of an affine geometry.

    Returns (parameter, map g) with the replayed shape mapping onto m
    under g, or None.
    """
    n = m.n
    if n < 4 or m.size != (1 << (n - 2)) + 1:
        return None
    if closure(m.points, n).dim != n:
        return None
    pts = m.points
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            y = a ^ b
            if m.contains(y):
                continue
            fmask = 0
            for e in pts:
                if e != a and e != b:
                    fmask |= 1 << (y ^ e)
            fbasis = rref(mask_points(fmask))
            if len(fbasis) != n - 2 or span_members(fbasis) != fmask:
                continue
            wide = rref(fbasis + (y,))
            if len(wide) != n - 1 or (span_members(wide) >> a) & 1:
                continue
            images = fbasis + (y, min(a, b))
            g = LinearMap(n, n, images)
            if apply_map(g, sag(n - 1)) != m:
                raise TheoremViolation("series extension recognition failed")
            return n - 1, g
    return None
