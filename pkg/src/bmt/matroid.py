"""Simple binary matroids as point sets in PG(n-1, 2), plus the text format.

A matroid here is just its ground set: a set of nonzero vectors of
GF(2)^n with no repeats, encoded as a bitmask.  Isomorphism means an
invertible linear map carrying one set onto the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import FormatError, TheoremViolation
from .gf2 import (
    EMPTY_FLAT,
    Flat,
    LinearMap,
    canonical_form_bits,
    closure,
    identity_map,
    linear_system_solve,
    mask_points,
    rref,
)


@dataclass(frozen=True)
class Matroid:
    """Point set of a simple binary matroid, bit p set iff p is an element."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("dimension must be at least 1")
        if self.bits & 1:
            raise ValueError("zero is never an element")
        if not 0 <= self.bits < (1 << (1 << self.n)):
            raise ValueError("element out of range for dimension")

    @cached_property
    def points(self) -> tuple[int, ...]:
        return tuple(mask_points(self.bits))

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def contains(self, p: int) -> bool:
        return (self.bits >> p) & 1 == 1

    def __repr__(self) -> str:
        pts = ",".join(str(p) for p in self.points)
        return f"Matroid(n={self.n}, {{{pts}}})"


def from_points(n: int, points: Iterable[int]) -> Matroid:
    bits = 0
    for p in points:
        if not 1 <= p < (1 << n):
            raise ValueError(f"point {p} out of range for dimension {n}")
        if (bits >> p) & 1:
            raise ValueError(f"duplicate point {p}")
        bits |= 1 << p
    return Matroid(n, bits)


def complement(m: Matroid) -> Matroid:
    full = (1 << (1 << m.n)) - 2
    return Matroid(m.n, m.bits ^ full)


def apply_map(g: LinearMap, m: Matroid) -> Matroid:
    """Relabel m by an invertible map on its own space."""
    if g.n_from != m.n or not g.is_invertible():
        raise ValueError("need an invertible map on the matroid's space")
    return Matroid(g.n_to, g.apply_mask(m.bits))


def canonical_form(m: Matroid) -> tuple[Matroid, LinearMap]:
    """Least isomorphic copy of m, and a map g with apply_map(g, m) equal
    to it."""
    bits, g = canonical_form_bits(m.n, m.bits)
    return Matroid(m.n, bits), g


def parse_bmat(text: str) -> Matroid:
    """Parse the two line matroid format.

    Line 1: "BMAT1 dim=<n>".  Line 2: either "points=<space separated>"
    or "bits=<hex, least significant nibble first>".
    """
    lines = text.split("\n")
    if len(lines) == 3 and lines[2] == "":
        lines = lines[:2]
    if len(lines) != 2:
        raise FormatError("expected exactly two lines")
    head = lines[0]
    if not head.startswith("BMAT1 dim="):
        raise FormatError(f"bad header: {head!r}")
    try:
        n = int(head[len("BMAT1 dim="):])
    except ValueError:
        raise FormatError(f"bad dimension in header: {head!r}") from None
    if n < 1:
        raise FormatError("dimension must be at least 1")
    body = lines[1]
    if body.startswith("points="):
        payload = body[len("points="):]
        bits = 0
        if payload:
            for tok in payload.split():
                try:
                    p = int(tok)
                except ValueError:
                    raise FormatError(f"bad point: {tok!r}") from None
                if not 1 <= p < (1 << n):
                    raise FormatError(f"point {p} out of range for dim {n}")
                if (bits >> p) & 1:
                    raise FormatError(f"duplicate point {p}")
                bits |= 1 << p
    elif body.startswith("bits="):
        payload = body[len("bits="):]
        if not payload:
            raise FormatError("empty bits payload")
        try:
            bits = int(payload[::-1], 16)
        except ValueError:
            raise FormatError(f"bad hex payload: {payload!r}") from None
        if bits & 1:
            raise FormatError("zero is never an element")
        if bits >= (1 << (1 << n)):
            raise FormatError("element out of range for dimension")
    else:
        raise FormatError(f"bad body line: {body!r}")
    return Matroid(n, bits)


def serialize_bmat(m: Matroid, form: str = "points") -> str:
    head = f"BMAT1 dim={m.n}"
    if form == "points":
        body = "points=" + " ".join(str(p) for p in m.points)
    elif form == "bits":
        body = "bits=" + format(m.bits, "x")[::-1]
    else:
        raise ValueError(f"unknown form {form!r}")
    return f"{head}\n{body}\n"


class RestrictionResult(NamedTuple):
    matroid: Matroid
    embed: LinearMap
    rank_deficient: bool


def induced_restriction(m: Matroid, flat: Flat) -> tuple[Matroid, LinearMap]:
    """Restriction of m to a flat, in the flat's own coordinates.

    Returns the small matroid and the embedding that maps its space back
    into m's space (basis vectors go to the flat's reduced basis).
    """
    if flat.dim < 1:
        raise ValueError("need a flat of dimension at least 1")
    embed = LinearMap(flat.dim, m.n, flat.basis)
    bits = 0
    for q in range(1, 1 << flat.dim):
        if m.contains(embed.apply(q)):
            bits |= 1 << q
    return Matroid(flat.dim, bits), embed


def flat_coordinates(flat: Flat) -> dict[int, int]:
    """Member point -> its coordinates over the flat's reduced basis."""
    coords: dict[int, int] = {}
    for q in range(1, 1 << flat.dim):
        big = 0
        qq = q
        while qq:
            low = qq & -qq
            qq ^= low
            big ^= flat.basis[low.bit_length() - 1]
        coords[big] = q
    return coords


def restrict_to_closure(m: Matroid) -> RestrictionResult:
    """Cut m down to the span of its elements (dimension at least 1)."""
    flat = closure(m.points, m.n)
    if flat.dim == m.n:
        return RestrictionResult(m, identity_map(m.n), False)
    if m.bits == 0:
        return RestrictionResult(
            Matroid(1, 0), LinearMap(1, m.n, (1,)), m.n > 1
        )
    small, embed = induced_restriction(m, flat)
    return RestrictionResult(small, embed, True)


def affine_witness(m: Matroid) -> int | None:
    """Least functional w with <w, e> = 1 for every element, or None.

    Such a w exists exactly when E lies in an affine hyperplane, i.e. when
    the two color classes 0 and {E} work.  An empty E gets witness 1.
    """
    if m.bits == 0:
        return 1
    pts = m.points
    w, _ = linear_system_solve(pts, [1] * len(pts), m.n)
    return w


def is_affine(m: Matroid) -> bool:
    return affine_witness(m) is not None


def xor_translate(mask: int, x: int) -> int:
    """Image of a point set under translation by x (x itself may be 0)."""
    out = 0
    while mask:
        low = mask & -mask
        mask ^= low
        out |= 1 << ((low.bit_length() - 1) ^ x)
    return out


def sumset(a_mask: int, b_mask: int) -> int:
    """All nonzero pairwise sums {a ^ b} of two point sets."""
    out = 0
    for a in mask_points(a_mask):
        out |= xor_translate(b_mask, a)
    return out & ~1


class StabilizerResult(NamedTuple):
    flat: Flat
    translates: tuple[int, ...]


def stabilizer_flat(m: Matroid) -> StabilizerResult:
    """Largest flat U with E a union of U-cosets, plus coset representatives.

    Built from the translation stabilizer of E (of its complement when the
    size is odd).  Verifies that the points off U are exactly the pairwise
    sums between E and its complement, and that the returned translates
    tile E; failure of either check raises TheoremViolation.
    """
    n = m.n
    full = (1 << (1 << n)) - 2
    target = m.bits if m.size % 2 == 0 else m.bits ^ full
    stab = [0]
    for x in range(1, 1 << n):
        if xor_translate(target, x) == target:
            stab.append(x)
    if len(stab) & (len(stab) - 1):
        raise TheoremViolation("stabilizer is not a subspace")
    members = 0
    for s in stab[1:]:
        members |= 1 << s
    basis = rref(stab)
    flat = Flat(len(basis), basis, members) if members else EMPTY_FLAT

    outside = full ^ members
    if sumset(m.bits, m.bits ^ full) != outside:
        raise TheoremViolation("cross sums do not match the stabilizer flat")

    tile = m.bits if m.size % 2 == 0 else m.bits | 1
    translates = []
    remaining = tile
    while remaining:
        t = (remaining & -remaining).bit_length() - 1
        coset = xor_translate(members | 1, t)
        if coset & tile != coset:
            raise TheoremViolation("elements are not a union of cosets")
        translates.append(t)
        remaining &= ~coset
    return StabilizerResult(flat, tuple(translates))
