"""Decomposition into replayable build certificates.

Every member of the triangle free, induced-I4 free class is taken apart
step by step, each step undoing one dimension raising operation, until a
one dimensional base or a recognized series extended affine geometry
remains.  The reverse order of the undone steps plus an explicit
coordinate map form a Certificate; callers replay it and compare bits.

A parallel decomposer handles the larger class defined by the size 4
freeness condition, undoing the alpha and beta operations instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import TheoremViolation
from .gf2 import (
    Flat,
    LinearMap,
    closure,
    functional_kernel,
    hyperplane_functional,
    linear_system_solve,
    mask_points,
    rank,
    span_members,
)
from .matroid import (
    Matroid,
    RestrictionResult,
    affine_witness,
    flat_coordinates,
    induced_restriction,
    is_affine,
    restrict_to_closure,
    xor_translate,
)
from .construct import Certificate, expand0, expand1, sag
from .detect import (
    Witness,
    find_ai4_violation,
    find_doubling_element,
    i4tf_witness,
    recognize_affine_geometry,
    recognize_sag,
)

__all__ = [
    "SpecialHyperplane",
    "AffineStep",
    "StripResult",
    "AffineChain",
    "DoubledSag",
    "NotMember",
    "DecompositionResult",
    "find_special_hyperplane",
    "decompose_affine_step",
    "strip_doublings",
    "decompose_i4tf",
    "decompose_ai4",
]


class SpecialHyperplane(NamedTuple):
    flat: Flat
    case: str
    functional: int


def find_special_hyperplane(m: Matroid) -> SpecialHyperplane:
    """First hyperplane comparable with E by inclusion or disjointness.

    Scans functionals in ascending order; for each kernel H reports the
    first holding relation among: E inside H, complement inside H, E
    disjoint from H, H inside E.  Inputs satisfying the size 4 freeness
    condition always have one; exhaustion is a falsification signal.
    """
    n = m.n
    full = (1 << (1 << n)) - 2
    comp = m.bits ^ full
    for w in range(1, 1 << n):
        flat = functional_kernel(w, n)
        members = flat.members
        if m.bits & ~members == 0:
            return SpecialHyperplane(flat, "e_subset_h", w)
        if comp & ~members == 0:
            return SpecialHyperplane(flat, "complement_subset_h", w)
        if m.bits & members == 0:
            return SpecialHyperplane(flat, "e_disjoint_h", w)
        if members & ~m.bits == 0:
            return SpecialHyperplane(flat, "h_subset_e", w)
    raise TheoremViolation("no hyperplane compares with the point set")


class AffineStep(NamedTuple):
    """One undone expansion: the inner matroid in its flat's coordinates.

    For an undone 1-expansion, new_point is the removed element (ambient
    coordinates) and witness_functional cuts out, in inner coordinates,
    the hyperplane whose translate was removed alongside it.
    """

    tag: str
    inner: Matroid
    embed: LinearMap
    new_point: int | None = None
    witness_functional: int | None = None


def _flat_ambient(flat: Flat, emb: LinearMap, n: int) -> Flat:
    return closure([emb.apply(b) for b in flat.basis], n)


def decompose_affine_step(m: Matroid) -> AffineStep:
    """Undo one expansion of an affine member with at least one element."""
    n = m.n
    if n < 2 or m.bits == 0:
        raise ValueError("need dimension at least 2 and a nonempty point set")
    phi = affine_witness(m)
    if phi is None:
        raise ValueError("need an affine input")
    hw = functional_kernel(phi, n)
    z = (m.bits & -m.bits).bit_length() - 1
    f_bits = xor_translate(m.bits ^ (1 << z), z)
    coords = flat_coordinates(hw)
    f_small = 0
    for p in mask_points(f_bits):
        f_small |= 1 << coords[p]
    emb0 = LinearMap(n - 1, n, hw.basis)
    sh = find_special_hyperplane(Matroid(n - 1, f_small))
    case, hprime = sh.case, _flat_ambient(sh.flat, emb0, n)

    if case == "e_disjoint_h":
        # The translated set misses the hyperplane entirely.  Either it
        # spans a smaller flat (drop to the contained case) or it is a
        # full affine geometry whose own missing hyperplane serves.
        f_pts = mask_points(f_bits)
        if rank(f_pts) < n - 1:
            _, kernel = linear_system_solve(f_pts, [0] * len(f_pts), n)
            psi = next(
                p for p in mask_points(span_members(kernel)) if p != phi
            )
            kmask = hw.members & functional_kernel(psi, n).members
            case = "e_subset_h"
            hprime = closure(mask_points(kmask), n)
        else:
            rec = recognize_affine_geometry(Matroid(n - 1, f_small))
            if rec is None or rec[0].dim != n - 1:
                raise TheoremViolation(
                    "disjoint case without an affine geometry"
                )
            case = "complement_subset_h"
            hprime = _flat_ambient(rec[1], emb0, n)

    if case == "h_subset_e" and f_bits & ~hprime.members == 0:
        case = "e_subset_h"

    if case == "e_subset_h":
        hpp = closure(list(hprime.basis) + [z], n)
        if m.bits & ~hpp.members:
            raise TheoremViolation("contained case lost an element")
        inner, emb = induced_restriction(m, hpp)
        return AffineStep("expand0", inner, emb)

    if case == "complement_subset_h":
        rest = hw.members & ~hprime.members
        w0 = (rest & -rest).bit_length() - 1
        x = z ^ w0
        hpp = closure(list(hprime.basis) + [z], n)
    else:
        rest = f_bits & ~hprime.members
        w0 = (rest & -rest).bit_length() - 1
        x = z
        hpp = closure(list(hprime.basis) + [z ^ w0], n)

    layer = (1 << x) | xor_translate(hprime.members, x)
    if m.bits & ~hpp.members != layer:
        raise TheoremViolation("removed layer does not match the case")
    inner, emb = induced_restriction(m, hpp)
    km = 0
    for q in range(1, 1 << inner.n):
        if hprime.contains(emb.apply(q)):
            km |= 1 << q
    func = hyperplane_functional(km, inner.n)
    return AffineStep("expand1", inner, emb, x, func)


def _align_images(
    raw0: Matroid, g0_images: tuple[int, ...], func: int
) -> tuple[int, ...]:
    # Replay translates the kernel of raw0's least affine witness, but the
    # removed layer sits over the kernel of func pulled back through the
    # current images.  A transvection fixing raw0 pointwise carries one
    # kernel onto the other; compose it in.
    d = raw0.n
    pulled = 0
    for i in range(d):
        if (func & g0_images[i]).bit_count() & 1:
            pulled |= 1 << i
    target = affine_witness(raw0)
    if pulled == target:
        return g0_images
    u = pulled ^ target
    t = next(
        v
        for v in range(1, 1 << d)
        if (pulled & v).bit_count() & 1 and (target & v).bit_count() & 1
    )
    gmap = LinearMap(d, d, g0_images)
    composed = []
    for i in range(d):
        v = 1 << i
        if (u & v).bit_count() & 1:
            v ^= t
        composed.append(gmap.apply(v))
    return tuple(composed)


def _affine_chain(
    m: Matroid,
) -> tuple[Matroid, tuple[str, ...], tuple[int, ...], Matroid]:
    # Returns (base, steps, images, raw) where raw is the fold of steps
    # over base and LinearMap(images) carries raw onto m.
    if m.n == 1:
        return m, (), (1,), m
    if m.bits == 0:
        steps = ("expand0",) * (m.n - 1)
        images = tuple(1 << i for i in range(m.n))
        return Matroid(1, 0), steps, images, m
    step = decompose_affine_step(m)
    base, steps0, images0, raw0 = _affine_chain(step.inner)
    if step.tag == "expand0":
        lifted = tuple(step.embed.apply(p) for p in images0)
        span = span_members(step.embed.images)
        ext = 1
        while (span >> ext) & 1:
            ext += 1
        return base, steps0 + ("expand0",), lifted + (ext,), expand0(raw0)
    aligned = _align_images(raw0, images0, step.witness_functional)
    lifted = tuple(step.embed.apply(p) for p in aligned)
    images = lifted + (step.new_point,)
    return base, steps0 + ("expand1",), images, expand1(raw0)


class StripResult(NamedTuple):
    count: int
    core: Matroid
    embed: LinearMap
    trail: tuple[tuple[int, LinearMap], ...]


def strip_doublings(m: Matroid) -> StripResult:
    """Peel translation-stable layers until none remains.

    Each round removes the least nonelement whose translate fixes E and
    restricts to a hyperplane missing it.  The trail records, outermost
    first, the removed element and the restriction embedding; embed is
    their composition, placing the core inside the input space.
    """
    trail: list[tuple[int, LinearMap]] = []
    cur = m
    while cur.n > 1:
        found = find_doubling_element(cur)
        if found is None:
            break
        w, h = found
        inner, emb = induced_restriction(cur, h)
        trail.append((w, emb))
        cur = inner
    images = tuple(1 << i for i in range(cur.n))
    for _, emb in reversed(trail):
        images = tuple(emb.apply(p) for p in images)
    return StripResult(
        len(trail), cur, LinearMap(cur.n, m.n, images), tuple(trail)
    )


@dataclass(frozen=True)
class AffineChain:
    certificate: Certificate


@dataclass(frozen=True)
class DoubledSag:
    certificate: Certificate
    doublings: int
    sag_param: int


@dataclass(frozen=True)
class NotMember:
    witness: Witness


@dataclass(frozen=True)
class DecompositionResult:
    outcome: AffineChain | DoubledSag | NotMember
    restriction: RestrictionResult


def decompose_i4tf(m: Matroid) -> DecompositionResult:
    """Membership with evidence: a certificate or a refuting witness.

    Members decompose either into an expansion chain from a one
    dimensional base, or into doublings of a series extended affine
    geometry.  The chain certificate replays to the input itself; the
    doubling certificate replays to the restriction onto the span of E,
    reported alongside.  Non-members yield a triangle or an induced
    independent 4-set.
    """
    rest = restrict_to_closure(m)
    w = i4tf_witness(m)
    if w is not None:
        return DecompositionResult(NotMember(w), rest)
    core = rest.matroid
    if is_affine(core):
        base, steps, images, _ = _affine_chain(core)
        if core.n < m.n:
            steps = steps + ("expand0",) * (m.n - core.n)
            lifted = [rest.embed.apply(p) for p in images]
            have = span_members(tuple(lifted))
            for p in range(1, 1 << m.n):
                if len(lifted) == m.n:
                    break
                if not (have >> p) & 1:
                    lifted.append(p)
                    have |= (1 << p) | xor_translate(have, p)
            images = tuple(lifted)
        cert = Certificate(base, steps, LinearMap(m.n, m.n, images))
        if cert.replay() != m:
            raise TheoremViolation("expansion chain fails to replay")
        return DecompositionResult(AffineChain(cert), rest)
    strip = strip_doublings(core)
    rec = recognize_sag(strip.core)
    if rec is None:
        raise TheoremViolation(
            "non-affine member is not a doubled series extension"
        )
    par, gmap = rec
    images = tuple(gmap.images)
    for wpt, emb in reversed(strip.trail):
        images = tuple(emb.apply(p) for p in images) + (wpt,)
    cert = Certificate(
        sag(par), ("double",) * strip.count, LinearMap(core.n, core.n, images)
    )
    if cert.replay() != core:
        raise TheoremViolation("doubling tower fails to replay")
    return DecompositionResult(DoubledSag(cert, strip.count, par), rest)


def _translated_restriction(
    m: Matroid, h: Flat, shifted_bits: int
) -> tuple[Matroid, LinearMap]:
    # Restriction carrying a translated point set that lies inside h.
    if shifted_bits & ~h.members:
        raise TheoremViolation("translated set escapes the hyperplane")
    coords = flat_coordinates(h)
    small = 0
    for p in mask_points(shifted_bits):
        small |= 1 << coords[p]
    return Matroid(h.dim, small), LinearMap(h.dim, m.n, h.basis)


def decompose_ai4(m: Matroid) -> Certificate | Witness:
    """Certificate over the four layer operations, or a violating 4-set."""
    w = find_ai4_violation(m)
    if w is not None:
        return w
    trail: list[tuple[str, LinearMap, int | None]] = []
    cur = m
    while cur.n > 1:
        sh = find_special_hyperplane(cur)
        h = sh.flat
        if sh.case == "e_subset_h":
            inner, emb = induced_restriction(cur, h)
            trail.append(("alpha0", emb, None))
        elif sh.case == "complement_subset_h":
            inner, emb = induced_restriction(cur, h)
            trail.append(("alpha1", emb, None))
        elif sh.case == "e_disjoint_h":
            w0 = (cur.bits & -cur.bits).bit_length() - 1
            shifted = xor_translate(cur.bits ^ (1 << w0), w0)
            inner, emb = _translated_restriction(cur, h, shifted)
            trail.append(("beta0", emb, w0))
        else:
            off = cur.bits & ~h.members
            w0 = (off & -off).bit_length() - 1
            shifted = xor_translate(off ^ (1 << w0), w0)
            inner, emb = _translated_restriction(cur, h, shifted)
            trail.append(("beta1", emb, w0))
        cur = inner
    steps: list[str] = []
    images: tuple[int, ...] = (1,)
    for tag, emb, w0 in reversed(trail):
        lifted = tuple(emb.apply(p) for p in images)
        if w0 is None:
            span = span_members(emb.images)
            ext = 1
            while (span >> ext) & 1:
                ext += 1
            images = lifted + (ext,)
        else:
            images = lifted + (w0,)
        steps.append(tag)
    cert = Certificate(cur, tuple(steps), LinearMap(m.n, m.n, images))
    if cert.replay() != m:
        raise TheoremViolation("layer tower fails to replay")
    return cert
