"""Linear algebra layer: spans, solving, maps, canonical labeling."""

import random

import pytest

from bmt.gf2 import (
    LinearMap,
    canonical_form_bits,
    closure,
    compose,
    dot,
    functional_kernel,
    hyperplane_functional,
    hyperplanes,
    identity_map,
    invert,
    is_independent,
    linear_system_solve,
    mask_points,
    points_mask,
    random_invertible_map,
    rank,
    rref,
    span_members,
)
from oracles import (
    brute_canonical,
    brute_rank,
    gl_images,
    independent,
    map_bits,
    map_point,
    parity,
    points_of,
    random_bits,
    random_gl,
    xor_span,
)

SEED = 1009


def test_dot_is_bilinear_parity():
    rng = random.Random(SEED)
    for _ in range(200):
        w = rng.randrange(1 << 6)
        x = rng.randrange(1 << 6)
        y = rng.randrange(1 << 6)
        assert dot(w, x) == parity(w & x)
        assert dot(w, x ^ y) == dot(w, x) ^ dot(w, y)


def test_mask_points_round_trip():
    rng = random.Random(SEED + 1)
    for _ in range(100):
        bits = random_bits(rng, 4)
        pts = mask_points(bits)
        assert pts == points_of(bits)
        assert points_mask(pts) == bits


def test_rref_preserves_span_and_is_reduced():
    rng = random.Random(SEED + 2)
    for _ in range(200):
        vecs = [rng.randrange(1 << 5) for _ in range(rng.randrange(6))]
        basis = rref(vecs)
        assert xor_span(basis) == xor_span(vecs)
        assert len(basis) == brute_rank(vecs)
        # Each leading bit appears in exactly one basis vector.
        for v in basis:
            lead = v.bit_length() - 1
            assert sum((u >> lead) & 1 for u in basis) == 1


def test_rank_and_independence_match_brute():
    rng = random.Random(SEED + 3)
    for _ in range(300):
        vecs = [rng.randrange(1 << 5) for _ in range(rng.randrange(7))]
        assert rank(vecs) == brute_rank(vecs)
        assert is_independent(vecs) == independent(vecs)


def test_span_members_matches_brute():
    rng = random.Random(SEED + 4)
    for _ in range(100):
        vecs = [rng.randrange(1, 1 << 5) for _ in range(rng.randrange(1, 4))]
        members = span_members(vecs)
        assert set(points_of(members)) == xor_span(vecs) - {0}


def test_closure_shape():
    f = closure((3, 5), 3)
    assert f.dim == 2
    assert set(f.points()) == {3, 5, 6}
    assert f.size == 3
    rng = random.Random(SEED + 5)
    for _ in range(60):
        pts = [rng.randrange(1, 16) for _ in range(rng.randrange(4))]
        f = closure(pts, 4)
        assert f.size == (1 << f.dim) - 1
        assert set(f.points()) == xor_span(pts) - {0}
        assert independent(f.basis)


def test_functional_kernel_and_hyperplanes():
    for n in (2, 3, 4):
        seen = set()
        for w, flat in hyperplanes(n):
            assert flat.dim == n - 1
            assert functional_kernel(w, n).members == flat.members
            assert all(parity(w & p) == 0 for p in flat.points())
            assert hyperplane_functional(flat.members, n) == w
            seen.add(w)
        assert seen == set(range(1, 1 << n))


def test_linear_system_solve_consistent():
    rng = random.Random(SEED + 6)
    for _ in range(200):
        n = rng.randrange(2, 7)
        x0 = rng.randrange(1 << n)
        rows = [rng.randrange(1 << n) for _ in range(rng.randrange(1, n + 2))]
        rhs = [parity(r & x0) for r in rows]
        x, kernel = linear_system_solve(rows, rhs, n)
        assert x is not None
        assert all(parity(r & x) == b for r, b in zip(rows, rhs))
        # Kernel basis spans exactly the solutions of the homogeneous system.
        assert len(kernel) == n - brute_rank(rows)
        for k in kernel:
            assert all(parity(r & k) == 0 for r in rows)
        # Least representative of the solution coset.
        assert all(x <= (x ^ s) for s in xor_span(kernel))


def test_linear_system_solve_inconsistent():
    # x1 = 0 and x1 = 1 cannot both hold.
    x, kernel = linear_system_solve([1, 1], [0, 1], 3)
    assert x is None
    assert xor_span(kernel) == {0, 2, 4, 6}


def test_linear_map_apply_matches_brute():
    rng = random.Random(SEED + 7)
    for _ in range(100):
        n = rng.randrange(1, 6)
        images = tuple(rng.randrange(1 << n) for _ in range(n))
        g = LinearMap(n, n, images)
        for _ in range(5):
            x = rng.randrange(1 << n)
            assert g.apply(x) == map_point(images, x)
        bits = random_bits(rng, n)
        if g.is_invertible():
            assert g.apply_mask(bits) == map_bits(images, bits)
        assert g.is_invertible() == independent(images)


def test_identity_compose_invert_laws():
    rng = random.Random(SEED + 8)
    for _ in range(100):
        n = rng.randrange(1, 6)
        g = random_invertible_map(n, rng)
        h = random_invertible_map(n, rng)
        assert compose(g, invert(g)).images == identity_map(n).images
        assert compose(invert(g), g).images == identity_map(n).images
        x = rng.randrange(1 << n)
        # compose(g, h) applies h first.
        assert compose(g, h).apply(x) == g.apply(h.apply(x))


def test_random_invertible_map_seeding():
    a = random_invertible_map(5, 77)
    b = random_invertible_map(5, 77)
    c = random_invertible_map(5, random.Random(77))
    assert a.images == b.images == c.images
    assert a.is_invertible()


def test_canonical_form_bits_exhaustive_dim3():
    for bits in range(0, 1 << 8, 2):
        canon, g = canonical_form_bits(3, bits)
        assert canon == brute_canonical(bits, 3)
        assert g.apply_mask(bits) == canon


def test_canonical_form_bits_sampled_dim4():
    rng = random.Random(SEED + 9)
    for _ in range(12):
        bits = random_bits(rng, 4)
        canon, g = canonical_form_bits(4, bits)
        assert canon == brute_canonical(bits, 4)
        assert g.apply_mask(bits) == canon


def test_canonical_form_bits_relabel_invariant_dim5():
    rng = random.Random(SEED + 10)
    for _ in range(40):
        bits = random_bits(rng, 5)
        images = random_gl(rng, 5)
        moved = map_bits(images, bits)
        assert canonical_form_bits(5, bits)[0] == canonical_form_bits(5, moved)[0]


def test_gl_orbit_sizes_dim3():
    # Orbit-stabilizer sanity for the brute canonical helper itself: orbit
    # sizes over all of GL(3,2) divide the group order.
    orbits = {}
    for bits in range(0, 1 << 8, 2):
        orbits.setdefault(brute_canonical(bits, 3), set()).add(bits)
    assert sum(len(v) for v in orbits.values()) == 128
    for canon, members in orbits.items():
        assert canon in members
        assert len(gl_images(3)) % len(members) == 0
