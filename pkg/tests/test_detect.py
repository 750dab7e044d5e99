"""Forbidden substructure detectors against brute force oracles."""

import random

import pytest

from bmt import (
    Matroid,
    ag,
    apply_map,
    circuit,
    critical_number,
    double,
    find_ai4_violation,
    find_doubling_element,
    find_induced_is,
    find_induced_odd_circuit,
    find_triangle,
    i4tf_witness,
    is_affine,
    pg,
    recognize_affine_geometry,
    recognize_sag,
    sag,
    units,
    xor_translate,
)
from bmt.gf2 import random_invertible_map
from oracles import (
    brute_affine_w,
    brute_ai4_violation,
    brute_critical,
    brute_induced_is,
    brute_induced_odd_circuit,
    brute_rank,
    brute_triangle,
    independent,
    parity,
    random_bits,
    xor_span,
)

SEED = 3001


def _witness_points_in(m, w):
    assert all(m.contains(p) for p in w.points)


def test_find_triangle_exhaustive_dim3():
    for bits in range(0, 1 << 8, 2):
        m = Matroid(3, bits)
        w = find_triangle(m)
        assert (w is None) == (brute_triangle(bits) is None)
        if w is not None:
            a, b, c = w.points
            assert a ^ b == c and m.contains(a) and m.contains(b) and m.contains(c)


def test_find_triangle_random_dim5():
    rng = random.Random(SEED)
    for _ in range(80):
        bits = random_bits(rng, 5)
        m = Matroid(5, bits)
        w = find_triangle(m)
        assert (w is None) == (brute_triangle(bits) is None)


def test_find_induced_is_matches_brute():
    rng = random.Random(SEED + 1)
    for _ in range(150):
        n = rng.randrange(2, 6)
        s = rng.randrange(2, n + 1)
        bits = random_bits(rng, n)
        m = Matroid(n, bits)
        w = find_induced_is(m, s)
        assert (w is None) == (brute_induced_is(bits, s) is None)
        if w is not None:
            assert len(w.points) == s and w.param == s
            assert independent(w.points)
            extra = xor_span(w.points) - {0} - set(w.points)
            _witness_points_in(m, w)
            assert all(not m.contains(q) for q in extra)


def test_find_induced_is_validation():
    with pytest.raises(ValueError):
        find_induced_is(Matroid(3, 0), 1)
    with pytest.raises(ValueError):
        find_induced_is(Matroid(3, 0), 4)


def test_find_ai4_violation_matches_brute():
    rng = random.Random(SEED + 2)
    for _ in range(120):
        n = rng.randrange(4, 6)
        bits = random_bits(rng, n)
        m = Matroid(n, bits)
        w = find_ai4_violation(m)
        assert (w is None) == (brute_ai4_violation(bits) is None)
        if w is not None:
            a, b, c, d = w.points
            total = a ^ b ^ c ^ d
            assert independent(w.points)
            _witness_points_in(m, w)
            assert all(not m.contains(total ^ x) for x in w.points)


def test_ai4_trivial_below_dim4():
    rng = random.Random(SEED + 3)
    for n in (1, 2, 3):
        for _ in range(20):
            assert find_ai4_violation(Matroid(n, random_bits(rng, n))) is None


def test_ai4_known_cases():
    # The 5-circuit violates the condition; projective and affine
    # geometries never do.
    assert find_ai4_violation(circuit(5)) is not None
    assert find_ai4_violation(sag(3)) is not None
    assert find_ai4_violation(pg(4)) is None
    assert find_ai4_violation(ag(4)) is None


def test_i4tf_witness_combines_both_detectors():
    rng = random.Random(SEED + 4)
    for _ in range(150):
        n = rng.randrange(1, 6)
        bits = random_bits(rng, n)
        m = Matroid(n, bits)
        w = i4tf_witness(m)
        tri = brute_triangle(bits)
        i4 = brute_induced_is(bits, 4) if n >= 4 else None
        assert (w is None) == (tri is None and i4 is None)
        if w is not None:
            assert w.kind in ("triangle", "induced_is")


def test_i4tf_known_members():
    assert i4tf_witness(circuit(5)) is None
    assert i4tf_witness(sag(4)) is None
    assert i4tf_witness(ag(3)) is None
    assert i4tf_witness(pg(3)) is not None
    assert i4tf_witness(units(4)).kind == "induced_is"


def test_find_induced_odd_circuit_matches_brute():
    for bits in range(0, 1 << 8, 2):
        m = Matroid(3, bits)
        w = find_induced_odd_circuit(m)
        assert (w is None) == (brute_induced_odd_circuit(bits, 3) is None)
    rng = random.Random(SEED + 5)
    for _ in range(60):
        n = rng.randrange(1, 5)
        bits = random_bits(rng, n)
        m = Matroid(n, bits)
        w = find_induced_odd_circuit(m)
        assert (w is None) == (brute_induced_odd_circuit(bits, n) is None)
        if w is not None:
            pts = w.points
            assert len(pts) == w.param and w.param % 2 == 1
            x = 0
            for p in pts:
                x ^= p
            assert x == 0
            assert brute_rank(pts) == len(pts) - 1
            extra = xor_span(pts) - {0} - set(pts)
            assert all(not m.contains(q) for q in extra)


def test_find_induced_odd_circuit_validation():
    with pytest.raises(ValueError):
        find_induced_odd_circuit(Matroid(4, 0), kmax=4)
    with pytest.raises(ValueError):
        find_induced_odd_circuit(Matroid(4, 0), kmax=1)
    assert find_induced_odd_circuit(circuit(5), kmax=3) is None
    assert find_induced_odd_circuit(circuit(5), kmax=5).param == 5


def test_affine_iff_no_induced_odd_circuit_exhaustive_dim3():
    for bits in range(0, 1 << 8, 2):
        m = Matroid(3, bits)
        assert is_affine(m) == (find_induced_odd_circuit(m) is None)


def test_critical_number_matches_brute():
    for bits in range(0, 1 << 8, 2):
        m = Matroid(3, bits)
        want = brute_critical(bits, 3) if bits else 0
        assert critical_number(m) == want
    rng = random.Random(SEED + 6)
    for _ in range(25):
        bits = random_bits(rng, 4)
        m = Matroid(4, bits)
        want = brute_critical(bits, 4) if bits else 0
        assert critical_number(m) == want


def test_critical_number_known_values():
    assert critical_number(Matroid(3, 0)) == 0
    for n in (2, 3, 4, 5):
        assert critical_number(pg(n)) == n
        assert critical_number(ag(n)) == 1
    for m in (3, 4, 5):
        assert critical_number(sag(m)) == 2


def test_find_doubling_element():
    rng = random.Random(SEED + 7)
    for _ in range(60):
        n = rng.randrange(1, 5)
        core = Matroid(n, random_bits(rng, n))
        if core.size == 0:
            continue
        d = double(core)
        found = find_doubling_element(d)
        assert found is not None
        w, flat = found
        assert xor_translate(d.bits, w) == d.bits
        # The flat is a hyperplane missing w, so it splits E into the two
        # translated halves.
        assert not flat.contains(w)
        half = d.bits & flat.members
        assert xor_translate(half, w) == d.bits & ~flat.members
    # No doubling element in a 5-circuit or a projective geometry.
    assert find_doubling_element(circuit(5)) is None
    assert find_doubling_element(pg(3)) is None


def test_recognize_sag():
    rng = random.Random(SEED + 8)
    for m in (3, 4, 5, 6):
        s = sag(m)
        rec = recognize_sag(s)
        assert rec is not None and rec[0] == m
        assert apply_map(rec[1], sag(m)) == s
        g = random_invertible_map(s.n, rng)
        moved = apply_map(g, s)
        rec2 = recognize_sag(moved)
        assert rec2 is not None and rec2[0] == m
        assert apply_map(rec2[1], sag(m)) == moved
    assert recognize_sag(pg(3)) is None
    assert recognize_sag(ag(4)) is None
    assert recognize_sag(double(sag(3))) is None


def test_recognize_affine_geometry():
    rng = random.Random(SEED + 9)
    for n in (2, 3, 4):
        a = ag(n)
        rec = recognize_affine_geometry(a)
        assert rec is not None
        span, kernel = rec
        assert span.dim == n and kernel.dim == n - 1
        # E is exactly the span minus the kernel hyperplane.
        assert a.bits == span.members & ~kernel.members
        moved = apply_map(random_invertible_map(n, rng), a)
        rec2 = recognize_affine_geometry(moved)
        assert rec2 is not None
        span2, kernel2 = rec2
        assert moved.bits == span2.members & ~kernel2.members
    assert recognize_affine_geometry(pg(3)) is None
    assert recognize_affine_geometry(sag(3)) is None
    assert recognize_affine_geometry(units(3)) is None
