"""Isomorphism census of the generated classes, plus brute-force sweeps.

Enumeration never walks raw step sequences: isomorphic intermediates
produce isomorphic successors, so each level is deduplicated by canonical
form before expanding.  That keeps the search proportional to the class
size instead of the sequence count.
"""

from __future__ import annotations

import functools
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .construct import STEP_OPS, Certificate, beta0, sag
from .decompose import AffineChain, NotMember, decompose_i4tf
from .detect import i4tf_witness
from .errors import TheoremViolation
from .gf2 import compose, identity_map, invert, random_invertible_map, rank
from .matroid import Matroid, canonical_form, is_affine, serialize_bmat

CLASS_TAGS = ("i4tf_nonaffine", "i4tf_affine", "ai4")
DIM_BOUND = 8

_BASES = (Matroid(1, 0), Matroid(1, 2))
_A_STEPS = ("alpha0", "alpha1", "beta1")
_B_STEPS = ("alpha0", "alpha1")
_AFFINE_STEPS = ("expand0", "expand1")


@dataclass(frozen=True)
class CensusReport:
    """Iso-class census of one generated class at one dimension.

    total_labeled counts the distinct point sets produced at the target
    dimension before isomorphism dedup; it depends on the per-level merge
    and is reported as derived data only.
    """

    dim: int
    tag: str
    total_labeled: int
    iso_classes: int
    representatives: tuple[Matroid, ...]
    elapsed: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "dim": self.dim,
                "class": self.tag,
                "total_labeled": self.total_labeled,
                "iso_classes": self.iso_classes,
                "representatives": [list(m.points) for m in self.representatives],
                "elapsed": round(self.elapsed, 3),
            }
        )

    def table(self) -> str:
        head = (
            f"class {self.tag} dim {self.dim}: "
            f"{self.iso_classes} classes, {self.total_labeled} labeled, "
            f"{self.elapsed:.2f}s"
        )
        lines = [head, f"{'idx':>4} {'size':>5} {'rank':>5} {'affine':>7}"]
        for i, m in enumerate(self.representatives):
            aff = "yes" if is_affine(m) else "no"
            lines.append(f"{i:>4} {len(m.points):>5} {rank(m.points):>5} {aff:>7}")
        return "\n".join(lines)

    def write_representatives(self, directory: str) -> list[str]:
        os.makedirs(directory, exist_ok=True)
        paths = []
        for i, m in enumerate(self.representatives):
            path = os.path.join(directory, f"{self.tag}-d{self.dim}-{i:03d}.bmat")
            with open(path, "w") as fh:
                fh.write(serialize_bmat(m))
            paths.append(path)
        return paths


def _canon_bits(m: Matroid) -> int:
    return canonical_form(m)[0].bits


def _step(name: str, m: Matroid) -> Matroid:
    return STEP_OPS[name](m)


def _affine_shard(dim: int, base_bits: int, first: str) -> tuple[set[int], set[int]]:
    """Expansion-chain BFS seeded with one base and one first step.

    Returns (canonical bits, exact generated bits) at the target dimension.
    """
    img = _step(first, Matroid(1, base_bits))
    if dim == 2:
        return {_canon_bits(img)}, {img.bits}
    cur = {_canon_bits(img)}
    for level in range(2, dim - 1):
        nxt = set()
        for bits in cur:
            for name in _AFFINE_STEPS:
                nxt.add(_canon_bits(_step(name, Matroid(level, bits))))
        cur = nxt
    raw: set[int] = set()
    for bits in cur:
        for name in _AFFINE_STEPS:
            raw.add(_step(name, Matroid(dim - 1, bits)).bits)
    canon = {_canon_bits(Matroid(dim, b)) for b in raw}
    return canon, raw


def _ai4_shard(
    dim: int, base_bits: int, first: str
) -> tuple[set[int], set[int], set[int]]:
    """Two-state BFS: before the one allowed beta0 step, and after it.

    Returns (state-A canonical bits, state-B canonical bits, exact bits)
    at the target dimension.
    """
    base = Matroid(1, base_bits)
    a_cur: set[int] = set()
    b_cur: set[int] = set()
    if first == "beta0":
        b_cur = {_canon_bits(beta0(base))}
    else:
        a_cur = {_canon_bits(_step(first, base))}
    raw = {_step(first, base).bits}
    level = 2
    while level < dim:
        a_nxt: set[int] = set()
        b_nxt: set[int] = set()
        raw = set()
        for bits in a_cur:
            m = Matroid(level, bits)
            for name in _A_STEPS:
                img = _step(name, m)
                a_nxt.add(_canon_bits(img))
                raw.add(img.bits)
            img = beta0(m)
            b_nxt.add(_canon_bits(img))
            raw.add(img.bits)
        for bits in b_cur:
            m = Matroid(level, bits)
            for name in _B_STEPS:
                img = _step(name, m)
                b_nxt.add(_canon_bits(img))
                raw.add(img.bits)
        a_cur, b_cur = a_nxt, b_nxt
        level += 1
    return a_cur, b_cur, raw


def _run_shards(tasks, worker, threads: int):
    if threads <= 1:
        return [worker(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futs = [pool.submit(worker, *t) for t in tasks]
        return [f.result() for f in futs]


def enumerate_generated(dim: int, tag: str, threads: int = 1) -> CensusReport:
    """Census of one class at one dimension, deduplicated by canonical form.

    Shards by (base, first step) when threads > 1; shard results merge by
    set union, so the outcome does not depend on scheduling.
    """
    if tag not in CLASS_TAGS:
        raise ValueError(f"unknown class tag {tag!r}")
    if not 1 <= dim <= DIM_BOUND:
        raise ValueError(f"dimension must be between 1 and {DIM_BOUND}")
    start = time.monotonic()

    if tag == "i4tf_nonaffine":
        canon: set[int] = set()
        raws: set[int] = set()
        for mpar in range(3, dim):
            k = dim - 1 - mpar
            cert = Certificate(sag(mpar), ("double",) * k, identity_map(dim))
            m = cert.replay()
            raws.add(m.bits)
            canon.add(_canon_bits(m))
        reps = tuple(Matroid(dim, b) for b in sorted(canon))
        return CensusReport(
            dim, tag, len(raws), len(reps), reps, time.monotonic() - start
        )

    if dim == 1:
        reps = tuple(sorted(_BASES, key=lambda m: m.bits))
        return CensusReport(
            dim, tag, len(reps), len(reps), reps, time.monotonic() - start
        )

    if tag == "i4tf_affine":
        tasks = [(dim, b.bits, s) for b in _BASES for s in _AFFINE_STEPS]
        parts = _run_shards(tasks, _affine_shard, threads)
        canon = set().union(*(p[0] for p in parts))
        raws = set().union(*(p[1] for p in parts))
    else:
        tasks = [(dim, b.bits, s) for b in _BASES for s in _A_STEPS + ("beta0",)]
        parts = _run_shards(tasks, _ai4_shard, threads)
        canon = set().union(*(p[0] | p[1] for p in parts))
        raws = set().union(*(p[2] for p in parts))

    reps = tuple(Matroid(dim, b) for b in sorted(canon))
    return CensusReport(dim, tag, len(raws), len(reps), reps, time.monotonic() - start)


@dataclass(frozen=True)
class CrosscheckReport:
    """Full-sweep comparison of the decomposer against the detectors."""

    dim: int
    subsets: int
    discrepancies: tuple[int, ...]
    tally: dict
    elapsed: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "dim": self.dim,
                "subsets": self.subsets,
                "discrepancies": list(self.discrepancies),
                "tally": self.tally,
                "elapsed": round(self.elapsed, 3),
            }
        )

    def table(self) -> str:
        lines = [
            f"dim {self.dim}: {self.subsets} subsets, "
            f"{len(self.discrepancies)} discrepancies, {self.elapsed:.2f}s",
            f"{'group':<28} {'labeled':>8} {'classes':>8}",
        ]
        for key, val in self.tally.items():
            lines.append(f"{key:<28} {val['labeled']:>8} {val['iso_classes']:>8}")
        return "\n".join(lines)


def exhaustive_crosscheck(dim: int) -> CrosscheckReport:
    """Sweep every subset at dim <= 4: membership by detectors vs decomposer.

    A subset counts as a discrepancy when the two disagree, when a claimed
    member fails to replay bit-exactly, or when the decomposer raises its
    falsification signal.  Member tallies split by affineness and rank.
    """
    if dim > 4:
        raise ValueError("exhaustive sweep is capped at dimension 4")
    start = time.monotonic()
    groups = {
        "i4tf_affine": set(),
        "i4tf_nonaffine": set(),
        "i4tf_nonaffine_rank_deficient": set(),
    }
    labeled = {k: 0 for k in groups}
    bad: list[int] = []
    npts = (1 << dim) - 1
    for idx in range(1 << npts):
        bits = idx << 1
        m = Matroid(dim, bits)
        expect = i4tf_witness(m) is None
        try:
            res = decompose_i4tf(m)
            got = not isinstance(res.outcome, NotMember)
            if got:
                rep = res.outcome.certificate.replay()
                tgt = m if isinstance(res.outcome, AffineChain) else res.restriction.matroid
                if rep != tgt:
                    got = None
        except TheoremViolation:
            got = None
        if got != expect:
            bad.append(bits)
            continue
        if expect:
            if is_affine(m):
                key = "i4tf_affine"
            elif rank(m.points) == dim:
                key = "i4tf_nonaffine"
            else:
                key = "i4tf_nonaffine_rank_deficient"
            labeled[key] += 1
            groups[key].add(_canon_bits(m))
    tally = {
        k: {"labeled": labeled[k], "iso_classes": len(groups[k])} for k in groups
    }
    return CrosscheckReport(
        dim, 1 << npts, tuple(bad), tally, time.monotonic() - start
    )


def random_members(dim: int, count: int, seed: int, tag: str) -> list[Matroid]:
    """Deterministic random class members via random certificate replay.

    Step sequences draw uniformly at each level (ai4 switches to the
    alpha-only state once beta0 is drawn); the final relabeling map is
    uniform over invertible maps.
    """
    if tag not in CLASS_TAGS:
        raise ValueError(f"unknown class tag {tag!r}")
    if tag == "i4tf_nonaffine" and dim < 4:
        raise ValueError("no nonaffine members below dimension 4")
    rng = random.Random(f"{tag}:{dim}:{seed}")
    out = []
    for _ in range(count):
        if tag == "i4tf_nonaffine":
            mpar = rng.randrange(3, dim)
            steps: tuple[str, ...] = ("double",) * (dim - 1 - mpar)
            base = sag(mpar)
        elif tag == "i4tf_affine":
            base = _BASES[rng.randrange(2)]
            steps = tuple(
                rng.choice(_AFFINE_STEPS) for _ in range(dim - 1)
            )
        else:
            base = _BASES[rng.randrange(2)]
            names = []
            in_b = False
            for _ in range(dim - 1):
                if in_b:
                    names.append(rng.choice(_B_STEPS))
                else:
                    pick = rng.choice(_A_STEPS + ("beta0",))
                    if pick == "beta0":
                        in_b = True
                    names.append(pick)
            steps = tuple(names)
        cmap = random_invertible_map(dim, rng)
        out.append(Certificate(base, steps, cmap).replay())
    return out


@functools.lru_cache(maxsize=8)
def _normal_form_table(dim: int) -> dict[int, tuple[int, tuple[str, ...]]]:
    """canonical bits -> (base bits, step names) for every class member."""
    table: dict[int, tuple[int, tuple[str, ...]]] = {}
    frontier: list[tuple[Matroid, int, tuple[str, ...], bool]] = []
    for b in _BASES:
        frontier.append((b, b.bits, (), False))
    for m, base_bits, steps, in_b in frontier:
        cb = _canon_bits(m)
        if m.n == dim and cb not in table:
            table[cb] = (base_bits, steps)
    level = 1
    while level < dim:
        nxt = []
        seen_a: set[int] = set()
        seen_b: set[int] = set()
        for m, base_bits, steps, in_b in frontier:
            options = _B_STEPS if in_b else _A_STEPS + ("beta0",)
            for name in options:
                img = _step(name, m)
                cb = _canon_bits(img)
                goes_b = in_b or name == "beta0"
                seen = seen_b if goes_b else seen_a
                if cb in seen:
                    continue
                seen.add(cb)
                nxt.append((img, base_bits, steps + (name,), goes_b))
                if img.n == dim and cb not in table:
                    table[cb] = (base_bits, steps + (name,))
        frontier = nxt
        level += 1
    return table


def normal_form_certificate(m: Matroid) -> Certificate | None:
    """Certificate with at most one beta0, then alpha steps only, or None.

    Intended for small dimensions; the table behind it grows with the
    class census.
    """
    cm, fm = canonical_form(m)
    entry = _normal_form_table(m.n).get(cm.bits)
    if entry is None:
        return None
    base_bits, steps = entry
    raw = Certificate(Matroid(1, base_bits), steps, identity_map(m.n)).replay()
    fr = canonical_form(raw)[1]
    cmap = compose(invert(fm), fr)
    cert = Certificate(Matroid(1, base_bits), steps, cmap)
    if cert.replay() != m:
        raise TheoremViolation("normal form certificate failed to replay")
    return cert
