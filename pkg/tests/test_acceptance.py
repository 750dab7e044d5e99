"""Acceptance gate: the nine verification suites at full scale.

Each test runs one suite, prints a single pass/fail line, and enforces
the stated runtime budget where one exists.  Suites are cached so the
whole gate runs each computation once.
"""

from functools import lru_cache

from bmt.selftest import (
    check_affine_characterization,
    check_alpha_beta_ledger,
    check_census_counts,
    check_chi_bound,
    check_exhaustive_equivalence,
    check_preservation,
    check_sag_properties,
    check_special_hyperplane,
    check_stabilizer_clauses,
    run_selftest,
)

LEVEL = "full"


@lru_cache(maxsize=None)
def _run(check):
    return check(LEVEL, 1)


def _report(idx, res, budget=None):
    verdict = "PASS" if res.passed else "FAIL"
    print(f"criterion {idx} {verdict}  {res.line()}")
    assert res.passed, res.detail
    if budget is not None:
        assert res.elapsed < budget, f"{res.name} took {res.elapsed:.1f}s"


def test_criterion_1_census_counts():
    # iso_classes 1..5 for the nonaffine class at dims 4..8, under 2 minutes.
    _report(1, _run(check_census_counts), budget=120.0)


def test_criterion_2_exhaustive_equivalence():
    # All 2^15 subsets at dim 4: decomposition agrees with the detectors
    # and every certificate replays, single threaded under 60 seconds.
    _report(2, _run(check_exhaustive_equivalence), budget=60.0)


def test_criterion_3_chi_bound():
    # Critical number at most 2 for every member, exhaustive at dim 4 plus
    # random members at dims 5..9, under 2 minutes.
    _report(3, _run(check_chi_bound), budget=120.0)


def test_criterion_4_affine_characterization():
    # Affine iff no induced odd circuit, exhaustive through dim 4.
    _report(4, _run(check_affine_characterization), budget=120.0)


def test_criterion_5_special_hyperplane():
    # A comparable hyperplane exists for every size-4-free set: exhaustive
    # through dim 4 plus 500 random class members at dim 5.
    _report(5, _run(check_special_hyperplane))


def test_criterion_6_stabilizer_clauses():
    # Stabilizer flat clauses: exhaustive at dim 3 plus 1000 random sets.
    _report(6, _run(check_stabilizer_clauses))


def test_criterion_7_preservation():
    # Doubling preserves chi and small freeness; 1-expansion preserves
    # affineness and size 4 and 5 freeness; 200 random inputs each.
    _report(7, _run(check_preservation))


def test_criterion_8_alpha_beta_ledger():
    # All eight layer-operation clauses on 200 random inputs per clause,
    # plus exhaustive certificate round trips through dim 3.
    _report(8, _run(check_alpha_beta_ledger))


def test_criterion_9_sag_properties():
    # Size, freeness, critical number 2, and self recognition for n 3..8.
    _report(9, _run(check_sag_properties))


def test_selftest_report_aggregates_all_criteria():
    rep = run_selftest("quick")
    assert rep.passed
    assert len(rep.results) == 9
    assert "all checks passed" in rep.table()
    for res in rep.results:
        line = res.line()
        assert line.startswith("pass")
        assert res.name in line
