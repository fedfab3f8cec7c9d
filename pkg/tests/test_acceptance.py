"""Acceptance suite: one test per criterion, at its stated time budget.

Run with -s to see the per-criterion lines; each prints claim, verdict,
and elapsed time, and fails unless the verdict is `verified` within budget.
"""

import time

from torsorlab import checks as pc


def run_check(fn, criterion, budget_seconds, **kw):
    t0 = time.time()
    result = fn(**kw)
    elapsed = time.time() - t0
    line = (
        f"criterion {criterion:2d} {result.claim:42s} "
        f"{result.verdict:10s} {elapsed:7.2f}s (budget {budget_seconds}s)"
    )
    print(line)
    assert result.verdict == "verified", line
    assert elapsed < budget_seconds, line
    return result


def test_criterion_01_extraspecial_structure():
    r = run_check(pc.check_extraspecial_structure, 1, 1.0)
    for l in (3, 5):
        ev = r.evidence[f"l={l}"]
        assert ev["order"] == l**3
        assert ev["center_size"] == l
        assert len(ev["fiber_classes"]) == l
        assert ev["centralizer_order"] == l * l


def test_criterion_02_block_decomposition():
    r = run_check(pc.check_block_decomposition, 2, 5.0)
    assert sorted(r.evidence["S3"]["block_ranks"]) == [1, 2, 3]
    assert sorted(r.evidence["D4"]["block_ranks"]) == [1, 1, 2, 2, 2]
    assert r.evidence["C1"]["block_ranks"] == [1]


def test_criterion_03_permutation_h1():
    r = run_check(pc.check_permutation_h1_vanishing, 3, 60.0)
    assert r.evidence["checked"] >= 500
    assert not r.evidence["failures"]


def test_criterion_04_character_sequences():
    r = run_check(pc.check_character_sequences, 4, 30.0)
    assert r.evidence["data_checked"] >= 50
    assert not r.evidence["failures"]


def test_criterion_05_cm_type_bases():
    r = run_check(pc.check_cm_type_bases, 5, 30.0)
    assert r.evidence["types_checked"] >= 200
    assert not r.evidence["failures"]


def test_criterion_06_twist_bijection():
    r = run_check(pc.check_twist_bijection, 6, 60.0)
    assert len(r.evidence) >= 3  # at least three sequences
    for rows in r.evidence.values():
        assert len(rows) >= 2  # at least two base objects each
        for row in rows:
            assert row["bijective"] and row["neutral_to_base"]


def test_criterion_07_truncated_orbits():
    r = run_check(pc.check_truncated_orbit_transitivity, 7, 120.0, seed=0)
    assert r.evidence["systems"] == 50
    assert r.evidence["orbit_failures"] == 0
    assert r.evidence["scan_systems"] >= 5
    assert r.evidence["scan_choices"] >= 20


def test_criterion_08_lim1_dichotomy():
    r = run_check(pc.check_lim1_dichotomy, 8, 120.0)
    assert r.evidence["halving-subgroup-chain"] == "uncountable"
    assert r.evidence["identity-endomorphism"] == "trivial"
    assert r.evidence["layered-obstruction-tower"] == "uncountable"
    assert r.evidence["certificate-replay-identical"]
    lv = r.evidence["certificate"]["levels"][0]
    assert lv["norm_unit_index"] == 3


def test_criterion_09_splitting_dual_oracle():
    r = run_check(pc.check_splitting_dual_oracle, 9, 60.0, seed=0)
    assert r.evidence["comparisons"] >= 500
    assert not r.evidence["mismatches"]
    assert r.evidence["sum_rule"]


def test_criterion_10_tame_norm_index():
    r = run_check(pc.check_tame_norm_index, 10, 1.0)
    assert r.evidence["cases"] > 30
    assert r.evidence["all_equal_l"]


def test_criterion_11_product_h1():
    r = run_check(pc.check_product_h1, 11, 60.0)
    assert len(r.evidence) == 4
    for row in r.evidence:
        assert row["bijective"]
        prod = 1
        for c in row["factor_counts"]:
            prod *= c
        assert row["product_count"] == prod


def test_suite_is_deterministic():
    a = pc.run_suite(seed=0)
    b = pc.run_suite(seed=0)
    assert [r.verdict for r in a] == [r.verdict for r in b]
    assert [r.evidence for r in a] == [r.evidence for r in b]
