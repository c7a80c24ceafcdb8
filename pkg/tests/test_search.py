"""Extremal searches, the partition explorer, and verification suites."""

import math

import pytest

from fiedlertrees import (
    build_caterpillar,
    canonical_code,
    is_caterpillar,
    min_alpha_caterpillar,
    min_alpha_tree,
    min_nu_rooted,
    spine_arrangements,
    tree_from_code,
    verify_suite,
)
from fiedlertrees.search import (
    CSV_HEADER,
    EnumerationCapExceeded,
    all_tree_sequences,
    explore_partitions,
    partition_rows_to_csv,
)

from helpers import NU_M2, NU_STAR4_LEAF, dirichlet_path_nu, path_alpha, spider


def test_all_tree_sequences_counts():
    # partitions of n - 2 parameterize the degree multisets
    assert list(all_tree_sequences(2)) == [(1, 1)]
    assert list(all_tree_sequences(3)) == [(2, 1, 1)]
    assert len(list(all_tree_sequences(9))) == 15
    for n in range(2, 10):
        for seq in all_tree_sequences(n):
            assert sum(seq) == 2 * (n - 1)


def test_min_alpha_tree_path4():
    rep = min_alpha_tree((2, 2, 1, 1))
    assert rep.instance_count == 1
    assert rep.min_value == pytest.approx(2 - math.sqrt(2), rel=1e-11)
    assert len(rep.minimizers) == 1
    assert rep.all_caterpillars and rep.all_theorem1_shape


def test_min_alpha_tree_spider_sequence():
    rep = min_alpha_tree((3, 2, 2, 2, 1, 1, 1))
    assert rep.instance_count == 3
    assert rep.all_caterpillars
    codes = [m["code"] for m in rep.minimizers]
    assert canonical_code(spider(2, 2, 2)) not in codes
    for m in rep.minimizers:
        assert is_caterpillar(tree_from_code(m["code"]))


def test_min_alpha_tree_star():
    rep = min_alpha_tree((3, 1, 1, 1))
    assert rep.instance_count == 1
    assert rep.min_value == pytest.approx(1.0, abs=1e-12)


def test_min_alpha_tree_cap():
    with pytest.raises(EnumerationCapExceeded):
        min_alpha_tree((2,) * 10 + (1, 1), cap=10)


def test_min_alpha_tree_rejects_invalid():
    with pytest.raises(ValueError):
        min_alpha_tree((2, 2, 2))


def test_parallel_matches_serial():
    serial = min_alpha_tree((3, 2, 2, 2, 1, 1, 1), jobs=1).to_json()
    parallel = min_alpha_tree((3, 2, 2, 2, 1, 1, 1), jobs=3).to_json()
    serial.pop("elapsed")
    parallel.pop("elapsed")
    assert serial == parallel


def test_spine_arrangements_counts():
    assert len(spine_arrangements((3, 2, 2, 2))) == 2
    assert len(spine_arrangements((4, 3, 2))) == 3
    assert len(spine_arrangements((3, 3))) == 1
    assert len(spine_arrangements((2, 2, 2, 2))) == 1
    assert spine_arrangements(()) == [()]
    # reversal classes of (2, 3, 2) and friends
    assert sorted(spine_arrangements((3, 2, 2))) == [(2, 2, 3), (2, 3, 2)]


def test_min_alpha_caterpillar_agrees_with_full_search():
    # restricting the search to caterpillars never changes the minimum
    for n in range(2, 10):
        for seq in all_tree_sequences(n):
            full = min_alpha_tree(seq)
            cats = min_alpha_caterpillar(seq)
            assert cats.min_value == pytest.approx(full.min_value, rel=1e-10)


def test_min_alpha_caterpillar_path_unique():
    rep = min_alpha_caterpillar((2, 2, 2, 2, 1, 1))
    assert rep.instance_count == 1
    assert rep.min_value == pytest.approx(path_alpha(6), rel=1e-11)


def test_min_nu_rooted_examples():
    rep = min_nu_rooted((2, 2, 1, 1))
    assert rep.instance_count == 2
    assert rep.min_value == pytest.approx(dirichlet_path_nu(3), rel=1e-11)
    assert rep.all_minimal_shape
    assert len(rep.minimizers) == 1
    assert rep.minimizers[0]["root"] == 0

    rep = min_nu_rooted((2, 1, 1))
    assert rep.min_value == pytest.approx(NU_M2, rel=1e-11)

    rep = min_nu_rooted((3, 1, 1, 1))
    assert rep.instance_count == 2
    # leaf-rooted star wins over the center-rooted blocks
    assert rep.min_value == pytest.approx(NU_STAR4_LEAF, rel=1e-11)
    assert rep.all_minimal_shape


def test_min_nu_rooted_weighted():
    rep = min_nu_rooted((2, 2, 1, 1), 1.5)
    assert rep.boundary_weight == 1.5
    assert rep.instance_count == 3  # the inner root admits two placements
    assert rep.all_minimal_shape


def test_explore_partitions_rows():
    rows = explore_partitions((3, 2, 2, 2, 1, 1, 1))
    assert len(rows) == 2
    assert rows[0].alpha <= rows[1].alpha
    best = rows[0]
    assert best.arrangement in ((2, 2, 2, 3), (3, 2, 2, 2))
    # spine multiset is covered by the two sides plus a characteristic vertex
    covered = list(best.left_degrees) + list(best.right_degrees)
    if best.charset_kind == "vertex":
        covered.append(
            build_caterpillar(best.arrangement).degree(int(best.charset_pos))
        )
    assert sorted(covered) == [2, 2, 2, 3]

    path_rows = explore_partitions((2, 2, 2, 2, 1, 1))
    assert len(path_rows) == 1
    assert path_rows[0].charset_kind == "edge"

    rows3 = explore_partitions((4, 3, 2, 1, 1, 1, 1, 1))
    assert len(rows3) == 3


def test_explore_argmin_matches_caterpillar_search():
    for seq in [(3, 2, 2, 2, 1, 1, 1), (3, 3, 2, 2, 1, 1, 1, 1), (4, 2, 2, 1, 1, 1, 1)]:
        rows = explore_partitions(seq)
        rep = min_alpha_caterpillar(seq)
        assert rows[0].alpha == pytest.approx(rep.min_value, rel=1e-12)
        arrangements = {tuple(m["arrangement"]) for m in rep.minimizers}
        assert rows[0].arrangement in arrangements


def test_explore_csv_shape_and_determinism():
    rows = explore_partitions((3, 2, 2, 2, 1, 1, 1))
    text = partition_rows_to_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert len(lines) == 3
    for line in lines[1:]:
        assert len(line.split(",")) == 7
    again = partition_rows_to_csv(explore_partitions((3, 2, 2, 2, 1, 1, 1)))
    assert text == again


def test_verify_suite_smoke():
    rep = verify_suite("theorem1", nmax=7)
    assert rep["passed"] and rep["checks"][0]["checked"] >= 1

    rep = verify_suite("lemma2", nmax=7)
    assert rep["passed"]

    rep = verify_suite("lemma5", nmax=6)
    assert rep["passed"]

    rep = verify_suite("perturb", samples=25, rng_seed=5)
    assert rep["passed"]

    rep = verify_suite("glue", samples=25, rng_seed=5)
    assert rep["passed"]

    rep = verify_suite("split", nmax=9, samples=25, rng_seed=5)
    assert rep["passed"]
    assert rep["checks"][0]["worst_residual"] <= 1e-8


def test_verify_suite_all_and_determinism():
    a = verify_suite("all", nmax=5, samples=10, rng_seed=3)
    b = verify_suite("all", nmax=5, samples=10, rng_seed=3)
    assert a == b
    assert a["passed"]
    assert [c["suite"] for c in a["checks"]] == [
        "theorem1",
        "lemma2",
        "lemma5",
        "perturb",
        "glue",
        "split",
    ]
    with pytest.raises(ValueError):
        verify_suite("nonsense")


def test_search_reports_are_json_ready():
    import json

    rep = min_alpha_tree((2, 2, 1, 1))
    doc = rep.to_json()
    json.dumps(doc)
    assert doc["sequence"] == [2, 2, 1, 1]
    assert "elapsed" in doc

    rep = min_nu_rooted((2, 1, 1))
    json.dumps(rep.to_json())
