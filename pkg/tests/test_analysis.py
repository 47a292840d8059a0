import pytest

from treepoly.analysis import (
    REFERENCE_ARGMAX_COUNTS,
    argmax_histogram,
    default_scope,
    duplicate_groups,
    duplicates_report,
    histogram_report,
    special_report,
    special_sequences,
    verify_flags,
)
from treepoly.canon import free_code
from treepoly.errors import UnsealedLevelError
from treepoly.store import Store, TreeRecord
from treepoly.tree import Tree


@pytest.fixture()
def scratch_store_with_fake(tmp_path):
    """A store whose single record carries the known non-unimodal,
    non-log-concave coefficient sequence (flags honestly computed)."""
    store = Store(tmp_path / "scratch")
    n = 33  # the sequence has coeffs[1] = 33, so the record must claim n = 33
    path33 = Tree.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    degrees = tuple(sorted((len(a) for a in path33.adjacency), reverse=True))
    rec = TreeRecord.create(
        uid=free_code(path33), n=n, degrees=degrees, coeffs=(1, 33, 24, 32, 16)
    )
    store.open_level(n)
    assert store.insert_if_absent(rec)
    store.seal_level(n)
    return store


class TestVerifyFlags:
    def test_clean_corpus(self, store14):
        assert verify_flags(store14, (0, 14)) == (0, 0)

    def test_small_scope(self, store8):
        assert verify_flags(store8, (1, 5)) == (0, 0)

    def test_injected_negative_control(self, scratch_store_with_fake):
        assert verify_flags(scratch_store_with_fake, (33, 33)) == (1, 1)

    def test_unsealed_range_rejected(self, store8):
        with pytest.raises(UnsealedLevelError):
            verify_flags(store8, (0, 9))


class TestArgmaxHistogram:
    def test_small_scope_with_empty_tree(self, store8):
        hist = argmax_histogram(store8, (0, 3))
        assert hist[0] == 2  # both the empty tree and the single vertex peak at 0
        assert hist == {0: 2, 1: 2}

    def test_totals_match_record_count(self, store14):
        hist = argmax_histogram(store14, (0, 14))
        assert sum(hist.values()) == sum(
            store14.manifest(n).record_count for n in range(0, 15)
        )

    def test_small_k_rows_ci_scale(self, store14):
        # argmax 1 and 2 classes are complete well below n=14
        hist = argmax_histogram(store14, (0, 14))
        assert hist[1] == 4  # the paths on 2..4 vertices and the 4-star
        assert hist[2] == 23

    def test_report_reference_column_only_on_full_scope(self, store14):
        rep = histogram_report(store14, (0, 14))
        assert all(row[2] == "-" for row in rep.rows[1:])


class TestDuplicateGroups:
    def test_nine_vertex_group(self, store14):
        groups = duplicate_groups(store14, (9, 9))
        target = next(g for g in groups if g.coeffs == (1, 9, 28, 37, 21, 4))
        assert target.size >= 2
        assert target.same_degrees
        assert target.degree_sequences[0] == (3, 3, 2, 2, 2, 1, 1, 1, 1)

    def test_eight_vertex_group_differing_degrees(self, store14):
        groups = duplicate_groups(store14, (8, 8))
        target = next(g for g in groups if g.coeffs == (1, 8, 21, 23, 11, 2))
        assert not target.same_degrees
        assert set(target.degree_sequences) == {
            (4, 2, 2, 2, 1, 1, 1, 1),
            (3, 3, 3, 1, 1, 1, 1, 1),
        }

    def test_sorted_by_size_descending(self, store14):
        groups = duplicate_groups(store14, (1, 14))
        sizes = [g.size for g in groups]
        assert sizes == sorted(sizes, reverse=True)
        assert all(g.size >= 2 for g in groups)

    def test_members_share_vertex_count(self, store14):
        for g in duplicate_groups(store14, (1, 14)):
            assert len(g.uids) == len(g.degree_sequences)
            assert all(len(uid) == 2 * g.n for uid in g.uids)


class TestSpecialSequences:
    def test_fibonacci_members(self, store14):
        special = special_sequences(store14, (1, 14))
        assert len(special.fibonacci) == 4
        assert sorted(m.n for m in special.fibonacci) == [1, 2, 3, 8]
        assert {m.coeffs for m in special.fibonacci} == {
            (1, 1),
            (1, 2),
            (1, 3, 1),
            (1, 8, 21, 21, 8, 1),
        }

    def test_monotonic_members(self, store14):
        special = special_sequences(store14, (1, 14))
        got = {(m.n, m.detail) for m in special.monotonic}
        # the single vertex and the single edge are the only weakly
        # monotonic sequences besides the empty tree (and both ascend)
        assert got == {(1, "ascending"), (2, "ascending")}

    def test_empty_tree_in_scope(self, store14):
        special = special_sequences(store14, (0, 14))
        assert (0, "ascending") in {(m.n, m.detail) for m in special.monotonic}
        assert any(m.n == 0 for m in special.symmetric)
        assert any(m.n == 0 for m in special.fibonacci)

    def test_symmetric_includes_paper_examples(self, store14):
        special = special_sequences(store14, (1, 14))
        coeffs = {m.coeffs for m in special.symmetric}
        assert (1, 6, 10, 6, 1) in coeffs
        assert (1, 8, 21, 21, 8, 1) in coeffs
        assert (1, 9, 28, 40, 28, 9, 1) in coeffs


class TestReports:
    def test_reports_deterministic_modulo_timestamp(self, store8):
        def body(rep):
            return [l for l in rep.to_psv().splitlines() if not l.startswith("#")]

        a = duplicates_report(store8, (1, 8))
        b = duplicates_report(store8, (1, 8))
        assert body(a) == body(b)
        assert body(special_report(store8, (1, 8))) == body(special_report(store8, (1, 8)))

    def test_report_files_written(self, store8, tmp_path):
        rep = histogram_report(store8, (0, 8))
        out = rep.write(store8.path)
        assert out.name == "histogram.psv"
        text = out.read_text()
        assert text.startswith("# report: histogram")
        assert "# scope: n=0..8" in text

    def test_default_scope(self, store8):
        assert default_scope(store8, include_empty=True) == (0, 8)
        assert default_scope(store8, include_empty=False) == (1, 8)

    def test_reference_table_totals(self):
        # published rows sum to one less than the corpus-with-P0 total
        assert sum(REFERENCE_ARGMAX_COUNTS.values()) == 1346024
