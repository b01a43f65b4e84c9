import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pollock.quat import canonical_associate, conj_label, quaternions_of_norm
from pollock.qgraph import (
    GOOD_EXAMPLES,
    QuatGraph,
    brute_force_nb_walks,
    build_graph,
    build_graph_reference,
    count_nb_avoiding_walks,
    detect_good_vertices,
    expected_vertex_count,
    good_frame,
    graph_from_bytes,
    graph_report,
    graph_to_bytes,
    load_graph,
    orbit_classes,
    save_graph,
)

SMALL = (3, 21, 231)


@pytest.fixture(scope="module")
def graphs():
    return {r: build_graph(r) for r in SMALL + (2079,)}


class TestBuild:
    @pytest.mark.parametrize("r, count", [(3, 4), (21, 32), (231, 384), (2079, 3456)])
    def test_vertex_counts(self, graphs, r, count):
        assert graphs[r].num_vertices == count == expected_vertex_count(r)

    def test_flagship_vertex_formula(self):
        assert expected_vertex_count(747747) == (83 + 1) * (7 + 1) * (13 + 1) * (3 + 1) * 3 * (11 + 1) == 1354752

    @pytest.mark.parametrize("r", SMALL + (2079,))
    def test_matches_exact_reference(self, graphs, r):
        ref = build_graph_reference(r)
        g = graphs[r]
        assert np.array_equal(ref.coords, g.coords)
        assert np.array_equal(ref.neighbors, g.neighbors)

    @pytest.mark.parametrize("r", SMALL + (2079,))
    def test_structure(self, graphs, r):
        rep = graph_report(graphs[r])
        assert rep.ok
        assert rep.loops == 0

    def test_vertices_are_canonical_classes_of_proper_quaternions(self, graphs):
        g = graphs[231]
        classes = {canonical_associate(x) for x in quaternions_of_norm(231) if x.is_proper()}
        assert {g.vertex(i) for i in range(g.num_vertices)} == classes

    def test_edges_follow_the_swap_rule(self, graphs):
        from pollock.quat import GENERATORS

        g = graphs[231]
        for v in range(0, g.num_vertices, 7):
            R = g.vertex(v)
            for lab in range(6):
                prod = GENERATORS[lab] * R
                hits = [m for m in GENERATORS if (prod * m.conj()).divides_by_integer(5)]
                assert len(hits) == 1
                target = canonical_associate((prod * hits[0].conj()).exact_div_int(5))
                assert g.vertex(int(g.neighbors[v, lab])) == target

    def test_rejects_bad_modulus(self):
        for r in (10, 15, 1):
            with pytest.raises(ValueError):
                build_graph(r)


class TestGoodVertices:
    def test_examples_are_good(self):
        for R in GOOD_EXAMPLES:
            assert R.norm() == 747747
            frame = good_frame(R)
            assert frame is not None
            assert sorted(v.norm() for v in frame) == [83, 91, 99]

    def test_orbit_size(self):
        assert len(orbit_classes()) == 192

    def test_small_detection_matches_exact_frames(self, graphs):
        g = graphs[231]
        good = detect_good_vertices(g, (3, 7, 11))
        exact = [v for v in range(g.num_vertices) if good_frame(g.vertex(v), (3, 7, 11)) is not None]
        assert good.tolist() == exact
        assert g.good_mask.sum() == len(exact)

    def test_norms_must_match(self, graphs):
        with pytest.raises(ValueError):
            detect_good_vertices(graphs[21], (83, 91, 99))


def _fresh(g: QuatGraph, good=()) -> QuatGraph:
    mask = np.zeros(g.num_vertices, dtype=bool)
    mask[list(good)] = True
    return QuatGraph(g.r, g.coords, g.neighbors, mask)


def _walks_ignoring_start(g, v, left, banned):
    # later visits to good vertices, the start included, still kill the walk
    if left == 0:
        return 1
    total = 0
    for lab in range(6):
        w = int(g.neighbors[v, lab])
        if lab != banned and not g.good_mask[w]:
            total += _walks_ignoring_start(g, w, left - 1, conj_label(lab))
    return total


class TestWalks:
    def test_trivial_counts(self, graphs):
        g = _fresh(graphs[21])
        assert brute_force_nb_walks(g, 0, 1) == 6
        assert brute_force_nb_walks(g, 0, 2) == 30

    def test_one_good_neighbor(self, graphs):
        g0 = graphs[2079]  # no multi-edges here
        nb = int(g0.neighbors[0, 0])
        g = _fresh(g0, [nb])
        assert brute_force_nb_walks(g, 0, 1) == 5

    @pytest.mark.parametrize("r", SMALL)
    def test_dp_matches_brute_force(self, graphs, r):
        base = graphs[r]
        rng = np.random.default_rng(r)
        for good in ([], rng.choice(base.num_vertices, size=max(1, base.num_vertices // 8), replace=False).tolist()):
            g = _fresh(base, good)
            starts = rng.choice(g.num_vertices, size=min(4, g.num_vertices), replace=False).tolist()
            for length in range(1, 7):
                table = count_nb_avoiding_walks(g, length)
                assert table.scale_exponent == 0
                for v in starts:
                    assert table.state_counts[v, 6] == brute_force_nb_walks(g, v, length)
                    for f in range(6):
                        assert table.state_counts[v, f] == brute_force_nb_walks(g, v, length, f)

    @given(st.integers(1, 20))
    @settings(max_examples=15, deadline=None)
    def test_regular_count_without_good_vertices(self, length):
        g = _fresh(build_graph(21))
        table = count_nb_avoiding_walks(g, length)
        assert np.all(table.state_counts[:, 6] == 6 * 5 ** (length - 1))
        assert np.all(table.state_counts[:, :6] == 5**length)

    def test_overflow_is_reported(self, graphs):
        with pytest.raises(OverflowError):
            count_nb_avoiding_walks(_fresh(graphs[21]), 40)

    def test_scaling_is_an_upper_bound(self, graphs):
        g = _fresh(graphs[231], [3, 50, 100, 200])
        exact = count_nb_avoiding_walks(g, 18)
        scaled = count_nb_avoiding_walks(g, 18, scale_after=6)
        assert scaled.scale_exponent == 12
        assert np.all(scaled.state_counts * 5**12 >= exact.state_counts)
        assert scaled.certifies_below(40)
        assert scaled.max_scaled == int(scaled.state_counts[:, :6].max())

    def test_free_start_column_is_six_fifths_of_regular(self, graphs):
        t = count_nb_avoiding_walks(_fresh(graphs[21]), 10)
        assert t.max_scaled == 5**10 and t.max_scaled_free_start == 6 * 5**9
        assert t.certifies_below(11) and not t.certifies_below(10)
        assert t.certifies_below(11, free_start=True)

    def test_good_start_counted_separately(self, graphs):
        g = _fresh(graphs[231], [0])
        t = count_nb_avoiding_walks(g, 3)
        assert t.state_counts[0, 6] == 0
        assert t.start_excluded_counts[0].min() > 0
        assert np.array_equal(t.start_excluded_counts[1:], t.state_counts[1:])

    def test_start_excluded_rows_match_brute_force(self, graphs):
        base = graphs[231]
        g = _fresh(base, [0, 40])
        t = count_nb_avoiding_walks(g, 5)
        for f in range(6):
            assert t.start_excluded_counts[0, f] == _walks_ignoring_start(g, 0, 5, f)

    def test_checkpoint_resume(self, graphs, tmp_path):
        g = _fresh(graphs[231], [5, 9])
        ck = tmp_path / "walk.npz"
        direct = count_nb_avoiding_walks(g, 40, scale_after=10)
        count_nb_avoiding_walks(g, 20, scale_after=10, checkpoint=ck, checkpoint_every=10)
        assert ck.exists()
        resumed = count_nb_avoiding_walks(g, 40, scale_after=10, checkpoint=ck, checkpoint_every=10)
        assert np.array_equal(direct.state_counts, resumed.state_counts)
        assert direct.scale_exponent == resumed.scale_exponent

    def test_checkpoint_for_other_parameters_ignored(self, graphs, tmp_path):
        g = _fresh(graphs[231], [5])
        ck = tmp_path / "walk.npz"
        count_nb_avoiding_walks(g, 20, scale_after=4, checkpoint=ck, checkpoint_every=10)
        other = count_nb_avoiding_walks(g, 30, scale_after=10, checkpoint=ck, checkpoint_every=100)
        assert np.array_equal(other.state_counts, count_nb_avoiding_walks(g, 30, scale_after=10).state_counts)

    def test_brute_force_refuses_huge(self):
        big = QuatGraph(3, np.zeros((20_000, 4), dtype=np.int64), np.zeros((20_000, 6), dtype=np.int32))
        with pytest.raises(ValueError):
            brute_force_nb_walks(big, 0, 13)


class TestPersistence:
    def test_roundtrip(self, graphs, tmp_path):
        g = _fresh(graphs[231], [1, 2, 3])
        path = tmp_path / "g.pqg"
        save_graph(g, path)
        h = load_graph(path)
        assert h.r == g.r
        assert np.array_equal(h.coords, g.coords)
        assert np.array_equal(h.neighbors, g.neighbors)
        assert np.array_equal(h.good_mask, g.good_mask)
        assert graph_to_bytes(h) == path.read_bytes()

    def test_corruption_detected(self, graphs):
        data = bytearray(graph_to_bytes(graphs[21]))
        data[40] ^= 1
        with pytest.raises(ValueError, match="checksum"):
            graph_from_bytes(bytes(data))

    def test_bad_magic(self):
        with pytest.raises(ValueError):
            graph_from_bytes(b"XXXX" + bytes(20))
