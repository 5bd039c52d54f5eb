import pytest
from hypothesis import given
from hypothesis import strategies as st

from bunkbed.errors import InvalidParameters, LabelOutOfRange
from bunkbed.graph import path_graph, random_tree
from bunkbed.model import EdgeConfiguration, TransversalSet, build_bunkbed, connected

from oracles import bfs_reaches


class TestBuild:
    def test_empty_h(self, single_edge):
        bb = build_bunkbed(single_edge, [])
        assert (bb.num_vertices, bb.num_layer_edges, len(bb.transversal_edges)) == (4, 2, 0)

    def test_full_h(self, single_edge):
        bb = build_bunkbed(single_edge, [1, 2])
        assert (bb.num_vertices, bb.num_layer_edges, len(bb.transversal_edges)) == (4, 2, 2)

    def test_path3(self):
        bb = build_bunkbed(path_graph(3), [2])
        assert (bb.num_vertices, bb.num_layer_edges) == (6, 4)
        assert bb.transversal_edges == ((2, 5),)

    def test_layer_indexing(self, star):
        bb = build_bunkbed(star, [])
        m = star.m
        for i, (a, b) in enumerate(star.edges):
            assert bb.layer_edges[i] == (a, b)
            assert bb.layer_edges[i + m] == (a + 4, b + 4)

    def test_h_out_of_range(self, single_edge):
        with pytest.raises(LabelOutOfRange):
            build_bunkbed(single_edge, [3])

    def test_transversal_set_sorted(self):
        assert TransversalSet.of([3, 1, 3]).members == (1, 3)

    def test_labels(self, star):
        bb = build_bunkbed(star, [])
        assert (bb.upper(3), bb.lower(3), bb.label(7), bb.mirror(7)) == (3, 7, "3-", 3)


class TestConnected:
    def test_reflexive(self, single_edge):
        bb = build_bunkbed(single_edge, [])
        assert connected(bb, EdgeConfiguration(0, 2), 3, 3)

    def test_top_only(self, single_edge):
        bb = build_bunkbed(single_edge, [])
        cfg = EdgeConfiguration.from_open(bb, [0])
        assert connected(bb, cfg, bb.upper(1), bb.upper(2))
        assert not connected(bb, cfg, bb.upper(1), bb.lower(2))

    def test_bottom_via_transversal(self, single_edge):
        bb = build_bunkbed(single_edge, [1])
        cfg = EdgeConfiguration.from_open(bb, [1])
        assert connected(bb, cfg, bb.upper(1), bb.lower(2))

    def test_transversals_always_open(self, star):
        bb = build_bunkbed(star, [2, 4])
        closed = EdgeConfiguration(0, bb.num_layer_edges)
        assert connected(bb, closed, 2, 6) and connected(bb, closed, 4, 8)
        assert not connected(bb, closed, 1, 5)

    def test_mask_size_checked(self, single_edge):
        bb = build_bunkbed(single_edge, [])
        with pytest.raises(InvalidParameters):
            connected(bb, EdgeConfiguration(0, 3), 1, 2)


class TestEdgeConfiguration:
    def test_hex_roundtrip(self):
        cfg = EdgeConfiguration(0b101101, 6)
        assert cfg.to_hex() == "2d"
        assert EdgeConfiguration.from_hex("2d", 6) == cfg

    def test_lsb_is_edge_zero(self):
        cfg = EdgeConfiguration.from_hex("1", 4)
        assert cfg.is_open(0) and not cfg.is_open(1)

    def test_too_wide(self):
        with pytest.raises(InvalidParameters):
            EdgeConfiguration(0b10000, 4)

    def test_mirror(self):
        assert EdgeConfiguration(0b0011, 4).mirrored() == EdgeConfiguration(0b1100, 4)


instances = st.tuples(st.integers(1, 6), st.integers(0, 2**32)).map(lambda t: random_tree(*t).graph)


@given(instances, st.data())
def test_connected_matches_bfs_and_symmetries(g, data):
    h = data.draw(st.sets(st.integers(1, g.n)))
    bb = build_bunkbed(g, h)
    size = bb.num_layer_edges
    mask = data.draw(st.integers(0, (1 << size) - 1))
    extra = data.draw(st.integers(0, (1 << size) - 1))
    a = data.draw(st.integers(1, 2 * g.n))
    b = data.draw(st.integers(1, 2 * g.n))
    cfg = EdgeConfiguration(mask, size)
    open_edges = [e for i, e in enumerate(bb.layer_edges) if mask >> i & 1] + list(bb.transversal_edges)
    result = connected(bb, cfg, a, b)
    assert result == bfs_reaches(2 * g.n, open_edges, a, b)
    # layer swap
    assert connected(bb, cfg.mirrored(), bb.mirror(a), bb.mirror(b)) == result
    # monotone in the open set
    if result:
        assert connected(bb, EdgeConfiguration(mask | extra, size), a, b)
