from pathlib import Path
import io

import numpy as np
import pytest

from motifcut.errors import GraphFormatError
from motifcut.graph.generate import gen_graph
from motifcut.graph.io import parse_graph, write_graph
from motifcut.graph.motif import (
    derivative_contractions,
    local_sensitivity_l3,
    total_triangle_weight,
    triangle_adjacency,
    triangle_cut_bipartition,
    triangle_cut_general,
    triangle_derivative,
    u_quantities,
    weighted_adjacency,
)
from motifcut.graph.weighted import CutSpec, WeightedGraph, num_pairs, pair_index, pair_of

DATA_DIR = Path(__file__).parent / "data"


def off_diagonal(A: np.ndarray) -> np.ndarray:
    return A[~np.eye(A.shape[0], dtype=bool)]


def test_pair_index_is_lexicographic_and_invertible():
    n = 5
    expected = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for idx, (i, j) in enumerate(expected):
        assert pair_index(i, j, n) == idx
        assert pair_index(j, i, n) == idx
        assert pair_of(idx, n) == (i, j)
    with pytest.raises(ValueError):
        pair_index(2, 2, n)


def test_weighted_graph_rejects_bad_weights():
    with pytest.raises(ValueError):
        WeightedGraph(n=3, w=np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        WeightedGraph(n=3, w=np.array([1.0, -1.0, 0.0]))
    g = WeightedGraph(n=3, w=np.array([1.0, -1.0, 0.0]), signed=True)
    assert g.clipped().w.tolist() == [1.0, 0.0, 0.0]


def test_triangle_adjacency_examples():
    k3 = parse_graph(DATA_DIR / "k3.txt")
    T = triangle_adjacency(k3).entries
    assert np.all(off_diagonal(T) == 1.0)
    assert np.all(np.diag(T) == 0.0)

    path = WeightedGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)])
    assert np.all(triangle_adjacency(path).entries == 0.0)

    weighted = parse_graph(DATA_DIR / "k3_weighted.txt")
    assert np.all(off_diagonal(triangle_adjacency(weighted).entries) == 30.0)


def test_triangle_adjacency_scales_cubically():
    g = gen_graph("gnp", 7, p=0.6, seed=3)
    base = triangle_adjacency(g).entries
    np.testing.assert_allclose(triangle_adjacency(g.scaled(2.5)).entries, 2.5 ** 3 * base)


def test_derivative_and_sensitivity_scale_quadratically():
    rng = np.random.default_rng(12)
    n = 7
    g = WeightedGraph(n=n, w=rng.uniform(0.2, 2.0, num_pairs(n)))
    for c in (0.5, 3.0):
        scaled = g.scaled(c)
        assert local_sensitivity_l3(scaled) == pytest.approx(c ** 2 * local_sensitivity_l3(g), rel=1e-12)
        for e in [(0, 1), (2, 5), (4, 6)]:
            np.testing.assert_allclose(
                triangle_derivative(scaled, e).entries,
                c ** 2 * triangle_derivative(g, e).entries,
                rtol=1e-12,
                atol=1e-12,
            )


def test_bipartition_cut_examples():
    k3 = parse_graph(DATA_DIR / "k3.txt")
    assert triangle_cut_bipartition(k3, {0}) == pytest.approx(1.0)

    weighted = parse_graph(DATA_DIR / "k3_weighted.txt")
    assert triangle_cut_bipartition(weighted, {0}) == pytest.approx(30.0)

    star = WeightedGraph.from_edges(5, [(0, j, 1.0) for j in range(1, 5)])
    for S in ({0}, {1, 2}, {0, 3, 4}):
        assert triangle_cut_bipartition(star, S) == 0.0

    with pytest.raises(ValueError):
        triangle_cut_bipartition(k3, set())
    with pytest.raises(ValueError):
        triangle_cut_bipartition(k3, {0, 1, 2})


def test_general_cut_examples():
    k4 = parse_graph(DATA_DIR / "k4.txt")
    assert triangle_cut_general(k4, CutSpec(frozenset({0}), frozenset({1}))) == pytest.approx(2.0)

    empty = WeightedGraph.empty(6)
    assert triangle_cut_general(empty, CutSpec(frozenset({0, 1}), frozenset({4}))) == 0.0

    with pytest.raises(ValueError):
        triangle_cut_general(k4, CutSpec(frozenset({0, 1}), frozenset({1, 2})))


def test_general_cut_agrees_with_bipartition_formula():
    rng = np.random.default_rng(11)
    for n in range(3, 8):
        w = rng.uniform(0.0, 2.0, num_pairs(n)) * (rng.random(num_pairs(n)) < 0.7)
        g = WeightedGraph(n=n, w=w)
        for _ in range(5):
            S = set(np.flatnonzero(rng.random(n) < 0.5).tolist()) or {0}
            if len(S) == n:
                S.discard(n - 1)
            fast = triangle_cut_bipartition(g, S)
            slow = triangle_cut_general(g, CutSpec.bipartition(S, n))
            assert fast == pytest.approx(slow, rel=1e-12, abs=1e-12)


def test_total_triangle_weight():
    k4 = parse_graph(DATA_DIR / "k4.txt")
    assert total_triangle_weight(k4) == pytest.approx(4.0)
    weighted = parse_graph(DATA_DIR / "k3_weighted.txt")
    assert total_triangle_weight(weighted) == pytest.approx(30.0)


def test_derivative_examples():
    k3 = parse_graph(DATA_DIR / "k3.txt")
    D = triangle_derivative(k3, (0, 1)).entries
    assert np.all(off_diagonal(D) == 1.0)
    assert np.all(np.diag(D) == 0.0)

    weighted = parse_graph(DATA_DIR / "k3_weighted.txt")
    D = triangle_derivative(weighted, (1, 0)).entries
    np.testing.assert_array_equal(D, D.T)
    assert D[0, 1] == 15.0
    assert D[0, 2] == 15.0
    assert D[1, 2] == 15.0

    path = WeightedGraph.from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)])
    assert np.all(triangle_derivative(path, (0, 1)).entries == 0.0)


def test_derivative_matches_finite_differences():
    rng = np.random.default_rng(5)
    n = 5
    w = rng.uniform(0.5, 1.5, num_pairs(n))
    h = 1e-3
    for e in [(0, 1), (1, 3), (2, 4)]:
        idx = pair_index(*e, n)
        up, down = w.copy(), w.copy()
        up[idx] += h
        down[idx] -= h
        fd = (triangle_adjacency(up).entries - triangle_adjacency(down).entries) / (2.0 * h)
        np.testing.assert_allclose(triangle_derivative(w, e).entries, fd, rtol=1e-8, atol=1e-8)


def test_derivative_contractions_match_explicit_matrices():
    rng = np.random.default_rng(8)
    n = 6
    w = rng.uniform(0.0, 1.0, num_pairs(n))
    Y = rng.standard_normal((n, n))
    fast = derivative_contractions(w, Y)
    slow = [
        np.sum(triangle_derivative(w, (i, j)).entries * Y)
        for i in range(n) for j in range(i + 1, n)
    ]
    np.testing.assert_allclose(fast, slow, rtol=1e-10, atol=1e-12)

    batch = rng.standard_normal((3, n, n))
    stacked = derivative_contractions(w, batch)
    assert stacked.shape == (3, num_pairs(n))
    np.testing.assert_allclose(stacked[1], derivative_contractions(w, batch[1]))


def test_local_sensitivity_examples():
    assert local_sensitivity_l3(WeightedGraph.empty(5)) == 0.0
    assert local_sensitivity_l3(parse_graph(DATA_DIR / "k4.txt")) == 2.0
    for seed in range(3):
        g = gen_graph("regular", 10, d=3, seed=seed)
        assert local_sensitivity_l3(g) <= 3.0


def test_u_quantities_examples():
    assert u_quantities(np.zeros(num_pairs(4))) == (0.0, 0.0)
    assert u_quantities(parse_graph(DATA_DIR / "k3.txt")) == (3.0, 2.0)
    assert u_quantities(parse_graph(DATA_DIR / "k4.txt")) == (6.0, 4.0)


def test_parse_graph_reads_header_and_pairs():
    g = parse_graph(DATA_DIR / "k3_weighted.txt")
    assert g.n == 3
    assert g.weight(0, 1) == 2.0
    assert g.weight(2, 0) == 3.0
    assert g.total_weight == 10.0


@pytest.mark.parametrize(
    "name, line",
    [("duplicate_pair.txt", 4), ("negative_weight.txt", 3), ("missing_header.txt", 1)],
)
def test_parse_graph_errors_carry_line_numbers(name, line):
    with pytest.raises(GraphFormatError) as info:
        parse_graph(DATA_DIR / name)
    assert info.value.line == line


def test_parse_graph_rejects_bad_pairs(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("n=3\n1,0,1\n")
    with pytest.raises(GraphFormatError):
        parse_graph(bad)
    bad.write_text("n=3\n0,3,1\n")
    with pytest.raises(GraphFormatError):
        parse_graph(bad)
    bad.write_text("n=3\n0,1,abc\n")
    with pytest.raises(GraphFormatError):
        parse_graph(bad)


def test_negative_weights_allowed_on_request():
    g = parse_graph(DATA_DIR / "negative_weight.txt", allow_negative=True)
    assert g.signed
    assert g.weight(0, 2) == -0.5


def test_write_then_parse_reproduces_weights(tmp_path):
    rng = np.random.default_rng(2)
    w = rng.uniform(0.0, 3.0, num_pairs(6)) * (rng.random(num_pairs(6)) < 0.5)
    g = WeightedGraph(n=6, w=w)
    out = tmp_path / "g.txt"
    write_graph(g, out)
    back = parse_graph(out)
    assert back.n == 6
    np.testing.assert_array_equal(back.w, g.w)

    buf = io.StringIO()
    write_graph(WeightedGraph.empty(4), None, fh=buf)
    assert buf.getvalue() == "n=4\n"


def test_weighted_adjacency_accepts_raw_vectors():
    g = parse_graph(DATA_DIR / "k3_weighted.txt")
    A = weighted_adjacency(g.w)
    np.testing.assert_array_equal(A, g.matrix())
    assert A[1, 2] == 5.0
    with pytest.raises(ValueError):
        weighted_adjacency(np.ones(4))
