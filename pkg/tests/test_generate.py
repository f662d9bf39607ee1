import numpy as np
import pytest

from motifcut.graph.generate import from_networkx, gen_graph, to_networkx
from motifcut.graph.weighted import num_pairs


def test_same_seed_same_graph():
    a = gen_graph("gnp", 15, p=0.3, seed=42)
    b = gen_graph("gnp", 15, p=0.3, seed=42)
    np.testing.assert_array_equal(a.w, b.w)
    assert set(np.unique(a.w)) <= {0.0, 1.0}


def test_complete_graph_has_all_pairs():
    g = gen_graph("complete", 6)
    assert g.w.size == num_pairs(6)
    assert np.all(g.w == 1.0)


def test_regular_graph_degrees():
    g = gen_graph("regular", 12, d=4, seed=1)
    assert np.all(g.matrix().sum(axis=1) == 4.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(model="gnp", n=5, p=1.5),
        dict(model="gnp", n=5),
        dict(model="regular", n=5, d=3),
        dict(model="regular", n=5, d=7),
        dict(model="lattice", n=5),
        dict(model="complete", n=0),
    ],
)
def test_invalid_generator_arguments(kwargs):
    with pytest.raises(ValueError):
        gen_graph(**kwargs)


def test_networkx_round_trip_keeps_weights():
    g = gen_graph("gnp", 9, p=0.5, seed=7).scaled(1.5)
    back = from_networkx(to_networkx(g))
    np.testing.assert_array_equal(back.w, g.w)


def test_gnp_extreme_probabilities():
    assert np.all(gen_graph("gnp", 10, p=0.0, seed=3).w == 0.0)
    full = gen_graph("gnp", 10, p=1.0, seed=3)
    np.testing.assert_array_equal(full.w, gen_graph("complete", 10).w)


def test_gnp_edge_count_matches_binomial_mean():
    pairs = num_pairs(200)
    counts = [gen_graph("gnp", 200, p=0.5, seed=seed).w.sum() for seed in range(50)]
    # mean of 50 Binomial(C(200,2), 1/2) counts
    sigma = np.sqrt(pairs * 0.25 / 50)
    assert abs(np.mean(counts) - pairs / 2) <= 3.0 * sigma
