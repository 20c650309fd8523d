import numpy as np
import pytest

import brute
from loccgraph.decomposition import (
    Decomposition,
    DecompositionTerm,
    chordal_decompose,
    feasibility_search,
    verify_decomposition,
)
from loccgraph.errors import InvalidCover, NotPSD, PatternViolation
from loccgraph.graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    is_clique,
    maximal_cliques,
    path_graph,
)


def _p3_psd() -> np.ndarray:
    # conforms to the path 1-2-3, strictly positive on its edges
    return np.array([
        [1.0, 0.5, 0.0],
        [0.5, 1.0, 0.5],
        [0.0, 0.5, 1.0],
    ])


def test_chordal_decompose_path():
    g = path_graph(3)
    m = _p3_psd()
    dec = chordal_decompose(m, g)
    rep = verify_decomposition(m, dec, host=g)
    assert rep.ok and rep.supports_ok
    for term in dec.terms:
        assert is_clique(g, term.support)


def test_chordal_decompose_rejects_pattern_leak():
    g = path_graph(3)
    m = _p3_psd()
    m[0, 2] = m[2, 0] = 0.3
    with pytest.raises(PatternViolation):
        chordal_decompose(m, g)


def test_chordal_decompose_rejects_non_psd():
    g = path_graph(3)
    m = _p3_psd()
    m[1, 1] = -0.5
    with pytest.raises(NotPSD):
        chordal_decompose(m, g)


def test_chordal_decompose_rejects_non_chordal_graph():
    g = cycle_graph(4)
    m = np.eye(4) + 0.3 * np.array([
        [0, 1, 1, 0],
        [1, 0, 0, 1],
        [1, 0, 0, 1],
        [0, 1, 1, 0],
    ])  # conforms to C_4 with edges 12,13,24,34
    c4 = Graph.from_edges(4, [(1, 2), (1, 3), (2, 4), (3, 4)])
    with pytest.raises(PatternViolation):
        chordal_decompose(m, c4)
    del g


def test_chordal_decompose_zero_rows():
    g = path_graph(3)
    m = np.zeros((3, 3))
    m[0, 0] = 1.0
    dec = chordal_decompose(m, g)
    assert verify_decomposition(m, dec, host=g).ok
    assert all(t.support == frozenset({1}) for t in dec.terms)


def test_step_residuals_tracked():
    g = complete_graph(4)
    rng = np.random.default_rng(0)
    m = brute.random_conforming_psd(g, rng)
    dec = chordal_decompose(m, g, track_steps=True)
    assert dec.step_min_eigs
    assert min(dec.step_min_eigs) >= -1e-8
    assert verify_decomposition(m, dec, host=g).ok


def test_verify_decomposition_detects_bad_support():
    g = path_graph(3)
    m = _p3_psd()
    dec = chordal_decompose(m, g)
    # declare a support that is not a clique of the host we verify against
    bad = Decomposition(
        dec.n,
        tuple(
            DecompositionTerm(frozenset({1, 3}), t.vector) for t in dec.terms
        ),
        dec.residual,
    )
    rep = verify_decomposition(m, bad, host=g)
    assert not rep.supports_ok


def test_feasibility_search_c4_splits():
    # identity plus C_4-patterned coupling is splittable over the C_4 edges
    c4 = Graph.from_edges(4, [(1, 2), (1, 3), (2, 4), (3, 4)])
    m = np.eye(4) + 0.5 * np.array([
        [0, 1, 1, 0],
        [1, 0, 0, 1],
        [1, 0, 0, 1],
        [0, 1, 1, 0],
    ])
    supports = [frozenset(e) for e in sorted(c4.edges)]
    result = feasibility_search(m, supports)
    assert result is not None and result.converged
    rep = verify_decomposition(m, result.decomposition, host=c4, rel_bound=1e-6)
    assert rep.ok and rep.supports_ok


def test_feasibility_search_rejects_uncovered_entries():
    m = np.eye(3) + 0.5 * (np.ones((3, 3)) - np.eye(3))
    # supports never put 1 and 3 together, but m[0, 2] is 0.5
    assert feasibility_search(m, [frozenset({1, 2}), frozenset({2, 3})]) is None


def test_feasibility_search_validates_cover():
    m = np.eye(3)
    with pytest.raises(InvalidCover):
        feasibility_search(m, [frozenset({1, 5})])  # out of range
    with pytest.raises(InvalidCover):
        feasibility_search(m, [])
    # uncovered vertex carrying weight: infeasible rather than invalid
    assert feasibility_search(m, [frozenset({1, 2})]) is None


def test_feasibility_infeasible_instance_returns_none():
    # rank-one all-ones matrix cannot split into edge-supported PSD parts:
    # any such split zeroes an off-diagonal entry that must stay 1
    m = np.ones((3, 3))
    supports = [frozenset({1, 2}), frozenset({2, 3}), frozenset({1, 3})]
    result = feasibility_search(m, supports, max_iter=4000)
    assert result is None


def test_random_chordal_roundtrips():
    rng = np.random.default_rng(42)
    for _ in range(30):
        n = int(rng.integers(3, 8))
        g = brute.random_chordal(n, rng)
        m = brute.random_conforming_psd(g, rng)
        dec = chordal_decompose(m, g, track_steps=True)
        rep = verify_decomposition(m, dec, host=g)
        assert rep.ok and rep.supports_ok
        scale = max(1.0, float(np.linalg.norm(m)))
        assert min(dec.step_min_eigs, default=0.0) >= -1e-8 * scale
        for term in dec.terms:
            assert is_clique(g, term.support)
        assert rep.residual <= 1e-8 * max(1.0, float(np.linalg.norm(m)))


def test_feasibility_over_maximal_cliques_random():
    rng = np.random.default_rng(11)
    for _ in range(10):
        g = brute.random_chordal(6, rng)
        m = brute.random_conforming_psd(g, rng)
        supports = [frozenset(c) for c in maximal_cliques(g)]
        result = feasibility_search(m, supports)
        assert result is not None
        rep = verify_decomposition(m, result.decomposition, host=g, rel_bound=1e-5)
        assert rep.ok and rep.supports_ok
