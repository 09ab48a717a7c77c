import math

import pytest

import c3bound


def test_headline_bound():
    rep = c3bound.bound(2.468155)
    assert 0.9999 < rep.f_value < 0.99999995
    assert rep.f_value == math.exp(rep.log_f)
    assert rep.x_max == 60


def test_solver_roundtrip():
    params = c3bound.ModelParams(2.45)
    sol = c3bound.solve_system(params)
    assert sol.residual_norm < 1e-12
    e0, e1 = c3bound.system_residual(sol.phi.phi0, sol.phi.phi1, params)
    assert max(abs(e0), abs(e1)) < 1e-12
    assert 0.26 < sol.phi.phi0 < sol.phi.phi1 < sol.phi.phi2 < 0.4


def test_schemes_agree():
    params = c3bound.ModelParams(2.468155)
    a = c3bound.solve_system(params, scheme="nested")
    b = c3bound.solve_system(params, scheme="spiral")
    assert abs(a.phi.phi0 - b.phi.phi0) < 1e-9
    assert abs(a.phi.phi2 - b.phi.phi2) < 1e-9


def test_threshold_coarse():
    res = c3bound.threshold_search(60, 1e-2)
    assert res.bracket_lo <= res.c_star <= res.bracket_hi
    assert 2.40 < res.c_star < 2.48
    assert c3bound.bound(res.bracket_lo).f_value >= 1.0
    assert c3bound.bound(res.bracket_hi).f_value < 1.0


def test_poisson_profile():
    params = c3bound.ModelParams(2.468155)
    prof = c3bound.build_profile(params)
    assert prof.mean_degree == 2 * 2.468155
    assert len(prof.weights) == 61
    assert abs(sum(prof.weights) - prof.u_trunc) < 1e-15
    assert prof.u_trunc > 1 - 1e-12


def test_graph_counts():
    triangle = c3bound.MultiGraph(3, [(0, 1), (1, 2), (2, 0)])
    assert c3bound.count_proper(triangle) == 6
    assert c3bound.count_rigid(triangle) == 6
    edge = c3bound.MultiGraph(2, [(0, 1)])
    assert c3bound.count_proper(edge) == 6
    assert c3bound.count_rigid(edge) == 2


def test_sampling_deterministic():
    a = c3bound.sample_graph(50, 120, 7)
    b = c3bound.sample_graph(50, 120, 7)
    assert a.edges == b.edges
    assert sum(a.degrees()) == 240
    assert c3bound.sample_graph(50, 120, 8).edges != a.edges


def test_repair_produces_rigid():
    g = c3bound.MultiGraph(2, [(0, 1)])
    fixed = c3bound.repair_to_rigid(g, [0, 1])
    assert c3bound.is_rigid(g, fixed)
    assert c3bound.is_proper(g, fixed)


def test_monte_carlo():
    params = c3bound.ModelParams(1.25, x_max=8, epsilon=1.5)
    r = c3bound.mc_first_moment(4, 5, params, 2000, 1)
    assert r.samples == 2000
    assert r.subspace_fraction == 1.0
    assert r.estimate > 0
    again = c3bound.mc_first_moment(4, 5, params, 2000, 1)
    assert again.estimate == r.estimate


def test_subspace_membership():
    params = c3bound.ModelParams(2.468155, x_max=8, epsilon=0.05)
    hits = sum(
        c3bound.in_subspace(c3bound.sample_graph(2000, 4936, seed), params)
        for seed in range(10)
    )
    assert hits >= 8


def test_error_mapping():
    with pytest.raises(ValueError):
        c3bound.ModelParams(-1.0)
    with pytest.raises(ValueError):
        c3bound.count_proper(c3bound.MultiGraph(25, []))
    with pytest.raises(ValueError):
        c3bound.type_normalizer(3, c3bound.SpreadVector(0.5, 0.3, 0.3))
    with pytest.raises(RuntimeError):
        c3bound.solve_system(c3bound.ModelParams(2.45), tol_residual=1e-30)
