"""Matrix-model geometry against closed forms.

sl(2,R) oracles: ||H||_B = sqrt(8), d(o, exp(tH).o) = |t| sqrt(8), and the
pullback of the metric along P = rH in the direction E+F is
(sinh(2r)/(2r))^2 * B(E+F, E+F) (rank-one Jacobi field growth; ad_H^2 acts
as 4 on span(E+F)).
"""

from __future__ import annotations

import math
import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from transvector.catalog import build_pair
from transvector.errors import ConfigError, NumericalBreakdown
from transvector.geometry import (CurvatureReport, GridSpec, ImmersionSpec,
                                  SpacePoint, cartan_project, distance,
                                  distance_law_check, export_point_cloud,
                                  immersion_point, mean_curvature_estimate,
                                  mean_curvature_report, metric_matrix,
                                  normal_pairing_residual, p_coordinates,
                                  pullback_metric, realize, transvection)
from transvector.liealg import MODE_FLOAT
from transvector.subspaces import Subspace


def _sl2_spec(sl2r, **kw):
    s = Subspace(sl2r, [sl2r.basis_vector(0).astype(MODE_FLOAT)])
    x = (sl2r.basis_vector(1) + sl2r.basis_vector(2)).astype(MODE_FLOAT)
    kw.setdefault("allow_codimension_one", True)
    return ImmersionSpec(sl2r, s, x, **kw)


coords3 = st.lists(st.floats(-1.2, 1.2), min_size=2, max_size=2)


@given(coords3)
@settings(max_examples=40, deadline=None)
def test_log_exp_round_trip(sl2r, c):
    p = np.asarray(c, dtype=float)
    q = SpacePoint.from_matrix(sl2r, SpacePoint(sl2r, p).representative)
    assert np.max(np.abs(q.coords - p)) <= 1e-12 * (1.0 + np.max(np.abs(p)))


def test_rotation_part_projects_to_base_point(sl2r):
    k = realize(sl2r, (sl2r.basis_vector(1) - sl2r.basis_vector(2)).astype(
        MODE_FLOAT))
    q = SpacePoint.from_matrix(sl2r, expm(0.7 * k))
    assert np.max(np.abs(q.coords)) <= 1e-12


def test_distance_along_the_flat_is_linear(sl2r):
    o = SpacePoint.base(sl2r)
    h = sl2r.basis_vector(0).astype(MODE_FLOAT)
    for t in (0.25, 0.5, 1.0, 2.0):
        q = SpacePoint.from_p_vector(sl2r, h.scale(t))
        assert distance(sl2r, o, q) == pytest.approx(t * math.sqrt(8.0),
                                                     rel=1e-12)


def test_metric_at_the_origin_is_the_killing_gram(sl2r):
    g0 = metric_matrix(sl2r, np.zeros(2))
    # basis of p is (H, E+F)-aligned; B(H,H) = 8, B(E+F,E+F) = 8
    b = np.array([[float(sl2r.killing_form(sl2r.vector(u), sl2r.vector(v)))
                   for v in sl2r.p_basis] for u in sl2r.p_basis])
    assert np.allclose(g0, b, atol=1e-14)


def test_pullback_matches_sinh_closed_form(sl2r):
    h = sl2r.basis_vector(0).astype(MODE_FLOAT)
    epf = (sl2r.basis_vector(1) + sl2r.basis_vector(2)).astype(MODE_FLOAT)
    bee = 8.0
    for r in (0.3, 0.75, 1.5):
        got = pullback_metric(sl2r, h.scale(r), epf, epf)
        want = (math.sinh(2 * r) / (2 * r)) ** 2 * bee
        assert got == pytest.approx(want, rel=1e-12)
        # the flat direction itself is unstretched
        assert pullback_metric(sl2r, h.scale(r), h, h) == pytest.approx(
            8.0, rel=1e-12)


def test_group_elements_off_the_model_are_rejected(sl2r):
    g = np.array([[1.0, 0.3], [0.0, 2.0]])  # det = 2: not in the group
    with pytest.raises(NumericalBreakdown):
        cartan_project(sl2r, g)


def test_immersion_spec_invariants(sl2r, su21_real_form):
    s = Subspace(sl2r, [sl2r.basis_vector(0).astype(MODE_FLOAT)])
    x = (sl2r.basis_vector(1) + sl2r.basis_vector(2)).astype(MODE_FLOAT)
    with pytest.raises(ConfigError):   # codim 1 needs the explicit opt-in
        ImmersionSpec(sl2r, s, x)
    with pytest.raises(ConfigError):   # X not B-orthogonal to s
        ImmersionSpec(sl2r, s, s.basis[0], allow_codimension_one=True)
    with pytest.raises(ConfigError):   # h must be positive
        _sl2_spec(sl2r, h=0.0)
    entry = su21_real_form
    bad_s = Subspace(entry.algebra, [
        entry.algebra.from_labels({"P1": 1}, MODE_FLOAT),
        entry.algebra.from_labels({"Q2": 1}, MODE_FLOAT)])
    ok, _ = bad_s.is_lie_triple_system()
    if not ok:
        with pytest.raises(ConfigError):
            ImmersionSpec(entry.algebra, bad_s,
                          entry.algebra.from_labels({"Q1": 1}, MODE_FLOAT))


def test_so31_geodesic_plane_is_the_degenerate_input():
    entry = build_pair("so31", "geodesic-plane")
    s = Subspace(entry.algebra,
                 [v.astype(MODE_FLOAT) for v in entry.s.basis])
    with pytest.raises(ConfigError):
        ImmersionSpec(entry.algebra, s,
                      entry.x_default.astype(MODE_FLOAT))


def test_immersion_point_respects_the_grid(sl2r):
    spec = _sl2_spec(sl2r)
    q = immersion_point(spec, 0.5, np.array([0.25]))
    assert isinstance(q, SpacePoint)
    with pytest.raises(ConfigError):
        immersion_point(spec, 2.0, np.array([0.0]))        # t out of range
    with pytest.raises(ConfigError):
        immersion_point(spec, 0.0, np.array([0.0, 0.0]))   # wrong y length


def test_transvections_are_isometries(sl2r):
    spec = _sl2_spec(sl2r)
    q1 = immersion_point(spec, 0.0, np.array([0.5]))
    q2 = immersion_point(spec, 0.25, np.array([-0.5]))
    d0 = distance(sl2r, q1, q2)
    for t in (-1.0, 0.5, 2.0):
        dt = distance(sl2r, transvection(spec, t, q1),
                      transvection(spec, t, q2))
        assert abs(dt - d0) <= 1e-9 * (1.0 + d0)


def _su21_spec(entry, **kw):
    a = entry.algebra
    s = Subspace(a, [v.astype(MODE_FLOAT) for v in entry.s.basis])
    kw.setdefault("grid", GridSpec(t_steps=3, y_steps=3))
    return ImmersionSpec(a, s, entry.x_default.astype(MODE_FLOAT), **kw)


def test_su21_extension_is_minimal_on_a_coarse_grid(su21_real_form):
    spec = _su21_spec(su21_real_form)
    rep = mean_curvature_report(spec, tolerance=1e-4)
    assert rep.passed
    assert rep.max_norm <= 1e-6   # measured headroom is ~1e-7
    assert len(rep.entries) == 27


def test_baseline_slice_is_minimal_too(su21_real_form):
    spec = _su21_spec(su21_real_form)
    _, norm = mean_curvature_estimate(spec, 0.0, np.array([0.3, -0.2]),
                                      baseline=True)
    assert norm <= 1e-5


def test_curvature_estimate_refuses_codimension_one(sl2r):
    spec = _sl2_spec(sl2r)
    with pytest.raises(ConfigError):
        mean_curvature_estimate(spec, 0.1, np.array([0.2]))
    # but the frozen-t baseline is well-posed: s itself is totally geodesic
    _, norm = mean_curvature_estimate(spec, 0.1, np.array([0.2]),
                                      baseline=True)
    assert norm <= 1e-6


def test_normal_direction_stays_normal_along_s(su21_real_form):
    spec = _su21_spec(su21_real_form)
    assert normal_pairing_residual(spec, np.array([0.4, -0.3])) <= 1e-9


def test_distance_law_on_the_small_grid(su21_real_form):
    spec = _su21_spec(su21_real_form)
    law = distance_law_check(
        spec, [-1.0, -0.5, -0.25, 0.25, 0.5, 1.0],
        [np.array([0.0, 0.0]), np.array([0.5, -0.5]), np.array([-0.5, 0.5])])
    assert law["passed"], law
    assert law["geodesic"]["worst_residual"] <= 1e-9
    assert law["separation"]["worst_violation"] == 0.0
    assert law["global_min"]["holds"]


def test_export_writes_both_formats(tmp_path, su21_real_form):
    spec = _su21_spec(su21_real_form)
    rep = mean_curvature_report(spec, tolerance=1e-4)
    csv_path = os.fspath(tmp_path / "cloud.csv")
    ply_path = os.fspath(tmp_path / "cloud.ply")
    written = export_point_cloud(rep, csv_path=csv_path, ply_path=ply_path)
    assert set(written) == {"csv", "ply"}
    lines = open(csv_path).read().splitlines()
    assert lines[0] == "t,y1,y2,p1,p2,p3,p4,mean_h"
    assert len(lines) == 28
    ply = open(ply_path).read().splitlines()
    assert ply[0] == "ply" and "element vertex 27" in ply[2]
    assert len(ply) == 7 + 27


class _NodeCount(list):
    def __len__(self):
        return 10 ** 7 + 1


def test_oversized_export_is_refused_before_touching_files(tmp_path):
    rep = CurvatureReport(entries=_NodeCount(), max_norm=0.0, h=1e-3,
                          baseline=False, discretization_error_estimate=0.0,
                          tolerance=1e-4)
    target = tmp_path / "refused.csv"
    with pytest.raises(ConfigError):
        export_point_cloud(rep, csv_path=os.fspath(target))
    assert not target.exists()


def test_grid_spec_rejects_malformed_ranges():
    with pytest.raises(ConfigError):
        GridSpec(t_steps=0)
    with pytest.raises(ConfigError):
        GridSpec(t_range=(1.0, -1.0))
