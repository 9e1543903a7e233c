"""Subspace predicates: Lie triple systems, reflectivity, totally real."""

from __future__ import annotations

import pytest

from transvector.catalog import complex_structure_matrix
from transvector.liealg import MODE_EXACT
from transvector.subspaces import Subspace


def test_span_membership_and_coordinates(sl2r):
    H, E, F = (sl2r.basis_vector(i) for i in range(3))
    s = Subspace(sl2r, [E + F])
    member, res = s.contains((E + F).scale(3))
    assert member and res == 0
    member, res = s.contains(E)
    assert not member and res > 0
    assert s.coordinates((E + F).scale(-2)) == (-2,)


def test_empty_subspace_is_a_valid_triple_system(sl2r):
    s = Subspace(sl2r, [], MODE_EXACT)
    assert s.dim == 0
    ok, _ = s.is_lie_triple_system()
    assert ok
    member, res = s.contains(sl2r.zero())
    assert member and res == 0
    member, _ = s.contains(sl2r.basis_vector(0))
    assert not member


def test_span_of_h_is_reflective_in_sl2r(sl2r):
    H = sl2r.basis_vector(0)
    s = Subspace(sl2r, [H])
    ok, report = s.is_lie_triple_system()
    assert ok
    ok, report = s.is_reflective()
    assert ok, report


def test_k_vector_is_rejected_from_p_subspace_predicates(sl2r):
    E, F = sl2r.basis_vector(1), sl2r.basis_vector(2)
    s = Subspace(sl2r, [E - F])  # lies in k, not p
    with pytest.raises(ValueError):
        s.orthocomplement_in_p()


def test_orthocomplement_in_p_is_b_orthogonal(su21_real_form):
    entry = su21_real_form
    comp = entry.s.orthocomplement_in_p()
    a = entry.algebra
    assert comp.dim == len(a.p_basis) - entry.s.dim
    for u in entry.s.basis:
        for v in comp.basis:
            assert a.killing_form(u, v) == 0


def test_real_form_is_totally_real_and_hyperplane_is_not(
        su21_real_form, su21_complex_hyperplane):
    jm = complex_structure_matrix(su21_real_form.algebra)
    assert su21_real_form.s.is_totally_real(jm) is True
    assert su21_complex_hyperplane.s.is_totally_real(jm) is False


def test_complex_structure_check_rejects_non_square_roots(su21):
    # passing theta (squares to +1 on p, not -1) must be refused
    with pytest.raises(ValueError):
        Subspace(su21, [su21.p_basis[0]]).is_totally_real(su21.theta)


def test_non_triple_system_reports_a_witness(sl3r):
    # pairs of off-diagonal symmetric directions close (rank-one triples),
    # but all three together force the diagonal: [[S13,S23],S12] = 2*H1
    s = Subspace(sl3r, [sl3r.from_labels({lab: 1})
                        for lab in ("S12", "S13", "S23")])
    ok, report = s.is_lie_triple_system()
    assert not ok
    assert report  # witness triple with the escaping bracket
