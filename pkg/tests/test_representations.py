"""Adjoint/coadjoint representations and the form-induced intertwiner."""

from fractions import Fraction as F

import pytest

from nambucat import (Matrix, QuadraticStructure, Vector, check_representation,
                      corpus)
from nambucat.representations import (Representation, adjoint_rep,
                                      coadjoint_rep, rep_isomorphism_psi)
from nambucat import fileio


def test_adjoint_values(s4):
    rep = adjoint_rep(s4.algebra)
    L = rep.operator((0, 1))    # action of the pair (e1, e2)
    assert L.apply(Vector.basis(4, 2)) == Vector.basis(4, 3)
    assert L.apply(Vector.basis(4, 3)) == -Vector.basis(4, 2)
    assert L.apply(Vector.basis(4, 0)).is_zero()


def test_adjoint_is_representation(s4, heis, sl2, ex1, zero3):
    for a in (s4.algebra, heis, sl2.algebra, ex1.algebra, zero3):
        rep = adjoint_rep(a)
        assert check_representation(a, rep, mode="primal").passed


def test_adjoint_skew_in_arguments(s4):
    rep = adjoint_rep(s4.algebra)
    assert rep.rho.value((1, 0)) == -rep.rho.value((0, 1))
    assert rep.rho.value((2, 2)).is_zero()


def test_coadjoint(s4, sl2):
    for a in (s4.algebra, sl2.algebra):
        rep, condition = coadjoint_rep(a)
        assert condition.passed
        assert check_representation(a, rep, mode="primal").passed


def test_coadjoint_operators_negated_transpose(s4):
    adj = adjoint_rep(s4.algebra)
    co, _ = coadjoint_rep(s4.algebra)
    assert co.operator((0, 1)) == -adj.operator((0, 1)).T
    assert co.nu == adj.nu.T


def test_psi_intertwines_quadratic(s4, sl2):
    for q in (s4, sl2):
        psi, report = rep_isomorphism_psi(q)
        assert report.passed
        assert psi == q.form.gram


def test_psi_honest_failure(ex1):
    """This quadratic structure needs its twist in the form identity, so the
    untwisted intertwining condition genuinely fails."""
    psi, report = rep_isomorphism_psi(ex1)
    assert not report.passed


def test_psi_rejects_degenerate(ex2):
    with pytest.raises(ValueError):
        rep_isomorphism_psi(ex2)


def test_representation_shape_validation():
    from nambucat import BracketTensor
    with pytest.raises(ValueError):
        Representation(3, 3, 3, BracketTensor.zero(3, 2, vdim=9),
                       Matrix.identity(2))
    with pytest.raises(ValueError):
        Representation(3, 3, 3, BracketTensor.zero(3, 2, vdim=4),
                       Matrix.identity(3))


def test_non_representation_detected(s4):
    """Perturbing one operator breaks the identity."""
    rep = adjoint_rep(s4.algebra)
    items = dict(rep.rho.dense_items())
    items[(0, 1)] = items[(0, 1)].scale(F(2))
    from nambucat import BracketTensor
    bad = Representation(4, 3, 4,
                         BracketTensor(4, 2, items, vdim=16), rep.nu)
    report = check_representation(s4.algebra, bad, mode="primal")
    assert not report.passed
    assert report.counterexample is not None


def test_representation_serialization_roundtrip(s4, tmp_path):
    rep = adjoint_rep(s4.algebra)
    doc = fileio.representation_to_document(rep)
    back = fileio.representation_from_document(doc)
    assert back.rho == rep.rho
    assert back.nu == rep.nu
    assert back.source_dim == rep.source_dim
    assert back.target_dim == rep.target_dim
    assert fileio.representation_to_document(back) == doc
