"""Bracket tensors, multilinear evaluation, and adjoint operators."""

import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nambucat import (BilinearForm, BracketTensor, HomNambuAlgebra, Matrix,
                      Vector, corpus, eval_bracket)
from nambucat.algebra import (adjoint_of_basis_tuple, adjoint_operator,
                              all_tuples, increasing_tuples, perm_sign)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=5)


def vec(d):
    return st.lists(rationals, min_size=d, max_size=d).map(
        lambda xs: Vector([F(x) for x in xs]))


def naive_eval(tensor, args):
    """Oracle: expand multilinearity coordinate by coordinate."""
    d = tensor.dim
    acc = Vector.zero(tensor.vdim if tensor.vdim else d)
    for idx in itertools.product(range(d), repeat=tensor.arity):
        c = F(1)
        for slot, i in enumerate(idx):
            c *= args[slot][i]
            if c == 0:
                break
        if c != 0:
            acc = acc + tensor.value(idx).scale(c)
    return acc


def test_perm_sign():
    assert perm_sign((0, 1, 2)) == 1
    assert perm_sign((1, 0, 2)) == -1
    assert perm_sign((2, 0, 1)) == 1


def test_tuple_iterators():
    assert len(list(all_tuples(3, 2))) == 9
    assert list(increasing_tuples(3, 2)) == [(0, 1), (0, 2), (1, 2)]


def test_skew_from_entries_expansion(s4):
    b = s4.algebra.bracket
    assert b.value((0, 1, 2)) == Vector.basis(4, 3)
    assert b.value((1, 0, 2)) == -Vector.basis(4, 3)
    assert b.value((0, 0, 2)).is_zero()


def test_skew_from_entries_inconsistent():
    items = {(0, 1): Vector.basis(2, 0), (1, 0): Vector.basis(2, 0)}
    with pytest.raises(ValueError):
        BracketTensor.skew_from_entries(2, 2, items)


def test_eval_bracket_example1(ex1):
    # the defining formula at (e1, e2, e2): B(e2,e2)a(e1) - B(e2,e1)a(e2) = e1
    v = eval_bracket(ex1.algebra, [Vector.basis(3, 0), Vector.basis(3, 1),
                                   Vector.basis(3, 1)])
    assert v == Vector.basis(3, 0)


def test_transform_matches_naive(ex1):
    a = ex1.algebra
    alpha = a.twist
    t = a.bracket.transform([alpha, None, alpha], out_map=alpha)
    for idx in all_tuples(3, 3):
        args = [alpha.col(idx[0]), Vector.basis(3, idx[1]), alpha.col(idx[2])]
        assert t.value(idx) == alpha.apply(a.bracket.eval(args))


def test_adjoint_operator(s4):
    a = s4.algebra
    L = adjoint_of_basis_tuple(a, (0, 1))
    assert L.col(2) == Vector.basis(4, 3)
    assert L.col(3) == -Vector.basis(4, 2)
    L2 = adjoint_operator(a, [Vector.basis(4, 0), Vector.basis(4, 1)])
    assert L == L2


def test_bilinear_form():
    g = Matrix.from_rows([[F(2), F(1)], [F(1), F(2)]])
    b = BilinearForm(2, g)
    assert b.apply(Vector.basis(2, 0), Vector.basis(2, 1)) == F(1)
    assert b.nondegenerate
    with pytest.raises(ValueError):
        BilinearForm(2, Matrix.from_rows([[F(0), F(1)], [F(2), F(0)]]))


def test_twist_property_requires_equal_twists(ex2):
    with pytest.raises(ValueError):
        ex2.algebra.twist


@settings(max_examples=25, deadline=None)
@given(vec(4), vec(4), vec(4))
def test_eval_is_multilinear_oracle(s4, x, y, z):
    b = s4.algebra.bracket
    assert b.eval([x, y, z]) == naive_eval(b, [x, y, z])


@settings(max_examples=25, deadline=None)
@given(vec(4), vec(4), vec(4), vec(4), rationals)
def test_eval_linearity_in_slot(s4, x, y, z, w, c):
    b = s4.algebra.bracket
    lhs = b.eval([x, y.scale(F(c)) + w, z])
    rhs = b.eval([x, y, z]).scale(F(c)) + b.eval([x, w, z])
    assert lhs == rhs
