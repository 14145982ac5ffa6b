"""Adjoint and coadjoint representations, and the form-induced intertwiner.

A representation is a skew multilinear assignment of an operator on the
target space to each (n-1)-tuple of algebra elements, together with an
endomorphism nu of the target space entering the defining identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .algebra import (BracketTensor, HomNambuAlgebra, QuadraticStructure,
                      adjoint_of_basis_tuple, all_tuples)
from .checks import CheckReport, Counterexample, check_representation
from .linalg import Matrix, Vector, rank


@dataclass(frozen=True)
class Representation:
    """Operator-valued tensor rho on (n-1)-tuples plus the endomorphism nu.

    ``rho`` stores, per basis index tuple, the flattened m x m operator matrix
    (row-major); it extends multilinearly like any structure-constant tensor.
    """

    source_dim: int
    arity: int
    target_dim: int
    rho: BracketTensor
    nu: Matrix

    def __post_init__(self):
        m = self.target_dim
        if self.rho.dim != self.source_dim or self.rho.arity != self.arity - 1:
            raise ValueError("rho tensor does not match source dim/arity")
        if self.rho.vdim != m * m:
            raise ValueError("rho values must be flattened m x m matrices")
        if self.nu.rows != m or self.nu.cols != m:
            raise ValueError("nu has wrong shape")

    def operator(self, idx: Tuple[int, ...]) -> Matrix:
        return Matrix(self.target_dim, self.target_dim, self.rho.value(idx).entries)


def adjoint_rep(a: HomNambuAlgebra) -> Representation:
    """rho(x) = adjoint operator of x, nu = last twist map."""
    n, d = a.arity, a.dim
    items = {}
    for t in all_tuples(d, n - 1):
        L = adjoint_of_basis_tuple(a, t)
        if not L.is_zero():
            items[t] = L.flatten()
    rho = BracketTensor(d, n - 1, items, vdim=d * d)
    nu = a.twists[n - 2] if n >= 2 else Matrix.identity(d)
    return Representation(d, n, d, rho, nu)


def coadjoint_rep(a: HomNambuAlgebra) -> Tuple[Representation, CheckReport]:
    """Negated-transpose action on the dual space.

    Returns the dual representation together with the report of the condition
    under which it actually is one (the dual-mode representation identity for
    the adjoint action); the two are packaged so callers cannot use the
    coadjoint without seeing the verdict.
    """
    n, d = a.arity, a.dim
    adj = adjoint_rep(a)
    items = {}
    for t, vec in adj.rho.dense_items():
        items[t] = (-Matrix(d, d, vec.entries).T).flatten()
    rho_star = BracketTensor(d, n - 1, items, vdim=d * d)
    nu_star = adj.nu.T
    rep = Representation(d, n, d, rho_star, nu_star)
    condition = check_representation(a, adj, mode="dual")
    return rep, condition


def rep_isomorphism_psi(q: QuadraticStructure) -> Tuple[Matrix, CheckReport]:
    """The form viewed as a map into the dual space, verified to intertwine the
    adjoint and coadjoint actions and the twist endomorphisms."""
    a = q.algebra
    n, d = a.arity, a.dim
    G = q.form.gram
    if rank(G) < d:
        raise ValueError("form is degenerate; no isomorphism")
    alpha_last = a.twists[n - 2]
    checked = 0
    if G @ alpha_last != alpha_last.T @ G:
        return G, CheckReport("rep_isomorphism", False, None, 0,
                              detail="psi does not intertwine nu with nu*")
    for x in all_tuples(d, n - 1):
        checked += 1
        L = adjoint_of_basis_tuple(a, x)
        lhs = G @ L
        rhs = (-L.T) @ G     # coadjoint operator composed with psi
        if lhs != rhs:
            return G, CheckReport("rep_isomorphism", False,
                                  Counterexample(x, lhs.flatten(), rhs.flatten()),
                                  checked)
    return G, CheckReport("rep_isomorphism", True, None, checked)
