"""Centroids, derivations, centers, and the algebras built from them.

Spaces of endomorphisms are computed as nullspaces of exactly-assembled
linear systems over the rationals; membership of a single candidate is
checked directly against the defining equations instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (BracketTensor, HomAssocNAry, HomLeibnizAlgebra,
                      HomNambuAlgebra, all_tuples)
from .checks import CheckReport, Counterexample, check_hom_leibniz, check_skew_symmetry
from .linalg import Matrix, Vector, in_span, nullspace


@dataclass(frozen=True)
class SubspaceBasis:
    """A canonical basis of a rational subspace of d-by-d matrices (kind
    "matrix") or of the algebra itself (kind "vector")."""

    kind: str
    ambient_dim: int
    basis: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, elt) -> bool:
        flats = [b.flatten() if self.kind == "matrix" else b for b in self.basis]
        flat = elt.flatten() if self.kind == "matrix" else elt
        return in_span(list(flats), flat) is not None


def _twist_power(a, k: int) -> Matrix:
    """alpha^k with the conventions alpha^0 = id and alpha^(-1) = 0."""
    if k == -1:
        return Matrix.zero(a.dim, a.dim)
    if k == 0:
        return Matrix.identity(a.dim)
    return a.twist.power(k)


def _matrix_nullspace_basis(rows: List[List[Fraction]], d: int) -> SubspaceBasis:
    if rows:
        sols = nullspace(Matrix.from_rows(rows))
    else:
        sols = [Vector.basis(d * d, i) for i in range(d * d)]
    mats = tuple(Matrix.from_rows([[v[u * d + s] for s in range(d)]
                                   for u in range(d)]) for v in sols)
    return SubspaceBasis("matrix", d, mats)


def compute_centroid(a: HomNambuAlgebra, k: int) -> SubspaceBasis:
    """Maps theta with theta([x_1..x_n]) = [theta x_1, alpha^k x_2, ...,
    alpha^k x_n], as a canonical matrix basis."""
    d, n = a.dim, a.arity
    pw = _twist_power(a, k)
    pattern = a.bracket.transform([None] + [pw] * (n - 1))
    rows: List[List[Fraction]] = []
    seen = set()
    for t in all_tuples(d, n):
        cv = a.bracket.value(t)
        for r in range(d):
            row = [Fraction(0)] * (d * d)
            for s in range(d):
                row[r * d + s] += cv[s]
            for j in range(d):
                row[j * d + t[0]] -= pattern.value((j,) + t[1:])[r]
            key = tuple(row)
            if any(row) and key not in seen:
                seen.add(key)
                rows.append(row)
    return _matrix_nullspace_basis(rows, d)


def centroid_membership(a: HomNambuAlgebra, theta: Matrix, k: int) -> CheckReport:
    """Direct check of the centroid equations for one candidate map."""
    d, n = a.dim, a.arity
    pw = _twist_power(a, k)
    pattern = a.bracket.transform([theta] + [pw] * (n - 1))
    count = 0
    for t in all_tuples(d, n):
        count += 1
        left = theta.apply(a.bracket.value(t))
        right = pattern.value(t)
        if left != right:
            return CheckReport("centroid_membership", False,
                               Counterexample(t, left, right), count)
    return CheckReport("centroid_membership", True, None, count)


def compute_derivations(a: HomNambuAlgebra, k: int) -> SubspaceBasis:
    """Maps D with D([x_1..x_n]) = sum_i [alpha^k x_1, ..., D x_i, ...,
    alpha^k x_n] that commute with the twist, as a canonical matrix basis."""
    d, n = a.dim, a.arity
    pw = _twist_power(a, k)
    patterns = [a.bracket.transform([pw if j != i else None for j in range(n)])
                for i in range(n)]
    rows: List[List[Fraction]] = []
    seen = set()
    for t in all_tuples(d, n):
        cv = a.bracket.value(t)
        for r in range(d):
            row = [Fraction(0)] * (d * d)
            for s in range(d):
                row[r * d + s] += cv[s]
            for i in range(n):
                for j in range(d):
                    row[j * d + t[i]] -= patterns[i].value(t[:i] + (j,) + t[i + 1:])[r]
            key = tuple(row)
            if any(row) and key not in seen:
                seen.add(key)
                rows.append(row)
    alpha = a.twist
    for u in range(d):
        for v in range(d):
            row = [Fraction(0)] * (d * d)
            for s in range(d):
                row[u * d + s] += alpha[s, v]
                row[s * d + v] -= alpha[u, s]
            if any(row):
                rows.append(row)
    return _matrix_nullspace_basis(rows, d)


def derivation_membership(a: HomNambuAlgebra, big_d: Matrix, k: int) -> CheckReport:
    """Direct check of the alpha^k-derivation equations (including commuting
    with the twist) for one candidate map."""
    d, n = a.dim, a.arity
    alpha = a.twist
    if big_d @ alpha != alpha @ big_d:
        return CheckReport("derivation_membership", False, None, 0,
                           detail="candidate does not commute with the twist")
    pw = _twist_power(a, k)
    patterns = [a.bracket.transform(
        [pw if j != i else big_d for j in range(n)]) for i in range(n)]
    count = 0
    for t in all_tuples(d, n):
        count += 1
        left = big_d.apply(a.bracket.value(t))
        right = Vector.zero(d)
        for p in patterns:
            right = right + p.value(t)
        if left != right:
            return CheckReport("derivation_membership", False,
                               Counterexample(t, left, right), count)
    return CheckReport("derivation_membership", True, None, count)


def inner_derivation(a: HomNambuAlgebra, x: Sequence[Vector], k: int) -> Matrix:
    """ad(x_1..x_{n-1}) composed with alpha^k; requires the twist to fix every
    x_i, and the result is verified to be an alpha^(k+1)-derivation."""
    if len(x) != a.arity - 1:
        raise ValueError("expected an (n-1)-tuple of vectors")
    alpha = a.twist
    for i, v in enumerate(x):
        if alpha.apply(v) != v:
            raise ValueError(f"twist does not fix argument {i + 1}")
    pw = _twist_power(a, k)
    cols = [a.bracket.eval(list(x) + [pw.col(j)]) for j in range(a.dim)]
    m = Matrix.from_columns(cols)
    report = derivation_membership(a, m, k + 1)
    if not report.passed:
        raise ValueError(f"inner map is not a derivation: {report.detail or report.counterexample}")
    return m


def compute_center(a: HomNambuAlgebra) -> SubspaceBasis:
    """Vectors z with [z, x_2, ..., x_n] = 0 for all basis choices."""
    d, n = a.dim, a.arity
    rows: List[List[Fraction]] = []
    for t in all_tuples(d, n - 1):
        for r in range(d):
            row = [a.bracket.value((i,) + t)[r] for i in range(d)]
            if any(row):
                rows.append(row)
    if rows:
        sols = nullspace(Matrix.from_rows(rows))
    else:
        sols = [Vector.basis(d, i) for i in range(d)]
    return SubspaceBasis("vector", d, tuple(sols))


def _derived_span(a: HomNambuAlgebra) -> List[Vector]:
    vals = [v for _, v in a.bracket.dense_items()]
    if not vals:
        return []
    from .linalg import rref
    reduced, pivots = rref(Matrix.from_rows([list(v.entries) for v in vals]))
    return [reduced.row(i) for i in range(len(pivots))]


def compute_central_derivations(a: HomNambuAlgebra) -> SubspaceBasis:
    """Maps vanishing on the derived subspace with image inside the center."""
    d = a.dim
    center = compute_center(a)
    derived = _derived_span(a)
    rows: List[List[Fraction]] = []
    # image in the center: w . (phi e_j) = 0 for w spanning the annihilator
    if center.dimension < d:
        if center.basis:
            zb = Matrix.from_rows([list(v.entries) for v in center.basis])
            annihilator = nullspace(zb)
        else:
            annihilator = [Vector.basis(d, i) for i in range(d)]
        for w in annihilator:
            for j in range(d):
                row = [Fraction(0)] * (d * d)
                for s in range(d):
                    row[s * d + j] = w[s]
                rows.append(row)
    for u in derived:
        for r in range(d):
            row = [Fraction(0)] * (d * d)
            for s in range(d):
                row[r * d + s] = u[s]
            rows.append(row)
    return _matrix_nullspace_basis(rows, d)


def derivation_commutator(a: HomNambuAlgebra, d1: Matrix, k1: int,
                          d2: Matrix, k2: int) -> Tuple[Matrix, CheckReport]:
    """[D, D'] with membership of the result verified in the level-(k1+k2)
    derivation space."""
    r1 = derivation_membership(a, d1, k1)
    if not r1.passed:
        raise ValueError("first map is not a derivation at its level")
    r2 = derivation_membership(a, d2, k2)
    if not r2.passed:
        raise ValueError("second map is not a derivation at its level")
    m = d1 @ d2 - d2 @ d1
    return m, derivation_membership(a, m, k1 + k2)


def centroid_derivation_product(a: HomNambuAlgebra, theta: Matrix, kp: int,
                                big_d: Matrix, k: int):
    """For a centroid element theta and derivation D: theta D with membership
    checked at level k + k', and [D, theta] with centroid membership checked
    at level k."""
    if not centroid_membership(a, theta, kp).passed:
        raise ValueError("theta is not a centroid element at its level")
    if not derivation_membership(a, big_d, k).passed:
        raise ValueError("D is not a derivation at its level")
    prod = theta @ big_d
    prod_report = derivation_membership(a, prod, k + kp)
    comm = big_d @ theta - theta @ big_d
    comm_report = centroid_membership(a, comm, k)
    return prod, prod_report, comm, comm_report


def varsigma_hom_lie(a: HomNambuAlgebra,
                     levels: Sequence[int] = (-1, 0, 1, 2)):
    """The graded space of twisted derivations with bracket
    sigma([D, D']) = alpha [D, D'] landing one level up, and the shift map
    sigma(D) = alpha D as the twist; levels outside the window truncate to
    zero. Returns the binary Hom-algebra with its Hom-Jacobi and skewness
    reports."""
    levels = sorted(levels)
    alpha = a.twist
    level_bases: Dict[int, SubspaceBasis] = {
        k: compute_derivations(a, k) for k in levels
    }
    elems: List[Tuple[int, Matrix]] = []
    offsets: Dict[int, int] = {}
    for k in levels:
        offsets[k] = len(elems)
        elems.extend((k, m) for m in level_bases[k].basis)
    dim = len(elems)

    def coords_in_level(k: int, m: Matrix) -> Optional[Vector]:
        basis = level_bases[k].basis
        flats = [b.flatten() for b in basis]
        coeffs = in_span(flats, m.flatten())
        if coeffs is None:
            return None
        v = [Fraction(0)] * dim
        for i, c in enumerate(coeffs.entries):
            v[offsets[k] + i] = c
        return Vector(v)

    items: Dict[Tuple[int, ...], Vector] = {}
    for i, (ki, mi) in enumerate(elems):
        for j, (kj, mj) in enumerate(elems):
            target = ki + kj + 1
            if target not in offsets:
                continue
            m = alpha @ (mi @ mj - mj @ mi)
            if m.is_zero():
                continue
            v = coords_in_level(target, m)
            if v is None:
                raise ValueError(
                    f"bracket of levels {ki} and {kj} left the level-{target} space")
            if not v.is_zero():
                items[(i, j)] = v

    sigma_cols = []
    for (k, m) in elems:
        target = k + 1
        if target in offsets:
            v = coords_in_level(target, alpha @ m)
            if v is None:
                raise ValueError(f"shift of a level-{k} element left the level-{target} space")
            sigma_cols.append(v)
        else:
            sigma_cols.append(Vector.zero(dim))
    sigma = Matrix.from_columns(sigma_cols) if dim else Matrix.zero(0, 0)

    out = HomLeibnizAlgebra(dim, BracketTensor(dim, 2, items), sigma)
    jacobi = check_hom_leibniz(out)
    skew = check_skew_symmetry(out.as_nambu())
    return out, jacobi, skew


def assoc_centroid_membership(h: HomAssocNAry, f: Matrix, k: int) -> CheckReport:
    """Centroid equations for an n-ary multiplication: f(mu(x_1..x_n)) =
    mu(f x_1, eta^k x_2, ..., eta^k x_n)."""
    d, n = h.dim, h.arity
    if k == -1:
        pw = Matrix.zero(d, d)
    elif k == 0:
        pw = Matrix.identity(d)
    else:
        common = h.twists[0]
        pw = common.power(k)
    pattern = h.mu.transform([f] + [pw] * (n - 1))
    count = 0
    for t in all_tuples(d, n):
        count += 1
        left = f.apply(h.mu.value(t))
        right = pattern.value(t)
        if left != right:
            return CheckReport("assoc_centroid_membership", False,
                               Counterexample(t, left, right), count)
    return CheckReport("assoc_centroid_membership", True, None, count)


def tensor_centroid_derivation(h: HomAssocNAry, a: HomNambuAlgebra,
                               f: Matrix, g: Matrix, mode: str, k: int):
    """f tensor g on the product algebra: with g a level-k centroid element
    the product lands in the product algebra's level-k centroid, with g a
    level-k derivation (and f also level-k multiplicative-compatible) it is
    checked as a level-k centroid element composed with derivation behavior on
    the product. Returns the Kronecker map and its verified membership report."""
    from .constructions import tensor_product
    from .linalg import kron
    if not assoc_centroid_membership(h, f, k).passed:
        raise ValueError("f is not a centroid element of the associative factor")
    if mode == "centroid":
        if not centroid_membership(a, g, k).passed:
            raise ValueError("g is not a centroid element at its level")
    elif mode == "derivation":
        if not derivation_membership(a, g, k).passed:
            raise ValueError("g is not a derivation at its level")
    else:
        raise ValueError("mode must be 'centroid' or 'derivation'")
    prod = tensor_product(h, a, verify=False)
    m = kron(f, g)
    if mode == "centroid":
        report = centroid_membership(prod, m, k)
    else:
        report = derivation_membership(prod, m, k)
    return m, report
