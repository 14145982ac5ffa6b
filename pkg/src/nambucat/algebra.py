"""Domain types for n-ary brackets over exact rationals.

A bracket is stored as a sparse tensor of structure constants: a map from
basis index tuples to the coordinate vector of the bracket of those basis
elements. The standard coordinate basis e_0..e_{d-1} is fixed throughout
(serialized 1-based as e_1..e_d); change of basis is always an explicit
transform, never implicit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import Matrix, Vector, frac


def perm_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation given as a sequence of distinct comparables."""
    sign = 1
    seen = [False] * len(perm)
    order = sorted(range(len(perm)), key=lambda i: perm[i])
    pos = [0] * len(perm)
    for rank, i in enumerate(order):
        pos[i] = rank
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = pos[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def sort_with_sign(idx: Tuple[int, ...]) -> Tuple[Optional[Tuple[int, ...]], int]:
    """Sorted index tuple and permutation sign; (None, 0) on repeated indices."""
    if len(set(idx)) != len(idx):
        return None, 0
    return tuple(sorted(idx)), perm_sign(idx)


class BracketTensor:
    """Sparse structure constants of an n-linear map into a d-dimensional space.

    ``coeffs`` maps index tuples to output Vectors; absent tuples are zero.
    With ``skew_storage`` only strictly increasing tuples are stored and all
    other values are derived by permutation sign (repeated indices give zero).
    The output dimension ``vdim`` defaults to ``dim`` but may differ (used for
    operator-valued tensors such as representations).
    """

    __slots__ = ("dim", "arity", "vdim", "coeffs", "skew_storage", "_dense")

    def __init__(self, dim: int, arity: int,
                 coeffs: Dict[Tuple[int, ...], Vector],
                 skew_storage: bool = False,
                 vdim: Optional[int] = None):
        self.dim = dim
        self.arity = arity
        self.vdim = dim if vdim is None else vdim
        self.skew_storage = skew_storage
        clean: Dict[Tuple[int, ...], Vector] = {}
        for idx, vec in coeffs.items():
            idx = tuple(idx)
            if len(idx) != arity or any(not 0 <= i < dim for i in idx):
                raise ValueError(f"bad index tuple {idx}")
            if vec.dim != self.vdim:
                raise ValueError("coefficient vector has wrong length")
            if skew_storage and any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"skew storage requires strictly increasing tuples, got {idx}")
            if not vec.is_zero():
                clean[idx] = vec
        self.coeffs = clean
        self._dense = None

    @classmethod
    def zero(cls, dim: int, arity: int, vdim: Optional[int] = None) -> "BracketTensor":
        return cls(dim, arity, {}, vdim=vdim)

    @classmethod
    def skew_from_entries(cls, dim: int, arity: int,
                          coeffs: Dict[Tuple[int, ...], Vector]) -> "BracketTensor":
        """Canonicalize arbitrary entries of a skew bracket into increasing-tuple storage."""
        canon: Dict[Tuple[int, ...], Vector] = {}
        for idx, vec in coeffs.items():
            key, sign = sort_with_sign(tuple(idx))
            if key is None:
                if not vec.is_zero():
                    raise ValueError(f"nonzero value on repeated indices {idx}")
                continue
            contrib = vec if sign == 1 else -vec
            if key in canon and canon[key] != contrib:
                raise ValueError(f"inconsistent skew data at {key}")
            canon[key] = contrib
        return cls(dim, arity, canon, skew_storage=True)

    def value(self, idx: Tuple[int, ...]) -> Vector:
        """Bracket of the basis tuple idx (0-based)."""
        if self.skew_storage:
            key, sign = sort_with_sign(idx)
            if key is None:
                return Vector.zero(self.vdim)
            vec = self.coeffs.get(key)
            if vec is None:
                return Vector.zero(self.vdim)
            return vec if sign == 1 else -vec
        return self.coeffs.get(tuple(idx), Vector.zero(self.vdim))

    def dense_items(self) -> List[Tuple[Tuple[int, ...], Vector]]:
        """All nonzero (tuple, value) pairs, skew storage expanded, sorted."""
        if self._dense is None:
            if self.skew_storage:
                out = []
                for idx, vec in self.coeffs.items():
                    for perm in itertools.permutations(idx):
                        sign = perm_sign(perm)
                        out.append((perm, vec if sign == 1 else -vec))
                self._dense = sorted(out)
            else:
                self._dense = sorted(self.coeffs.items())
        return self._dense

    def eval(self, args: Sequence[Vector]) -> Vector:
        """Multilinear extension: sum over index tuples of coordinate products."""
        if len(args) != self.arity:
            raise ValueError("arity mismatch")
        for v in args:
            if v.dim != self.dim:
                raise ValueError("dimension mismatch")
        acc = [Fraction(0)] * self.vdim
        for idx, vec in self.dense_items():
            c = Fraction(1)
            for k, i in enumerate(idx):
                a = args[k].entries[i]
                if a == 0:
                    c = None
                    break
                c *= a
            if c is None:
                continue
            for r, x in enumerate(vec.entries):
                if x:
                    acc[r] += c * x
        return Vector(acc)

    def transform(self, slot_maps: Sequence[Optional[Matrix]],
                  out_map: Optional[Matrix] = None) -> "BracketTensor":
        """Tensor of (args) -> out_map(bracket(M_1 a_1, ..., M_n a_n)).

        ``slot_maps[k]`` is the linear map applied to argument k (None for
        identity). The result is a dense-storage tensor whose value on a basis
        tuple j is the bracket evaluated on the mapped basis vectors.
        """
        if len(slot_maps) != self.arity:
            raise ValueError("need one map per slot")
        items = dict(self.dense_items())
        for k, m in enumerate(slot_maps):
            if m is None:
                continue
            if m.rows != m.cols or m.rows != self.dim:
                raise ValueError("slot map has wrong shape")
            nxt: Dict[Tuple[int, ...], list] = {}
            for idx, vec in items.items():
                i = idx[k]
                for j in range(self.dim):
                    c = m[i, j]
                    if c == 0:
                        continue
                    key = idx[:k] + (j,) + idx[k + 1:]
                    acc = nxt.get(key)
                    if acc is None:
                        acc = [Fraction(0)] * self.vdim
                        nxt[key] = acc
                    for r, x in enumerate(vec.entries):
                        if x:
                            acc[r] += c * x
            items = {key: Vector(v) for key, v in nxt.items()}
        if out_map is not None:
            items = {key: out_map.apply(vec) for key, vec in items.items()}
            vdim = out_map.rows
        else:
            vdim = self.vdim
        return BracketTensor(self.dim, self.arity, items, vdim=vdim)

    def skew_canonical(self) -> "BracketTensor":
        """Re-store a (verified skew) tensor with increasing-tuple storage."""
        if self.skew_storage:
            return self
        return BracketTensor.skew_from_entries(self.dim, self.arity, self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BracketTensor):
            return NotImplemented
        if (self.dim, self.arity, self.vdim) != (other.dim, other.arity, other.vdim):
            return False
        return dict(self.dense_items()) == dict(other.dense_items())

    def __hash__(self):
        raise TypeError("BracketTensor is not hashable")

    def __repr__(self) -> str:
        return (f"BracketTensor(dim={self.dim}, arity={self.arity}, "
                f"nnz={len(self.coeffs)}, skew_storage={self.skew_storage})")


@dataclass(frozen=True)
class HomNambuAlgebra:
    """An n-ary bracket with a family of n-1 twist maps.

    The ``skew`` and ``multiplicative`` flags are claims: constructors never
    set them silently, verification routines confirm them.
    """

    dim: int
    arity: int
    bracket: BracketTensor
    twists: Tuple[Matrix, ...]
    skew: bool = False
    multiplicative: bool = False

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(self.twists))
        if self.bracket.dim != self.dim or self.bracket.arity != self.arity:
            raise ValueError("bracket tensor does not match dim/arity")
        if len(self.twists) != self.arity - 1:
            raise ValueError(f"expected {self.arity - 1} twist maps")
        for t in self.twists:
            if t.rows != self.dim or t.cols != self.dim:
                raise ValueError("twist map has wrong shape")

    @property
    def twist(self) -> Matrix:
        """The common twist of a multiplicative algebra (twists must agree)."""
        if any(t != self.twists[0] for t in self.twists[1:]):
            raise ValueError("twists differ")
        return self.twists[0]

    def with_flags(self, skew: Optional[bool] = None,
                   multiplicative: Optional[bool] = None) -> "HomNambuAlgebra":
        return replace(self,
                       skew=self.skew if skew is None else skew,
                       multiplicative=self.multiplicative if multiplicative is None
                       else multiplicative)


@dataclass(frozen=True)
class HomLeibnizAlgebra:
    """Binary bracket with a single twist map (not necessarily skew)."""

    dim: int
    bracket: BracketTensor
    twist: Matrix

    def __post_init__(self):
        if self.bracket.arity != 2 or self.bracket.dim != self.dim:
            raise ValueError("bracket must be binary on the stated dimension")
        if self.twist.rows != self.dim or self.twist.cols != self.dim:
            raise ValueError("twist map has wrong shape")

    def as_nambu(self, skew: bool = False) -> HomNambuAlgebra:
        """View as an arity-2 Hom-Nambu algebra (shared checker machinery)."""
        return HomNambuAlgebra(self.dim, 2, self.bracket, (self.twist,), skew=skew)


@dataclass(frozen=True)
class HomAssocNAry:
    """Symmetric n-ary totally Hom-associative algebra."""

    dim: int
    arity: int
    mu: BracketTensor
    twists: Tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(self.twists))
        if self.mu.dim != self.dim or self.mu.arity != self.arity:
            raise ValueError("product tensor does not match dim/arity")
        if len(self.twists) != self.arity - 1:
            raise ValueError(f"expected {self.arity - 1} twist maps")


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric bilinear form given by its Gram matrix."""

    dim: int
    gram: Matrix

    def __post_init__(self):
        if self.gram.rows != self.dim or self.gram.cols != self.dim:
            raise ValueError("gram matrix has wrong shape")
        if not self.gram.is_symmetric():
            raise ValueError("gram matrix must be symmetric")

    def apply(self, x: Vector, y: Vector) -> Fraction:
        return self.gram.apply(y).dot(x)

    @property
    def nondegenerate(self) -> bool:
        from .linalg import rank
        return rank(self.gram) == self.dim

    @classmethod
    def standard(cls, dim: int) -> "BilinearForm":
        return cls(dim, Matrix.identity(dim))


@dataclass(frozen=True)
class QuadraticStructure:
    """Algebra together with an (optionally beta-twisted) invariant form."""

    algebra: HomNambuAlgebra
    form: BilinearForm
    beta: Optional[Matrix] = None

    def __post_init__(self):
        if self.form.dim != self.algebra.dim:
            raise ValueError("form dimension mismatch")
        if self.beta is not None and (self.beta.rows != self.algebra.dim
                                      or self.beta.cols != self.algebra.dim):
            raise ValueError("beta has wrong shape")


def eval_bracket(a: HomNambuAlgebra, args: Sequence[Vector]) -> Vector:
    """n-linear extension of the structure constants."""
    return a.bracket.eval(args)


def adjoint_operator(a: HomNambuAlgebra, x: Sequence[Vector]) -> Matrix:
    """Matrix of y -> [x_1, ..., x_{n-1}, y] in the coordinate basis."""
    if len(x) != a.arity - 1:
        raise ValueError("need n-1 arguments")
    cols = [a.bracket.eval(list(x) + [Vector.basis(a.dim, j)]) for j in range(a.dim)]
    return Matrix.from_columns(cols)


def adjoint_of_basis_tuple(a: HomNambuAlgebra, idx: Tuple[int, ...]) -> Matrix:
    """Adjoint operator of a tuple of basis vectors, via direct table lookup."""
    cols = [a.bracket.value(idx + (j,)) for j in range(a.dim)]
    return Matrix.from_columns(cols)


def all_tuples(dim: int, length: int) -> Iterable[Tuple[int, ...]]:
    return itertools.product(range(dim), repeat=length)


def increasing_tuples(dim: int, length: int) -> Iterable[Tuple[int, ...]]:
    return itertools.combinations(range(dim), length)
