"""JSON file format for algebras, subspace bases, and representations.

All rationals are written as reduced "p/q" (or "p") strings; basis indices in
files are 1-based. Saving is canonical: sorted index tuples, fixed key order,
so save(load(f)) reproduces a canonically formatted file byte for byte.
Claimed skew/multiplicative flags are re-verified on load; a false claim
fails the load with the offending check report.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .algebra import (BilinearForm, BracketTensor, HomAssocNAry,
                      HomLeibnizAlgebra, HomNambuAlgebra, QuadraticStructure)
from .checks import CheckReport, check_multiplicativity, check_skew_symmetry
from .faulkner import QuadraticLieAlgebra
from .linalg import Matrix, Vector, frac, frac_str
from .representations import Representation
from .spaces import SubspaceBasis

SCHEMA_VERSION = 1

AlgebraLike = Union[HomNambuAlgebra, HomLeibnizAlgebra, HomAssocNAry,
                    QuadraticStructure, QuadraticLieAlgebra]


class FileFormatError(ValueError):
    """The document is malformed (parse-level problem)."""


class FlagVerificationError(ValueError):
    """A claimed flag failed re-verification on load."""

    def __init__(self, message: str, report: Optional[CheckReport] = None):
        super().__init__(message)
        self.report = report


def _vec_json(v: Vector) -> List[str]:
    return [frac_str(x) for x in v.entries]


def _mat_json(m: Matrix) -> List[List[str]]:
    return [[frac_str(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def _vec_from(data, dim: int, what: str) -> Vector:
    if not isinstance(data, list) or len(data) != dim:
        raise FileFormatError(f"{what}: expected a list of length {dim}")
    try:
        return Vector([frac(x) for x in data])
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise FileFormatError(f"{what}: bad rational ({e})")


def _mat_from(data, rows: int, cols: int, what: str) -> Matrix:
    if not isinstance(data, list) or len(data) != rows:
        raise FileFormatError(f"{what}: expected {rows} rows")
    return Matrix.from_rows([list(_vec_from(r, cols, what).entries) for r in data])


def _bracket_json(t: BracketTensor) -> List[dict]:
    entries = sorted(t.coeffs.items())
    return [{"inputs": [i + 1 for i in idx], "output": _vec_json(v)}
            for idx, v in entries]


def _bracket_from(data, dim: int, arity: int, vdim: int) -> Dict[Tuple[int, ...], Vector]:
    if not isinstance(data, list):
        raise FileFormatError("bracket: expected a list of entries")
    items: Dict[Tuple[int, ...], Vector] = {}
    for e in data:
        if not isinstance(e, dict) or set(e) != {"inputs", "output"}:
            raise FileFormatError("bracket entry must have exactly 'inputs' and 'output'")
        idx = e["inputs"]
        if (not isinstance(idx, list) or len(idx) != arity
                or not all(isinstance(i, int) and 1 <= i <= dim for i in idx)):
            raise FileFormatError(f"bracket entry has bad inputs {idx!r}")
        key = tuple(i - 1 for i in idx)
        if key in items:
            raise FileFormatError(f"duplicate bracket entry for inputs {idx}")
        items[key] = _vec_from(e["output"], vdim, "bracket output")
    return items


def to_document(obj: AlgebraLike, name: Optional[str] = None,
                provenance: Optional[str] = None) -> dict:
    form = beta = None
    kind = None
    if isinstance(obj, QuadraticStructure):
        form, beta, obj = obj.form, obj.beta, obj.algebra
    elif isinstance(obj, QuadraticLieAlgebra):
        form, obj = obj.form, obj.algebra
        kind = "quadratic_lie"
    if isinstance(obj, HomNambuAlgebra):
        kind = kind or "hom_nambu"
        bracket, twists = obj.bracket, obj.twists
        flags = {"skew": obj.skew, "multiplicative": obj.multiplicative}
        arity = obj.arity
    elif isinstance(obj, HomLeibnizAlgebra):
        kind, bracket, twists = "hom_leibniz", obj.bracket, (obj.twist,)
        flags, arity = {}, 2
    elif isinstance(obj, HomAssocNAry):
        kind, bracket, twists = "hom_assoc", obj.mu, obj.twists
        flags, arity = {}, obj.arity
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind}
    meta = {}
    if name:
        meta["name"] = name
    if provenance:
        meta["provenance"] = provenance
    if meta:
        doc["metadata"] = meta
    doc["dim"] = obj.dim
    doc["arity"] = arity
    doc["bracket"] = _bracket_json(bracket)
    doc["twists"] = [_mat_json(t) for t in twists]
    if flags:
        doc["flags"] = flags
    if form is not None:
        doc["form"] = _mat_json(form.gram)
    if beta is not None:
        doc["beta"] = _mat_json(beta)
    return doc


def dumps(obj: AlgebraLike, name: Optional[str] = None,
          provenance: Optional[str] = None) -> str:
    return dumps_document(to_document(obj, name, provenance))


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def from_document(doc: dict, verify: bool = True) -> AlgebraLike:
    if not isinstance(doc, dict):
        raise FileFormatError("top level must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise FileFormatError("missing or unsupported schema_version")
    kind = doc.get("kind")
    if kind not in ("hom_nambu", "hom_leibniz", "hom_assoc", "quadratic_lie"):
        raise FileFormatError(f"unknown kind {kind!r}")
    dim, arity = doc.get("dim"), doc.get("arity")
    if not (isinstance(dim, int) and dim >= 1):
        raise FileFormatError("dim must be a positive integer")
    if not (isinstance(arity, int) and arity >= 2):
        raise FileFormatError("arity must be an integer >= 2")
    if kind in ("hom_leibniz", "quadratic_lie") and arity != 2:
        raise FileFormatError(f"{kind} requires arity 2")
    items = _bracket_from(doc.get("bracket"), dim, arity, dim)
    n_twists = 1 if kind == "hom_leibniz" else arity - 1
    raw_twists = doc.get("twists")
    if not isinstance(raw_twists, list) or len(raw_twists) != n_twists:
        raise FileFormatError(f"expected {n_twists} twist matrices")
    twists = tuple(_mat_from(t, dim, dim, "twist") for t in raw_twists)
    form = beta = None
    if doc.get("form") is not None:
        form = BilinearForm(dim, _mat_from(doc["form"], dim, dim, "form"))
    if doc.get("beta") is not None:
        beta = _mat_from(doc["beta"], dim, dim, "beta")

    if kind == "hom_leibniz":
        return HomLeibnizAlgebra(dim, BracketTensor(dim, 2, items), twists[0])
    if kind == "hom_assoc":
        return HomAssocNAry(dim, arity, BracketTensor(dim, arity, items), twists)

    flags = doc.get("flags", {})
    if not isinstance(flags, dict):
        raise FileFormatError("flags must be an object")
    claim_skew = bool(flags.get("skew", kind == "quadratic_lie"))
    claim_mult = bool(flags.get("multiplicative", False))
    if claim_skew:
        # skew-flagged entries denote the canonical alternating extension;
        # listing two entries of one orbit with inconsistent values fails here
        try:
            tensor = BracketTensor.skew_from_entries(dim, arity, items)
        except ValueError as e:
            raise FlagVerificationError(f"claimed skew flag is inconsistent: {e}")
    else:
        tensor = BracketTensor(dim, arity, items)
    a = HomNambuAlgebra(dim, arity, tensor, twists,
                        skew=claim_skew, multiplicative=claim_mult)
    if verify:
        if claim_skew:
            r = check_skew_symmetry(a)
            if not r.passed:
                raise FlagVerificationError("claimed skew flag failed verification", r)
        if claim_mult:
            r = check_multiplicativity(a)
            if not r.passed:
                raise FlagVerificationError(
                    "claimed multiplicative flag failed verification", r)
    if kind == "quadratic_lie":
        if form is None:
            raise FileFormatError("quadratic_lie requires a form")
        g = QuadraticLieAlgebra(a, form)
        if verify:
            for r in g.validate():
                if not r.passed:
                    raise FlagVerificationError(
                        f"quadratic Lie algebra failed {r.identity}", r)
        return g
    if form is not None:
        return QuadraticStructure(a, form, beta=beta)
    return a


def loads(text: str, verify: bool = True) -> AlgebraLike:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"invalid JSON: {e}")
    return from_document(doc, verify=verify)


def save(obj: AlgebraLike, path, name: Optional[str] = None,
         provenance: Optional[str] = None) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(obj, name, provenance))


def load(path, verify: bool = True) -> AlgebraLike:
    with open(path) as fh:
        return loads(fh.read(), verify=verify)


def load_document(path) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"invalid JSON: {e}")
    if not isinstance(doc, dict):
        raise FileFormatError("top level must be a JSON object")
    return doc


def subspace_to_document(s: SubspaceBasis) -> dict:
    if s.kind == "matrix":
        basis = [_mat_json(m) for m in s.basis]
    else:
        basis = [_vec_json(v) for v in s.basis]
    return {"schema_version": SCHEMA_VERSION, "kind": "subspace",
            "space": s.kind, "ambient_dim": s.ambient_dim,
            "dimension": s.dimension, "basis": basis}


def representation_to_document(rep: Representation) -> dict:
    entries = sorted(rep.rho.coeffs.items())
    return {"schema_version": SCHEMA_VERSION, "kind": "representation",
            "source_dim": rep.source_dim, "arity": rep.arity,
            "target_dim": rep.target_dim,
            "rho": [{"inputs": [i + 1 for i in idx],
                     "matrix": _mat_json(rep.operator(idx))}
                    for idx, _ in entries],
            "nu": _mat_json(rep.nu)}


def representation_from_document(doc: dict) -> Representation:
    if doc.get("kind") != "representation":
        raise FileFormatError("expected kind 'representation'")
    d, n, m = doc.get("source_dim"), doc.get("arity"), doc.get("target_dim")
    for label, x in (("source_dim", d), ("arity", n), ("target_dim", m)):
        if not (isinstance(x, int) and x >= 1):
            raise FileFormatError(f"{label} must be a positive integer")
    items: Dict[Tuple[int, ...], Vector] = {}
    for e in doc.get("rho", []):
        idx = tuple(i - 1 for i in e["inputs"])
        mat = _mat_from(e["matrix"], m, m, "rho matrix")
        items[idx] = mat.flatten()
    rho = BracketTensor(d, n - 1, items, vdim=m * m)
    return Representation(d, n, m, rho, _mat_from(doc["nu"], m, m, "nu"))


def matrix_from_file(path, dim: Optional[int] = None) -> Matrix:
    """Read a bare matrix file: {"matrix": [[...]]} or a plain list of rows."""
    doc = load_document(path)
    data = doc.get("matrix", doc) if isinstance(doc, dict) else doc
    if not isinstance(data, list) or not data:
        raise FileFormatError("expected a nonempty list of matrix rows")
    rows = len(data)
    cols = len(data[0]) if isinstance(data[0], list) else 0
    m = _mat_from(data, rows, cols, "matrix")
    if dim is not None and (m.rows != dim or m.cols != dim):
        raise FileFormatError(f"expected a {dim}x{dim} matrix")
    return m


def vector_from_file(path, dim: int) -> Vector:
    doc = load_document(path)
    data = doc.get("vector")
    if data is None:
        raise FileFormatError("expected a 'vector' field")
    return _vec_from(data, dim, "vector")
