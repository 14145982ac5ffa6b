"""Serialization: round trips, flag verification, and malformed input."""

import json
from fractions import Fraction as F
from pathlib import Path

import pytest

from nambucat import Matrix, Vector, corpus, fileio
from nambucat.fileio import FileFormatError, FlagVerificationError


ALL_NAMES = corpus.corpus_names()


def _path(name):
    return Path(corpus.corpus_path(name))


def test_corpus_is_nonempty():
    assert len(ALL_NAMES) >= 8


@pytest.mark.parametrize("name", ALL_NAMES)
def test_roundtrip_byte_identical(name, tmp_path):
    src = _path(name)
    original = src.read_text()
    obj = fileio.load(src)
    out = tmp_path / "out.json"
    meta = fileio.load_document(src).get("metadata", {})
    fileio.save(obj, out, name=meta.get("name"),
                provenance=meta.get("provenance"))
    assert out.read_text() == original


@pytest.mark.parametrize("name", ALL_NAMES)
def test_load_equals_loads(name):
    src = _path(name)
    assert fileio.load(src) == fileio.loads(src.read_text())


def test_false_skew_claim_fails_closed():
    doc = fileio.load_document(_path("example1"))
    assert doc["flags"]["skew"] is False
    doc["flags"]["skew"] = True
    with pytest.raises(FlagVerificationError):
        fileio.from_document(doc)


def test_false_multiplicative_claim_fails_closed():
    doc = fileio.load_document(_path("example2"))
    assert doc["flags"]["multiplicative"] is False
    doc["flags"]["multiplicative"] = True
    with pytest.raises(FlagVerificationError):
        fileio.from_document(doc)


def test_flag_error_carries_report():
    doc = fileio.load_document(_path("example2"))
    doc["flags"]["multiplicative"] = True
    try:
        fileio.from_document(doc)
    except FlagVerificationError as e:
        assert e.report is not None
        assert not e.report.passed
    else:
        pytest.fail("expected FlagVerificationError")


def test_quadratic_gram_mismatch_fails_closed():
    doc = fileio.load_document(_path("sl2"))
    doc["form"][0][0] = "1"  # was 0; breaks invariance (still symmetric)
    with pytest.raises(FlagVerificationError):
        fileio.from_document(doc)


def test_verify_false_skips_flag_checks():
    doc = fileio.load_document(_path("example2"))
    doc["flags"]["multiplicative"] = True
    obj = fileio.from_document(doc, verify=False)
    assert obj.algebra.multiplicative is True  # taken on faith, as requested


@pytest.mark.parametrize("mutate,match", [
    (lambda d: d.pop("schema_version"), "schema_version"),
    (lambda d: d.update(schema_version=99), "schema_version"),
    (lambda d: d.update(kind="nonsense"), "kind"),
    (lambda d: d.update(dim=0), "dim"),
    (lambda d: d.update(arity=1), "arity"),
    (lambda d: d.pop("twists"), "twists"),
])
def test_malformed_documents(mutate, match):
    doc = fileio.load_document(_path("zero2"))
    mutate(doc)
    with pytest.raises(FileFormatError):
        fileio.from_document(doc)


def test_bad_rational_rejected():
    doc = fileio.load_document(_path("zero2"))
    doc["twists"][0][0][0] = "1/0"
    with pytest.raises(FileFormatError):
        fileio.from_document(doc)
    doc["twists"][0][0][0] = "0.5"
    with pytest.raises(FileFormatError):
        fileio.from_document(doc)


def test_out_of_range_index_rejected():
    doc = fileio.load_document(_path("simple3lie4"))
    doc["bracket"][0]["inputs"] = [1, 2, 5]
    with pytest.raises(FileFormatError):
        fileio.from_document(doc)
    doc["bracket"][0]["inputs"] = [0, 1, 2]  # indices are 1-based
    with pytest.raises(FileFormatError):
        fileio.from_document(doc)


def test_duplicate_entry_rejected():
    doc = fileio.load_document(_path("simple3lie4"))
    doc["bracket"].append(dict(doc["bracket"][0]))
    with pytest.raises(FileFormatError):
        fileio.from_document(doc)


def test_skew_storage_roundtrip(s4):
    """Skew-flagged files keep only increasing tuples but reload densely."""
    doc = fileio.to_document(s4)
    for entry in doc["bracket"]:
        assert list(entry["inputs"]) == sorted(set(entry["inputs"]))
    back = fileio.from_document(doc)
    assert back.algebra.bracket.value((1, 0, 2)) == \
        -s4.algebra.bracket.value((0, 1, 2))


def test_fraction_strings_are_reduced(ex2):
    text = fileio.dumps(ex2)
    assert "1/2" in text
    assert "2/4" not in text
    data = json.loads(text)
    assert data["schema_version"] == 1


def test_deterministic_dumps(sl2):
    assert fileio.dumps(sl2) == fileio.dumps(sl2)


def test_matrix_and_vector_from_file(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"matrix": [["1", "1/2"], ["0", "3"]]}))
    m = fileio.matrix_from_file(p)
    assert m[0, 1] == F(1, 2)
    p2 = tmp_path / "v.json"
    p2.write_text(json.dumps({"vector": ["1", "-2/3"]}))
    v = fileio.vector_from_file(p2, 2)
    assert v.entries[1] == F(-2, 3)
    p2.write_text(json.dumps({"vector": ["1"]}))
    with pytest.raises(FileFormatError):
        fileio.vector_from_file(p2, 2)


def test_representation_document_kind(s4):
    from nambucat.representations import adjoint_rep
    doc = fileio.representation_to_document(adjoint_rep(s4.algebra))
    assert doc["kind"] == "representation"
    doc["target_dim"] = 5
    with pytest.raises((FileFormatError, ValueError)):
        fileio.representation_from_document(doc)
