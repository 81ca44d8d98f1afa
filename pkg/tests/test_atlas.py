from __future__ import annotations

import json
import random

import pytest

from schubiso import atlas as atlas_mod
from schubiso.atlas import (
    SURFACE_LABELS,
    build_atlas,
    classify,
    enumerate_data,
    expected_surface_classes,
    surface_atlas,
)
from schubiso.cartan import m_matrix, two_i2, type_a
from schubiso.cohomology import SchubertDatum
from schubiso.documents import load_datum, parse_datum
from schubiso.errors import AtlasMismatch, LimitExceeded
from schubiso.isoclass import EMPTY_VS_NONEMPTY, VerdictKind


def datum(cartan, word, parabolic=()):
    return SchubertDatum.from_word(cartan, word, parabolic)


def test_enumerate_examples():
    assert [repr(d) for d in enumerate_data(1, 1)] == ["X(1, [[2]], {})"]
    assert enumerate_data(2, 0) == []
    data = enumerate_data(2, 2)
    surfaces = [d for d in data if d.dimension == 2]
    assert len(surfaces) == 13
    assert set(surfaces) == set().union(*expected_surface_classes().values())
    assert [d for d in data if d.dimension < 2] == [datum(type_a(1), (0,))]


def test_enumerate_is_fully_supported_and_valid():
    data = enumerate_data(3, 4)
    assert len(set(data)) == len(data)
    for d in data:
        assert d.support == frozenset(range(d.cartan.rank))
        assert d.dimension <= 4


def test_enumerate_limits():
    with pytest.raises(LimitExceeded):
        enumerate_data(5, 2)
    with pytest.raises(LimitExceeded):
        enumerate_data(2, 9)
    assert enumerate_data(0, 3) == []


def test_classify_small():
    one = classify([datum(m_matrix(1), (0, 1))])
    assert one.classes == ((0,),) and not one.verdicts


def test_classify_chain_triple(data_dir):
    triple = [load_datum(data_dir / f"{n}_chain.json")[0] for n in ("a4", "b4", "f4")]
    cls = classify(triple)
    assert len(cls.classes) == 1 and len(cls.classes[0]) == 3


def _partition(cls):
    return {frozenset(cls.data[i] for i in members) for members in cls.classes}


def test_classify_order_independent():
    data = enumerate_data(2, 8)
    base = classify(data)
    rng = random.Random(20240611)
    for _ in range(3):
        shuffled = list(data)
        rng.shuffle(shuffled)
        assert _partition(classify(shuffled)) == _partition(base)
    assert _partition(classify(data, threads=4)) == _partition(base)


def test_rank2_has_no_unknown_pairs():
    cls = classify(enumerate_data(2, 8))
    assert cls.unknown_pairs == ()


def test_unknown_pairs_reported_not_merged():
    cls = classify(enumerate_data(3, 3))
    assert cls.unknown_pairs
    for i, j in cls.unknown_pairs:
        assert cls.verdict(i, j).kind is VerdictKind.UNKNOWN
    for members in cls.classes:
        for i in members:
            for j in members:
                if i < j:
                    # same class only through a chain of isomorphic verdicts;
                    # at this size every such pair is also decided directly
                    assert cls.verdict(i, j).kind is VerdictKind.ISOMORPHIC


@pytest.fixture(scope="module")
def surfaces():
    return surface_atlas()


def test_surface_classes(surfaces):
    cls = surfaces.classification
    assert len(cls.classes) == 7 and len(cls.data) == 13
    assert sorted(surfaces.labels) == sorted(SURFACE_LABELS)
    sizes = {label: len(members) for label, members in zip(surfaces.labels, cls.classes)}
    assert sizes == {"P1xP1": 1, "Sigma1": 4, "Sigma2": 1, "Sigma3": 1, "P2": 4, "ConeOverConic": 1, "G2Exceptional": 1}


def _label_of(surfaces, d):
    return next(r.class_label for r in surfaces.records if r.datum == d)


def test_surface_labels(surfaces):
    assert _label_of(surfaces, datum(m_matrix(2), (0, 1))) == "Sigma1"
    assert _label_of(surfaces, datum(m_matrix(1), (1, 0))) == "Sigma1"
    assert _label_of(surfaces, datum(m_matrix(3), (1, 0), (1,))) == "G2Exceptional"
    assert _label_of(surfaces, datum(two_i2(), (0, 1))) == "P1xP1"
    assert _label_of(surfaces, datum(m_matrix(1), (1, 0), (1,))) == "P2"


def test_surface_record_invariants(surfaces):
    cls = surfaces.classification
    for r in surfaces.records:
        for j, kind in r.verdicts:
            same = surfaces.records[j].class_id == r.class_id
            assert kind == ("isomorphic" if same else "not_isomorphic")
    for (i, j), v in cls.verdicts.items():
        if cls.class_of(i) != cls.class_of(j):
            assert v.witness == EMPTY_VS_NONEMPTY or v.witness.startswith("cartan_entry"), v
        else:
            assert v.certificate.verify()


def test_surface_jsonl_is_byte_stable(surfaces):
    text = surfaces.to_jsonl()
    assert surface_atlas(threads=3).to_jsonl() == text
    lines = text.splitlines()
    header = json.loads(lines[0])
    assert header["tool"] == "schubiso" and header["data"] == 13 and header["classes"] == 7
    assert header["params"] == {"max_rank": 2, "max_length": 2, "dimension": 2}
    records = [json.loads(x) for x in lines[1:]]
    assert len(records) == 13
    for rec, r in zip(records, surfaces.records):
        assert parse_datum(rec["datum"])[0] == r.datum


def test_surface_mismatch_detected(monkeypatch):
    def wrong():
        classes = dict(expected_surface_classes())
        merged = classes.pop("Sigma2") | classes.pop("Sigma3")
        return {**classes, "Sigma23": merged}

    monkeypatch.setattr(atlas_mod, "expected_surface_classes", wrong)
    with pytest.raises(AtlasMismatch):
        surface_atlas()


def test_build_atlas_without_labels():
    cls = classify(enumerate_data(1, 1))
    a = build_atlas(cls, {"max_rank": 1, "max_length": 1})
    assert a.records[0].class_label is None
    assert a.to_jsonl().count("\n") == 2
