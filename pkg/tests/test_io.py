"""Document serialization: exact roundtrips and strict validation."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from boxcorr import BoxSet, DocumentError, FlaggedInterval, Grid
from boxcorr import io
from boxcorr.economy import economy_from_doc, economy_to_doc
from boxcorr.fixedpoint import ProductMap
from boxcorr.gallery import ex2_1, ex2_2, ex4_1, theorem_4_1_construction
from boxcorr.radner import info_economy_from_doc, info_economy_to_doc, radner_toy

I = FlaggedInterval
EXAMPLES = Path(__file__).resolve().parent.parent / "examples"


def test_map_roundtrip_bit_exact():
    t1, d = ex2_1()
    doc = io.map_to_doc(t1, d)
    text = io.dumps(doc)
    back = io.map_from_doc(io.loads(text))
    assert back == t1
    assert io.map_doc_target(io.loads(text)) == d
    assert io.dumps(io.map_to_doc(back, d)) == text


def test_pair_roundtrip():
    a, b, d = ex2_2()
    a2, b2, d2 = io.pair_from_doc(io.loads(io.dumps(io.pair_to_doc(a, b, d))))
    assert (a2, b2, d2) == (a, b, d)


def test_product_roundtrip():
    pm = theorem_4_1_construction(ex4_1(2))
    back = ProductMap.from_doc(io.loads(io.dumps(pm.to_doc())))
    assert back == pm


def test_economy_roundtrip():
    e = ex4_1(2)
    back = economy_from_doc(io.loads(io.dumps(economy_to_doc(e))))
    assert back == e


def test_info_economy_roundtrip():
    e = radner_toy()
    back = info_economy_from_doc(io.loads(io.dumps(info_economy_to_doc(e))))
    assert back == e


def test_boxset_roundtrip_preserves_flags():
    s = BoxSet.of(2, [
        (I(0, 1, False, True), I.point(0.5)),
        (I.open(1.5, 2), I.closed(0, 1)),
    ])
    assert io.boxset_from_doc(io.boxset_to_doc(s)) == s


def test_grid_roundtrip():
    g = Grid(2, (0.0, 0.5), (2.0, 1.5), 0.25)
    assert io.grid_from_doc(io.grid_to_doc(g)) == g


def test_detect_kind():
    t1, d = ex2_1()
    a, b, d22 = ex2_2()
    assert io.detect_kind(io.map_to_doc(t1, d)) == "map"
    assert io.detect_kind(io.pair_to_doc(a, b, d22)) == "pair"
    assert io.detect_kind(economy_to_doc(ex4_1(2))) == "economy"
    assert io.detect_kind(info_economy_to_doc(radner_toy())) == "info-economy"


def test_loads_rejects_non_object():
    with pytest.raises(DocumentError):
        io.loads("[1, 2]")
    with pytest.raises(DocumentError):
        io.loads("not json")


def test_doc_validation_catches_missing_fields():
    t1, d = ex2_1()
    doc = io.map_to_doc(t1, d)
    broken = dict(doc)
    del broken["pieces"]
    with pytest.raises(DocumentError):
        io.map_from_doc(broken)
    wrong = dict(doc, kind="pair")
    with pytest.raises(DocumentError):
        io.map_from_doc(wrong)


def test_doc_validation_rejects_bad_interval():
    with pytest.raises(DocumentError):
        io.boxset_from_doc({"kind": "boxset", "dim": 1,
                            "boxes": [[[2.0, 1.0, True, True]]]})


def test_dumps_rejects_nonfinite():
    with pytest.raises(ValueError):
        io.dumps({"kind": "x", "v": float("inf")})


def test_roundtrip_map_helper_identity():
    t1, _ = ex2_1()
    assert io.roundtrip_map(t1) == t1


@pytest.mark.parametrize("name,builder", [
    ("ex2_1.map", lambda: io.map_to_doc(*ex2_1())),
    ("ex2_2.pair", lambda: io.pair_to_doc(*ex2_2())),
    ("ex4_1_n2.econ", lambda: economy_to_doc(ex4_1(2))),
    ("radner_toy.econ", lambda: info_economy_to_doc(radner_toy())),
])
def test_shipped_documents_match_builders(name, builder):
    """The bundled documents must stay regenerable from the gallery."""
    shipped = json.loads((EXAMPLES / name).read_text())
    assert shipped == builder()
    from importlib import resources
    packaged = resources.files("boxcorr").joinpath("data", name).read_text()
    assert json.loads(packaged) == builder()


def test_save_and_load(tmp_path):
    t1, d = ex2_1()
    doc = io.map_to_doc(t1, d)
    path = tmp_path / "t.map"
    io.save(doc, str(path))
    assert io.load(str(path)) == doc
