import json

import pytest

from app.errors import InvalidInput
from app.mutation import PRESETS
from app.repcore import context, kronecker_module
from app.utils import (
    ObjectSpecParser,
    SpecNormalizer,
    object_from_root,
    one_based,
    parse_vector,
    resolve_quiver,
)


@pytest.fixture
def normalizer():
    return SpecNormalizer()


@pytest.fixture
def kronecker_parser():
    return ObjectSpecParser(context(PRESETS["kronecker"]))


def test_normalize_synonyms(normalizer):
    assert normalizer.normalize("shifted:1") == "SP:1"
    assert normalizer.normalize("projective : 2") == "P:2"
    assert normalizer.normalize("kron:w:1") == "kronecker:w:1"
    assert normalizer.normalize("sp:1 + simple:2") == "SP:1+S:2"
    assert normalizer.normalize("generic:(1, 1)") == "root:1,1"


def test_normalize_rejects_empty(normalizer):
    with pytest.raises(InvalidInput):
        normalizer.normalize("   ")


def test_parse_vector():
    assert parse_vector("1,2") == [1, 2]
    assert parse_vector("3 4") == [3, 4]
    with pytest.raises(InvalidInput):
        parse_vector("1,a")


def test_one_based():
    assert one_based([1, 3], 3) == [0, 2]
    with pytest.raises(InvalidInput):
        one_based([0], 3)
    with pytest.raises(InvalidInput):
        one_based([4], 3, "direction")


def test_parse_kronecker_objects(kronecker_parser):
    w1 = kronecker_parser.parse("kronecker:W:1")
    assert w1.module.dims == (1, 1)
    assert w1.label == "W1"
    assert kronecker_parser.parse("kronecker:U:2").module_dims == (2, 3)
    assert kronecker_parser.parse("kronecker:W:1:0,1").module.at(2).maps[1] == ((1,),)


def test_parse_sums(kronecker_parser):
    x = kronecker_parser.parse("SP:1 + SP:2 + kronecker:V:0")
    assert x.shifted == (0, 1)
    assert x.module_dims == (1, 0)


def test_parse_projectives_and_injectives():
    parser = ObjectSpecParser(context(PRESETS["a3"]))
    assert parser.parse("P:1").module_dims == (1, 1, 1)
    assert parser.parse("I:2").module_dims == (1, 1, 0)
    assert parser.parse("S:3").module_dims == (0, 0, 1)
    assert parser.parse("root:0,1,1").module_dims == (0, 1, 1)


def test_parse_errors(kronecker_parser):
    with pytest.raises(InvalidInput):
        kronecker_parser.parse("SP:3")
    with pytest.raises(InvalidInput):
        kronecker_parser.parse("Q:1")
    with pytest.raises(InvalidInput):
        kronecker_parser.parse("root:1")
    with pytest.raises(InvalidInput):
        ObjectSpecParser(context(PRESETS["a2"])).parse("kronecker:U:1")


def test_parse_representation_file(tmp_path, kronecker_parser):
    path = tmp_path / "w2.json"
    path.write_text(json.dumps(kronecker_module("W", 2).serialize()))
    x = kronecker_parser.parse(f"file:{path}")
    assert x.module_dims == (2, 2)


def test_object_from_root():
    x = object_from_root(context(PRESETS["a2"]), [1, 1])
    assert x.module_dims == (1, 1)
    assert not x.shifted


def test_resolve_quiver(tmp_path):
    assert resolve_quiver("kronecker") == PRESETS["kronecker"]
    path = tmp_path / "a2.json"
    path.write_text(json.dumps({"n": 2, "arrows": [[1, 2]]}))
    assert resolve_quiver(path=str(path)) == PRESETS["a2"]
    with pytest.raises(InvalidInput):
        resolve_quiver()
    with pytest.raises(InvalidInput):
        resolve_quiver("a2", str(path))
