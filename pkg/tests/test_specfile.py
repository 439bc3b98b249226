import json
from fractions import Fraction

import pytest

from wabrep.catalog import build_module, default_catalog
from wabrep.errors import SpecFileError
from wabrep.scalar import INFINITY, parse_scalar, sym
from wabrep.specfile import (catalog_text, default_catalog_text, dump_specs, load_catalog,
                             load_specs, loads_specs, parse_value, record_from_dict)
from wabrep.verifier import check_module_window


def one(record):
    return json.dumps({"schema": 1, "modules": [record]})


def test_shipped_catalog_is_current():
    assert catalog_text() == default_catalog_text()
    assert len(load_catalog()) == 25


def test_round_trip_is_exact():
    text = catalog_text()
    assert dump_specs(loads_specs(text)) == text


def test_round_trip_through_file(tmp_path):
    specs = [build_module("A", mu=Fraction(1, 2)), build_module("VirA", gamma=INFINITY),
             build_module("Abar_periodic", a=Fraction(1, 3), p=3)]
    path = tmp_path / "m.json"
    path.write_text(dump_specs(specs))
    again = load_specs(path)
    assert dump_specs(again) == path.read_text()
    assert again[0].spec.mu == parse_scalar("1/2")
    assert again[1].spec.gamma is INFINITY
    assert again[2].spec.p == 3


def test_parse_value():
    assert parse_value("mu", "sym") == sym("mu")
    assert parse_value("gamma", "inf") is INFINITY
    assert parse_value("a", 2) == 2
    assert parse_value("lam", "mu + 1") == sym("mu") + 1
    with pytest.raises(SpecFileError):
        parse_value("mu", "inf")
    with pytest.raises(SpecFileError):
        parse_value("mu", True)
    with pytest.raises(SpecFileError):
        parse_value("mu", "1/0")
    with pytest.raises(SpecFileError):
        parse_value("mu", "((")


def test_overrides_replace_file_values():
    recs = loads_specs(one({"family": "A", "params": {"mu": "3"}}), {"mu": "5", "b": "0"})
    spec = recs[0].spec
    assert spec.mu == parse_scalar("5") and spec.algebra.b.is_zero()


@pytest.mark.parametrize("bad", [
    "{", "[]", json.dumps({"schema": 2, "modules": []}), json.dumps({"schema": 1}),
    one({"params": {}}), one({"family": "A", "params": {"zeta": "1"}}),
    one({"family": "A", "layers": [0]}), one({"family": "A", "p": "3"}),
    one({"family": "A", "perturb": {"generator": "X", "index": 1, "source": [0, 0]}}),
    one({"family": "A", "perturb": {"generator": "L", "index": 1}}),
    one({"family": "A", "perturb": {"generator": "L", "index": 1, "source": [0]}}),
    one(7),
])
def test_malformed_files_raise(bad):
    with pytest.raises(SpecFileError):
        loads_specs(bad)


def test_missing_file():
    with pytest.raises(SpecFileError):
        load_specs("/nonexistent/specs.json")


def test_perturbation_record_breaks_module():
    rec = record_from_dict({"family": "B", "perturb": {
        "generator": "W", "index": 1, "source": [0, 0], "delta": "1", "target": [1, 1]}})
    assert check_module_window(rec.spec, 2, 2).passed
    assert not check_module_window(rec.module(), 2, 2).passed
    assert dump_specs([rec]) == dump_specs(loads_specs(dump_specs([rec])))
    assert "perturb" in json.loads(dump_specs([rec]))["modules"][0]


def test_every_default_spec_round_trips_individually():
    for spec in default_catalog():
        text = dump_specs([spec])
        assert dump_specs(loads_specs(text)) == text
