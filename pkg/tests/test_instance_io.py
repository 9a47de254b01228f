import glob
import json
import os
import random
from fractions import Fraction

import pytest

from robsat.instance_io import (
    Instance,
    ParseError,
    dumps,
    emit_instance,
    loads,
    parse_instance,
    parse_rational,
)
from robsat.pl_map import CriticalValue, Norm

from helpers import random_complex, random_map

INSTANCE_DIR = os.path.join(os.path.dirname(__file__), "..", "instances")


def shipped_instances():
    return sorted(glob.glob(os.path.join(INSTANCE_DIR, "*.json")))


class TestRationals:
    def test_accepts_exact(self):
        assert parse_rational("3/4") == Fraction(3, 4)
        assert parse_rational("-7") == Fraction(-7)
        assert parse_rational(5) == Fraction(5)

    @pytest.mark.parametrize("bad", ["1.5", "nan", "inf", "1e3", "0x2", "", "1/0x"])
    def test_rejects_non_rationals(self, bad):
        with pytest.raises(ParseError):
            parse_rational(bad)


class TestParsing:
    def test_minimal_single_vertex(self):
        inst = loads(json.dumps({
            "version": 1, "n": 1, "norm": "linf",
            "vertices": [{"id": 0, "f": ["2"]}],
            "simplices": [[0]],
        }))
        assert len(inst.complex) == 1
        assert inst.f.value(0) == (2,)

    def test_float_literal_rejected(self):
        with pytest.raises(ParseError):
            loads(json.dumps({
                "version": 1, "n": 1, "norm": "linf",
                "vertices": [{"id": 0, "f": ["1.5"]}],
                "simplices": [[0]],
            }))

    def test_malformed_json(self):
        with pytest.raises(ParseError):
            loads("{not json")

    def test_vertex_mismatch(self):
        with pytest.raises(ParseError):
            loads(json.dumps({
                "version": 1, "n": 1, "norm": "linf",
                "vertices": [{"id": 0, "f": ["1"]}],
                "simplices": [[0, 1]],
            }))

    def test_sphere_map_needs_a(self):
        with pytest.raises(ParseError):
            loads(json.dumps({
                "version": 1, "n": 2, "norm": "linf",
                "vertices": [{"id": 0}],
                "simplices": [[0]],
                "sphere_map": {"0": 1},
            }))

    def test_antipodal_sphere_map_rejected(self):
        with pytest.raises(ParseError):
            loads(json.dumps({
                "version": 1, "n": 2, "norm": "linf",
                "vertices": [{"id": 0}, {"id": 1}],
                "simplices": [[0, 1]],
                "a_simplices": [[0, 1]],
                "sphere_map": {"0": 1, "1": -1},
            }))

    def test_sqrt_alpha(self):
        inst = loads(json.dumps({
            "version": 1, "n": 1, "norm": "l2",
            "vertices": [{"id": 0, "f": ["2"]}],
            "simplices": [[0]],
            "alpha": {"sqrt": "2"},
        }))
        assert inst.alpha == CriticalValue.sqrt_of(2)


class TestRoundTrip:
    def test_shipped_corpus(self):
        files = shipped_instances()
        files = [f for f in files if not f.endswith("schema.json")]
        assert len(files) >= 10
        for path in files:
            with open(path) as fh:
                text = fh.read()
            inst = loads(text)
            emitted = emit_instance(inst)
            again = parse_instance(json.loads(json.dumps(emitted)))
            assert emit_instance(again) == emitted
            # shipped files are already canonical
            assert json.loads(text) == emitted

    def test_random_corpus(self):
        rng = random.Random(40)
        count = 0
        while count < 15:
            cx = random_complex(rng, max_dim=2, max_vertices=6, n_maximal=3)
            n = rng.randint(1, 3)
            inst = Instance(
                cx, n, rng.choice(list(Norm)),
                f=random_map(rng, cx, n=n),
                alpha=CriticalValue.rat(Fraction(rng.randint(1, 9), rng.randint(1, 4))),
            )
            emitted = emit_instance(inst)
            again = parse_instance(json.loads(dumps(inst)))
            assert emit_instance(again) == emitted
            count += 1


class TestSchema:
    def test_shipped_files_validate(self):
        jsonschema = pytest.importorskip("jsonschema")
        with open(os.path.join(INSTANCE_DIR, "instance.schema.json")) as fh:
            schema = json.load(fh)
        for path in shipped_instances():
            if path.endswith("schema.json"):
                continue
            with open(path) as fh:
                jsonschema.validate(json.load(fh), schema)
