import json
from fractions import Fraction as F

import numpy as np
import pytest

from merohitchin.algebra.poly import ExactPoly
from merohitchin.serialize import dumps, to_plain


def test_plain_conversion():
    obj = {"q": F(-3, 4), "z": 1 + 2j, "p": ExactPoly([0, F(1, 2)]), "a": np.array([1.5, 2.0]),
           "b": np.bool_(True), "i": np.int64(7)}
    assert to_plain(obj) == {"q": "-3/4", "z": {"re": 1.0, "im": 2.0}, "p": ExactPoly([0, F(1, 2)]).to_json(),
                             "a": [1.5, 2.0], "b": True, "i": 7}


def test_float_format_round_trips():
    x = 0.1 + 0.2
    s = dumps({"x": x, "neg0": -0.0})
    back = json.loads(s)
    assert back["x"] == x and s.count("-0") == 0


def test_rejects_non_finite_and_unknown():
    with pytest.raises(ValueError):
        dumps(float("nan"))
    with pytest.raises(TypeError):
        dumps(object())


def test_stable_output():
    obj = {"b": [1, 2.5, None], "a": {"c": "x"}}
    assert dumps(obj) == dumps(obj)
    assert json.loads(dumps(obj)) == obj
