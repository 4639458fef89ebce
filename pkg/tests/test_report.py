import json
import math

import numpy as np
from hypothesis import given, strategies as st

from fourint import report


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_round_trip(x):
    s = report.format_float(x)
    assert float(s) == x
    assert any(c in s for c in ".en")


def test_special_values():
    assert report.format_float(1.0) == "1.0"
    doc = json.loads(report.dumps({"a": math.nan, "b": math.inf, "c": -math.inf}))
    assert doc == {"a": "nan", "b": "inf", "c": "-inf"}


def test_plain_conversions():
    assert report.plain(1 + 2j) == {"re": 1.0, "im": 2.0}
    assert report.plain(np.float64(0.5)) == 0.5
    assert report.plain(np.arange(3)) == [0, 1, 2]


def test_dumps_is_valid_and_deterministic():
    obj = {"z": [1.0, 2.5, 3], "nested": {"v": 0.1 + 0.2j, "s": "text", "t": True, "n": None}}
    a, b = report.dumps(obj), report.dumps(obj)
    assert a == b
    assert json.loads(a)["nested"]["v"] == {"re": 0.1, "im": 0.2}
    assert "0.10000000000000001" in a
