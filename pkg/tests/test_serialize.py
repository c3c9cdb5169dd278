import json
from fractions import Fraction

from normality_lab.bbp import PRESETS
from normality_lab.numerics import BoundedReal
from normality_lab.serialize import dumps, parse_rational, rational_str, rows_to_csv


def test_rational_round_trip():
    for q in (Fraction(0), Fraction(-3, 7), Fraction(10**40 + 1, 3)):
        assert parse_rational(rational_str(q)) == q


def test_bounded_real_json():
    data = json.loads(dumps(BoundedReal(Fraction(1, 3), Fraction(1, 1024))))
    assert data["mid"] == "1/3" and data["rad"] == "1/1024"


def test_spec_json():
    assert json.loads(dumps(PRESETS["log2-base9"])) == {"base": 9, "p": [6], "q": [-1, 2], "start": 1}


def test_csv():
    assert rows_to_csv(["a", "b"], [(1, Fraction(1, 2))]) == "a,b\n1,1/2\n"
