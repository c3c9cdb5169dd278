"""JSON encoding shared by the library and the CLI.

Exact rationals become ``"num/den"`` strings, enclosures become
``{"mid": ..., "rad": ..., "approx": ...}``.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from fractions import Fraction

from .bbp import BbpSpec, RationalFunction
from .numerics import BoundedReal


def rational_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, BoundedReal):
        return {"mid": rational_str(obj.mid), "rad": rational_str(obj.rad), "approx": f"{float(obj.mid):.17g}"}
    if isinstance(obj, BbpSpec):
        return obj.to_dict()
    if isinstance(obj, RationalFunction):
        return {"p": list(obj.p), "q": list(obj.q)}
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2) + "\n"


def rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([rational_str(v) if isinstance(v, Fraction) else v for v in row])
    return buf.getvalue()
