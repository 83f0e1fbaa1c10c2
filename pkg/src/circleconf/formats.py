"""JSON encodings for configurations, paths and tree text helpers.

Rationals are written as strings produced by ``str(Fraction)``: ``"1/6"``, ``"-3/10"``,
``"0"``. Integers and such strings are both accepted on input.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import ParseError
from .geometry import Circle, LabeledConfiguration
from .motion import MotionPath


def rat(x: Fraction) -> str:
    return str(Fraction(x))


def parse_rat(value: Any, where: str = "") -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"expected an exact rational (string 'p/q' or integer) at {where}, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ParseError(f"bad rational {value!r} at {where}") from None


def config_to_json(c: LabeledConfiguration) -> dict:
    return {"circles": [{"label": i, "cx": rat(x.cx), "cy": rat(x.cy), "r": rat(x.r)} for i, x in c.items()]}


def config_from_json(data: Any, check: bool = True) -> LabeledConfiguration:
    if not isinstance(data, dict) or not isinstance(data.get("circles"), list):
        raise ParseError('a configuration is an object {"circles": [...]}')
    entries = data["circles"]
    by_label: dict[int, tuple] = {}
    for k, e in enumerate(entries):
        where = f"circles[{k}]"
        if not isinstance(e, dict):
            raise ParseError(f"{where} is not an object")
        label = e.get("label", k + 1)
        if not isinstance(label, int) or isinstance(label, bool):
            raise ParseError(f"{where}.label must be an integer")
        if label in by_label:
            raise ParseError(f"duplicate label {label} at {where}")
        try:
            by_label[label] = (parse_rat(e["cx"], where + ".cx"), parse_rat(e["cy"], where + ".cy"),
                               parse_rat(e["r"], where + ".r"))
        except KeyError as exc:
            raise ParseError(f"{where} lacks field {exc.args[0]!r}") from None
    if sorted(by_label) != list(range(1, len(by_label) + 1)):
        raise ParseError(f"labels must be 1..{len(by_label)}")
    triples = [by_label[i] for i in range(1, len(by_label) + 1)]
    if check:
        from .geometry import validate_configuration
        from .errors import InvalidConfigurationError
        violations = validate_configuration(triples)
        if violations:
            raise InvalidConfigurationError("; ".join(map(str, violations)), violations=violations)
    return LabeledConfiguration([Circle(*t) for t in triples], check=False)


def path_to_json(p: MotionPath) -> dict:
    return {"keyframes": [{"t": rat(t), "config": config_to_json(c)} for t, c in p.keyframes]}


def path_from_json(data: Any) -> MotionPath:
    if not isinstance(data, dict) or not isinstance(data.get("keyframes"), list):
        raise ParseError('a path is an object {"keyframes": [...]}')
    kfs = []
    for k, e in enumerate(data["keyframes"]):
        if not isinstance(e, dict) or "t" not in e or "config" not in e:
            raise ParseError(f'keyframes[{k}] must have "t" and "config"')
        kfs.append((parse_rat(e["t"], f"keyframes[{k}].t"), config_from_json(e["config"], check=False)))
    return MotionPath(kfs)


def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {source}: {exc.msg} at line {exc.lineno} column {exc.colno}",
                         exc.pos) from None


def load_file(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text, path)
