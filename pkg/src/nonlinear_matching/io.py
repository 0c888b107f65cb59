"""JSON instance and result files.

Integers whose magnitude exceeds 2**53 are written as decimal strings so
that JSON consumers with double-precision numbers do not lose digits;
readers accept either form.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from .core import (
    KINDS,
    LINEAR,
    LP_NORM,
    QUADRATIC_DISTANCE,
    TABLE,
    Instance,
    InstanceError,
    Objective,
    make_instance,
)

SAFE_INT = 2**53


def encode_int(v: int):
    return str(v) if abs(v) > SAFE_INT else v


def decode_int(v, where: str) -> int:
    if isinstance(v, bool):
        raise InstanceError(f"{where}: expected an integer, got a boolean")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v.strip())
        except ValueError:
            pass
    raise InstanceError(f"{where}: expected an integer, got {v!r}")


def encode_p(p):
    return "inf" if p == math.inf else p


def encode_value(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _vector(obj: dict, key: str, where: str) -> tuple:
    if key not in obj:
        raise InstanceError(f"{where}.{key}: missing")
    vals = obj[key]
    if not isinstance(vals, list):
        raise InstanceError(f"{where}.{key}: expected a list")
    return tuple(decode_int(v, f"{where}.{key}[{i}]") for i, v in enumerate(vals))


def objective_from_json(obj) -> Objective:
    where = "objective"
    if not isinstance(obj, dict):
        raise InstanceError(f"{where}: expected an object")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise InstanceError(f"{where}.kind: expected one of {', '.join(KINDS)}, got {kind!r}")
    sense = obj.get("sense", "max")
    if sense not in ("max", "min"):
        raise InstanceError(f"{where}.sense: expected 'max' or 'min', got {sense!r}")
    if kind == LP_NORM:
        if "p" not in obj:
            raise InstanceError(f"{where}.p: missing")
        return Objective(LP_NORM, sense=sense, p=obj["p"])
    if kind == QUADRATIC_DISTANCE:
        return Objective(QUADRATIC_DISTANCE, sense=sense, u=_vector(obj, "u", where))
    if kind == LINEAR:
        return Objective(LINEAR, sense=sense, c=_vector(obj, "c", where))
    entries = obj.get("entries")
    if not isinstance(entries, list):
        raise InstanceError(f"{where}.entries: expected a list")
    tab = {}
    for i, e in enumerate(entries):
        if not isinstance(e, dict) or "y" not in e or "value" not in e:
            raise InstanceError(f"{where}.entries[{i}]: expected {{'y': [...], 'value': ...}}")
        y = _vector(e, "y", f"{where}.entries[{i}]")
        try:
            tab[y] = Fraction(str(e["value"]))
        except (ValueError, ZeroDivisionError):
            raise InstanceError(f"{where}.entries[{i}].value: not a rational {e['value']!r}") from None
    default = obj.get("default")
    if default is not None:
        try:
            default = Fraction(str(default))
        except (ValueError, ZeroDivisionError):
            raise InstanceError(f"{where}.default: not a rational {default!r}") from None
    return Objective(TABLE, sense=sense, table=tab, default=default)


def objective_to_json(obj: Objective) -> dict:
    if obj.offset is not None and any(obj.offset):
        raise InstanceError("shifted objectives have no file form")
    out = {"kind": obj.kind, "sense": obj.sense}
    if obj.kind == LP_NORM:
        out["p"] = encode_p(obj.p)
    elif obj.kind == QUADRATIC_DISTANCE:
        out["u"] = [encode_int(v) for v in obj.u]
    elif obj.kind == LINEAR:
        out["c"] = [encode_int(v) for v in obj.c]
    else:
        out["entries"] = [
            {"y": [encode_int(v) for v in y], "value": encode_value(val)}
            for y, val in sorted(obj.table.items())
        ]
        if obj.default is not None:
            out["default"] = encode_value(obj.default)
    return out


def instance_from_json(doc) -> tuple[Instance, Objective | None]:
    if not isinstance(doc, dict):
        raise InstanceError("instance file: expected a JSON object")
    for key in ("n", "d", "weights"):
        if key not in doc:
            raise InstanceError(f"{key}: missing")
    n = decode_int(doc["n"], "n")
    d = decode_int(doc["d"], "d")
    weights = doc["weights"]
    if not isinstance(weights, list):
        raise InstanceError("weights: expected a list of matrices")
    parsed = []
    for k, w in enumerate(weights):
        if not isinstance(w, list):
            raise InstanceError(f"weights[{k}]: expected a matrix")
        mat = []
        for i, row in enumerate(w):
            if not isinstance(row, list):
                raise InstanceError(f"weights[{k}][{i}]: expected a row")
            mat.append([decode_int(v, f"weights[{k}][{i}][{j}]") for j, v in enumerate(row)])
        parsed.append(mat)
    instance = make_instance(n, d, parsed)
    objective = objective_from_json(doc["objective"]) if doc.get("objective") is not None else None
    if objective is not None and objective.dim is not None and objective.dim != d:
        raise InstanceError(f"objective: dimension {objective.dim} does not match d={d}")
    return instance, objective


def instance_to_json(instance: Instance, objective: Objective | None = None, **extra) -> dict:
    doc = {
        "n": instance.n,
        "d": instance.d,
        "weights": [[[encode_int(v) for v in row] for row in w] for w in instance.weights],
    }
    if objective is not None:
        doc["objective"] = objective_to_json(objective)
    doc.update(extra)
    return doc


def dumps(doc) -> str:
    """Canonical serialization: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceError(f"malformed JSON: {e}") from None


def result_to_json(instance: Instance, matching, projection, *, method: str,
                   oracle_queries: int, objective: Objective | None = None,
                   seed=None, **extra) -> dict:
    doc = {
        "matching": matching.one_based(),
        "projection": [encode_int(v) for v in projection],
        "value": None,
        "oracle_queries": oracle_queries,
        "method": method,
    }
    if objective is not None:
        key = objective.value(projection)
        if objective.kind != LP_NORM or objective.p in (1, math.inf):
            doc["value"] = encode_value(key)
        else:
            doc["powered_value"] = encode_value(key)
    if seed is not None:
        doc["seed"] = seed
    doc.update(extra)
    return doc
