"""JSON text formats for multivectors, generator sets, instances and solutions.

A multivector is an object mapping blade keys to scalar text::

    {"": "1/2", "1,3": "-2"}              real-exact
    {"2": {"re": "1", "im": "-1/3"}}      complex-exact / complex-float

Blade keys list strictly ascending 1-based indices; ``""`` is the identity
blade.  Writers emit keys in canonical order (length, then indices), so
output is byte-stable.  Parse failures raise :class:`ParseError` whose
``where`` names the offending field (and the line for JSON syntax errors).
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from .algebra import CliffordAlgebra, Multivector, blade_key, multi_index
from .errors import CliffordError, ParseError
from .fields import FIELD_NAMES, Field, field_from_name
from .generators import GeneratorSet
from .reynolds import SolveResult

_KEY = re.compile(r"^$|^[1-9][0-9]*(,[1-9][0-9]*)*$")


def parse_blade_key(key: str, n: int, where: str = "") -> int:
    if not isinstance(key, str) or not _KEY.match(key):
        raise ParseError(f"bad blade key {key!r}", where)
    idx = [int(a) for a in key.split(",")] if key else []
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ParseError(f"blade key {key!r} must list strictly ascending indices", where)
    if idx and idx[-1] > n:
        raise ParseError(f"blade key {key!r} exceeds n = {n}", where)
    return multi_index(*idx)


def _scalar_from_text(field: Field, obj: Any, where: str):
    # bare JSON numbers are accepted as a convenience: integers for exact
    # fields, any number for the float field
    if isinstance(obj, bool):
        raise ParseError(f"expected scalar text, got {obj!r}", where)
    if isinstance(obj, int):
        obj = str(obj) if field.exact else repr(float(obj))
    elif isinstance(obj, float):
        if field.exact:
            raise ParseError(f"floats are not allowed in {field.name}, got {obj!r}", where)
        obj = repr(obj)
    try:
        return field.from_text(obj)
    except (CliffordError, ValueError) as exc:
        raise ParseError(str(exc), where) from None


def mv_to_text(u: Multivector) -> Dict[str, Any]:
    field = u.algebra.field
    return {blade_key(m): field.to_text(x) for m, x in u.items()}


def mv_from_text(algebra: CliffordAlgebra, obj: Any, where: str = "multivector") -> Multivector:
    if not isinstance(obj, dict):
        raise ParseError(f"expected an object of blade keys, got {type(obj).__name__}", where)
    coeffs = {}
    for key, value in obj.items():
        loc = f"{where}[{key!r}]"
        m = parse_blade_key(key, algebra.n, loc)
        coeffs[m] = _scalar_from_text(algebra.field, value, loc)
    return algebra.mv(coeffs)


# --- documents ----------------------------------------------------------------

def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", f"{source}:{exc.lineno}:{exc.colno}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def read_json(path: Union[str, Path]) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from None
    return loads(text, str(path))


def write_json(path: Union[str, Path], obj: Any) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def _require(obj: Any, keys: Tuple[str, ...], where: str) -> None:
    if not isinstance(obj, dict):
        raise ParseError(f"expected a JSON object, got {type(obj).__name__}", where)
    missing = [k for k in keys if k not in obj]
    if missing:
        raise ParseError(f"missing field(s) {', '.join(missing)}", where)


def algebra_from_header(obj: Mapping, where: str = "",
                        tolerance: Optional[float] = None) -> CliffordAlgebra:
    _require(obj, ("p", "q", "field"), where)
    p, q = obj["p"], obj["q"]
    for name, v in (("p", p), ("q", q)):
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise ParseError(f"expected a nonnegative integer, got {v!r}", f"{where}.{name}".lstrip("."))
    if obj["field"] not in FIELD_NAMES:
        raise ParseError(f"unknown field {obj['field']!r}; expected one of {', '.join(FIELD_NAMES)}",
                         f"{where}.field".lstrip("."))
    try:
        return CliffordAlgebra(p, q, field_from_name(obj["field"], tolerance))
    except ValueError as exc:
        raise ParseError(str(exc), where or "header") from None


def _gen_list(algebra: CliffordAlgebra, obj: Any, where: str) -> List[Multivector]:
    if not isinstance(obj, list):
        raise ParseError("expected a list of multivectors", where)
    if len(obj) != algebra.n:
        raise ParseError(f"expected {algebra.n} generators, got {len(obj)}", where)
    return [mv_from_text(algebra, g, f"{where}[{a}]") for a, g in enumerate(obj, 1)]


def genset_to_text(S: GeneratorSet) -> Dict[str, Any]:
    alg = S.algebra
    return {"p": alg.p, "q": alg.q, "field": alg.field.name,
            "generators": [mv_to_text(g) for g in S.gens]}


def genset_from_text(obj: Any, tolerance: Optional[float] = None, label: str = "",
                     validate: bool = True) -> GeneratorSet:
    alg = algebra_from_header(obj, tolerance=tolerance)
    _require(obj, ("generators",), "")
    gens = _gen_list(alg, obj["generators"], "generators")
    return GeneratorSet(alg, gens, label=label, validate=validate)


def instance_to_text(gamma: GeneratorSet, beta: GeneratorSet) -> Dict[str, Any]:
    alg = gamma.algebra
    return {"p": alg.p, "q": alg.q, "field": alg.field.name,
            "gamma": [mv_to_text(g) for g in gamma.gens],
            "beta": [mv_to_text(b) for b in beta.gens]}


def instance_from_text(obj: Any, tolerance: Optional[float] = None,
                       validate: bool = True) -> Tuple[GeneratorSet, GeneratorSet]:
    """Parse an instance; with ``validate`` the relations are checked (gamma first)."""
    alg = algebra_from_header(obj, tolerance=tolerance)
    _require(obj, ("gamma", "beta"), "")
    g = _gen_list(alg, obj["gamma"], "gamma")
    b = _gen_list(alg, obj["beta"], "beta")
    return (GeneratorSet(alg, g, label="gamma", validate=validate),
            GeneratorSet(alg, b, label="beta", validate=validate))


def solution_to_text(result: SolveResult) -> Dict[str, Any]:
    keys = [blade_key(m) for m in result.candidate]
    return {"case": result.case,
            "central_factor": mv_to_text(result.central_factor),
            "T": mv_to_text(result.T),
            "residual": result.residual,
            "candidate": keys[0] if len(keys) == 1 else keys}


def solution_from_text(algebra: CliffordAlgebra, obj: Any) -> Dict[str, Any]:
    """Parse a solution file into ``case``, ``central_factor``, ``T``, ``residual``, ``candidate``."""
    _require(obj, ("case", "central_factor", "T"), "")
    case = obj["case"]
    if not (case == "even" or (isinstance(case, int) and not isinstance(case, bool) and 1 <= case <= 6)):
        raise ParseError(f"expected 1..6 or \"even\", got {case!r}", "case")
    residual = obj.get("residual", 0.0)
    if isinstance(residual, bool) or not isinstance(residual, (int, float)):
        raise ParseError(f"expected a number, got {residual!r}", "residual")
    cand = obj.get("candidate", [])
    cand = [cand] if isinstance(cand, str) else cand
    if not isinstance(cand, list) or len(cand) > 2:
        raise ParseError("expected a blade key or a pair of blade keys", "candidate")
    masks = tuple(parse_blade_key(k, algebra.n, f"candidate[{i}]") for i, k in enumerate(cand))
    return {"case": case,
            "central_factor": mv_from_text(algebra, obj["central_factor"], "central_factor"),
            "T": mv_from_text(algebra, obj["T"], "T"),
            "residual": float(residual),
            "candidate": masks}
