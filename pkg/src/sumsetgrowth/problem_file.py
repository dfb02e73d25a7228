"""JSON problem files.

Example::

    {
      "name": "three-five",
      "semigroup": "N0",
      "B": [0],
      "A": [[0, 3, 5]]
    }

``semigroup`` is either a shorthand string (``"N0"``, ``"Z"``, ``"Z^2"``,
``"N0^3"``, ``"Z/12"``) or an object::

    {"kind": "product", "components": ["Z", {"mod": 12}]}
    {"kind": "table", "table": [[0, 1], [1, 0]], "identity": 0,
     "adjoin_identity": false}

Elements of one-component products may be written as bare ints; otherwise
as int lists. ``"nonnegative": true`` (implied by the N0 shorthands) requires
every coordinate of every element to be >= 0.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ProblemError, SpecError, ElementError
from .semigroup import (
    FreeInteger,
    Modular,
    SemigroupSpec,
    canonicalize,
    product_spec,
    table_spec,
)
from .sumset import Problem
from .semigroup import ElementSet

_SHORTHAND = re.compile(r"^(N0|Z)(?:\^(\d+))?$|^Z/(\d+)$")


@dataclass
class LoadedProblem:
    problem: Problem
    nonnegative: bool = False
    metadata: dict = field(default_factory=dict)

    @property
    def is_integer(self) -> bool:
        spec = self.problem.spec
        return not spec.is_table and spec.moduli == (0,)


def _parse_semigroup(raw, loc="semigroup") -> tuple:
    """Return (spec, nonnegative)."""
    if isinstance(raw, str):
        m = _SHORTHAND.match(raw.strip())
        if not m:
            raise ProblemError(f"unknown semigroup shorthand {raw!r}", loc)
        if m.group(3):
            mod = int(m.group(3))
            return _wrap(lambda: product_spec(Modular(mod)), loc), False
        d = int(m.group(2) or 1)
        if d < 1:
            raise ProblemError("dimension must be >= 1", loc)
        return product_spec(*[FreeInteger()] * d), m.group(1) == "N0"
    if not isinstance(raw, dict):
        raise ProblemError("semigroup must be a string or an object", loc)
    kind = raw.get("kind")
    if kind == "product":
        comps = raw.get("components")
        if not isinstance(comps, list) or not comps:
            raise ProblemError("product needs a nonempty 'components' list", f"{loc}.components")
        out = []
        for i, c in enumerate(comps):
            where = f"{loc}.components[{i}]"
            if c in ("Z", "N0"):
                out.append(FreeInteger())
            elif isinstance(c, dict) and "mod" in c:
                out.append(Modular(_int(c["mod"], where + ".mod")))
            elif isinstance(c, int) and not isinstance(c, bool):
                out.append(Modular(c))
            else:
                raise ProblemError(f"bad component {c!r}", where)
        return _wrap(lambda: product_spec(*out), loc), bool(raw.get("nonnegative", False))
    if kind == "table":
        table = raw.get("table")
        if not isinstance(table, list) or not all(isinstance(row, list) for row in table):
            raise ProblemError("table must be a list of lists", f"{loc}.table")
        rows = [[_int(v, f"{loc}.table[{i}][{j}]") for j, v in enumerate(row)]
                for i, row in enumerate(table)]
        ident = _int(raw.get("identity", 0), f"{loc}.identity")
        adjoin = bool(raw.get("adjoin_identity", False))
        return _wrap(lambda: table_spec(rows, ident, adjoin=adjoin), loc), False
    raise ProblemError(f"unknown semigroup kind {kind!r}", f"{loc}.kind")


def _wrap(build, loc):
    try:
        return build()
    except SpecError as exc:
        raise ProblemError(str(exc), loc) from exc


def _int(v, loc) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ProblemError(f"expected an integer, got {v!r}", loc)
    return v


def _parse_set(spec: SemigroupSpec, raw, loc, nonnegative) -> ElementSet:
    if not isinstance(raw, list):
        raise ProblemError("expected a list of elements", loc)
    if not raw:
        raise ProblemError("set must be nonempty", loc)
    out = set()
    for j, x in enumerate(raw):
        where = f"{loc}[{j}]"
        if isinstance(x, list):
            coords = [_int(v, where) for v in x]
        else:
            coords = _int(x, where)
        if nonnegative and any(v < 0 for v in ([coords] if isinstance(coords, int) else coords)):
            raise ProblemError("N0 problems need nonnegative elements", where)
        try:
            out.add(canonicalize(spec, coords))
        except ElementError as exc:
            raise ProblemError(str(exc), where) from exc
    return ElementSet(spec, frozenset(out))


def parse_problem(data: dict) -> LoadedProblem:
    if not isinstance(data, dict):
        raise ProblemError("problem file must contain a JSON object", "$")
    for key in ("semigroup", "B", "A"):
        if key not in data:
            raise ProblemError(f"missing key {key!r}", "$")
    spec, nonneg = _parse_semigroup(data["semigroup"])
    nonneg = nonneg or bool(data.get("nonnegative", False))
    B = _parse_set(spec, data["B"], "B", nonneg)
    A = data["A"]
    if not isinstance(A, list) or not A:
        raise ProblemError("A must be a nonempty list of sets", "A")
    summands = tuple(_parse_set(spec, a, f"A[{i}]", nonneg) for i, a in enumerate(A))
    meta = {k: data[k] for k in ("name", "notes") if k in data}
    return LoadedProblem(Problem(spec, B, summands, str(data.get("name", ""))), nonneg, meta)


def load_problem(path) -> LoadedProblem:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}") from exc
    return parse_problem(data)


def problem_to_dict(p: Problem, nonnegative=False) -> dict:
    spec = p.spec
    if spec.is_table:
        sg = {"kind": "table", "table": [list(r) for r in spec.table],
              "identity": spec.identity_index}
    else:
        comps = ["Z" if m == 0 else {"mod": m} for m in spec.moduli]
        sg = {"kind": "product", "components": comps, "nonnegative": nonnegative}

    def enc(S):
        if spec.is_table:
            return S.sorted()
        if spec.arity == 1:
            return [x[0] for x in S.sorted()]
        return [list(x) for x in S.sorted()]

    out = {"semigroup": sg, "B": enc(p.base), "A": [enc(a) for a in p.summands]}
    if p.name:
        out["name"] = p.name
    return out
