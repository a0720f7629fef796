"""Instance files: a versioned JSON description of an experiment.

Example::

    {
      "version": 1,
      "set": {"lower": [1, 1], "upper": [2, 5]},
      "moves": [[1, 0], [0, 1]],
      "weights": ["1/2", "1/2"],
      "target": "uniform",
      "sample": {"start": [1, 1], "steps": 100000, "seed": 42}
    }

``set`` takes one of three shapes:

* ``{"points": [[...], ...]}`` an explicit point list;
* ``{"matrix": A, "rhs": b}`` the fiber ``{u in N^d : Au = b}``;
* ``{"ineq": {"matrix": G, "rhs": h}, "eq": {"matrix": A, "rhs": b},
  "lower": l, "upper": u}`` a polytope (any nonempty subset of the keys).

Fibers and polytopes accept ``"dilation": i``. ``moves`` is a list of
integer vectors or ``"graver"`` (the Graver basis of the fiber matrix, or of
``"graver_matrix"`` when given). Weights are rationals written as ``"p/q"``
strings, integers or decimals.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import jsonschema

from .basis import MoveDistribution, MoveSet, graver_basis
from .errors import ValidationError
from .lattice import (LatticePointSet, PolytopeSpec, dilate, enumerate_fiber, enumerate_polytope,
                      fiber_spec)

SCHEMA_VERSION = 1

_INT_VEC = {"type": "array", "items": {"type": "integer"}}
_INT_MAT = {"type": "array", "items": _INT_VEC, "minItems": 1}
_RATIONAL = {"oneOf": [{"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+|\.\d+)?\s*$"},
                       {"type": "number"}]}
_BLOCK = {"type": "object", "required": ["matrix", "rhs"], "additionalProperties": False,
          "properties": {"matrix": _INT_MAT, "rhs": _INT_VEC}}

INSTANCE_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "fiberwalk instance",
    "type": "object",
    "required": ["version", "set"],
    "additionalProperties": False,
    "properties": {
        "version": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "set": {
            "oneOf": [
                {"type": "object", "required": ["points"], "additionalProperties": False,
                 "properties": {"points": {"type": "array", "items": _INT_VEC}}},
                {"type": "object", "required": ["matrix", "rhs"], "additionalProperties": False,
                 "properties": {"matrix": _INT_MAT, "rhs": _INT_VEC,
                                "dilation": {"type": "integer", "minimum": 1}}},
                {"type": "object", "additionalProperties": False, "minProperties": 1,
                 "not": {"anyOf": [{"required": ["points"]}, {"required": ["matrix"]}]},
                 "properties": {"ineq": _BLOCK, "eq": _BLOCK, "lower": _INT_VEC, "upper": _INT_VEC,
                                "dilation": {"type": "integer", "minimum": 1}}},
            ]
        },
        "moves": {"oneOf": [{"type": "array", "items": _INT_VEC}, {"const": "graver"}]},
        "graver_matrix": _INT_MAT,
        "weights": {"type": "array", "items": _RATIONAL},
        "target": {"oneOf": [{"const": "uniform"}, {"type": "array", "items": _RATIONAL}]},
        "variants": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0},
                                                 "minItems": 1}},
        "mprime": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
        "cap": {"type": "integer", "minimum": 1},
        "sweep": {
            "type": "object",
            "required": ["kind", "values"],
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["dilation", "rhs", "mu", "weights"]},
                "values": {"type": "array", "minItems": 1},
                "measure": {"enum": ["diameter", "compressed_diameter", "slem", "simple_slem"]},
                "base": _INT_VEC,
                "direction": _INT_VEC,
            },
        },
        "sample": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "start": _INT_VEC,
                "steps": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer", "minimum": 0},
                "burn_in": {"type": "integer", "minimum": 0},
                "thin": {"type": "integer", "minimum": 1},
                "chains": {"type": "integer", "minimum": 1},
                "checkpoints": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            },
        },
    },
}


def parse_rational(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(str(x))
    try:
        return Fraction(x.replace(" ", "") if isinstance(x, str) else x)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ValidationError(f"not a rational number: {x!r}") from exc


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass
class Instance:
    """A validated instance file, kept as raw data plus convenience accessors."""

    data: dict
    source: str | None = None
    _points: LatticePointSet | None = field(default=None, repr=False)
    _moves: MoveSet | None = field(default=None, repr=False)

    @classmethod
    def from_dict(cls, data: dict, source: str | None = None) -> "Instance":
        try:
            jsonschema.validate(data, INSTANCE_SCHEMA)
        except jsonschema.ValidationError as exc:
            where = "/".join(map(str, exc.absolute_path)) or "<root>"
            raise ValidationError(f"instance invalid at {where}: {exc.message}") from None
        return cls(data, source)

    @classmethod
    def load(cls, path: str | Path) -> "Instance":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON ({exc})") from None
        return cls.from_dict(data, str(path))

    def to_dict(self) -> dict:
        return json.loads(json.dumps(self.data))

    # --- the lattice set ------------------------------------------------------
    @property
    def set_kind(self) -> str:
        s = self.data["set"]
        if "points" in s:
            return "points"
        return "fiber" if "matrix" in s else "polytope"

    def polytope(self, dilation: int | None = None, rhs: list[int] | None = None) -> PolytopeSpec:
        """The implicit description.

        ``rhs`` overrides the right-hand side of a fiber, or of the inequality
        block of a polytope.
        """
        s = self.data["set"]
        kind = self.set_kind
        if kind == "points":
            raise ValidationError("an explicit point list has no implicit description")
        if kind == "fiber":
            spec = fiber_spec(s["matrix"], rhs if rhs is not None else s["rhs"])
        else:
            ineq, eq = s.get("ineq"), s.get("eq")
            if rhs is not None:
                if ineq is None:
                    raise ValidationError("rhs sweeps need a fiber or an inequality block")
                ineq = {"matrix": ineq["matrix"], "rhs": rhs}
            spec = PolytopeSpec(
                eq_matrix=eq and eq["matrix"], eq_rhs=eq and eq["rhs"],
                ineq_matrix=ineq and ineq["matrix"], ineq_rhs=ineq and ineq["rhs"],
                lower=s.get("lower"), upper=s.get("upper"))
        i = dilation if dilation is not None else s.get("dilation", 1)
        return spec.scaled(i) if i != 1 else spec

    def points(self, dilation: int | None = None, rhs: list[int] | None = None) -> LatticePointSet:
        if dilation is None and rhs is None and self._points is not None:
            return self._points
        if self.set_kind == "points":
            if dilation is not None or rhs is not None:
                raise ValidationError("explicit point lists cannot be dilated or re-targeted")
            F = LatticePointSet(self.data["set"]["points"])
        elif self.set_kind == "fiber":
            s = self.data["set"]
            i = dilation if dilation is not None else s.get("dilation", 1)
            F = enumerate_fiber(s["matrix"], [i * x for x in (rhs if rhs is not None else s["rhs"])])
        else:
            spec = self.polytope(None if dilation is None else 1, rhs)
            i = dilation if dilation is not None else 1
            F = dilate(spec, i) if i != 1 else enumerate_polytope(spec)
        if dilation is None and rhs is None:
            self._points = F
        return F

    # --- moves, weights, target ----------------------------------------------
    def moves(self, cap: int | None = None) -> MoveSet:
        if self._moves is not None:
            return self._moves
        raw = self.data.get("moves")
        if raw is None:
            raise ValidationError("instance has no moves")
        if raw == "graver":
            A = self.data.get("graver_matrix")
            if A is None:
                if self.set_kind != "fiber":
                    raise ValidationError("'graver' moves need a fiber set or graver_matrix")
                A = self.data["set"]["matrix"]
            G = graver_basis(A, cap=cap or self.data.get("cap", 100_000))
            # one representative per +- pair: the heat-bath walk uses whole lines
            M = MoveSet([g for g in G if _leading_positive(g)])
        else:
            M = MoveSet(raw)
        self._moves = M
        return M

    def move_distribution(self, weights=None) -> MoveDistribution:
        M = self.moves()
        w = weights if weights is not None else self.data.get("weights")
        if w is None:
            return MoveDistribution.uniform(M)
        return MoveDistribution(M, [parse_rational(x) for x in w])

    def target(self) -> list[Fraction] | None:
        """None for uniform, else raw weights indexed like the point set."""
        t = self.data.get("target", "uniform")
        if t == "uniform":
            return None
        return [parse_rational(x) for x in t]

    @property
    def mprime(self) -> list[int] | None:
        return self.data.get("mprime")

    @property
    def sweep(self) -> dict | None:
        return self.data.get("sweep")

    @property
    def sample(self) -> dict:
        return self.data.get("sample", {})


def _leading_positive(v) -> bool:
    return next(x for x in v if x != 0) > 0
