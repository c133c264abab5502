"""Problem files: JSON in, validated, normalized, and turned into ring objects.

A problem keeps its polynomials as text until :meth:`Problem.build` is
called, so that ``--char`` can re-read the same data over another field.
"""
from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Optional

import jsonschema

from .errors import ParseError
from .parse import parse_polynomial, parse_ring_names
from .polynomial import PolyRing, Polynomial, format_polynomial, is_prime, MAX_PRIME

PROBLEM_SCHEMA = "resint-problem/1"
ALL_ANALYSES = ("colon", "classify", "kitt", "tau", "certify", "ericci", "layout",
                "hilbert", "koszul", "invariants")


def load_schema(name: str = "problem-1.json") -> dict:
    text = resources.files("resint").joinpath("schemas").joinpath(name).read_text(encoding="utf-8")
    return json.loads(text)


@dataclass
class Problem:
    variables: List[str]
    characteristic: int = 0
    weights: Optional[List[int]] = None
    quotient: List[str] = field(default_factory=list)
    ideal: List[str] = field(default_factory=list)
    minors: Optional[dict] = None               # {"matrix": [[...]], "size": t}
    a: dict = field(default_factory=dict)       # exactly one of generators / matrix / general
    analyses: List[str] = field(default_factory=lambda: list(ALL_ANALYSES))
    limits: Dict[str, int] = field(default_factory=dict)
    options: dict = field(default_factory=dict)
    name: str = ""
    description: str = ""

    # -- derived objects -----------------------------------------------------

    def ring(self) -> PolyRing:
        p = self.characteristic
        if p and (not is_prime(p) or p >= MAX_PRIME):
            raise ParseError(f"characteristic {p} is not a prime below 2^31")
        try:
            return PolyRing(tuple(self.variables), p, tuple(self.weights) if self.weights else None)
        except ValueError as e:
            raise ParseError(str(e)) from None

    def build(self):
        """(ring, quotient polys, I generators) parsed over the stated field."""
        R = self.ring()
        Q = [_poly(s, R, f"ring.quotient[{k}]") for k, s in enumerate(self.quotient)]
        if self.minors is not None:
            from .modules import minors as _minors
            M = self.matrix(self.minors["matrix"], R, "ideal.minors.matrix")
            f = _minors(M, self.minors["size"], R)
        else:
            f = [_poly(s, R, f"ideal[{k}]") for k, s in enumerate(self.ideal)]
        for k, g in enumerate(f):
            _check_degree(g, f"ideal[{k}]")
        return R, Q, f

    @staticmethod
    def matrix(rows, R: PolyRing, where: str) -> List[List[Polynomial]]:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ParseError(f"{where}: rows have different lengths")
        return [[_poly(s, R, f"{where}[{i}][{j}]") for j, s in enumerate(row)]
                for i, row in enumerate(rows)]

    def with_characteristic(self, p: int) -> "Problem":
        out = copy.deepcopy(self)
        out.characteristic = p
        out.ring()
        return out

    # -- serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        d = {"schema": PROBLEM_SCHEMA, "ring": {"variables": list(self.variables),
                                                "characteristic": self.characteristic}}
        if self.name:
            d["name"] = self.name
        if self.description:
            d["description"] = self.description
        if self.weights:
            d["ring"]["weights"] = list(self.weights)
        if self.quotient:
            d["ring"]["quotient"] = list(self.quotient)
        d["ideal"] = {"minors": copy.deepcopy(self.minors)} if self.minors is not None else list(self.ideal)
        if self.a:
            d["a"] = copy.deepcopy(self.a)
        d["analyses"] = list(self.analyses)
        if self.limits:
            d["limits"] = dict(self.limits)
        if self.options:
            d["options"] = copy.deepcopy(self.options)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def normalized(self) -> "Problem":
        """Same problem with every polynomial in canonical printed form."""
        R = self.ring()
        out = copy.deepcopy(self)
        canon = lambda s, where: format_polynomial(_poly(s, R, where))
        out.quotient = [canon(s, f"ring.quotient[{k}]") for k, s in enumerate(self.quotient)]
        if self.minors is None:
            out.ideal = [canon(s, f"ideal[{k}]") for k, s in enumerate(self.ideal)]
        else:
            out.minors["matrix"] = [[canon(s, "ideal.minors.matrix") for s in row]
                                    for row in self.minors["matrix"]]
        if "generators" in self.a:
            out.a["generators"] = [canon(s, f"a.generators[{k}]")
                                   for k, s in enumerate(self.a["generators"])]
        if "matrix" in self.a:
            out.a["matrix"] = [[canon(s, "a.matrix") for s in row] for row in self.a["matrix"]]
        return out


def _poly(text: str, R: PolyRing, where: str) -> Polynomial:
    try:
        return parse_polynomial(text, R)
    except ParseError as e:
        msg = str(e).split(" (line ")[0]
        raise ParseError(f"{where}: {msg}", e.line, e.column) from None
    except ZeroDivisionError as e:
        raise ParseError(f"{where}: {e}") from None


def _check_degree(g: Polynomial, where: str):
    if g.is_zero():
        raise ParseError(f"{where}: generator is zero")
    if g.is_constant():
        raise ParseError(f"{where}: generator must have positive degree")


def parse_problem(text: str) -> Problem:
    """Parse and validate a problem file.  Raises :class:`ParseError` with a position."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.lineno, e.colno) from None
    return problem_from_dict(data)


def problem_from_dict(data) -> Problem:
    try:
        jsonschema.validate(data, load_schema())
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise ParseError(f"{where}: {e.message}") from None
    ring = data["ring"]
    names = parse_ring_names(ring["variables"])
    ideal = data["ideal"]
    pr = Problem(
        variables=names,
        characteristic=ring.get("characteristic", 0),
        weights=ring.get("weights"),
        quotient=list(ring.get("quotient", [])),
        ideal=list(ideal) if isinstance(ideal, list) else [],
        minors=copy.deepcopy(ideal["minors"]) if isinstance(ideal, dict) else None,
        a=copy.deepcopy(data.get("a", {})),
        analyses=list(data.get("analyses", ALL_ANALYSES)),
        limits=dict(data.get("limits", {})),
        options=copy.deepcopy(data.get("options", {})),
        name=data.get("name", ""),
        description=data.get("description", ""),
    )
    if pr.weights is not None and len(pr.weights) != len(names):
        raise ParseError("ring.weights: one weight per variable is required")
    # parse everything once so unknown variables and bad syntax surface here
    R, _Q, f = pr.build()
    if "generators" in pr.a:
        for k, s in enumerate(pr.a["generators"]):
            _check_degree(_poly(s, R, f"a.generators[{k}]"), f"a.generators[{k}]")
    if "matrix" in pr.a:
        M = Problem.matrix(pr.a["matrix"], R, "a.matrix")
        if len(M) != len(f):
            raise ParseError(f"a.matrix: needs {len(f)} rows, one per generator of I")
    if "general" in pr.a:
        g = pr.a["general"]
        if isinstance(g["degree"], list) and len(g["degree"]) != g["count"]:
            raise ParseError("a.general.degree: one degree per requested element")
    return pr


def load_problem(path) -> Problem:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"{path} is not UTF-8 ({e.reason} at byte {e.start})") from None
    return parse_problem(text)
