"""Scenario files (YAML or JSON) and run configuration.

A scenario looks like::

    field: zeta5              # preset name, or {modulus: [1, 1, 1, 1, 1]}
    alpha: search             # or power-basis coefficients of a norm-one generator
    xi: search                # or power-basis coefficients of an element of K0 in K
    d: 2
    height: 3                 # and/or explicit classes
    classes: [[1, 0, 0, 0, 1]]
    checks: [all]
    precision_cap: 4096
    rho_s: 18                 # Picard number of the base surface (default 22 - r)

Rationals are integers or "p/q" strings; floats are rejected.
"""
import os
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import yaml

from ..errors import InvalidInput
from ..exactalg.rational import rational
from .presets import PRESETS, preset_modulus

CHECKS = ("cm", "picard", "equator", "period")
FORMATS = ("json", "text", "csv")
PRECISION_ENV = "TWISTORCM_PRECISION_CAP"


@dataclass
class ScenarioSpec:
    modulus: Tuple
    field_name: str
    alpha: Optional[Tuple] = None          # None: search
    xi: Optional[Tuple] = None             # None: search
    d: int = 1
    height: Optional[int] = None
    classes: Tuple[Tuple, ...] = ()
    checks: Tuple[str, ...] = CHECKS
    precision_cap: Optional[int] = None
    rho_s: Optional[int] = None

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1


@dataclass
class RunConfig:
    workers: int = 1
    output_format: str = "json"
    output_path: Optional[str] = None
    seed: int = 0
    timings: bool = False

    def __post_init__(self):
        if self.workers < 1:
            raise InvalidInput("workers: must be at least 1")
        if self.output_format not in FORMATS:
            raise InvalidInput(f"format: unknown {self.output_format!r}; expected one of {FORMATS}")


def parse_rational(value, where: str):
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidInput(f"{where}: {value!r} is not an exact rational (use an integer or 'p/q')")
    if isinstance(value, int):
        return rational(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                p, q = text.split("/")
                p, q = int(p), int(q)
                if q == 0:
                    raise InvalidInput(f"{where}: zero denominator in {value!r}")
                return rational(p) / q
            return rational(int(text))
        except ValueError:
            pass
    raise InvalidInput(f"{where}: cannot parse {value!r} as a rational")


def _rational_list(values, where: str):
    if not isinstance(values, (list, tuple)) or not values:
        raise InvalidInput(f"{where}: expected a non-empty list")
    return tuple(parse_rational(v, f"{where}[{i}]") for i, v in enumerate(values))


def _positive_int(value, where: str, allow_zero: bool = False):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidInput(f"{where}: expected an integer, got {value!r}")
    if value < 0 or (value == 0 and not allow_zero):
        raise InvalidInput(f"{where}: must be {'non-negative' if allow_zero else 'positive'}, got {value}")
    return value


def spec_from_mapping(data) -> ScenarioSpec:
    if not isinstance(data, dict):
        raise InvalidInput("scenario: top level must be a mapping")
    known = {"field", "alpha", "xi", "d", "height", "classes", "checks", "precision_cap", "rho_s"}
    extra = set(data) - known
    if extra:
        raise InvalidInput(f"scenario: unknown field(s) {sorted(extra)}")
    if "field" not in data:
        raise InvalidInput("field: missing")
    fld = data["field"]
    if isinstance(fld, str):
        modulus, name = tuple(rational(c) for c in preset_modulus(fld)), fld
    elif isinstance(fld, dict) and "modulus" in fld:
        modulus = _rational_list(fld["modulus"], "field.modulus")
        name = str(fld.get("name", "custom"))
    else:
        raise InvalidInput(f"field: expected a preset name ({', '.join(PRESETS)}) or {{modulus: [...]}}")
    r = len(modulus) - 1

    def element(key):
        v = data.get(key, "search")
        if v == "search":
            return None
        vals = _rational_list(v, key)
        if len(vals) > r:
            raise InvalidInput(f"{key}: at most {r} coefficients for a degree-{r} field")
        return vals
    if "d" not in data:
        raise InvalidInput("d: missing")
    d = _positive_int(data["d"], "d")
    height = data.get("height")
    if height is not None:
        height = _positive_int(height, "height", allow_zero=True)
    classes = []
    for i, c in enumerate(data.get("classes") or []):
        vec = _rational_list(c, f"classes[{i}]")
        if len(vec) != r + 1:
            raise InvalidInput(f"classes[{i}]: expected {r + 1} coordinates, got {len(vec)}")
        if not any(vec):
            raise InvalidInput(f"classes[{i}]: zero class")
        classes.append(vec)
    if height is None and not classes:
        raise InvalidInput("height: either a height bound or explicit classes is required")
    checks = data.get("checks", ["all"])
    if isinstance(checks, str):
        checks = [checks]
    chosen = []
    for c in checks:
        if c == "all":
            chosen.extend(CHECKS)
        elif c in CHECKS:
            chosen.append(c)
        else:
            raise InvalidInput(f"checks: unknown check {c!r}; expected all or one of {CHECKS}")
    cap = data.get("precision_cap")
    if cap is not None:
        cap = _positive_int(cap, "precision_cap")
    rho_s = data.get("rho_s")
    if rho_s is not None:
        rho_s = _positive_int(rho_s, "rho_s")
    return ScenarioSpec(modulus, name, element("alpha"), element("xi"), d, height,
                        tuple(classes), tuple(c for c in CHECKS if c in chosen), cap, rho_s)


def load_scenario(path) -> ScenarioSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInput(f"scenario: cannot read {path}: {exc.strerror}") from None
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise InvalidInput(f"scenario: parse error{where}: {getattr(exc, 'problem', exc)}") from None
    return spec_from_mapping(data)


def precision_cap_from_env() -> Optional[int]:
    raw = os.environ.get(PRECISION_ENV)
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise InvalidInput(f"{PRECISION_ENV}: expected an integer number of bits, got {raw!r}") from None
