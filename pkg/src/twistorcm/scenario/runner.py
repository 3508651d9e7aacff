"""Build the structure of a scenario, run the requested checks per class and
collect one record per class."""
import random
import time
from dataclasses import dataclass, field, fields
from typing import List, Optional

from ..errors import (ClassNotPositive, InvalidInput, NotAFieldExtension, TheoremViolation,
                      TwistorCMError)
from ..exactalg import NumberField, compose_extension, set_precision_cap
from ..exactalg.rational import format_rational
from ..hodge import CMField, build_cm_structure, is_cm, norm_one_primitive, search_xi
from .. import periodvalue as pv
from ..twistor import (EQUATOR, GENERIC, POLE, TwistorSetup, check_fibre, classify_class,
                       closed_form_coefficients, equator_analysis, extend_by_polarization,
                       geometric_picard, north_pole, picard_number_at, point_for_class,
                       primitive_classes)
from .config import RunConfig, ScenarioSpec


@dataclass
class FibreReportRecord:
    vector: List[str]
    location: str
    m: str
    norm: str
    rho: Optional[int] = None
    geometric_rho: Optional[int] = None
    fibre_field_minpoly: Optional[List[str]] = None
    gamma: Optional[List[str]] = None
    delta: Optional[List[str]] = None
    discriminant: Optional[List[str]] = None
    discriminant_signs: Optional[List[int]] = None
    fibre_cm: Optional[bool] = None
    period_cm: Optional[bool] = None
    predicted_cm: Optional[bool] = None
    k0_equal: Optional[bool] = None
    two_route: Optional[bool] = None
    criteria_agree: Optional[bool] = None
    conjugate_symmetric: Optional[bool] = None
    equator: Optional[dict] = None
    period: Optional[dict] = None
    alarms: List[str] = field(default_factory=list)
    error: Optional[str] = None
    timing: Optional[float] = None

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if v is None or (f.name == "alarms" and not v):
                continue
            out[f.name] = v
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "FibreReportRecord":
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise InvalidInput(f"record: unknown keys {sorted(unknown)}")
        return cls(**data)


@dataclass
class SurveyReport:
    records: List[FibreReportRecord]
    summary: dict

    @property
    def alarm_count(self) -> int:
        return self.summary["alarms"]

    @property
    def exit_code(self) -> int:
        return 1 if self.alarm_count else 0


def _strings(e):
    return [format_rational(c) for c in e.coeffs]


def build_setup(spec: ScenarioSpec, seed: int = 0) -> TwistorSetup:
    K = NumberField(list(spec.modulus))
    cm = CMField(K, name=spec.field_name)
    rng = random.Random(seed) if seed else None
    alpha = K(list(spec.alpha)) if spec.alpha is not None else norm_one_primitive(cm, rng=rng)
    if spec.xi is not None:
        xi = K(list(spec.xi))
    else:
        xi = search_xi(cm, rng=rng)
    H = build_cm_structure(cm, alpha, xi)
    return extend_by_polarization(H, spec.d)


def scenario_classes(spec: ScenarioSpec, setup: TwistorSetup):
    """Explicit classes first, then admissible primitive classes up to the height bound."""
    seen = set()
    out = []
    for v in spec.classes:
        if v not in seen:
            seen.add(v)
            out.append(classify_class(setup, v))
    if spec.height:
        for v in primitive_classes(setup.r + 1, spec.height):
            cls = classify_class(setup, v)
            if cls.admissible and cls.vector not in seen:
                seen.add(cls.vector)
                out.append(cls)
    return out


def _cm_fields(setup, cls, rec: FibreReportRecord, fib):
    gamma, delta = closed_form_coefficients(setup, cls, fib)
    rec.gamma, rec.delta = _strings(gamma), _strings(delta)
    rec.discriminant = _strings(gamma * gamma - delta * 4)
    try:
        absolute = compose_extension(setup.base.cm.real_field, [delta, gamma], name="omega").field
        rec.fibre_field_minpoly = absolute.modulus.to_strings()
    except NotAFieldExtension:
        rec.fibre_field_minpoly = None


def process_class(setup: TwistorSetup, cls, checks, rho_s: int, timings: bool = False
                  ) -> FibreReportRecord:
    start = time.perf_counter()
    rec = FibreReportRecord([format_rational(x) for x in cls.vector], cls.location,
                            format_rational(cls.m), format_rational(cls.norm))
    try:
        _process(setup, cls, checks, rho_s, rec)
    except TheoremViolation as exc:
        rec.alarms.append(f"{exc}: {exc.diagnostics}" if exc.diagnostics else str(exc))
    except TwistorCMError as exc:
        rec.error = f"{type(exc).__name__}: {exc}"
    if timings:
        rec.timing = round(time.perf_counter() - start, 6)
    return rec


def _process(setup, cls, checks, rho_s, rec):
    r = setup.r
    if not cls.admissible:
        raise ClassNotPositive(f"class not positive (norm {format_rational(cls.norm)})")
    point = None
    if "cm" in checks:
        if cls.location == GENERIC:
            v = check_fibre(setup, cls)
            rec.fibre_cm, rec.period_cm, rec.predicted_cm = v.fibre_cm, v.period_cm, v.predicted_cm
            rec.k0_equal, rec.two_route = v.real_subfield_equal, v.two_route_agreement
            rec.criteria_agree, rec.conjugate_symmetric = v.criteria_agree, v.conjugate_symmetric
            rec.discriminant_signs = list(v.discriminant_signs)
            _cm_fields(setup, cls, rec, v.fibre)
            point = v.fibre.point
            if not v.passed:
                rec.alarms.append(f"fibre verification failed: {v.diagnostics()}")
        elif cls.location == POLE:
            verdict = is_cm(setup.base)
            rec.fibre_cm = rec.period_cm = verdict.verdict
            rec.criteria_agree = True
    if "equator" in checks and cls.location == EQUATOR:
        rep = equator_analysis(setup, cls)
        rec.equator = {
            "cm_verdict": rep.cm_verdict,
            "period_field_degree": rep.period_field_degree,
            "imaginary_span_dim": rep.imaginary_span_dim,
            "minimal_substructure_dim": rep.minimal_substructure_dim,
        }
        rec.rho = rep.picard_number
        expected = r == 2
        if rep.cm_verdict != expected:
            rec.alarms.append(f"equator fibre CM verdict {rep.cm_verdict} (expected {expected})")
        if rep.imaginary_span_dim != r // 2:
            rec.alarms.append(f"imaginary span dimension {rep.imaginary_span_dim} != {r // 2}")
        if r > 2 and rep.period_field_degree <= 2:
            rec.alarms.append(f"equator period field degree {rep.period_field_degree} <= 2")
    if "picard" in checks:
        if rec.rho is None:
            if point is None:
                point = north_pole(setup) if cls.location == POLE else point_for_class(setup, cls)
            rec.rho = picard_number_at(setup, point)
        rec.geometric_rho = geometric_picard(rec.rho, rho_s)
        if rec.rho >= 2 and cls.location != EQUATOR:
            rec.alarms.append(f"Picard number {rec.rho} off the equator")
        if cls.location in (GENERIC, POLE) and rec.rho != 1:
            rec.alarms.append(f"Picard number {rec.rho} at a {cls.location} point (expected 1)")
    if "period" in checks and cls.location == GENERIC:
        period = {}
        for norm in pv.NORMALIZATIONS:
            a, b, c = pv.coefficient_cosets(norm)
            rel = pv.coefficient_relations(a, b, c)
            period[norm] = {"a": a.to_pairs(), "b": b.to_pairs(), "c": c.to_pairs(),
                            "fibre_period_value": pv.fibre_period_value(norm).to_pairs(),
                            "relations_hold": all(rel.values())}
            if not all(rel.values()):
                rec.alarms.append(f"period-value relations fail for {norm}: {rel}")
        rec.period = period


def _run_chunk(setup, classes, checks, rho_s, timings, cap):
    if cap:
        set_precision_cap(cap)
    return [process_class(setup, cls, checks, rho_s, timings) for cls in classes]


def run_survey(spec: ScenarioSpec, config: Optional[RunConfig] = None) -> SurveyReport:
    config = config or RunConfig()
    if spec.precision_cap:
        set_precision_cap(spec.precision_cap)
    setup = build_setup(spec, config.seed)
    H = setup.base
    r = setup.r
    rho_s = spec.rho_s if spec.rho_s is not None else 22 - r
    base_alarms = []
    try:
        if not is_cm(H).verdict:
            base_alarms.append("base structure is not CM")
    except TheoremViolation as exc:
        base_alarms.append(f"base structure: {exc}")
    classes = scenario_classes(spec, setup)
    checks = spec.checks
    if config.workers > 1 and len(classes) > 1:
        from concurrent.futures import ProcessPoolExecutor
        size = -(-len(classes) // config.workers)
        chunks = [classes[i:i + size] for i in range(0, len(classes), size)]
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            parts = pool.map(_run_chunk, [setup] * len(chunks), chunks, [checks] * len(chunks),
                             [rho_s] * len(chunks), [config.timings] * len(chunks),
                             [spec.precision_cap] * len(chunks))
            records = [rec for part in parts for rec in part]
    else:
        records = [process_class(setup, cls, checks, rho_s, config.timings) for cls in classes]
    return SurveyReport(records, _summary(spec, setup, records, base_alarms))


def _count(records, pred):
    return sum(1 for rec in records if pred(rec))


def _summary(spec, setup, records, base_alarms) -> dict:
    H = setup.base
    cm = H.cm
    by_loc = {loc: _count(records, lambda rec, loc=loc: rec.location == loc)
              for loc in (POLE, EQUATOR, GENERIC)}
    generic = [rec for rec in records if rec.location == GENERIC and rec.fibre_cm is not None]
    equ = [rec for rec in records if rec.equator is not None]
    return {
        "structure": {
            "field": spec.field_name,
            "modulus": H.ambient.modulus.to_strings(),
            "degree": setup.r,
            "real_subfield_modulus": cm.real_field.modulus.to_strings(),
            "alpha": _strings(H.alpha),
            "xi": _strings(H.xi),
            "d": setup.d,
            "distinguished_real_place": H.distinguished,
            "base_alarms": base_alarms,
        },
        "checks": list(spec.checks),
        "classes": len(records),
        "by_location": by_loc,
        "errors": _count(records, lambda rec: rec.error is not None),
        "generic_fibres_checked": len(generic),
        "generic_fibres_cm": _count(generic, lambda rec: rec.fibre_cm),
        "generic_two_route_agree": _count(generic, lambda rec: rec.two_route),
        "generic_k0_equal": _count(generic, lambda rec: rec.k0_equal),
        "generic_discriminant_totally_negative": _count(
            generic, lambda rec: all(s < 0 for s in rec.discriminant_signs)),
        "equator_fibres_checked": len(equ),
        "equator_fibres_cm": _count(equ, lambda rec: rec.equator["cm_verdict"]),
        "max_rho_off_equator": max((rec.rho for rec in records
                                    if rec.rho is not None and rec.location != EQUATOR), default=0),
        "alarms": len(base_alarms) + sum(len(rec.alarms) for rec in records),
    }
