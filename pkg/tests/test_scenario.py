import json

import pytest

from twistorcm.errors import InvalidInput
from twistorcm.scenario import (RunConfig, emit_report, from_json, load_scenario, run_survey,
                                spec_from_mapping)
from twistorcm.scenario.report import CSV_COLUMNS


def gaussian(**extra):
    return spec_from_mapping({"field": "gaussian", "d": 2, "height": 2, **extra})


# -- parsing ------------------------------------------------------------------

def test_defaults_and_checks():
    spec = gaussian()
    assert spec.checks == ("cm", "picard", "equator", "period")
    assert spec.alpha is None and spec.xi is None
    assert spec_from_mapping({"field": "zeta5", "d": 1, "height": 1, "checks": "picard"}).checks == ("picard",)


@pytest.mark.parametrize("data,msg", [
    ({"d": 1, "height": 1}, "field"),
    ({"field": "nope", "d": 1, "height": 1}, "unknown preset"),
    ({"field": "gaussian", "height": 1}, "d: missing"),
    ({"field": "gaussian", "d": 0, "height": 1}, "positive"),
    ({"field": "gaussian", "d": 1.5, "height": 1}, "integer"),
    ({"field": "gaussian", "d": 1}, "height"),
    ({"field": "gaussian", "d": 1, "height": -1}, "non-negative"),
    ({"field": "gaussian", "d": 1, "height": 1, "checks": ["x"]}, "unknown check"),
    ({"field": "gaussian", "d": 1, "height": 1, "colour": 3}, "unknown field"),
    ({"field": "gaussian", "d": 1, "classes": [[1, 0]]}, "3 coordinates"),
    ({"field": "gaussian", "d": 1, "classes": [[0, 0, 0]]}, "zero class"),
    ({"field": "gaussian", "d": 1, "classes": [[0.5, 0, 1]]}, "exact rational"),
    ({"field": {"modulus": [1, 0, 1]}, "d": 1, "height": 1, "alpha": [1, 2, 3]}, "at most 2"),
])
def test_invalid_scenarios(data, msg):
    with pytest.raises(InvalidInput, match=msg):
        spec_from_mapping(data)


def test_yaml_error_reports_line(tmp_path):
    p = tmp_path / "s.yaml"
    p.write_text("field: gaussian\nd: [1,\nheight: 1\n")
    with pytest.raises(InvalidInput, match="line"):
        load_scenario(p)
    with pytest.raises(InvalidInput, match="cannot read"):
        load_scenario(tmp_path / "missing.yaml")


def test_custom_field_and_rational_classes(tmp_path):
    p = tmp_path / "s.yaml"
    p.write_text('field: {modulus: [1, 1, 1]}\nd: 1\nclasses: [["1/2", 0, 1]]\nalpha: [0, 1]\nxi: search\n')
    spec = load_scenario(p)
    report = run_survey(spec)
    assert [r.vector for r in report.records] == [["1/2", "0", "1"]]
    assert report.records[0].fibre_cm is True


# -- running --------------------------------------------------------------------

def test_gaussian_survey_is_clean():
    report = run_survey(gaussian())
    s = report.summary
    assert report.exit_code == 0 and s["alarms"] == 0 and s["errors"] == 0
    assert s["generic_fibres_cm"] == s["generic_fibres_checked"] > 0
    assert s["equator_fibres_cm"] == s["equator_fibres_checked"] > 0
    assert s["max_rho_off_equator"] == 1
    for rec in report.records:
        if rec.location == "generic":
            assert all(v["relations_hold"] for v in rec.period.values())
            assert rec.discriminant_signs == [-1]


def test_degree_four_fibres_raise_alarms():
    # generic fibres of a degree-4 structure do not have CM; every one is reported
    spec = spec_from_mapping({"field": "zeta5", "d": 1, "classes": [[0, 0, 1, 1, 1], [0, 0, 1, 1, 0]]})
    report = run_survey(spec)
    gen, eq = report.records
    assert gen.fibre_cm is False and gen.alarms
    assert eq.equator["cm_verdict"] is False and not eq.alarms and eq.rho == 2
    assert report.exit_code == 1


def test_height_zero_is_empty():
    report = run_survey(spec_from_mapping({"field": "gaussian", "d": 1, "height": 0}))
    assert report.records == [] and report.exit_code == 0


def test_non_positive_class_is_an_in_band_error():
    spec = spec_from_mapping({"field": "zeta5", "d": 1, "classes": [[1, 0, 0, 0, 0]]})
    report = run_survey(spec)
    rec = report.records[0]
    assert rec.norm == "-2"
    assert "ClassNotPositive" in rec.error
    assert report.summary["errors"] == 1 and report.exit_code == 0


def test_json_deterministic_and_worker_independent():
    spec = gaussian()
    one = emit_report(run_survey(spec), "json")
    again = emit_report(run_survey(spec), "json")
    par = emit_report(run_survey(spec, RunConfig(workers=2)), "json")
    assert one == again == par
    back = from_json(one.decode())
    assert emit_report(back, "json") == one


def test_csv_and_text():
    report = run_survey(gaussian())
    lines = emit_report(report, "csv").decode().splitlines()
    assert lines[0].split(",") == ["class_1", "class_2", "class_3", *CSV_COLUMNS]
    assert len(lines) == len(report.records) + 1
    text = emit_report(report, "text").decode()
    assert "alarms: 0" in text and "generic" in text


def test_timings_opt_in():
    assert "timing" not in json.loads(emit_report(run_survey(gaussian()), "json"))["records"][0]
    rep = run_survey(gaussian(), RunConfig(timings=True))
    assert rep.records[0].timing is not None


def test_run_config_validation():
    with pytest.raises(InvalidInput):
        RunConfig(workers=0)
    with pytest.raises(InvalidInput):
        RunConfig(output_format="xml")


def test_seed_changes_search_but_not_verdicts():
    spec = spec_from_mapping({"field": "eisenstein", "d": 1, "height": 1})
    a = run_survey(spec, RunConfig(seed=0))
    b = run_survey(spec, RunConfig(seed=5))
    assert a.summary["generic_fibres_cm"] == a.summary["generic_fibres_checked"]
    assert b.summary["generic_fibres_cm"] == b.summary["generic_fibres_checked"]
