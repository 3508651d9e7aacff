"""Scenario files, survey orchestration and reports."""
from .config import CHECKS, RunConfig, ScenarioSpec, load_scenario, spec_from_mapping
from .presets import PRESETS
from .report import emit_report, from_json
from .runner import FibreReportRecord, SurveyReport, build_setup, run_survey

__all__ = ["CHECKS", "PRESETS", "RunConfig", "ScenarioSpec", "load_scenario", "spec_from_mapping",
           "emit_report", "from_json", "FibreReportRecord", "SurveyReport", "build_setup",
           "run_survey"]
