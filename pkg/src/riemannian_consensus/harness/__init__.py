"""Experiment runner, figure suites and command-line entry point."""

from .config import ExperimentConfig, load_config, parse_config_text
from .experiment import (
    CIRCLE_ANGLES_DEG, CircleReport, ExperimentResult, circle_measurements,
    generate_measurements, figure_configs, run_circle_suite, run_experiment,
)
from .svg import line_chart

__all__ = [
    "ExperimentConfig", "load_config", "parse_config_text", "CIRCLE_ANGLES_DEG", "CircleReport",
    "ExperimentResult", "circle_measurements", "generate_measurements", "figure_configs",
    "run_circle_suite", "run_experiment", "line_chart",
]
