"""Python interface to the 2v2 target-defense game simulator."""

import json as _json

from ._tdg import (  # noqa: F401
    Error,
    ParseError,
    ValidationError,
    apollonius,
    assess,
    capture_point,
    capture_point_velocity,
    run_scenario_json,
    solve_lbap,
)


def run(scenario, mode=""):
    """Run a scenario (dict or JSON text). Returns (summary dict, trace CSV text)."""
    text = scenario if isinstance(scenario, str) else _json.dumps(scenario)
    summary, trace = run_scenario_json(text, mode)
    return _json.loads(summary), trace
