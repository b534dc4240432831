"""Newton polyhedron invariants and smoothing regions for weighted phases.

Every entry point takes a problem document (the same text format the CLI
reads) and returns parsed JSON. Exact quantities arrive as fraction strings
like "4/3"; fit and measurement outputs are floats.
"""

import json as _json

from ._polyrad import (
    analyze_json,
    region_json,
    render_svg,
    sharpness_run,
    slice_json,
    sublevel_run,
)

__all__ = [
    "analyze",
    "region",
    "slice_polygon",
    "render_svg",
    "verify_sublevel",
    "verify_sharpness",
]


def analyze(spec_text):
    """Invariant report: distance, vanishing order, growth exponent, case."""
    return _json.loads(analyze_json(spec_text))


def region(spec_text):
    """Improvement-region polytopes with the bounding plane."""
    return _json.loads(region_json(spec_text))


def slice_polygon(spec_text):
    """Boundedness polygon on the exponent square, plus the excluded line."""
    return _json.loads(slice_json(spec_text))


def verify_sublevel(spec_text):
    """Run the growth sweep configured in the document.

    Returns {"csv": str, "fit": dict}. The fit carries the estimated
    exponent, the log power, and a verdict against the closed form when
    one exists.
    """
    csv, fit = sublevel_run(spec_text)
    return {"csv": csv, "fit": _json.loads(fit)}


def verify_sharpness(spec_text):
    """Run the box-family norm-ratio test configured in the document.

    Returns {"csv": str, "report": dict}.
    """
    csv, report = sharpness_run(spec_text)
    return {"csv": csv, "report": _json.loads(report)}
