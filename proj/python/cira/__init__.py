"""Turns conditional requirement sentences into cause-effect graphs and
MC/DC test case descriptions. Results are plain dicts in the wire format
shared with the CLI and the HTTP service."""

import json

from . import _core
from ._core import CiraError

__all__ = [
    "CiraError",
    "__version__",
    "build_graph",
    "classify",
    "generate_suite",
    "label",
    "mcdc_check",
    "render_suite",
    "run_pipeline",
    "tokenize",
]

__version__ = _core.version()


def tokenize(text):
    return json.loads(_core.tokenize(text))


def classify(text):
    return json.loads(_core.classify(text))


def label(text):
    return json.loads(_core.label(text))


def build_graph(text):
    return json.loads(_core.build_graph(text))


def generate_suite(graph):
    """`graph` is a graph dict, or a sentence to run through the pipeline."""
    if isinstance(graph, str):
        graph = build_graph(graph)
    return json.loads(_core.generate_suite(json.dumps(graph)))


def mcdc_check(suite, graph):
    return json.loads(_core.mcdc_check(json.dumps(suite), json.dumps(graph)))


def render_suite(suite, format="table"):
    return _core.render_suite(json.dumps(suite), format)


def run_pipeline(text):
    return json.loads(_core.run_pipeline(text))
