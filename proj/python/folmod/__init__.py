"""Exact resolution and divisorial/logarithmic models of plane foliations."""

import json

try:
    from . import _folmod
except ImportError:  # running against a plain build tree
    import _folmod

ParseError = _folmod.ParseError

classify = _folmod.classify
dual_graph_dot = _folmod.dual_graph_dot
dicritical_witness = _folmod.dicritical_witness


def resolve(form, equations=(), max_depth=64, tower_cap=64):
    """Resolution report for a 1-form expression, as a dict."""
    return json.loads(
        _folmod.resolve_json(form, list(equations), max_depth, tower_cap)
    )


def model(form, equations=(), max_depth=64, tower_cap=64):
    """Divisorial model report for a 1-form expression, as a dict."""
    return json.loads(
        _folmod.model_json(form, list(equations), max_depth, tower_cap)
    )


def reduce_list(polynomials, max_depth=64):
    """Monomialization report for a list of polynomial expressions."""
    return json.loads(_folmod.reduce_list_json(list(polynomials), max_depth))


__all__ = [
    "ParseError",
    "classify",
    "resolve",
    "model",
    "reduce_list",
    "dual_graph_dot",
    "dicritical_witness",
]
