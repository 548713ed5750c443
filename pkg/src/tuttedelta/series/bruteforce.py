"""Forested maps counted one by one, as an oracle for the series engine."""

from __future__ import annotations

import sympy

from ..combmap import enumerate_rooted_maps, underlying_graph
from ..graph import components, enumerate_spanning_forests
from .core import SeriesError, u_sym
from .presets import get_preset


def forest_polynomial(m) -> sympy.Poly:
    """Sum over spanning forests F of u^(cc(F) - 1)."""
    g = underlying_graph(m)
    total = 0
    for f in enumerate_spanning_forests(g):
        total += u_sym ** (components(g, f) - 1)
    return sympy.Poly(total, u_sym)


def brute_force_forested(preset, face_count: int, max_edges: int = 9) -> sympy.Poly:
    """Weighted count of rooted planar maps of a regular class with
    ``face_count`` faces, each weighted by its forest polynomial."""
    if isinstance(preset, str):
        preset = get_preset(preset)
    edges = preset.edges_for_faces(face_count)
    if edges is None:
        raise SeriesError(f"{preset.name} has no maps with {face_count} faces or is not "
                          "a regular class", "unsupported")
    if edges == 0:
        return sympy.Poly(0, u_sym)
    maps = enumerate_rooted_maps(edges, genus=0, degree_filter={preset.regular},
                                 max_edges=max_edges)
    total = sympy.Poly(0, u_sym)
    for m in maps:
        total += forest_polynomial(m)
    return total


def map_count(preset, face_count: int, max_edges: int = 9) -> int:
    if isinstance(preset, str):
        preset = get_preset(preset)
    edges = preset.edges_for_faces(face_count)
    return len(enumerate_rooted_maps(edges, genus=0, degree_filter={preset.regular},
                                     max_edges=max_edges))
