"""Python front end to the tropmono core. Polygons are lists of vertices or
{"vertices": [...]} dicts; every call returns the decoded JSON report."""

import json

from . import _tropmono
from ._tropmono import CertificationFailure, InvalidInput

__all__ = ["analyze", "subdivide", "certify", "check_certificate", "snake", "homology", "verdict", "graph",
           "InvalidInput", "CertificationFailure"]


def _poly(p):
    if isinstance(p, dict):
        return json.dumps(p)
    return json.dumps({"vertices": [list(v) for v in p]})


def _csv(x):
    return x if isinstance(x, str) else ",".join(str(int(c)) for c in x)


def analyze(polygon):
    return json.loads(_tropmono.analyze(_poly(polygon)))


def subdivide(polygon, heights=None):
    h = None if heights is None else json.dumps(heights)
    return json.loads(_tropmono.subdivide(_poly(polygon), h))


def certify(polygon, segment):
    """segment: "x1,y1,x2,y2" or ((x1, y1), (x2, y2))"""
    if not isinstance(segment, str):
        segment = ",".join(_csv(p) for p in segment)
    return json.loads(_tropmono.certify(_poly(polygon), segment))


def check_certificate(cert):
    return json.loads(_tropmono.check_certificate(json.dumps(cert)))


def snake(polygon):
    return json.loads(_tropmono.snake(_poly(polygon)))


def homology(polygon, loops):
    return json.loads(_tropmono.homology(_poly(polygon), list(loops)))


def verdict(polygon, all_segments=False):
    return json.loads(_tropmono.verdict(_poly(polygon), all_segments))


def graph(polygon, family, swap=False, **kw):
    points = {k: _csv(v) for k, v in kw.items() if not isinstance(v, int)}
    ints = {k: v for k, v in kw.items() if isinstance(v, int)}
    return json.loads(_tropmono.graph(_poly(polygon), family, points, ints, swap))
