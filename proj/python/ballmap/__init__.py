"""Polynomial images of closed balls: bricks, unions, sampled verification."""

import json

from . import _core


def _s(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def build_brick(spec, samples=10000, img_samples=100000, seed=1):
    return json.loads(_core.build_brick(_s(spec), samples, img_samples, seed))


def build_union(doc, samples=10000, img_samples=100000, seed=1, degree_cap=200):
    return json.loads(_core.build_union(_s(doc), samples, img_samples, seed, degree_cap))


def hexagon(verify=False, samples=10000, img_samples=100000, seed=1):
    return json.loads(_core.hexagon(verify, samples, img_samples, seed))


def verify(map, target, samples=10000, img_samples=100000, tol=1e-9, seed=1):
    return json.loads(_core.verify(_s(map), _s(target), samples, img_samples, tol, seed))


def evaluate(map, points):
    return _core.evaluate(_s(map), [list(p) for p in points])


def is_connected(doc):
    return _core.is_connected(_s(doc))


def walk_order(doc):
    return _core.walk_order(_s(doc))


def plot_svg(target, points=()):
    return _core.plot_svg(_s(target), [list(p) for p in points])
