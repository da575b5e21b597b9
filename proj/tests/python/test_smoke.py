import math

import ballmap

SQUARE = {"polyhedra": [{"vertices": [[0, 0], [1, 0], [0, 1]]}, {"vertices": [[1, 0], [1, 1], [0, 1]]}]}
CONES = {"polyhedra": [{"vertices": [[0, 0], [1, 2], [2, 1]]}, {"vertices": [[0, 0], [-1, 2], [-2, 1]]}]}


def test_brick_roundtrip():
    b = ballmap.build_brick({"family": "cylinder", "n": 2}, samples=2000, img_samples=10000)
    assert b["source_dim"] == 2
    assert b["report"]["violations"]["count"] == 0
    r = ballmap.verify(b, b["set"], samples=2000, img_samples=10000)
    assert r["violations"]["count"] == 0
    assert math.isclose(r["coverage_gap"], b["report"]["coverage_gap"])


def test_evaluate_disc_map():
    b = ballmap.build_brick({"family": "disc"}, samples=500, img_samples=2000)
    (p,) = ballmap.evaluate(b["map"], [[0.6, 0.0]])
    assert math.hypot(*p) <= 1


def test_hexagon_waypoints():
    c = ballmap.hexagon()
    w = c["waypoints"]["waypoints"]
    assert len(w) == 25
    assert all(x["exact"] for x in w)


def test_connectivity():
    assert ballmap.is_connected(SQUARE)
    assert ballmap.walk_order(SQUARE) == [0, 1]
    assert not ballmap.is_connected(CONES)


def test_square_union():
    c = ballmap.build_union(SQUARE, samples=2000, img_samples=20000)
    assert c["source_dim"] == 3
    assert c["report"]["violations"]["count"] == 0
    assert c["report"]["coverage_gap"] < 0.08


def test_plot():
    svg = ballmap.plot_svg({"polyhedra": [{"lo": [0, 0], "hi": [1, 1]}]}, [[0.5, 0.5]])
    assert svg.count("<path") == 4
    assert svg.count("<circle") == 1
