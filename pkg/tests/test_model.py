import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spatial_majority.model import (Ball, Box, Coalition, InstanceError, Voter, VotingSituation,
                                    dump_instance, evaluate_utility, gradient, in_upper_contour,
                                    load_instance, make_situation, situation_from_dict)


def test_utility_examples():
    assert evaluate_utility(Voter([1, 0]), [1, 0]) == 0.0
    assert evaluate_utility(Voter([1, 0]), [0, 0]) == -1.0
    assert evaluate_utility(Voter([1, 0], np.diag([2.0, 1.0])), [0, 1]) == -3.0


def test_gradient_examples():
    np.testing.assert_array_equal(gradient(Voter([1, 0]), [1, 0]), [0, 0])
    np.testing.assert_array_equal(gradient(Voter([1, 0]), [0, 0]), [2, 0])


def test_dimension_mismatch():
    v = Voter([1, 0])
    for f in (lambda: evaluate_utility(v, [1, 0, 0]), lambda: gradient(v, [1]),
              lambda: in_upper_contour(v, [0, 0], [0, 0, 0])):
        with pytest.raises(InstanceError):
            f()


def _random_spd(rng, k):
    a = rng.standard_normal((k, k))
    m = a @ a.T + 0.1 * np.eye(k)
    return (m + m.T) / 2


def test_gradient_matches_central_differences(rng):
    h = 1e-5
    for _ in range(200):
        k = int(rng.integers(1, 5))
        v = Voter(rng.uniform(-1, 1, k), _random_spd(rng, k))
        x = rng.uniform(-1, 1, k)
        fd = np.array([(evaluate_utility(v, x + h * e) - evaluate_utility(v, x - h * e)) / (2 * h)
                       for e in np.eye(k)])
        np.testing.assert_allclose(gradient(v, x), fd, atol=1e-6, rtol=0)


def test_upper_contour_examples():
    v = Voter([0, 0])
    assert in_upper_contour(v, [0.3, 0.2], [0.3, 0.2])
    assert in_upper_contour(v, [1, 0], [0, 0.5])
    assert not in_upper_contour(v, [0, 0.5], [1, 0])


def test_unique_maximum_at_ideal(rng):
    v = Voter([0.2, -0.3], _random_spd(rng, 2))
    top = evaluate_utility(v, v.ideal)
    for x in rng.uniform(-1, 1, (1000, 2)):
        if not np.array_equal(x, v.ideal):
            assert evaluate_utility(v, x) < top


def test_strict_concavity(rng):
    for _ in range(500):
        v = Voter(rng.uniform(-1, 1, 3), _random_spd(rng, 3))
        x, y = rng.uniform(-1, 1, (2, 3))
        if np.linalg.norm(x - y) < 1e-3:
            continue
        lam = rng.uniform(0.05, 0.95)
        mid = evaluate_utility(v, lam * x + (1 - lam) * y)
        chord = lam * evaluate_utility(v, x) + (1 - lam) * evaluate_utility(v, y)
        assert mid - chord > 1e-12


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=6, max_size=6))
def test_upper_contour_mutual_iff_equal(vals):
    v = Voter(vals[:2])
    b, c = vals[2:4], vals[4:6]
    both = in_upper_contour(v, b, c) and in_upper_contour(v, c, b)
    assert both == (evaluate_utility(v, b) == evaluate_utility(v, c))


def test_voter_rejects_bad_metric():
    with pytest.raises(InstanceError, match="symmetric"):
        Voter([0, 0], [[1, 0.5], [0, 1]])
    with pytest.raises(InstanceError, match="positive definite"):
        Voter([0, 0], [[1, 0], [0, -1]])
    with pytest.raises(InstanceError):
        Voter([0, 0], np.eye(3))


def test_space_invariants(rng):
    with pytest.raises(InstanceError):
        Box([0, 0], [1, 0])
    with pytest.raises(InstanceError):
        Ball([0, 0], 0.0)
    for space in (Box.cube(3), Ball([0.5, 0, 0], 0.7)):
        for p in rng.uniform(-1.5, 1.5, (500, 3)):
            if space.is_interior(p):
                assert space.contains(p)


def test_contains_many_matches_contains(rng):
    for space in (Box([-1, 0], [2, 1]), Ball([0, 0], 1.0)):
        pts = rng.uniform(-1.5, 2.5, (300, 2))
        np.testing.assert_array_equal(space.contains_many(pts), [space.contains(p) for p in pts])


def test_situation_derived_quantities():
    for n in range(1, 10):
        sit = make_situation([(0.0, 0.0)] * n)
        assert sit.majority > n / 2 and sit.majority - 1 <= n / 2
        assert sit.half == n // 2
        assert sit.is_even == (n % 2 == 0)


def test_situation_rejects_ideal_outside():
    with pytest.raises(InstanceError, match="voter 1"):
        make_situation([(0, 0), (1.5, 0)])


def test_coalition_invariants():
    assert list(Coalition((0, 2, 5))) == [0, 2, 5]
    with pytest.raises(InstanceError):
        Coalition((2, 1))
    with pytest.raises(InstanceError):
        Coalition((1, 1))


def test_instance_roundtrip(tmp_path):
    sit = VotingSituation(Ball([0, 0], 2.0), (Voter([1, 0], np.diag([2.0, 1.0])), Voter([0, 1])))
    path = tmp_path / "inst.json"
    path.write_text(dump_instance(sit))
    back = load_instance(path)
    assert dump_instance(back) == dump_instance(sit)
    np.testing.assert_array_equal(back.voters[0].metric, np.diag([2.0, 1.0]))


@pytest.mark.parametrize("doc, msg", [
    ({"dimension": 2, "space": {"type": "box", "lower": [-1, -1], "upper": [1, 1]},
      "voters": [{"ideal": [0, 0]}, {"ideal": [2, 0]}]}, "voter 1"),
    ({"dimension": 2, "space": {"type": "box", "lower": [-1, -1], "upper": [1, 1]},
      "voters": [{"ideal": [0, 0], "metric": [[1, 2], [2, 1]]}]}, "voter 0"),
    ({"dimension": 3, "space": {"type": "box", "lower": [-1, -1], "upper": [1, 1]},
      "voters": [{"ideal": [0, 0]}]}, "dimension"),
    ({"dimension": 2, "space": {"type": "hexagon"}, "voters": []}, "unknown space"),
    ({"dimension": 2, "space": {"type": "ball", "center": [0, 0], "radius": 1}, "voters": []}, "at least one"),
    ({"space": {"type": "ball", "center": [0, 0], "radius": 1}, "voters": []}, "missing field"),
])
def test_loader_reports_first_violation(doc, msg):
    with pytest.raises(InstanceError, match=msg):
        situation_from_dict(json.loads(json.dumps(doc)))
