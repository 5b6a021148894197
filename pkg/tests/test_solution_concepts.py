import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import exhaustive_counts, pure_utility
from oracles import grid_has_dominator
from spatial_majority.generators import GeneratorConfig, gen_even_pairs, gen_odd_plott
from spatial_majority.model import Ball, InstanceError, Voter, VotingSituation, make_situation
from spatial_majority.solution_concepts import (Budget, CondorcetStatus, antipodal_certificate,
                                                certify_singleton_core, dominates, find_dominator,
                                                is_condorcet_winner, is_in_core, verify_proposition1,
                                                verify_proposition1prime)

WINNER = CondorcetStatus.CERTIFIED_WINNER
NOT_WINNER = CondorcetStatus.CERTIFIED_NOT_WINNER


# dominance ------------------------------------------------------------------

def test_dominance_reflexive_point(square):
    v = dominates(square, (0.3, 0.1), (0.3, 0.1))
    assert not v.dominates and v.indifferent_count == 4 and v.coalition is None


def test_dominance_square_axis(square):
    v = dominates(square, (0, 0), (0.5, 0))
    assert exhaustive_counts(square, (0, 0), (0.5, 0)) == (3, 1, 0)
    assert v.dominates and v.prefer_x_count == 3
    assert list(v.coalition) == [1, 2, 3]


def test_dominance_square_diagonal(square):
    v = dominates(square, (0, 0), (0.25, 0.25))
    assert exhaustive_counts(square, (0, 0), (0.25, 0.25))[:2] == (2, 2)
    assert not v.dominates and (v.prefer_x_count, v.prefer_y_count) == (2, 2)


def test_dominance_rejects_outside(square):
    with pytest.raises(InstanceError):
        dominates(square, (0, 0), (1.5, 0))


def test_counts_sum_and_threshold(rng):
    sit = make_situation(rng.uniform(-1, 1, (7, 2)))
    for x, y in rng.uniform(-1, 1, (200, 2, 2)):
        v = dominates(sit, x, y)
        assert v.prefer_x_count + v.prefer_y_count + v.indifferent_count == 7
        assert v.dominates == (v.prefer_x_count >= sit.majority)
        assert (v.prefer_x_count, v.prefer_y_count, v.indifferent_count) == exhaustive_counts(sit, x, y)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**31 - 1))
def test_dominance_asymmetric_and_irreflexive(n, seed):
    r = np.random.default_rng(seed)
    sit = make_situation(r.uniform(-1, 1, (n, 2)))
    x, y = r.uniform(-1, 1, (2, 2))
    assert not (dominates(sit, x, y).dominates and dominates(sit, y, x).dominates)
    assert not dominates(sit, x, x).dominates


# core -------------------------------------------------------------------------

def test_core_square_origin(square):
    assert is_in_core(square, (0, 0)).in_core
    assert not grid_has_dominator(square, (0, 0))


def test_core_square_shifted(square):
    v = is_in_core(square, (0.1, 0))
    assert not v.in_core and v.positive_count == 3
    np.testing.assert_allclose(v.violating_direction, [-1, 0], atol=1e-9)


def test_core_two_coincident():
    sit = make_situation([(0.2, 0.1), (0.2, 0.1)])
    assert is_in_core(sit, (0.2, 0.1)).in_core


def test_core_generic_triangle():
    sit = make_situation([(1, 0), (0, 1), (-1, -1)])
    v = is_in_core(sit, (0, 0))
    assert not v.in_core and v.positive_count == 2
    g = np.array([[2, 0], [0, 2], [-2, -2]], dtype=float)
    assert int((g @ v.violating_direction > 0).sum()) == 2


def test_core_rejects_boundary(square):
    with pytest.raises(InstanceError):
        is_in_core(square, (1, 0))


def test_core_one_dimensional_median():
    sit = make_situation([(-0.5,), (0.1,), (0.7,)])
    assert is_in_core(sit, (0.1,)).in_core
    assert not is_in_core(sit, (0.2,)).in_core


def test_core_sampled_in_three_dimensions():
    sit = gen_odd_plott(GeneratorConfig(parity="odd", pair_count=3, dimension=3, seed=1))
    v = is_in_core(sit, (0, 0, 0))
    assert v.in_core and not v.exact
    off = is_in_core(sit, (0.05, 0.02, -0.03))
    assert not off.in_core


def test_criterion_soundness(rng):
    for seed in range(40):
        sit = make_situation(rng.uniform(-0.9, 0.9, (int(rng.integers(3, 8)), 2)))
        z = rng.uniform(-0.8, 0.8, 2)
        v = is_in_core(sit, z)
        if v.in_core:
            continue
        step = z + 1e-4 * sit.space.diameter * v.violating_direction
        better = sum(pure_utility(w.ideal, w.metric, step) > pure_utility(w.ideal, w.metric, z)
                     for w in sit.voters)
        assert better >= v.positive_count > sit.size / 2


def test_criterion_with_anisotropic_metrics():
    sit = gen_even_pairs(GeneratorConfig(pair_count=3, seed=4, anisotropy=0.8))
    assert is_in_core(sit, (0, 0)).in_core
    assert find_dominator(sit, (0, 0)) is None
    v = is_in_core(sit, (0.2, -0.1))
    assert not v.in_core
    assert find_dominator(sit, (0.2, -0.1)) is not None


# condorcet ----------------------------------------------------------------------

def test_condorcet_square(square):
    v = is_condorcet_winner(square, (0, 0))
    assert v.status is NOT_WINNER
    assert not dominates(square, (0, 0), v.witness).dominates
    assert v.line is not None and v.lines_used >= 1


def test_condorcet_plott(plott3):
    v = is_condorcet_winner(plott3, (0, 0))
    assert v.status is WINNER and v.certificate == "antipodal-pairs"


def test_condorcet_unanimity():
    sit = make_situation([(0.3, -0.2), (0.3, -0.2)])
    v = is_condorcet_winner(sit, (0.3, -0.2))
    assert v.status is WINNER and v.certificate == "unanimity"


def test_condorcet_even_two_at_centre():
    sit = gen_even_pairs(GeneratorConfig(pair_count=3, seed=2, ideals_at_z=2))
    assert antipodal_certificate(sit, (0, 0)) == "antipodal-pairs"
    assert is_condorcet_winner(sit, (0, 0)).status is WINNER


def test_condorcet_challenges_falsify_odd_non_core():
    sit = make_situation([(1, 0), (0, 1), (-1, -1)])
    v = is_condorcet_winner(sit, (0, 0), Budget(lines=0, challenges=2000))
    assert v.status is NOT_WINNER
    assert not dominates(sit, (0, 0), v.witness).dominates


def test_condorcet_not_falsified_without_budget():
    sit = make_situation([(1, 0), (0, 1), (-1, -1)])
    v = is_condorcet_winner(sit, (0, 0), Budget(lines=0, challenges=0))
    assert v.status is CondorcetStatus.NOT_FALSIFIED


def test_certificate_requires_shared_metric():
    m = np.diag([2.0, 1.0])
    sit = VotingSituation(Ball([0, 0], 2), (Voter([0, 0]), Voter([1, 0], m), Voter([-1, 0])))
    assert antipodal_certificate(sit, (0, 0)) is None


def test_certificate_claim_holds_on_samples(rng):
    for seed in range(10):
        sit = gen_odd_plott(GeneratorConfig(parity="odd", pair_count=1 + seed % 4, seed=seed,
                                            anisotropy=0.7))
        assert antipodal_certificate(sit, (0, 0)) == "antipodal-pairs"
        for y in rng.uniform(-1, 1, (300, 2)):
            assert exhaustive_counts(sit, (0, 0), y)[0] >= sit.majority


# even / odd harnesses -------------------------------------------------------------

def test_even_check_square(square):
    rep = verify_proposition1(square, (0, 0))
    assert rep.assumptions_met and rep.falsified
    px, py, _ = exhaustive_counts(square, (0, 0), rep.witness)
    assert px <= 2


def test_even_check_two_ideals_at_z():
    sit = make_situation([(0, 0), (0, 0), (1, 0), (-1, 0)])
    rep = verify_proposition1(sit, (0, 0))
    assert not rep.assumptions_met and rep.failed_clause == "more than one ideal at z"


def test_even_check_odd(plott3):
    rep = verify_proposition1(plott3, (0, 0))
    assert rep.failed_clause == "|N| odd"


def test_even_check_not_in_core(square):
    assert verify_proposition1(square, (0.1, 0)).failed_clause == "z not in core"
    assert verify_proposition1(square, (1, 0)).failed_clause == "z not interior"


def test_even_check_non_singleton_core():
    sit = make_situation([(0.5, 0), (-0.5, 0)])
    rep = verify_proposition1(sit, (0, 0))
    assert rep.failed_clause == "core not singleton on grid"


def test_odd_check_plott(plott3):
    rep = verify_proposition1prime(plott3, (0, 0), challenges=10_000)
    assert rep.passed and rep.failures == 0 and rep.certificate == "antipodal-pairs"


def test_odd_check_generic_triangle():
    rep = verify_proposition1prime(make_situation([(1, 0), (0, 1), (-1, -1)]), (0, 0))
    assert not rep.passed and rep.failed_clause == "z not in core"
    assert rep.core.violating_direction is not None


def test_odd_check_single_voter():
    rep = verify_proposition1prime(make_situation([(0.2, 0.4)]), (0.2, 0.4), challenges=500)
    assert rep.passed and rep.certificate == "unanimity"


def test_odd_check_parity(square):
    with pytest.raises(InstanceError, match="parity"):
        verify_proposition1prime(square, (0, 0))


def test_odd_interior_core_has_centre_ideal(rng):
    # random odd instances: whenever the exact planar test certifies z, an ideal sits at z
    hits = 0
    for _ in range(300):
        n = int(rng.choice([3, 5, 7]))
        sit = make_situation(np.round(rng.uniform(-0.9, 0.9, (n, 2)), 1))
        for z in sit.ideals[:2]:
            if sit.is_interior(z) and is_in_core(sit, z).in_core:
                hits += 1
                assert sit.ideals_near(z)
        z = rng.uniform(-0.9, 0.9, 2)
        if is_in_core(sit, z).in_core:
            assert sit.ideals_near(z)
    assert hits > 0


def test_singleton_oracle_two_voters():
    same = make_situation([(0, 0), (0, 0)])
    assert certify_singleton_core(same, (0, 0)).singleton
    apart = make_situation([(-0.5, 0), (0.5, 0)])
    rep = certify_singleton_core(apart, (0, 0))
    assert not rep.singleton
    # the undominated grid points lie on the segment between the ideals
    assert np.all(np.abs(rep.undominated[:, 1]) < 1e-12)
    assert np.all(np.abs(rep.undominated[:, 0]) <= 0.5 + 1e-12)


def test_even_generator_refuses_single_direction():
    with pytest.raises(InstanceError, match=">= 2 directions"):
        gen_even_pairs(GeneratorConfig(pair_count=1))


def test_single_pair_core_is_a_segment():
    # the refused construction really has a non-singleton core
    sit = make_situation([(0.6, 0.0), (-0.6, 0.0)])
    assert not certify_singleton_core(sit, (0, 0)).singleton
    assert is_in_core(sit, (0.3, 0.0)).in_core


def test_dominator_in_thin_wedge():
    # win set near z is a wedge of about 0.05 degrees; the coarse stencil misses it
    sit = make_situation([(0.7613421626788538, -0.46533132931337645), (-0.7613421626788538, 0.46533132931337645),
                          (-0.3074258354371376, -0.6677159641969529), (0.3074258354371376, 0.6677159641969529)])
    z = np.array([-0.0020940655302952183, 0.0029232241993555237])
    assert not is_in_core(sit, z).in_core
    d = find_dominator(sit, z)
    assert d is not None
    assert exhaustive_counts(sit, d, z)[0] >= sit.majority
