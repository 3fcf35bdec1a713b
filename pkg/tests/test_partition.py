import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ssfractal import (
    Caps,
    CollisionPair,
    WeakPartitionSolution,
    canonicalize,
    collision_to_partition,
    expand_collisions,
    four_collision,
    gen_arithmetic,
    has_collision,
    lower_bound,
    multiplicity_dp,
    new_instance,
    weak_partition_enumerate,
    weighted_zero_count_dp,
)
from ssfractal.errors import (
    HypothesisViolated,
    InstanceTooLarge,
    NotACollision,
    SetsNotFree,
    SolutionInstanceMismatch,
    ValidationError,
)

from conftest import random_instances
import oracles

WP = WeakPartitionSolution


def test_enumerate_golden_solutions():
    sols = weak_partition_enumerate(new_instance([1, 2, 3], 4))
    assert {s.y for s in sols} == {(1, 0, 1), (1, 1, -1), (1, -1, -1)}
    assert [s.y for s in sols] == sorted(s.y for s in sols)


def test_enumerate_trivial_and_weighted():
    assert weak_partition_enumerate(new_instance([1], 2)) == []
    sols = weak_partition_enumerate(new_instance([1, 2, 3, 4], 5))
    assert sum(2**s.r for s in sols) == 18


def test_enumerate_includes_one_sided_solutions():
    sols = weak_partition_enumerate(new_instance([1, 4], 5))
    assert [s.y for s in sols] == [(1, 1)]
    assert sols[0].minus == frozenset()


def test_enumerate_cap():
    with pytest.raises(InstanceTooLarge):
        weak_partition_enumerate(new_instance([1] * 17, 5))
    assert len(weak_partition_enumerate(new_instance([1] * 4, 5), caps=Caps(ternary=4))) > 0


def test_enumerate_beyond_kernel_modulus():
    A = 2**61 - 1
    inst = new_instance([1, 2, 3, A - 6], A)
    assert {s.y for s in weak_partition_enumerate(inst)} == set(oracles.canonical_solutions(inst.weights, A))


@pytest.mark.parametrize(
    "weights,modulus,expected", [([1, 2, 3], 4, 4), ([1, 2, 3, 4], 5, 18), ([1], 2, 0)]
)
def test_weighted_zero_count_examples(weights, modulus, expected):
    assert weighted_zero_count_dp(new_instance(weights, modulus)) == expected


@pytest.mark.parametrize("inst", random_instances(150, seed=12, max_s=12, max_modulus=64), ids=str)
def test_dual_method_equality(inst):
    sols = weak_partition_enumerate(inst)
    assert [s.y for s in sols] == oracles.canonical_solutions(inst.weights, inst.modulus)
    assert weighted_zero_count_dp(inst) == sum(2**s.r for s in sols)
    assert weighted_zero_count_dp(inst) == oracles.weighted_zero_count(inst.weights, inst.modulus)


def test_weighted_zero_count_large_s_exact():
    # y solves iff it has an even number of nonzero entries, so the sum is
    # 2^40 * (number of even-size nonempty supports) / 2
    inst = new_instance([2] * 40, 4)
    assert weighted_zero_count_dp(inst) == 2**39 * (2**39 - 1)


def test_lower_bound_examples():
    rep = lower_bound(gen_arithmetic(3, 1))
    assert (rep.rhs, rep.image_size, rep.d0_bound) == (4, 4, 1.0)
    assert rep.holds is True
    rep = lower_bound(gen_arithmetic(4, 1))
    assert rep.rhs == -2 and rep.d0_bound is None
    assert "d0_bound" not in rep.to_dict()
    rep = lower_bound(new_instance([1], 2))
    assert (rep.rhs, rep.image_size) == (2, 2)


@pytest.mark.parametrize("s", range(4, 12))
@pytest.mark.parametrize("a", [1, 2, 5])
def test_arithmetic_progressions_negative(s, a):
    assert lower_bound(gen_arithmetic(s, a)).rhs < 0


@pytest.mark.parametrize("inst", random_instances(200, seed=14, max_s=14, max_modulus=2000), ids=str)
def test_lower_bound_sound(inst):
    rep = lower_bound(inst)
    if rep.rhs > 0:
        assert rep.image_size >= rep.rhs
        assert rep.holds


def test_expand_examples():
    inst = new_instance([1, 2, 3], 4)
    pairs = expand_collisions(WP((1, 0, 1)), inst)
    assert pairs == [((1, 0, 1), (0, 0, 0)), ((1, 1, 1), (0, 1, 0))]
    assert expand_collisions(WP((1, 1, -1)), inst) == [((1, 1, 0), (0, 0, 1))]
    for s in range(2, 9):
        y = (1,) + (0,) * (s - 2) + (1,)
        inst = gen_arithmetic(s, 1)
        pairs = expand_collisions(WP(y), inst)
        assert len(set(pairs)) == 2 ** (s - 2)
        assert all(p.is_collision(inst) for p in pairs)


def test_expand_mismatch():
    with pytest.raises(SolutionInstanceMismatch):
        expand_collisions(WP((1, 1, 1)), new_instance([1, 2, 3], 4))
    with pytest.raises(SolutionInstanceMismatch):
        expand_collisions(WP((1, 0, 1)), new_instance([1, 2, 3, 4], 5))


@pytest.mark.parametrize("inst", random_instances(40, seed=31, max_s=9, max_modulus=40), ids=str)
def test_expand_and_roundtrip(inst):
    table = oracles.image_table(inst.weights, inst.modulus)
    for sol in weak_partition_enumerate(inst):
        pairs = expand_collisions(sol, inst)
        assert len(pairs) == len(set(pairs)) == 2 ** len(sol.free)
        for pair in pairs:
            assert table[pair.x1] == table[pair.x2] and pair.x1 != pair.x2
        back = collision_to_partition(pairs[-1], inst)
        assert back == sol
        assert pairs[-1] in expand_collisions(back, inst)


def test_collision_to_partition_examples():
    inst = new_instance([1, 2, 3], 4)
    assert collision_to_partition(CollisionPair((1, 1, 0), (0, 0, 1)), inst).y == (1, 1, -1)
    assert collision_to_partition(CollisionPair((0, 0, 1), (1, 1, 0)), inst).y == (1, 1, -1)
    assert collision_to_partition(CollisionPair((1, 0, 1), (0, 0, 0)), inst).y == (1, 0, 1)
    with pytest.raises(NotACollision):
        collision_to_partition(CollisionPair((1, 0, 1), (1, 0, 1)), inst)
    with pytest.raises(NotACollision):
        collision_to_partition(CollisionPair((1, 0, 0), (0, 1, 0)), inst)


def test_four_collision_example():
    inst = new_instance([1, 2, 3, 4], 5)
    sol = WP.from_sets(4, {1, 4})
    derived, cls = four_collision(sol, {2, 3}, set(), inst)
    assert derived.y == (0, 1, 1, 0)
    assert (derived.plus, derived.minus) == ({2, 3}, frozenset())
    assert cls.residue == 0 and cls.size == 4
    assert set(cls.members) == {(0, 0, 0, 0), (1, 0, 0, 1), (0, 1, 1, 0), (1, 1, 1, 1)}
    full = [x for x in itertools.product((0, 1), repeat=4) if inst.evaluate(x) == 0]
    assert sorted(full) == list(cls.members)


def test_four_collision_errors():
    inst = new_instance([1, 2, 3, 4], 5)
    sol = WP.from_sets(4, {1, 4})
    with pytest.raises(HypothesisViolated):
        four_collision(sol, {2}, {3}, inst)
    with pytest.raises(HypothesisViolated):
        four_collision(sol, {2}, {2}, inst)
    with pytest.raises(SetsNotFree):
        four_collision(sol, {1, 2}, set(), inst)
    with pytest.raises(SolutionInstanceMismatch):
        four_collision(WP.from_sets(4, {1, 2}), {3}, set(), inst)


def test_has_collision_examples():
    assert has_collision(new_instance([1, 2, 4], 8)) is False
    assert has_collision(new_instance([1, 2, 3], 4)) is True
    assert has_collision(new_instance([1, 2, 3], 4), crosscheck=True)


def test_has_collision_without_dp_table():
    caps = Caps(array=16)
    assert has_collision(new_instance([1, 2, 4, 8], 1000), caps=caps) is False
    assert has_collision(new_instance([1, 2, 3, 8], 1000), caps=caps) is True


@pytest.mark.parametrize("inst", random_instances(100, seed=5, max_s=10, max_modulus=300), ids=str)
def test_has_collision_matches_partitions(inst):
    assert has_collision(inst) == bool(weak_partition_enumerate(inst))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from([-1, 0, 1]), min_size=1, max_size=12).filter(any))
def test_canonicalize_idempotent(y):
    c = canonicalize(y)
    assert canonicalize(c) == c
    assert canonicalize([-v for v in y]) == c
    assert c[next(i for i, v in enumerate(c) if v)] == 1


def test_solution_validation_and_views():
    with pytest.raises(ValidationError):
        WP((0, 0))
    with pytest.raises(ValidationError):
        WP((-1, 1))
    with pytest.raises(ValidationError):
        WP((2, 0))
    with pytest.raises(ValidationError):
        WP.from_sets(3, {1}, {1})
    sol = WP.from_sets(4, {2}, {1, 4})
    assert sol.y == (1, -1, 0, 1)
    assert (sol.plus, sol.minus, sol.r, sol.size, sol.free) == ({1, 4}, {2}, 1, 3, (3,))
    assert tuple(p - m for p, m in zip(sol.y_plus, sol.y_minus)) == sol.y


def test_signed_digit_strings():
    assert str(WP((1, 0, -1))) == "+0-"
    assert WP.parse("++-").y == (1, 1, -1)
    assert WP.parse("+−−").y == (1, -1, -1)
    with pytest.raises(ValidationError):
        WP.parse("+x")
    with pytest.raises(ValidationError):
        WP.parse("-+")
