import json
import math

import pytest
from hypothesis import given, strategies as st

from ssfractal import (
    Caps,
    density,
    family_arithmetic,
    family_explicit,
    gen_arithmetic,
    gen_random_density,
    gen_superincreasing,
    load_instance,
    multiplicity_bruteforce,
    new_instance,
    save_instance,
)
from ssfractal.errors import DensityOverflow, EmptyWeights, ParseError, ValidationError, WeightOutOfRange
from ssfractal.instance import InstanceFamily


def test_new_instance_examples():
    inst = new_instance([1, 2, 3], 4)
    assert (inst.s, inst.modulus, inst.weights) == (3, 4, (1, 2, 3))
    assert new_instance([1], 2).s == 1
    with pytest.raises(WeightOutOfRange):
        new_instance([0, 2], 4)
    with pytest.raises(WeightOutOfRange):
        new_instance([4], 4)
    with pytest.raises(EmptyWeights):
        new_instance([], 4)
    with pytest.raises(ValidationError):
        new_instance([1], 1)


def test_duplicates_allowed():
    assert new_instance([2, 2], 5).weights == (2, 2)


@pytest.mark.parametrize(
    "s,a,weights,modulus",
    [(3, 1, [1, 2, 3], 4), (4, 1, [1, 2, 3, 4], 5), (2, 5, [5, 10], 15)],
)
def test_gen_arithmetic(s, a, weights, modulus):
    inst = gen_arithmetic(s, a)
    assert list(inst.weights) == weights and inst.modulus == modulus


def test_gen_random_density():
    inst = gen_random_density(8, 1.0, 7)
    assert inst.modulus == 256
    assert density(inst) == 1.0
    assert gen_random_density(4, 2.0, 0).modulus == 4
    with pytest.raises(DensityOverflow):
        gen_random_density(200, 1.0, 0, Caps(modulus=2**64))
    assert gen_random_density(12, 1.3, 99) == gen_random_density(12, 1.3, 99)
    assert gen_random_density(12, 1.3, 99) != gen_random_density(12, 1.3, 100)


def test_gen_superincreasing():
    assert gen_superincreasing(3, 0, max_slack=0).weights == (1, 2, 4)
    assert gen_superincreasing(1, 0).weights[0] >= 1
    inst = gen_superincreasing(10, 42)
    w = inst.weights
    assert all(w[i] > sum(w[:i]) for i in range(len(w)))
    assert inst.modulus > sum(w) and inst.modulus > 2**inst.s
    assert set(multiplicity_bruteforce(inst).as_list()) <= {0, 1}
    assert gen_superincreasing(10, 42) == inst


def test_density_examples():
    assert density(new_instance([1, 2, 3], 4)) == 1.5
    assert density(new_instance([1, 2, 3], 8)) == 1.0
    assert density(new_instance([1] * 5, 32)) == 1.0


@given(st.integers(1, 40), st.integers(1, 50))
def test_arithmetic_density_formula(s, a):
    inst = gen_arithmetic(s, a)
    assert density(inst) == s / math.log2((s + 1) * a)


def test_roundtrip(tmp_path):
    inst = new_instance([3, 1, 4, 1, 5], 9, comment="pi digits")
    path = tmp_path / "inst.json"
    save_instance(inst, path)
    again = load_instance(path)
    assert again == inst and again.comment == "pi digits"


def test_load_examples(tmp_path):
    path = tmp_path / "a.json"
    path.write_text('{"modulus":4,"weights":[1,2,3]}')
    inst = load_instance(path)
    assert inst.s == 3 and inst.modulus == 4
    path.write_text('{"modulus":4,"weights":[5]}')
    with pytest.raises(WeightOutOfRange):
        load_instance(path)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ('{"modulus":4,\n "weights":[1,2,}', "line 2"),
        ('{"weights":[1]}', "'modulus'"),
        ('{"modulus":"4","weights":[1]}', "'modulus'"),
        ('{"modulus":4,"weights":[1,true]}', "weights[1]"),
        ('[1,2]', "top level"),
    ],
)
def test_parse_errors_carry_diagnostics(tmp_path, text, fragment):
    path = tmp_path / "bad.json"
    path.write_text(text)
    with pytest.raises(ParseError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        load_instance(path)


def test_family_invariants():
    fam = family_arithmetic(2, range(2, 6))
    assert fam.indices == (2, 3, 4, 5)
    for s, inst in fam:
        assert inst.weights == tuple(2 * j for j in range(1, s + 1)) and inst.modulus == (s + 1) * 2
    with pytest.raises(ValidationError):
        family_explicit([gen_arithmetic(3, 1), gen_arithmetic(3, 1)])
    with pytest.raises(ValidationError):
        InstanceFamily("bogus", {}, (), ())
    replica = family_explicit([gen_arithmetic(3, 1)] * 3, indices=[1, 2, 3])
    assert len(replica) == 3


def test_instance_is_hashable_and_immutable():
    inst = new_instance([1, 2], 5)
    with pytest.raises(AttributeError):
        inst.modulus = 7
    assert {inst: 1}[new_instance([1, 2], 5)] == 1
    assert json.loads(json.dumps(list(inst.weights))) == [1, 2]


def test_max_weight_ratio_is_informational():
    assert new_instance([1, 2, 3], 4).max_weight_ratio == 0.75
    assert new_instance([1], 1000).max_weight_ratio == 0.001
