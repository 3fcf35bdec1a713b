import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ssfractal import new_instance  # noqa: E402


def random_instances(count, seed, max_s, max_modulus, min_s=1):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        s = rng.randint(min_s, max_s)
        modulus = rng.randint(2, max_modulus)
        out.append(new_instance([rng.randint(1, modulus - 1) for _ in range(s)], modulus))
    return out


@pytest.fixture(scope="session")
def small_instances():
    return random_instances(60, seed=11, max_s=9, max_modulus=40)
