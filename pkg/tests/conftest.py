import itertools

import pytest

from abhomotopy.ab_core import AbAlgebra, algebra_from_dict
from abhomotopy.instances import builtin_instance


@pytest.fixture(scope="session")
def nilpotent_algebra() -> AbAlgebra:
    """u of degree 0 with u^2 = 0, d(u) = v; exercises a nonzero differential."""
    return algebra_from_dict(
        {
            "name": "nilpotent-toy",
            "a": 0,
            "b": -1,
            "generators": [{"id": "u", "degree": 0}, {"id": "v", "degree": 1}],
            "differential": [["u", [["v", 1]]]],
        }
    )


@pytest.fixture(scope="session")
def bracket_algebra() -> AbAlgebra:
    """Three degree-1 generators with [P,R1] = S, [Q,R1] = T, zero product.

    All shifted degrees are even and the shifted bracket degree b - a + 1
    is even too, which makes hand-computed extension values sign-free.
    """
    return algebra_from_dict(
        {
            "name": "bracket-toy",
            "a": 0,
            "b": 1,
            "generators": [
                {"id": "P", "degree": 1},
                {"id": "Q", "degree": 1},
                {"id": "R1", "degree": 1},
                {"id": "S", "degree": 3},
                {"id": "T", "degree": 3},
            ],
            "bracket": [
                ["P", "R1", [["S", 1]]],
                ["R1", "P", [["S", -1]]],
                ["Q", "R1", [["T", 1]]],
                ["R1", "Q", [["T", -1]]],
            ],
        }
    )


@pytest.fixture(scope="session")
def toy_instance():
    return builtin_instance("gerstenhaber-toy")


@pytest.fixture(scope="session")
def poisson_poly_instance():
    return builtin_instance("poisson-polynomial")


def all_degree_words(alphabet: int, max_len: int, degrees=(0, 1, 2)):
    """Words with repetition over a small alphabet, for every degree assignment."""
    out = []
    for assignment in itertools.product(degrees, repeat=alphabet):
        for n in range(1, max_len + 1):
            for pick in itertools.product(range(alphabet), repeat=n):
                out.append((assignment, pick))
    return out
