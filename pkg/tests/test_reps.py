import random

import pytest

import oracles
from crystalcone.cartan import build_cartan
from crystalcone.errors import NotDominant
from crystalcone.reps import freudenthal, weyl_dim

FROZEN = oracles.load()


def test_weyl_dim_examples():
    assert weyl_dim(build_cartan("A", 1), (5,)) == 6
    assert weyl_dim(build_cartan("A", 2), (1, 1)) == 8
    assert weyl_dim(build_cartan("C", 2), (1, 0)) == 4


def test_sl2_string():
    assert dict(freudenthal(build_cartan("A", 1), (2,)).mults) == {(2,): 1, (0,): 1, (-2,): 1}


def test_a2_adjoint_zero_weight():
    assert freudenthal(build_cartan("A", 2), (1, 1)).mults[(0, 0)] == 2


def test_a2_against_gelfand_tsetlin():
    d = build_cartan("A", 2)
    for key, table in FROZEN["gt"].items():
        typ, lam = key.split(":")
        if typ != "A2":
            continue
        lam = tuple(int(x) for x in lam.split(","))
        got = sorted([list(w), m] for w, m in freudenthal(d, lam).mults.items())
        assert got == table
        assert weyl_dim(d, lam) == FROZEN["weyl_dim"][key]


def test_total_is_weyl_dim_random():
    rng = random.Random(3)
    for _ in range(30):
        name = rng.choice([("A", 2), ("C", 2), ("B", 2), ("A", 3)])
        d = build_cartan(*name)
        lam = tuple(rng.randint(0, 3) for _ in range(d.rank))
        assert freudenthal(d, lam).dim == weyl_dim(d, lam)


def test_not_dominant():
    with pytest.raises(NotDominant):
        weyl_dim(build_cartan("A", 2), (-1, 0))
