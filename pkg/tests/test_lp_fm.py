from fractions import Fraction

from crystalcone import fm
from crystalcone.lp import farkas_certificate, interior_point, is_feasible, solve_lp, verify_farkas


def test_simple_lp():
    res = solve_lp([1, 1], [[-1, 0], [0, -1]], [-1, -2])
    assert res.status == "optimal" and res.value == 3


def test_max_and_unbounded():
    assert solve_lp([1], [[1]], [5], maximize=True).value == 5
    assert solve_lp([1], [[1]], [5]).status == "unbounded"


def test_infeasible_with_certificate():
    a, b = [[1], [-1]], [0, -1]  # x <= 0 and x >= 1
    assert not is_feasible(a, b)
    cert = farkas_certificate(a, b)
    assert verify_farkas(cert, a, b)


def test_feasible_has_no_certificate():
    assert farkas_certificate([[1]], [3]) is None


def test_interior_point_slack():
    p, slack = interior_point([[1, 0], [0, 1], [-1, -1]], [1, 1, 0])
    assert slack > 0
    assert p[0] <= 1 and p[1] <= 1 and -p[0] - p[1] <= 0


def test_normalize_row():
    assert fm.normalize_row((Fraction(1, 2), Fraction(-3, 2), 1)) == (1, -3, 2)


def test_fm_eliminate_triangle():
    rows = [(1, 0, 0), (0, 1, 0), (-1, -1, 4)]
    proj = fm.eliminate(rows, 1, prune=True)
    vals = {r[0]: r[-1] for r in proj if r[1] == 0}
    assert vals[1] == 0 and vals[-1] == 4


def test_prefix_systems_bound_every_coordinate():
    rows = [(1, 0, 0), (0, 1, 0), (-1, -1, 4)]
    systems = fm.prefix_systems(rows, 2)
    assert len(systems) == 2
    assert any(r[0] < 0 for r in systems[0])
