import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sumsetgrowth.errors import BoxTooSmall
from sumsetgrowth.instances import random_instance
from sumsetgrowth.semigroup import cyclic, integers
from sumsetgrowth.series import (
    multiply_one_minus,
    numerator,
    rational_form_check,
    series_from_array,
    tail_from_numerator,
    to_series,
)
from sumsetgrowth.sumset import growth_table, integer_problem, make_problem


def test_to_series_examples():
    s = to_series(growth_table(integer_problem([0], [0, 3, 5]), 4))
    assert list(s.coeffs) == [1, 3, 6, 10, 15]
    s = to_series(growth_table(integer_problem([0], [0]), 5))
    assert list(s.coeffs) == [1] * 6
    p = make_problem(integers(2), [(0, 0)], [[(0, 0), (1, 0), (0, 1)]])
    assert to_series(growth_table(p, 3)).coeffs.shape == (4,)


def test_numerator_interval():
    s = to_series(growth_table(integer_problem([0], [0, 1]), 10))
    once = numerator(s, (1,))
    assert not once.terminated and once.support()[-1] == ((10,), 1)
    rep = numerator(s, (2,))
    assert rep.support() == [((0,), 1)]
    assert rep.terminated and rep.beta == (0,)


def test_numerator_three_five():
    s = to_series(growth_table(integer_problem([0], [0, 3, 5]), 20))
    rep = numerator(s, (3,))
    # P(z) = 1 - z^5, from direct convolution of the enumerated table
    assert rep.support() == [((0,), 1), ((5,), -1)]
    assert rep.degree_box == (5,) and rep.margin == (15,)
    assert rep.terminated and not rep.anomalies


def test_numerator_box_too_small():
    s = to_series(growth_table(integer_problem([0], [0, 3, 5]), 1))
    with pytest.raises(BoxTooSmall):
        numerator(s, (3,))
    with pytest.raises(BoxTooSmall):
        numerator(series_from_array(np.empty((0,), dtype=object)), (1,))


def test_rational_form_three_five():
    out = rational_form_check(integer_problem([0], [0, 3, 5]), (20,))
    assert out["terminated"] and out["beta"] == [0]
    assert out["tail_agrees"] and out["tail_checked"] == 15
    assert out["fit"]["fit"]["polynomial"] == "5*h - 5"


def test_rational_form_constant():
    out = rational_form_check(integer_problem([0, 7], [0]), (10,))
    assert out["numerator"]["terms"] == [{"exponent": [0], "coefficient": "2"}]
    assert out["beta"] == [0]


def test_rational_form_cyclic():
    p = make_problem(cyclic(12), [0], [[0, 4, 6]])
    out = rational_form_check(p, (12,))
    assert out["terminated"] and out["tail_agrees"]
    # gamma = 1, 3, 5, 6, 6, ... times (1 - z)^3
    assert [t["coefficient"] for t in out["numerator"]["terms"]] == ["1", "-1", "-1", "1"]


def test_pure_power_numerator_is_one():
    # (h+1)(h+2)/2 = C(h+2, 2): the triangle in Z^2 has k = 3
    p = make_problem(integers(2), [(0, 0)], [[(0, 0), (1, 0), (0, 1)]])
    rep = numerator(to_series(growth_table(p, 12)), (3,))
    assert rep.support() == [((0,), 1)]
    # product of such in two directions
    q = make_problem(integers(4), [(0, 0, 0, 0)], [
        [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0)],
        [(0, 0, 0, 0), (0, 0, 1, 0)],
    ])
    rep = numerator(to_series(growth_table(q, (6, 6))), (3, 2))
    assert rep.support() == [((0, 0), 1)]


def test_directions_commute():
    p = integer_problem([0, 1], [0, 2, 5], [0, 1, 3])
    c = to_series(growth_table(p, (6, 6))).coeffs
    a = multiply_one_minus(multiply_one_minus(c, 0, 3), 1, 3)
    b = multiply_one_minus(multiply_one_minus(c, 1, 3), 0, 3)
    assert (a == b).all()


@settings(max_examples=50, deadline=None)
@given(
    x=st.lists(st.integers(-50, 50), min_size=4, max_size=8),
    data=st.data(),
    k=st.integers(1, 3),
)
def test_linearity(x, data, k):
    y = data.draw(st.lists(st.integers(-50, 50), min_size=len(x), max_size=len(x)))
    sx, sy = series_from_array(x), series_from_array(y)
    lhs = numerator(sx + sy, (k,)).coeffs
    rhs = numerator(sx, (k,)).coeffs + numerator(sy, (k,)).coeffs
    assert list(lhs) == list(rhs)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**9), family=st.sampled_from(["n0", "z2", "cyclic", "table"]))
def test_beta_and_reconstruction(seed, family):
    p = random_instance(random.Random(seed), family, max_r=2).problem
    box = tuple(k + 4 for k in p.k)
    table = growth_table(p, box)
    rep = numerator(to_series(table), p.k)
    assert rep.beta == (0,) * p.r
    assert rep.coeffs[rep.beta] != 0 and not rep.anomalies
    # F = P / prod (1 - z_i)^{k_i} holds coefficientwise on the whole box
    for h in table.points():
        assert tail_from_numerator(rep, h) == table.gamma[h]
