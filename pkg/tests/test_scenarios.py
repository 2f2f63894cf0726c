from fractions import Fraction

import pytest

from mpv import scenarios
from mpv.errors import ConstraintViolated
from mpv.exactring import RingElem
from mpv.scenarios import AMBIENT, L
from mpv.stratconfig import subset, total_class, validate
from mpv.zetapv import functional_equation_check, log_poles, pv

F = Fraction
t = RingElem.var("t")


def test_example34a_builds_pv_zero():
    c = scenarios.build("example34a")
    assert c.alphas() == {"C1": F(-1, 2), "C2": F(-1, 2)}
    assert pv(c).expr == 0


def test_p1points_three():
    c = scenarios.p1points(3, [F(3, 2), F(1, 2), F(-1)])
    assert c.open_strata[subset()] == L({1: 1, 0: -2}, 2)
    for i in ("P1", "P2", "P3"):
        assert c.open_strata[subset(i)] == L({0: 1}, 2)


def test_p2lines_two_is_example34a():
    c = scenarios.p2lines(2, [F(-1, 2), F(-1, 2)])
    assert c == scenarios.example34a()


def test_degree_constraints():
    with pytest.raises(ConstraintViolated):
        scenarios.p1points(2, [F(1), F(1)])
    with pytest.raises(ConstraintViolated):
        scenarios.p2lines(1, [F(-1)])
    with pytest.raises(ConstraintViolated):
        scenarios.p1points(2, [F(0), F(0)])
    with pytest.raises(ConstraintViolated):
        scenarios.build("p1points")
    with pytest.raises(ConstraintViolated):
        scenarios.build("nonsense")


def test_ambient_classes():
    for k in range(1, 6):
        c = scenarios.p2lines(k, _alphas(k, -3))
        _, coeffs = AMBIENT["P2"]
        assert total_class(c) == L(coeffs, c.m)
        c = scenarios.p1points(k, _alphas(k, -2))
        assert total_class(c) == L(AMBIENT["P1"][1], c.m)


def _alphas(k, degree):
    # equal split of the canonical degree
    a = 1 + F(degree, k)
    if a == 0:
        return [F(1, 2)] + [1 + F(degree - F(-1, 2), k - 1)] * (k - 1)
    return [a] * k


def test_figure2chain_stages():
    stages = scenarios.build("figure2chain")
    assert [s.name for s in stages] == ["P2", "S1", "S2", "S2+C5"]
    coeffs = [stages[-1].config.component(i).alpha - 1 for i in ("C3", "C4", "C5")]
    assert coeffs == [F(-1, 2), -1, 0]
    assert [log_poles(s.config) for s in stages] == [[], [], ["C4"], ["C4"]]


def test_random_canonical_is_deterministic_and_valid():
    for seed in range(30):
        for family, degree in (("p1", -2), ("p2lines", -3)):
            c = scenarios.random_canonical(seed, family)
            assert c == scenarios.random_canonical(seed, family)
            assert validate(c).ok
            assert sum(a - 1 for a in c.alphas().values()) == degree
            assert not log_poles(c)


def test_random_canonical_examples():
    c = scenarios.random_canonical(1, "p1", 2, 5)
    assert functional_equation_check(scenarios.closed_strata(c), c.alphas(), c.m).holds
    c = scenarios.random_canonical(2, "p2lines", 2, 4)
    assert pv(c) is not None


def test_product_scales_pv():
    c = scenarios.example34b()
    p1 = L({1: 1, 0: 1}, c.m)
    prod = scenarios.product(c, p1, 1)
    assert prod.n == 3
    assert total_class(prod) == total_class(c) * p1
    # pv(c x M) = [M] L^(-dim M) pv(c)
    assert pv(prod).expr == pv(c).expr * (t ** 2 + 1) * t ** -2


def test_random_generators_are_valid():
    for seed in range(30):
        for kw in ({}, {"resolution": True}, {"hodge": "general"}, {"hodge": "none"}):
            assert validate(scenarios.random_config(seed, **kw)).ok
        assert validate(scenarios.random_surface(seed)).ok
        aug = scenarios.augment_with_units(scenarios.random_config(seed), seed)
        assert validate(aug).ok
        assert sum(1 for a in aug.alphas().values() if a == 1) >= 2
