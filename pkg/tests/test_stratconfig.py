from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mpv import scenarios
from mpv.errors import InvalidConfig, MissingRealization, UnknownStratum
from mpv.exactring import LaurentPoly
from mpv.scenarios import L
from mpv.stratconfig import (ClosedStrataInput, ComponentData, MotClass,
                             StratifiedConfig, closed_from_open,
                             closed_strata_input, ensure_valid,
                             open_from_closed, restrict, subset, total_class,
                             validate, validate_closed)
from mpv.zetapv import pv

P2 = L({2: 1, 1: 1, 0: 1}, 2)


def test_example34a_is_valid():
    assert validate(scenarios.example34a()).ok


def test_too_many_components_in_a_stratum():
    c = StratifiedConfig(1, 1, (ComponentData("A", alpha=Fraction(2)), ComponentData("B", alpha=Fraction(2))),
                         {subset("A", "B"): MotClass.const(1)})
    report = validate(c)
    assert any("stratum dimension negative" in v for v in report.violations)


def test_scaling_mismatch():
    c = StratifiedConfig(2, 2, (ComponentData("A", alpha=Fraction(1, 3)),), {subset(): L({2: 1}, 2)})
    assert any(v.startswith("scaling mismatch") for v in validate(c).violations)
    with pytest.raises(InvalidConfig):
        ensure_valid(c)


def test_class_exponent_not_multiple_of_m():
    cl = MotClass(LaurentPoly({(1, 0, 0, 0): 1}), None)  # L^(1/2) with m = 2
    c = StratifiedConfig(1, 2, (), {subset(): cl})
    assert any(v.startswith("scaling mismatch") for v in validate(c).violations)


def test_other_violations():
    c = StratifiedConfig(2, 1, (ComponentData("A", nu=Fraction(0), N=Fraction(1)),
                                ComponentData("A", alpha=Fraction(1))),
                         {subset("B"): MotClass.const(1)})
    text = "\n".join(validate(c).violations)
    assert "duplicate component ids" in text
    assert "nu=0 < 1" in text
    assert "unknown components" in text


def test_zero_strata_are_dropped():
    c = StratifiedConfig(1, 1, (), {subset(): L({1: 1}, 1), subset("A"): L({}, 1)})
    assert list(c.open_strata) == [subset()]


def test_alpha_zero_is_representable():
    c = StratifiedConfig(1, 1, (ComponentData("A", alpha=Fraction(0)),), {subset("A"): MotClass.const(1)})
    assert validate(c).ok


# -- total class ------------------------------------------------------------------

def test_total_class_examples():
    assert total_class(scenarios.example34a()) == P2
    assert total_class(scenarios.example34b()) == P2
    x = L({3: 2, 0: -1}, 1)
    assert total_class(StratifiedConfig(3, 1, (), {subset(): x})) == x


# -- open / closed ----------------------------------------------------------------

def _closed(entries, n=2, m=2):
    return ClosedStrataInput({frozenset(k): (L(v, m), n - len(k)) for k, v in entries.items()})


def test_open_from_closed_two_lines():
    cs = _closed({(): {2: 1, 1: 1, 0: 1}, ("C1",): {1: 1, 0: 1}, ("C2",): {1: 1, 0: 1}, ("C1", "C2"): {0: 1}})
    opened = open_from_closed(cs)
    assert opened == scenarios.example34a().open_strata


def test_open_from_closed_single_component():
    cl = L({1: 3, 0: -2}, 1)
    cs = ClosedStrataInput({subset(): (L({1: 5}, 1), 1), subset("E"): (cl, 0)})
    assert open_from_closed(cs)[subset("E")] == cl


def test_three_lines_in_general_position():
    entries = {(): {2: 1, 1: 1, 0: 1}}
    for i in ("A", "B", "C"):
        entries[(i,)] = {1: 1, 0: 1}
    for pair in (("A", "B"), ("A", "C"), ("B", "C")):
        entries[pair] = {0: 1}
    opened = open_from_closed(_closed(entries, m=1))
    for i in ("A", "B", "C"):
        assert opened[subset(i)] == L({1: 1, 0: -1}, 1)
    assert opened[subset()] == L({2: 1, 1: -2, 0: 1}, 1)


def test_closed_from_open_examples():
    assert closed_from_open(scenarios.example34a())[subset("C1")] == L({1: 1, 0: 1}, 2)
    assert closed_from_open(scenarios.example34b())[subset("C1")] == L({1: 1, 0: 1}, 2)
    assert closed_from_open(scenarios.example34a())[subset()] == P2


def test_round_trip_on_random_configs():
    for seed in range(100):
        c = scenarios.random_config(seed)
        cs = closed_strata_input(c)
        assert validate_closed(cs, c.n).ok
        back = c.with_strata(open_from_closed(cs))
        assert back.open_strata == c.open_strata
        assert total_class(back) == total_class(c)


def test_validate_closed():
    bad = ClosedStrataInput({subset(): (P2, 2), subset("A", "B"): (MotClass.const(1), 0)})
    assert not validate_closed(bad).ok
    bad_dims = ClosedStrataInput({subset(): (P2, 1), subset("A"): (L({1: 1}, 2), 2)})
    assert any("not monotone" in v for v in validate_closed(bad_dims).violations)
    assert not validate_closed(ClosedStrataInput({subset("A"): (P2, 1)})).ok


# -- relative version ---------------------------------------------------------------

def test_restrict_full_is_identity():
    c = scenarios.example34a()
    assert restrict(c, c.open_strata) == c


def test_restrict_to_a_point():
    c = scenarios.example34a()
    w = restrict(c, {subset(): MotClass.const(1)})
    assert pv(w).expr == pv(StratifiedConfig(2, 2, (), {subset(): MotClass.const(1)})).expr
    assert pv(w).render() == "1/L^2"


def test_restrict_to_nothing():
    c = scenarios.example34a()
    w = restrict(c, {k: L({}, 2) for k in c.open_strata})
    assert pv(w).expr == 0


def test_restrict_unknown_stratum():
    with pytest.raises(UnknownStratum):
        restrict(scenarios.example34b(), {subset("C1", "C9"): MotClass.const(1)})


# -- MotClass ---------------------------------------------------------------------

def test_consistency_applies_only_to_diagonal_hodge():
    lp = LaurentPoly({(2, 0, 0, 0): 1})
    diag_ok = MotClass(lp, LaurentPoly({(0, 0, 2, 2): 1}))
    diag_bad = MotClass(lp, LaurentPoly({(0, 0, 2, 2): 2}))
    general = MotClass(lp, LaurentPoly({(0, 0, 2, 0): 1, (0, 0, 0, 2): 1}))
    assert diag_ok.consistent() and diag_ok.hodge_is_diagonal()
    assert not diag_bad.consistent()
    assert general.consistent() and not general.hodge_is_diagonal()
    c = StratifiedConfig(1, 2, (), {subset(): diag_bad})
    assert any(v.startswith("realization mismatch") for v in validate(c).violations)


@given(st.dictionaries(st.integers(0, 3), st.integers(-3, 3)), st.integers(1, 3))
def test_mirrored_classes_are_consistent(coeffs, m):
    cl = L(coeffs, m)
    assert cl.consistent()


def test_classes_without_shared_realization():
    a = MotClass(LaurentPoly.const(1), None)
    b = MotClass(None, LaurentPoly.const(1))
    with pytest.raises(MissingRealization):
        a + b
    with pytest.raises(ValueError):
        MotClass(None, None)


def test_scenario_configs_validate():
    configs = [scenarios.example34a(), scenarios.example34b()]
    configs += [stage.config for stage in scenarios.figure2chain()]
    configs += [scenarios.random_canonical(s, fam) for s in range(10) for fam in ("p1", "p2lines")]
    for c in configs:
        assert validate(c).ok
