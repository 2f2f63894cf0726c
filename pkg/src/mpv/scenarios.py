"""Worked examples and seeded random families of configurations."""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from math import comb, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ConstraintViolated
from .exactring import LaurentPoly
from .stratconfig import (ClosedStrataInput, ComponentData, MotClass,
                          StratifiedConfig, closed_strata_input, ensure_valid)
from .surfblow import BlowupCenter, blowup_chain, exceptional_alpha

F = Fraction


def _m_for(alphas) -> int:
    m = 1
    for a in alphas:
        m = lcm(m, Fraction(a).denominator)
    return m


def L(coeffs: Dict[int, int], m: int, hodge: bool = True) -> MotClass:
    """Shorthand: ``L({2: 1, 1: -1}, m)`` is L^2 - L (mirrored to uv)."""
    return MotClass.from_coeffs(coeffs, m, hodge)


def example34a() -> StratifiedConfig:
    """P^2 with two lines, both with alpha = -1/2."""
    m = 2
    comps = (ComponentData("C1", alpha=F(-1, 2)), ComponentData("C2", alpha=F(-1, 2)))
    strata = {
        frozenset(): L({2: 1, 1: -1}, m),
        frozenset({"C1"}): L({1: 1}, m),
        frozenset({"C2"}): L({1: 1}, m),
        frozenset({"C1", "C2"}): L({0: 1}, m),
    }
    return StratifiedConfig(2, m, comps, strata)


def example34b() -> StratifiedConfig:
    """P^2 with a smooth conic, alpha = -1/2."""
    m = 2
    strata = {frozenset(): L({2: 1}, m), frozenset({"C1"}): L({1: 1, 0: 1}, m)}
    return StratifiedConfig(2, m, (ComponentData("C1", alpha=F(-1, 2)),), strata)


FIGURE2_STEPS = (
    (BlowupCenter.on_curve("C2"), "C3"),
    (BlowupCenter.at_double_point("C2", "C3"), "C4"),
    (BlowupCenter.on_curve("C4"), "C5"),
)


@dataclass(frozen=True)
class Stage:
    name: str
    config: StratifiedConfig
    center: Optional[BlowupCenter] = None


def figure2chain() -> List[Stage]:
    """P^2 of example34a followed by the three blow-ups creating C3, C4, C5."""
    configs = blowup_chain(example34a(), FIGURE2_STEPS)
    names = ("P2", "S1", "S2", "S2+C5")
    centers = (None,) + tuple(c for c, _ in FIGURE2_STEPS)
    return [Stage(n, c, ctr) for n, c, ctr in zip(names, configs, centers)]


@dataclass(frozen=True)
class Figure1:
    branches: Tuple[Tuple[Fraction, int], ...]
    codim: int
    alpha_exceptional: Fraction

    @property
    def coefficient(self) -> Fraction:
        return self.alpha_exceptional - 1


def figure1mult() -> Figure1:
    """Two branches with coefficients 1/2 and -3/2, tangent at the blown-up point."""
    branches = ((F(3, 2), 1), (F(-1, 2), 1))
    return Figure1(branches, 2, exceptional_alpha(2, branches))


def _check_alphas(alphas, k, degree, what):
    alphas = [Fraction(a) for a in alphas]
    if len(alphas) != k:
        raise ConstraintViolated(f"{what}: expected {k} alphas, got {len(alphas)}")
    if any(a == 0 for a in alphas):
        raise ConstraintViolated(f"{what}: alpha = 0 is a logarithmic pole")
    total = sum((a - 1 for a in alphas), Fraction(0))
    if total != degree:
        raise ConstraintViolated(
            f"{what}: sum of (alpha_i - 1) is {total}, the canonical degree is {degree}")
    return alphas


def p1points(k: int, alphas: Sequence, m: Optional[int] = None) -> StratifiedConfig:
    """P^1 with k points; requires sum(alpha_i - 1) = -2."""
    alphas = _check_alphas(alphas, k, -2, "p1points")
    m = m or _m_for(alphas)
    comps = tuple(ComponentData(f"P{i + 1}", alpha=a) for i, a in enumerate(alphas))
    strata = {frozenset(): L({1: 1, 0: 1 - k}, m)}
    for c in comps:
        strata[frozenset([c.id])] = L({0: 1}, m)
    return StratifiedConfig(1, m, comps, strata)


def p2lines(k: int, alphas: Sequence, m: Optional[int] = None) -> StratifiedConfig:
    """k lines in general position in P^2; requires sum(alpha_i - 1) = -3."""
    alphas = _check_alphas(alphas, k, -3, "p2lines")
    m = m or _m_for(alphas)
    comps = tuple(ComponentData(f"C{i + 1}", alpha=a) for i, a in enumerate(alphas))
    ids = [c.id for c in comps]
    # each line loses its k-1 intersection points; the complement takes the rest
    strata = {frozenset(): L({2: 1, 1: 1 - k, 0: 1 - k + k * (k - 1) - comb(k, 2)}, m)}
    for i in ids:
        strata[frozenset([i])] = L({1: 1, 0: 2 - k}, m)
    for pair in combinations(ids, 2):
        strata[frozenset(pair)] = L({0: 1}, m)
    return StratifiedConfig(2, m, comps, strata)


def product(c: StratifiedConfig, factor: MotClass, dim: int) -> StratifiedConfig:
    """Cartesian product with a smooth complete variety of class ``factor``."""
    strata = {k: cl * factor for k, cl in c.open_strata.items()}
    return replace(c, n=c.n + dim, open_strata=strata)


def closed_strata(c: StratifiedConfig) -> ClosedStrataInput:
    return closed_strata_input(c)


AMBIENT = {
    "P1": (1, {1: 1, 0: 1}),
    "P2": (2, {2: 1, 1: 1, 0: 1}),
}


# -- random families ---------------------------------------------------------

def _nonzero_fraction(rng: random.Random, d: int, span: int = 3) -> Fraction:
    while True:
        q = Fraction(rng.randint(-span * d, span * d), d)
        if q:
            return q


def random_canonical(seed, family: str = "p1", d_max: int = 2, k_max: int = 5) -> StratifiedConfig:
    """Random p1points / p2lines configuration satisfying the degree constraint."""
    rng = random.Random(f"canonical:{family}:{seed}")
    if family == "p1":
        degree, build = -2, p1points
    elif family == "p2lines":
        degree, build = -3, p2lines
    else:
        raise ValueError(f"unknown family {family!r}")
    d = rng.randint(1, d_max)
    while True:
        k = rng.randint(1, k_max)
        alphas = [_nonzero_fraction(rng, d) for _ in range(k - 1)]
        last = degree - sum((a - 1 for a in alphas), Fraction(0)) + 1
        if last != 0:
            return ensure_valid(build(k, alphas + [last], m=d))


def _random_lpoly(rng, deg, m, nonzero=True, lead_positive=False):
    while True:
        coeffs = {j: rng.randint(-3, 3) for j in range(deg + 1)}
        if lead_positive:
            coeffs[deg] = rng.randint(1, 2)
        if not nonzero or any(coeffs.values()):
            return coeffs


def _random_hodge(rng, deg, m) -> LaurentPoly:
    """A Hodge-type polynomial sum c_pq u^p v^q with p, q <= deg (not just in uv)."""
    terms = {}
    while not terms:
        for p in range(deg + 1):
            for q in range(deg + 1):
                if rng.random() < 0.5:
                    c = rng.randint(-3, 3)
                    if c:
                        terms[(0, 0, m * p, m * q)] = c
    return LaurentPoly(terms)


def random_config(seed, n_max: int = 3, k_max: int = 4, d_max: int = 3,
                  resolution: bool = False, hodge: str = "diagonal") -> StratifiedConfig:
    """Random abstract normal-crossings data; ``hodge`` is diagonal, general or none.

    Classes are not required to come from an actual variety; every identity
    checked on these is a formal identity of the defining sums.
    """
    rng = random.Random(f"config:{seed}:{resolution}:{hodge}")
    n = rng.randint(1, n_max)
    k = rng.randint(0, k_max)
    d = rng.randint(1, d_max)
    comps = []
    for i in range(k):
        if resolution:
            nu = Fraction(rng.randint(d, 3 * d), d)
            while True:
                N = Fraction(rng.randint(-4 * d, 4 * d), d)
                if nu + N:
                    break
            comps.append(ComponentData(f"E{i + 1}", nu=nu, N=N))
        else:
            comps.append(ComponentData(f"E{i + 1}", alpha=_nonzero_fraction(rng, d)))
    ids = [c.id for c in comps]
    strata = {}
    for r in range(min(n, k) + 1):
        for key in combinations(ids, r):
            if r and rng.random() < 0.35:
                continue
            deg = n - r
            coeffs = _random_lpoly(rng, deg, d, lead_positive=True)
            if hodge == "general":
                cl = MotClass(None, _random_hodge(rng, deg, d))
            else:
                cl = L(coeffs, d, hodge=(hodge == "diagonal"))
            strata[frozenset(key)] = cl
    return ensure_valid(StratifiedConfig(n, d, tuple(comps), strata))


def random_surface(seed, k_max: int = 4, d_max: int = 2) -> StratifiedConfig:
    """Random surface configuration (n = 2, nonnegative double point counts)."""
    rng = random.Random(f"surface:{seed}")
    d = rng.randint(1, d_max)
    k = rng.randint(1, k_max)
    comps = tuple(ComponentData(f"E{i + 1}", alpha=_nonzero_fraction(rng, d)) for i in range(k))
    strata = {frozenset(): L({2: 1, 1: rng.randint(-3, 3), 0: rng.randint(-3, 3)}, d)}
    for c in comps:
        strata[frozenset([c.id])] = L({1: 1, 0: rng.randint(-3, 3)}, d)
    for a, b in combinations([c.id for c in comps], 2):
        count = rng.randint(0, 2)
        if count:
            strata[frozenset([a, b])] = L({0: count}, d)
    return ensure_valid(StratifiedConfig(2, d, comps, strata))


def random_center(rng: random.Random, c: StratifiedConfig, kind: Optional[str] = None) -> BlowupCenter:
    kind = kind or rng.choice(["free", "curve", "point"])
    if kind == "point":
        pairs = sorted((sorted(k) for k in c.open_strata if len(k) == 2))
        if pairs:
            return BlowupCenter.at_double_point(*rng.choice(pairs))
        kind = "curve"
    if kind == "curve":
        return BlowupCenter.on_curve(rng.choice(c.ids))
    return BlowupCenter.free()


def augment_with_units(c: StratifiedConfig, seed, count: int = 2) -> StratifiedConfig:
    """Add ``count`` components with alpha = 1 meeting random existing strata."""
    rng = random.Random(f"units:{seed}")
    comps = list(c.components)
    strata = dict(c.open_strata)
    for j in range(count):
        uid = f"U{j + 1}"
        comps.append(ComponentData(uid, alpha=Fraction(1)))
        hosts = [key for key in list(strata) if len(key) < c.n]
        hosts = [h for h in hosts if rng.random() < 0.6] or [frozenset()]
        for host in hosts:
            deg = c.n - len(host) - 1
            strata[host | {uid}] = L(_random_lpoly(rng, deg, c.m, lead_positive=True), c.m,
                                     hodge=all(cl.hodge is not None for cl in c.open_strata.values()))
    return ensure_valid(replace(c, components=tuple(comps), open_strata=strata))


# -- registry used by the command line ----------------------------------------

SCENARIOS = ("example34a", "example34b", "figure2chain", "figure1mult",
             "p1points", "p2lines", "random-p1", "random-p2lines")


def build(name: str, alphas: Optional[Sequence] = None, seed: int = 0, m: Optional[int] = None):
    """Materialize a named scenario."""
    if name == "example34a":
        return example34a()
    if name == "example34b":
        return example34b()
    if name == "figure2chain":
        return figure2chain()
    if name == "figure1mult":
        return figure1mult()
    if name in ("p1points", "p2lines"):
        if not alphas:
            raise ConstraintViolated(f"{name} needs alphas")
        fn = p1points if name == "p1points" else p2lines
        return fn(len(alphas), alphas, m)
    if name == "random-p1":
        return random_canonical(seed, "p1")
    if name == "random-p2lines":
        return random_canonical(seed, "p2lines")
    raise ConstraintViolated(f"unknown scenario {name!r}; known: {', '.join(SCENARIOS)}")
