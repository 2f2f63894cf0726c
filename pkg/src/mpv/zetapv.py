"""Zeta functions and principal value integrals of stratified configurations.

With ``E_I°`` the open strata and ``f_i`` one factor per component,

    value = L^(-n) * sum_I [E_I°] * prod_{i in I} f_i

where ``f_i`` is

* ``(L-1)/(L^(nu_i + s N_i) - 1)`` for the zeta function (``T = L^(-s)``
  encoded as ``tau**m``),
* ``(L-1)/(L^(alpha_i) - 1)`` for the principal value.

The Hodge realization reads ``uv`` for ``L``.  All sums are taken over the
common denominator ``prod_i den(f_i)`` so the intermediate expressions stay
small.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import (InadmissibleShift, InternalAssertion, LogarithmicPole,
                     MissingRealization, MissingResolutionData, NotConvergent,
                     NotUnitComponent, PreconditionError)
from .exactring import NVARS, ZERO_EXP, LaurentPoly, RingElem, render, var_index
from .stratconfig import (ClosedStrataInput, ComponentData, MotClass,
                          StratifiedConfig, Subset, open_from_closed,
                          validate_closed)

REALIZATIONS = ("motivic", "hodge")
_T, _TAU, _U, _V = (var_index(v) for v in ("t", "tau", "U", "V"))


def _exp(t=0, tau=0, uv=0) -> tuple:
    e = [0] * NVARS
    e[_T], e[_TAU], e[_U], e[_V] = t, tau, uv, uv
    return tuple(e)


def lefschetz_exp(k: int, realization: str, tau: int = 0) -> tuple:
    """Exponent vector of L^(k/m) (times tau**tau) in the given realization."""
    if realization == "motivic":
        return _exp(t=k, tau=tau)
    if realization == "hodge":
        return _exp(uv=k, tau=tau)
    raise ValueError(f"unknown realization {realization!r}")


def _mono(k: int, realization: str, tau: int = 0) -> LaurentPoly:
    return LaurentPoly.monomial(lefschetz_exp(k, realization, tau))


def _scaled(q: Fraction, m: int, what: str) -> int:
    s = q * m
    if s.denominator != 1:
        raise PreconditionError(f"{what}={q} is not a multiple of 1/{m}")
    return int(s)


@dataclass(frozen=True)
class ZetaFunction:
    expr: RingElem
    n: int
    m: int
    realization: str

    def at_integer(self, s: int) -> RingElem:
        """Evaluate at an integer s, i.e. tau -> L^(-s/m)."""
        return self.expr.substitute("tau", lefschetz_exp(-s, self.realization))

    def render(self, style="pretty") -> str:
        return render(self.expr, self.m, style)


@dataclass(frozen=True)
class PvValue:
    expr: RingElem
    n: int
    m: int
    realization: str
    normalized: bool = True

    def render(self, style="pretty") -> str:
        return render(self.expr, self.m, style)

    def __eq__(self, other):
        if isinstance(other, PvValue):
            return self.expr == other.expr
        return self.expr == other

    __hash__ = None


def _weighted_sum(strata: Iterable[Tuple[Subset, LaurentPoly]],
                  factors: Mapping[str, Tuple[LaurentPoly, LaurentPoly]]) -> RingElem:
    """sum_I cls_I * prod_{i in I} a_i/b_i over the common denominator prod b_i."""
    strata = list(strata)
    ids = [i for i in factors if any(i in key for key, _ in strata)]
    den = LaurentPoly.const(1)
    for i in ids:
        den = den * factors[i][1]
    num = LaurentPoly()
    for key, cls in strata:
        term = cls
        for i in ids:
            a, b = factors[i]
            term = term * (a if i in key else b)
        num = num + term
    return RingElem(num, den)


def _classes(c: StratifiedConfig, realization: str):
    if realization not in REALIZATIONS:
        raise ValueError(f"unknown realization {realization!r}")
    out = []
    for key, cl in c.sorted_strata():
        p = cl.lpoly if realization == "motivic" else cl.hodge
        if p is None:
            label = "{" + ",".join(sorted(key)) + "}"
            raise MissingRealization(f"stratum {label} has no {realization} class")
        out.append((key, p))
    return out


def _prefactor(c: StratifiedConfig, realization: str, normalized: bool) -> RingElem:
    if not normalized:
        return RingElem(1)
    return RingElem.monomial(lefschetz_exp(-c.m * c.n, realization))


def log_poles(c: StratifiedConfig) -> List[str]:
    """Ids of components with alpha = 0 (alpha = nu + N for resolution data)."""
    return [comp.id for comp in c.components if comp.effective_alpha == 0]


def _require_no_poles(c: StratifiedConfig):
    poles = log_poles(c)
    if poles:
        raise LogarithmicPole(poles)


def zeta(c: StratifiedConfig, realization: str = "motivic") -> ZetaFunction:
    """L^(-n) sum_I [E_I°] prod (L-1)/(L^(nu_i + s N_i) - 1), T = L^(-s)."""
    m = c.m
    factors = {}
    for comp in c.components:
        if not comp.has_resolution and not comp.has_alpha:
            raise MissingResolutionData(f"component {comp.id} has no multiplicity data")
        nu, N = comp.zeta_exponents()
        a = _mono(m, realization) - 1
        # L^(nu + s N) = L^nu * T^(-N) = t^(m nu) tau^(-m N)
        b = _mono(_scaled(nu, m, "nu"), realization, tau=-_scaled(N, m, "N")) - 1
        factors[comp.id] = (a, b)
    expr = _weighted_sum(_classes(c, realization), factors) * _prefactor(c, realization, True)
    return ZetaFunction(expr, c.n, m, realization)


def _pv_factors(c: StratifiedConfig, realization: str):
    m = c.m
    factors = {}
    for comp in c.components:
        alpha = comp.effective_alpha
        factors[comp.id] = (_mono(m, realization) - 1,
                            _mono(_scaled(alpha, m, "alpha"), realization) - 1)
    return factors


def pv(c: StratifiedConfig, realization: str = "motivic", normalized: bool = True) -> PvValue:
    """Principal value L^(-n) sum_I [E_I°] prod (L-1)/(L^alpha_i - 1)."""
    _require_no_poles(c)
    expr = _weighted_sum(_classes(c, realization), _pv_factors(c, realization))
    expr = expr * _prefactor(c, realization, normalized)
    return PvValue(expr, c.n, c.m, realization, normalized)


def as_alpha_config(c: StratifiedConfig) -> StratifiedConfig:
    """Same configuration with every component carried as alpha = nu + N."""
    comps = [replace(comp, alpha=comp.effective_alpha, nu=None, N=None) for comp in c.components]
    return replace(c, components=tuple(comps))


def pv_from_resolution(c: StratifiedConfig, realization: str = "motivic") -> PvValue:
    """Evaluate the zeta function at s = 1 and cross-check against alpha = nu + N."""
    missing = [comp.id for comp in c.components if not comp.has_resolution]
    if missing:
        raise MissingResolutionData("no (nu, N) data for " + ", ".join(missing))
    _require_no_poles(c)
    z = zeta(c, realization)
    value = z.at_integer(1)
    direct = pv(as_alpha_config(c), realization)
    if value != direct.expr:
        raise InternalAssertion("zeta at s=1 disagrees with the alpha = nu + N formula")
    return PvValue(value, c.n, c.m, realization, True)


def _require_hodge(c: StratifiedConfig):
    _classes(c, "hodge")


def hodge_zeta_T(c: StratifiedConfig) -> RingElem:
    """Z(T) = (uv)^(-n) sum H(E_I°) prod (uv-1)T/((uv)^alpha_i - T), T = tau**m."""
    m = c.m
    factors = {}
    for comp in c.components:
        k = _scaled(comp.effective_alpha, m, "alpha")
        big_t = LaurentPoly.monomial(_exp(tau=m))
        factors[comp.id] = ((_mono(m, "hodge") - 1) * big_t, _mono(k, "hodge") - big_t)
    return _weighted_sum(_classes(c, "hodge"), factors) * _prefactor(c, "hodge", True)


def hodge_def1(c: StratifiedConfig) -> PvValue:
    """The Hodge-level principal value as the value of Z(T) at T = 1."""
    _require_hodge(c)
    _require_no_poles(c)
    value = hodge_zeta_T(c).substitute("tau", ZERO_EXP)
    return PvValue(value, c.n, c.m, "hodge", True)


def converging_integral(c: StratifiedConfig, s: int) -> RingElem:
    """I(s) = (uv)^(-n) sum H(E_I°) prod (uv-1)(uv)^(-s)/((uv)^alpha_i - (uv)^(-s))."""
    _require_hodge(c)
    bad = [comp.id for comp in c.components if comp.effective_alpha + s <= 0]
    if bad:
        raise NotConvergent(f"alpha + s <= 0 for {', '.join(bad)} at s={s}")
    m = c.m
    factors = {}
    for comp in c.components:
        k = _scaled(comp.effective_alpha, m, "alpha")
        shift = _mono(-m * s, "hodge")
        factors[comp.id] = ((_mono(m, "hodge") - 1) * shift, _mono(k, "hodge") - shift)
    return _weighted_sum(_classes(c, "hodge"), factors) * _prefactor(c, "hodge", True)


def alt_zeta(c: StratifiedConfig, a: Fraction) -> RingElem:
    """(uv)^(-n) sum H(E_I°) prod (uv-1)/((uv)^(a + alpha_i + s a) - 1), T = (uv)^(-s)."""
    a = Fraction(a)
    m = c.m
    if (a * m).denominator != 1:
        raise InadmissibleShift(f"shift a={a} is not a multiple of 1/{m}")
    bad = [comp.id for comp in c.components if a + comp.effective_alpha <= 0]
    if bad:
        raise InadmissibleShift(f"a + alpha <= 0 for {', '.join(bad)} with a={a}")
    factors = {}
    for comp in c.components:
        k = _scaled(a + comp.effective_alpha, m, "a + alpha")
        # (uv)^(s a) = T^(-a) = tau^(-m a)
        factors[comp.id] = (_mono(m, "hodge") - 1,
                            _mono(k, "hodge", tau=-int(a * m)) - 1)
    return _weighted_sum(_classes(c, "hodge"), factors) * _prefactor(c, "hodge", True)


def alt_zeta_pv(c: StratifiedConfig, a) -> PvValue:
    """The alternative zeta function evaluated at s = -1 (tau -> UV)."""
    _require_hodge(c)
    _require_no_poles(c)
    value = alt_zeta(c, a).substitute("tau", _exp(uv=1))
    return PvValue(value, c.n, c.m, "hodge", True)


def duality_involution(x):
    """Replace every variable by its inverse (L^(1/m) -> L^(-1/m), same for u, v)."""
    if isinstance(x, PvValue):
        if "tau" in x.expr.variables():
            raise PreconditionError("duality is only defined on tau-free values")
        return PvValue(x.expr.invert_variables(), x.n, x.m, x.realization, x.normalized)
    x = RingElem.coerce(x)
    if "tau" in x.variables():
        raise PreconditionError("duality is only defined on tau-free values")
    return x.invert_variables()


@dataclass
class CheckItem:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class DualityReport:
    holds: bool
    realization: str
    n: int
    lhs: RingElem
    rhs: RingElem
    pv_unnormalized: PvValue
    strata_dual: List[CheckItem] = field(default_factory=list)
    convention: str = ("checked D(PVu) = L^(-n) PVu on the unnormalized value "
                       "(equivalently D(PV) = L^(+n) PV for the normalized one)")

    def __bool__(self):
        return self.holds

    def lines(self) -> List[str]:
        out = [f"duality ({self.realization}): {'holds' if self.holds else 'FAILS'}",
               f"  {self.convention}"]
        out += ["  " + item.line() for item in self.strata_dual]
        return out


def _config_from_closed(cs: ClosedStrataInput, alphas: Mapping[str, Fraction],
                        m: int) -> StratifiedConfig:
    comps = [ComponentData(cid, alpha=Fraction(a)) for cid, a in alphas.items()]
    return StratifiedConfig(cs.n, m, comps, open_from_closed(cs))


def functional_equation_check(cs: ClosedStrataInput, alphas: Mapping[str, Fraction],
                              m: int, realization: str = "motivic") -> DualityReport:
    """Compare D(PVu) with L^(-n) PVu, PVu the principal value without L^(-n).

    Also reports, per closed stratum, whether its class is self-dual
    (D[E_I] = L^(-dim E_I) [E_I]), which the identity relies on.
    """
    report = validate_closed(cs)
    if not report.ok:
        raise PreconditionError("; ".join(report.violations))
    c = _config_from_closed(cs, alphas, m)
    value = pv(c, realization, normalized=False)
    lhs = duality_involution(value.expr)
    rhs = value.expr * RingElem.monomial(lefschetz_exp(-m * c.n, realization))
    items = []
    for key, (cl, dim) in sorted(cs.strata.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
        p = RingElem(cl.get(realization))
        ok = duality_involution(p) == p * RingElem.monomial(lefschetz_exp(-m * dim, realization))
        label = "{" + ",".join(sorted(key)) + "}"
        items.append(CheckItem(f"stratum {label} self-dual in dim {dim}", ok))
    return DualityReport(lhs == rhs, realization, c.n, lhs, rhs, value, items)


def delete_unit_components(c: StratifiedConfig, ids: Optional[Sequence[str]] = None) -> StratifiedConfig:
    """Drop components with alpha = 1, merging E_I° into E_{I - deleted}°.

    With ``ids`` None every alpha = 1 component is removed.
    """
    alphas = c.alphas()
    if ids is None:
        ids = [cid for cid, a in alphas.items() if a == 1]
    ids = set(ids)
    for cid in ids:
        if cid not in alphas:
            raise NotUnitComponent(f"unknown component {cid}")
        if alphas[cid] != 1:
            raise NotUnitComponent(f"component {cid} has alpha={alphas[cid]}, not 1")
    strata: Dict[Subset, MotClass] = {}
    for key, cl in c.open_strata.items():
        k = key - ids
        strata[k] = strata[k] + cl if k in strata else cl
    comps = tuple(comp for comp in c.components if comp.id not in ids)
    return replace(c, components=comps, open_strata=strata)


def specialize_hodge(x: RingElem) -> RingElem:
    """Map a Hodge-realization element depending only on uv to the L realization."""
    for p in (x.num, x.den):
        if any(e[_U] != e[_V] for e in p.terms):
            raise PreconditionError("element does not depend on uv alone")
    return x.substitute("U", _exp(t=1)).substitute("V", ZERO_EXP)
