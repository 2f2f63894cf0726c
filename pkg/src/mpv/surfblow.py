"""Point blow-ups of surface configurations.

A surface configuration is a :class:`StratifiedConfig` with ``n = 2``; the
open strata of pairs ``{i, j}`` are finite sets of double points whose
classes are nonnegative integers.  Blowing up a point adds ``L`` to the
total class and creates one exceptional curve:

==================  ===================  ====================================
centre              alpha of new curve   strata change
==================  ===================  ====================================
free point          2                    E_∅° - 1, new curve L + 1
point on E_i        alpha_i + 1          E_i° - 1, new curve L, {i,new} = 1
point E_i ∩ E_j     alpha_i + alpha_j    {i,j} - 1, new curve L - 1,
                                         {i,new} = {j,new} = 1
==================  ===================  ====================================
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ExhaustedDoublePoint, InvalidCenter
from .exactring import LaurentPoly
from .stratconfig import ComponentData, MotClass, StratifiedConfig, Subset
from .zetapv import PvValue, log_poles, pv


@dataclass(frozen=True)
class BlowupCenter:
    kind: str  # "free", "curve" or "point"
    ids: Tuple[str, ...] = ()

    def __post_init__(self):
        expected = {"free": 0, "curve": 1, "point": 2}
        if self.kind not in expected:
            raise InvalidCenter(f"unknown centre kind {self.kind!r}")
        object.__setattr__(self, "ids", tuple(self.ids))
        if len(self.ids) != expected[self.kind]:
            raise InvalidCenter(f"centre {self.kind} needs {expected[self.kind]} component ids")
        if self.kind == "point" and self.ids[0] == self.ids[1]:
            raise InvalidCenter("double point needs two distinct components")

    @classmethod
    def free(cls) -> "BlowupCenter":
        return cls("free")

    @classmethod
    def on_curve(cls, cid: str) -> "BlowupCenter":
        return cls("curve", (cid,))

    @classmethod
    def at_double_point(cls, i: str, j: str) -> "BlowupCenter":
        return cls("point", (i, j))

    @classmethod
    def parse(cls, text: str) -> "BlowupCenter":
        """``free``, ``curve:<id>`` or ``point:<id>,<id>``."""
        text = text.strip()
        if text == "free":
            return cls.free()
        kind, sep, rest = text.partition(":")
        if not sep:
            raise InvalidCenter(f"bad centre specification {text!r}")
        ids = tuple(x.strip() for x in rest.split(","))
        if kind not in ("curve", "point") or not all(ids):
            raise InvalidCenter(f"bad centre specification {text!r}")
        return cls(kind, ids)

    def __str__(self):
        if self.kind == "free":
            return "free"
        return f"{self.kind}:{','.join(self.ids)}"


def check_surface(c: StratifiedConfig) -> List[str]:
    problems = []
    if c.n != 2:
        problems.append(f"surface configuration needs n = 2, got {c.n}")
    for key, cl in c.open_strata.items():
        if len(key) >= 3:
            problems.append(f"stratum {sorted(key)}: at most two components meet on a surface")
        if len(key) == 2:
            for p in (cl.lpoly, cl.hodge):
                if p is None:
                    continue
                if not p.is_const() or p.const_value() < 0 or p.const_value().denominator != 1:
                    problems.append(f"double points {sorted(key)} must be a nonnegative integer count")
                    break
    return problems


def _add(strata: Dict[Subset, MotClass], key: Subset, cl: MotClass):
    strata[key] = strata[key] + cl if key in strata else cl


def _minus_point(strata: Dict[Subset, MotClass], key: Subset, what: str):
    if key not in strata:
        raise InvalidCenter(f"{what} has no points left to blow up")
    cl = strata[key]
    one = MotClass(None if cl.lpoly is None else LaurentPoly.const(1),
                   None if cl.hodge is None else LaurentPoly.const(1))
    strata[key] = cl - one


def _point_count(cl: Optional[MotClass]) -> Fraction:
    if cl is None:
        return Fraction(0)
    p = cl.lpoly if cl.lpoly is not None else cl.hodge
    return p.const_value()


def exceptional_alpha(codim: int, branches: Sequence[Tuple[Fraction, int]] = ()) -> Fraction:
    """alpha of the exceptional divisor over a centre of codimension ``codim``.

    ``branches`` are (alpha_i, multiplicity of E_i at the centre).  The
    discrepancy contributes codim - 1, each branch m_i (alpha_i - 1), and
    alpha is the multiplicity plus one.
    """
    return Fraction(codim) + sum((Fraction(m) * (Fraction(a) - 1) for a, m in branches), Fraction(0))


def _new_component(c: StratifiedConfig, center: BlowupCenter, new_id: str) -> ComponentData:
    parents = [c.component(i) for i in center.ids]
    if all(p.has_alpha for p in parents):
        alpha = exceptional_alpha(2, [(p.alpha, 1) for p in parents])
        return ComponentData(new_id, alpha=alpha)
    if all(p.has_resolution for p in parents):
        # discrepancy nu - 1 = 1 + sum (nu_i - 1); pulled-back divisor N = sum N_i
        nu = 2 + sum((p.nu - 1 for p in parents), Fraction(0))
        N = sum((p.N for p in parents), Fraction(0))
        return ComponentData(new_id, nu=nu, N=N)
    raise InvalidCenter("centre lies on components with mixed alpha and (nu, N) data")


def blowup(c: StratifiedConfig, center: BlowupCenter, new_id: str) -> StratifiedConfig:
    problems = check_surface(c)
    if problems:
        raise InvalidCenter("; ".join(problems))
    if new_id in c.ids:
        raise InvalidCenter(f"component id {new_id!r} already in use")
    for i in center.ids:
        if i not in c.ids:
            raise InvalidCenter(f"unknown component {i!r}")
    hodge = all(cl.hodge is not None for cl in c.open_strata.values())
    lpoly = all(cl.lpoly is not None for cl in c.open_strata.values())

    def cls(coeffs):
        full = MotClass.from_coeffs(coeffs, c.m)
        return MotClass(full.lpoly if lpoly else None, full.hodge if hodge else None)

    strata = dict(c.open_strata)
    new = frozenset([new_id])
    if center.kind == "free":
        _minus_point(strata, frozenset(), "the open complement of the divisor")
        _add(strata, new, cls({1: 1, 0: 1}))
    elif center.kind == "curve":
        i, = center.ids
        _minus_point(strata, frozenset([i]), f"curve {i}")
        _add(strata, new, cls({1: 1}))
        _add(strata, frozenset([i, new_id]), cls({0: 1}))
    else:
        i, j = center.ids
        pair = frozenset([i, j])
        if _point_count(strata.get(pair)) < 1:
            raise ExhaustedDoublePoint(f"no double points left on {i} ∩ {j}")
        _minus_point(strata, pair, f"{i} ∩ {j}")
        _add(strata, new, cls({1: 1, 0: -1}))
        _add(strata, frozenset([i, new_id]), cls({0: 1}))
        _add(strata, frozenset([j, new_id]), cls({0: 1}))
    comps = c.components + (_new_component(c, center, new_id),)
    return replace(c, components=comps, open_strata=strata)


def blowup_chain(c: StratifiedConfig, steps: Sequence[Tuple[BlowupCenter, str]]) -> List[StratifiedConfig]:
    """All intermediate configurations, starting with ``c`` itself."""
    out = [c]
    for center, new_id in steps:
        out.append(blowup(out[-1], center, new_id))
    return out


@dataclass
class InvarianceReport:
    before_defined: bool
    after_defined: bool
    equal: Optional[bool]
    before_poles: List[str] = field(default_factory=list)
    after_poles: List[str] = field(default_factory=list)
    pv_before: Optional[PvValue] = None
    pv_after: Optional[PvValue] = None

    @property
    def message(self) -> str:
        parts = []
        if not self.before_defined:
            parts.append("before: PV not defined: " + ", ".join(self.before_poles))
        if not self.after_defined:
            parts.append("after: PV not defined: " + ", ".join(self.after_poles))
        if self.equal is not None:
            parts.append("PV equal" if self.equal else "PV differs")
        return "; ".join(parts)

    def __str__(self):
        return self.message


def invariance_report(before: StratifiedConfig, after: StratifiedConfig,
                      realization: str = "motivic") -> InvarianceReport:
    bp, ap = log_poles(before), log_poles(after)
    pv_b = None if bp else pv(before, realization)
    pv_a = None if ap else pv(after, realization)
    equal = None if (bp or ap) else pv_b == pv_a
    return InvarianceReport(not bp, not ap, equal, bp, ap, pv_b, pv_a)
