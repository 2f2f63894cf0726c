"""Stratified normal-crossings configurations.

A configuration records the dimension ``n``, a scaling integer ``m``, the
divisor components with their multiplicity data, and the classes of the
open strata ``E_I°`` keyed by ``frozenset`` of component ids.  Absent keys
are empty strata.  Classes come in up to two realizations: a Laurent
polynomial in ``L`` (variable ``t`` with ``t**m = L``) and a Hodge
polynomial in ``u, v`` (variables ``U, V``).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from .errors import InvalidConfig, MissingRealization, UnknownStratum
from .exactring import NVARS, LaurentPoly, var_index

Subset = FrozenSet[str]

_T, _TAU, _U, _V = (var_index(v) for v in ("t", "tau", "U", "V"))


def subset(*ids: str) -> Subset:
    return frozenset(ids)


def _l_exp(k: int) -> tuple:
    e = [0] * NVARS
    e[_T] = k
    return tuple(e)


def _uv_exp(a: int, b: int) -> tuple:
    e = [0] * NVARS
    e[_U], e[_V] = a, b
    return tuple(e)


@dataclass(frozen=True)
class MotClass:
    """Class of a stratum in the L-realization and/or the Hodge realization."""

    lpoly: Optional[LaurentPoly] = None
    hodge: Optional[LaurentPoly] = None

    def __post_init__(self):
        if self.lpoly is None and self.hodge is None:
            raise ValueError("MotClass needs at least one realization")

    @classmethod
    def from_coeffs(cls, coeffs: Mapping[int, int], m: int, hodge: bool = True) -> "MotClass":
        """``sum c_k L^k``, mirrored to ``sum c_k (uv)^k`` when ``hodge``."""
        lp = LaurentPoly({_l_exp(m * k): c for k, c in coeffs.items()})
        hp = LaurentPoly({_uv_exp(m * k, m * k): c for k, c in coeffs.items()}) if hodge else None
        return cls(lp, hp)

    @classmethod
    def const(cls, c: int, hodge: bool = True) -> "MotClass":
        return cls(LaurentPoly.const(c), LaurentPoly.const(c) if hodge else None)

    @property
    def realizations(self) -> Tuple[str, ...]:
        out = []
        if self.lpoly is not None:
            out.append("motivic")
        if self.hodge is not None:
            out.append("hodge")
        return tuple(out)

    def get(self, realization: str) -> LaurentPoly:
        p = self.lpoly if realization == "motivic" else self.hodge
        if realization not in ("motivic", "hodge"):
            raise ValueError(f"unknown realization {realization!r}")
        if p is None:
            raise MissingRealization(f"class has no {realization} realization")
        return p

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in (self.lpoly, self.hodge) if p is not None)

    def _combine(self, other: "MotClass", op) -> "MotClass":
        lp = op(self.lpoly, other.lpoly) if self.lpoly is not None and other.lpoly is not None else None
        hp = op(self.hodge, other.hodge) if self.hodge is not None and other.hodge is not None else None
        if lp is None and hp is None:
            raise MissingRealization("classes share no realization")
        return MotClass(lp, hp)

    def __add__(self, other: "MotClass") -> "MotClass":
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other: "MotClass") -> "MotClass":
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, other: "MotClass") -> "MotClass":
        return self._combine(other, lambda a, b: a * b)

    def __neg__(self) -> "MotClass":
        return MotClass(None if self.lpoly is None else -self.lpoly,
                        None if self.hodge is None else -self.hodge)

    def hodge_is_diagonal(self) -> bool:
        """True when the Hodge polynomial depends only on the product uv."""
        return self.hodge is not None and all(e[_U] == e[_V] for e in self.hodge.terms)

    def consistent(self) -> bool:
        """Both realizations agree under (uv) -> L, when that comparison applies."""
        if self.lpoly is None or not self.hodge_is_diagonal():
            return True
        collapsed = self.hodge.map_exps(lambda e: _l_exp(e[_U]))
        return collapsed == self.lpoly


ZERO_CLASS = MotClass(LaurentPoly(), LaurentPoly())


@dataclass(frozen=True)
class ComponentData:
    """A divisor component with either ``alpha`` or resolution data ``(nu, N)``."""

    id: str
    alpha: Optional[Fraction] = None
    nu: Optional[Fraction] = None
    N: Optional[Fraction] = None

    def __post_init__(self):
        for name in ("alpha", "nu", "N"):
            v = getattr(self, name)
            if v is not None and not isinstance(v, Fraction):
                object.__setattr__(self, name, Fraction(v))

    @property
    def has_alpha(self) -> bool:
        return self.alpha is not None

    @property
    def has_resolution(self) -> bool:
        return self.nu is not None and self.N is not None

    @property
    def effective_alpha(self) -> Fraction:
        """alpha itself, or nu + N for resolution data."""
        if self.alpha is not None:
            return self.alpha
        return self.nu + self.N

    def zeta_exponents(self) -> Tuple[Fraction, Fraction]:
        """(nu, N) for the zeta function; alpha data reads as nu=1, N=alpha-1."""
        if self.has_resolution:
            return self.nu, self.N
        return Fraction(1), self.alpha - 1

    def scaled(self, m: int) -> Dict[str, int]:
        out = {}
        for name in ("alpha", "nu", "N"):
            v = getattr(self, name)
            if v is not None:
                s = v * m
                if s.denominator != 1:
                    raise ValueError(f"{name}={v} is not a multiple of 1/{m}")
                out[name] = int(s)
        return out


@dataclass(frozen=True)
class StratifiedConfig:
    n: int
    m: int
    components: Tuple[ComponentData, ...]
    open_strata: Mapping[Subset, MotClass] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "open_strata",
                           {frozenset(k): v for k, v in self.open_strata.items() if not v.is_zero()})

    def __hash__(self):
        return hash((self.n, self.m, self.components, frozenset(self.open_strata)))

    @property
    def ids(self) -> Tuple[str, ...]:
        return tuple(c.id for c in self.components)

    def component(self, cid: str) -> ComponentData:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def alphas(self) -> Dict[str, Fraction]:
        return {c.id: c.effective_alpha for c in self.components}

    def with_strata(self, strata: Mapping[Subset, MotClass]) -> "StratifiedConfig":
        return replace(self, open_strata=dict(strata))

    def sorted_strata(self) -> List[Tuple[Subset, MotClass]]:
        order = {cid: i for i, cid in enumerate(self.ids)}
        return sorted(self.open_strata.items(),
                      key=lambda kv: (len(kv[0]), sorted(order.get(x, len(order)) for x in kv[0])))


@dataclass(frozen=True)
class ClosedStrataInput:
    """Closed strata ``E_I`` with their dimensions."""

    strata: Mapping[Subset, Tuple[MotClass, int]]

    def __post_init__(self):
        object.__setattr__(self, "strata", {frozenset(k): v for k, v in self.strata.items()})

    @property
    def n(self) -> int:
        return self.strata[frozenset()][1]


@dataclass
class ValidationReport:
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "valid" if self.ok else "\n".join(self.violations)


def _check_poly(p: LaurentPoly, m: int, allowed: Iterable[int], what: str, out: List[str]):
    allowed = set(allowed)
    for e in p.terms:
        if any(k for i, k in enumerate(e) if i not in allowed):
            out.append(f"{what}: uses variables outside its realization")
            return
        if any(k % m for k in e):
            out.append(f"scaling mismatch: {what} has an exponent that is not a multiple of m={m}")
            return


def validate(c: StratifiedConfig) -> ValidationReport:
    """Collect violations of the configuration invariants; never raises."""
    out: List[str] = []
    if not isinstance(c.n, int) or c.n < 1:
        out.append(f"dimension must be a positive integer, got {c.n!r}")
    if not isinstance(c.m, int) or c.m < 1:
        out.append(f"scaling m must be a positive integer, got {c.m!r}")
        return ValidationReport(out)
    ids = c.ids
    if len(set(ids)) != len(ids):
        out.append("duplicate component ids")
    for comp in c.components:
        if comp.has_alpha == comp.has_resolution:
            if comp.alpha is not None:
                out.append(f"component {comp.id}: give either alpha or (nu, N), not both")
            elif comp.nu is not None or comp.N is not None:
                out.append(f"component {comp.id}: resolution data needs both nu and N")
            else:
                out.append(f"component {comp.id}: no multiplicity data")
            continue
        for name in ("alpha", "nu", "N"):
            v = getattr(comp, name)
            if v is not None and (v * c.m).denominator != 1:
                out.append(f"scaling mismatch: component {comp.id} has {name}={v} "
                           f"with denominator not dividing m={c.m}")
        if comp.has_resolution and comp.nu < 1:
            out.append(f"component {comp.id}: nu={comp.nu} < 1 (ambient must be canonical)")
    known = set(ids)
    for key, cls in c.open_strata.items():
        label = "{" + ",".join(sorted(key)) + "}"
        if len(key) > c.n:
            out.append(f"stratum dimension negative: {label} has {len(key)} > n={c.n} components")
        unknown = key - known
        if unknown:
            out.append(f"stratum {label} references unknown components {sorted(unknown)}")
        if cls.lpoly is not None:
            _check_poly(cls.lpoly, c.m, (_T,), f"L-class of {label}", out)
        if cls.hodge is not None:
            _check_poly(cls.hodge, c.m, (_U, _V), f"Hodge class of {label}", out)
        if not cls.consistent():
            out.append(f"realization mismatch: Hodge class of {label} with uv -> L differs from its L-class")
    return ValidationReport(out)


def ensure_valid(c: StratifiedConfig) -> StratifiedConfig:
    report = validate(c)
    if not report.ok:
        raise InvalidConfig(report.violations)
    return c


def _sum(classes: Iterable[MotClass]) -> MotClass:
    total = None
    for cl in classes:
        total = cl if total is None else total + cl
    return total if total is not None else ZERO_CLASS


def total_class(c: StratifiedConfig) -> MotClass:
    """[Y] as the sum of all open strata."""
    return _sum(c.open_strata.values())


def _supersets(key: Subset, keys: Iterable[Subset]):
    return [j for j in keys if key <= j]


def _down_closure(keys: Iterable[Subset]) -> set:
    out = set()
    for k in keys:
        items = sorted(k)
        for r in range(len(items) + 1):
            out.update(frozenset(s) for s in combinations(items, r))
    return out


def closed_from_open(c: StratifiedConfig) -> Dict[Subset, MotClass]:
    """[E_I] = sum over J containing I of [E_J°]."""
    keys = list(c.open_strata)
    out = {}
    for i in _down_closure(keys):
        cl = _sum(c.open_strata[j] for j in _supersets(i, keys))
        if not cl.is_zero():
            out[i] = cl
    return out


def open_from_closed(cs: ClosedStrataInput) -> Dict[Subset, MotClass]:
    """Moebius inversion: [E_I°] = sum over J containing I of (-1)^|J-I| [E_J]."""
    keys = list(cs.strata)
    out = {}
    for i in keys:
        total = None
        for j in _supersets(i, keys):
            cl = cs.strata[j][0]
            term = cl if (len(j) - len(i)) % 2 == 0 else -cl
            total = term if total is None else total + term
        if total is not None and not total.is_zero():
            out[i] = total
    return out


def closed_strata_input(c: StratifiedConfig) -> ClosedStrataInput:
    """Closed strata of ``c`` with the normal-crossings dimensions n - |I|."""
    return ClosedStrataInput({k: (cl, c.n - len(k)) for k, cl in closed_from_open(c).items()})


def validate_closed(cs: ClosedStrataInput, n: Optional[int] = None) -> ValidationReport:
    out: List[str] = []
    strata = cs.strata
    if frozenset() not in strata:
        out.append("closed strata must include the ambient stratum (empty subset)")
        return ValidationReport(out)
    n0 = strata[frozenset()][1]
    if n is not None and n0 != n:
        out.append(f"ambient dimension {n0} differs from n={n}")
    for j, (cl, dj) in strata.items():
        for i, (_, di) in strata.items():
            if i < j and di < dj:
                out.append(f"dimension not monotone: {sorted(i)} has {di} < {dj} of {sorted(j)}")
        if not cl.is_zero():
            for i in _down_closure([j]):
                if i not in strata:
                    out.append(f"support not monotone: {sorted(j)} present but {sorted(i)} missing")
    return ValidationReport(out)


def restrict(c: StratifiedConfig, w: Mapping[Subset, MotClass]) -> StratifiedConfig:
    """Replace the stratum classes by the classes of their intersections with W."""
    strata = {}
    for key, cl in w.items():
        key = frozenset(key)
        if key not in c.open_strata and not cl.is_zero():
            raise UnknownStratum(f"stratum {sorted(key)} is empty in the configuration")
        if not cl.is_zero():
            strata[key] = cl
    return c.with_strata(strata)
