"""Exact Laurent polynomials and their fractions.

Everything here works over a fixed ordered variable set

    t < tau < U < V

with integer exponents.  For a scaling integer ``m`` chosen once per
computation the variables stand for fractional powers:

    t**m = L,   tau**m = T = L**(-s),   U**m = u,   V**m = v

so that ``L**(k/m)`` is simply ``t**k``.  Coefficients are
:class:`fractions.Fraction` throughout.

Equality of :class:`RingElem` values is decided by cross-multiplication.
No multivariate gcd is attempted; a univariate gcd is applied whenever all
exponent vectors of an element lie on a single ray (``t`` only, ``UV`` only,
...), which covers every principal value we print.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

from .errors import (DenominatorVanishes, InversionOfZero, PoleAtPoint,
                     PreconditionError)

VARS = ("t", "tau", "U", "V")
NVARS = len(VARS)
ZERO_EXP = (0,) * NVARS

# pretty-printing symbol for each variable
SYMBOLS = {"t": "L", "tau": "T", "U": "u", "V": "v"}

Exp = Tuple[int, ...]
Number = Union[int, Fraction]


def var_index(name: str) -> int:
    try:
        return VARS.index(name)
    except ValueError:
        raise KeyError(f"unknown variable {name!r}") from None


def exp_of(**powers: int) -> Exp:
    """Exponent tuple from keyword powers, e.g. ``exp_of(t=2, tau=-1)``."""
    e = [0] * NVARS
    for name, k in powers.items():
        e[var_index(name)] = int(k)
    return tuple(e)


def _add_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


class LaurentPoly:
    """Sparse Laurent polynomial: exponent tuple -> nonzero Fraction.

    Instances are treated as immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Exp, Number]] = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != NVARS:
                    raise ValueError(f"exponent vector {e!r} has wrong length")
                c = Fraction(c)
                if c:
                    clean[tuple(int(x) for x in e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exp, Fraction]) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # -- constructors ---------------------------------------------------

    @classmethod
    def const(cls, c: Number) -> "LaurentPoly":
        return cls({ZERO_EXP: c})

    @classmethod
    def monomial(cls, exps: Exp = ZERO_EXP, coef: Number = 1) -> "LaurentPoly":
        return cls({tuple(exps): coef})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "LaurentPoly":
        e = [0] * NVARS
        e[var_index(name)] = power
        return cls({tuple(e): 1})

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> Dict[Exp, Fraction]:
        return dict(self._terms)

    def items(self):
        """Terms in descending monomial (lex) order."""
        return sorted(self._terms.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_const(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ZERO_EXP in self._terms)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("not a constant")
        return self._terms.get(ZERO_EXP, Fraction(0))

    def leading(self) -> Tuple[Exp, Fraction]:
        e = max(self._terms)
        return e, self._terms[e]

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for e in self._terms:
            used.update(i for i, x in enumerate(e) if x)
        return tuple(VARS[i] for i in sorted(used))

    def min_exps(self) -> Exp:
        return tuple(min(e[i] for e in self._terms) for i in range(NVARS))

    def max_exps(self) -> Exp:
        return tuple(max(e[i] for e in self._terms) for i in range(NVARS))

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self.items()!r})"

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: Dict[Exp, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exp(e1, e2)
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly._raw(out)

    __rmul__ = __mul__

    def scale(self, c: Number) -> "LaurentPoly":
        c = Fraction(c)
        if not c:
            return LaurentPoly()
        return LaurentPoly._raw({e: v * c for e, v in self._terms.items()})

    def shift(self, exps: Exp) -> "LaurentPoly":
        """Multiply by the monomial with exponent vector ``exps``."""
        return LaurentPoly._raw({_add_exp(e, exps): c for e, c in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (e, c), = self._terms.items()
            return LaurentPoly({tuple(x * k for x in e): Fraction(c) ** k})
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, other: "LaurentPoly") -> Optional["LaurentPoly"]:
        """Quotient ``self / other`` if it is a Laurent polynomial, else None."""
        if other.is_zero():
            raise InversionOfZero("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        if other.is_monomial():
            (e, c), = other._terms.items()
            neg = tuple(-x for x in e)
            return self.shift(neg).scale(1 / c)
        # the quotient's exponents must lie in this box (degree additivity
        # in each variable over a domain)
        lo = _sub_exp(self.min_exps(), other.min_exps())
        hi = _sub_exp(self.max_exps(), other.max_exps())
        if any(a > b for a, b in zip(lo, hi)):
            return None
        lead_e, lead_c = other.leading()
        rem = dict(self._terms)
        quot: Dict[Exp, Fraction] = {}
        while rem:
            e = max(rem)
            qe = _sub_exp(e, lead_e)
            if any(x < a or x > b for x, a, b in zip(qe, lo, hi)):
                return None
            qc = rem[e] / lead_c
            quot[qe] = qc
            for oe, oc in other._terms.items():
                te = _add_exp(qe, oe)
                s = rem.get(te, 0) - qc * oc
                if s:
                    rem[te] = s
                else:
                    rem.pop(te, None)
        return LaurentPoly._raw(quot)

    def substitute(self, var: str, target: Exp, coef: Number = 1) -> "LaurentPoly":
        """Replace ``var`` by ``coef * x**target``."""
        i = var_index(var)
        coef = Fraction(coef)
        out: Dict[Exp, Fraction] = {}
        for e, c in self._terms.items():
            k = e[i]
            base = list(e)
            base[i] = 0
            ne = tuple(b + k * x for b, x in zip(base, target))
            v = c * coef ** k if k else c
            s = out.get(ne, 0) + v
            if s:
                out[ne] = s
            else:
                out.pop(ne, None)
        return LaurentPoly._raw(out)

    def map_exps(self, fn) -> "LaurentPoly":
        out: Dict[Exp, Fraction] = {}
        for e, c in self._terms.items():
            ne = tuple(fn(e))
            s = out.get(ne, 0) + c
            if s:
                out[ne] = s
            else:
                out.pop(ne, None)
        return LaurentPoly._raw(out)

    def evaluate(self, point: Mapping[str, Union[Number, float]]):
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    name = VARS[i]
                    if name not in point:
                        raise PreconditionError(f"no value given for variable {name}")
                    x = point[name]
                    if k < 0 and x == 0:
                        raise PoleAtPoint(f"{name} = 0 with negative exponent")
                    v = v * (x ** k)
            total = total + v
        return total


# -- univariate helpers (dense coefficient lists, index = degree) --------

def _trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _udivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / lb
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
        _trim(a)
    return _trim(q), a


def _ugcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _udivmod(a, b)
        a, b = b, r
    if not a:
        return [Fraction(1)]
    lead = a[-1]
    return [c / lead for c in a]


def _ray(vectors: Iterable[Exp]) -> Optional[Exp]:
    """Primitive g with every vector an integer multiple k*g, k >= 0."""
    g = None
    for v in vectors:
        if not any(v):
            continue
        if g is None:
            d = 0
            for x in v:
                d = gcd(d, x)
            g = tuple(x // d for x in v)
            continue
        j = next(i for i, x in enumerate(g) if x)
        if v[j] % g[j]:
            return None
        k = v[j] // g[j]
        if k < 0 or tuple(k * x for x in g) != v:
            return None
    return g


def _reduce_on_ray(num: LaurentPoly, den: LaurentPoly):
    g = _ray(list(num._terms) + list(den._terms))
    if g is None:
        return num, den
    j = next((i for i, x in enumerate(g) if x), None)
    if j is None:
        return num, den

    def dense(p):
        out = [Fraction(0)] * (max(e[j] // g[j] for e in p._terms) + 1)
        for e, c in p._terms.items():
            out[e[j] // g[j]] = c
        return out

    a, b = dense(num), dense(den)
    h = _ugcd(a, b)
    if len(h) == 1:
        return num, den
    qa, ra = _udivmod(a, h)
    qb, rb = _udivmod(b, h)
    assert not ra and not rb

    def sparse(coeffs):
        return LaurentPoly._raw({tuple(k * x for x in g): c for k, c in enumerate(coeffs) if c})

    return sparse(qa), sparse(qb)


def _normalize(num: LaurentPoly, den: LaurentPoly):
    if den.is_zero():
        raise InversionOfZero("zero denominator")
    if num.is_zero():
        return LaurentPoly(), LaurentPoly.const(1)
    a, b = num.min_exps(), den.min_exps()
    d = _sub_exp(a, b)
    num = num.shift(tuple(max(x, 0) - y for x, y in zip(d, a)))
    den = den.shift(tuple(max(-x, 0) - y for x, y in zip(d, b)))
    num, den = _reduce_on_ray(num, den)
    _, lc = den.leading()
    if lc != 1:
        num, den = num.scale(1 / lc), den.scale(1 / lc)
    return num, den


class RingElem:
    """A fraction of Laurent polynomials, kept in normal form.

    Normal form: numerator and denominator are polynomials with no common
    monomial factor, the denominator is monic in lex order, and a common
    univariate factor is cancelled when the element lives on one ray.
    Equality is semantic.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1, *, _normalized=False):
        num = LaurentPoly._coerce(num)
        den = LaurentPoly._coerce(den)
        if not _normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    __hash__ = None

    @classmethod
    def coerce(cls, x) -> "RingElem":
        if isinstance(x, RingElem):
            return x
        if isinstance(x, (int, Fraction, LaurentPoly)):
            return cls(x)
        if isinstance(x, Rational):
            return cls(Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to RingElem")

    @classmethod
    def var(cls, name: str, power: int = 1) -> "RingElem":
        return cls(LaurentPoly.var(name, power))

    @classmethod
    def monomial(cls, exps: Exp = ZERO_EXP, coef: Number = 1) -> "RingElem":
        return cls(LaurentPoly.monomial(exps, coef))

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_polynomial(self) -> bool:
        """True if the denominator is a monomial (a Laurent polynomial)."""
        return self.den.is_monomial()

    def as_laurent(self) -> LaurentPoly:
        if not self.den.is_monomial():
            raise ValueError("element is not a Laurent polynomial")
        return self.num.exact_div(self.den)

    def variables(self) -> Tuple[str, ...]:
        names = set(self.num.variables()) | set(self.den.variables())
        return tuple(v for v in VARS if v in names)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        try:
            other = RingElem.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return RingElem(self.num + other.num, self.den)
        q = self.den.exact_div(other.den)
        if q is not None:
            return RingElem(self.num + other.num * q, self.den)
        q = other.den.exact_div(self.den)
        if q is not None:
            return RingElem(self.num * q + other.num, other.den)
        return RingElem(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RingElem(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        try:
            other = RingElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RingElem.coerce(other) - self

    def __mul__(self, other):
        try:
            other = RingElem.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RingElem()
        return RingElem(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self) -> "RingElem":
        if self.is_zero():
            raise InversionOfZero("inverse of zero")
        return RingElem(self.den, self.num)

    def __truediv__(self, other):
        try:
            other = RingElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return RingElem.coerce(other) * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        return RingElem(self.num ** k, self.den ** k)

    def __eq__(self, other):
        try:
            other = RingElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __repr__(self):
        return f"RingElem({render(self, 1, 'raw')})"

    # -- substitution and evaluation -----------------------------------

    def substitute(self, var: str, target: Exp, coef: Number = 1) -> "RingElem":
        den = self.den.substitute(var, target, coef)
        if den.is_zero():
            raise DenominatorVanishes(
                f"denominator vanishes under {var} -> {format_monomial(target, 1, 'raw')}")
        return RingElem(self.num.substitute(var, target, coef), den)

    def invert_variables(self, names: Iterable[str] = VARS) -> "RingElem":
        idx = {var_index(n) for n in names}

        def flip(e):
            return tuple(-x if i in idx else x for i, x in enumerate(e))

        return RingElem(self.num.map_exps(flip), self.den.map_exps(flip))

    def evaluate(self, point: Mapping[str, Union[Number, float]]):
        point = {k: (v if isinstance(v, float) else Fraction(v)) for k, v in point.items()}
        d = self.den.evaluate(point)
        if d == 0:
            raise PoleAtPoint(f"denominator vanishes at {point}")
        return self.num.evaluate(point) / d


def arith(op: str, a, b=None) -> RingElem:
    """Functional front end: ``op`` in add, sub, mul, neg, inv."""
    a = RingElem.coerce(a)
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    b = RingElem.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def equals(a, b) -> bool:
    return RingElem.coerce(a) == RingElem.coerce(b)


def substitute(a, var: str, target: Exp, coef: Number = 1) -> RingElem:
    return RingElem.coerce(a).substitute(var, target, coef)


def evaluate(a, point):
    return RingElem.coerce(a).evaluate(point)


# -- rendering -------------------------------------------------------------

def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _power_str(base: str, q: Fraction) -> str:
    if q == 1:
        return base
    if q.denominator == 1 and q > 0:
        return f"{base}^{q.numerator}"
    return f"{base}^({_frac_str(q)})"


def format_monomial(e: Exp, m: int, style: str = "pretty") -> str:
    """Monomial text; ``raw`` keeps internal variable names and integer exponents."""
    if style == "raw":
        parts = [f"{VARS[i]}^{k}" if k != 1 else VARS[i] for i, k in enumerate(e) if k]
        return "*".join(parts) or "1"
    return _monomial_pretty(e, m)[0]


def _monomial_pretty(e: Exp, m: int):
    """(text, atomic) where atomic means safe as the right operand of '/'."""
    t, tau, u, v = e
    parts = []
    if t:
        parts.append(_power_str("L", Fraction(t, m)))
    if tau:
        parts.append(_power_str("T", Fraction(tau, m)))
    if u and u == v:
        q = Fraction(u, m)
        parts.append("uv" if q == 1 else f"(uv)^{_power_str('', q)[1:]}")
        if q == 1:
            # "uv" is two juxtaposed symbols
            return "*".join(parts), False
    else:
        if u:
            parts.append(_power_str("u", Fraction(u, m)))
        if v:
            parts.append(_power_str("v", Fraction(v, m)))
    if not parts:
        return "1", True
    return "*".join(parts), len(parts) == 1


def _poly_pretty(p: LaurentPoly, m: int) -> str:
    if p.is_zero():
        return "0"
    out = []
    for k, (e, c) in enumerate(p.items()):
        mono, _ = _monomial_pretty(e, m)
        mag = abs(c)
        if mono == "1":
            body = _frac_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_frac_str(mag)}*{mono}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def _poly_raw(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    return " + ".join(f"{_frac_str(c)}*{format_monomial(e, 1, 'raw')}" for e, c in p.items())


def machine_terms(p: LaurentPoly):
    return [{"exp": {VARS[i]: k for i, k in enumerate(e) if k}, "coef": _frac_str(c)}
            for e, c in p.items()]


def machine_dict(a: RingElem, m: int) -> dict:
    return {"num": machine_terms(a.num), "den": machine_terms(a.den), "m": m}


def from_machine_dict(d: Mapping) -> RingElem:
    def poly(terms):
        out = {}
        for term in terms:
            out[exp_of(**term["exp"])] = Fraction(term["coef"])
        return LaurentPoly(out)

    return RingElem(poly(d["num"]), poly(d["den"]))


def render(a, m: int = 1, style: str = "pretty") -> str:
    """Text form of ``a``.

    ``pretty`` writes L/T/u/v with fractional exponents (e.g.
    ``-(L + L^(1/2) + 1)/L^(3/2)``) and parses back through the expression
    grammar; ``machine`` is a JSON term list; ``raw`` uses internal names.
    """
    a = RingElem.coerce(a)
    if style == "machine":
        return json.dumps(machine_dict(a, m))
    if style == "raw":
        if a.den == 1:
            return _poly_raw(a.num)
        return f"({_poly_raw(a.num)})/({_poly_raw(a.den)})"
    if style != "pretty":
        raise ValueError(f"unknown style {style!r}")
    num, den = a.num, a.den
    if den.is_monomial():
        (e, c), = den.items()
        num = num.scale(1 / c)
        if not any(e):
            return _poly_pretty(num, m)
        den_s, atomic = _monomial_pretty(e, m)
        if not atomic:
            den_s = f"({den_s})"
    else:
        den_s = f"({_poly_pretty(den, m)})"
    if num.is_monomial():
        (e, c), = num.items()
        if not any(e):
            return f"{_frac_str(c)}/{den_s}"
        return f"{_poly_pretty(num, m)}/{den_s}" if abs(c) == 1 and _monomial_pretty(e, m)[1] \
            else f"({_poly_pretty(num, m)})/{den_s}"
    _, lc = num.leading()
    if lc < 0:
        return f"-({_poly_pretty(-num, m)})/{den_s}"
    return f"({_poly_pretty(num, m)})/{den_s}"
