"""Sparse multivariate polynomials and rational functions over the rationals.

Terms are stored as ``{exponent tuple: Fraction}`` with zero coefficients
never kept.  Both types carry their variable names; binary operations
require identical variable tuples (use :meth:`MPoly.extend` to widen).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

import sympy

Exp = Tuple[int, ...]


class VariableMismatch(ValueError):
    pass


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class MPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exp, object] | None = None):
        self.vars: Tuple[str, ...] = tuple(variables)
        n = len(self.vars)
        clean: Dict[Exp, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match {n} variables")
            c = _frac(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self.terms: Dict[Exp, Fraction] = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, variables, c) -> "MPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables, name: str) -> "MPoly":
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def gens(cls, variables) -> Tuple["MPoly", ...]:
        return tuple(cls.var(variables, v) for v in variables)

    @classmethod
    def _raw(cls, variables, terms: Dict[Exp, Fraction]) -> "MPoly":
        p = cls.__new__(cls)
        p.vars = variables
        p.terms = terms
        return p

    # -- basic queries ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def _check(self, other: "MPoly"):
        if self.vars != other.vars:
            raise VariableMismatch(f"{self.vars} vs {other.vars}")

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        return MPoly.const(self.vars, other)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, RatFunc):
            return RatFunc(self) + other
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, RatFunc):
            return RatFunc(self) - other
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return RatFunc(self) * other
        if not isinstance(other, MPoly):
            c = _frac(other)
            if not c:
                return MPoly(self.vars)
            return MPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        out: Dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly._raw(self.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (MPoly, RatFunc)):
            return RatFunc(self) / other
        c = _frac(other)
        return self * (1 / c)

    def __rtruediv__(self, other):
        return RatFunc(self._coerce(other)) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(self) ** n
        result = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return RatFunc(self) == other
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        try:
            return self.terms == MPoly.const(self.vars, other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- structural ---------------------------------------------------------
    def extend(self, variables: Sequence[str]) -> "MPoly":
        """Re-express over a superset (or reordering) of the variables."""
        variables = tuple(variables)
        idx = []
        for v in self.vars:
            if v not in variables:
                if self.degree(v) > 0:
                    raise VariableMismatch(f"variable {v} still occurs")
                idx.append(None)
            else:
                idx.append(variables.index(v))
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for k, i in zip(e, idx):
                if i is not None:
                    ne[i] = k
            out[tuple(ne)] = c
        return MPoly._raw(variables, out)

    def coefficients_in(self, name: str) -> list:
        """Coefficients (as MPolys in the same variables) of powers of ``name``."""
        i = self.vars.index(name)
        d = self.degree(name)
        out = [dict() for _ in range(max(d + 1, 0))]
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out[k][ne] = c
        return [MPoly._raw(self.vars, t) for t in out]

    def diff(self, name: str) -> "MPoly":
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return MPoly._raw(self.vars, out)

    def homogeneous_part(self, k: int) -> "MPoly":
        return MPoly._raw(self.vars, {e: c for e, c in self.terms.items() if sum(e) == k})

    def evaluate(self, values: Mapping[str, object]):
        """Substitute values for every variable.

        Values may be rationals, MPolys, RatFuncs or truncated series; the
        result lives in whatever ring the values live in.
        """
        vals = [values[v] for v in self.vars]
        return _evaluate_terms(self.terms, vals, len(self.vars))

    def subs(self, mapping: Mapping[str, object]):
        """Substitute some variables, keeping the rest as variables."""
        values = {}
        for v in self.vars:
            if v in mapping:
                values[v] = mapping[v]
            else:
                values[v] = MPoly.var(self.vars, v)
        return self.evaluate(values)

    def content(self) -> Fraction:
        """Positive rational ``c`` with ``self / c`` primitive integral."""
        from math import gcd

        if not self.terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def leading_coefficient(self) -> Fraction:
        e = max(self.terms)
        return self.terms[e]

    def monic_normalized(self) -> "MPoly":
        """Primitive integral form with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self * (1 / c)

    # -- sympy bridge ----------------------------------------------------
    def to_sympy(self):
        syms = sympy.symbols(self.vars) if self.vars else ()
        expr = sympy.Integer(0)
        for e, c in self.terms.items():
            t = sympy.Rational(c.numerator, c.denominator)
            for s, k in zip(syms, e):
                t *= s**k
            expr += t
        return expr

    @classmethod
    def from_sympy(cls, variables, expr) -> "MPoly":
        variables = tuple(variables)
        if not variables:
            return cls.const((), Fraction(str(sympy.nsimplify(expr))))
        poly = sympy.Poly(sympy.expand(expr), *sympy.symbols(variables))
        terms = {}
        for mon, c in poly.terms():
            c = sympy.Rational(c)
            terms[tuple(mon)] = Fraction(int(c.p), int(c.q))
        return cls(variables, terms)

    # -- printing -----------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-k for k in e))):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                cs = str(c)
                if c.denominator != 1:
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"MPoly({str(self)!r}, vars={self.vars})"


def _evaluate_terms(terms, vals, n):
    # cache powers per variable; values only need +, * and ** with ints >= 0
    cache = [dict() for _ in range(n)]

    def power(i, k):
        p = cache[i].get(k)
        if p is None:
            if k == 1:
                p = vals[i]
            elif k % 2 == 0:
                h = power(i, k // 2)
                p = h * h
            else:
                p = power(i, k - 1) * vals[i]
            cache[i][k] = p
        return p

    total = None
    for e, c in terms.items():
        t = None
        for i, k in enumerate(e):
            if k:
                t = power(i, k) if t is None else t * power(i, k)
        t = c if t is None else t * c
        total = t if total is None else total + t
    if total is None:
        return Fraction(0)
    return total


class PoleAtOrigin(ZeroDivisionError):
    pass


class RatFunc:
    """Quotient of two MPolys over the same variables."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None, reduce: bool = False):
        if den is None:
            den = MPoly.const(num.vars, 1)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den
        if reduce:
            self._reduce()
        else:
            self._normalize_scalar()

    @property
    def vars(self):
        return self.num.vars

    def _normalize_scalar(self):
        if self.num.is_zero():
            self.den = MPoly.const(self.vars, 1)
            return
        c = self.den.content()
        if self.den.leading_coefficient() < 0:
            c = -c
        if c != 1:
            self.num = self.num * (1 / c)
            self.den = self.den * (1 / c)

    def _reduce(self):
        if self.num.is_zero():
            self.den = MPoly.const(self.vars, 1)
            return
        if not self.den.is_constant():
            n, d = self.num.to_sympy(), self.den.to_sympy()
            g = sympy.gcd(n, d)
            if g != 1 and not g.is_number:
                n = sympy.cancel(n / g)
                d = sympy.cancel(d / g)
                self.num = MPoly.from_sympy(self.vars, n)
                self.den = MPoly.from_sympy(self.vars, d)
        self._normalize_scalar()

    def reduced(self) -> "RatFunc":
        return RatFunc(self.num, self.den, reduce=True)

    @classmethod
    def const(cls, variables, c) -> "RatFunc":
        return cls(MPoly.const(variables, c))

    @classmethod
    def var(cls, variables, name) -> "RatFunc":
        return cls(MPoly.var(variables, name))

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.vars != self.vars:
                raise VariableMismatch(f"{self.vars} vs {other.vars}")
            return other
        if isinstance(other, MPoly):
            return RatFunc(other)
        return RatFunc(MPoly.const(self.vars, other))

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den, reduce=True)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den, reduce=True)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den, reduce=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, VariableMismatch):
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        r = self.reduced()
        return hash((r.num, r.den))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def evaluate(self, values: Mapping[str, object]):
        d = self.den.evaluate(values)
        if isinstance(d, Fraction) and d == 0:
            raise ZeroDivisionError("denominator vanishes at point")
        return self.num.evaluate(values) / d

    def subs(self, mapping):
        n = self.num.subs(mapping)
        d = self.den.subs(mapping)
        if not isinstance(n, RatFunc):
            n = RatFunc(n) if isinstance(n, MPoly) else RatFunc.const(self.vars, n)
        if not isinstance(d, RatFunc):
            d = RatFunc(d) if isinstance(d, MPoly) else RatFunc.const(self.vars, d)
        return n / d

    def extend(self, variables) -> "RatFunc":
        return RatFunc(self.num.extend(variables), self.den.extend(variables))

    def to_sympy(self):
        return self.num.to_sympy() / self.den.to_sympy()

    def __str__(self):
        r = self.reduced()
        if r.den == 1:
            return f"{r.num}"
        n = str(r.num)
        d = str(r.den)
        if len(r.num.terms) > 1:
            n = f"({n})"
        if len(r.den.terms) > 1 or "*" in d or "/" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({str(self)!r}, vars={self.vars})"


def common_vars(*groups: Iterable[str]) -> Tuple[str, ...]:
    out = []
    for g in groups:
        for v in g:
            if v not in out:
                out.append(v)
    return tuple(out)
