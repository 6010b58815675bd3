"""Multivariate power series over Q truncated by total degree.

A :class:`TruncSeries` with order ``N`` represents a class modulo the ideal of
monomials of total degree ``N + 1``.  Everything is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, Mapping, Sequence, Tuple

from .mpoly import Exp, MPoly, PoleAtOrigin, RatFunc, _evaluate_terms, _frac


class TruncationMismatch(ValueError):
    pass


class NonUnitConstantTerm(ValueError):
    pass


class TruncSeries:
    __slots__ = ("vars", "order", "terms")

    def __init__(self, variables: Sequence[str], order: int, terms: Mapping[Exp, object] | None = None):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        self.vars: Tuple[str, ...] = tuple(variables)
        self.order = order
        out: Dict[Exp, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(self.vars):
                raise ValueError(f"exponent {e} does not match variables {self.vars}")
            if sum(e) > order:
                continue
            c = _frac(c)
            if c:
                out[e] = out.get(e, 0) + c
                if not out[e]:
                    del out[e]
        self.terms: Dict[Exp, Fraction] = out

    @classmethod
    def _raw(cls, variables, order, terms):
        s = cls.__new__(cls)
        s.vars = variables
        s.order = order
        s.terms = terms
        return s

    @classmethod
    def const(cls, variables, order, c) -> "TruncSeries":
        variables = tuple(variables)
        return cls(variables, order, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables, order, name) -> "TruncSeries":
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, order, {tuple(e): 1})

    @classmethod
    def from_poly(cls, p: MPoly, order: int) -> "TruncSeries":
        return cls(p.vars, order, p.terms)

    # ------------------------------------------------------------------
    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            if other.vars != self.vars:
                raise TruncationMismatch(f"variables differ: {self.vars} vs {other.vars}")
            if other.order != self.order:
                raise TruncationMismatch(f"orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise TruncationMismatch(f"variables differ: {self.vars} vs {other.vars}")
            return TruncSeries.from_poly(other, self.order)
        return TruncSeries.const(self.vars, self.order, other)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def coefficient(self, e) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def __getitem__(self, e):
        return self.coefficient(e)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        o = self._coerce(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return TruncSeries._raw(self.vars, self.order, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._raw(self.vars, self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (TruncSeries, MPoly)):
            c = _frac(other)
            if not c:
                return TruncSeries(self.vars, self.order)
            return TruncSeries._raw(self.vars, self.order, {e: v * c for e, v in self.terms.items()})
        o = self._coerce(other)
        N = self.order
        out: Dict[Exp, Fraction] = {}
        # bucket the right factor by degree to skip hopeless pairs early
        by_deg: Dict[int, list] = {}
        for e, c in o.terms.items():
            by_deg.setdefault(sum(e), []).append((e, c))
        for e1, c1 in self.terms.items():
            room = N - sum(e1)
            if room < 0:
                continue
            for d, bucket in by_deg.items():
                if d > room:
                    continue
                for e2, c2 in bucket:
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, 0) + c1 * c2
        return TruncSeries._raw(self.vars, N, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def inverse(self) -> "TruncSeries":
        c0 = self.constant_term()
        if not c0:
            raise PoleAtOrigin("series with zero constant term is not invertible")
        # 1/(c0 (1 + r)) = (1/c0) sum (-r)^k, r has no constant term
        r = self * (1 / c0) - 1
        result = TruncSeries.const(self.vars, self.order, 1)
        term = TruncSeries.const(self.vars, self.order, 1)
        for _ in range(self.order):
            term = term * (-r)
            if term.is_zero():
                break
            result = result + term
        return result * (1 / c0)

    def __truediv__(self, other):
        if isinstance(other, (TruncSeries, MPoly)):
            return self * self._coerce(other).inverse()
        return self * (1 / _frac(other))

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncSeries.const(self.vars, self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TruncationMismatch, TypeError):
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    # ------------------------------------------------------------------
    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise TruncationMismatch("cannot raise truncation order")
        return TruncSeries(self.vars, order, self.terms)

    def homogeneous_part(self, k: int) -> Dict[Exp, Fraction]:
        return {e: c for e, c in self.terms.items() if sum(e) == k}

    def to_poly(self) -> MPoly:
        return MPoly(self.vars, self.terms)

    def items(self) -> Iterator[Tuple[Exp, Fraction]]:
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            yield e, self.terms[e]

    def log(self) -> "TruncSeries":
        """Logarithm of a series with constant term exactly 1."""
        if self.constant_term() != 1:
            raise NonUnitConstantTerm(f"log needs constant term 1, got {self.constant_term()}")
        r = self - 1
        result = TruncSeries(self.vars, self.order)
        term = TruncSeries.const(self.vars, self.order, 1)
        for k in range(1, self.order + 1):
            term = term * r
            if term.is_zero():
                break
            result = result + term * Fraction((-1) ** (k + 1), k)
        return result

    def exp(self) -> "TruncSeries":
        if self.constant_term() != 0:
            raise ValueError("exp needs zero constant term")
        result = TruncSeries.const(self.vars, self.order, 1)
        term = TruncSeries.const(self.vars, self.order, 1)
        for k in range(1, self.order + 1):
            term = term * self * Fraction(1, k)
            if term.is_zero():
                break
            result = result + term
        return result

    def __str__(self):
        body = str(self.to_poly())
        return f"{body} + O(deg {self.order + 1})"

    def __repr__(self):
        return f"TruncSeries({str(self)!r})"


def all_exponents(nvars: int, order: int, min_degree: int = 0):
    """Exponent vectors of total degree in ``[min_degree, order]``, graded."""
    out = []
    for d in range(min_degree, order + 1):
        out.extend(_exps_of_degree(nvars, d))
    return out


def _exps_of_degree(n, d):
    if n == 0:
        return [()] if d == 0 else []
    if n == 1:
        return [(d,)]
    out = []
    for k in range(d, -1, -1):
        for rest in _exps_of_degree(n - 1, d - k):
            out.append((k,) + rest)
    return out


def poly_of_series(p: MPoly, values: Mapping[str, TruncSeries]) -> TruncSeries:
    """Evaluate a polynomial at series arguments."""
    vals = [values[v] for v in p.vars]
    out = _evaluate_terms(p.terms, vals, len(p.vars))
    if isinstance(out, TruncSeries):
        return out
    any_series = next(iter(values.values()))
    return TruncSeries.const(any_series.vars, any_series.order, out)


def rat_expand(f: RatFunc, order: int) -> TruncSeries:
    """Taylor expansion at the origin of a rational function."""
    den = TruncSeries.from_poly(f.den, order)
    if not den.constant_term():
        raise PoleAtOrigin(f"denominator {f.den} vanishes at the origin")
    return TruncSeries.from_poly(f.num, order) * den.inverse()
