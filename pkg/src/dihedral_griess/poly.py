"""Sparse multivariate polynomials with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping


def _mono_mul(m1: tuple, m2: tuple) -> tuple:
    exps = dict(m1)
    for var, e in m2:
        exps[var] = exps.get(var, 0) + e
    return tuple(sorted(exps.items()))


class Poly:
    """Immutable polynomial; monomials are sorted ``((var, exp), ...)`` tuples."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if clean[mono] == 0:
                    del clean[mono]
        self.terms = clean

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): c})

    @staticmethod
    def _lift(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return Poly(terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return Poly(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        result = Poly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def variables(self) -> frozenset:
        return frozenset(v for m in self.terms for v, _ in m)

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e for _, e in m) for m in self.terms)
        return max(dict(m).get(var, 0) for m in self.terms)

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def subs(self, values: Mapping) -> "Poly":
        """Substitute numbers or polynomials for variables."""
        out = Poly()
        for mono, c in self.terms.items():
            term = Poly.const(c)
            for var, e in mono:
                term = term * (Poly._lift(values[var]) ** e if var in values
                               else Poly({((var, e),): 1}))
            out = out + term
        return out

    def univariate_coeffs(self, var: str) -> list:
        """Coefficients ``[c0, c1, ...]`` of a polynomial in ``var`` alone."""
        if self.variables - {var}:
            raise ValueError("polynomial is not univariate in " + var)
        coeffs = [Fraction(0)] * (max(self.degree(var), 0) + 1)
        for mono, c in self.terms.items():
            coeffs[dict(mono).get(var, 0)] += c
        return coeffs

    def normalized(self) -> "Poly":
        """Scale so that the leading (highest-sorted) coefficient is 1."""
        if not self.terms:
            return self
        lead = self.terms[max(self.terms, key=lambda m: (sum(e for _, e in m), m))]
        return self * (1 / lead)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (-sum(e for _, e in m), m)):
            c = self.terms[mono]
            vars_ = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            parts.append(f"{c}" if not vars_ else (vars_ if c == 1 else f"{c}*{vars_}"))
        return " + ".join(parts)
