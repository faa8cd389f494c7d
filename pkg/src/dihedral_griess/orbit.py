"""Axis orbits under the dihedral group generated by the involutions of two axes.

Axes are indexed ``a_j`` with ``a_{2i} = f^{rho^i}`` and
``a_{2i-1} = e^{rho^i}`` where ``rho = tau_e tau_f``; indices live in
``{0, ..., n-1}`` with ``f = a_0`` and ``e = a_{n-1}``.  On indices
``tau_f`` acts as ``j -> -j`` and ``tau_e`` as ``j -> -j - 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .element import Element, axis_label
from .errors import InconsistentParametersError, ParameterBoundError
from .linalg import Matrix, format_rational, to_rational
from .relations import relation_vector

MAX_ORBIT = 16
MAX_ALGEBRA_ORBIT = 6
CITED_BOUND = Fraction(1, 3)
QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class OrbitModel:
    n: int
    period: int
    tau_e: tuple
    tau_f: tuple
    fused: bool  # e^T == f^T, i.e. n odd

    @property
    def e(self) -> int:
        return (-1) % self.period

    @property
    def f(self) -> int:
        return 0

    def idx(self, j: int) -> int:
        return j % self.period

    @property
    def rho(self) -> tuple:
        """``x^{rho} = (x^{tau_e})^{tau_f}``, i.e. ``j -> j + 2`` on indices."""
        return compose(self.tau_f, self.tau_e)

    @property
    def e_orbit(self) -> tuple:
        return _orbit(self.e, (self.tau_e, self.tau_f))

    @property
    def f_orbit(self) -> tuple:
        return _orbit(self.f, (self.tau_e, self.tau_f))

    def group(self) -> list:
        """All distinct index permutations generated by the two involutions."""
        ident = tuple(range(self.period))
        seen = {ident}
        frontier = [ident]
        while frontier:
            g = frontier.pop()
            for t in (self.tau_e, self.tau_f):
                h = compose(t, g)
                if h not in seen:
                    seen.add(h)
                    frontier.append(h)
        return sorted(seen)

    def to_json(self) -> dict:
        return {"n": self.n, "period": self.period,
                "tau_e": list(self.tau_e), "tau_f": list(self.tau_f)}


def compose(p: tuple, q: tuple) -> tuple:
    """``p`` after ``q``."""
    return tuple(p[q[i]] for i in range(len(q)))


def perm_order(p: tuple) -> int:
    order, cur, ident = 1, p, tuple(range(len(p)))
    while cur != ident:
        cur = compose(p, cur)
        order += 1
    return order


def _orbit(start: int, gens) -> tuple:
    seen = {start}
    frontier = [start]
    while frontier:
        j = frontier.pop()
        for g in gens:
            if g[j] not in seen:
                seen.add(g[j])
                frontier.append(g[j])
    return tuple(sorted(seen))


def build_orbit(n: int) -> OrbitModel:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"orbit size must be a positive integer, got {n!r}")
    if n > MAX_ORBIT:
        raise ValueError(f"orbit size capped at {MAX_ORBIT}")
    tau_f = tuple((-j) % n for j in range(n))
    tau_e = tuple((-j - 2) % n for j in range(n))
    return OrbitModel(n=n, period=n, tau_e=tau_e, tau_f=tau_f, fused=n % 2 == 1)


def involution_action(model: OrbitModel, which: str) -> tuple:
    if which == "e":
        return model.tau_e
    if which == "f":
        return model.tau_f
    raise ValueError(f"involution must be 'e' or 'f', got {which!r}")


def axis_distance(model: OrbitModel, j: int, k: int) -> int:
    d = (k - j) % model.period
    return min(d, model.period - d)


@dataclass(frozen=True)
class ParamRecord:
    """``lambda1 = (e|f)`` and ``lambda2 = (e|e^{tau_f})`` on the 4<.,.> scale."""

    lambda1: Fraction
    lambda2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lambda1", to_rational(self.lambda1))
        object.__setattr__(self, "lambda2", to_rational(self.lambda2))
        for name in ("lambda1", "lambda2"):
            v = getattr(self, name)
            if v != 1 and not 0 <= v <= CITED_BOUND:
                raise ParameterBoundError(
                    f"{name}={format_rational(v)} outside [0, 1/3] and not 1",
                    {name: format_rational(v)})

    @classmethod
    def from_inner_products(cls, ef, e_etf) -> "ParamRecord":
        return cls(4 * to_rational(ef), 4 * to_rational(e_etf))

    @property
    def ef(self) -> Fraction:
        return self.lambda1 / 4

    @property
    def e_etf(self) -> Fraction:
        return self.lambda2 / 4

    def to_json(self) -> dict:
        return {"lambda1": format_rational(self.lambda1),
                "lambda2": format_rational(self.lambda2),
                "ef": format_rational(self.ef),
                "e_etf": format_rational(self.e_etf)}


def spanning_labels(n: int) -> tuple:
    """Axes ``a0..a{n-1}`` then the alpha generators that are not aliases."""
    axes = tuple(f"a{j}" for j in range(n))
    if n == 1:
        return axes
    if n <= 3:
        return axes + ("alpha1",)
    return axes + ("alpha1", "alpha2")


def check_identifications(n: int, params: ParamRecord) -> None:
    """Orbit identifications force some parameters for small n."""
    l1, l2 = params.lambda1, params.lambda2
    problems = []
    if n == 1 and (l1 != 1 or l2 != 1):
        problems.append("n=1 means e=f, so lambda1 = lambda2 = 1")
    if n >= 2 and l1 == 1:
        problems.append("lambda1 = 1 only when e = f (n=1)")
    if n == 2 and l2 != 1:
        problems.append("n=2 means e^{tau_f} = e, so lambda2 = 1")
    if n == 3 and l2 != l1:
        problems.append("n=3 means e^{tau_f} and f are at the same distance from e, so lambda2 = lambda1")
    if n >= 4 and l2 == 1:
        problems.append("lambda2 = 1 only when e^{tau_f} = e (n <= 2)")
    if problems:
        raise InconsistentParametersError("; ".join(problems), {"n": n, **params.to_json()})


@dataclass(frozen=True)
class GramTable:
    n: int
    mu: dict  # axis distance -> <a_j, a_{j+d}>
    cross: dict  # (label, label) -> inner product, both orders stored
    labels: tuple

    def axis_inner(self, j: int, k: int) -> Fraction:
        d = (k - j) % self.n
        return self.mu[min(d, self.n - d)]

    def inner(self, x: str, y: str) -> Fraction:
        if x.startswith("a") and not x.startswith("alpha") and y.startswith("a") and not y.startswith("alpha"):
            return self.axis_inner(int(x[1:]), int(y[1:]))
        return self.cross[(x, y)]

    def matrix(self) -> Matrix:
        return Matrix.from_rows([[self.inner(x, y) for y in self.labels] for x in self.labels])

    def form(self, u: Element, v: Element) -> Fraction:
        total = Fraction(0)
        for x, cx in u:
            for y, cy in v:
                total += cx * cy * self.inner(x, y)
        return total


def _alpha_with_axis(l_partner: Fraction) -> Fraction:
    """``<a, alpha(a, x)>`` from ``(a|x)``."""
    return Fraction(31, 16) * (l_partner / 4) - Fraction(1, 64)


def _alpha_centre(l1: Fraction, l2: Fraction) -> Fraction:
    """``<c, alpha(b, b^{tau_c})>`` for ``b`` adjacent to the axis ``c``."""
    return Fraction(15, 8) * (l1 / 4) - Fraction(1, 16) * (QUARTER - l2 / 4)


def derive_gram(model: OrbitModel, params: ParamRecord) -> GramTable:
    n = model.n
    if n > MAX_ALGEBRA_ORBIT:
        raise ValueError(f"Gram derivation supports n <= {MAX_ALGEBRA_ORBIT}")
    check_identifications(n, params)
    l1, l2 = params.lambda1, params.lambda2
    mu = {0: QUARTER}
    if n >= 2:
        mu[1] = l1 / 4
    if n >= 4:
        mu[2] = l2 / 4
    labels = spanning_labels(n)
    if n == 1:
        return GramTable(n, mu, {}, labels)

    def axis_inner(j, k):
        d = (k - j) % n
        return mu[min(d, n - d)]

    def pair_relation(j):
        # <a_j, D(0) - D(-1) - L_0>, with the D's paired directly
        rel = relation_vector(n, 0, l1, l2)
        lhs = axis_alpha2_direct(j, 0) - axis_alpha2_direct(j, -1)
        return lhs - sum((c * axis_inner(j, int(lab[1:])) for lab, c in rel), Fraction(0))

    def axis_alpha2_direct(j, k):
        # <a_j, D(k)>, D(k) = alpha(a_{k-1}, a_{k+1})
        if n == 2:
            return Fraction(15, 8) * axis_inner(j, k + 1)
        if n == 3:
            return _alpha_with_axis(l1)
        r = (j - k) % n
        via_pair, via_centre = _alpha_with_axis(l2), _alpha_centre(l1, l2)
        if n % 2:
            if via_pair != via_centre:
                raise InconsistentParametersError(
                    "alpha(a_{k-1}, a_{k+1}) paired with an axis disagrees between routes",
                    {"via_pair": format_rational(via_pair), "via_centre": format_rational(via_centre)})
            return via_pair
        return via_pair if r % 2 else via_centre

    if n == 6:
        # the only unknown in <e, relation> is <e, a_2> at distance 3
        mu[3] = Fraction(0)
        residual_without = pair_relation(-1)
        # relation contributes -(1/16) * <a_{-1}, a_2> with a minus sign in pair_relation
        mu[3] = -residual_without * 16
    for j in range(n):
        res = pair_relation(j)
        if res != 0:
            raise InconsistentParametersError(
                "pairing the alpha relation with an axis gives contradictory values",
                {"axis": axis_label(j, n), "residual": format_rational(res), **params.to_json()})

    cross = {}

    def put(x, y, v):
        cross[(x, y)] = v
        cross[(y, x)] = v

    a1 = _alpha_with_axis(l1)
    for j in range(n):
        put(f"a{j}", "alpha1", a1)
        if "alpha2" in labels:
            put(f"a{j}", "alpha2", axis_alpha2_direct(j, 0))

    def axis_alpha(j, lab):
        return cross[(axis_label(j, n), lab)]

    def alpha_alpha(e, a, b, lab_a, lab_b, l_eb):
        # <alpha(e,a), alpha(e,b)> = <a, e.alpha(e,b)> - (1/16)(<e, alpha(e,b)> + <a, alpha(e,b)>)
        # with e.alpha(e,b) expanded by the axis-times-own-alpha formula
        bt = (2 * e - b) % n  # b^{tau_e}
        a_e_alpha = (Fraction(7, 16) * axis_alpha(a, lab_b)
                     + (3 * l_eb - Fraction(25, 256)) * axis_inner(a, e)
                     + Fraction(7, 512) * (axis_inner(a, b) + axis_inner(a, bt)))
        return a_e_alpha - Fraction(1, 16) * (axis_alpha(e, lab_b) + axis_alpha(a, lab_b))

    def agree(name, values):
        if len(set(values)) != 1:
            raise InconsistentParametersError(
                f"inner product {name} disagrees between derivations",
                {"values": [format_rational(v) for v in values]})
        return values[0]

    e, f = -1 % n, 0
    put("alpha1", "alpha1", agree("<alpha1,alpha1>", [
        alpha_alpha(e, f, f, "alpha1", "alpha1", l1),
        alpha_alpha(f, e, e, "alpha1", "alpha1", l1),
    ]))
    if "alpha2" in labels:
        put("alpha1", "alpha2", agree("<alpha1,alpha2>", [
            alpha_alpha(e, f, 1, "alpha1", "alpha2", l2),
            alpha_alpha(1, f, e, "alpha1", "alpha2", l2),
        ]))
        put("alpha2", "alpha2", agree("<alpha2,alpha2>", [
            alpha_alpha(e, 1, 1, "alpha2", "alpha2", l2),
            alpha_alpha(1, e, e, "alpha2", "alpha2", l2),
        ]))
    return GramTable(n, mu, cross, labels)
