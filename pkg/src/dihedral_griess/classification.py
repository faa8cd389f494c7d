"""Admissible inner products per orbit size, and the bound on the orbit size.

The constraints are not typed in: they are produced by specialising the
alpha relation (with polynomial scalars) under the orbit identifications and
reading off coordinates.  Solving them reproduces the nine dihedral classes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .element import Element, axis_label
from .errors import InconsistentParametersError, ParameterBoundError
from .linalg import Matrix, determinant, format_rational, solve_quadratic
from .orbit import CITED_BOUND, ParamRecord, build_orbit, derive_gram
from .poly import Poly
from .relations import projected_relation, relation_vector

F = Fraction
L1, L2 = Poly.var("l1"), Poly.var("l2")
VARIABLES = ("l1", "l2")

# (n, <e,f>, <e,e^{tau_f}>) -> class of tau_e tau_f in the Monster
CLASS_LABELS = {
    (1, F(1, 4), F(1, 4)): "1A",
    (2, F(1, 32), F(1, 4)): "2A",
    (2, F(0), F(1, 4)): "2B",
    (3, F(13, 1024), F(13, 1024)): "3A",
    (3, F(1, 256), F(1, 256)): "3C",
    (4, F(1, 128), F(0)): "4A",
    (4, F(1, 256), F(1, 32)): "4B",
    (5, F(3, 512), F(3, 512)): "5A",
    (6, F(5, 1024), F(13, 1024)): "6A",
}
# class -> <e,f>, in the column order of the standard table
INTRO_TABLE = {
    "1A": F(1, 4), "2A": F(1, 32), "3A": F(13, 1024), "4A": F(1, 128), "5A": F(3, 512),
    "6A": F(5, 1024), "3C": F(1, 256), "4B": F(1, 256), "2B": F(0),
}


@dataclass(frozen=True)
class Equation:
    poly: Poly
    provenance: str

    def to_json(self) -> dict:
        return {"poly": repr(self.poly), "provenance": self.provenance}


@dataclass(frozen=True)
class SideCondition:
    """A root is discarded when ``poly`` vanishes on it."""

    poly: Poly
    provenance: str


@dataclass(frozen=True)
class ConstraintSystem:
    n: int
    equations: tuple
    side_conditions: tuple = ()

    def evaluate(self, l1, l2) -> list:
        return [eq.poly.subs({"l1": l1, "l2": l2}).constant() for eq in self.equations]

    def to_json(self) -> dict:
        return {"n": self.n, "equations": [e.to_json() for e in self.equations],
                "side_conditions": [{"poly": repr(s.poly), "provenance": s.provenance}
                                    for s in self.side_conditions]}


def _odd_coordinates(n: int, v: Element) -> list:
    """Coefficients of ``v`` on ``a_{-m} - a_m`` for ``1 <= m < n/2``.

    ``v`` must be odd under ``tau_f`` (``a_j -> a_{-j}``); that is asserted.
    """
    out = []
    for m in range(1, (n + 1) // 2):
        minus, plus = v[axis_label(-m, n)], v[axis_label(m, n)]
        if minus + plus != 0:
            raise AssertionError("relation is not tau_f-odd")
        out.append((m, minus))
    if n % 2 == 0 and v[axis_label(n // 2, n)] != 0 or v[axis_label(0, n)] != 0:
        raise AssertionError("relation has a tau_f-fixed component")
    return out


def constraint_system(n: int) -> ConstraintSystem:
    if not isinstance(n, int) or not 1 <= n <= 6:
        raise ValueError(f"constraint systems exist for 1 <= n <= 6, got {n!r}")
    eqs, side = [], []
    if n == 1:
        eqs.append(Equation(L1 - 1, "e = f, so (e|f) = 1"))
        eqs.append(Equation(L2 - 1, "e^{tau_f} = e, so (e|e^{tau_f}) = 1"))
        return ConstraintSystem(n, tuple(eqs))
    if n == 2:
        eqs.append(Equation(L2 - 1, "e^{tau_f} = e"))
        # the relation itself, with both distance-two alphas collapsed to 15/8 times an axis
        lhs = F(15, 8) * (Element.basis(axis_label(-1, n)) - Element.basis(axis_label(0, n)))
        v = relation_vector(n, 0, L1, L2) - lhs
        coeff = v[axis_label(-1, n)]
        assert v[axis_label(0, n)] == -coeff
        eqs.append(Equation((7 * coeff).subs({"l2": 1}),
                            "alpha relation on the pair (e, f) with e^{tau_f} = e; coefficient of e - f"))
        return ConstraintSystem(n, tuple(eqs))

    if n == 3:
        eqs.append(Equation(L2 - L1, "f = e^{tau_f tau_e}, so e^{tau_f} is at distance 1 from e"))
    # tau_f-odd part of the relation; its coordinates on phi_f^-(a_{-m}) must vanish
    # because those vectors are independent for m < n/2
    v = projected_relation(n, L1, L2)
    for m, coeff in _odd_coordinates(n, v):
        poly = 7 * coeff if coeff.degree() == 2 else coeff
        eqs.append(Equation(poly, f"tau_f-odd relation, coordinate of phi_f^-(a_-{m})"))
    if n == 4:
        eqs.append(Equation(2 ** 11 * L2 * L2 - 2 ** 8 * L2,
                            "the pair (e, e^{tau_f}) has orbit size 2 (size-2 case applied)"))
    side.append(SideCondition(L1, "(e|f) != 0, else tau_f fixes e and the orbit has size <= 2"))
    return ConstraintSystem(n, tuple(eqs), tuple(side))


@dataclass(frozen=True)
class ClassRow:
    n: int
    label: str
    ef: Fraction
    e_etf: Fraction
    extra: Fraction | None = None

    @property
    def params(self) -> ParamRecord:
        return ParamRecord.from_inner_products(self.ef, self.e_etf)

    def csv_fields(self) -> list:
        return [str(self.n), self.label, format_rational(self.ef), format_rational(self.e_etf),
                "" if self.extra is None else format_rational(self.extra)]

    def to_json(self) -> dict:
        return {"n": self.n, "class": self.label, "ef": format_rational(self.ef),
                "e_etf": format_rational(self.e_etf),
                "extra": None if self.extra is None else format_rational(self.extra),
                "lambda1": format_rational(4 * self.ef), "lambda2": format_rational(4 * self.e_etf)}


def _solve(equations: list, known: dict, eliminated: frozenset = frozenset()) -> list:
    """All rational common zeros, branching on univariate equations."""
    pending = []
    for eq in equations:
        p = eq.subs(known)
        if p.is_zero():
            continue
        if not p.variables:
            return []  # nonzero constant: inconsistent branch
        pending.append(p)
    if not pending:
        missing = [v for v in VARIABLES if v not in known and v not in eliminated]
        if missing:
            raise InconsistentParametersError("solution set has positive dimension",
                                              {"free": missing})
        return [dict(known)]
    univariate = [p for p in pending if len(p.variables) == 1]
    if not univariate:
        # an equation linear in one variable with a constant coefficient can be eliminated
        for p in pending:
            for var in sorted(p.variables):
                if p.degree(var) == 1:
                    rest = p.subs({var: 0})
                    lead = p - rest
                    coeff = lead.subs({var: 1})
                    if not coeff.variables:
                        value = -rest * (1 / coeff.constant())
                        sols = _solve([q.subs({var: value}) for q in pending if q != p], known,
                                      eliminated | {var})
                        return [{**s, var: value.subs(s).constant()} for s in sols]
        raise InconsistentParametersError("constraint system is not triangular",
                                          {"pending": [repr(p) for p in pending]})
    p = min(univariate, key=lambda q: (q.degree(), repr(q)))
    (var,) = p.variables
    coeffs = p.univariate_coeffs(var)
    if len(coeffs) > 3:
        raise InconsistentParametersError("constraint of degree above 2", {"poly": repr(p)})
    coeffs += [F(0)] * (3 - len(coeffs))
    roots = solve_quadratic(coeffs[2], coeffs[1], coeffs[0]).roots
    out = []
    for r in sorted(roots):
        out.extend(_solve(pending, {**known, var: r}, eliminated))
    return out


def solve_parameters(n: int) -> list:
    """Admissible rows for orbit size ``n``, sorted by ``<e,f>`` descending."""
    system = constraint_system(n)
    rows = []
    for sol in _solve([eq.poly for eq in system.equations], {}):
        l1, l2 = sol["l1"], sol["l2"]
        if any(s.poly.subs(sol).constant() == 0 for s in system.side_conditions):
            continue
        try:
            params = ParamRecord(l1, l2)
        except ParameterBoundError:
            continue
        extra = None
        if n == 6:
            gram = derive_gram(build_orbit(n), params)
            extra = gram.mu[3]
        key = (n, params.ef, params.e_etf)
        rows.append(ClassRow(n, CLASS_LABELS.get(key, "unknown"), params.ef, params.e_etf, extra))
    return sorted(set(rows), key=lambda r: -r.ef)


def classify(orbit_sizes=range(1, 7)) -> list:
    rows = []
    for n in orbit_sizes:
        rows.extend(solve_parameters(n))
    return rows


def render_table(rows, fmt: str) -> str:
    import json

    if not rows:
        raise ValueError("no rows to render")
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown table format {fmt!r}; use 'csv' or 'json'")
    rows = sorted(rows, key=lambda r: (r.n, -r.ef))
    if fmt == "json":
        return json.dumps([r.to_json() for r in rows], indent=2) + "\n"
    lines = ["n,class,ef,e_etf,extra"] + [",".join(r.csv_fields()) for r in rows]
    return "\n".join(lines) + "\n"


# -- the independence argument behind the orbit bound ---------------------------

MU_INDEX = ((1, 1), (2, 2), (3, 3), (1, 2), (2, 3), (1, 3))
TWO_THIRDS = F(2, 3)


def _m1(m):
    return F(8, 27) - TWO_THIRDS * (m[1, 2] ** 2 + m[2, 3] ** 2 + m[1, 3] ** 2) \
        + 2 * m[1, 2] * m[2, 3] * m[1, 3]


def _m2(m):
    """The regrouped remainder; each bracket is nonnegative under the bounds."""
    return ((m[1, 1] - TWO_THIRDS) * (m[2, 2] * m[3, 3] - m[2, 3] ** 2)
            + (m[2, 2] - TWO_THIRDS) * (TWO_THIRDS * m[3, 3] - m[1, 3] ** 2)
            + (m[3, 3] - TWO_THIRDS) * (F(4, 9) - m[1, 2] ** 2))


def _det3(m):
    return (m[1, 1] * (m[2, 2] * m[3, 3] - m[2, 3] ** 2)
            - m[1, 2] * (m[1, 2] * m[3, 3] - m[2, 3] * m[1, 3])
            + m[1, 3] * (m[1, 2] * m[2, 3] - m[2, 2] * m[1, 3]))


def mu_identity() -> dict:
    """``M1 + M2 - det A`` expanded in the six mu symbols (should be 0)."""
    sym = {k: Poly.var(f"mu{k[0]}{k[1]}") for k in MU_INDEX}
    det, m1, m2 = _det3(sym), _m1(sym), _m2(sym)
    residual = m1 + m2 - det
    return {"det": det, "m1": m1, "m2": m2, "residual": residual, "holds": residual.is_zero()}


@dataclass(frozen=True)
class MuMatrix:
    lambda_seq: tuple  # lambda_1 .. lambda_6
    A: Matrix
    m1: Fraction
    m2: Fraction
    det: Fraction

    @property
    def verdict(self) -> str:
        return "positive" if self.det > 0 else "zero" if self.det == 0 else "negative"

    def to_json(self) -> dict:
        return {"lambda": [format_rational(x) for x in self.lambda_seq],
                "A": [[format_rational(x) for x in row] for row in self.A.to_rows()],
                "m1": format_rational(self.m1), "m2": format_rational(self.m2),
                "det": format_rational(self.det), "verdict": self.verdict}


def _lambda_tuple(lambda_seq) -> tuple:
    if isinstance(lambda_seq, dict):
        seq = tuple(F(lambda_seq[m]) for m in range(1, 7))
    else:
        seq = tuple(F(x) for x in lambda_seq)
    if len(seq) != 6:
        raise ValueError("need lambda_1 .. lambda_6")
    return seq


def mu_entries(seq: tuple) -> dict:
    lam = {0: F(1), **{m + 1: x for m, x in enumerate(seq)}}
    return {(j, k): lam[abs(k - j)] - lam[k + j] for j in range(1, 4) for k in range(1, 4)}


def independence_certificate(lambda_seq) -> MuMatrix:
    """``mu_{j,k} = lambda_{k-j} - lambda_{k+j}`` and the sign of its determinant."""
    seq = _lambda_tuple(lambda_seq)
    for m, x in enumerate(seq, 1):
        if not 0 <= x <= CITED_BOUND:
            raise ParameterBoundError(f"lambda_{m} = {format_rational(x)} outside [0, 1/3]",
                                      {"m": m, "value": format_rational(x)})
    mu = mu_entries(seq)
    A = Matrix.from_rows([[mu[j, k] for k in range(1, 4)] for j in range(1, 4)])
    det = determinant(A)
    m1, m2 = _m1(mu), _m2(mu)
    if m1 + m2 != det:
        raise AssertionError("M1 + M2 differs from det A")
    return MuMatrix(seq, A, m1, m2, det)


def farey(bound: int, upper=Fraction(1)) -> list:
    """Rationals in ``[0, upper]`` with denominator at most ``bound``, ascending."""
    return sorted({F(p, q) for q in range(1, bound + 1) for p in range(0, q + 1) if F(p, q) <= upper})


@dataclass
class ScanReport:
    bound: int
    candidates: int
    filtered: int
    violations: int
    min_det: Fraction
    min_m1: Fraction
    min_m2: Fraction
    examples: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"bound": self.bound, "candidates": self.candidates, "filtered": self.filtered,
                "violations": self.violations, "min_det": format_rational(self.min_det),
                "min_m1": format_rational(self.min_m1), "min_m2": format_rational(self.min_m2),
                "examples": self.examples}


def infeasibility_scan(bound: int, extra_sequences=()) -> ScanReport:
    """Every lambda sequence on the grid has ``det A > 0`` (orbit size >= 7 impossible).

    ``det A`` depends on lambda_1, lambda_3, lambda_5 only through
    ``lambda_1 - lambda_3`` and ``lambda_1 - lambda_5``, so odd triples are
    grouped by those differences.  Arithmetic is on integers scaled by a
    common denominator (``27 L^3`` fits comfortably in int64 for the grid).
    """
    if not isinstance(bound, int) or bound < 2:
        raise ValueError("denominator bound must be an integer >= 2")
    grid = farey(bound)
    ok = [x for x in grid if x <= CITED_BOUND]
    total = len(grid) ** 6
    candidates = len(ok) ** 6
    L = 1
    for q in range(1, bound + 1):
        L = L * q // np.gcd(L, q)
    if 27 * 8 * L ** 3 >= 2 ** 62:
        raise ValueError("denominator bound too large for the integer scan")
    vals = np.array([int(x * L) for x in ok], dtype=np.int64)

    # odd part: (lambda_1 - lambda_3, lambda_1 - lambda_5) with multiplicities
    d = {}
    for a, b, c in itertools.product(vals.tolist(), repeat=3):
        key = (a - b, a - c)
        d[key] = d.get(key, 0) + 1
    pairs = np.array(sorted(d), dtype=np.int64)
    m12, m23 = pairs[:, 0][None, :], pairs[:, 1][None, :]
    even = np.array(list(itertools.product(vals.tolist(), repeat=3)), dtype=np.int64)
    l2, l4, l6 = (even[:, i][:, None] for i in range(3))
    m11, m22, m33, m13 = L - l2, L - l4, L - l6, l2 - l4

    det = (m11 * (m22 * m33 - m23 * m23) - m12 * (m12 * m33 - m23 * m13)
           + m13 * (m12 * m23 - m22 * m13))  # scale L^3
    m1 = 8 * L ** 3 - 18 * L * (m12 * m12 + m23 * m23 + m13 * m13) + 54 * m12 * m23 * m13  # 27 L^3
    m2 = 27 * det - m1
    scale = F(1, 27 * L ** 3)
    bad = det <= 0
    violations = 0
    examples = []
    if bad.any():
        counts = np.array([d[tuple(p)] for p in pairs.tolist()], dtype=np.int64)
        violations = int((bad * counts[None, :]).sum())
        for i, j in zip(*np.nonzero(bad)):
            examples.append({"even": [format_rational(F(int(x), L)) for x in even[i]],
                             "odd_differences": [format_rational(F(int(x), L)) for x in pairs[j]]})
            if len(examples) >= 5:
                break
    report = ScanReport(bound, candidates, total - candidates, violations,
                        F(int(det.min()), L ** 3), F(int(m1.min())) * scale, F(int(m2.min())) * scale,
                        examples)
    for seq in extra_sequences:
        try:
            cert = independence_certificate(seq)
        except ParameterBoundError:
            report.filtered += 1
            continue
        report.candidates += 1
        report.min_det = min(report.min_det, cert.det)
        report.min_m1, report.min_m2 = min(report.min_m1, cert.m1), min(report.min_m2, cert.m2)
        if cert.det <= 0:
            report.violations += 1
            report.examples.append(cert.to_json())
    return report
