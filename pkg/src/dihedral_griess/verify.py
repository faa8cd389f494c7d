"""Axiom checks for a built algebra.

All checks run in the quotient by the radical of the Gram form, which is the
algebra itself (the ambient form is positive definite).  Each check records
``True``/``False`` plus a small witness when it fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import DihedralAlgebra, is_axis
from .element import Element
from .linalg import Matrix, format_rational, nullspace, rref

F = Fraction
EIGENVALUES = (F(2), F(0), F(1, 2), F(1, 16))
EVEN = (F(2), F(0), F(1, 2))
# allowed eigenvalues for the product of an i-vector and a j-vector
FUSION = {
    (F(0), F(0)): {F(0)},
    (F(0), F(1, 2)): {F(1, 2)},
    (F(1, 2), F(1, 2)): {F(0), F(2)},
    (F(0), F(1, 16)): {F(1, 16)},
    (F(1, 2), F(1, 16)): {F(1, 16)},
    (F(1, 16), F(1, 16)): {F(0), F(2), F(1, 2)},
}

CHECKS = (
    "commutative",
    "invariant_form",
    "axes_idempotent",
    "axes_normalised",
    "adjoint_polynomial",
    "eigenvalue_2_simple",
    "fusion_rules",
    "tau_involution",
    "tau_automorphism",
    "tau_eigen_signs",
    "gram_psd",
    "rotation_order",
)


class Quotient:
    """Coordinates on the algebra modulo the Gram radical.

    The basis is the set of labels left after eliminating the radical with
    pivots chosen from the end of the label list, so axes are kept whenever
    possible.
    """

    def __init__(self, alg: DihedralAlgebra):
        self.alg = alg
        labels = alg.labels
        if alg.radical:
            rows = Matrix.from_rows([list(reversed(alg.vector(r))) for r in alg.radical])
            _, pivots = rref(rows)
            dropped = {labels[len(labels) - 1 - p] for p in pivots}
        else:
            dropped = set()
        self.labels = tuple(lab for lab in labels if lab not in dropped)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def coords(self, v: Element) -> list:
        return self.alg.reduce(v).vector(self.labels)

    def lift(self, vec) -> Element:
        return Element.from_vector(self.labels, vec)

    def operator(self, fn) -> Matrix:
        cols = [self.coords(fn(Element.basis(lab))) for lab in self.labels]
        return Matrix.from_rows([[cols[j][i] for j in range(self.dim)] for i in range(self.dim)])

    def adjoint(self, u: Element) -> Matrix:
        return self.operator(lambda x: self.alg.product(u, x))

    def eigenspace(self, ad: Matrix, value) -> list:
        return [self.lift(v) for v in nullspace(ad - Matrix.identity(self.dim).scale(value))]


@dataclass
class AxiomReport:
    n: int
    checks: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)
    eigen_dims: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, passed: bool, witness=None):
        self.checks[name] = self.checks.get(name, True) and passed
        if not passed and name not in self.failures:
            self.failures[name] = witness

    def to_json(self) -> dict:
        return {"n": self.n, "ok": self.ok, "checks": dict(self.checks),
                "failures": {k: _jsonable(v) for k, v in self.failures.items()},
                "eigen_dims": self.eigen_dims}


def _jsonable(x):
    if isinstance(x, Element):
        return x.to_json()
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def _basis(alg):
    return [Element.basis(lab) for lab in alg.labels]


def verify_axioms(alg: DihedralAlgebra) -> AxiomReport:
    report = AxiomReport(alg.n)
    for name in CHECKS:
        report.checks[name] = True
    q = Quotient(alg)
    basis = _basis(alg)

    for x in alg.labels:
        for y in alg.labels:
            if alg.table[(x, y)] != alg.table[(y, x)]:
                report.record("commutative", False, [x, y])
    # <xy, z> = <x, yz> on labels
    for i, x in enumerate(basis):
        for y in basis:
            xy = alg.product(x, y)
            for z in basis:
                if alg.inner(xy, z) != alg.inner(x, alg.product(y, z)):
                    report.record("invariant_form", False, [repr(x), repr(y), repr(z)])

    cert = alg.certificate
    report.record("gram_psd", cert.is_psd, cert.witness)

    rotation = alg.tau_e @ alg.tau_f
    report.record("rotation_order", rotation ** alg.n == Matrix.identity(alg.dim_span))

    for lab in alg.labels:
        if not is_axis(lab):
            continue
        a = Element.basis(lab)
        j = int(lab[1:])
        report.record("axes_idempotent", alg.equal(alg.product(a, a), 2 * a), lab)
        report.record("axes_normalised", alg.inner(a, a) == F(1, 4), lab)
        _check_axis(alg, q, a, j, report)

    for which, M in (("e", alg.tau_e), ("f", alg.tau_f)):
        report.record("tau_involution", M @ M == Matrix.identity(alg.dim_span), which)
        for x in basis:
            for y in basis:
                lhs = alg.tau(which, alg.product(x, y))
                rhs = alg.product(alg.tau(which, x), alg.tau(which, y))
                if not alg.equal(lhs, rhs):
                    report.record("tau_automorphism", False, [which, repr(x), repr(y)])
    return report


def _axis_tau(alg: DihedralAlgebra, j: int, v: Element) -> Element:
    out = {}
    for lab, c in v:
        new = f"a{(2 * j - int(lab[1:])) % alg.n}" if is_axis(lab) else lab
        out[new] = out.get(new, 0) + c
    return Element(out)


def _check_axis(alg, q: Quotient, a: Element, j: int, report: AxiomReport):
    ad = q.adjoint(a)
    ident = Matrix.identity(q.dim)
    poly = ident
    for lam in EIGENVALUES:
        poly = poly @ (ad - ident.scale(lam))
    zero = Matrix.zeros(q.dim, q.dim)
    report.record("adjoint_polynomial", poly == zero, f"a{j}")

    spaces = {lam: q.eigenspace(ad, lam) for lam in EIGENVALUES}
    report.eigen_dims[f"a{j}"] = {format_rational(k): len(v) for k, v in spaces.items()}
    report.record("eigenvalue_2_simple", len(spaces[F(2)]) == 1, f"a{j}")

    # tau_a is +1 on the 0, 2, 1/2 spaces and -1 on the 1/16 space
    for lam, vecs in spaces.items():
        sign = -1 if lam == F(1, 16) else 1
        for v in vecs:
            if not alg.equal(_axis_tau(alg, j, v), sign * v):
                report.record("tau_eigen_signs", False, [f"a{j}", format_rational(lam), v])

    keys = [k for k in EIGENVALUES if k != F(2)]
    for s in keys:
        for t in keys:
            allowed = FUSION.get((s, t)) or FUSION.get((t, s))
            for x in spaces[s]:
                for y in spaces[t]:
                    p = alg.product(x, y)
                    if not _in_sum(alg, q, ad, p, allowed):
                        report.record("fusion_rules", False,
                                      [f"a{j}", format_rational(s), format_rational(t), p])


def _in_sum(alg, q: Quotient, ad: Matrix, v: Element, allowed) -> bool:
    """Whether ``v`` lies in the sum of the eigenspaces listed in ``allowed``."""
    vec = q.coords(v)
    ident = Matrix.identity(q.dim)
    for lam in allowed:
        vec = (ad - ident.scale(lam)) @ vec
    return all(x == 0 for x in vec)
