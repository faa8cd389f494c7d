"""Closure of the algebra generated by two axes.

Coordinates are taken over the axes ``a_0..a_{n-1}`` plus
``alpha1 = alpha(e, f)`` and ``alpha2 = alpha(e, e^{tau_f})`` where
``alpha(a, x) = a x - (a + x)/16``.  Every product is expanded with the
projection calculus of a single axis; where more than one expansion is
available all of them are computed and compared, and any disagreement
aborts the build.

Equality inside the algebra is tested modulo the radical of the Gram form:
the ambient form is positive definite, so a vector with ``G v = 0`` is zero.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .element import Element, axis_label
from .errors import InconsistentParametersError, NotClosedError
from .linalg import Matrix, PSDCertificate, format_rational, nullspace, psd_certificate, rref
from .orbit import (
    MAX_ALGEBRA_ORBIT,
    GramTable,
    OrbitModel,
    ParamRecord,
    build_orbit,
    derive_gram,
    spanning_labels,
)
from .relations import relation_coefficients, relation_vector

log = logging.getLogger(__name__)

F = Fraction
SIXTEENTH = F(1, 16)
CHANNELS = ("+", "-", "0", "1")


class _Pending(Exception):
    """A product this step depends on is not in the table yet."""


def is_axis(label: str) -> bool:
    return label.startswith("a") and not label.startswith("alpha")


def axis_index(label: str) -> int:
    return int(label[1:])


class ProductEngine:
    """Product rules for one orbit size and one parameter pair.

    ``table`` is filled by :func:`build_algebra`; rules that need an entry not
    yet present raise ``_Pending`` so the worklist can retry them later.
    """

    def __init__(self, model: OrbitModel, params: ParamRecord, gram: GramTable):
        self.model = model
        self.n = model.n
        self.params = params
        self.gram = gram
        self.labels = gram.labels
        self.l1, self.l2 = params.lambda1, params.lambda2
        self.c1, self.c2 = relation_coefficients(self.l1, self.l2)
        self.table: dict = {}
        self.gram_matrix = gram.matrix()
        self.routes_compared = 0

    # -- basic vectors -------------------------------------------------
    def ax(self, j: int) -> Element:
        return Element.basis(axis_label(j, self.n))

    def relation(self, k: int) -> Element:
        return relation_vector(self.n, k, self.l1, self.l2)

    def D(self, k: int) -> Element:
        """``alpha(a_{k-1}, a_{k+1})`` in canonical coordinates.

        ``alpha(a, x) = alpha(a, x^{tau_a})`` makes ``D(k) = D(k+2)``, so for
        even n there are two such vectors (``alpha2`` and its neighbour via
        the relation) and for odd n only one.
        """
        n = self.n
        if n == 1:
            return F(15, 8) * self.ax(0)
        if n == 2:
            return F(15, 8) * self.ax(k + 1)
        if n == 3:
            return Element.basis("alpha1")
        alpha2 = Element.basis("alpha2")
        if n % 2 or k % 2 == 0:
            return alpha2
        return alpha2 - self.relation(0)

    def distance(self, j: int, m: int) -> int:
        d = (m - j) % self.n
        return min(d, self.n - d)

    def bracket(self, j: int, v: Element) -> Fraction:
        """``(a_j | v) = 4 <a_j, v>``."""
        return 4 * self.gram.form(self.ax(j), v)

    def in_radical(self, v: Element) -> bool:
        vec = v.vector(self.labels)
        return all(x == 0 for x in self.gram_matrix @ vec)

    def _agree(self, what: str, candidates: list) -> Element:
        first = candidates[0]
        for other in candidates[1:]:
            self.routes_compared += 1
            if not self.in_radical(first - other):
                raise InconsistentParametersError(
                    f"two derivations of {what} disagree",
                    {"product": what, "first": first.to_json(), "second": other.to_json(),
                     **self.params.to_json()})
        return first

    # -- involutions and projections -------------------------------------
    def tau(self, j: int, v: Element) -> Element:
        """``tau_{a_j}``: axes reflect about ``j``; both alphas are T-fixed."""
        out = {}
        for lab, c in v:
            new = axis_label(2 * j - axis_index(lab), self.n) if is_axis(lab) else lab
            out[new] = out.get(new, 0) + c
        return Element(out)

    def phi_plus(self, j: int, v: Element) -> Element:
        return F(1, 2) * (v + self.tau(j, v))

    def phi_minus(self, j: int, v: Element) -> Element:
        return F(1, 2) * (v - self.tau(j, v))

    def phi_one(self, j: int, v: Element) -> Element:
        """Projection to the 1/2-eigenspace: ``2 a v - 4(a|v) a - phi^-(v)/8``."""
        return (2 * self.times_axis(j, v) - 4 * self.bracket(j, v) * self.ax(j)
                - F(1, 8) * self.phi_minus(j, v))

    def phi_one_axis(self, j: int, m: int) -> Element:
        """Projection of the axis ``a_m`` without any table lookup.

        ``x^1 = 2 alpha(a, x) - (4 (a|x) - 1/8) a + x^+/8``.
        """
        lam = 4 * self.gram.axis_inner(j % self.n, m % self.n)
        return (2 * self.alpha_axes(j, m) - (4 * lam - F(1, 8)) * self.ax(j)
                + F(1, 8) * self.phi_plus(j, self.ax(m)))

    # -- axis products ------------------------------------------------------
    def alpha_axes(self, j: int, m: int) -> Element:
        """``alpha(a_j, a_m)`` for axes at distance at most 2 (3 via product)."""
        d = self.distance(j, m)
        if d == 0:
            return F(15, 8) * self.ax(j)
        if d == 1:
            return Element.basis("alpha1")
        if d == 2:
            centre = j + 1 if (m - j) % self.n == 2 else j - 1
            return self.D(centre)
        return self.axis_axis(j, m) - SIXTEENTH * (self.ax(j) + self.ax(m))

    def times_own_alpha(self, j: int, m: int) -> Element:
        """``a . alpha(a, x)`` for ``a = a_j``, ``x = a_m``."""
        x = self.ax(m)
        lam = self.bracket(j, x)
        return (F(7, 16) * self.alpha_axes(j, m) + (3 * lam - F(25, 256)) * self.ax(j)
                + F(7, 256) * self.phi_plus(j, x))

    def times_centre_alpha(self, j: int) -> Element:
        """``a_j . alpha(a_{j+1}, a_{j-1})``.

        ``a_j`` sits between the two axes, so the alpha vector is fixed by
        ``tau_{a_j}``; its 1/2-part comes from the square of ``phi^+(a_{j+1})``.
        """
        l1, l2 = self.l1, self.l2
        inner = F(15, 8) * (l1 / 4) - SIXTEENTH * (F(1, 4) - l2 / 4)
        half_part = F(8, 3) * ((4 * l1 - F(19, 128)) * self.phi_one_axis(j, j + 1)
                               + F(7, 256) * self.phi_one_axis(j, j + 2))
        return 8 * inner * self.ax(j) + half_part

    def times_D(self, j: int, k: int) -> Element:
        """``a_j . D(k)``, by every route that applies."""
        n = self.n
        if n <= 3:
            return self.times_axis_vector(j, self.D(k))
        routes = []
        if n % 2 or (j - k) % 2:
            # D(k) = D(j+1) = alpha(a_j, a_{j+2})
            routes.append(self.times_own_alpha(j, j + 2))
            routes.append(self.times_own_alpha(j, j - 2))
        if n % 2 or (j - k) % 2 == 0:
            routes.append(self.times_centre_alpha(j))
        return self._agree(f"a{j % n}*D({k % n})", routes)

    def axis_axis(self, j: int, m: int) -> Element:
        d = self.distance(j, m)
        if d == 0:
            return 2 * self.ax(j)
        if d <= 2:
            return self.alpha_axes(j, m) + SIXTEENTH * (self.ax(j) + self.ax(m))
        if d == 3 and self.n == 6:
            return self._agree(f"a{j % 6}*a{m % 6}",
                               [self._distance_three(j, +1), self._distance_three(j, -1)])
        raise NotClosedError(f"no rule for axes at distance {d} with n={self.n}")

    def _distance_three(self, j: int, s: int) -> Element:
        """``a_j . a_{j+3s}`` by solving the relation for the far axis.

        The relation centred next to ``a_j`` expresses ``a_{j+3s}`` through
        axes within distance two of ``a_j`` and two distance-two alphas.
        """
        # relation at k = j+1 (s=+1) or its mirror k = j (s=-1), rearranged:
        # a_{j+3s} = a_{j-2s} + 16 (c1 (a_j - a_{j+s}) + c2 (a_{j-s} - a_{j+2s})
        #                          - (D(j+s) - D(j)))
        c1, c2 = self.c1, self.c2
        near = self.axis_axis(j, j - 2 * s)
        inner = (c1 * (2 * self.ax(j) - self.axis_axis(j, j + s))
                 + c2 * (self.axis_axis(j, j - s) - self.axis_axis(j, j + 2 * s))
                 - (self.times_D(j, j + s) - self.times_D(j, j)))
        return near + 16 * inner

    def times_label(self, j: int, label: str) -> Element:
        """``a_j . x`` for a basis label ``x``; uses only closed-form rules."""
        if is_axis(label):
            return self.axis_axis(j, axis_index(label))
        if label == "alpha1":
            routes = [self.times_own_alpha(j, j + 1), self.times_own_alpha(j, j - 1)]
            return self._agree(f"a{j % self.n}*alpha1", routes)
        if label == "alpha2":
            return self.times_D(j, 0)
        raise KeyError(label)

    def lookup(self, x: str, y: str) -> Element:
        try:
            return self.table[(x, y)]
        except KeyError:
            raise _Pending((x, y)) from None

    def times_axis(self, j: int, v: Element) -> Element:
        """``a_j . v`` by linearity over the table."""
        a = axis_label(j, self.n)
        out = Element()
        for lab, c in v:
            out = out + c * self.lookup(a, lab)
        return out

    def times_axis_vector(self, j: int, v: Element) -> Element:
        """``a_j . v`` from the closed-form rules (no table)."""
        out = Element()
        for lab, c in v:
            out = out + c * self.times_label(j, lab)
        return out

    def product(self, u: Element, v: Element) -> Element:
        out = Element()
        for x, cx in u:
            for y, cy in v:
                out = out + (cx * cy) * self.lookup(x, y)
        return out

    # -- alpha products -----------------------------------------------------
    def alpha_product(self, a: int, x: int, y: int) -> Element:
        """``alpha(a, x) . alpha(a, y)`` for axes ``a_a, a_x, a_y``.

        Decomposes both factors along the eigenspaces of ``a`` and uses the
        fusion rules; everything reduces to products of ``a`` with vectors
        already in the table.
        """
        ax, xv, yv = self.ax(a), self.ax(x), self.ax(y)
        alpha_x, alpha_y = self.alpha_axes(a, x), self.alpha_axes(a, y)
        A = self.times_axis(y, alpha_x) + self.times_axis(x, alpha_y)
        lx, ly = self.bracket(a, xv), self.bracket(a, yv)
        xp, yp = self.phi_plus(a, xv), self.phi_plus(a, yv)
        xpyp = self.product(xp, yp)
        S = (lx - F(1, 32)) * yv + (ly - F(1, 32)) * xv
        scalar = 6 * lx * ly - F(7, 32) * (lx + ly) + F(1, 128)
        return (F(3, 16) * self.phi_plus(a, A) + F(7, 256) * xpyp + scalar * ax
                - F(1, 3) * self.phi_one(a, A - F(7, 4) * S))

    def alpha_routes(self, x: str, y: str) -> list:
        """Triples ``(a, p, q)`` with ``x = alpha(a_a, a_p)``, ``y = alpha(a_a, a_q)``."""
        n = self.n
        centres = {"alpha1": (1, -1), "alpha2": (2, -2)}
        out = []
        for j in range(n):
            if "alpha2" in (x, y) and n % 2 == 0 and j % 2 == 0:
                continue  # alpha2 has even centre; a_j must be odd to lie in its pair
            for s, t in itertools.product(centres[x], centres[y]):
                out.append((j, j + s, j + t))
        return out

    def alpha_alpha(self, x: str, y: str) -> Element:
        routes = self.alpha_routes(x, y)
        return self._agree(f"{x}*{y}", [self.alpha_product(*r) for r in routes])

    # -- single-axis operations exposed for inspection ------------------------
    def alpha_of(self, j: int, v: Element) -> Element:
        return self.times_axis(j, v) - SIXTEENTH * (self.ax(j) + v)

    def project_channel(self, j: int, v: Element, channel: str) -> Element:
        if channel == "+":
            return self.phi_plus(j, v)
        if channel == "-":
            return self.phi_minus(j, v)
        if channel == "1":
            # x^1 = 2 alpha(a, x) - (4 (a|x) - 1/8) a + x^+/8
            return (2 * self.alpha_of(j, v) - (4 * self.bracket(j, v) - F(1, 8)) * self.ax(j)
                    + F(1, 8) * self.phi_plus(j, v))
        if channel == "0":
            return self.phi_plus(j, v) - self.project_channel(j, v, "1")
        raise ValueError(f"channel must be one of {CHANNELS}, got {channel!r}")


@dataclass
class DihedralAlgebra:
    n: int
    params: ParamRecord
    labels: tuple
    table: dict
    gram: Matrix
    gram_table: GramTable
    tau_e: Matrix
    tau_f: Matrix
    certificate: PSDCertificate
    radical: list
    model: OrbitModel
    engine: ProductEngine | None = field(default=None, repr=False)
    iterations: int = 0
    routes_compared: int = 0

    @property
    def rank(self) -> int:
        return self.certificate.rank

    @property
    def dim_span(self) -> int:
        return len(self.labels)

    # -- arithmetic ----------------------------------------------------------
    def basis(self, label: str) -> Element:
        if label not in self.labels:
            raise KeyError(label)
        return Element.basis(label)

    def axis(self, j: int) -> Element:
        return Element.basis(axis_label(j, self.n))

    @property
    def e(self) -> Element:
        return self.axis(-1)

    @property
    def f(self) -> Element:
        return self.axis(0)

    def product(self, u: Element, v: Element) -> Element:
        dense = self._dense()
        index = self._index()
        k = len(self.labels)
        acc = [Fraction(0)] * k
        for x, cx in u:
            row = dense[index[x]]
            for y, cy in v:
                c = cx * cy
                for i, t in row[index[y]]:
                    acc[i] += c * t
        return Element.from_vector(self.labels, acc)

    def _index(self) -> dict:
        if "_index_cache" not in self.__dict__:
            self.__dict__["_index_cache"] = {lab: i for i, lab in enumerate(self.labels)}
        return self.__dict__["_index_cache"]

    def _dense(self) -> list:
        """Structure constants as sparse ``(position, coefficient)`` rows, built once."""
        if "_dense_cache" not in self.__dict__:
            index = self._index()
            self.__dict__["_dense_cache"] = [
                [[(index[z], c) for z, c in self.table[(x, y)]] for y in self.labels]
                for x in self.labels]
        return self.__dict__["_dense_cache"]

    def inner(self, u: Element, v: Element) -> Fraction:
        return self.gram_table.form(u, v)

    def vector(self, v: Element) -> list:
        return v.vector(self.labels)

    def element(self, vec) -> Element:
        return Element.from_vector(self.labels, vec)

    def is_zero(self, v: Element) -> bool:
        """Zero in the algebra: ``v`` lies in the radical of the Gram form."""
        return all(x == 0 for x in self.gram @ self.vector(v))

    def equal(self, u: Element, v: Element) -> bool:
        return self.is_zero(u - v)

    def reduce(self, v: Element) -> Element:
        """Canonical representative modulo the radical (alphas eliminated first)."""
        if not self.radical:
            return v
        k = len(self.labels)
        # echelon on reversed columns so pivots land on the last labels
        rows = Matrix.from_rows([list(reversed(self.vector(r))) for r in self.radical])
        ech, pivots = rref(rows)
        vec = list(reversed(self.vector(v)))
        for row, pc in zip(ech, pivots):
            if vec[pc] != 0:
                c = vec[pc]
                vec = [a - c * b for a, b in zip(vec, row)]
        return self.element(list(reversed(vec)))

    def apply(self, M: Matrix, v: Element) -> Element:
        return self.element(M @ self.vector(v))

    def tau(self, which: str, v: Element) -> Element:
        return self.apply(self.tau_e if which == "e" else self.tau_f, v)

    def adjoint(self, u: Element) -> Matrix:
        """Matrix of ``x -> u x`` in the spanning coordinates (columns = images)."""
        cols = [self.vector(self.product(u, self.basis(lab))) for lab in self.labels]
        return Matrix.from_rows([[cols[j][i] for j in range(len(cols))]
                                 for i in range(len(self.labels))])

    def structure_constant(self, x: str, y: str, z: str) -> Fraction:
        return self.table[(x, y)][z]

    def to_json(self) -> dict:
        fmt = format_rational
        mat = lambda M: [[fmt(x) for x in row] for row in M.to_rows()]
        table = {x: {y: self.table[(x, y)].to_json() for y in self.labels} for x in self.labels}
        return {
            "n": self.n,
            "params": self.params.to_json(),
            "labels": list(self.labels),
            "rank": self.rank,
            "positive_semidefinite": self.certificate.is_psd,
            "table": table,
            "gram": mat(self.gram),
            "tau_e": mat(self.tau_e),
            "tau_f": mat(self.tau_f),
            "radical": [r.to_json() for r in self.radical],
            "orbit": self.model.to_json(),
        }

    def csv_rows(self) -> list:
        rows = []
        for x in self.labels:
            for y in self.labels:
                for z, c in sorted(self.table[(x, y)]):
                    rows.append((x, y, z, format_rational(c)))
        return rows

    def to_csv(self) -> str:
        lines = ["x,y,basis,coefficient"] + [",".join(r) for r in self.csv_rows()]
        return "\n".join(lines) + "\n"

    def with_entry(self, x: str, y: str, value: Element, symmetric: bool = True) -> "DihedralAlgebra":
        """Copy with one table entry replaced (used for mutation tests)."""
        table = dict(self.table)
        table[(x, y)] = value
        if symmetric:
            table[(y, x)] = value
        return DihedralAlgebra(self.n, self.params, self.labels, table, self.gram, self.gram_table,
                               self.tau_e, self.tau_f, self.certificate, self.radical, self.model,
                               None, self.iterations, self.routes_compared)


def _permutation_matrix(labels: tuple, n: int, perm: tuple) -> Matrix:
    index = {lab: i for i, lab in enumerate(labels)}
    k = len(labels)
    rows = [[F(0)] * k for _ in range(k)]
    for i, lab in enumerate(labels):
        image = axis_label(perm[axis_index(lab)], n) if is_axis(lab) else lab
        rows[index[image]][i] = F(1)
    return Matrix.from_rows(rows)


def build_algebra(n: int, params: ParamRecord) -> DihedralAlgebra:
    """Run the closure loop and return the full structure-constant table."""
    if not isinstance(n, int) or not 1 <= n <= MAX_ALGEBRA_ORBIT:
        raise ValueError(f"build_algebra supports 1 <= n <= {MAX_ALGEBRA_ORBIT}, got {n!r}")
    if not isinstance(params, ParamRecord):
        params = ParamRecord(*params)
    model = build_orbit(n)
    gram_table = derive_gram(model, params)
    engine = ProductEngine(model, params, gram_table)
    labels = spanning_labels(n)

    # the relation family must hold formally once the alphas are canonical
    for k in range(n):
        residual = engine.D(k) - engine.D(k - 1) - engine.relation(k)
        if not engine.in_radical(residual):
            raise InconsistentParametersError(
                "alpha relation fails under the orbit identifications",
                {"k": k, "residual": residual.to_json(), **params.to_json()})

    pending = deque((x, y) for i, x in enumerate(labels) for y in labels[i:])
    cap = 10 * len(labels) ** 2
    iterations = 0
    while pending:
        iterations += 1
        if iterations > cap:
            raise NotClosedError("closure loop hit its iteration cap",
                                 {"pending": [list(p) for p in pending]})
        x, y = pending.popleft()
        try:
            if is_axis(x):
                value = engine.times_label(axis_index(x), y)
            elif is_axis(y):
                value = engine.times_label(axis_index(y), x)
            else:
                value = engine.alpha_alpha(x, y)
        except _Pending:
            pending.append((x, y))
            continue
        stray = set(value.coords) - set(labels)
        if stray:
            raise NotClosedError(f"product {x}*{y} escapes the spanning set",
                                 {"labels": sorted(stray)})
        engine.table[(x, y)] = value
        engine.table[(y, x)] = value
    log.debug("closure for n=%d finished in %d iterations", n, iterations)

    gram = gram_table.matrix()
    cert = psd_certificate(gram)
    radical = [Element.from_vector(labels, v) for v in nullspace(gram)]
    alg = DihedralAlgebra(
        n=n, params=params, labels=labels, table=dict(engine.table), gram=gram,
        gram_table=gram_table,
        tau_e=_permutation_matrix(labels, n, model.tau_e),
        tau_f=_permutation_matrix(labels, n, model.tau_f),
        certificate=cert, radical=radical, model=model, engine=engine,
        iterations=iterations, routes_compared=engine.routes_compared)
    return alg


# module-level views of the single-axis operations -----------------------------

def _axis_index(alg: DihedralAlgebra, a) -> int:
    if isinstance(a, int):
        return a % alg.n
    if a == "e":
        return (-1) % alg.n
    if a == "f":
        return 0
    return axis_index(a)


def alpha_of(alg: DihedralAlgebra, a, x: Element) -> Element:
    """``alpha(a, x) = a x - (a + x)/16``."""
    j = _axis_index(alg, a)
    return alg.product(alg.axis(j), x) - SIXTEENTH * (alg.axis(j) + x)


def project_channel(alg: DihedralAlgebra, a, x: Element, channel: str) -> Element:
    return alg.engine.project_channel(_axis_index(alg, a), x, channel)


def axis_product(alg: DihedralAlgebra, a, v: Element) -> Element:
    return alg.product(alg.axis(_axis_index(alg, a)), v)


def alpha_product(alg: DihedralAlgebra, a, x, y) -> Element:
    return alg.engine.alpha_product(_axis_index(alg, a), _axis_index(alg, x), _axis_index(alg, y))


def double_derivation(alg: DihedralAlgebra) -> tuple:
    """``alpha(e,f)^2`` expanded around ``e`` and around ``f``."""
    e, f = (-1) % alg.n, 0
    return alg.engine.alpha_product(e, f, f), alg.engine.alpha_product(f, e, e)
