import itertools
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from dihedral_griess import (
    ParameterBoundError, build_algebra, classify, constraint_system, derive_gram, build_orbit,
    independence_certificate, infeasibility_scan, mu_identity, render_table, solve_parameters,
    verify_axioms,
)
from dihedral_griess.classification import INTRO_TABLE, farey
from dihedral_griess.linalg import solve_quadratic
from dihedral_griess.poly import Poly

from conftest import KNOWN_ROWS

L1, L2 = Poly.var("l1"), Poly.var("l2")


def _proportional(p, q):
    a, b = p.normalized(), q.normalized()
    return a == b


def test_n2_equation():
    sys_ = constraint_system(2)
    eq = sys_.equations[-1].poly
    assert _proportional(eq, 2 ** 11 * L1 * L1 - 2 ** 8 * L1)
    assert set(solve_quadratic(*eq.univariate_coeffs("l1")[::-1]).roots) == {F(0), F(1, 8)}


def test_n3_equation():
    eqs = [e.poly.subs({"l2": L1}) for e in constraint_system(3).equations]
    eqs = [p for p in eqs if not p.is_zero()]
    assert len(eqs) == 1
    assert _proportional(eqs[0], 2 ** 15 * L1 * L1 - 17 * 2 ** 7 * L1 + 26)


def test_n4_equations():
    eqs = [e.poly for e in constraint_system(4).equations]
    assert any(_proportional(p, 2 ** 11 * L1 * L1 - 2 ** 5 * L1 + 2 ** 3 * L2 - 1) for p in eqs)
    at_zero = [p.subs({"l2": 0}) for p in eqs if "l1" in p.variables][0]
    assert _proportional(at_zero, (2 ** 5 * L1 - 1) * (2 ** 6 * L1 + 1))


def test_n5_forces_lambda1():
    eqs = [e.poly for e in constraint_system(5).equations]
    assert any(_proportional(p, 2 ** 8 * L1 - 6) for p in eqs)


def test_n6_equations():
    eqs = [e.poly for e in constraint_system(6).equations]
    assert any(_proportional(p, 2 ** 8 * L1 - 5) for p in eqs)
    assert any(_proportional(p, 2 ** 15 * L1 * L1 - 2 ** 9 * L1 + 2 ** 7 * L2 - 9) for p in eqs)


def test_constraint_range():
    with pytest.raises(ValueError):
        constraint_system(7)


@pytest.mark.parametrize("label,n,ef,eetf", KNOWN_ROWS)
def test_solutions_satisfy_their_system(label, n, ef, eetf):
    values = constraint_system(n).evaluate(4 * ef, 4 * eetf)
    assert all(v == 0 for v in values)


def test_solve_examples():
    assert {r.ef for r in solve_parameters(3)} == {F(13, 1024), F(1, 256)}
    assert {(r.ef, r.e_etf) for r in solve_parameters(4)} == {(F(1, 128), 0), (F(1, 256), F(1, 32))}
    (six,) = solve_parameters(6)
    assert (six.ef, six.e_etf, six.extra, six.label) == (F(5, 1024), F(13, 1024), F(1, 32), "6A")


def test_classification_matches_table():
    rows = classify()
    got = {(r.label, r.n, r.ef, r.e_etf) for r in rows}
    assert got == set(KNOWN_ROWS)
    assert {r.label: r.ef for r in rows} == INTRO_TABLE


def test_round_trip(row_algebra):
    label, alg = row_algebra
    row = next(r for r in classify() if r.label == label)
    rebuilt = build_algebra(row.n, row.params)
    assert verify_axioms(rebuilt).ok
    g = rebuilt.gram_table
    if row.n > 1:
        assert g.mu[1] == row.ef
    if row.n >= 4:
        assert g.mu[2] == row.e_etf
    if row.extra is not None:
        assert g.mu[3] == row.extra


def test_render_csv():
    text = render_table(classify(), "csv")
    lines = text.splitlines()
    assert lines[0] == "n,class,ef,e_etf,extra"
    assert "6,6A,5/1024,13/1024,1/32" in lines
    assert "2,2B,0,1/4," in lines
    assert lines[2].startswith("2,2A")  # ef descending within n
    assert text == render_table(list(reversed(classify())), "csv")


def test_render_errors():
    with pytest.raises(ValueError):
        render_table(classify(), "")
    with pytest.raises(ValueError):
        render_table([], "csv")


def test_mu_identity_own_expansion():
    assert mu_identity()["holds"]


def test_mu_identity_sympy():
    m11, m22, m33, m12, m23, m13 = sympy.symbols("m11 m22 m33 m12 m23 m13")
    A = sympy.Matrix([[m11, m12, m13], [m12, m22, m23], [m13, m23, m33]])
    t = sympy.Rational(2, 3)
    M1 = sympy.Rational(8, 27) - t * (m12 ** 2 + m23 ** 2 + m13 ** 2) + 2 * m12 * m23 * m13
    M2 = ((m11 - t) * (m22 * m33 - m23 ** 2) + (m22 - t) * (t * m33 - m13 ** 2)
          + (m33 - t) * (sympy.Rational(4, 9) - m12 ** 2))
    assert sympy.expand(M1 + M2 - A.det()) == 0


def test_certificate_examples():
    c = independence_certificate([0] * 6)
    assert c.det == 1 and c.verdict == "positive"
    third = F(1, 3)
    c = independence_certificate([F(1, 5), third, F(1, 7), third, F(1, 11), third])
    assert c.A[0, 2] == 0
    mu = c.A
    assert c.m1 == F(8, 27) - F(2, 3) * (mu[0, 1] ** 2 + mu[1, 2] ** 2) > 0
    assert c.m2 == 0
    with pytest.raises(ParameterBoundError):
        independence_certificate([F(1, 2)] + [0] * 5)


grid = st.sampled_from(farey(9, F(1, 3)))


@settings(max_examples=300, deadline=None)
@given(st.lists(grid, min_size=6, max_size=6))
def test_certificate_properties(seq):
    c = independence_certificate(seq)
    assert c.m1 + c.m2 == c.det
    assert c.m1 >= 0 and c.m2 >= 0 and c.det > 0
    assert c.A.is_symmetric()
    assert independence_certificate(list(reversed(seq))).verdict == c.verdict


def test_scan_small_bounds():
    r = infeasibility_scan(2)
    assert r.violations == 0
    assert r.candidates == 1  # only 0 lies in [0, 1/3] with denominator <= 2
    r = infeasibility_scan(3, extra_sequences=[[F(1, 2), 0, 0, 0, 0, 0]])
    assert r.violations == 0 and r.filtered == len(farey(3)) ** 6 - 2 ** 6 + 1


def test_scan_against_direct_certificates():
    r = infeasibility_scan(4)
    ok = [x for x in farey(4) if x <= F(1, 3)]
    dets = [independence_certificate(s).det for s in itertools.product(ok, repeat=6)]
    assert r.candidates == len(dets)
    assert r.min_det == min(dets)
    assert r.violations == 0


def test_scan_rejects_bad_bound():
    with pytest.raises(ValueError):
        infeasibility_scan(1)
