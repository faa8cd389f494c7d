"""Randomised exact identities over the classified algebras."""

from fractions import Fraction as F
from functools import lru_cache

from hypothesis import given, settings, strategies as st

from dihedral_griess import Element, Matrix

from conftest import KNOWN_ROWS, algebra

E = Element.basis
labels = st.sampled_from([r[0] for r in KNOWN_ROWS])
small = st.fractions(min_value=-3, max_value=3, max_denominator=8)


@lru_cache(maxsize=None)
def group_matrices(label):
    alg = algebra(label)
    gens = [alg.tau_e, alg.tau_f]
    seen = {Matrix.identity(alg.dim_span)}
    frontier = list(seen)
    while frontier:
        g = frontier.pop()
        for t in gens:
            h = t @ g
            if h not in seen:
                seen.add(h)
                frontier.append(h)
    return sorted(seen, key=lambda m: m.entries)


@st.composite
def algebra_and_vectors(draw):
    label = draw(labels)
    alg = algebra(label)
    k = len(alg.labels)
    x, y = (Element.from_vector(alg.labels, draw(st.lists(small, min_size=k, max_size=k)))
            for _ in range(2))
    return label, alg, x, y


@settings(max_examples=500, deadline=None)
@given(algebra_and_vectors(), st.integers(min_value=0, max_value=11))
def test_group_acts_by_automorphisms(data, k):
    label, alg, x, y = data
    group = group_matrices(label)
    g = group[k % len(group)]
    lhs = alg.apply(g, alg.product(x, y))
    rhs = alg.product(alg.apply(g, x), alg.apply(g, y))
    assert alg.equal(lhs, rhs)
    assert alg.inner(alg.apply(g, x), alg.apply(g, y)) == alg.inner(x, y)


@settings(max_examples=500, deadline=None)
@given(algebra_and_vectors(), st.integers(min_value=0, max_value=5))
def test_double_product_identity(data, j):
    _, alg, x, _ = data
    j %= alg.n
    a = alg.axis(j)
    ax = alg.product(a, x)
    minus = alg.engine.phi_minus(j, x)
    bracket = 4 * alg.inner(a, x)
    rhs = F(1, 2) * ax + 3 * bracket * a - F(7, 256) * minus
    assert alg.equal(alg.product(a, ax), rhs)


@settings(max_examples=2000, deadline=None)
@given(labels, st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
def test_inner_product_depends_on_distance(label, j, k, shift):
    alg = algebra(label)
    n = alg.n
    lhs = alg.inner(E(f"a{j % n}"), E(f"a{k % n}"))
    assert lhs == alg.inner(E(f"a{(j + shift) % n}"), E(f"a{(k + shift) % n}"))
    assert lhs == alg.inner(E(f"a{(-j) % n}"), E(f"a{(-k) % n}"))


@settings(max_examples=400, deadline=None)
@given(algebra_and_vectors())
def test_swapping_e_and_f(data):
    """a_j -> a_{-1-j} exchanges e and f; it fixes alpha1 and sends alpha2 to alpha(f, f^{tau_e})."""
    _, alg, x, y = data
    g = alg.engine
    n = alg.n

    def swap(v):
        out = Element()
        for lab, c in v:
            if lab.startswith("alpha"):
                img = E("alpha1") if lab == "alpha1" else g.D(-1)
            else:
                img = E(f"a{(-1 - int(lab[1:])) % n}")
            out = out + c * img
        return out

    assert alg.equal(swap(alg.product(x, y)), alg.product(swap(x), swap(y)))
