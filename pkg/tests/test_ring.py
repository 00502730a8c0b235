import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halg.ring import (GradedRing, InhomogeneousError, NotPrimeError, groebner_basis,
                       leading_term_dimension, parse_poly, format_poly)

import oracles
from conftest import CORPUS, make_ring

P = 32003


def test_parse_and_format_round_trip():
    R = GradedRing(["x", "y"], [1, 1])
    f = R.poly("3*x^2 - (x+y)*y + 7")
    assert format_poly(parse_poly(str(f), R), R) == str(f)
    assert R.poly("(x+y)^2") == R.poly("x^2 + 2*x*y + y^2")


def test_not_prime_and_inhomogeneous_rejected():
    with pytest.raises(NotPrimeError):
        GradedRing(["x"], [1], char=15)
    with pytest.raises(InhomogeneousError):
        GradedRing(["x", "y"], [1, 1], ["x^2 - y"])


def test_weights_must_be_positive():
    with pytest.raises(ValueError):
        GradedRing(["x"], [0])


def test_empty_ideal_is_polynomial_ring():
    R = GradedRing(["x", "y"], [1, 1])
    assert R.gb == []
    assert R.hilbert_function(4) == [1, 2, 3, 4, 5]
    assert R.krull_dim() == 2


def test_default_characteristic_env(monkeypatch):
    monkeypatch.setenv("HALG_DEFAULT_CHAR", "101")
    assert GradedRing(["x"], [1]).char == 101


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_hilbert_function_matches_dense_oracle(name):
    R = make_ring(name)
    Q = oracles.DenseQuotient(R.weights, R.ideal_gens, P)
    assert R.hilbert_function(12) == [Q.hilbert(d) for d in range(13)]


@pytest.mark.parametrize("name,dim", [("node", 1), ("dual_numbers", 0), ("fat_point", 0),
                                      ("embedded", 1), ("semigroup_345", 1), ("axes", 1)])
def test_dimension_two_routes(name, dim):
    R = make_ring(name)
    assert R.krull_dim() == dim
    assert leading_term_dimension(R) == dim


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_corpus_bases_satisfy_buchberger(name):
    R = make_ring(name)
    assert oracles.buchberger_criterion(R.gb, R.order.key, P)


def _random_form(rng, weights, d, density=0.6):
    f = {}
    for m in oracles.monomials(weights, d):
        if rng.random() < density:
            f[m] = rng.randrange(1, P)
    return f


ideal_seeds = st.integers(0, 10_000)


@given(ideal_seeds)
@settings(max_examples=25, deadline=None)
def test_membership_agrees_with_dense_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    weights = [1] * n
    gens = [f for f in (_random_form(rng, weights, rng.randint(1, 3)) for _ in range(rng.randint(1, 3))) if f]
    R = GradedRing(["x%d" % i for i in range(n)], weights, gens, P)
    Q = oracles.DenseQuotient(weights, gens, P)
    assert oracles.buchberger_criterion(R.gb, R.order.key, P)
    for _ in range(8):
        d = rng.randint(0, 4)
        f = _random_form(rng, weights, d)
        if gens and rng.random() < 0.5:
            g = rng.choice(gens)
            gd = sum(next(iter(g)))
            if d >= gd:
                mult = _random_form(rng, weights, d - gd) or {(0,) * n: 1}
                f = oracles._mul(g, mult, P)
        assert R.contains(R.poly(f) if f else R.poly("0")) == Q.in_ideal(f)


polys = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(1, 50)), max_size=4)


@given(polys, polys, polys)
@settings(max_examples=60, deadline=None)
def test_polynomial_ring_axioms(a, b, c):
    R = make_ring("node")
    f, g, h = (R.poly(" + ".join("%d*x^%d*y^%d" % (k, i, j) for i, j, k in t) or "0")
               for t in (a, b, c))
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert (f + g) - g == f


def test_groebner_basis_of_twisted_cubic_is_reduced():
    R = GradedRing(["a", "b", "c", "d"], [1, 1, 1, 1])
    gens = [parse_poly(t, R) for t in ("a*c - b^2", "b*d - c^2", "a*d - b*c")]
    G = groebner_basis(gens, R.order, P)
    assert oracles.buchberger_criterion(G, R.order.key, P)
    leads = [max(g, key=R.order.key) for g in G]
    assert all(g[l] == 1 for g, l in zip(G, leads))
    for i, g in enumerate(G):
        for j, l in enumerate(leads):
            if i != j:
                assert not any(all(a >= b for a, b in zip(e, l)) for e in g)


# ------------------------------------------------------------ worked examples

def test_principal_ideal_basis():
    R = GradedRing(["x", "y"], [1, 1])
    assert groebner_basis([R.poly("x").as_dict()], R.order, P) == [R.poly("x").as_dict()]


def test_monomial_pair_is_already_a_basis():
    R = GradedRing(["x", "y"], [1, 1], char=101)
    gens = [R.poly("x^2").as_dict(), R.poly("x*y").as_dict()]
    G = groebner_basis(gens, R.order, 101)
    assert sorted(map(sorted, G)) == sorted(map(sorted, gens))
    assert not oracles.reduce_poly(oracles.s_polynomial(gens[0], gens[1], R.order.key, 101),
                                   gens, R.order.key, 101)


def test_semigroup_ring_basis_is_its_generators():
    R = make_ring("semigroup_345")
    names = ["y^2 - x*z", "z^2 - x^2*y", "x^3 - y*z"]
    amb = R.ambient()
    expected = {frozenset(amb.poly(t).as_dict().items()) for t in names}
    got = set()
    for g in R.gb:
        lc = g[max(g, key=R.order.key)]
        inv = pow(lc, P - 2, P)
        got.add(frozenset((m, c * inv % P) for m, c in g.items()))
    normalized = set()
    for g in expected:
        d = dict(g)
        lc = d[max(d, key=R.order.key)]
        inv = pow(lc, P - 2, P)
        normalized.add(frozenset((m, c * inv % P) for m, c in d.items()))
    assert got == normalized


def test_basis_independent_of_generator_order():
    R = make_ring("semigroup_345")
    gens = [R.ambient().poly(t).as_dict() for t in ("y^2 - x*z", "z^2 - x^2*y", "x^3 - y*z")]
    a = groebner_basis(gens, R.order, P)
    b = groebner_basis(gens[::-1], R.order, P)
    assert a == b


def test_normal_form_examples():
    R = make_ring("node")
    assert R.normal_form("x*y").is_zero()
    assert R.normal_form("x^2 + x*y") == R.poly("x^2")
    for name in CORPUS:
        S = make_ring(name)
        assert S.normal_form(1) == S.one()


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_normal_form_linear_and_idempotent(seed):
    rng = random.Random(seed)
    R = make_ring(rng.choice(sorted(CORPUS)))
    d = rng.randint(0, 6)
    f = R.poly(_random_form(rng, R.weights, d) or "0")
    g = R.poly(_random_form(rng, R.weights, d) or "0")
    a, b = rng.randrange(P), rng.randrange(P)
    nf = R.normal_form
    assert nf(nf(f)) == nf(f)
    assert nf(f * a + g * b) == nf(f) * a + nf(g) * b


def test_k_basis_examples():
    node, fat = make_ring("node"), make_ring("fat_point")
    assert sorted(node.k_basis(2)) == [(0, 2), (2, 0)]
    assert fat.k_basis(2) == []
    for name in CORPUS:
        assert make_ring(name).k_basis(0) == [(0,) * len(CORPUS[name][0])]


def test_hilbert_series_examples():
    node = make_ring("node").hilbert_series(6)
    assert node.coefficients == [1, 2, 2, 2, 2, 2, 2]
    assert node.polynomial_form() is None and node.rational.dimension() == 1
    fat = make_ring("fat_point").hilbert_series(4)
    assert fat.polynomial_form() == {0: 1, 1: 2}
    line = GradedRing(["x"], [1]).hilbert_series(5)
    assert line.coefficients == [1] * 6
