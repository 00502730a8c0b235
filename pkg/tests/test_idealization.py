import pytest

from halg.complexes import PerfectComplex, koszul, restrict_module
from halg.invariants import (canonical_module, depth_ring, find_sop, is_cm, krull_dim,
                             residue_field)
from halg.idealization import (idealize, is_canonical, phi_transport_check, reiten_check,
                               triangle_10r)
from halg.modules import FPModule
from halg.ring import GradedRing
from halg.semidualizing import is_semidualizing, is_totally_C_reflexive

import oracles
from conftest import CM_NAMES, CORPUS, GORENSTEIN, make_ring

P = 32003
_pres = {}


def pres_for(name, which):
    key = (name, which)
    if key not in _pres:
        R = make_ring(name)
        C = canonical_module(R) if which == "omega" else FPModule.free(R, (0,))
        _pres[key] = idealize(R, C)
    return _pres[key]


def dense_type(S):
    """Socle dimension of S, or of S/(l) for a parameter l when dim S = 1."""
    gens = list(S.ideal_gens)
    if krull_dim(S) == 1:
        gens.append(find_sop(S)[0].as_dict())
    Q = oracles.DenseQuotient(S.weights, gens, P)
    # the quotient is Artinian: stop after max-weight consecutive zero degrees
    top, zeros, d = 0, 0, 0
    while zeros < max(S.weights):
        if Q.hilbert(d):
            top, zeros = d, 0
        else:
            zeros += 1
        d += 1
    return Q.socle_dimension(top)


# ------------------------------------------------------------- construction

def test_idealize_field_by_itself():
    k = GradedRing([], [])
    pres = idealize(k, FPModule.free(k, (0,)))
    S = pres.total
    assert S.names == ("e1",) and S.weights == (1,)
    assert S.hilbert_function(3) == [1, 1, 0, 0]
    assert pres.ok


def test_idealize_line_by_itself():
    R = GradedRing(["x"], [1])
    S = idealize(R, FPModule.free(R, (0,))).total
    assert S.names == ("x", "e1")
    assert S.gb == [{(0, 2): 1}]
    assert S.hilbert_function(4) == [1, 2, 2, 2, 2]


def test_fresh_names_avoid_collisions():
    R = GradedRing(["e1", "x"], [1, 1])
    S = idealize(R, FPModule.free(R, (0,))).total
    assert "e1" in S.names and len(set(S.names)) == 3


@pytest.mark.parametrize("name,which", [(n, "R") for n in sorted(CORPUS)]
                         + [(n, "omega") for n in CM_NAMES])
def test_idealization_invariants(name, which):
    pres = pres_for(name, which)
    assert pres.ok and set(pres.checks) == {"square_zero", "quotient_is_R", "surjection",
                                            "hilbert_additive", "ideal_iso_C"}
    S, R, C = pres.total, pres.base, pres.module
    Q = oracles.DenseQuotient(S.weights, S.ideal_gens, P)
    ys = [y.as_dict() for y in pres.ideal]
    assert all(Q.in_ideal(oracles._mul(a, b, P)) for a in ys for b in ys)
    a = pres.twist
    hs_C = C.hilbert_function(-a, 8 - a)
    assert [Q.hilbert(d) for d in range(9)] == [
        x + y for x, y in zip(R.hilbert_function(8), hs_C)]
    assert krull_dim(S) == krull_dim(R)
    if which == "omega":
        assert depth_ring(S) == krull_dim(R)


def test_fat_point_with_canonical_module():
    pres = pres_for("fat_point", "omega")
    S = pres.total
    poly = S.hilbert_series(0).polynomial_form()
    a = pres.twist
    expected = {0: 1, 1: 2}
    for d, c in {a - 1: 2, a: 1}.items():
        expected[d] = expected.get(d, 0) + c
    assert poly == expected
    assert reiten_check(pres.base, pres.module, pres).gorenstein


# ---------------------------------------------------------------- Reiten

@pytest.mark.parametrize("name", CM_NAMES)
def test_reiten_with_canonical_module(name):
    pres = pres_for(name, "omega")
    rep = reiten_check(pres.base, pres.module, pres)
    assert rep.gorenstein and rep.matches and rep.type_S == 1 == dense_type(pres.total)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_reiten_with_ring(name):
    pres = pres_for(name, "R")
    rep = reiten_check(pres.base, pres.module, pres)
    assert rep.gorenstein == (name in GORENSTEIN)
    assert rep.matches
    if rep.type_S is not None:
        assert rep.type_S == dense_type(pres.total)


def test_reiten_polynomial_line():
    R = GradedRing(["x"], [1])
    rep = reiten_check(R, FPModule.free(R, (0,)))
    assert rep.gorenstein and rep.c_is_canonical and rep.r_is_cm


def test_is_canonical():
    R = make_ring("fat_point")
    assert is_canonical(canonical_module(R))
    assert is_canonical(canonical_module(R).twist(3))
    assert not is_canonical(FPModule.free(R, (0,)))
    assert is_canonical(FPModule.free(make_ring("embedded"), (0,))) is None


# ----------------------------------------------------- triangle and transport

def test_triangle_on_idealization_of_field():
    k = GradedRing([], [])
    pres = idealize(k, FPModule.free(k, (0,)))
    S = pres.total
    rep = triangle_10r(koszul(["e1"], S), pres)
    assert rep["verified"]
    rep = triangle_10r(PerfectComplex(S, {0: FPModule.free(S, (0,))}), pres)
    assert rep["verified"] and rep["degreewise"]["0"]["hilbert_middle"]


@pytest.mark.parametrize("name", ["node", "fat_point", "dual_numbers"])
def test_triangle_on_corpus(name):
    pres = pres_for(name, "omega")
    S = pres.total
    assert triangle_10r(PerfectComplex(S, {0: FPModule.free(S, (0,))}), pres)["verified"]
    if krull_dim(S) > 0:
        assert triangle_10r(koszul(find_sop(S), S), pres)["verified"]


@pytest.mark.parametrize("label", ["omega", "R", "k"])
def test_transport_on_fat_point(label):
    pres = pres_for("fat_point", "omega")
    R = pres.base
    M = {"omega": pres.module, "R": FPModule.free(R, (0,)), "k": residue_field(R)}[label]
    rep = phi_transport_check(M, pres, 6)
    assert rep.over_quotient.ok and rep.over_total.ok and rep.ok


def test_restriction_examples():
    pres = pres_for("fat_point", "omega")
    S, R = pres.total, pres.base
    k = restrict_module(residue_field(R), pres.surjection)
    assert k.hilbert_function(0, 4) == [1, 0, 0, 0, 0]
    SR = restrict_module(FPModule.free(R, (0,)), pres.surjection)
    assert SR.rank == 1
    assert SR.hilbert_function(0, 6) == R.hilbert_function(6)
    wS = restrict_module(pres.module, pres.surjection)
    Sfree = FPModule.free(S, (0,))
    assert is_totally_C_reflexive(wS, Sfree, 6, is_semidualizing(Sfree, 6)).ok
    assert is_cm(S)
