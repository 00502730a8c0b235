"""Idealization S = R⋉C as a graded quotient ring, and instance checks of
the structural facts used about it: I = 0⊕C squares to zero, S/I = R,
the triangle P⊗I -> P -> P/IP, transport of G_C(S/I) into G(S), and the
Gorenstein criterion for S."""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import (ChainComplex, ChainMap, PerfectComplex, RingSurjection,
                        restrict_module, restrict_scalars, tensor_complex)
from .invariants import (NotCMError, canonical_module, depth_module, depth_ring, is_cm,
                         krull_dim, ring_type)
from .modules import FPModule, ModuleMap, hom_module, kernel_generators
from .ring import AlgebraError, GradedRing, pmul
from .semidualizing import GCReport, default_bound, is_semidualizing, is_totally_C_reflexive


def _fresh_names(taken, count):
    taken = set(taken)
    out = []
    stem = "e"
    while any("%s%d" % (stem, j + 1) in taken for j in range(count)):
        stem += "e"
    for j in range(count):
        out.append("%s%d" % (stem, j + 1))
    return out


@dataclass
class IdealizationPresentation:
    base: GradedRing
    module: FPModule
    total: GradedRing
    twist: int
    ideal: list                 # the fresh variables, as polynomials of S
    surjection: RingSurjection
    module_of_ideal: FPModule   # I as an R-module, on the generators y_j
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.checks.values())

    def as_dict(self):
        return {"twist": self.twist, "total": self.total.describe(),
                "fresh_variables": [str(y) for y in self.ideal], "checks": self.checks}


def _i_as_r_module(S, R, ys, degs, phi):
    """Relations among the y_j over S, pushed to R = S/I."""
    cols = [{(0, e): c for e, c in y.as_dict().items()} for y in ys]
    K, _ = kernel_generators(S, (0,), cols, degs)
    rels = []
    for v in K:
        w = {}
        for (pos, e), c in v.items():
            for e2, c2 in phi.push_poly({e: c}).items():
                key = (pos, e2)
                w[key] = (w.get(key, 0) + c2) % R.char
        w = {t: c for t, c in w.items() if c}
        if w:
            rels.append(w)
    return FPModule(R, degs, rels)


def idealize(R: GradedRing, C: FPModule, cutoff: int = 12) -> IdealizationPresentation:
    """S = R⋉C: variables of R plus y_j of weight deg(c_j) + a."""
    if not C.ring.same_ring(R):
        raise AlgebraError("C is not a module over R")
    m = C.rank
    a = max(0, 1 - min(C.gen_degrees)) if m else 0
    ynames = _fresh_names(R.names, m)
    names = list(R.names) + ynames
    weights = list(R.weights) + [g + a for g in C.gen_degrees]
    n = R.nvars
    lift = lambda e: tuple(e) + (0,) * m
    ydeg = lambda j: tuple([0] * n + [int(i == j) for i in range(m)])
    ideal = [{lift(e): c for e, c in g.items()} for g in R.gb]
    for r in C.rels:
        f = {}
        for (j, e), c in r.items():
            key = tuple(x + y for x, y in zip(lift(e), ydeg(j)))
            f[key] = (f.get(key, 0) + c) % R.char
        ideal.append(f)
    for i in range(m):
        for j in range(i, m):
            ideal.append({tuple(x + y for x, y in zip(ydeg(i), ydeg(j))): 1})
    S = GradedRing(names, weights, ideal, R.char,
                   name="%s_x_C" % R.name if R.name else None)
    ys = [S.var(n + j) for j in range(m)]
    images = list(R.names) + ["0"] * m
    phi = RingSurjection(S, R, [R.poly(x) for x in images], list(R.names), ys)
    I_R = _i_as_r_module(S, R, ys, list(weights[n:]), phi)
    pres = IdealizationPresentation(R, C, S, a, ys, phi, I_R)
    pres.checks = _verify(pres, cutoff)
    if not pres.ok:
        raise AlgebraError("idealization checks failed: %s" % pres.checks)
    return pres


def _verify(pres, cutoff):
    R, C, S, a = pres.base, pres.module, pres.total, pres.twist
    n, m = R.nvars, C.rank
    ys = [y.as_dict() for y in pres.ideal]
    square_zero = all(not S.nf_dict(pmul(ys[i], ys[j], S.char))
                      for i in range(m) for j in range(i, m))
    # S/I has reduced Gröbner basis {y_j} ∪ gb(R)
    Q = S.quotient(ys)
    expected = {tuple(sorted(y.items())) for y in ys}
    expected |= {tuple(sorted({tuple(e) + (0,) * m: c for e, c in g.items()}.items()))
                 for g in R.gb}
    quotient_ok = {tuple(sorted(g.items())) for g in Q.gb} == expected
    surj = pres.surjection.verify()
    hs_S = S.hilbert_function(cutoff)
    hs_R = R.hilbert_function(cutoff)
    hs_C = C.hilbert_function(-a, cutoff - a) if m else [0] * (cutoff + 1)
    additive = hs_S == [x + y for x, y in zip(hs_R, hs_C)]
    # I ≅ C(-a) as R-modules, identity on generators
    Ct = C.twist(-a)
    I_R = pres.module_of_ideal
    z = (0,) * n
    fwd = ModuleMap(Ct, I_R, [{(j, z): 1} for j in range(m)])
    back = ModuleMap(I_R, Ct, [{(j, z): 1} for j in range(m)])
    iso = m == 0 or (fwd.is_well_defined() and back.is_well_defined())
    return {"square_zero": square_zero, "quotient_is_R": quotient_ok,
            "surjection": all(surj.values()), "hilbert_additive": additive,
            "ideal_iso_C": iso}


# ------------------------------------------------------------ (10r)

def _ideal_over_s(pres):
    """I as an S-module: generators y_j, relations = S-syzygies of the y_j."""
    S = pres.total
    n = pres.base.nvars
    degs = list(S.weights[n:])
    cols = [{(0, e): c for e, c in y.as_dict().items()} for y in pres.ideal]
    K, _ = kernel_generators(S, (0,), cols, degs)
    return FPModule(S, degs, K)


def _reduction(P: ChainComplex, phi: RingSurjection) -> ChainComplex:
    """P/IP as a complex of free R-modules."""
    R = phi.target
    terms = {i: FPModule.free(R, M.gen_degrees) for i, M in P.terms.items()}
    diffs = {}
    for i, d in P.diffs.items():
        imgs = []
        for v in d.images:
            w = {}
            for (pos, e), c in v.items():
                for e2, c2 in phi.push_poly({e: c}).items():
                    w[(pos, e2)] = (w.get((pos, e2), 0) + c2) % R.char
            imgs.append({t: c for t, c in w.items() if c})
        diffs[i] = ModuleMap(terms[i], terms[i + 1], imgs)
    return ChainComplex(R, terms, diffs)


def _identity_on_generators(X, Y):
    z = (0,) * X.ring.nvars
    return ChainMap(X, Y, {i: ModuleMap(M, Y.term(i), [{(g, z): 1} for g in range(M.rank)])
                           for i, M in X.terms.items()})


def _map_check(f: ChainMap):
    ranks = f.source.ranks() == f.target.ranks()
    chain = ranks and f.is_chain_map()
    return {"chain_map": chain, "degreewise_iso": chain and f.is_degreewise_iso()}


def triangle_10r(P: PerfectComplex, pres: IdealizationPresentation) -> dict:
    """0 -> P⊗_S I -> P -> P/IP -> 0 exact, and
    P⊗_S I ≅ P⊗_S (S/I ⊗ I) ≅ P/IP ⊗_{S/I} I ≅ P/IP ⊗_{S/I} C."""
    S, phi = pres.total, pres.surjection
    if not P.ring.same_ring(S):
        raise AlgebraError("complex is not over the idealization")
    I_S = _ideal_over_s(pres)
    m = I_S.rank
    Ix = ChainComplex.from_module(I_S)
    PI = tensor_complex(P, Ix)
    Pbar = _reduction(P, phi)
    PbarS = restrict_scalars(Pbar, phi)
    # inclusion e_a ⊗ y_j -> y_j e_a and projection P -> P/IP
    incl, proj = {}, {}
    ymono = [next(iter(y.as_dict())) for y in pres.ideal]
    z = (0,) * S.nvars
    for i, M in P.terms.items():
        imgs = [{(a_, ymono[j]): 1} for a_ in range(M.rank) for j in range(m)]
        incl[i] = ModuleMap(PI.term(i), M, imgs)
        proj[i] = ModuleMap(M, PbarS.term(i), [{(g, z): 1} for g in range(M.rank)])
    f, g = ChainMap(PI, P, incl), ChainMap(P, PbarS, proj)
    degreewise = {}
    exact = f.is_chain_map() and g.is_chain_map()
    for i, M in P.terms.items():
        inj = incl[i].is_injective()
        surj = proj[i].is_surjective()
        comp_zero = all(PbarS.term(i).contains_rel(proj[i].apply(v)) for v in incl[i].images)
        hs = {}
        for k, c in PI.term(i).hilbert_numerator().numerator.items():
            hs[k] = hs.get(k, 0) + c
        for k, c in PbarS.term(i).hilbert_numerator().numerator.items():
            hs[k] = hs.get(k, 0) + c
        hs = {k: c for k, c in hs.items() if c}
        middle = hs == M.hilbert_numerator().numerator
        degreewise[str(i)] = {"injective": inj, "surjective": surj, "composite_zero": comp_zero,
                              "hilbert_middle": middle}
        exact = exact and inj and surj and comp_zero and middle
    # the three isomorphisms, all as identity-on-generators maps over S
    I_R = pres.module_of_ideal
    X2 = tensor_complex(P, ChainComplex.from_module(restrict_module(I_R, phi)))
    X3 = restrict_scalars(tensor_complex(Pbar, ChainComplex.from_module(I_R)), phi)
    Ct = pres.module.twist(-pres.twist)
    X4 = restrict_scalars(tensor_complex(Pbar, ChainComplex.from_module(Ct)), phi)
    isos = {"P⊗I = P⊗(S/I⊗I)": _map_check(_identity_on_generators(PI, X2)),
            "P⊗(S/I⊗I) = P/IP⊗I": _map_check(_identity_on_generators(X2, X3)),
            "P/IP⊗I = P/IP⊗C": _map_check(_identity_on_generators(X3, X4))}
    ok = exact and all(v["degreewise_iso"] for v in isos.values())
    return {"exact": exact, "degreewise": degreewise, "isomorphisms": isos, "verified": ok}


# ------------------------------------------------------------ transport

@dataclass
class TransportReport:
    over_quotient: GCReport
    over_total: GCReport

    @property
    def ok(self):
        return (not self.over_quotient.ok) or self.over_total.ok

    def as_dict(self):
        return {"over_R_with_C": self.over_quotient.as_dict(),
                "over_S_with_S": self.over_total.as_dict(), "transport_holds": self.ok,
                "note": "restriction of scalars along S -> S/I computes - ⊗_{S/I} S/I"}


def phi_transport_check(M: FPModule, pres: IdealizationPresentation, bound=None) -> TransportReport:
    """M in G_C(S/I) restricts to a member of G(S)."""
    R, S = pres.base, pres.total
    bound = default_bound(R) if bound is None else bound
    C = pres.module
    before = is_totally_C_reflexive(M, C, bound)
    resM = restrict_module(M, pres.surjection)
    S_free = FPModule.free(S, (0,))
    after = is_totally_C_reflexive(resM, S_free, bound, is_semidualizing(S_free, bound))
    return TransportReport(before, after)


# ------------------------------------------------------------ Reiten

@dataclass
class ReitenReport:
    dim_S: int
    depth_S: int
    type_S: int | None
    gorenstein: bool
    r_is_cm: bool
    c_is_canonical: bool | None
    twist: int

    @property
    def matches(self):
        return self.gorenstein == (self.r_is_cm and bool(self.c_is_canonical))

    def as_dict(self):
        return {"dim_S": self.dim_S, "depth_S": self.depth_S, "type_S": self.type_S,
                "S_gorenstein": self.gorenstein, "R_cm": self.r_is_cm,
                "C_canonical": self.c_is_canonical, "twist": self.twist,
                "equivalence_holds": self.matches}


def is_canonical(C: FPModule) -> bool | None:
    """C ≅ ω up to shift: C maximal CM and Hom(C, ω) free of rank one."""
    R = C.ring
    if not is_cm(R):
        return None
    if C.is_zero() or depth_module(C) != krull_dim(R):
        return False
    H = hom_module(C, canonical_module(R))
    return H.rank == 1 and not H.rels


def reiten_check(R: GradedRing, C: FPModule, pres=None) -> ReitenReport:
    """S = R⋉C is Gorenstein iff R is CM and C is a canonical module."""
    pres = pres or idealize(R, C)
    S = pres.total
    d, dep = krull_dim(S), depth_ring(S)
    try:
        t = ring_type(S)
    except NotCMError:
        t = None
    return ReitenReport(d, dep, t, t == 1, is_cm(R), is_canonical(C), pres.twist)
