"""Certified level bounds for complexes with respect to G_C(R).

Upper bounds come from resolutions of the cohomology modules by members of
G_C(R); lower bounds for Koszul complexes on a system of parameters come
from the G_C-dimension of R/(sop).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import (ChainComplex, ChainMap, KoszulComplex, PerfectComplex, cone,
                        hom_complex, koszul, tensor_complex)
from .idealization import reiten_check
from .invariants import (canonical_module, find_sop, is_cm, is_sop, krull_dim,
                         resolution)
from .modules import FPModule, ModuleMap, identity_map
from .ring import AlgebraError, GradedRing
from .semidualizing import (REFUTED, CNotVerifiedError, GCDimResult, SemidualizingReport,
                            default_bound, gc_dimension, is_semidualizing,
                            is_totally_C_reflexive, syzygy_module)


class NotDeterminedError(AlgebraError):
    pass


class NotSOPError(AlgebraError):
    pass


def module_key(M: FPModule):
    rels = tuple(sorted(tuple(sorted(r.items())) for r in M.rels))
    return (M.gen_degrees, rels)


@dataclass
class SubcategoryDescriptor:
    """G_C(R) for a semidualizing C verified to ``bound``."""
    C: FPModule
    report: SemidualizingReport
    bound: int
    label: str = "G_C"
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.report.ok:
            raise CNotVerifiedError("C did not pass the semidualizing check")

    @property
    def ring(self):
        return self.C.ring

    @classmethod
    def for_module(cls, C: FPModule, bound=None, label="G_C"):
        bound = default_bound(C.ring) if bound is None else bound
        return cls(C, is_semidualizing(C, bound), bound, label)

    @classmethod
    def gorenstein_projective(cls, ring: GradedRing, bound=None):
        """G(R) = G_R(R)."""
        return cls.for_module(FPModule.free(ring, (0,)), bound, "G(R)")

    @classmethod
    def cohen_macaulay(cls, ring: GradedRing, bound=None):
        """CM(R) = G_ω(R) over a CM ring."""
        return cls.for_module(canonical_module(ring), bound, "CM(R)")

    def member(self, M: FPModule):
        key = module_key(M)
        if key not in self._memo:
            self._memo[key] = is_totally_C_reflexive(M, self.C, self.bound, self.report)
        return self._memo[key]

    def as_dict(self):
        return {"kind": self.label, "C_gen_degrees": list(self.C.gen_degrees),
                "C_relations": len(self.C.rels), "C_verdict": self.report.verdict,
                "bound": self.bound}


# ------------------------------------------------------------ xdim

@dataclass
class XDimCertificate:
    """0 -> X_n -> F_{n-1} -> ... -> F_0 -> M -> 0 with X_n in the subcategory."""
    module: FPModule
    value: int
    sequence: ChainComplex
    tail_verdict: str
    chain: list

    def recheck(self, subcat: SubcategoryDescriptor) -> bool:
        if not self.sequence.check_d_squared() or not self.sequence.is_exact():
            return False
        tail = self.sequence.term(-self.value)
        fresh = is_totally_C_reflexive(tail, subcat.C, subcat.bound, subcat.report)
        frees = all(not self.sequence.term(-i).rels for i in range(self.value))
        return fresh.ok and frees

    def as_dict(self):
        return {"xdim": self.value, "tail_verdict": self.tail_verdict, "chain": self.chain,
                "ranks": {str(i): M.rank for i, M in self.sequence.terms.items()}}


def _resolution_sequence(M: FPModule, n: int) -> ChainComplex:
    """The augmented truncated resolution ending in the n-th syzygy, M in degree 1."""
    res = resolution(M, n + 1)
    N = res.module
    ring = N.ring
    z = (0,) * ring.nvars
    terms = {1: N}
    diffs = {}
    if n == 0:
        # 0 -> M -> M -> 0 through the identity
        return ChainComplex(ring, {0: N, 1: N}, {0: identity_map(N)})
    for i in range(n):
        terms[-i] = FPModule.free(ring, res.degrees[i])
    tail = syzygy_module(M, n)
    terms[-n] = tail
    diffs[0] = ModuleMap(terms[0], N, [{(g, z): 1} for g in range(N.rank)])
    for i in range(1, n + 1):
        diffs[-i] = ModuleMap(terms[-i], terms[-i + 1], res.diff[i])
    return ChainComplex(ring, terms, diffs)


def xdim_upper(M: FPModule, subcat: SubcategoryDescriptor, window=None) -> XDimCertificate:
    """Syzygies of M until the tail is a verified member."""
    ring = M.ring
    window = krull_dim(ring) + 2 if window is None else window
    chain = []
    for n in range(window + 1):
        tail = syzygy_module(M, n)
        rep = subcat.member(tail)
        chain.append({"n": n, "verdict": rep.verdict, "refuted_index": rep.refuted_index,
                      "stage": rep.stage})
        if rep.ok:
            return XDimCertificate(M, n, _resolution_sequence(M, n), rep.verdict, chain)
    raise NotDeterminedError("no syzygy up to %d verified in %s" % (window, subcat.label))


# ------------------------------------------------------------ levels

@dataclass
class UpperBound:
    value: int
    reason: str
    pieces: dict            # cohomology index -> XDimCertificate
    ceiling: int | None = None

    def as_dict(self):
        return {"value": self.value, "reason": self.reason, "ceiling": self.ceiling,
                "cohomology": {str(i): c.as_dict() for i, c in sorted(self.pieces.items())}}


def _cm_ceiling(subcat):
    ring = subcat.ring
    if subcat.label == "CM(R)" and is_cm(ring):
        return max(2, krull_dim(ring) + 1)
    return None


def level_upper(X: ChainComplex, subcat: SubcategoryDescriptor) -> UpperBound:
    """level(X) <= sup{2, xdim(⊕ H^i X) + 1}; 1 for a single shifted member."""
    supp = X.cohomology_support()
    ceiling = _cm_ceiling(subcat)
    if not supp:
        return UpperBound(0, "exact", {}, ceiling)
    pieces = {i: xdim_upper(X.homology(i), subcat) for i in supp}
    if len(supp) == 1 and pieces[supp[0]].value == 0:
        value, reason = 1, "single cohomology in the subcategory"
    else:
        value = max(2, max(c.value for c in pieces.values()) + 1)
        reason = "resolution dimension of cohomology"
    if ceiling is not None and value > ceiling:
        raise AlgebraError("upper bound %d exceeds the CM ceiling %d" % (value, ceiling))
    return UpperBound(value, reason, pieces, ceiling)


@dataclass
class LowerBound:
    value: int
    reason: str
    gc: GCDimResult | None = None
    sop: list = field(default_factory=list)

    def as_dict(self):
        out = {"value": self.value, "reason": self.reason, "sop": [str(f) for f in self.sop]}
        if self.gc is not None:
            out["gc_dim"] = self.gc.as_dict()
        return out


def level_lower_koszul(sop, subcat: SubcategoryDescriptor) -> LowerBound:
    """level K(sop) = level R/(sop) >= G_C-dim R/(sop) + 1."""
    ring = subcat.ring
    sop = [ring.poly(f) for f in sop]
    if not is_sop(ring, sop):
        raise NotSOPError("elements do not form a system of parameters")
    quotient = FPModule.cyclic(ring, sop) if sop else FPModule.free(ring, (0,))
    gc = gc_dimension(quotient, subcat.C, subcat.bound, subcat.report)
    if not gc.determined:
        raise NotDeterminedError("G_C-dimension of R/(sop) not determined")
    return LowerBound(gc.value + 1, "G_C-dimension of R/(sop) plus one", gc, sop)


@dataclass
class LevelCertificate:
    complex: ChainComplex
    subcat: SubcategoryDescriptor
    lower: LowerBound
    upper: UpperBound

    @property
    def exact(self):
        return self.lower.value == self.upper.value

    def recheck(self) -> bool:
        if not 0 <= self.lower.value <= self.upper.value:
            return False
        if not all(c.recheck(self.subcat) for c in self.upper.pieces.values()):
            return False
        gc = self.lower.gc
        if gc is None:
            return True
        sub = self.subcat
        Q = _koszul_quotient(self.lower.sop, sub)

        def verdict(n):
            return is_totally_C_reflexive(syzygy_module(Q, n), sub.C, sub.bound, sub.report)

        return verdict(gc.value).ok and (gc.value == 0 or verdict(gc.value - 1).verdict == REFUTED)

    def as_dict(self):
        return {"lower": self.lower.as_dict(), "upper": self.upper.as_dict(),
                "exact": self.exact, "subcategory": self.subcat.as_dict()}


def _koszul_quotient(sop, subcat):
    ring = subcat.ring
    return FPModule.cyclic(ring, sop) if sop else FPModule.free(ring, (0,))


def level_certificate(X: ChainComplex, subcat: SubcategoryDescriptor) -> LevelCertificate:
    """Both bounds; the Koszul lower bound applies when X = K(sop)."""
    upper = level_upper(X, subcat)
    if isinstance(X, KoszulComplex) and is_sop(subcat.ring, X.elements):
        lower = level_lower_koszul(X.elements, subcat)
    elif upper.value == 0:
        lower = LowerBound(0, "exact complex")
    else:
        lower = LowerBound(1, "nonzero cohomology")
    return LevelCertificate(X, subcat, lower, upper)


def combine_sum(a: UpperBound, b: UpperBound) -> UpperBound:
    """Bound for X ⊕ Y from bounds of the summands: ⟨X⟩_n is closed under sums."""
    pieces = dict(a.pieces)
    for i, c in b.pieces.items():
        if i not in pieces or c.value > pieces[i].value:
            pieces[i] = c
    return UpperBound(max(a.value, b.value), "max over summands", pieces, a.ceiling)


# -------------------------------------------------- tensor-Hom comparison

def tensor_hom_iso_check(P: PerfectComplex, C: FPModule) -> dict:
    """The natural map P ⊗ C -> Hom(P*, C) is an isomorphism of complexes.

    In degree m it sends e_a ⊗ c_b to (-1)^m times the map e_a^* -> c_b."""
    ring = P.ring
    Cx = ChainComplex.from_module(C)
    T = tensor_complex(P, Cx)
    H = hom_complex(P.dual(), Cx)
    p = ring.char
    z = (0,) * ring.nvars
    maps = {}
    for m, Tm in T.terms.items():
        sign = p - 1 if m % 2 else 1
        Hm = H.term(m)
        maps[m] = ModuleMap(Tm, Hm, [{(g, z): sign} for g in range(Tm.rank)])
    theta = ChainMap(T, H, maps)
    same_ranks = T.ranks() == H.ranks()
    chain = same_ranks and theta.is_chain_map()
    iso = chain and theta.is_degreewise_iso()
    return {"ranks": {str(i): r for i, r in T.ranks().items()}, "same_ranks": same_ranks,
            "chain_map": chain, "degreewise_iso": iso, "verified": bool(iso)}


# ------------------------------------------------------- main inequality

def default_corpus(ring: GradedRing, sop=None):
    """R, Koszul complexes on subsets of the s.o.p., and cones of multiplication."""
    sop = find_sop(ring) if sop is None else [ring.poly(f) for f in sop]
    R = FPModule.free(ring, (0,))
    corpus = [("R", PerfectComplex(ring, {0: R}))]
    n = len(sop)
    for mask in range(1, 1 << n):
        elems = [sop[i] for i in range(n) if mask >> i & 1]
        corpus.append(("K(%s)" % ", ".join(str(f) for f in elems), koszul(elems, ring)))
    for i in range(ring.nvars):
        f = ring.var(i)
        if not f.as_dict():
            continue
        src = PerfectComplex(ring, {0: FPModule.free(ring, (f.degree(),))})
        tgt = PerfectComplex(ring, {0: R})
        mult = ChainMap(src, tgt, {0: ModuleMap(src.term(0), R,
                                                [{(0, e): c for e, c in f.as_dict().items()}])})
        K = cone(mult)
        corpus.append(("cone(%s)" % f, PerfectComplex(ring, K.terms, K.diffs)))
    return corpus


@dataclass
class Undetermined:
    reason: str

    def as_dict(self):
        return {"upper": "not-determined", "reason": self.reason}


@dataclass
class MainReport:
    ring: GradedRing
    dim: int
    lam: int | None
    upper_max: int | None
    ceiling: int
    holds: bool | None
    expected_bounded: bool
    certificates: dict
    reiten: dict | None
    message: str

    def as_dict(self):
        return {"dim": self.dim, "lambda": self.lam, "u": self.upper_max,
                "ceiling": self.ceiling, "inequality_holds": self.holds,
                "expected_bounded": self.expected_bounded, "message": self.message,
                "reiten": self.reiten,
                "certificates": {k: v.as_dict() for k, v in self.certificates.items()}}


def verify_main_inequality(ring: GradedRing, C: FPModule, corpus=None, bound=None) -> MainReport:
    """Bounds on the corpus levels and the conclusion dim R <= λ - 1."""
    d = krull_dim(ring)
    bound = default_bound(ring) if bound is None else bound
    subcat = SubcategoryDescriptor.for_module(C, bound)
    reiten = reiten_check(ring, C)
    sop = find_sop(ring) if is_cm(ring) else []
    corpus = default_corpus(ring, sop) if corpus is None else corpus
    certs = {}
    for name, X in corpus:
        try:
            certs[name] = level_certificate(X, subcat)
        except NotDeterminedError as exc:
            if reiten.gorenstein:
                raise
            certs[name] = Undetermined(str(exc))
    known = [c.upper.value for c in certs.values() if isinstance(c, LevelCertificate)]
    u = max(known) if known else None
    ceiling = max(2, d + 1)
    if not reiten.gorenstein:
        return MainReport(ring, d, None, u, ceiling, None, False, certs, reiten.as_dict(),
                          "S = R⋉C is not Gorenstein; unbounded levels expected, "
                          "no inequality asserted")
    lam = level_lower_koszul(sop, subcat).value
    holds = lam <= max(u, lam) <= ceiling and d <= lam - 1
    return MainReport(ring, d, lam, u, ceiling, holds, True, certs, reiten.as_dict(),
                      "dim R = %d <= %d" % (d, lam - 1))
