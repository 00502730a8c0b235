"""Semidualizing modules, C-duals, total C-reflexivity and G_C-dimension.

Ext vanishing "for all i > 0" is checked for 1 <= i <= bound; refutations are
exact, verifications are stamped with the bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .invariants import (depth_module, depth_ring, ext_is_zero, ext_module, krull_dim,
                         resolution)
from .modules import (FPModule, ModuleMap, hom_free_degrees, hom_module, lift_in_degree,
                      natural_double_dual_map, vec_degree, vec_from_components)
from .ring import AlgebraError

VERIFIED = "verified-to-bound"
REFUTED = "refuted"
TRIVIAL = "trivially-true"


class CNotVerifiedError(AlgebraError):
    pass


def default_bound(ring) -> int:
    return 2 * krull_dim(ring) + 4


@dataclass
class SemidualizingReport:
    candidate: FPModule
    end_map_iso: bool
    ext_vanishing_checked_to: int
    verdict: str
    refuted_index: int | None = None
    stage: str | None = None
    witness: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.verdict in (VERIFIED, TRIVIAL)

    def as_dict(self):
        return {"end_map_iso": self.end_map_iso, "bound": self.ext_vanishing_checked_to,
                "verdict": self.verdict, "refuted_index": self.refuted_index,
                "stage": self.stage, "witness": self.witness}


@dataclass
class GCReport:
    module: FPModule
    C: FPModule
    double_dual_iso: bool
    ext_vanishing_checked_to: int
    verdict: str
    refuted_index: int | None = None
    stage: str | None = None
    witness: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.verdict in (VERIFIED, TRIVIAL)

    def as_dict(self):
        return {"double_dual_iso": self.double_dual_iso, "bound": self.ext_vanishing_checked_to,
                "verdict": self.verdict, "refuted_index": self.refuted_index,
                "stage": self.stage, "witness": self.witness}


def _is_free_rank_one(C: FPModule) -> bool:
    P = C.pruned()
    return P.rank == 1 and not P.rels


def _ext_witness(i, M, N):
    E = ext_module(i, M, N)
    return {"index": i, "ext_generators": E.rank, "ext_gen_degrees": list(E.gen_degrees)}


def end_map(C: FPModule):
    """The homothety map R -> End_R(C) and its isomorphism verdict."""
    ring = C.ring
    E = hom_module(C, C)
    b = C.rank
    H_deg = hom_free_degrees(C.gen_degrees, C.gen_degrees)
    ident = {(i * b + i, (0,) * ring.nvars): 1 for i in range(b)}
    extra = [{(i * b + j, e): c for (j, e), c in B.items()}
             for i in range(b) for B in C.rels]
    coeffs = lift_in_degree(ring, H_deg, ident, 0, E.hom_data.maps, E.gen_degrees,
                            extra, [vec_degree(w, H_deg, ring.weights) for w in extra])
    if coeffs is None:
        return None, False
    f = ModuleMap(FPModule.free(ring, (0,)), E, [vec_from_components(coeffs)])
    return f, f.is_iso()


def is_semidualizing(C: FPModule, bound: int | None = None) -> SemidualizingReport:
    """R -> End(C) iso (decided exactly) and Ext^i(C, C) = 0 for 1 <= i <= bound."""
    bound = default_bound(C.ring) if bound is None else bound
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if _is_free_rank_one(C):
        return SemidualizingReport(C, True, bound, TRIVIAL)
    if C.is_zero():
        return SemidualizingReport(C, False, bound, REFUTED, 0, "end", {"reason": "C = 0"})
    _, iso = end_map(C)
    if not iso:
        E = hom_module(C, C)
        return SemidualizingReport(C, False, bound, REFUTED, 0, "end",
                                   {"end_generators": E.rank, "end_gen_degrees": list(E.gen_degrees)})
    routes: dict = {}
    for i in range(1, bound + 1):
        if not ext_is_zero(i, C, C, routes):
            return SemidualizingReport(C, True, bound, REFUTED, i, "ext", _ext_witness(i, C, C))
    return SemidualizingReport(C, True, bound, VERIFIED, witness=routes)


def c_dual(M: FPModule, C: FPModule) -> FPModule:
    """M† = Hom_R(M, C)."""
    return hom_module(M, C)


def _require_c(C, bound, c_report):
    rep = c_report or is_semidualizing(C, bound)
    if not rep.ok:
        raise CNotVerifiedError("C did not pass the semidualizing check")
    return rep


def is_totally_C_reflexive(M: FPModule, C: FPModule, bound: int | None = None,
                           c_report: SemidualizingReport | None = None) -> GCReport:
    bound = default_bound(M.ring) if bound is None else bound
    _require_c(C, bound, c_report)
    if M.is_zero():
        return GCReport(M, C, True, bound, TRIVIAL, witness={"reason": "zero module"})
    Mp = M.pruned()
    if not Mp.rels and _is_free_rank_one(C):
        return GCReport(M, C, True, bound, TRIVIAL, witness={"reason": "free module, C = R"})
    _, iso, ev = natural_double_dual_map(Mp, C)
    if not iso:
        return GCReport(M, C, False, bound, REFUTED, 0, "double-dual", ev)
    Md = c_dual(Mp, C)
    routes: dict = {}
    for i in range(1, bound + 1):
        for which, X in (("M", Mp), ("M_dagger", Md)):
            if not ext_is_zero(i, X, C, routes):
                w = _ext_witness(i, X, C)
                w["module"] = which
                return GCReport(M, C, True, bound, REFUTED, i, "ext", w)
    return GCReport(M, C, True, bound, VERIFIED, witness=routes)


def syzygy_module(M: FPModule, n: int) -> FPModule:
    """Ω^n M from the minimal resolution (Ω^0 = M pruned)."""
    res = resolution(M, n + 1)
    if n >= len(res.degrees) or not res.degrees[n]:
        return FPModule(M.ring, ())
    rels = res.diff[n + 1] if n + 1 < len(res.diff) else []
    return FPModule(M.ring, res.degrees[n], rels)


@dataclass
class GCDimResult:
    value: int | None           # None means not-determined
    chain: list                 # (n, verdict) for each syzygy tested
    depth_formula: int | None   # depth R - depth M
    agrees: bool | None
    bound: int

    @property
    def determined(self):
        return self.value is not None

    def as_dict(self):
        return {"gc_dim": self.value if self.value is not None else "not-determined",
                "chain": self.chain, "depth_formula": self.depth_formula,
                "agrees_with_depth_formula": self.agrees, "bound": self.bound}


def gc_dimension(M: FPModule, C: FPModule, bound: int | None = None,
                 c_report: SemidualizingReport | None = None) -> GCDimResult:
    """Smallest n with Ω^n M totally C-reflexive (to bound), n <= dim R + 2."""
    ring = M.ring
    bound = default_bound(ring) if bound is None else bound
    rep = _require_c(C, bound, c_report)
    window = krull_dim(ring) + 2
    chain = []
    value = None
    for n in range(window + 1):
        r = is_totally_C_reflexive(syzygy_module(M, n), C, bound, rep)
        chain.append({"n": n, "verdict": r.verdict, "refuted_index": r.refuted_index,
                      "stage": r.stage})
        if r.ok:
            value = n
            break
    formula = None
    agrees = None
    if not M.is_zero():
        formula = depth_ring(ring) - depth_module(M)
        if value is not None:
            agrees = formula == value
    return GCDimResult(value, chain, formula, agrees, bound)
