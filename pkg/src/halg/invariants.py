"""Krull dimension, depth, type, Ext/Tor and canonical modules."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .linalg import nullspace
from .modules import (FPModule, _hom_free_cols, free_resolution, hom_free_degrees,
                      kernel_generators, matlis_dual, representation, subquotient)
from .ring import AlgebraError, GradedRing, Polynomial, leading_term_dimension


class NotCMError(AlgebraError):
    pass


class ZeroModuleError(AlgebraError):
    pass


# ----------------------------------------------------------- resolutions

def resolution(M: FPModule, length: int):
    """Cached minimal free resolution of M, extended on demand."""
    res = M._cache.get("res")
    if res is None:
        res = free_resolution(M, length)
        M._cache["res"] = res
    else:
        res.extend(length)
    return res


def residue_field(ring: GradedRing) -> FPModule:
    k = ring._cache.get("k")
    if k is None:
        k = ring._cache["k"] = FPModule.residue_field(ring)
    return k


def _hom_into(F_deg, N: FPModule) -> FPModule:
    """Hom(F, N) for free F: generators E_ab at position a*nb + b."""
    nb = N.rank
    rels = []
    for a in range(len(F_deg)):
        for B in N.rels:
            rels.append({(a * nb + pos, e): c for (pos, e), c in B.items()})
    return FPModule(N.ring, hom_free_degrees(F_deg, N.gen_degrees), rels)


def _ext_pieces(i, res, N):
    deg = res.degrees
    Fi = deg[i] if i < len(deg) else []
    Hi = _hom_into(Fi, N)
    if i + 1 < len(deg) and deg[i + 1]:
        out_cols = _hom_free_cols(Fi, N.gen_degrees, res.diff[i + 1], N.ring)
        Ho = _hom_into(deg[i + 1], N)
    else:
        out_cols, Ho = None, None
    if i >= 1 and deg[i - 1]:
        in_cols = _hom_free_cols(deg[i - 1], N.gen_degrees, res.diff[i], N.ring)
    else:
        in_cols = []
    return Hi, out_cols, Ho, in_cols


def ext_module(i: int, M: FPModule, N: FPModule, res=None) -> FPModule:
    """Ext^i_R(M, N) as H^i(Hom(F, N)) for a free resolution F of M."""
    if i < 0:
        raise ValueError("negative Ext index")
    ring = M.ring
    res = res or resolution(M, i + 1)
    res.extend(i + 1)
    if i >= len(res.degrees) or not res.degrees[i] or N.rank == 0:
        return FPModule(ring, ())
    Hi, out_cols, Ho, in_cols = _ext_pieces(i, res, N)
    if out_cols is None:
        Z = [{(t, (0,) * ring.nvars): 1} for t in range(Hi.rank)]
        Zd = list(Hi.gen_degrees)
    else:
        Z, Zd = kernel_generators(ring, Ho.gen_degrees, out_cols, Hi.gen_degrees, extra=Ho.rels)
    return subquotient(ring, Hi.gen_degrees, Z, Zd, list(Hi.rels) + list(in_cols)).pruned()


def _quotient_numerator(ring, gdeg, vecs):
    return dict(FPModule(ring, gdeg, vecs).hilbert_numerator().numerator)


def _boundary_numerator(i, res, N):
    """Numerator of HS(Hom(F_i, N) / B^i), B^i the image of Hom(F_{i-1}, N)."""
    # kept on the resolution, with N held alive so its id cannot be reused
    _, table = res.cache.setdefault(("ext-q", id(N)), (N, {}))
    if i not in table:
        Hi, _, _, in_cols = _ext_pieces(i, res, N)
        table[i] = _quotient_numerator(N.ring, Hi.gen_degrees, list(Hi.rels) + list(in_cols))
    return table[i]


def ext_hilbert_numerator(i: int, M: FPModule, N: FPModule, res=None) -> dict:
    """Hilbert series numerator of Ext^i(M, N), from Hilbert series alone.

    With H_j = Hom(F_j, N) and δ: H_i -> H_{i+1},
    HS(Ext^i) = HS(H_i/B^i) - HS(H_{i+1}) + HS(H_{i+1}/im δ), so only
    ordinary submodule bases are needed (no elimination)."""
    res = res or resolution(M, i + 1)
    res.extend(i + 1)
    deg = res.degrees
    if i >= len(deg) or not deg[i] or N.rank == 0:
        return {}
    out = dict(_boundary_numerator(i, res, N))
    if i + 1 < len(deg) and deg[i + 1]:
        base = N.hilbert_numerator().numerator
        for f in deg[i + 1]:
            for k, c in base.items():
                out[k - f] = out.get(k - f, 0) - c
        for k, c in _boundary_numerator(i + 1, res, N).items():
            out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def _ext_is_zero_direct(i, res, N):
    return not ext_hilbert_numerator(i, res.module, N, res)


def ext_is_zero(i: int, M: FPModule, N: FPModule, evidence=None) -> bool:
    """Decide Ext^i(M, N) = 0 exactly.

    When N has finite length, Ext^i(M, N) is the k-dual of Tor_i(M, N^∨), so a
    free N^∨ gives vanishing for every i >= 1 without resolving M.
    """
    if N.rank == 0 or N.is_zero():
        return True
    if i >= 1 and N.dim() <= 0:
        Nd = N._cache.get("matlis")
        if Nd is None:
            Nd = N._cache["matlis"] = matlis_dual(N)
        if not Nd.rels:
            # N^∨ free, so Tor_i(M, N^∨) = 0
            if evidence is not None:
                evidence.setdefault("route", {})[i] = "tor-with-free-matlis-dual"
            return True
    if evidence is not None:
        evidence.setdefault("route", {})[i] = "hom-of-resolution"
    return _ext_is_zero_direct(i, resolution(M, i + 1), N)


def tor_module(i: int, M: FPModule, N: FPModule) -> FPModule:
    """Tor_i(M, N) = H_i(F ⊗ N) for a free resolution F of M."""
    ring = M.ring
    res = resolution(M, i + 1)
    deg = res.degrees
    if i >= len(deg) or not deg[i] or N.rank == 0:
        return FPModule(ring, ())
    nb = N.rank

    def tensor_term(F_deg):
        rels = []
        for a in range(len(F_deg)):
            for B in N.rels:
                rels.append({(a * nb + pos, e): c for (pos, e), c in B.items()})
        return FPModule(ring, [f + g for f in F_deg for g in N.gen_degrees], rels)

    def cols(n):
        out = []
        for a, col in enumerate(res.diff[n]):
            for b in range(nb):
                out.append({(pos * nb + b, e): c for (pos, e), c in col.items()})
        return out

    Ti = tensor_term(deg[i])
    if i >= 1:
        To = tensor_term(deg[i - 1])
        Z, Zd = kernel_generators(ring, To.gen_degrees, cols(i), Ti.gen_degrees, extra=To.rels)
    else:
        Z = [{(t, (0,) * ring.nvars): 1} for t in range(Ti.rank)]
        Zd = list(Ti.gen_degrees)
    incoming = cols(i + 1) if i + 1 < len(deg) and deg[i + 1] else []
    return subquotient(ring, Ti.gen_degrees, Z, Zd, list(Ti.rels) + incoming).pruned()


# ------------------------------------------------------------ dimension

def krull_dim(ring: GradedRing) -> int:
    """Pole order of the Hilbert series, cross-checked on the lead-term cone."""
    d1 = ring.krull_dim()
    d2 = leading_term_dimension(ring)
    if d1 != d2:
        raise AlgebraError("dimension routes disagree: %d vs %d" % (d1, d2))
    return d1


def module_dim(M: FPModule) -> int:
    return M.dim()


def depth_module(M: FPModule) -> int:
    """min{i : Ext^i(k, M) != 0}."""
    if M.is_zero():
        raise ZeroModuleError("depth of the zero module")
    k = residue_field(M.ring)
    top = max(M.dim(), 0)
    for i in range(top + 1):
        if not _ext_is_zero_direct(i, resolution(k, i + 1), M):
            return i
    raise AlgebraError("Ext^i(k, M) vanished up to dim M; inconsistent data")


def depth_ring(ring: GradedRing) -> int:
    return depth_module(FPModule.free(ring, (0,)))


def is_cm(ring: GradedRing) -> bool:
    return depth_ring(ring) == krull_dim(ring)


def ring_type(ring: GradedRing) -> int:
    """Dimension of Ext^d(k, R), d = dim R = depth R."""
    d = krull_dim(ring)
    if depth_ring(ring) != d:
        raise NotCMError("type is only defined here for Cohen-Macaulay rings")
    E = ext_module(d, residue_field(ring), FPModule.free(ring, (0,)))
    return E.total_length()


def socle_dimension(ring: GradedRing) -> int:
    """dim_k of (0 :_R m) for an Artinian ring, by linear algebra."""
    rep = representation(FPModule.free(ring, (0,)))
    if rep.dim == 0:
        return 0
    A = np.vstack(rep.actions) if rep.actions else np.zeros((0, rep.dim), dtype=np.int64)
    return len(nullspace(A, ring.char))


# ------------------------------------------------------ systems of parameters

def _candidates(ring: GradedRing, d: int):
    monos = ring.k_basis(d)
    if not monos:
        return
    for m in monos:
        yield {m: 1}
    for size in range(2, min(len(monos), 3) + 1):
        for coeffs in itertools.product((1, 2, 3), repeat=size):
            if coeffs[0] != 1:
                continue
            for combo in itertools.combinations(monos, size):
                yield {m: c for m, c in zip(combo, coeffs)}


def find_sop(ring: GradedRing, max_degree=None):
    """Homogeneous system of parameters by deterministic greedy search."""
    d = krull_dim(ring)
    sop = []
    current = ring
    max_degree = max_degree or 4 * max(ring.weights, default=1)
    while len(sop) < d:
        target = d - len(sop) - 1
        found = None
        for deg in range(1, max_degree + 1):
            for f in _candidates(ring, deg):
                f = ring.nf_dict(f)
                if not f:
                    continue
                Q = current.quotient([f])
                if Q.krull_dim() == target:
                    found, current = f, Q
                    break
            if found:
                break
        if found is None:
            raise AlgebraError("no system of parameters found up to degree %d" % max_degree)
        sop.append(Polynomial(ring, found))
    return sop


def is_sop(ring: GradedRing, elems) -> bool:
    elems = [ring.poly(e).as_dict() for e in elems]
    return len(elems) == krull_dim(ring) and ring.quotient(elems).krull_dim() <= 0


# -------------------------------------------------------- canonical module

def canonical_module(ring: GradedRing) -> FPModule:
    """ω = Ext^c_P(R, P(-sum w)), c = codim, presented over R."""
    if not is_cm(ring):
        raise NotCMError("canonical module requested for a non-CM ring")
    P = ring.ambient()
    c = ring.nvars - krull_dim(ring)
    M = FPModule.cyclic(P, [Polynomial(P, g) for g in ring.gb])
    E = ext_module(c, M, FPModule.free(P, (0,)))
    shift = sum(ring.weights)
    omega = FPModule(ring, [g + shift for g in E.gen_degrees], E.rels)
    return omega.pruned()


# ---------------------------------------------------------------- profile

@dataclass
class RingProfile:
    dim: int
    depth: int
    type: int | None
    is_cm: bool
    is_gorenstein: bool
    sop: list = field(default_factory=list)

    def as_dict(self):
        return {"dim": self.dim, "depth": self.depth, "type": self.type,
                "cm": self.is_cm, "gorenstein": self.is_gorenstein,
                "sop": [str(f) for f in self.sop]}


def profile(ring: GradedRing) -> RingProfile:
    d = krull_dim(ring)
    dep = depth_ring(ring)
    cm = dep == d
    t = ring_type(ring) if cm else None
    sop = find_sop(ring) if cm else []
    return RingProfile(d, dep, t, cm, bool(cm and t == 1), sop)
