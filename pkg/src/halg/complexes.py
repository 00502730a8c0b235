"""Bounded cochain complexes of graded modules.

Cohomological indexing: ``d^i : X^i -> X^{i+1}``.  Shift: ``X[n]^i = X^{i+n}``
with differential ``(-1)^n d``.  Tensor total complexes use
``d ⊗ 1 + (-1)^i 1 ⊗ d``; Hom complexes use ``d_Y φ - (-1)^n φ d_X``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .modules import (FPModule, ModuleMap, RingMismatchError, identity_map, subquotient,
                      kernel_generators, tensor_module, vec_add, vec_scale)
from .ring import AlgebraError, GradedRing, pdegrees, pmul


class NotAChainMapError(AlgebraError):
    pass


class NotFreeError(AlgebraError):
    pass


def _zero(ring):
    return (0,) * ring.nvars


class ChainComplex:
    """terms[i] : FPModule, diffs[i] : ModuleMap X^i -> X^{i+1}."""

    def __init__(self, ring: GradedRing, terms: dict, diffs: dict | None = None, name=None):
        self.ring = ring
        self.terms = {i: M for i, M in sorted(terms.items()) if M.rank > 0}
        self.name = name
        diffs = diffs or {}
        self.diffs = {}
        for i in self.terms:
            if i + 1 in self.terms:
                if i in diffs:
                    d = diffs[i]
                    self.diffs[i] = ModuleMap(self.terms[i], self.terms[i + 1], d.images, d.degree)
                else:
                    self.diffs[i] = ModuleMap(self.terms[i], self.terms[i + 1],
                                              [{} for _ in range(self.terms[i].rank)])

    # support
    @property
    def inf(self):
        return min(self.terms) if self.terms else None

    @property
    def sup_index(self):
        return max(self.terms) if self.terms else None

    @property
    def free_flag(self):
        return all(not M.rels for M in self.terms.values())

    def term(self, i) -> FPModule:
        return self.terms.get(i) or FPModule(self.ring, ())

    def diff(self, i) -> ModuleMap:
        if i in self.diffs:
            return self.diffs[i]
        return ModuleMap(self.term(i), self.term(i + 1), [{} for _ in range(self.term(i).rank)])

    def ranks(self):
        return {i: M.rank for i, M in self.terms.items()}

    def check_d_squared(self) -> bool:
        for i in self.diffs:
            if i + 1 in self.diffs:
                comp = self.diffs[i + 1].compose(self.diffs[i])
                tgt = self.term(i + 2)
                if not all(tgt.contains_rel(v) for v in comp.images):
                    return False
        return True

    def homology(self, i) -> FPModule:
        """H^i = ker d^i / im d^{i-1}."""
        X = self.term(i)
        if X.rank == 0:
            return FPModule(self.ring, ())
        d = self.diff(i)
        K, Kd = kernel_generators(self.ring, self.term(i + 1).gen_degrees or (0,),
                                  d.images if self.term(i + 1).rank else [{} for _ in d.images],
                                  X.gen_degrees, extra=self.term(i + 1).rels)
        rels = list(X.rels) + list(self.diff(i - 1).images)
        H = subquotient(self.ring, X.gen_degrees, K, Kd, rels)
        return H

    def cohomology_support(self):
        """Indices with nonzero homology."""
        return [i for i in sorted(self.terms) if not self.homology(i).is_zero()]

    def sup(self):
        """sup{i : H^i != 0}, or None for an exact complex."""
        supp = self.cohomology_support()
        return max(supp) if supp else None

    def is_exact(self) -> bool:
        return not self.cohomology_support()

    def shift(self, n):
        sign = -1 if n % 2 else 1
        p = self.ring.char
        terms = {i - n: M for i, M in self.terms.items()}
        diffs = {i - n: ModuleMap(d.source, d.target, [vec_scale(v, sign, p) for v in d.images], d.degree)
                 for i, d in self.diffs.items()}
        return type(self)._plain(self.ring, terms, diffs)

    @classmethod
    def _plain(cls, ring, terms, diffs):
        return ChainComplex(ring, terms, diffs)

    def twist(self, a):
        """Internal degree twist X(a) of every term."""
        terms = {i: M.twist(a) for i, M in self.terms.items()}
        return ChainComplex(self.ring, terms, {i: d for i, d in self.diffs.items()})

    def direct_sum(self, other):
        if not self.ring.same_ring(other.ring):
            raise RingMismatchError("complexes over different rings")
        idx = sorted(set(self.terms) | set(other.terms))
        terms = {i: self.term(i).direct_sum(other.term(i)) for i in idx}
        diffs = {}
        for i in idx:
            if i + 1 not in terms:
                continue
            off = self.term(i + 1).rank
            imgs = list(self.diff(i).images) + [
                {(pos + off, e): a for (pos, e), a in v.items()} for v in other.diff(i).images]
            diffs[i] = ModuleMap(terms[i], terms[i + 1], imgs)
        return ChainComplex(self.ring, terms, diffs)

    def __repr__(self):
        return "ChainComplex(%s)" % ", ".join("%d:%d" % (i, M.rank) for i, M in self.terms.items())

    # constructors
    @classmethod
    def from_module(cls, M: FPModule, degree=0):
        return cls(M.ring, {degree: M})

    @classmethod
    def free(cls, ring, degrees: dict, matrices: dict):
        """Complex of graded free modules; ``matrices[i]`` lists the images of
        the basis of X^i in X^{i+1}."""
        terms = {i: FPModule.free(ring, d) for i, d in degrees.items()}
        diffs = {}
        for i, cols in matrices.items():
            diffs[i] = ModuleMap(terms[i], terms[i + 1], cols)
        return cls(ring, terms, diffs)


class PerfectComplex(ChainComplex):
    """Bounded complex of finitely generated graded free modules."""

    def __init__(self, ring, terms, diffs=None, name=None):
        super().__init__(ring, terms, diffs, name)
        if not self.free_flag:
            raise NotFreeError("perfect complexes need free terms")

    @classmethod
    def _plain(cls, ring, terms, diffs):
        return PerfectComplex(ring, terms, diffs)

    def dual(self):
        """P* = Hom(P, R)."""
        return hom_complex(self, ChainComplex.from_module(FPModule.free(self.ring, (0,))))


class KoszulComplex(PerfectComplex):
    def __init__(self, ring, elements, terms, diffs, subsets):
        super().__init__(ring, terms, diffs)
        self.elements = elements
        self.subsets = subsets  # subsets[-i] = ordered list of index tuples


def koszul(elements, ring: GradedRing) -> KoszulComplex:
    """K(x; R): K^{-i} = exterior power i, basis e_S for |S| = i."""
    p = ring.char
    elems = []
    for x in elements:
        f = ring.poly(x).as_dict()
        if len(pdegrees(f, ring.weights)) > 1:
            raise AlgebraError("Koszul element is not homogeneous")
        elems.append(ring.nf_dict(f))
    n = len(elems)
    degs = [ring.poly(x).degree() or 0 for x in elements]
    subsets = {}
    terms = {}
    for i in range(n + 1):
        S = list(combinations(range(n), i))
        subsets[i] = S
        terms[-i] = FPModule.free(ring, [sum(degs[s] for s in T) for T in S])
    diffs = {}
    for i in range(1, n + 1):
        index = {T: k for k, T in enumerate(subsets[i - 1])}
        cols = []
        for T in subsets[i]:
            v = {}
            for t, s in enumerate(T):
                rest = T[:t] + T[t + 1:]
                sign = 1 if t % 2 == 0 else -1
                for e, a in elems[s].items():
                    key = (index[rest], e)
                    val = (v.get(key, 0) + sign * a) % p
                    if val:
                        v[key] = val
                    else:
                        v.pop(key, None)
            cols.append(v)
        diffs[-i] = ModuleMap(terms[-i], terms[-i + 1], cols)
    return KoszulComplex(ring, [ring.poly(x) for x in elements], terms, diffs, subsets)


# ------------------------------------------------------------- chain maps

@dataclass
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    maps: dict  # i -> ModuleMap X^i -> Y^i
    certificate: dict = field(default_factory=dict)

    def component(self, i) -> ModuleMap:
        if i in self.maps:
            return self.maps[i]
        X = self.source.term(i)
        return ModuleMap(X, self.target.term(i), [{} for _ in range(X.rank)])

    def is_chain_map(self) -> bool:
        ring = self.source.ring
        for i in sorted(set(self.source.terms) | set(self.target.terms)):
            X = self.source.term(i)
            if X.rank and not self.component(i).is_well_defined():
                self.certificate["chain_map"] = False
                return False
            for g in range(X.rank):
                z = {(g, _zero(ring)): 1}
                a = self.target.diff(i).apply(self.component(i).apply(z))
                b = self.component(i + 1).apply(self.source.diff(i).apply(z))
                if not self.target.term(i + 1).contains_rel(vec_add(a, b, ring.char, -1)):
                    self.certificate["chain_map"] = False
                    return False
        self.certificate["chain_map"] = True
        return True

    def is_degreewise_iso(self) -> bool:
        idx = set(self.source.terms) | set(self.target.terms)
        return all(self.component(i).is_iso() if self.source.term(i).rank
                   else self.target.term(i).is_zero() for i in idx)


def identity_chain_map(X: ChainComplex) -> ChainMap:
    return ChainMap(X, X, {i: identity_map(M) for i, M in X.terms.items()})


def cone(f: ChainMap, check=True) -> ChainComplex:
    """Cone^i = X^{i+1} ⊕ Y^i with d(x, y) = (-d x, f x + d y)."""
    if check and not f.is_chain_map():
        raise NotAChainMapError("not a chain map")
    X, Y = f.source, f.target
    ring = X.ring
    p = ring.char
    idx = sorted({i - 1 for i in X.terms} | set(Y.terms))
    terms = {i: X.term(i + 1).direct_sum(Y.term(i)) for i in idx}
    diffs = {}
    for i in idx:
        if i + 1 not in terms:
            continue
        off = X.term(i + 2).rank
        imgs = []
        dx, fx = X.diff(i + 1), f.component(i + 1)
        for g in range(X.term(i + 1).rank):
            v = vec_scale(dx.images[g], -1, p)
            v.update({(pos + off, e): a for (pos, e), a in fx.images[g].items()})
            imgs.append(v)
        for v in Y.diff(i).images:
            imgs.append({(pos + off, e): a for (pos, e), a in v.items()})
        diffs[i] = ModuleMap(terms[i], terms[i + 1], imgs)
    return ChainComplex(ring, terms, diffs)


def is_quasi_iso(f: ChainMap):
    """(verdict, evidence): homology of the cone vanishes in every degree."""
    C = cone(f)
    evidence = {}
    ok = True
    for i in sorted(C.terms):
        z = C.homology(i).is_zero()
        evidence[i] = z
        ok = ok and z
    return ok, evidence


# --------------------------------------------------------- tensor and Hom

def tensor_complex(X: ChainComplex, Y: ChainComplex, require_free=True) -> ChainComplex:
    """Total complex of X ⊗ Y; derived-correct when X is free."""
    if not X.ring.same_ring(Y.ring):
        raise RingMismatchError("complexes over different rings")
    if require_free and not (X.free_flag or Y.free_flag):
        raise NotFreeError("derived tensor needs a free side")
    ring = X.ring
    p = ring.char
    blocks = {}  # n -> list of (i, j, offset)
    terms = {}
    for n in sorted({i + j for i in X.terms for j in Y.terms}):
        mods, layout, off = [], [], 0
        for i in sorted(X.terms):
            j = n - i
            if j not in Y.terms:
                continue
            T = tensor_module(X.terms[i], Y.terms[j])
            mods.append(T)
            layout.append((i, j, off))
            off += T.rank
        M = mods[0]
        for T in mods[1:]:
            M = M.direct_sum(T)
        terms[n] = M
        blocks[n] = layout
    diffs = {}
    for n in terms:
        if n + 1 not in terms:
            continue
        tgt_off = {(i, j): o for i, j, o in blocks[n + 1]}
        imgs = []
        for i, j, _ in blocks[n]:
            Xi, Yj = X.terms[i], Y.terms[j]
            b = Yj.rank
            sign = -1 if i % 2 else 1
            for a_ in range(Xi.rank):
                for b_ in range(b):
                    v = {}
                    if (i + 1, j) in tgt_off:
                        o = tgt_off[(i + 1, j)]
                        bb = Y.terms[j].rank
                        for (pos, e), c in X.diffs[i].images[a_].items():
                            key = (o + pos * bb + b_, e)
                            v[key] = (v.get(key, 0) + c) % p
                    if (i, j + 1) in tgt_off:
                        o = tgt_off[(i, j + 1)]
                        bb = Y.terms[j + 1].rank
                        for (pos, e), c in Y.diffs[j].images[b_].items():
                            key = (o + a_ * bb + pos, e)
                            v[key] = (v.get(key, 0) + sign * c) % p
                    imgs.append({k: c for k, c in v.items() if c})
        diffs[n] = ModuleMap(terms[n], terms[n + 1], imgs)
    return ChainComplex(ring, terms, diffs)


def _hom_term(Xi: FPModule, Yj: FPModule):
    """Hom(X^i, Y^j) for free X^i: basis E_{ab} at position a*nb + b."""
    nb = Yj.rank
    degs = [g - f for f in Xi.gen_degrees for g in Yj.gen_degrees]
    rels = []
    for a in range(Xi.rank):
        for B in Yj.rels:
            rels.append({(a * nb + pos, e): c for (pos, e), c in B.items()})
    return FPModule(Xi.ring, degs, rels)


def hom_complex(X: ChainComplex, Y: ChainComplex) -> ChainComplex:
    """Hom^n = prod_i Hom(X^i, Y^{i+n}), d φ = d_Y φ - (-1)^n φ d_X; X free."""
    if not X.ring.same_ring(Y.ring):
        raise RingMismatchError("complexes over different rings")
    if not X.free_flag:
        raise NotFreeError("hom_complex needs a free first argument")
    ring = X.ring
    p = ring.char
    blocks, terms = {}, {}
    for n in sorted({j - i for i in X.terms for j in Y.terms}):
        mods, layout, off = [], [], 0
        for i in sorted(X.terms):
            j = i + n
            if j not in Y.terms:
                continue
            T = _hom_term(X.terms[i], Y.terms[j])
            mods.append(T)
            layout.append((i, j, off))
            off += T.rank
        M = mods[0]
        for T in mods[1:]:
            M = M.direct_sum(T)
        terms[n] = M
        blocks[n] = layout
    diffs = {}
    for n in terms:
        if n + 1 not in terms:
            continue
        tgt_off = {(i, j): o for i, j, o in blocks[n + 1]}
        sign = -(-1 if n % 2 else 1)
        imgs = []
        for i, j, _ in blocks[n]:
            Xi, Yj = X.terms[i], Y.terms[j]
            nb = Yj.rank
            for a in range(Xi.rank):
                for b in range(nb):
                    v = {}
                    # d_Y ∘ E_ab in Hom(X^i, Y^{j+1})
                    if (i, j + 1) in tgt_off and j in Y.diffs:
                        o = tgt_off[(i, j + 1)]
                        nb1 = Y.terms[j + 1].rank
                        for (c, e), val in Y.diffs[j].images[b].items():
                            key = (o + a * nb1 + c, e)
                            v[key] = (v.get(key, 0) + val) % p
                    # -(-1)^n E_ab ∘ d_X in Hom(X^{i-1}, Y^j)
                    if (i - 1, j) in tgt_off and (i - 1) in X.diffs:
                        o = tgt_off[(i - 1, j)]
                        for a1, img in enumerate(X.diffs[i - 1].images):
                            for (pos, e), val in img.items():
                                if pos == a:
                                    key = (o + a1 * nb + b, e)
                                    v[key] = (v.get(key, 0) + sign * val) % p
                    imgs.append({k: c for k, c in v.items() if c})
        diffs[n] = ModuleMap(terms[n], terms[n + 1], imgs)
    out = ChainComplex(ring, terms, diffs)
    out.hom_blocks = blocks
    return out


# ------------------------------------------------------ change of rings

class RingSurjection:
    """Surjection S -> R = S/J sending the variables of S to ``images`` (poly
    dicts over R); ``lifts`` gives a preimage of each variable of R and
    ``kernel`` generators of J."""

    def __init__(self, source: GradedRing, target: GradedRing, images, lifts, kernel):
        self.source, self.target = source, target
        self.images = [target.poly(f).as_dict() for f in images]
        self.lifts = [source.poly(f).as_dict() for f in lifts]
        self.kernel = [source.poly(f).as_dict() for f in kernel]

    def lift_poly(self, f):
        """A preimage in S of a polynomial over R."""
        S = self.source
        p = S.char
        out: dict = {}
        for e, a in f.items():
            term = {(0,) * S.nvars: a}
            for i, k in enumerate(e):
                for _ in range(k):
                    term = pmul(term, self.lifts[i], p)
            for m, c in term.items():
                val = (out.get(m, 0) + c) % p
                if val:
                    out[m] = val
                else:
                    out.pop(m, None)
        return S.nf_dict(out)

    def push_poly(self, f):
        R = self.target
        p = R.char
        out: dict = {}
        for e, a in f.items():
            term = {(0,) * R.nvars: a}
            for i, k in enumerate(e):
                for _ in range(k):
                    term = pmul(term, self.images[i], p)
            for m, c in term.items():
                val = (out.get(m, 0) + c) % p
                if val:
                    out[m] = val
                else:
                    out.pop(m, None)
        return R.nf_dict(out)

    def lift_vec(self, v):
        out = {}
        comps: dict = {}
        for (pos, e), a in v.items():
            comps.setdefault(pos, {})[e] = a
        for pos, f in comps.items():
            for e, a in self.lift_poly(f).items():
                out[(pos, e)] = a
        return out

    def verify(self) -> dict:
        """Surjectivity (lifts map back to variables), kernel generators map
        to zero, and the defining relations of S map into zero."""
        R = self.target
        surj = all(self.push_poly(l) == {tuple(int(k == i) for k in range(R.nvars)): 1}
                   for i, l in enumerate(self.lifts))
        ker = all(not self.push_poly(k) for k in self.kernel)
        wd = all(not self.push_poly(g) for g in self.source.gb)
        if not surj:
            raise AlgebraError("ring map is not surjective")
        return {"surjective": surj, "kernel_maps_to_zero": ker, "well_defined": wd}


def restrict_module(M: FPModule, phi: RingSurjection) -> FPModule:
    """M viewed as an S-module through S -> R."""
    S = phi.source
    rels = [phi.lift_vec(r) for r in M.rels]
    for i in range(M.rank):
        for k in phi.kernel:
            rels.append({(i, e): a for e, a in k.items()})
    return FPModule(S, M.gen_degrees, rels)


def restrict_scalars(X: ChainComplex, phi: RingSurjection) -> ChainComplex:
    """Restriction of scalars along S -> S/J (the functor −⊗_{S/J} S/J)."""
    if not X.ring.same_ring(phi.target):
        raise RingMismatchError("complex is not over the target ring")
    phi.verify()
    S = phi.source
    terms = {i: restrict_module(M, phi) for i, M in X.terms.items()}
    diffs = {i: ModuleMap(terms[i], terms[i + 1], [phi.lift_vec(v) for v in d.images], d.degree)
             for i, d in X.diffs.items()}
    return ChainComplex(S, terms, diffs)
