"""Finitely presented graded modules over a GradedRing.

A module is ``coker(F1 -> F0)``: ``gen_degrees`` are the degrees of the basis
of F0 and ``rels`` are homogeneous vectors of F0.  Vectors are dicts
``{(position, exponent): coefficient}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import EchelonSpace, nullspace, rref
from .ring import (AlgebraError, GradedRing, ModuleGB, Polynomial, divides,
                   hilbert_numerator_module, monomials_of_degree, mono_mul, wdeg)


class RingMismatchError(AlgebraError):
    pass


class DegreeError(AlgebraError):
    pass


# ----------------------------------------------------------- vector helpers

def vec_add(u, v, p, c=1):
    w = dict(u)
    for t, a in v.items():
        val = (w.get(t, 0) + c * a) % p
        if val:
            w[t] = val
        else:
            w.pop(t, None)
    return w


def vec_scale(v, c, p):
    c %= p
    return {t: a * c % p for t, a in v.items()} if c else {}


def vec_mul_poly(v, f, p):
    out: dict = {}
    for (pos, e), a in v.items():
        for m, b in f.items():
            t = (pos, mono_mul(e, m))
            val = (out.get(t, 0) + a * b) % p
            if val:
                out[t] = val
            else:
                del out[t]
    return out


def vec_component(v, pos):
    return {e: a for (q, e), a in v.items() if q == pos}


def vec_from_components(comps):
    out = {}
    for pos, f in enumerate(comps):
        for e, a in f.items():
            out[(pos, e)] = a
    return out


def vec_shift(v, offset):
    return {(pos + offset, e): a for (pos, e), a in v.items()}


def vec_nf(ring: GradedRing, v):
    if not ring.gb or not v:
        return dict(v)
    comps: dict = {}
    for (pos, e), a in v.items():
        comps.setdefault(pos, {})[e] = a
    out = {}
    for pos, f in comps.items():
        for e, a in ring.nf_dict(f).items():
            out[(pos, e)] = a
    return out


def vec_degree(v, gdeg, weights):
    pos, e = next(iter(v))
    return wdeg(e, weights) + gdeg[pos]


def apply_matrix(cols, v, p):
    """Image of v (a vector in the source basis) under the map whose i-th
    basis vector goes to ``cols[i]``."""
    out: dict = {}
    for (pos, e), a in v.items():
        for (q, m), b in cols[pos].items():
            t = (q, mono_mul(e, m))
            val = (out.get(t, 0) + a * b) % p
            if val:
                out[t] = val
            else:
                del out[t]
    return out


def is_homogeneous_vec(v, gdeg, weights):
    return len({wdeg(e, weights) + gdeg[pos] for pos, e in v}) <= 1


# ------------------------------------------------ degreewise linear algebra

class DegreePiece:
    """Coordinates on the degree-d component of a free module over R."""

    def __init__(self, ring: GradedRing, gdeg, d):
        self.ring = ring
        self.terms = []
        for pos, g in enumerate(gdeg):
            for m in ring.k_basis(d - g) if d - g >= 0 else []:
                self.terms.append((pos, m))
        self.index = {t: i for i, t in enumerate(self.terms)}

    def __len__(self):
        return len(self.terms)

    def coords(self, v):
        """v must be in normal form and homogeneous of degree d."""
        x = np.zeros(len(self.terms), dtype=np.int64)
        for t, a in v.items():
            x[self.index[t]] = a
        return x

    def vector(self, x):
        return {self.terms[i]: int(a) for i, a in enumerate(x) if a}


def _multiples_in_degree(ring, v, vdeg, d):
    """All (monomial, m*v) products landing in degree d, in normal form."""
    p = ring.char
    out = []
    if d < vdeg:
        return out
    for m in ring.k_basis(d - vdeg):
        w = vec_nf(ring, vec_mul_poly(v, {m: 1}, p))
        if w:
            out.append((m, w))
    return out


def minimal_generators(ring: GradedRing, gdeg, vecs, degs, extra=(), extra_degs=()):
    """Indices of a minimal subset of ``vecs`` generating, together with
    ``extra``, the same submodule modulo ``extra`` (graded Nakayama)."""
    p = ring.char
    vecs = [vec_nf(ring, v) for v in vecs]
    extra = [vec_nf(ring, v) for v in extra]
    order = sorted(range(len(vecs)), key=lambda i: (degs[i], i))
    kept: list[int] = []
    by_deg: dict = {}
    for i in order:
        by_deg.setdefault(degs[i], []).append(i)
    for d in sorted(by_deg):
        piece = DegreePiece(ring, gdeg, d)
        space = EchelonSpace(len(piece), p)
        for v, vd in list(zip(extra, extra_degs)) + [(vecs[k], degs[k]) for k in kept]:
            if not v or vd > d:
                continue
            for _, w in _multiples_in_degree(ring, v, vd, d):
                space.add(piece.coords(w))
        for i in by_deg[d]:
            v = vecs[i]
            if not v:
                continue
            if space.add(piece.coords(v)):
                kept.append(i)
    return kept


def lift_in_degree(ring: GradedRing, gdeg, target, d, gens, gen_degs, extra=(), extra_degs=()):
    """Coefficients (polynomial dicts) a_t with sum a_t*gens[t] = target modulo
    ``extra`` and I, or None when target is not in the submodule."""
    p = ring.char
    target = vec_nf(ring, target)
    if not target:
        return [{} for _ in gens]
    piece = DegreePiece(ring, gdeg, d)
    cols, labels = [], []
    for t, (g, gd) in enumerate(zip(gens, gen_degs)):
        for m, w in _multiples_in_degree(ring, vec_nf(ring, g), gd, d):
            cols.append(piece.coords(w))
            labels.append((t, m))
    for v, vd in zip(extra, extra_degs):
        for m, w in _multiples_in_degree(ring, vec_nf(ring, v), vd, d):
            cols.append(piece.coords(w))
            labels.append((None, m))
    n = len(cols)
    if n == 0:
        return None
    A = np.column_stack(cols + [piece.coords(target)]) % p
    R, piv = rref(A, p)
    if n in piv:
        return None
    coeffs = [dict() for _ in gens]
    for r, pc in enumerate(piv):
        t, m = labels[pc]
        val = int(R[r, n])
        if t is not None and val:
            coeffs[t][m] = (coeffs[t].get(m, 0) + val) % p
    return coeffs


# -------------------------------------------------------------- kernels

def kernel_generators(ring: GradedRing, tgt_deg, cols, src_deg, extra=(), minimal=True):
    """Generators of {a : sum a_i cols[i] in span(extra) + I*F} (vectors in the
    source free module), via an elimination Gröbner basis over the ambient
    polynomial ring.  Returns (vectors, degrees)."""
    p = ring.char
    m = len(tgt_deg)
    n = len(src_deg)
    if n == 0:
        return [], []
    gdeg = tuple(tgt_deg) + tuple(src_deg)
    inputs = []
    for i, c in enumerate(cols):
        v = {t: a for t, a in vec_nf(ring, c).items()}
        v[(m + i, (0,) * ring.nvars)] = 1
        inputs.append(v)
    for e in extra:
        e = vec_nf(ring, e)
        if e:
            inputs.append(e)
    for v in inputs:
        if not is_homogeneous_vec(v, gdeg, ring.weights):
            raise DegreeError("inconsistent degree bookkeeping in kernel input")
    gb = ModuleGB(inputs, gdeg, ring.weights, p, block=m, ideal=ring.gb)
    out, degs = [], []
    for v, lt in zip(gb.basis, gb.leads):
        if lt[0] < m:
            continue
        w = vec_nf(ring, vec_shift(v, -m))
        if w:
            out.append(w)
            degs.append(vec_degree(w, src_deg, ring.weights))
    if minimal and out:
        keep = minimal_generators(ring, src_deg, out, degs)
        out = [out[i] for i in keep]
        degs = [degs[i] for i in keep]
    return out, degs


def submodule_gb(ring: GradedRing, gdeg, vecs):
    """TOP-ordered Gröbner basis of span(vecs) + I*F."""
    vecs = [vec_nf(ring, v) for v in vecs]
    return ModuleGB([v for v in vecs if v], gdeg, ring.weights, ring.char, ideal=ring.gb)


# -------------------------------------------------------------- modules

class FPModule:
    """Graded module presented as the cokernel of its relation vectors."""

    def __init__(self, ring: GradedRing, gen_degrees, rels=(), name=None):
        self.ring = ring
        self.gen_degrees = tuple(int(d) for d in gen_degrees)
        rs = []
        for r in rels:
            r = vec_nf(ring, r)
            if not r:
                continue
            if not is_homogeneous_vec(r, self.gen_degrees, ring.weights):
                raise DegreeError("relation is not homogeneous for the generator degrees")
            rs.append(r)
        self.rels = rs
        self.name = name
        self._gb = None
        self._cache: dict = {}

    # constructors
    @classmethod
    def free(cls, ring, degrees=(0,)):
        return cls(ring, degrees, ())

    @classmethod
    def cyclic(cls, ring, gens, degree=0):
        """R/(gens) with generator in ``degree``."""
        rels = []
        for g in gens:
            g = ring.poly(g).as_dict()
            rels.append({(0, e): a for e, a in g.items()})
        return cls(ring, (degree,), rels)

    @classmethod
    def residue_field(cls, ring, degree=0):
        return cls.cyclic(ring, ring.gens(), degree)

    @classmethod
    def from_rows(cls, ring, gen_degrees, rows):
        """Relations given as rows (one per generator) of a matrix whose
        columns are the relations; entries are Polynomials or strings."""
        if not rows:
            return cls(ring, gen_degrees, ())
        ncols = len(rows[0])
        cols = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged relation matrix")
            for j, entry in enumerate(row):
                f = ring.poly(entry).as_dict()
                for e, a in f.items():
                    cols[j][(i, e)] = a
        return cls(ring, gen_degrees, cols)

    # basic data
    @property
    def rank(self):
        return len(self.gen_degrees)

    @property
    def rel_degrees(self):
        return [vec_degree(r, self.gen_degrees, self.ring.weights) for r in self.rels]

    def rows(self):
        """Relation matrix as rows of Polynomials."""
        return [[Polynomial(self.ring, vec_component(r, i)) for r in self.rels]
                for i in range(self.rank)]

    def gb(self):
        if self._gb is None:
            self._gb = submodule_gb(self.ring, self.gen_degrees, self.rels)
        return self._gb

    def reduce(self, v):
        return self.gb().reduce(vec_nf(self.ring, v))

    def contains_rel(self, v) -> bool:
        """Is v zero in the module (v in the relation submodule)?"""
        v = vec_nf(self.ring, v)
        return not v or self.gb().contains(v)

    def is_zero(self) -> bool:
        if self.rank == 0:
            return True
        gb = self.gb()
        zero = (0,) * self.ring.nvars
        return all(any(e == zero for e, _ in gb.by_pos.get(pos, ())) for pos in range(self.rank))

    def hilbert_numerator(self):
        if "hn" not in self._cache:
            self._cache["hn"] = hilbert_numerator_module(self.gb())
        return self._cache["hn"]

    def hilbert_function(self, lo, hi):
        """Dimensions of M_d for lo <= d <= hi."""
        if self.rank == 0:
            return [0] * (hi - lo + 1)
        return self.hilbert_numerator().series(hi, start=lo)

    def dim(self):
        if self.rank == 0:
            return -1
        return self.hilbert_numerator().dimension()

    def total_length(self):
        """Vector-space dimension of a finite-length module."""
        if self.dim() > 0:
            raise AlgebraError("module has infinite length")
        if self.is_zero():
            return 0
        num = self.hilbert_numerator()
        lo = min(self.gen_degrees)
        hi = max(num.numerator) + 1
        return sum(num.series(hi, start=lo))

    def twist(self, a):
        """M(a), so that M(a)_d = M_{a+d}."""
        return FPModule(self.ring, [g - a for g in self.gen_degrees], self.rels)

    def direct_sum(self, other):
        _check_same(self, other)
        off = self.rank
        return FPModule(self.ring, self.gen_degrees + other.gen_degrees,
                        list(self.rels) + [vec_shift(r, off) for r in other.rels])

    def __add__(self, other):
        return self.direct_sum(other)

    def is_free_presented(self):
        return not self.rels

    def pruned(self):
        return prune(self)[0]

    def min_rank(self):
        return self.pruned().rank

    def describe(self):
        rows = self.rows()
        body = "; ".join("[" + ", ".join(str(f) for f in row) + "]" for row in rows)
        return "coker(gens %s; rels %s)" % (list(self.gen_degrees), body or "none")

    def __repr__(self):
        return "FPModule(%s)" % self.describe()


def _check_same(M, N):
    if not M.ring.same_ring(N.ring):
        raise RingMismatchError("modules live over different rings")


# ---------------------------------------------------------------- maps

@dataclass
class ModuleMap:
    """Homogeneous map: generator i of source goes to ``images[i]`` (a vector
    in the target's free module), raising degrees by ``degree``."""

    source: FPModule
    target: FPModule
    images: list
    degree: int = 0
    certificate: dict = field(default_factory=dict)

    def __post_init__(self):
        ring = self.target.ring
        self.images = [vec_nf(ring, v) for v in self.images]

    def apply(self, v):
        return vec_nf(self.target.ring, apply_matrix(self.images, v, self.target.ring.char))

    def is_well_defined(self) -> bool:
        ok = all(self.target.contains_rel(self.apply(r)) for r in self.source.rels)
        homog = all(
            not img or vec_degree(img, self.target.gen_degrees, self.target.ring.weights)
            == d + self.degree
            for img, d in zip(self.images, self.source.gen_degrees))
        self.certificate["well_defined"] = ok and homog
        return ok and homog

    def compose(self, other):
        """self ∘ other."""
        return ModuleMap(other.source, self.target, [self.apply(v) for v in other.images],
                         self.degree + other.degree)

    def kernel_module(self):
        K, Kd = kernel_generators(self.source.ring, self.target.gen_degrees, self.images,
                                  self.source.gen_degrees, extra=self.target.rels)
        return subquotient(self.source.ring, self.source.gen_degrees, K, Kd, self.source.rels)

    def cokernel_module(self):
        return FPModule(self.target.ring, self.target.gen_degrees,
                        list(self.target.rels) + list(self.images))

    def is_injective(self) -> bool:
        K, _ = kernel_generators(self.source.ring, self.target.gen_degrees, self.images,
                                 self.source.gen_degrees, extra=self.target.rels, minimal=False)
        return all(self.source.contains_rel(k) for k in K)

    def is_surjective(self) -> bool:
        return self.cokernel_module().is_zero()

    def is_iso(self) -> bool:
        return self.is_surjective() and self.is_injective()


def identity_map(M: FPModule):
    z = (0,) * M.ring.nvars
    return ModuleMap(M, M, [{(i, z): 1} for i in range(M.rank)])


def subquotient(ring, gdeg, gens, gen_degs, rels):
    """(span(gens) + span(rels)) / span(rels) presented on the generators
    ``gens`` (inside the free module with degrees ``gdeg``)."""
    if not gens:
        return FPModule(ring, ())
    K, _ = kernel_generators(ring, gdeg, gens, gen_degs, extra=rels)
    return FPModule(ring, gen_degs, K)


# ------------------------------------------------------------ minimization

def prune(M: FPModule):
    """Minimal presentation of M.

    Returns (M', to_old, from_old): ``to_old[i]`` is generator i of M' written
    in M's generators; ``from_old[j]`` is generator j of M written in M'.
    """
    ring, p = M.ring, M.ring.char
    zero = (0,) * ring.nvars
    gdeg = list(M.gen_degrees)
    rels = [dict(r) for r in M.rels]
    alive = list(range(len(gdeg)))  # positions kept, in original indexing
    # express original gens: from_old[j] as vector over original positions
    from_old = [{(j, zero): 1} for j in range(len(gdeg))]
    while True:
        hit = None
        for k, r in enumerate(rels):
            for (pos, e), a in sorted(r.items()):
                if e == zero:
                    hit = (k, pos, a)
                    break
            if hit:
                break
        if hit is None:
            break
        k, j, c = hit
        col = rels.pop(k)
        inv = pow(c, p - 2, p)
        # e_j = -(1/c) * sum_{i != j} col_i e_i
        sub = {t: (-a * inv) % p for t, a in col.items() if t[0] != j}
        new_rels = []
        for r in rels:
            rj = vec_component(r, j)
            if rj:
                r = {t: a for t, a in r.items() if t[0] != j}
                r = vec_add(r, vec_mul_poly(sub, rj, p), p)
                r = vec_nf(ring, r)
            if r:
                new_rels.append(r)
        rels = new_rels
        new_from = []
        for v in from_old:
            vj = vec_component(v, j)
            if vj:
                v = {t: a for t, a in v.items() if t[0] != j}
                v = vec_nf(ring, vec_add(v, vec_mul_poly(sub, vj, p), p))
            new_from.append(v)
        from_old = new_from
        alive.remove(j)
    # renumber positions
    renum = {old: new for new, old in enumerate(alive)}
    rels = [{(renum[pos], e): a for (pos, e), a in r.items()} for r in rels]
    from_old = [{(renum[pos], e): a for (pos, e), a in v.items()} for v in from_old]
    new_deg = [gdeg[j] for j in alive]
    degs = [vec_degree(r, new_deg, ring.weights) for r in rels]
    keep = minimal_generators(ring, new_deg, rels, degs)
    rels = [rels[i] for i in keep]
    Mp = FPModule(ring, new_deg, rels)
    to_old = [{(j, zero): 1} for j in alive]
    return Mp, to_old, from_old


# ------------------------------------------------------------ Hom and ⊗

def _hom_free_cols(F_deg, G_deg, A_cols, ring):
    """Columns of Hom(F0, G) -> Hom(F1, G) induced by A : F1 -> F0, in the
    bases E_{ij} (position i*b + j) and E'_{kj} (position k*b + j)."""
    b = len(G_deg)
    split = []
    for col in A_cols:
        comps: dict = {}
        for (i, e), a in col.items():
            comps.setdefault(i, []).append((e, a))
        split.append(comps)
    cols = []
    for i in range(len(F_deg)):
        for j in range(b):
            v = {}
            for k, comps in enumerate(split):
                for e, a in comps.get(i, ()):
                    v[(k * b + j, e)] = a
            cols.append(v)
    return cols


def hom_free_degrees(F_deg, G_deg):
    return [g - f for f in F_deg for g in G_deg]


class HomData:
    """Evaluation data of a computed Hom(M, N): ``maps[s]`` is generator s as a
    vector of Hom(F0(M), F0(N)) in positions i*b + j."""

    def __init__(self, source, target, maps):
        self.source, self.target, self.maps = source, target, maps

    def evaluate(self, s, i):
        """Image in F0(N) of generator i of M under generator s of Hom."""
        b = self.target.rank
        return {(pos - i * b, e): a for (pos, e), a in self.maps[s].items()
                if i * b <= pos < (i + 1) * b}


def hom_module(M: FPModule, N: FPModule, minimize=True):
    """Presentation of Hom_R(M, N); the result carries ``hom_data``."""
    _check_same(M, N)
    ring = M.ring
    a, b = M.rank, N.rank
    H_deg = hom_free_degrees(M.gen_degrees, N.gen_degrees)
    if a == 0 or b == 0:
        out = FPModule(ring, ())
        out.hom_data = HomData(M, N, [])
        return out
    rel_deg = M.rel_degrees
    tgt_deg = hom_free_degrees(rel_deg, N.gen_degrees)
    psi = _hom_free_cols(M.gen_degrees, N.gen_degrees, M.rels, ring)
    # Hom(F1, im B): B_l placed at column k
    extra1 = []
    for k in range(len(M.rels)):
        for B in N.rels:
            extra1.append({(k * b + j, e): c for (j, e), c in B.items()})
    if M.rels:
        Z, Zd = kernel_generators(ring, tgt_deg, psi, H_deg, extra=extra1)
    else:
        # every map F0 -> G0 descends; generators E_ij
        z = (0,) * ring.nvars
        Z = [{(t, z): 1} for t in range(a * b)]
        Zd = list(H_deg)
    extra0 = []
    for i in range(a):
        for B in N.rels:
            extra0.append({(i * b + j, e): c for (j, e), c in B.items()})
    if not Z:
        out = FPModule(ring, ())
        out.hom_data = HomData(M, N, [])
        return out
    if extra0:
        keep = minimal_generators(ring, H_deg, Z, Zd, extra0,
                                  [vec_degree(v, H_deg, ring.weights) for v in extra0])
        Z, Zd = [Z[i] for i in keep], [Zd[i] for i in keep]
    H = subquotient(ring, H_deg, Z, Zd, extra0)
    maps = Z
    if minimize:
        Hp, to_old, _ = prune(H)
        maps = [vec_nf(ring, apply_matrix(Z, v, ring.char)) for v in to_old]
        H = Hp
    H.hom_data = HomData(M, N, maps)
    return H


def tensor_module(M: FPModule, N: FPModule, minimize=False):
    """Presentation of M ⊗_R N on generators e_i ⊗ f_j (position i*b + j)."""
    _check_same(M, N)
    ring = M.ring
    a, b = M.rank, N.rank
    gdeg = [x + y for x in M.gen_degrees for y in N.gen_degrees]
    rels = []
    for A in M.rels:
        for j in range(b):
            rels.append({(i * b + j, e): c for (i, e), c in A.items()})
    for B in N.rels:
        for i in range(a):
            rels.append({(i * b + j, e): c for (j, e), c in B.items()})
    T = FPModule(ring, gdeg, rels)
    return T.pruned() if minimize else T


def dual(M: FPModule):
    """M* = Hom(M, R)."""
    return hom_module(M, FPModule.free(M.ring, (0,)))


def natural_double_dual_map(M: FPModule, C: FPModule):
    """The evaluation map M -> Hom(Hom(M, C), C) and its isomorphism verdict.

    Returns (ModuleMap, verdict, evidence dict)."""
    ring = M.ring
    if C.is_zero():
        raise AlgebraError("C must be nonzero")
    Md = hom_module(M, C)
    Mdd = hom_module(Md, C)
    s = Md.rank
    b = C.rank
    images = []
    H_deg = hom_free_degrees(Md.gen_degrees, C.gen_degrees)
    ok = True
    for i in range(M.rank):
        # ev(e_i): z_s -> z_s(e_i), a vector of Hom(F0(M†), F0(C))
        v = {}
        for t in range(s):
            for (j, e), c in Md.hom_data.evaluate(t, i).items():
                v[(t * b + j, e)] = c
        v = vec_nf(ring, v)
        if not v:
            images.append({})
            continue
        d = vec_degree(v, H_deg, ring.weights)
        extra = []
        for t in range(s):
            for B in C.rels:
                extra.append({(t * b + j, e): c for (j, e), c in B.items()})
        coeffs = lift_in_degree(ring, H_deg, v, d, Mdd.hom_data.maps,
                                [vec_degree(w, H_deg, ring.weights) if w else 0
                                 for w in Mdd.hom_data.maps],
                                extra, [vec_degree(w, H_deg, ring.weights) for w in extra])
        if coeffs is None:
            ok = False
            images.append({})
            continue
        images.append(vec_from_components(coeffs))
    f = ModuleMap(M, Mdd, images)
    evidence = {"dual_rank": s, "double_dual_rank": Mdd.rank, "lifted": ok}
    if not ok:
        return f, False, evidence
    surj = f.is_surjective()
    inj = f.is_injective()
    evidence.update(surjective=surj, injective=inj)
    return f, surj and inj, evidence


# ------------------------------------------------------------ resolutions

@dataclass
class FreeResolution:
    module: FPModule
    degrees: list          # degrees[n] = generator degrees of F_n
    diff: list             # diff[n] : F_n -> F_{n-1} as column vectors (n >= 1)
    minimal: bool = True
    complete: bool = False  # reached a zero term
    cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def length_computed(self):
        return len(self.degrees) - 1

    def betti(self):
        return [len(d) for d in self.degrees]

    def graded_betti(self):
        out = []
        for d in self.degrees:
            table: dict = {}
            for x in d:
                table[x] = table.get(x, 0) + 1
            out.append(dict(sorted(table.items())))
        return out

    def check_d_squared(self) -> bool:
        ring = self.module.ring
        for n in range(2, len(self.diff)):
            for col in self.diff[n]:
                if vec_nf(ring, apply_matrix(self.diff[n - 1], col, ring.char)):
                    return False
        return True

    def is_minimal(self) -> bool:
        zero = (0,) * self.module.ring.nvars
        return all(e != zero for cols in self.diff[1:] for col in cols for (_, e) in col)

    def extend(self, length):
        ring = self.module.ring
        while self.length_computed < length and not self.complete:
            n = self.length_computed
            cols = self.diff[n] if n >= 1 else None
            if n == 0:
                raise AlgebraError("resolution must start from a presentation")
            K, Kd = kernel_generators(ring, self.degrees[n - 1], cols, self.degrees[n])
            self.degrees.append(Kd)
            self.diff.append(K)
            if not K:
                self.complete = True
        return self


def free_resolution(M: FPModule, length: int, minimal=True) -> FreeResolution:
    """Graded free resolution of M to homological degree ``length``."""
    N = M.pruned() if minimal else M
    degrees = [list(N.gen_degrees)]
    diff = [None]
    res = FreeResolution(N, degrees, diff, minimal=minimal)
    if N.rank == 0:
        res.complete = True
        return res
    if length >= 1:
        res.degrees.append(N.rel_degrees)
        res.diff.append(list(N.rels))
        if not N.rels:
            res.complete = True
        res.extend(length)
    return res


def minimalize(res: FreeResolution) -> FreeResolution:
    """Cancel unit entries of a (possibly non-minimal) resolution.

    A unit c at (row j, column k) of d_n splits off R e_k -> R f_j: columns of
    d_n are cleared against column k, then row j / column k of d_n, row k of
    d_{n+1} and column j of d_{n-1} are deleted.
    """
    ring = res.module.ring
    p = ring.char
    zero = (0,) * ring.nvars
    degrees = [list(d) for d in res.degrees]
    diff = [None] + [[vec_nf(ring, c) for c in cols] for cols in res.diff[1:]]

    def find_unit():
        for n in range(1, len(diff)):
            for k, col in enumerate(diff[n]):
                for (pos, e), a in sorted(col.items()):
                    if e == zero:
                        return n, k, pos, a
        return None

    while (hit := find_unit()) is not None:
        n, k, j, c = hit
        inv = pow(c, p - 2, p)
        col = diff[n][k]
        new_cols = []
        for kk, other in enumerate(diff[n]):
            if kk == k:
                continue
            oj = vec_component(other, j)
            if oj:
                other = vec_add(other, vec_mul_poly(col, {e: (-a * inv) % p for e, a in oj.items()}, p), p)
            new_cols.append(vec_nf(ring, {(pos - (pos > j), e): a
                                          for (pos, e), a in other.items() if pos != j}))
        diff[n] = new_cols
        degrees[n - 1].pop(j)
        degrees[n].pop(k)
        if n + 1 < len(diff):
            diff[n + 1] = [{(pos - (pos > k), e): a for (pos, e), a in v.items() if pos != k}
                           for v in diff[n + 1]]
        if n - 1 >= 1:
            diff[n - 1] = [v for idx, v in enumerate(diff[n - 1]) if idx != j]
    module = FPModule(ring, degrees[0], diff[1] if len(diff) > 1 else ())
    return FreeResolution(module, degrees, diff, minimal=True, complete=res.complete)


# ------------------------------------------------ finite-length modules

class Representation:
    """A finite-length graded module as a k-vector space with variable actions.

    ``degrees[b]`` is the degree of basis vector b; ``actions[v]`` is the
    matrix of multiplication by variable v (columns = images of basis vectors).
    """

    def __init__(self, ring, degrees, actions, terms=None):
        self.ring = ring
        self.degrees = list(degrees)
        self.actions = actions
        self.terms = terms

    @property
    def dim(self):
        return len(self.degrees)

    def dual(self):
        """Graded k-dual: basis dual vectors in degree -d, action transposed."""
        return Representation(self.ring, [-d for d in self.degrees],
                              [A.T.copy() for A in self.actions])

    def act_monomial(self, exp, x):
        p = self.ring.char
        for v, k in enumerate(exp):
            for _ in range(k):
                x = self.actions[v] @ x % p
        return x


def representation(M: FPModule) -> Representation:
    """k-basis of standard terms of a finite-length module and its actions."""
    ring = M.ring
    if M.dim() > 0:
        raise AlgebraError("module does not have finite length")
    gb = M.gb()
    p = ring.char
    if M.is_zero():
        return Representation(ring, [], [np.zeros((0, 0), dtype=np.int64)] * ring.nvars, [])
    num = M.hilbert_numerator()
    hi = max(num.numerator) + 1
    terms = []
    for pos, g in enumerate(M.gen_degrees):
        leads = [e for e, _ in gb.by_pos.get(pos, ())]
        for d in range(g, hi + 1):
            for m in monomials_of_degree(ring.weights, d - g):
                if not any(divides(e, m) for e in leads):
                    terms.append((pos, m))
    index = {t: i for i, t in enumerate(terms)}
    degrees = [wdeg(m, ring.weights) + M.gen_degrees[pos] for pos, m in terms]
    actions = []
    for v in range(ring.nvars):
        A = np.zeros((len(terms), len(terms)), dtype=np.int64)
        ev = tuple(int(k == v) for k in range(ring.nvars))
        for j, (pos, m) in enumerate(terms):
            img = gb.reduce({(pos, mono_mul(m, ev)): 1})
            for t, a in img.items():
                A[index[t], j] = a % p
        actions.append(A)
    return Representation(ring, degrees, actions, terms)


def module_from_representation(rep: Representation) -> FPModule:
    """Minimal presentation of a finite-length module given by its actions."""
    ring = rep.ring
    p = ring.char
    n = rep.dim
    if n == 0:
        return FPModule(ring, ())
    order = sorted(range(n), key=lambda b: (rep.degrees[b], b))
    # m*V
    space = EchelonSpace(n, p)
    for A in rep.actions:
        for j in range(n):
            if A[:, j].any():
                space.add(A[:, j])
    gens = []
    for b in order:
        e = np.zeros(n, dtype=np.int64)
        e[b] = 1
        if space.add(e):
            gens.append(b)
    gdeg = [rep.degrees[b] for b in gens]
    # degreewise kernel of S^G -> V
    kernel, kdeg = [], []
    top = max(rep.degrees)
    for d in range(min(gdeg), top + 2):
        labels, cols = [], []
        for gi, b in enumerate(gens):
            for m in ring.k_basis(d - gdeg[gi]) if d >= gdeg[gi] else []:
                e = np.zeros(n, dtype=np.int64)
                e[b] = 1
                cols.append(rep.act_monomial(m, e))
                labels.append((gi, m))
        if not cols:
            continue
        A = np.column_stack(cols) % p
        for row in nullspace(A, p):
            v = {(labels[k][0], labels[k][1]): int(c) for k, c in enumerate(row) if c}
            if v:
                kernel.append(v)
                kdeg.append(d)
    keep = minimal_generators(ring, gdeg, kernel, kdeg)
    return FPModule(ring, gdeg, [kernel[i] for i in keep])


def matlis_dual(M: FPModule) -> FPModule:
    """Hom_k(M, k) of a finite-length graded module."""
    return module_from_representation(representation(M).dual())
