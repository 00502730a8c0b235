"""Polynomials over F_p, weighted grevlex, Buchberger, graded quotient rings.

Internally a polynomial is a dict ``{exponent tuple: coefficient}`` and a
vector in a free module is a dict ``{(position, exponent tuple): coefficient}``.
The public :class:`Polynomial` wraps the former.
"""

from __future__ import annotations

import heapq
import os
import re
from itertools import combinations
from math import comb

DEFAULT_CHAR = 32003


class AlgebraError(Exception):
    pass


class InhomogeneousError(AlgebraError):
    pass


class NotPrimeError(AlgebraError):
    pass


def default_char() -> int:
    return int(os.environ.get("HALG_DEFAULT_CHAR", DEFAULT_CHAR))


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------- monomials

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, assuming b divides a."""
    return tuple(x - y for x, y in zip(a, b))


def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def wdeg(exp, weights) -> int:
    return sum(e * w for e, w in zip(exp, weights))


class MonomialOrder:
    """Weighted graded reverse lexicographic order."""

    def __init__(self, weights):
        self.weights = tuple(weights)

    def key(self, exp):
        return (wdeg(exp, self.weights), tuple(-e for e in reversed(exp)))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.weights == other.weights

    def __hash__(self):
        return hash(self.weights)

    def __repr__(self):
        return "MonomialOrder(wgrevlex, weights=%s)" % (self.weights,)


def monomials_of_degree(weights, d):
    """All exponent vectors of weighted degree d (deterministic order)."""
    n = len(weights)
    out = []

    def rec(i, rem, cur):
        if i == n - 1:
            if rem % weights[i] == 0:
                out.append(tuple(cur + [rem // weights[i]]))
            return
        for e in range(rem // weights[i], -1, -1):
            rec(i + 1, rem - e * weights[i], cur + [e])

    if n == 0:
        return [()] if d == 0 else []
    if d < 0:
        return []
    rec(0, d, [])
    return out


# ------------------------------------------------------ dict polynomial ops

def padd(f, g, p, c=1):
    """f + c*g."""
    h = dict(f)
    for m, a in g.items():
        v = (h.get(m, 0) + c * a) % p
        if v:
            h[m] = v
        else:
            h.pop(m, None)
    return h


def pmul(f, g, p):
    h: dict = {}
    for m1, a in f.items():
        for m2, b in g.items():
            m = mono_mul(m1, m2)
            v = (h.get(m, 0) + a * b) % p
            if v:
                h[m] = v
            else:
                del h[m]
    return h


def pscale(f, c, p):
    c %= p
    if c == 0:
        return {}
    return {m: a * c % p for m, a in f.items()}


def pmono(f, mono, c, p):
    c %= p
    if c == 0:
        return {}
    return {mono_mul(m, mono): a * c % p for m, a in f.items()}


def ppow(f, e, p, n):
    out = {(0,) * n: 1}
    for _ in range(e):
        out = pmul(out, f, p)
    return out


def pdegrees(f, weights):
    return {wdeg(m, weights) for m in f}


# ------------------------------------------------------ module Gröbner bases

class _Neg:
    """Reverses comparison so heapq pops the largest key first."""
    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k


class ModuleGB:
    """Reduced Gröbner basis of a homogeneous submodule of a free module.

    ``gdeg`` are the degrees of the free generators; ``block`` (if > 0) makes
    the first ``block`` positions dominate every other position, which turns
    the basis into an elimination basis for the remaining positions.
    ``ideal`` is a Gröbner basis of an ideal I (poly dicts); the submodule
    then implicitly contains I times the free module.
    """

    def __init__(self, vecs, gdeg, weights, p, block=0, ideal=()):
        self.gdeg = tuple(gdeg)
        self.weights = tuple(weights)
        self.p = p
        self.block = block
        self.nvars = len(weights)
        self._keys = {}
        self._build(list(vecs), list(ideal))

    # term order
    def tkey(self, t):
        k = self._keys.get(t)
        if k is None:
            pos, exp = t
            k = self._keys[t] = (pos < self.block, wdeg(exp, self.weights) + self.gdeg[pos],
                                 tuple(-e for e in reversed(exp)), -pos)
        return k

    def lead(self, v):
        return max(v, key=self.tkey)

    def vdeg(self, v):
        pos, exp = next(iter(v))
        return wdeg(exp, self.weights) + self.gdeg[pos]

    def _monic(self, v):
        lt = self.lead(v)
        c = v[lt]
        if c != 1:
            v = {t: a * pow(c, self.p - 2, self.p) % self.p for t, a in v.items()}
        return v, lt

    def _find_divisor(self, pos, exp):
        for e, idx in self.by_pos.get(pos, ()):
            if divides(e, exp):
                return idx
        return None

    def reduce(self, v, full=True):
        """Normal form of v with respect to the current basis."""
        p = self.p
        tkey = self.tkey
        v = dict(v)
        heap = [(_Neg(tkey(t)), t) for t in v]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, lt = heapq.heappop(heap)
            c = v.pop(lt, None)
            if c is None:
                continue
            idx = self._find_divisor(lt[0], lt[1])
            if idx is None:
                if not full:
                    v[lt] = c
                    rem.update(v)
                    return rem
                rem[lt] = c
                continue
            g = self.basis[idx]
            mono = mono_div(lt[1], self.leads[idx][1])
            for (pos, e), a in g.items():
                t = (pos, mono_mul(e, mono))
                if t == lt:
                    continue
                old = v.get(t)
                val = ((old or 0) - c * a) % p
                if val:
                    v[t] = val
                    if old is None:
                        heapq.heappush(heap, (_Neg(tkey(t)), t))
                elif old is not None:
                    del v[t]
        return rem

    def contains(self, v) -> bool:
        return not self.reduce(v, full=False)

    def _add(self, v, lt, ideal=False):
        idx = len(self.basis)
        self.basis.append(v)
        self.leads.append(lt)
        self.is_ideal.append(ideal)
        self.by_pos.setdefault(lt[0], []).append((lt[1], idx))
        return idx

    def _pair_deg(self, lcm_t):
        pos, exp = lcm_t
        return wdeg(exp, self.weights) + self.gdeg[pos]

    def _build(self, vecs, ideal):
        p = self.p
        self.basis, self.leads, self.is_ideal, self.by_pos = [], [], [], {}
        self._counter = 0
        rank = len(self.gdeg)
        for pos in range(rank):
            for g in ideal:
                v = {(pos, e): c for e, c in g.items()}
                v, lt = self._monic(v)
                self._add(v, lt, ideal=True)
        # pairs: pos -> {(i, j): lcm exponent}; heap of (deg, counter, pos, i, j)
        self.pairs = {}
        heap = []
        pending = []
        for v in vecs:
            v = {t: c % p for t, c in v.items() if c % p}
            if v:
                pending.append(v)
        pending.sort(key=self.vdeg)
        # interleave input generators with pairs by degree
        inputs = [(self.vdeg(v), i, v) for i, v in enumerate(pending)]
        ii = 0
        while True:
            next_in = inputs[ii][0] if ii < len(inputs) else None
            while heap and (heap[0][3], heap[0][4]) not in self.pairs[heap[0][2]]:
                heapq.heappop(heap)
            next_pair = heap[0][0] if heap else None
            if next_in is None and next_pair is None:
                break
            if next_pair is None or (next_in is not None and next_in <= next_pair):
                h = self.reduce(inputs[ii][2])
                ii += 1
            else:
                _, _, pos, i, j = heapq.heappop(heap)
                del self.pairs[pos][(i, j)]
                h = self.reduce(self._spoly(i, j))
            if h:
                h, lt = self._monic(h)
                idx = self._add(h, lt)
                self._update(idx, heap)
        self._interreduce()

    def _spoly(self, i, j):
        p = self.p
        li, lj = self.leads[i], self.leads[j]
        l = mono_lcm(li[1], lj[1])
        mi, mj = mono_div(l, li[1]), mono_div(l, lj[1])
        s = {}
        for (pos, e), a in self.basis[i].items():
            s[(pos, mono_mul(e, mi))] = a
        for (pos, e), a in self.basis[j].items():
            t = (pos, mono_mul(e, mj))
            val = (s.get(t, 0) - a) % p
            if val:
                s[t] = val
            else:
                s.pop(t, None)
        return s

    def _update(self, h, heap):
        pos, eh = self.leads[h]
        pairs = self.pairs.setdefault(pos, {})
        # chain criterion on old pairs
        for (i, j), lij in list(pairs.items()):
            if not divides(eh, lij):
                continue
            if mono_lcm(self.leads[i][1], eh) != lij and mono_lcm(self.leads[j][1], eh) != lij:
                del pairs[(i, j)]
        cands = []
        for e, i in self.by_pos.get(pos, ()):
            if i == h:
                continue
            cands.append((mono_lcm(e, eh), i))
        kept = []
        seen = set()
        for l, i in sorted(cands, key=lambda c: (wdeg(c[0], self.weights), c[1])):
            if l in seen:
                continue
            if any(divides(k, l) for k, _ in kept):
                continue
            seen.add(l)
            kept.append((l, i))
        for l, i in kept:
            pairs[(i, h)] = l
            self._counter += 1
            heapq.heappush(heap, (self._pair_deg((pos, l)), self._counter, pos, i, h))

    def _interreduce(self):
        order = sorted(range(len(self.basis)), key=lambda i: self.tkey(self.leads[i]))
        keep = []
        kept_by_pos = {}
        for i in order:
            pos, e = self.leads[i]
            same = kept_by_pos.setdefault(pos, [])
            if any(divides(f, e) for f in same):
                continue
            same.append(e)
            keep.append(i)
        basis = [self.basis[i] for i in keep]
        leads = [self.leads[i] for i in keep]
        self.basis, self.leads, self.by_pos = basis, leads, {}
        for idx, lt in enumerate(leads):
            self.by_pos.setdefault(lt[0], []).append((lt[1], idx))
        for idx in range(len(basis)):
            g = basis[idx]
            lt = leads[idx]
            tail = {t: c for t, c in g.items() if t != lt}
            # tails are reduced against everything (lead of g itself cannot divide them)
            tail = self.reduce(tail)
            tail[lt] = 1
            basis[idx] = tail
        order = sorted(range(len(basis)), key=lambda i: self.tkey(leads[i]), reverse=True)
        self.basis = [basis[i] for i in order]
        self.leads = [leads[i] for i in order]
        self.by_pos = {}
        for idx, lt in enumerate(self.leads):
            self.by_pos.setdefault(lt[0], []).append((lt[1], idx))
        del self.pairs

    def standard_monomial_count(self, degree):
        """Dimension of the degree-d part of (free module)/(submodule)."""
        count = 0
        for pos, g in enumerate(self.gdeg):
            leads = [e for e, _ in self.by_pos.get(pos, ())]
            for m in monomials_of_degree(self.weights, degree - g):
                if not any(divides(e, m) for e in leads):
                    count += 1
        return count


# ------------------------------------------------------------ polynomials

class Polynomial:
    """Immutable polynomial in the ambient ring of a :class:`GradedRing`."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        p = ring.char
        self._terms = {tuple(m): c % p for m, c in (terms or {}).items() if c % p}

    @property
    def terms(self):
        """Terms as (exponent, coefficient) pairs, strictly descending."""
        key = self.ring.order.key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def as_dict(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def is_homogeneous(self):
        return len(pdegrees(self._terms, self.ring.weights)) <= 1

    def degree(self):
        if not self._terms:
            return None
        return max(pdegrees(self._terms, self.ring.weights))

    def leading_monomial(self):
        return self.terms[0][0] if self._terms else None

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other._terms
        if isinstance(other, int):
            return {(0,) * self.ring.nvars: other % self.ring.char} if other % self.ring.char else {}
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial(self.ring, padd(self._terms, o, self.ring.char))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, pscale(self._terms, -1, self.ring.char))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial(self.ring, padd(self._terms, o, self.ring.char, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial(self.ring, pmul(self._terms, o, self.ring.char))

    __rmul__ = __mul__

    def __pow__(self, e):
        return Polynomial(self.ring, ppow(self._terms, e, self.ring.char, self.ring.nvars))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
            return self._terms == other
        return isinstance(other, Polynomial) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        return format_poly(self._terms, self.ring)

    def __repr__(self):
        return "Polynomial(%s)" % self


def format_poly(terms, ring) -> str:
    if not terms:
        return "0"
    p = ring.char
    key = ring.order.key
    out = []
    for m, c in sorted(terms.items(), key=lambda t: key(t[0]), reverse=True):
        c = c % p
        neg = c > p // 2
        a = p - c if neg else c
        factors = []
        for name, e in zip(ring.names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append("%s^%d" % (name, e))
        if not factors:
            body = str(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = "%d*%s" % (a, "*".join(factors))
        if not out:
            out.append("-" + body if neg else body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def parse_poly(text: str, ring) -> dict:
    """Parse ASCII polynomial text (``^ * + -``, parentheses, integers)."""
    toks = []
    for num, name, op in _TOKEN.findall(text):
        if num:
            toks.append(("num", int(num)))
        elif name:
            toks.append(("name", name))
        elif op.strip():
            toks.append(("op", op))
    pos = [0]
    p, n = ring.char, ring.nvars
    index = {nm: i for i, nm in enumerate(ring.names)}

    def peek():
        return toks[pos[0]] if pos[0] < len(toks) else (None, None)

    def take():
        t = peek()
        pos[0] += 1
        return t

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = pscale(term(), sign, p)
        while peek() in (("op", "+"), ("op", "-")):
            s = 1 if take()[1] == "+" else -1
            acc = padd(acc, term(), p, s)
        return acc

    def term():
        acc = power()
        while peek() == ("op", "*"):
            take()
            acc = pmul(acc, power(), p)
        return acc

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, e = take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer in %r" % text)
            base = ppow(base, e, p, n)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return {(0,) * n: val % p} if val % p else {}
        if kind == "name":
            if val not in index:
                raise ValueError("unknown variable %r" % val)
            e = [0] * n
            e[index[val]] = 1
            return {tuple(e): 1}
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses in %r" % text)
            return inner
        if (kind, val) == ("op", "-"):
            return pscale(atom(), -1, p)
        raise ValueError("unexpected token %r in %r" % (val, text))

    if not toks:
        raise ValueError("empty polynomial")
    f = expr()
    if pos[0] != len(toks):
        raise ValueError("trailing input in %r" % text)
    return f


# -------------------------------------------------------------- the ring

def groebner_basis(gens, order: MonomialOrder, char: int):
    """Reduced Gröbner basis (list of poly dicts) of a homogeneous ideal."""
    if not is_prime(char):
        raise NotPrimeError("characteristic %d is not prime" % char)
    vecs = []
    for g in gens:
        g = {m: c % char for m, c in g.items() if c % char}
        if len(pdegrees(g, order.weights)) > 1:
            raise InhomogeneousError("generator is not weighted-homogeneous")
        if g:
            vecs.append({(0, m): c for m, c in g.items()})
    gb = ModuleGB(vecs, (0,), order.weights, char)
    return [{e: c for (_, e), c in v.items()} for v in gb.basis]


class GradedRing:
    """A quotient P/I of a weighted polynomial ring over F_p."""

    def __init__(self, names, weights, ideal=(), char=None, name=None):
        char = default_char() if char is None else char
        if not is_prime(char):
            raise NotPrimeError("characteristic %d is not prime" % char)
        if len(names) != len(weights):
            raise ValueError("names and weights differ in length")
        if any(w <= 0 for w in weights):
            raise ValueError("weight must be positive")
        self.char = char
        self.names = tuple(names)
        self.weights = tuple(weights)
        self.nvars = len(names)
        self.order = MonomialOrder(weights)
        self.name = name
        gens = []
        for g in ideal:
            if isinstance(g, Polynomial):
                g = g.as_dict()
            elif isinstance(g, str):
                g = parse_poly(g, self)
            gens.append(g)
        self.ideal_gens = [g for g in gens if g]
        self.gb = groebner_basis(self.ideal_gens, self.order, char)
        self._gb_engine = ModuleGB([{(0, m): c for m, c in g.items()} for g in self.gb],
                                   (0,), self.weights, char) if self.gb else None
        self.dim_cache = None
        self._cache = {}

    # construction helpers
    def ambient(self):
        if not self.gb:
            return self
        return GradedRing(self.names, self.weights, (), self.char)

    def quotient(self, extra):
        extra = [g.as_dict() if isinstance(g, Polynomial) else g for g in extra]
        return GradedRing(self.names, self.weights, list(self.gb) + list(extra), self.char)

    def poly(self, x) -> Polynomial:
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, str):
            return Polynomial(self, parse_poly(x, self))
        if isinstance(x, int):
            return Polynomial(self, {(0,) * self.nvars: x})
        return Polynomial(self, x)

    def var(self, i) -> Polynomial:
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def one(self):
        return self.poly(1)

    # arithmetic in the quotient
    def nf_dict(self, f):
        if not self.gb or not f:
            return dict(f)
        v = self._gb_engine.reduce({(0, m): c for m, c in f.items()})
        return {e: c for (_, e), c in v.items()}

    def normal_form(self, f) -> Polynomial:
        f = self.poly(f)
        return Polynomial(self, self.nf_dict(f.as_dict()))

    def contains(self, f) -> bool:
        return not self.nf_dict(self.poly(f).as_dict())

    def lead_monomials(self):
        key = self.order.key
        return [max(g, key=key) for g in self.gb]

    def k_basis(self, degree):
        leads = self.lead_monomials()
        return [m for m in monomials_of_degree(self.weights, degree)
                if not any(divides(l, m) for l in leads)]

    def hilbert_function(self, cutoff):
        return [len(self.k_basis(d)) for d in range(cutoff + 1)]

    def hilbert_series(self, cutoff):
        return HilbertSeries.of_ring(self, cutoff)

    def krull_dim(self):
        if self.dim_cache is None:
            self.dim_cache = hilbert_numerator_ring(self).dimension()
        return self.dim_cache

    def is_artinian(self):
        return self.krull_dim() <= 0

    def top_degree(self):
        """Largest degree with a nonzero component (Artinian rings only)."""
        if not self.is_artinian():
            return None
        poly = HilbertSeries.of_ring(self, 0).polynomial_form()
        return max(poly) if poly else None

    def same_ring(self, other) -> bool:
        return (self is other) or (
            isinstance(other, GradedRing) and self.char == other.char and self.names == other.names
            and self.weights == other.weights and self.gb == other.gb)

    def __eq__(self, other):
        return self.same_ring(other)

    def __hash__(self):
        return hash((self.char, self.names, self.weights, len(self.gb)))

    def describe(self):
        vars_ = " ".join("%s:%d" % (n, w) for n, w in zip(self.names, self.weights))
        ideal = ", ".join(format_poly(g, self) for g in self.gb)
        return "F_%d[%s]/(%s)" % (self.char, vars_, ideal)

    def __repr__(self):
        return "GradedRing(%s)" % self.describe()


# ----------------------------------------------------------- Hilbert series

def _min_monomials(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(divides(h, g) for h in out):
            out.append(g)
    return out


def monomial_ideal_numerator(gens, weights, _memo=None):
    """K(t) with HS(P/J) = K(t)/prod(1 - t^w) for a monomial ideal J."""
    if _memo is None:
        _memo = {}
    gens = tuple(sorted(_min_monomials(gens)))
    if gens in _memo:
        return _memo[gens]
    if not gens:
        res = {0: 1}
    elif all(sum(1 for e in g if e) == 1 for g in gens):
        # pure powers of distinct variables: product of (1 - t^(w*e))
        res = {0: 1}
        for g in gens:
            i = next(k for k, e in enumerate(g) if e)
            d = g[i] * weights[i]
            nxt = dict(res)
            for k, c in res.items():
                nxt[k + d] = nxt.get(k + d, 0) - c
            res = {k: c for k, c in nxt.items() if c}
    else:
        *rest, last = gens
        a = monomial_ideal_numerator(rest, weights, _memo)
        colon = [tuple(max(x - y, 0) for x, y in zip(g, last)) for g in rest]
        b = monomial_ideal_numerator(colon, weights, _memo)
        d = wdeg(last, weights)
        res = dict(a)
        for k, c in b.items():
            res[k + d] = res.get(k + d, 0) - c
        res = {k: c for k, c in res.items() if c}
    _memo[gens] = res
    return res


class HilbertNumerator:
    """Rational Hilbert series numerator(t) / prod_i (1 - t^{w_i})."""

    def __init__(self, numerator, weights):
        self.numerator = {k: c for k, c in numerator.items() if c}
        self.weights = tuple(weights)

    def dimension(self):
        """Pole order at t = 1 (-1 for the zero series)."""
        if not self.numerator:
            return -1
        lo = min(self.numerator)
        coeffs = [self.numerator.get(k, 0) for k in range(lo, max(self.numerator) + 1)]
        mult = 0
        while coeffs and sum(coeffs) == 0:
            # divide by (1 - t)
            q, acc = [], 0
            for c in coeffs[:-1]:
                acc += c
                q.append(acc)
            coeffs = q
            mult += 1
        return len(self.weights) - mult

    def series(self, cutoff, start=None):
        """Coefficients h_start..h_cutoff of the power series expansion."""
        lo = min(self.numerator) if self.numerator else 0
        start = lo if start is None else start
        size = cutoff - lo + 1
        if size <= 0:
            return []
        h = [0] * size
        for k, c in self.numerator.items():
            if k - lo < size:
                h[k - lo] += c
        for w in self.weights:
            for i in range(w, size):
                h[i] += h[i - w]
        return [h[d - lo] if d >= lo else 0 for d in range(start, cutoff + 1)]

    def __repr__(self):
        return "HilbertNumerator(%s / prod(1-t^%s))" % (self.numerator, self.weights)


def hilbert_numerator_ring(ring: GradedRing) -> HilbertNumerator:
    leads = ring.lead_monomials()
    return HilbertNumerator(monomial_ideal_numerator(leads, ring.weights), ring.weights)


def hilbert_numerator_module(gb: ModuleGB) -> HilbertNumerator:
    """Numerator of the Hilbert series of F / U for a (TOP-ordered) basis."""
    total: dict = {}
    for pos, g in enumerate(gb.gdeg):
        leads = [e for e, _ in gb.by_pos.get(pos, ())]
        num = monomial_ideal_numerator(leads, gb.weights)
        for k, c in num.items():
            total[k + g] = total.get(k + g, 0) + c
    return HilbertNumerator(total, gb.weights)


class HilbertSeries:
    """Truncated Hilbert function plus the rational form."""

    def __init__(self, coefficients, numerator: HilbertNumerator, start=0):
        self.coefficients = list(coefficients)
        self.start = start
        self.rational = numerator

    @classmethod
    def of_ring(cls, ring, cutoff):
        num = hilbert_numerator_ring(ring)
        return cls(num.series(cutoff, start=0), num, 0)

    def polynomial_form(self):
        """Series as a finite polynomial when the ring is Artinian, else None."""
        if self.rational.dimension() > 0:
            return None
        num = self.rational
        big = max(num.numerator, default=0) + 1
        coeffs = num.series(big, start=min(num.numerator, default=0))
        lo = min(num.numerator, default=0)
        return {lo + i: c for i, c in enumerate(coeffs) if c}

    def __getitem__(self, d):
        return self.coefficients[d - self.start]

    def __len__(self):
        return len(self.coefficients)

    def __repr__(self):
        return "HilbertSeries(%s, %r)" % (self.coefficients, self.rational)


def leading_term_dimension(ring: GradedRing) -> int:
    """Krull dimension from the standard-monomial cones of in(I)."""
    leads = ring.lead_monomials()
    n = ring.nvars
    for size in range(n, -1, -1):
        for U in combinations(range(n), size):
            Us = set(U)
            if not any(all(i in Us for i, e in enumerate(l) if e) for l in leads):
                return size
    return -1


def binomial(n, k):
    return comb(n, k) if 0 <= k <= n else 0
