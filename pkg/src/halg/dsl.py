"""Line-oriented input format for rings, modules and complexes.

    # comment
    ring R
    char 32003
    vars x:1 y:1
    ideal x*y
    end

    module M over R
    gens 0
    rels
    [x, y]          # one row per generator, one column per relation
    end

    complex K over R
    term -1 free 1
    term 0 free 0
    diff -1         # rows index the generators of term i+1
    [x+y]
    end

Top-level ``use KEY VALUE`` lines are directives (for example ``use C omega``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .complexes import ChainComplex, PerfectComplex
from .modules import DegreeError, FPModule, ModuleMap
from .ring import AlgebraError, GradedRing, NotPrimeError, default_char, format_poly, is_prime, parse_poly

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


class DSLError(Exception):
    def __init__(self, message, line, col=1):
        super().__init__("line %d, column %d: %s" % (line, col, message))
        self.line, self.col, self.message = line, col, message


@dataclass
class RingBlock:
    name: str
    char: int
    variables: list            # [(name, weight)]
    ideal: list                # poly dicts
    line: int = field(default=0, compare=False)

    def build(self) -> GradedRing:
        names = [n for n, _ in self.variables]
        weights = [w for _, w in self.variables]
        return GradedRing(names, weights, self.ideal, self.char, name=self.name)


@dataclass
class ModuleBlock:
    name: str
    ring: str
    gens: list
    rows: list                 # rows[i][k] = entry of generator i in relation k
    line: int = field(default=0, compare=False)

    def relations(self):
        ncols = len(self.rows[0]) if self.rows else 0
        return [{(i, e): c for i, row in enumerate(self.rows) for e, c in row[k].items()}
                for k in range(ncols)]


@dataclass
class ComplexBlock:
    name: str
    ring: str
    terms: dict                # i -> generator degrees
    diffs: dict                # i -> rows (rows index generators of term i+1)
    line: int = field(default=0, compare=False)


@dataclass
class InputDocument:
    rings: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    complexes: dict = field(default_factory=dict)
    directives: dict = field(default_factory=dict)
    _built: dict = field(default_factory=dict, compare=False, repr=False)

    def ring(self, name) -> GradedRing:
        key = ("ring", name)
        if key not in self._built:
            self._built[key] = self.rings[name].build()
        return self._built[key]

    def module(self, name) -> FPModule:
        key = ("module", name)
        if key not in self._built:
            b = self.modules[name]
            self._built[key] = FPModule(self.ring(b.ring), b.gens, b.relations(), name=name)
        return self._built[key]

    def complex(self, name) -> ChainComplex:
        key = ("complex", name)
        if key not in self._built:
            self._built[key] = _build_complex(self.complexes[name], self.ring(self.complexes[name].ring))
        return self._built[key]


def _build_complex(b: ComplexBlock, ring):
    terms = {i: FPModule.free(ring, d) for i, d in b.terms.items()}
    diffs = {}
    for i, rows in b.diffs.items():
        cols = [{(r, e): c for r, row in enumerate(rows) for e, c in row[k].items()}
                for k in range(terms[i].rank)]
        diffs[i] = ModuleMap(terms[i], terms[i + 1], cols)
        if not diffs[i].is_well_defined():
            raise DSLError("differential %d is not homogeneous for the term degrees" % i, b.line)
    X = PerfectComplex(ring, terms, diffs, name=b.name)
    if not X.check_d_squared():
        raise DSLError("d∘d is not zero in complex %s" % b.name, b.line)
    return X


# ---------------------------------------------------------------- parsing

def _ints(tokens, lineno, line, what):
    out = []
    for t in tokens:
        try:
            out.append(int(t))
        except ValueError:
            raise DSLError("%s must be an integer, got %r" % (what, t), lineno,
                           line.find(t) + 1) from None
    return out


def _poly(text, ring, lineno, col):
    try:
        return parse_poly(text, ring)
    except (ValueError, IndexError, TypeError) as exc:
        raise DSLError("bad polynomial %r: %s" % (text.strip(), exc), lineno, col) from None


def _row(text, ring, lineno):
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise DSLError("matrix row must be bracketed", lineno, 1)
    body = s[1:-1]
    if not body.strip():
        return []
    col = text.find("[") + 2
    out = []
    for piece in body.split(","):
        out.append(_poly(piece, ring, lineno, col))
        col += len(piece) + 1
    return out


def _strip(line):
    return line.split("#", 1)[0].rstrip()


def parse(text: str) -> InputDocument:
    doc = InputDocument()
    lines = text.splitlines()
    i = 0
    seen = set()

    def name_check(name, lineno, line):
        if not _NAME.match(name):
            raise DSLError("invalid name %r" % name, lineno, line.find(name) + 1)
        if name in seen:
            raise DSLError("duplicate name %r" % name, lineno, line.find(name) + 1)
        seen.add(name)

    while i < len(lines):
        lineno = i + 1
        line = _strip(lines[i])
        words = line.split()
        i += 1
        if not words:
            continue
        head = words[0]
        if head == "use":
            if len(words) != 3:
                raise DSLError("directive needs 'use KEY VALUE'", lineno)
            doc.directives[words[1]] = words[2]
            continue
        if head not in ("ring", "module", "complex"):
            raise DSLError("unexpected %r outside a block" % head, lineno, line.find(head) + 1)
        body = []
        while i < len(lines) and _strip(lines[i]).split()[:1] != ["end"]:
            body.append((i + 1, _strip(lines[i])))
            i += 1
        if i >= len(lines):
            raise DSLError("block %r is missing 'end'" % line, lineno)
        i += 1
        if head == "ring":
            if len(words) != 2:
                raise DSLError("expected 'ring NAME'", lineno)
            name_check(words[1], lineno, line)
            doc.rings[words[1]] = _parse_ring(words[1], lineno, body)
        else:
            if len(words) != 4 or words[2] != "over":
                raise DSLError("expected '%s NAME over RING'" % head, lineno)
            name_check(words[1], lineno, line)
            if words[3] not in doc.rings:
                raise DSLError("unknown ring %r" % words[3], lineno, line.rfind(words[3]) + 1)
            ring = doc.ring(words[3])
            if head == "module":
                blk = _parse_module(words[1], words[3], ring, lineno, body)
                doc.modules[blk.name] = blk
                try:
                    doc.module(blk.name)
                except DegreeError as exc:
                    raise DSLError(str(exc), lineno) from None
            else:
                blk = _parse_complex(words[1], words[3], ring, lineno, body)
                doc.complexes[blk.name] = blk
                try:
                    doc.complex(blk.name)
                except AlgebraError as exc:
                    raise DSLError(str(exc), lineno) from None
    return doc


def _parse_ring(name, lineno, body):
    char = default_char()
    variables, ideal_text = None, []
    for ln, line in body:
        words = line.split()
        if not words:
            continue
        if words[0] == "char":
            (char,) = _ints(words[1:2], ln, line, "characteristic")
            if not is_prime(char):
                raise DSLError("characteristic %d is not prime" % char, ln, line.find(words[1]) + 1)
        elif words[0] == "vars":
            variables = []
            for w in words[1:]:
                col = line.find(w) + 1
                if ":" not in w:
                    raise DSLError("variable needs 'name:weight'", ln, col)
                n, wt = w.split(":", 1)
                if not _NAME.match(n):
                    raise DSLError("invalid variable name %r" % n, ln, col)
                try:
                    wt = int(wt)
                except ValueError:
                    raise DSLError("weight must be an integer", ln, col) from None
                if wt <= 0:
                    raise DSLError("weight must be positive", ln, col)
                if any(n == v for v, _ in variables):
                    raise DSLError("duplicate variable %r" % n, ln, col)
                variables.append((n, wt))
        elif words[0] == "ideal":
            start = line.find("ideal") + 5
            ideal_text.append((ln, start, line[start:]))
        else:
            raise DSLError("unknown ring field %r" % words[0], ln, line.find(words[0]) + 1)
    if variables is None:
        variables = []
    scratch = GradedRing([n for n, _ in variables], [w for _, w in variables], (), char)
    ideal = []
    for ln, start, text in ideal_text:
        col = start + 1
        for piece in text.split(","):
            if piece.strip():
                lead = len(piece) - len(piece.lstrip())
                f = _poly(piece, scratch, ln, col + lead)
                if f:
                    ideal.append(f)
            col += len(piece) + 1
    blk = RingBlock(name, char, variables, ideal, lineno)
    try:
        blk.build()
    except (AlgebraError, NotPrimeError, ValueError) as exc:
        raise DSLError(str(exc), lineno) from None
    return blk


def _parse_module(name, ring_name, ring, lineno, body):
    gens, rows, in_rels = None, [], False
    for ln, line in body:
        words = line.split()
        if not words:
            continue
        if words[0] == "gens":
            gens = _ints(words[1:], ln, line, "generator degree")
            in_rels = False
        elif words[0] == "rels":
            in_rels = True
        elif in_rels and line.strip().startswith("["):
            rows.append(_row(line, ring, ln))
        else:
            raise DSLError("unknown module field %r" % words[0], ln, line.find(words[0]) + 1)
    if gens is None:
        raise DSLError("module %s has no 'gens' line" % name, lineno)
    if rows and len(rows) != len(gens):
        raise DSLError("relation matrix needs one row per generator (%d), got %d"
                       % (len(gens), len(rows)), lineno)
    if len({len(r) for r in rows}) > 1:
        raise DSLError("relation rows have different lengths", lineno)
    return ModuleBlock(name, ring_name, gens, rows, lineno)


def _parse_complex(name, ring_name, ring, lineno, body):
    terms, diffs, current = {}, {}, None
    for ln, line in body:
        words = line.split()
        if not words:
            continue
        if words[0] == "term":
            if len(words) < 3 or words[2] != "free":
                raise DSLError("expected 'term I free D1 D2 ...'", ln)
            (idx,) = _ints(words[1:2], ln, line, "term index")
            if idx in terms:
                raise DSLError("duplicate term %d" % idx, ln)
            terms[idx] = _ints(words[3:], ln, line, "generator degree")
            current = None
        elif words[0] == "diff":
            (current,) = _ints(words[1:2], ln, line, "differential index")
            diffs[current] = []
        elif current is not None and line.strip().startswith("["):
            diffs[current].append(_row(line, ring, ln))
        else:
            raise DSLError("unknown complex field %r" % words[0], ln, line.find(words[0]) + 1)
    for i, rows in diffs.items():
        if i not in terms or i + 1 not in terms:
            raise DSLError("differential %d needs terms %d and %d" % (i, i, i + 1), lineno)
        if len(rows) != len(terms[i + 1]) or any(len(r) != len(terms[i]) for r in rows):
            raise DSLError("differential %d must be a %dx%d matrix"
                           % (i, len(terms[i + 1]), len(terms[i])), lineno)
    return ComplexBlock(name, ring_name, terms, diffs, lineno)


# ---------------------------------------------------------------- emitting

def _emit_rows(rows, ring):
    return ["[%s]" % ", ".join(format_poly(f, ring) for f in row) for row in rows]


def emit_ring(b: RingBlock) -> list:
    ring = GradedRing([n for n, _ in b.variables], [w for _, w in b.variables], (), b.char)
    out = ["ring %s" % b.name, "char %d" % b.char]
    if b.variables:
        out.append("vars " + " ".join("%s:%d" % v for v in b.variables))
    if b.ideal:
        out.append("ideal " + ", ".join(format_poly(f, ring) for f in b.ideal))
    out.append("end")
    return out


def emit(doc: InputDocument) -> str:
    out = []
    for k, v in doc.directives.items():
        out.append("use %s %s" % (k, v))
    for b in doc.rings.values():
        out += emit_ring(b) + [""]
    for b in doc.modules.values():
        ring = doc.ring(b.ring)
        out += ["module %s over %s" % (b.name, b.ring), "gens " + " ".join(map(str, b.gens))]
        if b.rows and b.rows[0]:
            out += ["rels"] + _emit_rows(b.rows, ring)
        out += ["end", ""]
    for b in doc.complexes.values():
        ring = doc.ring(b.ring)
        out.append("complex %s over %s" % (b.name, b.ring))
        for i, d in sorted(b.terms.items()):
            out.append(("term %d free " % i + " ".join(map(str, d))).rstrip())
        for i, rows in sorted(b.diffs.items()):
            out += ["diff %d" % i] + _emit_rows(rows, ring)
        out += ["end", ""]
    return "\n".join(out).rstrip() + "\n"


def ring_block(ring: GradedRing, name: str) -> RingBlock:
    """A ring block for an existing ring (reduced Gröbner basis as ideal)."""
    return RingBlock(name, ring.char, list(zip(ring.names, ring.weights)),
                     [dict(g) for g in ring.gb])
