"""Command-line front end: ``halg SUBCOMMAND FILE [options]``.

The JSON report goes to stdout, a one-line summary to stderr.
Exit status: 0 when every verification passed, 2 when a refutation was
found, 1 on errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import dsl
from .complexes import PerfectComplex, koszul
from .idealization import idealize, reiten_check, triangle_10r
from .invariants import (canonical_module, depth_module, ext_module, find_sop, is_cm,
                         krull_dim, profile, resolution, residue_field)
from .levels import (SubcategoryDescriptor, default_corpus, level_certificate,
                     verify_main_inequality)
from .modules import FPModule
from .ring import AlgebraError, GradedRing, format_poly, leading_term_dimension
from .semidualizing import gc_dimension, is_semidualizing, is_totally_C_reflexive

COMMANDS = ("gb", "profile", "res", "ext", "depth", "dim", "semidualizing-check", "gc-check",
            "gc-dim", "koszul", "level-bound", "idealize", "verify-reiten", "verify-triangle",
            "verify-main")


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def render(report: dict) -> str:
    return json.dumps(_jsonable(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ------------------------------------------------------------ context

class Context:
    def __init__(self, doc: dsl.InputDocument, args):
        self.doc, self.args = doc, args

    def ring_name(self):
        name = self.args.ring or self.doc.directives.get("ring")
        if name is None:
            if len(self.doc.rings) != 1:
                raise UsageError("several rings in the input; pass --ring")
            name = next(iter(self.doc.rings))
        if name not in self.doc.rings:
            raise UsageError("unknown ring %r" % name)
        return name

    @property
    def ring(self) -> GradedRing:
        return self.doc.ring(self.ring_name())

    def bound(self):
        return self.args.bound if self.args.bound is not None else 2 * krull_dim(self.ring) + 4

    def module(self, spec, default=None) -> FPModule:
        spec = spec or default
        if spec is None:
            raise UsageError("missing --module")
        R = self.ring
        if spec == "R":
            return FPModule.free(R, (0,))
        if spec == "k":
            return residue_field(R)
        if spec == "omega":
            return canonical_module(R)
        if spec not in self.doc.modules:
            raise UsageError("unknown module %r" % spec)
        if self.doc.modules[spec].ring != self.ring_name():
            raise UsageError("module %r is over another ring" % spec)
        return self.doc.module(spec)

    def C(self):
        default = self.doc.directives.get("C") or ("omega" if is_cm(self.ring) else "R")
        return self.module(self.args.C, default)


def _bool_status(ok):
    return "passed" if ok else "refuted"


# ------------------------------------------------------------ commands

def cmd_gb(ctx):
    R = ctx.ring
    basis = [format_poly(g, R) for g in R.gb]
    return {"basis": basis, "ring": R.describe(), "ambient": R.ambient().describe()}, "passed"


def cmd_profile(ctx):
    R = ctx.ring
    pr = profile(R)
    out = pr.as_dict()
    if pr.is_cm:
        w = canonical_module(R)
        out["omega"] = {"gen_degrees": list(w.gen_degrees), "relations": len(w.rels)}
    return out, "passed"


def cmd_res(ctx):
    M = ctx.module(ctx.args.module, "k")
    length = ctx.args.length if ctx.args.length is not None else 4
    res = resolution(M, length)
    n = min(length, res.length_computed) + 1
    return {"betti": res.betti()[:n], "graded_betti": res.graded_betti()[:n],
            "d_squared_zero": res.check_d_squared(), "minimal": res.is_minimal(),
            "complete": res.complete, "length": length}, "passed"


def cmd_ext(ctx):
    M = ctx.module(ctx.args.module, "k")
    N = ctx.module(ctx.args.target, "R")
    length = ctx.args.length if ctx.args.length is not None else 3
    cutoff = ctx.args.cutoff if ctx.args.cutoff is not None else 6
    out = {}
    for i in range(length + 1):
        E = ext_module(i, M, N)
        out[i] = {"zero": E.is_zero(), "gen_degrees": list(E.gen_degrees),
                  "dim": E.dim() if not E.is_zero() else -1}
        if not E.is_zero() and E.gen_degrees:
            lo = min(E.gen_degrees)
            out[i]["hilbert_function"] = E.hilbert_function(lo, lo + cutoff)
            out[i]["hilbert_start"] = lo
    return {"ext": out, "length": length}, "passed"


def cmd_depth(ctx):
    M = ctx.module(ctx.args.module, "R")
    return {"depth": depth_module(M), "dim": M.dim()}, "passed"


def cmd_dim(ctx):
    R = ctx.ring
    out = {"dim": krull_dim(R), "hilbert_pole_order": R.krull_dim(),
           "lead_term_dim": leading_term_dimension(R)}
    if ctx.args.module:
        out["module_dim"] = ctx.module(ctx.args.module).dim()
    return out, "passed"


def cmd_semidualizing(ctx):
    rep = is_semidualizing(ctx.C(), ctx.bound())
    return rep.as_dict(), _bool_status(rep.ok)


def cmd_gc_check(ctx):
    C = ctx.C()
    bound = ctx.bound()
    rep = is_totally_C_reflexive(ctx.module(ctx.args.module), C, bound)
    return rep.as_dict(), _bool_status(rep.ok)


def cmd_gc_dim(ctx):
    res = gc_dimension(ctx.module(ctx.args.module), ctx.C(), ctx.bound())
    return res.as_dict(), "passed" if res.determined else "refuted"


def _elements(ctx):
    R = ctx.ring
    if ctx.args.elements:
        return [R.poly(e.strip()) for e in ctx.args.elements.split(",") if e.strip()]
    return find_sop(R)


def cmd_koszul(ctx):
    R = ctx.ring
    elems = _elements(ctx)
    K = koszul(elems, R)
    homology = {i: K.homology(i).total_length() if K.homology(i).dim() <= 0 else "infinite"
                for i in sorted(K.terms)}
    sub = SubcategoryDescriptor.for_module(ctx.C(), ctx.bound())
    cert = level_certificate(K, sub)
    return {"elements": [str(f) for f in elems], "ranks": K.ranks(), "homology_length": homology,
            "level": cert.as_dict()}, "passed"


def cmd_level_bound(ctx):
    R = ctx.ring
    sub = SubcategoryDescriptor.for_module(ctx.C(), ctx.bound())
    if ctx.args.complex:
        if ctx.args.complex not in ctx.doc.complexes:
            raise UsageError("unknown complex %r" % ctx.args.complex)
        corpus = [(ctx.args.complex, ctx.doc.complex(ctx.args.complex))]
    else:
        corpus = default_corpus(R)
    out = {}
    ok = True
    for name, X in corpus:
        cert = level_certificate(X, sub)
        out[name] = cert.as_dict()
        ok = ok and cert.lower.value <= cert.upper.value
    return {"certificates": out}, _bool_status(ok)


def _pres(ctx):
    return idealize(ctx.ring, ctx.C(), ctx.args.cutoff if ctx.args.cutoff is not None else 12)


def cmd_idealize(ctx):
    pres = _pres(ctx)
    block = dsl.ring_block(pres.total, ctx.ring_name() + "_ideal")
    out = pres.as_dict()
    out["dsl"] = "\n".join(dsl.emit_ring(block))
    return out, _bool_status(pres.ok)


def cmd_reiten(ctx):
    rep = reiten_check(ctx.ring, ctx.C(), _pres(ctx))
    return rep.as_dict(), _bool_status(rep.matches)


def cmd_triangle(ctx):
    pres = _pres(ctx)
    S = pres.total
    out = {"S": triangle_10r(PerfectComplex(S, {0: FPModule.free(S, (0,))}), pres)}
    if is_cm(S) and krull_dim(S) > 0:
        sop = find_sop(S)
        out["K(%s)" % ", ".join(str(f) for f in sop)] = triangle_10r(koszul(sop, S), pres)
    ok = all(v["verified"] for v in out.values())
    return {"complexes": out}, _bool_status(ok)


def cmd_main(ctx):
    rep = verify_main_inequality(ctx.ring, ctx.C(), bound=ctx.bound())
    status = "passed" if rep.holds else "refuted"
    return rep.as_dict(), status


HANDLERS = {"gb": cmd_gb, "profile": cmd_profile, "res": cmd_res, "ext": cmd_ext,
            "depth": cmd_depth, "dim": cmd_dim, "semidualizing-check": cmd_semidualizing,
            "gc-check": cmd_gc_check, "gc-dim": cmd_gc_dim, "koszul": cmd_koszul,
            "level-bound": cmd_level_bound, "idealize": cmd_idealize,
            "verify-reiten": cmd_reiten, "verify-triangle": cmd_triangle,
            "verify-main": cmd_main}


# ------------------------------------------------------------ entry points

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors share exit status 1 with every other error
        self.print_usage(sys.stderr)
        self.exit(1, "halg: error: %s\n" % message)


def build_parser():
    ap = _Parser(prog="halg", description="graded homological algebra over F_p")
    ap.add_argument("command", help=", ".join(COMMANDS))
    ap.add_argument("file", help="input document ('-' for stdin)")
    ap.add_argument("--ring")
    ap.add_argument("--module", help="module name, or R, k, omega")
    ap.add_argument("--target", help="second module for ext (default R)")
    ap.add_argument("--C", dest="C", help="semidualizing module (default omega on CM rings, else R)")
    ap.add_argument("--complex")
    ap.add_argument("--elements", help="comma-separated Koszul elements (default: an s.o.p.)")
    ap.add_argument("--bound", type=int)
    ap.add_argument("--cutoff", type=int)
    ap.add_argument("--length", type=int)
    ap.add_argument("--timing", action="store_true", help="include wall time in the report")
    return ap


def run(command: str, text: str, args) -> tuple[dict, int]:
    """Report dict and exit code for one invocation."""
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    report = {"command": command, "input_digest": digest, "warnings": []}
    start = time.perf_counter()
    try:
        if command not in HANDLERS:
            raise UsageError("unknown subcommand %r" % command)
        ctx = Context(dsl.parse(text), args)
        result, status = HANDLERS[command](ctx)
        report["result"] = result
        report["status"] = status
        if command in ("semidualizing-check", "gc-check", "gc-dim", "koszul", "level-bound",
                       "verify-main"):
            report["bound"] = ctx.bound()
        code = 0 if status == "passed" else 2
    except (dsl.DSLError, UsageError, AlgebraError, ValueError) as exc:
        report["status"] = "error"
        report["error"] = "%s: %s" % (type(exc).__name__, exc)
        code = 1
    report["wall_time"] = round(time.perf_counter() - start, 3) if args.timing else None
    return report, code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    except OSError as exc:
        print("halg: %s" % exc, file=sys.stderr)
        return 1
    report, code = run(args.command, text, args)
    sys.stdout.write(render(report))
    summary = report.get("error") or report["status"]
    print("halg %s: %s" % (args.command, summary), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
