"""
Command-line front end.

    nla validate FILE
    nla analyze FILE [--json]
    nla normalize FILE [--strict]
    nla generate --family I|II --n N [-o FILE]
    nla fuzz FILE --iters K --seed S [--kind full|triangular|identity]

Exit status: 0 on success, 1 for bad input or an unmet precondition, 2 when
an internal consistency check fails.  NLA_COLOR=0 turns styling off.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field, asdict
from typing import Optional

from .algebra import validate
from .dsl import parse
from .errors import NilcplxError, UserError, InternalError
from .families import gen_family, FuzzPlan, fuzz_transform
from .maxn import admissible_normalize, strictly_admissible, structure_report
from .series import classify

__all__ = ["AnalysisReport", "analyze", "invariants", "run_fuzz", "main"]


@dataclass
class AnalysisReport:
    name: Optional[str]
    n: int
    valid: bool
    integrable: bool
    jacobi_ok: bool
    nu_g: int
    nu_J: Optional[int]
    mu_J: Optional[int]
    nilpotent_J: bool
    maxn: bool
    dpt: Optional[list]
    dims: dict
    real_dims: dict
    b1: int
    bounds_ok: Optional[bool]
    algebraic_dimension: Optional[int]
    case_tag: Optional[str]
    coframe: str
    warnings: list = field(default_factory=list)

    def to_json(self):
        return json.dumps(asdict(self), indent=2, ensure_ascii=False) + "\n"


def analyze(alg):
    cl = classify(alg)
    rep = structure_report(alg)
    dims = cl.dims()
    # a, h and W are counted over C with respect to J; their real dimensions double
    real = {key: [2 * x for x in dims[key]] for key in ("W", "a", "h")}
    warnings = []
    if not cl.nilpotent_J:
        warnings.append("J is not nilpotent")
    elif not cl.maxn:
        warnings.append("nu(J) < n: only b1 and dimensions are reported")
    elif not rep.full:
        warnings.append("bounds and V^2 basis need nu(g) = 3 and n >= 5")
    return AnalysisReport(
        name=alg.name, n=alg.n, valid=True, integrable=True, jacobi_ok=True,
        nu_g=cl.nu_g, nu_J=cl.nu_J, mu_J=cl.mu_J, nilpotent_J=cl.nilpotent_J, maxn=cl.maxn,
        dpt=sorted(rep.dpt) if rep.dpt is not None else None, dims=dims, real_dims=real,
        b1=rep.b1, bounds_ok=rep.bounds_ok,
        algebraic_dimension=rep.algebraic_dimension if cl.maxn else None,
        case_tag=rep.case_tag, coframe=alg.canonical_text(), warnings=warnings)


def invariants(alg):
    """Coframe-independent data compared by the fuzzer."""
    cl = classify(alg)
    out = {"nu_g": cl.nu_g, "nu_J": cl.nu_J, "mu_J": cl.mu_J, "dims": cl.dims()}
    rep = structure_report(alg)
    out["b1"] = rep.b1
    out["dpt"] = sorted(rep.dpt) if rep.dpt is not None else None
    return out


def run_fuzz(alg, plan, compare=None):
    """Compare invariants of every fuzzed presentation with the input's.

    Returns (passed, total, first_divergence or None).  ``compare`` replaces
    the equality test; the test suite uses it to check the harness itself.
    """
    compare = compare or (lambda a, b: a == b)
    ref = invariants(alg)
    passed = 0
    for i, b in enumerate(fuzz_transform(alg, plan)):
        got = invariants(b)
        if not compare(ref, got):
            return passed, plan.iterations, (i, b, ref, got)
        passed += 1
    return passed, plan.iterations, None


# ---------------------------------------------------------------------------
# output helpers

def _styled(text, code):
    if os.environ.get("NLA_COLOR", "1") == "0" or not sys.stdout.isatty():
        return text
    return "\x1b[%sm%s\x1b[0m" % (code, text)


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UserError("cannot read %s: %s" % (path, e.strerror))
    return validate(parse(text))


def _print_report(r):
    print(_styled(r.name or "(unnamed)", "1") + "  n = %d" % r.n)
    print("  nu(g) = %d   nu(J) = %s   mu(J) = %s   maxn = %s"
          % (r.nu_g, r.nu_J, r.mu_J, str(r.maxn).lower()))
    if r.dpt is not None:
        print("  Dpt = {%s}" % ", ".join(map(str, r.dpt)))
    print("  b1 = %d" % r.b1)
    for key in ("V", "W", "a", "h", "lower_central", "upper_central"):
        print("  %-14s %s" % (key, " ".join(map(str, r.dims[key]))))
    if r.bounds_ok is not None:
        print("  bounds hold: %s" % str(r.bounds_ok).lower())
    if r.case_tag:
        print("  top indices: %s" % r.case_tag)
    if r.algebraic_dimension is not None:
        print("  algebraic dimension: %d" % r.algebraic_dimension)
    for w in r.warnings:
        print(_styled("  note: " + w, "33"))


# ---------------------------------------------------------------------------
# commands

def cmd_validate(args):
    alg = _load(args.file)
    print("ok: %s (n = %d)" % (alg.name or args.file, alg.n))
    return 0


def cmd_analyze(args):
    r = analyze(_load(args.file))
    if args.json:
        sys.stdout.write(r.to_json())
    else:
        _print_report(r)
    return 0


def cmd_normalize(args):
    alg = _load(args.file)
    adm = admissible_normalize(alg)
    comments = ["Dpt = {%s}" % ", ".join(map(str, sorted(adm.dpt))),
                "flags: " + " ".join("%d:%s" % (k, f[0]) for k, f in enumerate(adm.flags, 1))]
    if args.strict:
        adm, rep = strictly_admissible(adm)
        comments.append("top indices: %s" % rep.case_tag)
        comments.append("V^2 basis: " + ", ".join(label for label, _ in rep.v2_basis))
    sys.stdout.write(adm.base.canonical_text(comments))
    return 0


def cmd_generate(args):
    if args.n < 1:
        raise UserError("--n must be at least 1")
    text = gen_family(args.family, args.n).canonical_text()
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as e:
            raise UserError("cannot write %s: %s" % (args.output, e.strerror))
    else:
        sys.stdout.write(text)
    return 0


def cmd_fuzz(args):
    if args.iters < 1:
        raise UserError("--iters must be at least 1")
    alg = _load(args.file)
    plan = FuzzPlan(seed=args.seed, iterations=args.iters, transform_kind=args.kind)
    compare = (lambda a, b: False) if args.corrupt_compare else None
    passed, total, bad = run_fuzz(alg, plan, compare)
    if bad is None:
        print("%d/%d invariant" % (passed, total))
        return 0
    i, b, ref, got = bad
    print("%d/%d invariant; first divergence at iteration %d" % (passed, total, i))
    diff = sorted(k for k in ref if ref[k] != got.get(k))
    print("  differing fields: %s" % (", ".join(diff) or "(comparison rejected equal data)"))
    sys.stdout.write(b.canonical_text(["divergent presentation, " + b.provenance]))
    return 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        sys.exit(1)


def build_parser():
    p = _Parser(prog="nla", description="Nilpotent Lie algebras with complex structure.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check integrability and d^2 = 0")
    s.add_argument("file")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("analyze", help="series, steps and structure report")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(run=cmd_analyze)

    s = sub.add_parser("normalize", help="print an admissible coframe")
    s.add_argument("file")
    s.add_argument("--strict", action="store_true")
    s.set_defaults(run=cmd_normalize)

    s = sub.add_parser("generate", help="print a family member")
    s.add_argument("--family", choices=("I", "II"), required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_generate)

    s = sub.add_parser("fuzz", help="check invariants under random coframe changes")
    s.add_argument("file")
    s.add_argument("--iters", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--kind", choices=("full", "triangular", "identity"), default="full")
    s.add_argument("--corrupt-compare", action="store_true", help=argparse.SUPPRESS)
    s.set_defaults(run=cmd_fuzz)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except NilcplxError as e:
        code = e.exit_code if isinstance(e, (UserError, InternalError)) else 1
        msg, label = str(e), type(e).__name__
        if not msg.startswith(label):
            msg = "%s: %s" % (label, msg)
        sys.stderr.write("error: %s\n" % msg)
        return code


if __name__ == "__main__":
    sys.exit(main())
