"""Command-line entry point: ``gf2lab <subcommand> ...``.

Exit status is 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from gf2lab import parallel
from gf2lab.critical import critical_number, greedy_cover
from gf2lab.errors import CounterexampleError, GF2Error
from gf2lab.gf2core import load_subspace, parse_bits, to_bits
from gf2lab.harness import dichotomy_experiment, theorem_constants, weaker_report
from gf2lab.matroid import census, circuits_through
from gf2lab.pointset import GENERATOR_KINDS, dumps, generate, load
from gf2lab.regularity import find_regular_subspace, is_regular
from gf2lab.spectral import count_sum_tuples, uniformity
from gf2lab.suites import lemma22_suite, lemma23_suite, lemma41_suite

_RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def rational(text: str) -> Fraction:
    m = _RATIONAL.match(text)
    if not m or (m.group(2) is not None and int(m.group(2)) == 0):
        raise argparse.ArgumentTypeError(f"expected p/q with q > 0, got {text!r}")
    return Fraction(int(m.group(1)), int(m.group(2) or 1))


def emit_report(reports, timestamp: bool = True) -> str:
    """Serialise reports as a JSON list; big integers are already decimal strings."""
    return json.dumps([r.to_dict(timestamp=timestamp) for r in reports], indent=2)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _subspace_json(W, n):
    return [to_bits(b, n) for b in W.basis]


# -- handlers ------------------------------------------------------------------


def cmd_gen(args) -> int:
    params = {}
    if args.gamma is not None:
        params["gamma"] = parse_bits(args.gamma, args.n)
    if args.p is not None:
        params["p"] = args.p
    if args.max_points is not None:
        params["max_points"] = args.max_points
    if args.path is not None:
        params["path"] = args.path
    X = generate(args.kind, args.n, params, args.seed)
    text = dumps(X)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_spectral(args) -> int:
    X = load(args.file)
    n = X.ambient_dim
    if args.action == "uniformity":
        rep = uniformity(X)
        out = {
            "n": n,
            "size": X.cardinality,
            "U": None if rep.vacuous else str(rep.max_abs_correlation),
            "epsilon_star": None if rep.vacuous else str(rep.epsilon_star),
            "witness": None if rep.vacuous else to_bits(rep.witness, n),
        }
        print(_dump(out))
        return 0
    N = count_sum_tuples(X, args.k)
    print("x,N_k(x)")
    for x, v in enumerate(N):
        print(f"{to_bits(x, n)},{int(v)}")
    return 0


def cmd_matroid(args) -> int:
    X = load(args.file)
    n = X.ambient_dim
    if args.action == "census":
        c = census(X, args.k)
        if args.json:
            print(_dump({
                "k": c.k,
                "total_circuits": str(c.total_circuits),
                "max_count": str(c.max_count),
                "max_witness": None if c.max_witness is None else to_bits(c.max_witness, n),
                "per_element": {to_bits(e, n): str(v) for e, v in c.per_element.items()},
            }))
        else:
            print("element,count")
            for e, v in c.per_element.items():
                print(f"{to_bits(e, n)},{v}")
        return 0
    x = parse_bits(args.x, n)
    for circ in circuits_through(X, x, args.k):
        print(" ".join(to_bits(e, n) for e in circ.elements))
    return 0


def cmd_critical(args) -> int:
    X = load(args.file)
    res = critical_number(X) if args.action == "exact" else greedy_cover(X)
    print(_dump({
        "value": res.value,
        "witness_basis": _subspace_json(res.witness, X.ambient_dim),
        "method": res.method,
        "nodes_expanded": res.nodes_expanded,
    }))
    return 0


def _cert_json(cert, n):
    return {
        "subspace": _subspace_json(cert.subspace, n),
        "codim": cert.subspace.codim,
        "epsilon": str(cert.epsilon),
        "regular": cert.regular,
        "bad_mass": str(cert.bad_mass),
        "bad_cosets": [
            {"rep": to_bits(b.rep, n), "witness": to_bits(b.witness, cert.subspace.dim),
             "correlation": str(b.correlation)}
            for b in cert.bad_cosets
        ],
    }


def cmd_regularity(args) -> int:
    X = load(args.file)
    n = X.ambient_dim
    if args.action == "check":
        with open(args.subspace) as fh:
            H = load_subspace(fh.read(), n)
        cert = is_regular(X, H, args.eps)
        print(_dump(_cert_json(cert, n)))
        return 0 if cert.regular else 1
    trace = find_regular_subspace(X, args.eps)
    out = {
        "steps": [{"character": to_bits(s.character, n), "codim": s.codim,
                   "bad_mass_before": str(s.bad_mass_before)} for s in trace.steps],
        "theoretical_codim_cap": str(trace.theoretical_cap),
        "final": _cert_json(trace.final, n),
    }
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(_dump(out) + "\n")
    print(_dump(out))
    return 0 if trace.final.regular else 1


def cmd_verify(args) -> int:
    ts = not args.no_timestamp
    if args.statement == "lemma22":
        reports = lemma22_suite(args.trials, [args.n], [args.k], args.seed)
    elif args.statement == "lemma23":
        reports = lemma23_suite(args.trials, [args.n], [args.k], args.seed)
    elif args.statement == "lemma41":
        reports = lemma41_suite(args.trials, [args.n], args.seed)
    else:
        if not args.file or args.eps is None:
            print("gf2lab: error: verify dichotomy/weaker need a FILE and --eps", file=sys.stderr)
            return 2
        X = load(args.file)
        if args.statement == "dichotomy":
            reports = [dichotomy_experiment(X, args.k, args.eps)]
        else:
            reports = [weaker_report(X, args.eps)]
    print(emit_report(reports, timestamp=ts))
    return 0 if all(r.passed for r in reports) else 1


def cmd_constants(args) -> int:
    print(_dump(theorem_constants(args.alpha, args.k).to_dict()))
    return 0


def cmd_self_test() -> int:
    from gf2lab.acceptance import run_all

    outcomes = run_all(fast=True)
    for o in outcomes:
        print(o.line())
    return 0 if all(o.passed for o in outcomes) else 1


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default: ${parallel.ENV_VAR} or CPU count)")
    common.add_argument("--no-timestamp", action="store_true",
                        help="omit runtime fields so reruns are byte-identical")

    p = argparse.ArgumentParser(prog="gf2lab", description=__doc__.splitlines()[0])
    p.add_argument("--self-test", action="store_true", help="run the fast acceptance subset")
    sub = p.add_subparsers(dest="command")

    g = sub.add_parser("gen", parents=[common], help="generate a .gf2set point set")
    g.add_argument("kind", choices=GENERATOR_KINDS)
    g.add_argument("-n", type=int, required=True)
    g.add_argument("--gamma", help="affine-layer character as an n-bit string")
    g.add_argument("-p", type=rational, help="inclusion probability p/q for random-density")
    g.add_argument("--max-points", type=int)
    g.add_argument("--path", help="source file for from-file")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("spectral", help="character sums and sum-tuple counts")
    ssub = s.add_subparsers(dest="action", required=True)
    su = ssub.add_parser("uniformity", parents=[common])
    su.add_argument("file")
    sc = ssub.add_parser("count-sums", parents=[common])
    sc.add_argument("file")
    sc.add_argument("-k", type=int, required=True)
    s.set_defaults(func=cmd_spectral)

    m = sub.add_parser("matroid", help="circuit enumeration")
    msub = m.add_subparsers(dest="action", required=True)
    mc = msub.add_parser("census", parents=[common])
    mc.add_argument("file")
    mc.add_argument("-k", type=int, required=True)
    mc.add_argument("--json", action="store_true")
    mx = msub.add_parser("circuits", parents=[common])
    mx.add_argument("file")
    mx.add_argument("-x", required=True, help="element as an n-bit string")
    mx.add_argument("-k", type=int, required=True)
    m.set_defaults(func=cmd_matroid)

    c = sub.add_parser("critical", help="critical number")
    csub = c.add_subparsers(dest="action", required=True)
    for name in ("exact", "greedy"):
        cp = csub.add_parser(name, parents=[common])
        cp.add_argument("file")
    c.set_defaults(func=cmd_critical)

    r = sub.add_parser("regularity", help="regular subspaces")
    rsub = r.add_subparsers(dest="action", required=True)
    rc = rsub.add_parser("check", parents=[common])
    rc.add_argument("file")
    rc.add_argument("--subspace", required=True, help="basis file, one row per line")
    rc.add_argument("--eps", type=rational, required=True)
    rf = rsub.add_parser("find", parents=[common])
    rf.add_argument("file")
    rf.add_argument("--eps", type=rational, required=True)
    rf.add_argument("--trace", help="also write the trace JSON here")
    r.set_defaults(func=cmd_regularity)

    v = sub.add_parser("verify", parents=[common], help="run verifiers, emit JSON reports")
    v.add_argument("statement", choices=("lemma22", "lemma23", "lemma41", "dichotomy", "weaker"))
    v.add_argument("file", nargs="?")
    v.add_argument("--n", type=int, default=8)
    v.add_argument("-k", "--k", type=int, default=5)
    v.add_argument("--trials", type=int, default=50)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--eps", type=rational)
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("constants", parents=[common], help="constants ledger for given alpha, k")
    k.add_argument("--alpha", type=rational, required=True)
    k.add_argument("-k", type=int, required=True)
    k.set_defaults(func=cmd_constants)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.self_test:
        return cmd_self_test()
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return 2
    parallel.set_threads(getattr(args, "threads", None))
    if not hasattr(args, "no_timestamp"):
        args.no_timestamp = False
    try:
        return args.func(args)
    except CounterexampleError as exc:
        stem = f"counterexample-{getattr(args, 'statement', args.command)}"
        paths = exc.dump(stem)
        print(f"gf2lab: counterexample: {exc} (dumped to {', '.join(paths)})", file=sys.stderr)
        return 1
    except (GF2Error, ValueError, OSError) as exc:
        print(f"gf2lab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
