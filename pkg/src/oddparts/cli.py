"""Command-line interface: ``oddparts count|enumerate|map|verify|series``.

Global options may also be set through the environment: ``ODDPARTS_FORMAT``,
``ODDPARTS_MAX_ENUM_N`` and ``ODDPARTS_ORDER``.  Exit status is 0 on success,
1 when a verification fails and 2 on usage or domain errors.
"""

import argparse
import csv
import json
import os
import sys

from . import bijections as bij
from . import verify as ver
from .partitions import (
    DEFAULT_ENUM_BOUND,
    EnumerationBoundError,
    Family,
    count_family,
    enumerate_family,
    enumerate_partitions,
    format_partition,
    parse_partition,
)
from .series import NAMED, Monomial, TruncationError, named_gf, qbinomial_check

ENV_PREFIX = "ODDPARTS_"
FORMATS = ("plain", "json", "csv")


class UsageError(Exception):
    pass


def parse_range(text):
    """``"4"`` -> (4, 4); ``"0..5"`` -> (0, 5)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError("bad range %r (use N or A..B)" % text) from None
    if lo < 0 or hi < lo:
        raise UsageError("bad range %r" % text)
    return lo, hi


def _monomial(text):
    """``0``, ``q``, ``-q``, ``q^2``, ``-q^3`` -> Monomial."""
    s = text.strip().replace(" ", "")
    if s == "0":
        return Monomial(0)
    sign = 1
    if s[:1] in "+-":
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    if s == "1":
        return Monomial(sign, 0)
    if not s.startswith("q"):
        raise UsageError("bad monomial %r" % text)
    exp = 1 if s == "q" else int(s[1:].lstrip("^").strip("{}"))
    return Monomial(sign, exp)


# -- output --------------------------------------------------------------------


def _emit(fmt, out, plain, payload, header, rows):
    if fmt == "json":
        json.dump(payload, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        out.write(plain)
        if plain and not plain.endswith("\n"):
            out.write("\n")


def _report(fmt, out, rep):
    cols = rep.columns()
    rows = [[ver._cell(r.get(c)) for c in cols] for r in rep.rows]
    _emit(fmt, out, rep.to_text(), rep.to_json(), cols, rows)
    return 0 if rep.passed else 1


# -- subcommands ------------------------------------------------------------------


def cmd_count(args, out):
    fam = Family.parse(args.family)
    lo, hi = parse_range(args.n)
    method = {"enum": "enumeration", "enumeration": "enumeration"}.get(args.method, args.method)
    methods = ver._method_list(method)
    bound = args.max_enum_n
    if "enumeration" in methods and hi > bound:
        raise EnumerationBoundError(hi, bound)
    s = named_gf(ver.FAMILY_SERIES[fam], max(hi, args.order or 0)) if "series" in methods else None
    rows = []
    for n in range(lo, hi + 1):
        vals = [count_family(n, fam, bound=bound) if m == "enumeration" else s[n] for m in methods]
        rows.append((n, vals))
    ok = all(len(set(v)) == 1 for _, v in rows)
    if len(methods) == 1:
        header = ["n", "count"]
        table = [[n, v[0]] for n, v in rows]
        jrows = [{"n": str(n), "count": str(v[0])} for n, v in rows]
    else:
        header = ["n", "enumeration", "series", "match"]
        table = [[n, v[0], v[1], "match" if v[0] == v[1] else "MISMATCH"] for n, v in rows]
        jrows = [{"n": str(n), "enumeration": str(v[0]), "series": str(v[1]), "match": v[0] == v[1]}
                 for n, v in rows]
    plain = "".join(" ".join(map(str, r)) + "\n" for r in table)
    payload = {"family": fam.value, "method": method, "rows": jrows}
    _emit(args.format, out, plain, payload, header, table)
    return 0 if ok else 1


def cmd_enumerate(args, out):
    n = int(args.n)
    if args.family == "all":
        parts = list(enumerate_partitions(n, bound=args.max_enum_n))
        fam = "all"
    else:
        f = Family.parse(args.family)
        parts = list(enumerate_family(n, f, bound=args.max_enum_n))
        fam = f.value
    plain = "".join(format_partition(p) + "\n" for p in parts)
    payload = {"family": fam, "n": str(n), "count": str(len(parts)), "partitions": [list(p) for p in parts]}
    _emit(args.format, out, plain, payload, ["partition"], [[format_partition(p)] for p in parts])
    return 0


def _map_operation(args, out):
    p = parse_partition(args.partition)
    if args.op == "phi":
        res = {"input": p, "output": bij.phi(p)}
    elif args.op == "phi-inverse":
        res = {"input": p, "output": bij.phi_inverse(p)}
    elif args.op == "split":
        alpha, beta = bij.split_alpha_beta(p)
        res = {"input": p, "alpha": alpha, "beta": beta}
    else:
        if args.other is None:
            raise UsageError("--op union needs --with")
        other = parse_partition(args.other)
        res = {"input": p, "with": other, "output": bij.multiset_union(p, other)}
    data = dict(operation=args.op, **{k: list(v) for k, v in res.items()})
    plain = "\n".join("%-9s %s" % (k, "(%s)" % format_partition(v, exponents=args.notation == "exponent"))
                      for k, v in res.items())
    header = list(data)
    row = [v if isinstance(v, str) else " ".join(map(str, v)) for v in data.values()]
    _emit(args.format, out, plain, data, header, [row])
    return 0


def cmd_map(args, out):
    if args.op != "bijection":
        return _map_operation(args, out)
    if not args.theorem:
        raise UsageError("map needs --theorem (or --op phi|phi-inverse|split|union)")
    theorem = bij.parse_theorem(args.theorem)
    p = parse_partition(args.partition)
    if args.direction == "forward":
        rec = bij.FORWARD[theorem](p)
    else:
        if not args.source:
            raise UsageError("backward mapping needs --source (one of %s)" % ", ".join(bij.SOURCES[theorem]))
        rec = bij.BACKWARD[theorem](p, args.source)
    data = rec.to_json()
    header = list(data)
    row = [" ".join(map(str, v)) if isinstance(v, list) else ("" if v is None else v) for v in data.values()]
    _emit(args.format, out, rec.to_text(exponents=args.notation == "exponent"), data, header, [row])
    return 0


def cmd_verify(args, out):
    bound = args.max_enum_n
    cap = args.witness_cap
    if args.identity:
        tag = ver.IdentityTag.parse(args.identity)
        n_max = ver.DEFAULT_IDENTITY_MAX_N if args.max_n is None else args.max_n
        method = {"enum": "enumeration"}.get(args.method, args.method)
        rep = ver.verify_identity(tag, n_max, method, bound=bound, order=args.order, witness_cap=cap)
    elif args.bijection:
        theorem = bij.parse_theorem(args.bijection)
        if args.partition:
            p = parse_partition(args.partition)
            rep = ver.verify_bijection(theorem, p.size, inputs=[p], bound=bound, witness_cap=cap)
        elif args.n and ".." not in args.n:
            rep = ver.verify_bijection(theorem, int(args.n), bound=bound, witness_cap=cap)
        else:
            lo, hi = parse_range(args.n) if args.n else (None, None)
            rep = ver.verify_bijection_range(theorem, lo, hi, bound=bound, workers=args.workers, witness_cap=cap)
    elif args.proof_chain:
        rep = ver.verify_proof_chain(500 if args.order is None else args.order, witness_cap=cap)
    elif args.cross_check:
        fam = Family.parse(args.cross_check)
        rep = ver.cross_check_counts(fam, 20 if args.max_n is None else args.max_n, bound=bound, witness_cap=cap)
    elif args.oeis:
        if not args.family:
            raise UsageError("--oeis needs --family")
        rep = ver.oeis_cross_check(Family.parse(args.family), args.oeis, offset=args.offset, witness_cap=cap)
    elif args.qbinomial:
        pair = args.qbinomial.split(",")
        if len(pair) != 2:
            raise UsageError("--qbinomial takes A,Z")
        a, z = (_monomial(x) for x in pair)
        order = 300 if args.order is None else args.order
        res = qbinomial_check(a, z, order)
        rep = ver.VerificationReport("q-binomial a=%s z=%s" % tuple(pair),
                                     ("series",), (0, order))
        rep.rows.append({"check": "sum = product", "status": "pass" if res.equal else "FAIL",
                         "first_difference": res.first_difference})
        if not res.equal:
            rep.fail(index=res.first_difference, lhs=res.lhs, rhs=res.rhs)
    else:
        raise UsageError("verify needs one of --identity, --bijection, --proof-chain, --cross-check, "
                         "--oeis, --qbinomial")
    return _report(args.format, out, rep)


def cmd_series(args, out):
    if args.name not in NAMED:
        raise UsageError("unknown series %r; valid names: %s" % (args.name, ", ".join(sorted(NAMED))))
    order = 20 if args.order is None else args.order
    if order < 0:
        raise UsageError("order must be >= 0")
    s = named_gf(args.name, order)
    plain = "".join("%d %d\n" % (n, c) for n, c in enumerate(s.coeffs))
    payload = dict(name=args.name, **s.to_json())
    _emit(args.format, out, plain, payload, ["n", "coefficient"], list(enumerate(s.coeffs)))
    return 0


# -- parser -------------------------------------------------------------------------


def _global_options(parser, suppress):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--format", choices=FORMATS, default=d, help="output format (default plain)")
    parser.add_argument("--max-enum-n", type=int, default=d, dest="max_enum_n",
                        help="largest n enumeration may reach (default %d)" % DEFAULT_ENUM_BOUND)
    parser.add_argument("--order", type=int, default=d, help="series truncation order")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="oddparts",
        description="Partitions with distinct odd parts vs. no parts 2 mod 4: counts, series, maps, audits.",
    )
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)

    p = sub.add_parser("count", parents=[common], help="count a family over a range of n")
    p.add_argument("--family", required=True)
    p.add_argument("--n", required=True, help="N or A..B")
    p.add_argument("--method", choices=("enum", "enumeration", "series", "both"), default="enum")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", parents=[common], help="list the members of a family")
    p.add_argument("--family", default="all")
    p.add_argument("--n", required=True, type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("map", parents=[common], help="apply a bijection and print its record")
    p.add_argument("--theorem", help="3.1 or 3.2")
    p.add_argument("--partition", required=True, help="e.g. 11,8,5^3,4,3")
    p.add_argument("--op", choices=("bijection", "phi", "phi-inverse", "split", "union"), default="bijection",
                   help="apply a single building block instead of a bijection")
    p.add_argument("--with", dest="other", help="second operand for --op union")
    p.add_argument("--notation", choices=("exponent", "flat"), default="exponent",
                   help="plain output as (12^2,8) or (12,12,8)")
    p.add_argument("--direction", choices=("forward", "backward"), default="forward")
    p.add_argument("--source", help="backward source: n, n-1 (3.1) or n+2, n-1 (3.2)")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("verify", parents=[common], help="run a verification and report")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--identity", help="1.1, 1.2, 1.3, 1.4, 1.6 or 1.7")
    g.add_argument("--bijection", help="3.1 or 3.2")
    g.add_argument("--proof-chain", action="store_true", dest="proof_chain")
    g.add_argument("--cross-check", dest="cross_check", metavar="FAMILY")
    g.add_argument("--oeis", metavar="BFILE")
    g.add_argument("--qbinomial", metavar="A,Z", help="monomial pair, e.g. --qbinomial=-q,q^2")
    p.add_argument("--max-n", type=int, dest="max_n")
    p.add_argument("--n", help="bijection level N or range A..B")
    p.add_argument("--partition", help="audit a single input partition")
    p.add_argument("--method", choices=("enum", "enumeration", "series", "both"), default="both")
    p.add_argument("--family")
    p.add_argument("--offset", type=int, default=0, help="b-file index of coefficient 0")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--witness-cap", type=int, default=ver.DEFAULT_WITNESS_CAP, dest="witness_cap")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("series", parents=[common], help="print coefficients of a named series")
    p.add_argument("--name", required=True, help=", ".join(sorted(NAMED)))
    p.set_defaults(func=cmd_series)
    return parser


def _apply_env(args, environ):
    if args.format is None:
        args.format = environ.get(ENV_PREFIX + "FORMAT", "plain")
        if args.format not in FORMATS:
            raise UsageError("%sFORMAT must be one of %s" % (ENV_PREFIX, ", ".join(FORMATS)))
    if args.max_enum_n is None:
        args.max_enum_n = int(environ.get(ENV_PREFIX + "MAX_ENUM_N", DEFAULT_ENUM_BOUND))
    if args.order is None and ENV_PREFIX + "ORDER" in environ:
        args.order = int(environ[ENV_PREFIX + "ORDER"])


def main(argv=None, out=None, environ=None):
    out = sys.stdout if out is None else out
    environ = os.environ if environ is None else environ
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_env(args, environ)
        return args.func(args, out)
    except (UsageError, EnumerationBoundError, TruncationError, bij.DomainError,
            bij.ContractViolation, ver.BFileParseError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print("oddparts: error: %s" % msg, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
