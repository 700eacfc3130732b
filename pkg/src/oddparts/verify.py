"""Verification harness: identity catalog, bijection audits, series proof
chain, enumeration-vs-series cross checks and OEIS b-file comparison.

Every entry point returns a :class:`VerificationReport`.  Failures are
aggregated (capped at ``witness_cap`` witnesses) rather than raised, so a
single run shows everything that went wrong.
"""

import enum
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import bijections as bij
from .partitions import (
    DEFAULT_ENUM_BOUND,
    EnumerationBoundError,
    Family,
    count_family,
    enumerate_family,
    format_partition,
)
from .series import (
    FAMILY_SERIES,
    O1_TERMS,
    O2_TERMS,
    TruncatedSeries,
    coefficient,
    named_gf,
    sum_ratio_terms,
)

DEFAULT_WITNESS_CAP = 10
DEFAULT_IDENTITY_MAX_N = 45
DEFAULT_SERIES_ORDER = 1000
DEFAULT_BIJECTION_MAX_N = {bij.T31: 35, bij.T32: 30}


@dataclass
class VerificationReport:
    subject: str
    methods: tuple = ()
    n_range: Optional[tuple] = None
    rows: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    failure_count: int = 0
    notes: dict = field(default_factory=dict)
    wall_time: float = 0.0
    witness_cap: int = DEFAULT_WITNESS_CAP

    @property
    def passed(self):
        return self.failure_count == 0

    def fail(self, **detail):
        self.failure_count += 1
        if len(self.failures) < self.witness_cap:
            self.failures.append(detail)

    def to_json(self):
        return {
            "subject": self.subject,
            "passed": self.passed,
            "methods": list(self.methods),
            "range": None if self.n_range is None else [str(x) for x in self.n_range],
            "rows": [_stringify(r) for r in self.rows],
            "failure_count": str(self.failure_count),
            "failures": [_stringify(f) for f in self.failures],
            "notes": _stringify(self.notes),
            "wall_time": "%.3f" % self.wall_time,
        }

    def columns(self):
        cols = []
        for row in self.rows:
            for k in row:
                if k not in cols:
                    cols.append(k)
        return cols

    def to_text(self):
        out = io.StringIO()
        status = "PASS" if self.passed else "FAIL"
        rng = "" if self.n_range is None else " range %s..%s" % self.n_range
        meth = " [%s]" % ",".join(self.methods) if self.methods else ""
        out.write("%s: %s%s%s (%.2fs)\n" % (self.subject, status, rng, meth, self.wall_time))
        cols = self.columns()
        if cols:
            cells = [[_cell(r.get(c)) for c in cols] for r in self.rows]
            widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
            out.write("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
            for row in cells:
                out.write("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() + "\n")
        for k, v in self.notes.items():
            out.write("note %s: %s\n" % (k, _cell(v)))
        if self.failure_count:
            out.write("%d failure(s); first %d:\n" % (self.failure_count, len(self.failures)))
            for f in self.failures:
                out.write("  " + ", ".join("%s=%s" % (k, _cell(v)) for k, v in f.items()) + "\n")
        return out.getvalue()


def _cell(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, tuple) and all(isinstance(x, int) for x in v):
        return "(%s)" % format_partition(v)
    if isinstance(v, dict):
        return "{%s}" % ", ".join("%s: %s" % (k, _cell(x)) for k, x in v.items())
    if isinstance(v, (list, tuple)):
        return "[%s]" % ", ".join(_cell(x) for x in v)
    return str(v)


def _stringify(obj):
    """JSON-friendly copy: ints become decimal strings, tuples become lists."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(x) for x in obj]
    if isinstance(obj, enum.Enum):
        return obj.value
    return str(obj)


# -- identity catalog -------------------------------------------------------------


class IdentityTag(enum.Enum):
    """Identities as (lhs terms, rhs terms, smallest n claimed)."""

    I11 = ("1.1", ((Family.O1, 0), (Family.O1, -1)), ((Family.POD, 0),), 2)
    I12 = ("1.2", ((Family.O2, 0), (Family.O2, -3)), ((Family.PODGT2, 0),), 5)
    I13 = ("1.3", ((Family.O3, 2), (Family.O3, -1)), ((Family.POD, 0),), 3)
    I14 = ("1.4", ((Family.POD, 0),), ((Family.C, 0),), 0)
    I16 = ("1.6", ((Family.O1, 0), (Family.O1, -1)), ((Family.C, 0),), 2)
    I17 = ("1.7", ((Family.O3, 2), (Family.O3, -1)), ((Family.C, 0),), 3)

    def __init__(self, label, lhs, rhs, min_n):
        self.label = label
        self.lhs = lhs
        self.rhs = rhs
        self.min_n = min_n

    @property
    def max_offset(self):
        return max(off for _, off in self.lhs + self.rhs)

    def describe(self):
        def side(terms):
            return " + ".join(
                "%s(n%s)" % (f.value, "" if not o else "%+d" % o) for f, o in terms
            )

        return "%s = %s for n >= %d" % (side(self.lhs), side(self.rhs), self.min_n)

    @classmethod
    def parse(cls, text):
        key = str(text).strip().upper().lstrip("I").replace(".", "")
        for tag in cls:
            if tag.label.replace(".", "") == key:
                return tag
        raise ValueError("unknown identity %r (known: %s)" % (text, ", ".join(t.label for t in cls)))


def _method_list(method):
    if method == "both":
        return ("enumeration", "series")
    if method in ("enumeration", "series"):
        return (method,)
    raise ValueError("method must be enumeration, series or both")


def verify_identity(tag, n_max, method="both", bound=None, order=None, witness_cap=DEFAULT_WITNESS_CAP):
    """Check ``tag`` for every n in [0, n_max].

    n below the claimed range is evaluated too and recorded with status
    ``holds``/``fails`` without counting as a failure.  The note
    ``observed_threshold`` is the smallest n0 with the identity true on all of
    [n0, n_max].
    """
    t0 = time.perf_counter()
    methods = _method_list(method)
    top = n_max + tag.max_offset
    bound = DEFAULT_ENUM_BOUND if bound is None else bound
    if "enumeration" in methods and top > bound:
        raise EnumerationBoundError(top, bound)
    if order is None:
        order = top
    if "series" in methods and order < top:
        raise ValueError("series order %d is below n_max + %d = %d" % (order, tag.max_offset, top))

    series = {}
    if "series" in methods:
        for fam, _ in tag.lhs + tag.rhs:
            series[fam] = named_gf(FAMILY_SERIES[fam], order)

    def value(fam, n, how):
        if n < 0:
            return 0
        if how == "series":
            return coefficient(series[fam], n)
        return count_family(n, fam, bound=bound)

    rep = VerificationReport(
        "identity %s: %s" % (tag.label, tag.describe()),
        methods,
        (0, n_max),
        witness_cap=witness_cap,
    )
    holds = {}
    for n in range(0, n_max + 1):
        row = {"n": n}
        ok = True
        results = []
        for how in methods:
            lhs = sum(value(f, n + o, how) for f, o in tag.lhs)
            rhs = sum(value(f, n + o, how) for f, o in tag.rhs)
            results.append((lhs, rhs))
            suffix = "" if len(methods) == 1 else "_" + how[:4]
            row["lhs" + suffix] = lhs
            row["rhs" + suffix] = rhs
            ok = ok and lhs == rhs
        agree = len(set(results)) == 1
        holds[n] = ok
        in_range = n >= tag.min_n
        if not in_range:
            row["status"] = "holds" if ok and agree else "fails"
        elif ok and agree:
            row["status"] = "pass"
        else:
            row["status"] = "FAIL"
            rep.fail(n=n, values=dict(zip(methods, results)), methods_agree=agree)
        rep.rows.append(row)

    n0 = n_max + 1
    while n0 > 0 and holds[n0 - 1]:
        n0 -= 1
    rep.notes["claimed_threshold"] = tag.min_n
    rep.notes["observed_threshold"] = n0
    rep.notes["below_range"] = {n: holds[n] for n in range(0, min(tag.min_n, n_max + 1))}
    rep.wall_time = time.perf_counter() - t0
    return rep


# -- bijection audits -----------------------------------------------------------


def _targets(theorem, n):
    if theorem == bij.T31:
        return ((Family.O1, n, "n"), (Family.O1, n - 1, "n-1"))
    return ((Family.O3, n + 2, "n+2"), (Family.O3, n - 1, "n-1"))


def _source_for(theorem, target_n, n):
    return {0: "n", -1: "n-1", 2: "n+2"}[target_n - n]


def verify_bijection(theorem, n, inputs=None, bound=None, witness_cap=DEFAULT_WITNESS_CAP):
    """Audit the forward map of ``theorem`` on C(n) (or on ``inputs`` only).

    Sub-checks: totality, target membership, injectivity, cardinality and
    round trips in both directions.  With ``inputs`` the two checks that need
    the whole level set (cardinality, backward-then-forward) are skipped.
    """
    t0 = time.perf_counter()
    theorem = bij.parse_theorem(theorem)
    if n < bij._MIN_N[theorem]:
        raise bij.DomainError(
            "theorem %s holds for n >= %d; n=%d is outside its range"
            % (bij.THEOREM_NAMES[theorem], bij._MIN_N[theorem], n)
        )
    full = inputs is None
    bound = DEFAULT_ENUM_BOUND if bound is None else bound
    targets = _targets(theorem, n)
    if full:
        top = max(t[1] for t in targets)
        if top > bound:
            raise EnumerationBoundError(top, bound)
        domain = list(enumerate_family(n, Family.C, bound=bound))
    else:
        domain = [bij.canonicalize(p) for p in inputs]

    forward = bij.FORWARD[theorem]
    backward = bij.BACKWARD[theorem]
    rep = VerificationReport(
        "bijection %s at n=%d" % (bij.THEOREM_NAMES[theorem], n), ("exhaustive" if full else "sample",),
        (n, n), witness_cap=witness_cap,
    )
    checks = {k: 0 for k in ("totality", "membership", "injectivity", "roundtrip_forward")}
    cases = {}
    seen = {}
    records = []
    for p in domain:
        try:
            rec = forward(p, n)
        except bij.ContractViolation as exc:
            checks["membership"] += 1
            rep.fail(check="membership", input=tuple(p), error=str(exc), record=exc.record.to_json())
            continue
        except (bij.DomainError, bij.DispatchError) as exc:
            checks["totality"] += 1
            rep.fail(check="totality", input=tuple(p), error=str(exc))
            continue
        records.append(rec)
        cases[rec.case.case] = cases.get(rec.case.case, 0) + 1
        key = (rec.output, rec.target.n)
        if key in seen:
            checks["injectivity"] += 1
            rep.fail(check="injectivity", input=tuple(p), other=tuple(seen[key]), output=tuple(rec.output))
        seen[key] = p
        try:
            back = backward(rec.output, _source_for(theorem, rec.target.n, n)).output
        except (bij.DomainError, bij.ContractViolation) as exc:
            back = None
            err = str(exc)
        else:
            err = None
        if back != p:
            checks["roundtrip_forward"] += 1
            rep.fail(check="roundtrip_forward", input=tuple(p), output=tuple(rec.output),
                     back=None if back is None else tuple(back), error=err)

    sizes = {}
    if full:
        checks["cardinality"] = 0
        checks["roundtrip_backward"] = 0
        for fam, tn, src in targets:
            members = list(enumerate_family(tn, fam, bound=bound)) if tn >= 0 else []
            sizes[str(bij.Target(fam, tn))] = len(members)
            for q in members:
                try:
                    p = backward(q, src).output
                    rec = forward(p, n)
                    ok = rec.output == q and rec.target.n == tn
                except (bij.DomainError, bij.ContractViolation, bij.DispatchError) as exc:
                    ok, p = False, str(exc)
                if not ok:
                    checks["roundtrip_backward"] += 1
                    rep.fail(check="roundtrip_backward", target=str(bij.Target(fam, tn)), element=tuple(q),
                             back=p if isinstance(p, str) else tuple(p))
        if len(domain) != sum(sizes.values()):
            checks["cardinality"] += 1
            rep.fail(check="cardinality", domain=len(domain), targets=dict(sizes))

    for name, bad in checks.items():
        rep.rows.append({"check": name, "status": "pass" if not bad else "FAIL", "failures": bad})
    rep.notes["domain_size"] = len(domain)
    if sizes:
        rep.notes["target_sizes"] = sizes
    rep.notes["cases"] = dict(sorted(cases.items(), key=lambda kv: str(kv[0]).zfill(3)))
    rep.records = records
    rep.wall_time = time.perf_counter() - t0
    return rep


def _audit_one(args):
    theorem, n, bound, cap = args
    rep = verify_bijection(theorem, n, bound=bound, witness_cap=cap)
    rep.records = None
    return rep


def verify_bijection_range(theorem, n_min=None, n_max=None, bound=None, workers=1,
                           witness_cap=DEFAULT_WITNESS_CAP):
    """Run :func:`verify_bijection` for every n in [n_min, n_max] and merge."""
    t0 = time.perf_counter()
    theorem = bij.parse_theorem(theorem)
    n_min = bij._MIN_N[theorem] if n_min is None else n_min
    n_max = DEFAULT_BIJECTION_MAX_N[theorem] if n_max is None else n_max
    jobs = [(theorem, n, bound, witness_cap) for n in range(n_min, n_max + 1)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_audit_one, jobs))
    else:
        parts = [_audit_one(j) for j in jobs]
    parts.sort(key=lambda r: r.n_range[0])
    rep = VerificationReport(
        "bijection %s" % bij.THEOREM_NAMES[theorem], ("exhaustive",), (n_min, n_max), witness_cap=witness_cap
    )
    for part in parts:
        n = part.n_range[0]
        row = {"n": n, "domain": part.notes["domain_size"]}
        for i, (label, size) in enumerate(part.notes.get("target_sizes", {}).items(), 1):
            row["target_%d" % i] = label
            row["size_%d" % i] = size
        row["status"] = "pass" if part.passed else "FAIL"
        rep.rows.append(row)
        for f in part.failures:
            rep.fail(n=n, **f)
        # failures beyond the per-n cap still count
        rep.failure_count += part.failure_count - len(part.failures)
    rep.wall_time = time.perf_counter() - t0
    return rep


# -- proof chain ------------------------------------------------------------------


def _compare(rep, name, left, right, description):
    diff = next((k for k, (x, y) in enumerate(zip(left.coeffs, right.coeffs)) if x != y), None)
    row = {"check": name, "status": "pass" if diff is None else "FAIL", "description": description}
    rep.rows.append(row)
    if diff is not None:
        rep.fail(check=name, index=diff, lhs=left.coeffs[diff], rhs=right.coeffs[diff])
    return diff is None


def verify_proof_chain(order=500, witness_cap=DEFAULT_WITNESS_CAP):
    """Series identities behind the three q-series proofs, coefficientwise to ``order``.

    Sums are expanded term by term and compared with independently built
    product forms.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    t0 = time.perf_counter()
    N = order
    rep = VerificationReport("proof chain", ("series",), (0, N), witness_cap=witness_cap)
    one_plus_q = TruncatedSeries.from_coeffs([1, 1], N)
    one_plus_q3 = TruncatedSeries.from_coeffs([1, 0, 0, 1], N)

    _compare(rep, "a", named_gf("ab1_lhs", N), named_gf("ab1_rhs", N),
             "sum (-q^2;q^2)_m q^2m/(q;q^2)_m")
    _compare(rep, "b", named_gf("ab2_lhs", N), named_gf("ab2_rhs", N),
             "(q^4;q^4)/(q;q) * sum (q;q)_2n q^4n/(q^4;q^4)_n")
    _compare(rep, "c", named_gf("lambda_sum", N), named_gf("lambda_closed", N),
             "Lambda = (q^2;q^4)/((1+q^3)(q;q))")
    _compare(rep, "d", named_gf("o3_sum", N), named_gf("o3_closed", N),
             "o3 sum = q^2 Lambda + 1")
    o1_sum = sum_ratio_terms(O1_TERMS, N)
    o2_sum = sum_ratio_terms(O2_TERMS, N)
    _compare(rep, "e", o1_sum, named_gf("o1", N), "o1 sum = (-q^3;q^2)/(q^2;q^2)")
    _compare(rep, "f", o2_sum, named_gf("o2", N), "o2 sum = (-q^5;q^2)/(q^4;q^2) - 1")
    _compare(rep, "g", named_gf("pod", N), named_gf("c", N), "(-q;q^2)/(q^2;q^2) = (q^2;q^4)/(q;q)")

    c = named_gf("c", N)
    displays = [
        ("h1", one_plus_q * o1_sum, named_gf("pod", N), "(1+q) o1 = pod"),
        ("h1'", one_plus_q * o1_sum, c, "(1+q) o1 = c"),
        ("h2", one_plus_q3 * o2_sum, named_gf("podgt2", N) - one_plus_q3, "(1+q^3) o2 = podgt2 - 1 - q^3"),
        ("h3", one_plus_q3 * named_gf("o3_sum", N), c.shift(2) + one_plus_q3, "(1+q^3) o3 = q^2 c + 1 + q^3"),
    ]
    sub = VerificationReport("h", witness_cap=witness_cap)
    for name, left, right, desc in displays:
        _compare(sub, name, left, right, desc)
    rep.rows.append({"check": "h", "status": "pass" if sub.passed else "FAIL",
                     "description": "multiplied-through displays: " + "; ".join(d[3] for d in displays)})
    for f in sub.failures:
        rep.fail(**f)
    rep.notes["subchecks_passed"] = "%d/%d" % (sum(r["status"] == "pass" for r in rep.rows), len(rep.rows))
    rep.wall_time = time.perf_counter() - t0
    return rep


# -- cross checks ---------------------------------------------------------------


def cross_check_counts(family, n_max, bound=None, witness_cap=DEFAULT_WITNESS_CAP):
    """Enumeration counts against generating-function coefficients for n <= n_max."""
    t0 = time.perf_counter()
    bound = DEFAULT_ENUM_BOUND if bound is None else bound
    if n_max > bound:
        raise EnumerationBoundError(n_max, bound)
    s = named_gf(FAMILY_SERIES[family], n_max)
    rep = VerificationReport("cross-check %s" % family.value, ("enumeration", "series"), (0, n_max),
                             witness_cap=witness_cap)
    for n in range(n_max + 1):
        e = count_family(n, family, bound=bound)
        c = coefficient(s, n)
        rep.rows.append({"n": n, "enumeration": e, "series": c, "status": "pass" if e == c else "FAIL"})
        if e != c:
            rep.fail(n=n, enumeration=e, series=c)
    rep.wall_time = time.perf_counter() - t0
    return rep


class BFileParseError(ValueError):
    def __init__(self, lineno, line, reason):
        self.lineno = lineno
        super().__init__("b-file line %d: %s: %r" % (lineno, reason, line))


def parse_bfile(text):
    """Parse OEIS b-file text into [(index, value)].

    Blank lines and ``#`` comments are skipped.
    """
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise BFileParseError(lineno, raw, "expected 'index value'")
        try:
            out.append((int(fields[0]), int(fields[1])))
        except ValueError:
            raise BFileParseError(lineno, raw, "non-integer field") from None
    return out


def read_bfile(path):
    with open(path) as fh:
        return parse_bfile(fh.read())


def oeis_cross_check(family, bfile, offset=0, witness_cap=DEFAULT_WITNESS_CAP):
    """Compare coefficients with a b-file; file index k is matched with n = k - offset.

    ``bfile`` is a path or an already parsed list of (index, value) pairs.
    """
    t0 = time.perf_counter()
    entries = bfile if isinstance(bfile, list) else read_bfile(bfile)
    pairs = [(k - offset, v) for k, v in entries if k - offset >= 0]
    if not pairs:
        raise ValueError("b-file and series have no overlapping indices (offset %d)" % offset)
    top = max(n for n, _ in pairs)
    s = named_gf(FAMILY_SERIES[family], top)
    rep = VerificationReport("oeis %s" % family.value, ("series", "bfile"), (min(n for n, _ in pairs), top),
                             witness_cap=witness_cap)
    bad = 0
    for n, v in pairs:
        c = coefficient(s, n)
        if c != v:
            bad += 1
            rep.fail(n=n, index=n + offset, bfile=v, series=c)
    rep.rows.append({"entries": len(pairs), "mismatches": bad, "status": "pass" if not bad else "FAIL"})
    rep.notes["offset"] = offset
    rep.wall_time = time.perf_counter() - t0
    return rep


def write_bfile(family, n_max, fh, offset=0):
    """Write coefficients 0..n_max of ``family`` in b-file format."""
    s = named_gf(FAMILY_SERIES[family], n_max)
    for n in range(n_max + 1):
        fh.write("%d %d\n" % (n + offset, s.coeffs[n]))
