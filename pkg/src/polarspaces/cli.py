"""Batch entry point: census, verify and sweep over spaces given as short specs.

Space specs: sp(n,q), qplus(n,q), herm(n,q), parabolic(q), custom:<json or path>,
scenario:<path>.  n is the dimension of V (the ambient space is V ⊕ V*).
"""
import argparse
import csv
import io
import itertools
import json
import random
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from . import duality as du
from . import forms as fm
from . import infmodel as im
from . import regularity as rg
from .errors import (HyperbolicObstruction, InvariantViolation, NoOppositeExists, ParseError,
                     PolarError, TooLarge, UnknownSuite)
from .gf import parse_field
from .polar import DEFAULT_CAP_POINTS, PolarSpace, bits, popcount

_CALL = re.compile(r"^\s*(sp|qplus|herm|parabolic)\s*\(\s*([0-9\s,]*)\)\s*$")
_ARITY = {"sp": 2, "qplus": 2, "herm": 2, "parabolic": 1}


@dataclass(frozen=True)
class SpaceSpec:
    kind: str           # catalog name, "custom" or "scenario"
    params: tuple = ()
    payload: str = ""

    def __str__(self):
        if self.kind in _ARITY:
            return f"{self.kind}({','.join(map(str, self.params))})"
        return f"{self.kind}:{self.payload}"


def parse_space(text):
    text = text.strip()
    if text.startswith("custom:"):
        return SpaceSpec("custom", payload=text[len("custom:"):])
    if text.startswith("scenario:"):
        return SpaceSpec("scenario", payload=text[len("scenario:"):])
    m = _CALL.match(text)
    if not m:
        raise ParseError(f"unknown space spec {text!r}")
    kind = m.group(1)
    try:
        params = tuple(int(x) for x in m.group(2).split(",") if x.strip())
    except ValueError:
        raise ParseError(f"bad parameters in {text!r}") from None
    if len(params) != _ARITY[kind]:
        raise ParseError(f"{kind} takes {_ARITY[kind]} parameters")
    return SpaceSpec(kind, params)


def _field(q):
    return parse_field(f"gf({q})")


def _load_json(payload):
    if payload.lstrip().startswith("{"):
        return json.loads(payload)
    try:
        with open(payload) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {payload!r}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON in {payload!r}: {exc}") from None


def build_form(spec):
    k, p = spec.kind, spec.params
    if k == "sp":
        return fm.canonical_symplectic(_field(p[1]), p[0])
    if k == "qplus":
        return fm.canonical_hyperbolic(_field(p[1]), p[0])
    if k == "herm":
        return fm.canonical_hermitian(_field(p[1]), p[0])
    if k == "parabolic":
        return fm.parabolic(_field(p[0]))
    if k == "custom":
        data = _load_json(spec.payload)
        try:
            return fm.form_from_json(data)
        except KeyError as exc:
            raise ParseError(f"custom form lacks {exc}") from None
    raise ParseError(f"{spec} is not a dense space")


def build_space(spec, cap_points=DEFAULT_CAP_POINTS):
    """The polar space, replaced by its minimal-embedding quotient when the form has a radical."""
    form = build_form(spec)
    quotient = False
    if not form.radical().is_zero():
        form = fm.minimal_embedding_quotient(form).target
        quotient = True
    S = PolarSpace(form, cap_points=cap_points, name=str(spec))
    S.__dict__["_cli_quotient"] = quotient
    S.__dict__["_cli_catalog"] = spec.kind in ("sp", "qplus", "herm") and form.dual_n is not None
    return S


def hyperbolic_line_sizes(S):
    return sorted({popcount(S.hyperbolic_line(a, b)) for a, b in S.opposite_point_pairs()})


def census(S):
    c = S.census()
    c["regular"] = rg.space_is_regular(S).holds
    c["tight"] = rg.check_tight(S).holds
    c["hyperbolic_line_sizes"] = hyperbolic_line_sizes(S)
    c["after_quotient"] = S.__dict__.get("_cli_quotient", False)
    return c


# suites -------------------------------------------------------------------------

@dataclass
class SuiteResult:
    suite: str
    space: str
    verdict: bool
    witness: object = None
    detail: str = ""
    skipped: bool = False
    wall_time: float = 0.0
    extra: dict = dc_field(default_factory=dict)

    def to_json(self, timings=False):
        d = {"suite": self.suite, "space": self.space,
             "verdict": "skipped" if self.skipped else self.verdict,
             "witness": rg._jsonable(self.witness), "detail": self.detail}
        if timings:
            d["wall_time"] = round(self.wall_time, 4)
        return d


def _v(verdict):
    return bool(verdict.holds), verdict.witness, verdict.detail or ""


def _suite_regular(S, cfg):
    reg = rg.space_is_regular(S).holds
    tight = rg.check_tight(S).holds
    r4 = rg.check_R4(S).holds
    ok = reg == tight == r4
    return ok, None if ok else {"regular": reg, "tight": tight, "R4": r4}, \
        f"regular={reg} tight={tight} R4={r4}"


def _suite_RR4(S, cfg):
    v = rg.theorem_suite_RR4(S)
    return bool(v.holds), v.witness, v.detail or ""


def _suite_complements(S, cfg):
    if not S.__dict__.get("_cli_catalog"):
        return None
    for W in S.generators:
        try:
            rg.construct_complement(S, W)
        except InvariantViolation as exc:
            return False, {"generator": W, "error": str(exc)}, ""
    return True, None, f"{len(S.generators)} generators"


def _suite_three_opp(S, cfg):
    rnd = random.Random(cfg["seed"])
    G = S.generators
    n = cfg.get("samples", 200)
    for _ in range(n):
        M = rnd.choice(G)
        others = [A for A in G if not A & M]
        avoid = rnd.choice(others) if others and rnd.random() < 0.5 else None
        free = S.all & ~M & ~(avoid or 0)
        if not free:
            continue
        p = rnd.choice(list(bits(free)))
        try:
            out = rg.opposite_through_point(S, M, p, M_avoid=avoid)
        except (NoOppositeExists, HyperbolicObstruction):
            continue
        if out & M or not (out >> p) & 1 or (avoid is not None and out & avoid):
            return False, {"M": M, "p": p, "avoid": avoid, "result": out}, ""
    return True, None, f"{n} samples"


def _suite_hyperbolic_lines(S, cfg):
    sizes = hyperbolic_line_sizes(S)
    return len(sizes) <= 1, None if len(sizes) <= 1 else {"sizes": sizes}, f"sizes={sizes}"


SUITES = {
    "RA": lambda S, c: _v(rg.theorem_suite_RA(S)),
    "regular": _suite_regular,
    "RR4": _suite_RR4,
    "defcomm": lambda S, c: _v(rg.theorem_suite_defcomm(S, c.get("max_pairs"))),
    "ovvio1": lambda S, c: _v(rg.suite_ovvio1(S)),
    "RR1_RR2": lambda S, c: _v(rg.suite_RR1_RR2(S, c.get("limit"))),
    "optimal": lambda S, c: _v(rg.suite_optimal(S, c.get("limit"))),
    "GS": lambda S, c: _v(rg.check_GS(S)),
    "3G": lambda S, c: _v(du.theorem_suite_3G(S)),
    "triples": lambda S, c: _v(du.suite_triples(S, c.get("triple_limit", 2000))),
    "complements": _suite_complements,
    "three_opp": _suite_three_opp,
    "hyperbolic_lines": _suite_hyperbolic_lines,
}


def run_suite(name, S, cfg):
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    t = time.perf_counter()
    try:
        out = SUITES[name](S, cfg)
    except InvariantViolation as exc:
        out = (False, {"error": str(exc)}, "invariant violation")
    dt = time.perf_counter() - t
    if out is None:
        return SuiteResult(name, S.name, True, detail="not applicable", skipped=True, wall_time=dt)
    ok, wit, detail = out
    if not ok and wit is None:
        wit = detail or "failed"
    return SuiteResult(name, S.name, ok, wit, detail, wall_time=dt)


def verify(S, suites, cfg, threads=1):
    names = list(SUITES) if suites == ["all"] else suites
    for n in names:
        if n not in SUITES:
            raise UnknownSuite(f"unknown suite {n!r}; known: {', '.join(SUITES)}")
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            return list(ex.map(lambda n: run_suite(n, S, cfg), names))
    return [run_suite(n, S, cfg) for n in names]


def verify_scenario(spec):
    rep = im.run_scenario(_load_json(spec.payload))
    facts = [f for f in rep.facts if f.status == "certified"]
    results = [SuiteResult(f.name, rep.title, f.value is not False, None if f.value is not False else f.detail or f.name,
                           f.detail) for f in facts]
    return rep, results


# sweep ---------------------------------------------------------------------------

SWEEP_COLUMNS = ["space", "status", "points", "lines", "generators", "rank", "regular", "tight",
                 "hyperbolic_line_size", "after_quotient"]


def sweep_rows(template, ranges, cap_points):
    names = sorted(ranges)
    rows = []
    for values in itertools.product(*(ranges[k] for k in names)):
        env = dict(zip(names, values))
        text = re.sub(r"\b([a-z])\b", lambda m: str(env.get(m.group(1), m.group(1))), template)
        row = {"space": text}
        try:
            spec = parse_space(text)
            S = build_space(spec, cap_points)
            c = census(S)
            sizes = c["hyperbolic_line_sizes"]
            row.update(status="ok", points=c["points"], lines=c["lines"], generators=c["generators"],
                       rank=c["rank"], regular=c["regular"], tight=c["tight"],
                       hyperbolic_line_size=sizes[0] if len(sizes) == 1 else "/".join(map(str, sizes)),
                       after_quotient=c["after_quotient"])
        except TooLarge:
            row["status"] = "too large"
        except PolarError as exc:
            row["status"] = f"error: {type(exc).__name__}"
        rows.append(row)
    return rows


def _parse_range(text):
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            a, b = part.split("-")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


# output --------------------------------------------------------------------------

def _emit(rows, columns, fmt, out):
    if fmt == "json":
        out.write(json.dumps(rows, indent=2, sort_keys=False, default=str) + "\n")
        return
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in r.items()})
    out.write(buf.getvalue())


def build_parser():
    p = argparse.ArgumentParser(prog="polarspaces", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--cap-points", type=int, default=DEFAULT_CAP_POINTS)
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--seed", type=int, default=0)

    c = sub.add_parser("census", help="counts, sub-generator classes, regular and tight verdicts")
    c.add_argument("--space", required=True)
    common(c)
    v = sub.add_parser("verify", help="run theorem suites; nonzero exit on any failed assertion")
    v.add_argument("--space", required=True)
    v.add_argument("--suite", action="append", default=None, help="suite name or 'all' (repeatable)")
    v.add_argument("--timings", action="store_true", help="include wall times (output no longer byte-stable)")
    common(v)
    s = sub.add_parser("sweep", help="one row per instance of a template such as 'sp(n,q)'")
    s.add_argument("--template", required=True)
    s.add_argument("--param", action="append", default=[], metavar="NAME=RANGE",
                   help="e.g. n=1-3 or q=2,3 (repeatable)")
    common(s)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        if args.command == "census":
            spec = parse_space(args.space)
            if spec.kind == "scenario":
                rep = im.run_scenario(_load_json(spec.payload))
                _emit([rep.to_json()], ["report", "ok", "facts", "counts"], args.format, out)
                return 0 if rep.ok else 1
            c = census(build_space(spec, args.cap_points))
            _emit([c], list(c), args.format, out)
            return 0
        if args.command == "verify":
            spec = parse_space(args.space)
            if spec.kind == "scenario":
                _, results = verify_scenario(spec)
            else:
                S = build_space(spec, args.cap_points)
                cfg = {"seed": args.seed}
                results = verify(S, args.suite or ["all"], cfg, args.threads)
            rows = [r.to_json(args.timings) for r in results]
            cols = ["suite", "space", "verdict", "witness", "detail"] + (["wall_time"] if args.timings else [])
            _emit(rows, cols, args.format, out)
            return 0 if all(r.verdict for r in results) else 1
        ranges = {}
        for item in args.param:
            if "=" not in item:
                raise ParseError(f"bad --param {item!r}; use NAME=RANGE")
            k, r = item.split("=", 1)
            ranges[k.strip()] = _parse_range(r)
        rows = sweep_rows(args.template, ranges, args.cap_points)
        _emit(rows, SWEEP_COLUMNS, args.format, out)
        return 0
    except (ParseError, UnknownSuite, TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"assertion failure: {exc}", file=sys.stderr)
        return 1
    except PolarError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
