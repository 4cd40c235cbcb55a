"""Command-line front end: ``matlang [kind] --input problem.json``.

Problem documents are JSON objects with keys ``kind``, ``dimension``, ``f``,
``g``, ``pair``, ``bounds`` and, for some kinds, ``matrix`` (cor17),
``prime`` (counterexample) or ``curve`` (torsion-scan on a plane curve).
Rationals are strings "a/b" or JSON integers.  Exit codes: 0 completed
(refusals included), 1 input error, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence

from . import __version__
from .et_pairs import PairBox, classify_pair, singular_power_set, verify_certificate
from .exact_core.bipoly import parse_bipoly
from .exact_core.cyclotomic import cyclotomic_poly
from .exact_core.matrix import Matrix
from .exact_core.poly import format_poly, parse_poly
from .exact_core.rings import QuotientRing
from .independence import spectral_independence
from .langcurve import (INFINITE_REFUSAL, build_curves, det_torsion_scan, lemma22_scan, lemma24_scan,
                        special_factor_scan, torsion_points_on_curve)
from .matpoly import MatPoly, scalar_profile
from .parallel import default_jobs
from .theorem_engine import counterexample_family, cor17_check, thm_c_enumerate, thm_d_enumerate

KINDS = ("spectral-check", "curves", "torsion-scan", "classify-pair", "theorem-c", "theorem-d", "cor17",
         "counterexample")
TOP_KEYS = {"kind", "dimension", "f", "g", "pair", "bounds", "matrix", "prime", "curve"}
BOUND_DEFAULTS = {"N": 24, "search": 6, "box": 12, "K": 8, "k_max": 5}
PAIR_KEYS = {"A", "B", "conductor"}

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")
_DECIMAL = re.compile(r"^\s*[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?\s*$")


class InputError(Exception):
    """Schema or value error, with a location such as ``f[1][0][1]``."""

    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}" if where else msg)
        self.where, self.msg = where, msg


@dataclass
class PairSpec:
    A: Matrix
    B: Matrix
    conductor: Optional[int] = None


@dataclass
class ProblemSpec:
    kind: str
    dimension: Optional[int] = None
    f: Optional[MatPoly] = None
    g: Optional[MatPoly] = None
    pair: Optional[PairSpec] = None
    bounds: Dict[str, int] = field(default_factory=lambda: dict(BOUND_DEFAULTS))
    matrix: Optional[Matrix] = None
    prime: Optional[int] = None
    curve: Optional[str] = None


# -- parsing ------------------------------------------------------------------------------


def _rational(v: Any, where: str) -> Fraction:
    if isinstance(v, bool):
        raise InputError(where, "expected a rational, got a boolean")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        raise InputError(where, "decimal literals not accepted; use a/b")
    if not isinstance(v, str):
        raise InputError(where, f"expected a rational string, got {type(v).__name__}")
    if _RATIONAL.match(v):
        num, _, den = v.replace(" ", "").partition("/")
        if den and int(den) == 0:
            raise InputError(where, "zero denominator")
        return Fraction(int(num), int(den) if den else 1)
    if _DECIMAL.match(v):
        raise InputError(where, "decimal literals not accepted; use a/b")
    raise InputError(where, f"malformed rational {v!r}")


def _matrix(v: Any, where: str, r: Optional[int], entry=_rational) -> Matrix:
    if not isinstance(v, list) or not v or not all(isinstance(row, list) for row in v):
        raise InputError(where, "expected a matrix as a list of rows")
    n = len(v)
    if r is not None and n != r:
        raise InputError(where, f"expected {r} rows, got {n}")
    rows = []
    for i, row in enumerate(v):
        if len(row) != n:
            raise InputError(f"{where}[{i}]", f"expected {n} entries, got {len(row)}")
        rows.append([entry(c, f"{where}[{i}][{j}]") for j, c in enumerate(row)])
    return Matrix(rows)


def _matpoly(v: Any, where: str, r: Optional[int]) -> MatPoly:
    if not isinstance(v, list) or not v:
        raise InputError(where, "expected a nonempty list of coefficient matrices, lowest power first")
    mats = [_matrix(m, f"{where}[{k}]", r) for k, m in enumerate(v)]
    try:
        return MatPoly(mats)
    except ValueError as exc:
        raise InputError(where, str(exc)) from None


def _positive_int(v: Any, where: str, minimum: int = 1) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError(where, "expected an integer")
    if v < minimum:
        raise InputError(where, f"must be >= {minimum}")
    return v


def parse_problem(text: str) -> ProblemSpec:
    try:
        doc = json.loads(text, parse_float=lambda s: float(s))
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}", f"malformed document: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise InputError("", "top level must be an object")
    unknown = sorted(set(doc) - TOP_KEYS)
    if unknown:
        raise InputError(unknown[0], "unknown key")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise InputError("kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    spec = ProblemSpec(kind)
    if "dimension" in doc:
        spec.dimension = _positive_int(doc["dimension"], "dimension")
    for name in ("f", "g"):
        if name in doc:
            setattr(spec, name, _matpoly(doc[name], name, spec.dimension))
    if spec.f is not None and spec.g is not None and spec.f.r != spec.g.r:
        raise InputError("g", f"dimension {spec.g.r} does not match f ({spec.f.r})")
    if spec.dimension is None and spec.f is not None:
        spec.dimension = spec.f.r
    if "bounds" in doc:
        b = doc["bounds"]
        if not isinstance(b, dict):
            raise InputError("bounds", "expected an object")
        for k, v in b.items():
            if k not in BOUND_DEFAULTS:
                raise InputError(f"bounds.{k}", "unknown key")
            spec.bounds[k] = _positive_int(v, f"bounds.{k}", 0 if k == "box" else 1)
    if "pair" in doc:
        spec.pair = _pair(doc["pair"])
    if "matrix" in doc:
        spec.matrix = _matrix(doc["matrix"], "matrix", 2)
    if "prime" in doc:
        spec.prime = _positive_int(doc["prime"], "prime", 2)
    if "curve" in doc:
        if not isinstance(doc["curve"], str):
            raise InputError("curve", "expected a polynomial string in y1, y2")
        spec.curve = doc["curve"]
    _require(spec)
    return spec


def _pair(v: Any) -> PairSpec:
    if not isinstance(v, dict):
        raise InputError("pair", "expected an object with A, B and optional conductor")
    unknown = sorted(set(v) - PAIR_KEYS)
    if unknown:
        raise InputError(f"pair.{unknown[0]}", "unknown key")
    for k in ("A", "B"):
        if k not in v:
            raise InputError(f"pair.{k}", "missing")
    cond = None
    entry = _rational
    if "conductor" in v:
        cond = _positive_int(v["conductor"], "pair.conductor")
        ring = QuotientRing(cyclotomic_poly(cond))

        def ring_entry(c, where):
            if isinstance(c, str) and not _RATIONAL.match(c):
                if _DECIMAL.match(c):
                    raise InputError(where, "decimal literals not accepted; use a/b")
                try:
                    return ring(parse_poly(c, "l"))
                except ValueError as exc:
                    raise InputError(where, f"malformed entry: {exc}") from None
            return ring(_rational(c, where))

        entry = ring_entry
    return PairSpec(_matrix(v["A"], "pair.A", 2, entry), _matrix(v["B"], "pair.B", 2, entry), cond)


def _require(spec: ProblemSpec):
    need = {
        "spectral-check": ("f", "g"),
        "curves": ("f", "g"),
        "classify-pair": ("pair",),
        "theorem-c": ("f", "g"),
        "theorem-d": ("f", "g"),
        "cor17": ("matrix",),
        "counterexample": ("prime",),
    }.get(spec.kind, ())
    if spec.kind == "torsion-scan":
        need = ("curve",) if spec.curve is not None else ("f", "g")
    for k in need:
        if getattr(spec, k) is None:
            raise InputError(k, f"required for kind {spec.kind}")
    if spec.kind in ("spectral-check", "theorem-d") and spec.dimension != 2:
        raise InputError("dimension", f"kind {spec.kind} needs dimension 2")


# -- running ------------------------------------------------------------------------------


def run(spec: ProblemSpec, jobs: int = 1, seed: Optional[int] = None) -> Dict[str, Any]:
    """Report as a JSON-ready dict; timings live under the ``timings`` key."""
    t0 = time.perf_counter()
    b = spec.bounds
    result: Dict[str, Any]
    k = spec.kind
    if k == "spectral-check":
        rep = spectral_independence(spec.f, spec.g, K=b["K"], jobs=jobs)
        result = {"spectral": rep.as_dict(),
                  "det_f": format_poly(scalar_profile(spec.f).det_curve),
                  "det_g": format_poly(scalar_profile(spec.g).det_curve)}
    elif k == "curves":
        cp = build_curves(spec.f, spec.g)
        result = {"curves": cp.as_dict(),
                  "special_factors_R": [s.as_dict() for s in special_factor_scan(cp.R)]}
    elif k == "torsion-scan":
        if spec.curve is not None:
            try:
                F = parse_bipoly(spec.curve)
            except ValueError as exc:
                raise InputError("curve", str(exc)) from None
            try:
                result = {"torsion_points": torsion_points_on_curve(F, b["N"], jobs=jobs).as_dict()}
            except ValueError as exc:
                if str(exc).startswith(INFINITE_REFUSAL):
                    result = {"refusal": {"condition": INFINITE_REFUSAL, "witness": str(exc)}}
                else:
                    raise
        else:
            result = {"lemma22": lemma22_scan(spec.f, spec.g, b["N"], jobs=jobs).as_dict(),
                      "lemma24": lemma24_scan(spec.f, spec.g, b["N"], jobs=jobs).as_dict(),
                      "det_torsion": det_torsion_scan(spec.f, spec.g, b["N"]).as_dict()}
    elif k == "classify-pair":
        try:
            p = PairBox(spec.pair.A, spec.pair.B, b["box"])
        except ValueError as exc:
            raise InputError("pair", str(exc)) from None
        S = singular_power_set(p)
        cls = classify_pair(p, b["search"], S)
        checks = [verify_certificate(p, c, b["k_max"]).as_dict() for c in cls.certificates]
        if any(not v["valid"] for v in checks):
            raise AssertionError("a certificate failed verification")
        result = {"singular_power_set": sorted([list(x) for x in S]), "count": len(S),
                  "classification": cls.as_dict(), "verification": checks}
    elif k in ("theorem-c", "theorem-d"):
        fn = thm_c_enumerate if k == "theorem-c" else thm_d_enumerate
        res = fn(spec.f, spec.g, b["N"], K=b["K"], jobs=jobs)
        _check_solutions(res, spec.f, spec.g)
        result = res.as_dict()
    elif k == "cor17":
        res = cor17_check(spec.matrix, b["N"], K=b["K"], jobs=jobs)
        if res.solutions:
            Z = MatPoly.variable(2)
            _check_solutions(res, Z, MatPoly([-spec.matrix, Matrix.identity(2)]))
        result = res.as_dict()
    else:
        try:
            A1, A2, ver = counterexample_family(spec.prime)
        except ValueError as exc:
            raise InputError("prime", str(exc)) from None
        if not ver.ok:
            raise AssertionError("counterexample family failed verification")
        fmt = lambda M: [[format_poly(c.value, "l") for c in row] for row in M.rows]
        result = {"A1": fmt(A1), "A2": fmt(A2), "modulus": format_poly(cyclotomic_poly(spec.prime), "l"),
                  "verification": ver.as_dict()}
    return {
        "kind": k,
        "version": __version__,
        "bounds": dict(sorted(b.items())),
        "seed": seed,
        "result": result,
        "timings": {"total_seconds": round(time.perf_counter() - t0, 6)},
    }


def _check_solutions(res, f, g):
    for s in res.solutions:
        if not s.verify(f, g):
            raise AssertionError("returned solution failed re-verification")
    if res.refusal is None and not res.bounds.within_bound:
        raise AssertionError("found count exceeds the theorem bound")


# -- output -------------------------------------------------------------------------------


def emit_report(report: Dict[str, Any], fmt: str = "machine", timings: bool = False) -> str:
    r = dict(report)
    if not timings:
        r.pop("timings", None)
    if fmt == "machine":
        return json.dumps(r, sort_keys=True, indent=2) + "\n"
    return _human(r)


def parse_report(text: str) -> Dict[str, Any]:
    return json.loads(text)


def _human(r: Dict[str, Any]) -> str:
    out = [f"matlang {r['version']} / {r['kind']}"]
    b = r["bounds"]
    res = r["result"]
    k = r["kind"]
    refusal = res.get("refusal")
    if refusal:
        out.append(f"REFUSED: {refusal['condition']}")
        out.append(f"  witness: {refusal['witness']}")
    if k in ("theorem-c", "theorem-d", "cor17"):
        bd = res["bounds"]
        for name, val in res.get("hypotheses", []):
            out.append(f"hypothesis {name}: {val}")
        sols = res["solutions"]
        if not refusal:
            if not sols:
                out.append(f"0 solutions found within conductor bound N={bd['conductor_bound']}")
            else:
                out.append(f"{bd['found_count']} conjugacy classes in {len(sols)} families "
                           f"within conductor bound N={bd['conductor_bound']}")
            for s in sols:
                out.append(f"  {s['jordan_shape']}({', '.join(s['eigenvalues'])}) with v root of {s['modulus']}: "
                           f"orders {tuple(s['orders'])}, {s['count']} class(es)")
            if res.get("candidate_locus"):
                out.append(f"candidate eigenvalue locus: {res['candidate_locus']}")
        out.append(f"bound check: found {bd['found_count']} <= theorem bound {bd['theorem_bound']}: "
                   f"{'yes' if bd['within_bound'] else 'NO'} (L = {bd['L']}, J = {bd['J']})")
        for n in res.get("notes", []):
            out.append(f"note: {n}")
    elif k == "spectral-check":
        sp = res["spectral"]
        out.append(f"det f(xI) = {res['det_f']}; det g(xI) = {res['det_g']}")
        out.append(f"verdict: {sp['verdict']}")
        for w in sp.get("witnesses", []):
            a, c = w["pair"]
            rel = w["relation"]
            if rel is not None:
                out.append(f"  witness: {a}^{rel['k1']} * {c}^{rel['k2']} = {rel['constant']}")
            else:
                out.append(f"  undecided: {a} vs {c}: {w['undecided']['reason']}")
    elif k == "curves":
        c = res["curves"]
        for name in ("R", "T_fg", "T_gf"):
            out.append(f"{name} = {c[name]}")
        dc = c["degree_check"]
        out.append(f"degree check against budget {c['degree_budget']}: {dc}")
        sf = res["special_factors_R"]
        out.append("special factors of R: " + ("none" if not sf else "; ".join(s["binomial"] for s in sf)))
    elif k == "torsion-scan":
        if "torsion_points" in res:
            tp = res["torsion_points"]
            out.append(f"{tp['count']} torsion points with conductors <= {tp['scan_bound']}; "
                       f"bound 11(deg F)^2 = {tp['bound']}: {'within' if tp['within_bound'] else 'EXCEEDED'}")
            for p in tp["points"]:
                out.append(f"  (n1, n2) = ({p['n1']}, {p['n2']}): {p['count']} point(s)")
        elif not refusal:
            for name in ("lemma22", "lemma24", "det_torsion"):
                s = res[name]
                out.append(f"{name}: witness {s['witness_poly']}, {s['count']} roots <= bound {s['bound']}: "
                           f"{'yes' if s['within_bound'] else 'NO'}")
    elif k == "classify-pair":
        out.append(f"|S_(A,B)| in box radius {b['box']}: {res['count']}")
        cl = res["classification"]
        out.append(f"classification (search bound {cl['search_bound']}): {cl['summary']}")
        for c, v in zip(cl["certificates"], res["verification"]):
            extra = ", ".join(f"{n}={c[n]}" for n in ("theta", "kappa", "zeta", "alpha", "rho", "mu") if n in c)
            out.append(f"  type {c['type']} (l={c['ell']}, s={c['s']}, {c['transform']}) {extra}: "
                       f"{'verified' if v['valid'] else 'INVALID'}")
        if cl["undecided"]:
            out.append(f"  {len(cl['undecided'])} undecided (l, s) entries")
    else:
        v = res["verification"]
        out.append(f"A1 = {res['A1']}, A2 = {res['A2']} over Q[l]/({res['modulus']})")
        out.append(f"A1 - A2 = [[0, 1], [0, 0]]: {v['difference_ok']}; orders {tuple(v['orders'])}; "
                   f"power identity n <= {v['p']}: {all(v['power_identity'])}")
    if "timings" in r:
        out.append(f"time: {r['timings']['total_seconds']:.3f} s")
    return "\n".join(out) + "\n"


# -- entry point -------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="matlang", description="Torsion points of matrix polynomial pairs.")
    ap.add_argument("kind", nargs="?", choices=KINDS, help="problem kind; must agree with the document's kind")
    ap.add_argument("--input", default="-", help="problem document (JSON); '-' reads stdin")
    ap.add_argument("--format", choices=("human", "machine"), default="human")
    ap.add_argument("--conductor-bound", type=int, help="override bounds.N")
    ap.add_argument("--search-bound", type=int, help="override bounds.search")
    ap.add_argument("--seed", type=int, help="recorded in the report; never affects decisions")
    ap.add_argument("--jobs", type=int, help="worker processes for grid scans (default MATLANG_JOBS or 1)")
    ap.add_argument("--timings", action="store_true", help="include wall-clock timings")
    ap.add_argument("--version", action="version", version=f"matlang {__version__}")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        spec = parse_problem(text)
        if args.kind and args.kind != spec.kind:
            raise InputError("kind", f"document kind {spec.kind!r} does not match subcommand {args.kind!r}")
        if args.conductor_bound is not None:
            spec.bounds["N"] = _positive_int(args.conductor_bound, "--conductor-bound")
        if args.search_bound is not None:
            spec.bounds["search"] = _positive_int(args.search_bound, "--search-bound")
        jobs = default_jobs(args.jobs)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InputError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    try:
        report = run(spec, jobs=jobs, seed=args.seed)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # any escape here is a bug, not a user error
        print(f"internal invariant violation: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit_report(report, args.format, args.timings))
    return 0


if __name__ == "__main__":
    sys.exit(main())
