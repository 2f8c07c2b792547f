"""Command-line entry point ``simultile``.

Exit codes: 0 certified success, 1 a Failed certificate, 2 usage error or
unreadable input, 3 an exhausted search or a diverging closure.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from pathlib import Path

from . import serialize as ser
from .construct import (fn_tiler, thm_a25_truncated, thm_a26_truncated, thm_a31_truncated)
from .dsarray import min_support_formula, min_support_search, nw_minimal, verify_marginals
from .errors import ClosureDiverged, SearchExhausted, SimultileError
from .graph import component_analysis, degree_profile, induce_cell_graph, iterate_removal
from .kronecker import DEFAULT_BUDGET, ShiftSearchBudget
from .numeric import SQRT, ComplexField, FieldNum, cnum, fnum, rationally_independent
from .render import svg_construction, svg_graph
from .stepfn import convolution_tiler, verify_tiling
from .ztiling import (crt_lift, fold_mod, verify_ztiling, z_convolution_tiler,
                      z_min_support_detail)

__all__ = ["main", "run", "build_parser"]

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_EXHAUSTED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _num(text: str) -> FieldNum:
    try:
        return fnum(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a field number: {text!r} ({exc})") from None


def _cnum(text: str) -> ComplexField:
    try:
        return cnum(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a complex field number: {text!r} ({exc})") from None


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="simultile", description="Exact simultaneous tilings by two progressions.")
    ap.add_argument("--out", help="write the JSON report here instead of stdout")
    ap.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")
    # the report options are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", parents=[common], help="build a tiling and certify it")
    c.add_argument("--kind", required=True, choices=["convolution", "fn", "a31", "a25", "a26"])
    c.add_argument("--alpha", type=_num, default=FieldNum(1))
    c.add_argument("--beta", type=_num, default=SQRT)
    c.add_argument("--lam", type=_cnum, default=ComplexField(1))
    c.add_argument("--p", type=int, default=2)
    c.add_argument("--q", type=int, default=3)
    c.add_argument("--gamma", type=_num)
    c.add_argument("--eps", type=_num)
    c.add_argument("--rounds", type=int, default=4)
    c.add_argument("--kronecker-budget", type=int, default=DEFAULT_BUDGET.max_k)
    c.add_argument("--out-dir", default=".")
    c.add_argument("--svg", help="write an SVG rendering to this path")

    v = sub.add_parser("verify", parents=[common], help="verify a piecewise function tiles at given levels")
    v.add_argument("f")
    v.add_argument("--alpha", type=_num, default=FieldNum(1))
    v.add_argument("--beta", type=_num, default=SQRT)
    v.add_argument("--p", type=_cnum, required=True)
    v.add_argument("--q", type=_cnum, required=True)
    v.add_argument("--domain-a")
    v.add_argument("--domain-b")

    z = sub.add_parser("ztile", parents=[common], help="integer tilings by nZ and mZ")
    z.add_argument("--n", type=int, required=True)
    z.add_argument("--m", type=int, required=True)
    z.add_argument("--verify", dest="verify_file", help="verify the ZFunction in this file")
    z.add_argument("--verify-self", action="store_true", help="verify the convolution tiler")
    z.add_argument("--min-support", action="store_true")
    z.add_argument("--cap", type=int, default=36)
    z.add_argument("--crt", action="store_true", help="lift the folded tiler to an n x m array")

    d = sub.add_parser("dsarray", parents=[common], help="doubly stochastic arrays with uniform marginals")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--m", type=int, required=True)
    mode = d.add_mutually_exclusive_group()
    mode.add_argument("--min-support", action="store_true", help="support of the northwest array")
    mode.add_argument("--exhaustive", action="store_true", help="exhaustive minimum-support search")
    d.add_argument("--cap", type=int, default=30)

    g = sub.add_parser("graph", help="cell graphs of elementary sets")
    gsub = g.add_subparsers(dest="graph_command", required=True, parser_class=_Parser)
    ga = gsub.add_parser("analyze", parents=[common], help="leaves removal and component analysis")
    ga.add_argument("omega")
    ga.add_argument("--weights")
    ga.add_argument("--alpha", type=_num, default=FieldNum(1))
    ga.add_argument("--beta", type=_num, default=SQRT)
    ga.add_argument("--start", choices=["A", "B"], default="A")
    ga.add_argument("--closure-cap", type=int, default=64)
    ga.add_argument("--trace-json")
    ga.add_argument("--svg")

    b = sub.add_parser("bound", parents=[common], help="support-size lower bounds")
    b.add_argument("--alpha", type=_num)
    b.add_argument("--beta", type=_num)
    b.add_argument("--p", type=int)
    b.add_argument("--q", type=int)
    b.add_argument("--n", type=int)
    b.add_argument("--m", type=int)
    return ap


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _load(path: str, loader, inputs: dict):
    try:
        obj = ser.read_json(path)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    inputs[path] = _digest(path)
    try:
        return loader(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed {path}: {exc}") from None


def _cert_code(cert) -> int:
    return EXIT_OK if cert.ok else EXIT_FAILED


# -- subcommands -------------------------------------------------------------

def _cmd_construct(a, inputs) -> tuple[int, dict]:
    budget = ShiftSearchBudget(max_k=a.kronecker_budget, doublings=DEFAULT_BUDGET.doublings)
    alpha, beta = a.alpha, a.beta
    report: dict = {"kind": a.kind}
    if a.kind == "convolution":
        f = convolution_tiler(alpha, beta, a.lam)
        cert = verify_tiling(f, alpha, beta, a.lam * beta, a.lam * alpha)
        dom_a, dom_b = cert.verified_domain_a, cert.verified_domain_b
    elif a.kind == "fn":
        if a.gamma is None:
            raise UsageError("--gamma is required for --kind fn")
        t = fn_tiler(a.p, a.q, a.gamma, alpha, beta, budget)
        f, dom_a, dom_b = t
        cert = verify_tiling(f, alpha, beta, a.p, a.q, dom_a, dom_b)
        report["shifts"] = {"n": list(t.system.n_shifts), "m": list(t.system.m_shifts)}
        report["array"] = ser.dump_dsarray(t.array)
    else:
        if a.kind == "a31":
            t = thm_a31_truncated(a.p, a.q, a.rounds, alpha, beta, budget)
        elif a.kind == "a25":
            if a.eps is None:
                raise UsageError("--eps is required for --kind a25")
            t = thm_a25_truncated(a.p, a.q, a.eps, a.rounds, alpha, beta, budget)
        else:
            if a.eps is None:
                raise UsageError("--eps is required for --kind a26")
            t = thm_a26_truncated(a.eps, a.rounds, alpha, beta, budget)
        f, dom_a, dom_b = t.f, t.covered_a, t.covered_b
        cert = t.certificate()
        report["rounds"] = t.rounds
        report["residual_a"] = ser.show(t.residual_a)
        report["residual_b"] = ser.show(t.residual_b)
    out_dir = Path(a.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ser.write_json(out_dir / "f.json", ser.dump_fn(f))
    ser.write_json(out_dir / "domains.json", {"domain_a": ser.dump_set(dom_a),
                                              "domain_b": ser.dump_set(dom_b),
                                              "support": ser.dump_set(f.support())})
    ser.write_json(out_dir / "certificate.json", ser.dump_certificate(cert))
    report["files"] = sorted(str(out_dir / n) for n in ("f.json", "domains.json", "certificate.json"))
    if a.svg:
        Path(a.svg).write_text(svg_construction(f, alpha, beta, dom_a, dom_b, title=a.kind))
        report["svg"] = a.svg
    report["support_measure"] = ser.show(f.support().measure())
    report["status"] = cert.status
    report["p"] = ser.show(cert.level_p)
    report["q"] = ser.show(cert.level_q)
    return _cert_code(cert), report


def _cmd_verify(a, inputs) -> tuple[int, dict]:
    f = _load(a.f, ser.load_fn, inputs)
    da = _load(a.domain_a, ser.load_set, inputs) if a.domain_a else None
    db = _load(a.domain_b, ser.load_set, inputs) if a.domain_b else None
    cert = verify_tiling(f, a.alpha, a.beta, a.p, a.q, da, db)
    return _cert_code(cert), {"status": cert.status, "certificate": ser.dump_certificate(cert)}


def _ztile_result(res) -> dict:
    if res.ok:
        return {"status": res.status, "p": ser.show(res.p), "q": ser.show(res.q)}
    return {"status": res.status, "witness": res.witness, "progression": res.progression,
            "found": ser.show(res.found), "expected": ser.show(res.expected)}


def _cmd_ztile(a, inputs) -> tuple[int, dict]:
    n, m = a.n, a.m
    if n < 1 or m < 1:
        raise UsageError("--n and --m must be positive")
    code = EXIT_OK
    g = z_convolution_tiler(n, m)
    report: dict = {"n": n, "m": m, "tiler": ser.dump_zfunction(g), "tiler_support": len(g)}
    if a.verify_self or not (a.verify_file or a.min_support or a.crt):
        res = verify_ztiling(g, n, m)
        report["self_check"] = _ztile_result(res)
        code = max(code, EXIT_OK if res.ok else EXIT_FAILED)
    if a.verify_file:
        h = _load(a.verify_file, ser.load_zfunction, inputs)
        res = verify_ztiling(h, n, m)
        report["verify"] = _ztile_result(res)
        code = max(code, EXIT_OK if res.ok else EXIT_FAILED)
    if a.min_support:
        r = z_min_support_detail(n, m, a.cap)
        report["min_support"] = {"size": r.size, "positions": list(r.positions),
                                 "tiling": ser.dump_zfunction(r.tiling), "examined": r.examined,
                                 "formula": n + m - math.gcd(n, m)}
    if a.crt:
        if math.gcd(n, m) != 1:
            raise UsageError(f"--crt needs coprime moduli, gcd({n}, {m}) = {math.gcd(n, m)}")
        M = crt_lift(fold_mod(g, n * m), n, m)
        ok = verify_marginals(M)
        report["crt"] = {"array": ser.dump_dsarray(M), "marginals_ok": ok}
        code = max(code, EXIT_OK if ok else EXIT_FAILED)
    return code, report


def _cmd_dsarray(a, inputs) -> tuple[int, dict]:
    n, m = a.n, a.m
    if n < 1 or m < 1:
        raise UsageError("--n and --m must be positive")
    M = nw_minimal(n, m)
    ok = verify_marginals(M)
    report: dict = {"n": n, "m": m, "array": ser.dump_dsarray(M), "marginals_ok": ok,
                    "support": len(M.support().cells), "formula": min_support_formula(n, m)}
    if a.exhaustive:
        r = min_support_search(n, m, a.cap)
        report["minimum"] = r.size
        report["pattern"] = [list(c) for c in r.pattern.sorted_cells()]
        report["examined"] = r.examined
    elif a.min_support:
        report["minimum"] = len(M.support().cells)
    return (EXIT_OK if ok else EXIT_FAILED), report


def _cmd_graph(a, inputs) -> tuple[int, dict]:
    omega = _load(a.omega, ser.load_set, inputs)
    if omega.ambient is not None:
        raise UsageError("omega must be a set on the line")
    w = _load(a.weights, ser.load_fn, inputs) if a.weights else None
    G = induce_cell_graph(omega, a.alpha, a.beta, w, closure_rounds_cap=a.closure_cap)
    trace = iterate_removal(G, start=a.start)
    profile = {str(k): {"a": ser.show(ma), "b": ser.show(mb)}
               for k, (ma, mb) in sorted(degree_profile(G).items())}
    comps = component_analysis(G)
    report = {"graph": ser.dump_graph(G), "degree_profile": profile,
              "trace": ser.dump_trace(trace),
              "components": [ser.dump_component(c) for c in comps]}
    if a.trace_json:
        ser.write_json(a.trace_json, ser.dump_trace(trace))
    if a.svg:
        Path(a.svg).write_text(svg_graph(G))
    bad = any(c.double_count_ok is False for c in comps)
    return (EXIT_FAILED if bad else EXIT_OK), report


def _cmd_bound(a, inputs) -> tuple[int, dict]:
    if a.n is not None or a.m is not None:
        if a.n is None or a.m is None or a.n < 1 or a.m < 1:
            raise UsageError("--n and --m must both be positive")
        return EXIT_OK, {"setting": "integers", "n": a.n, "m": a.m,
                         "min_support": a.n + a.m - math.gcd(a.n, a.m)}
    if a.alpha is None or a.beta is None:
        raise UsageError("give --alpha and --beta, or --n and --m")
    alpha, beta = a.alpha, a.beta
    if alpha.sign() <= 0 or beta.sign() <= 0:
        raise UsageError("--alpha and --beta must be positive")
    if not rationally_independent(alpha, beta):
        raise UsageError("--alpha and --beta must be rationally independent")
    report = {"setting": "line", "alpha": ser.show(alpha), "beta": ser.show(beta)}
    p, q = a.p, a.q
    if p is None and q is None:
        report.update(infimum=ser.show(alpha + beta), attained=False,
                      note="supports exceed alpha + beta minus an arbitrarily small amount")
    elif (p, q) == (1, 0) or (p, q) == (0, 1):
        L = alpha if p == 1 else beta
        report.update(p=p, q=q, infimum=ser.show(L), attained=False)
    elif p is not None and q is not None and p > 0 and q > 0 and math.gcd(p, q) == 1:
        report.update(p=p, q=q, bound=ser.show(alpha + beta - min(alpha / q, beta / p)),
                      strict=True)
    else:
        raise UsageError("levels must be coprime positive integers, or (1, 0) / (0, 1)")
    return EXIT_OK, report


_DISPATCH = {"construct": _cmd_construct, "verify": _cmd_verify, "ztile": _cmd_ztile,
             "dsarray": _cmd_dsarray, "graph": _cmd_graph, "bound": _cmd_bound}


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    """Execute one command; return the exit code and the report written."""
    argv = list(sys.argv[1:] if argv is None else argv)
    report: dict = {"command": ["simultile", *argv], "inputs": {}}
    start = time.perf_counter()
    a = None
    try:
        a = build_parser().parse_args(argv)
    except UsageError as exc:
        report.update(exit_code=EXIT_USAGE, error=str(exc))
        print(report["error"], file=sys.stderr)
        return EXIT_USAGE, report
    except SystemExit as exc:
        # --help
        return (EXIT_OK if not exc.code else EXIT_USAGE), report
    try:
        code, body = _DISPATCH[a.command](a, report["inputs"])
        report.update(body)
    except UsageError as exc:
        code = EXIT_USAGE
        report["error"] = str(exc)
    except (SearchExhausted, ClosureDiverged) as exc:
        code = EXIT_EXHAUSTED
        report["error"] = f"{type(exc).__name__}: {exc}"
    except (SimultileError, ValueError) as exc:
        code = EXIT_USAGE
        report["error"] = f"{type(exc).__name__}: {exc}"
    report["exit_code"] = code
    if a.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 6)
    text = json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)
    if a.out:
        Path(a.out).write_text(text + "\n")
    else:
        print(text)
    if "error" in report:
        print(report["error"], file=sys.stderr)
    return code, report


def main(argv: list[str] | None = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
