"""Exact JSON encodings for the value types.

Rationals are written as decimal strings ``"p/q"`` so nothing passes
through floating point; every ``load_*`` inverts the matching ``dump_*``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .dsarray import DSArray
from .graph import CellGraph, ComponentSummary, RemovalTrace
from .numeric import ComplexField, FieldNum, cnum, fnum, session_d
from .sets import ElementarySet, Interval
from .stepfn import CirclePiecewiseFn, Piece, PiecewiseFn, TilingCertificate
from .ztiling import ZFunction

__all__ = [
    "dump_fieldnum", "load_fieldnum", "dump_complex", "load_complex",
    "dump_set", "load_set", "dump_fn", "load_fn", "dump_zfunction", "load_zfunction",
    "dump_dsarray", "load_dsarray", "dump_certificate", "dump_graph", "dump_trace",
    "show", "read_json", "write_json",
]


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def dump_fieldnum(x: FieldNum) -> dict:
    return {"r": _q(x.r), "s": _q(x.s), "d": x.d}


def load_fieldnum(obj) -> FieldNum:
    """Accepts the object form or a plain number/expression such as ``"1+sqrt(2)"``."""
    if isinstance(obj, (int, str)):
        return fnum(obj)
    d = obj.get("d", session_d())
    if d != session_d():
        raise ValueError(f"value lives in Q(sqrt {d}) but the session field is Q(sqrt {session_d()})")
    return FieldNum(Fraction(obj["r"]), Fraction(obj.get("s", "0")))


def dump_complex(z: ComplexField) -> dict:
    return {"re": dump_fieldnum(z.re), "im": dump_fieldnum(z.im)}


def load_complex(obj) -> ComplexField:
    if isinstance(obj, dict) and "re" in obj:
        return ComplexField(load_fieldnum(obj["re"]), load_fieldnum(obj.get("im", 0)))
    if isinstance(obj, str):
        return cnum(obj)
    return ComplexField(load_fieldnum(obj))


def dump_set(X: ElementarySet) -> dict:
    ambient = "line" if X.ambient is None else {"circle": dump_fieldnum(X.ambient)}
    return {"ambient": ambient,
            "parts": [{"lo": dump_fieldnum(iv.lo), "hi": dump_fieldnum(iv.hi)} for iv in X.parts]}


def load_set(obj) -> ElementarySet:
    amb = obj.get("ambient", "line")
    ambient = None if amb == "line" else load_fieldnum(amb["circle"])
    parts = [Interval(load_fieldnum(p["lo"]), load_fieldnum(p["hi"])) for p in obj["parts"]]
    return ElementarySet(parts, ambient)


def dump_fn(f: PiecewiseFn) -> dict:
    out = {"pieces": [{"lo": dump_fieldnum(p.lo), "hi": dump_fieldnum(p.hi),
                       "c0": dump_complex(p.c0), "c1": dump_complex(p.c1)} for p in f.pieces]}
    if isinstance(f, CirclePiecewiseFn):
        out["modulus"] = dump_fieldnum(f.modulus)
    return out


def load_fn(obj) -> PiecewiseFn:
    pieces = [Piece(Interval(load_fieldnum(p["lo"]), load_fieldnum(p["hi"])),
                    load_complex(p["c0"]), load_complex(p.get("c1", 0))) for p in obj["pieces"]]
    if "modulus" in obj:
        return CirclePiecewiseFn(load_fieldnum(obj["modulus"]), pieces)
    return PiecewiseFn(pieces)


def dump_zfunction(g: ZFunction) -> dict:
    return {"values": {str(t): dump_complex(v) for t, v in g.values.items()}}


def load_zfunction(obj) -> ZFunction:
    return ZFunction({int(t): load_complex(v) for t, v in obj["values"].items()})


def dump_dsarray(M: DSArray) -> dict:
    return {"n": M.n, "m": M.m, "entries": [[dump_complex(x) for x in row] for row in M.entries]}


def load_dsarray(obj) -> DSArray:
    M = DSArray([[load_complex(x) for x in row] for row in obj["entries"]])
    if (M.n, M.m) != (obj.get("n", M.n), obj.get("m", M.m)):
        raise ValueError("declared shape does not match entries")
    return M


def show(x) -> dict:
    """Exact rendering plus a 12-digit decimal annotation for reports."""
    return {"exact": str(x), "decimal": x.to_decimal(12)}


def dump_certificate(c: TilingCertificate) -> dict:
    out = {
        "status": c.status,
        "alpha": dump_fieldnum(c.modulus_a),
        "beta": dump_fieldnum(c.modulus_b),
        "p": dump_complex(c.level_p),
        "q": dump_complex(c.level_q),
        "verified_domain_a": dump_set(c.verified_domain_a),
        "verified_domain_b": dump_set(c.verified_domain_b),
        "verified_measure_a": show(c.verified_domain_a.measure()),
        "verified_measure_b": show(c.verified_domain_b.measure()),
        "exceptional_points_a": [dump_fieldnum(x) for x in c.exceptional_points_a],
        "exceptional_points_b": [dump_fieldnum(x) for x in c.exceptional_points_b],
        "failure": None,
    }
    if c.failure is not None:
        out["failure"] = {"side": c.failure.side, "witness": dump_fieldnum(c.failure.witness),
                          "witness_text": show(c.failure.witness),
                          "found": dump_complex(c.failure.found),
                          "expected": dump_complex(c.failure.expected)}
    return out


def _opt(x):
    return None if x is None else dump_complex(x)


def dump_graph(G: CellGraph) -> dict:
    return {
        "alpha": dump_fieldnum(G.alpha),
        "beta": dump_fieldnum(G.beta),
        "a_cells": [{"arc": dump_set(c.arc), "measure": dump_fieldnum(c.measure)} for c in G.a_cells],
        "b_cells": [{"arc": dump_set(c.arc), "measure": dump_fieldnum(c.measure)} for c in G.b_cells],
        "edge_cells": [{"lo": dump_fieldnum(e.interval.lo), "hi": dump_fieldnum(e.interval.hi),
                        "measure": dump_fieldnum(e.measure), "weight": _opt(e.weight),
                        "a_index": e.a_index, "b_index": e.b_index} for e in G.edge_cells],
        "measure_a": show(G.measure_a()), "measure_b": show(G.measure_b()),
        "measure_e": show(G.measure_e()), "eta": show(G.eta()),
    }


def dump_component(c: ComponentSummary) -> dict:
    return {
        "is_finite_tree": c.is_finite_tree, "a_count": c.a_count, "b_count": c.b_count,
        "edge_count": c.edge_count, "a_measure": dump_fieldnum(c.a_measure),
        "b_measure": dump_fieldnum(c.b_measure),
        "total_weight_from_a": _opt(c.total_weight_from_a),
        "total_weight_from_b": _opt(c.total_weight_from_b),
        "weight_p": _opt(c.weight_p), "weight_q": _opt(c.weight_q),
        "double_count_ok": c.double_count_ok,
        "a_indices": list(c.a_indices), "b_indices": list(c.b_indices),
    }


def dump_trace(T: RemovalTrace) -> dict:
    return {
        "steps": [{"side": s.side, "eta": dump_fieldnum(s.eta),
                   "removed_leaves_measure": dump_fieldnum(s.removed_leaves_measure),
                   "jump_measure": dump_fieldnum(s.jump_measure)} for s in T.steps],
        "final_eta": dump_fieldnum(T.final_eta),
        "total_jump": dump_fieldnum(T.total_jump),
        "total_jump_text": show(T.total_jump),
        "exhausted": T.exhausted,
        "components": [dump_component(c) for c in T.components],
    }


def read_json(path) -> object:
    return json.loads(Path(path).read_text())


def write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
