"""Command-line interface.

Input is one structured JSON document per knot/link spec; subcommands
expose each pipeline stage.  Exit codes: 0 success, 2 schema error,
3 unsupported shape.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import alexander, calculus, metabolizers as mb, pipeline, seifert as sf, specs
from .laurent import render as lrender

F = Fraction

EXIT_SCHEMA = 2
EXIT_UNSUPPORTED = 3

_UNSUPPORTED = (alexander.NotCyclic, alexander.UnsupportedModule,
                calculus.UnsupportedLink, calculus.MissingBaseFact,
                mb.NotRepresentable, mb.WrongGenus, mb.NotMetabolic,
                mb.RankMismatch, sf.NotAKnot)


def _load_spec(path):
    with open(path, "r", encoding="utf-8") as fh:
        return pipeline.ingest(fh.read())


def _load_assumptions(path):
    if not path:
        return None
    with open(path, "r", encoding="utf-8") as fh:
        return pipeline.load_assumptions(fh.read())


def _need_knot(spec):
    if not isinstance(spec, specs.KnotSpec):
        raise specs.SchemaError("this subcommand expects a knot spec")
    return spec


def _matrix(spec):
    v = specs.seifert_matrix(_need_knot(spec))
    if v is None:
        raise mb.NotRepresentable(
            f"abstract knot {spec.name} carries no Seifert data")
    return v


def _emit(args, payload_dict, text):
    if args.format == "json":
        print(json.dumps(payload_dict, indent=2, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="concord",
        description="exact knot-concordance obstructions from Seifert data")
    ap.add_argument("--precision", default="1/1000000000",
                    help="target enclosure radius for rho0 (rational)")
    ap.add_argument("--assume", default="",
                    help="JSON file of assumptions for opaque atoms")
    ap.add_argument("--format", choices=["text", "json", "csv"],
                    default="text")
    ap.add_argument("--search-bound", type=int, default=3,
                    help="entry bound for higher-genus metabolizer search")
    ap.add_argument("--enumerate-metabolizers", action="store_true",
                    help="list every catalogued metabolizer per Lagrangian")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("alexpoly", "sigfn", "rho0", "algslice", "metabolizers",
                 "lagrangians", "first-order", "second-order", "cooper",
                 "verdict", "report"):
        p = sub.add_parser(name)
        p.add_argument("spec", help="path to a knot/link JSON document")
    args = ap.parse_args(argv)

    try:
        spec = _load_spec(args.spec)
        assumptions = _load_assumptions(args.assume)
        radius = F(args.precision)
        return _dispatch(args, spec, assumptions, radius)
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except specs.SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except _UNSUPPORTED as exc:
        print(f"unsupported shape: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


def _dispatch(args, spec, assumptions, radius) -> int:
    cmd = args.command
    if cmd == "alexpoly":
        v = _matrix(spec)
        delta = sf.alexander_poly(v)
        _emit(args, {"name": spec.name, "alexander_polynomial": lrender(delta)},
              lrender(delta))
        return 0
    if cmd == "sigfn":
        v = _matrix(spec)
        print(sf.signature_function_csv(v), end="")
        return 0
    if cmd == "rho0":
        v = _matrix(spec)
        r = sf.rho0(v, radius)
        _emit(args, {"name": spec.name, "mid": str(r.mid), "rad": str(r.rad)},
              f"rho0({spec.name}) = {r.mid} +- {r.rad}")
        return 0
    if cmd == "algslice":
        v = _matrix(spec)
        search = mb.catalogued_metabolizers(_need_knot(spec))
        slice_ = len(search) > 0
        _emit(args, {"name": spec.name, "algebraically_slice": slice_,
                     "search_complete": search.complete},
              f"{spec.name}: algebraically slice = {slice_} "
              f"(search complete = {search.complete})")
        return 0
    if cmd == "metabolizers":
        v = _matrix(spec)
        if v.genus == 1:
            items = mb.genus1_metabolizers(v)
            complete = True
        elif v.genus == 0:
            items, complete = [], True
        else:
            search = mb.higher_genus_metabolizers(v, args.search_bound)
            items, complete = list(search), search.complete
        text = [f"complete: {complete}"] + [str(list(map(list, m.basis)))
                                            for m in items]
        _emit(args, {"name": spec.name, "complete": complete,
                     "items": [[list(b) for b in m.basis] for m in items]},
              "\n".join(text))
        return 0
    if cmd == "lagrangians":
        mod = pipeline.knot_module(_need_knot(spec))
        lags = alexander.lagrangians(mod) if mod.dim else []
        _emit(args, {"name": spec.name,
                     "lagrangians": [lrender(l.order_ideal) for l in lags]},
              "\n".join(lrender(l.order_ideal) for l in lags) or "(none)")
        return 0
    if cmd == "first-order":
        if isinstance(spec, specs.LinkSpec):
            exprs = pipeline.link_first_order_sigs(spec)
            _emit(args, {"name": spec.name,
                         "first_order": [x.render() for x in exprs]},
                  "\n".join(x.render() for x in exprs))
            return 0
        entries = pipeline.knot_first_order_sigs(spec)
        _emit(args, {"name": spec.name, "first_order": [
            {"order": lrender(e.submodule.order_ideal),
             "expr": e.expr.render(), "route": e.route} for e in entries]},
              "\n".join(f"{lrender(e.submodule.order_ideal)}: "
                        f"{e.expr.render()}" for e in entries))
        return 0
    if cmd == "second-order":
        so = pipeline.second_order_set(_need_knot(spec), assumptions)
        payload = {"name": spec.name, "degenerate": so.degenerate,
                   "members": [x.render() for x in so.members],
                   "entries": [{
                       "lagrangian_order": lrender(e.lagrangian.order_ideal),
                       "first_order": e.first_order_expr.render(),
                       "excluded": e.certified_nonzero,
                       "metabolizer": None if e.metabolizer is None
                       else [list(b) for b in e.metabolizer.basis],
                       "derivative": None if e.derivative is None
                       else e.derivative.link.name,
                       "exprs": [x.render() for x in e.exprs],
                       "note": e.note} for e in so.entries]}
        _emit(args, payload,
              "\n".join(payload["members"]) or "(empty)")
        return 0
    if cmd == "cooper":
        rows = pipeline.cooper_check(spec, assumptions)
        _emit(args, {"name": spec.name, "rows": [r.as_dict() for r in rows]},
              "\n".join(f"{r.subject}: c={r.components} eta={r.nullity} "
                        f"bound={r.bound} value={r.expr.render()} "
                        f"-> {r.status}" for r in rows) or "(no rows)")
        return 0
    if cmd == "verdict":
        spec = _need_knot(spec)
        verdicts = {
            "zeroth": pipeline.zeroth_order_verdict(spec, assumptions, radius),
            "first": pipeline.first_order_verdict(spec, assumptions),
            "second": pipeline.second_order_verdict(spec, assumptions)}
        _emit(args, {k: v.as_dict() for k, v in verdicts.items()},
              "\n".join(f"{k}: {v.conclusion} ({v.witness})"
                        for k, v in verdicts.items()))
        return 0
    if cmd == "report":
        spec = _need_knot(spec)
        if args.format == "json":
            print(pipeline.report_json(
                spec, assumptions, target_radius=radius,
                enumerate_metabolizers=args.enumerate_metabolizers))
        else:
            print(pipeline.report_text(spec, assumptions,
                                       target_radius=radius), end="")
        return 0
    raise AssertionError(f"unhandled command {cmd}")


if __name__ == "__main__":
    sys.exit(main())
