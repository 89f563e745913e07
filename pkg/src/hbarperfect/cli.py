"""Command line entry point.  Every subcommand prints one JSON document."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .bracket import Budget, beta_bracket, qubit_budget
from .decide import Decider, census
from .errors import HbarError, IoError
from .fixtures import load_graph
from .graph import encode_graph6
from .pauli import Realization, gf2_rank, realize_min
from .seesaw import DEFAULT_SEED
from .stab import alpha, classify_facets, facet_json, is_perfect, stab_facets


class _Inputs:
    """Reads inputs and hashes everything it reads, in order."""

    def __init__(self):
        self.digest = hashlib.sha256()

    def text(self, path):
        try:
            data = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        except OSError as exc:
            raise IoError(str(exc), path=path) from exc
        self.digest.update(data.encode())
        return data

    def literal(self, s):
        self.digest.update(str(s).encode())
        return s

    def json(self, path):
        return json.loads(self.text(path))

    def graph(self, spec):
        if spec == "-" or os.path.exists(spec):
            return load_graph(self.text(spec).split()[0])
        return load_graph(self.literal(spec))

    def graphs(self, spec):
        if spec == "-" or os.path.exists(spec):
            return [load_graph(line) for line in self.text(spec).splitlines() if line.strip()]
        return [load_graph(self.literal(spec))]

    def strings(self, path):
        return self.text(path).split()


def _number(x):
    if isinstance(x, str) and "/" in x:
        return Fraction(x)
    return x


def plain(obj):
    """JSON-ready copy: 9 significant digits for floats, "p/q" for non-integral rationals."""
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if not np.isfinite(x) else float(f"{x:.9g}")
    if isinstance(obj, complex):
        return [plain(obj.real), plain(obj.imag)]
    if isinstance(obj, np.ndarray):
        return plain(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if hasattr(obj, "to_json"):
        return plain(obj.to_json())
    return obj


def _budget(args):
    levels = ("A", "B", "C")[: "ABC".index(args.basis) + 1]
    return Budget(restarts=args.restarts, seed=args.seed, definetti_m=args.m, levels=levels,
                  sdp_tol=args.sdp_tol, sdp_max_iters=args.sdp_max_iters)


def _config(args):
    skip = {"func", "pretty", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _bracket_json(br):
    d = {k: v for k, v in br.details.items() if k != "state"}
    return {**br.to_json(), "details": d}


# subcommands ------------------------------------------------------------------------


def cmd_realize(args, io):
    g = io.graph(args.graph)
    r = realize_min(g)
    return {"graph6": encode_graph6(g), "length": r.length, "rank": gf2_rank(list(g.adj)), "strings": r.labels()}


def cmd_alpha(args, io):
    g = io.graph(args.graph)
    w = None if args.weights is None else [_number(x) for x in io.json(args.weights)]
    value, vertices = alpha(g, w)
    return {"alpha": value, "set": vertices}


def cmd_beta(args, io):
    g = io.graph(args.graph)
    w = [1] * g.n if args.weights is None else [float(_number(x)) for x in io.json(args.weights)]
    br = beta_bracket(g, w, _budget(args))
    return {"alpha": alpha(g, [_number(x) for x in w])[0], **_bracket_json(br)}


def cmd_facets(args, io):
    g = io.graph(args.graph)
    p = stab_facets(g)
    return {"graph6": encode_graph6(g), "vertices": len(p.vertices), "facets": [facet_json(g, f) for f in p.facets]}


def cmd_check_hperfect(args, io):
    g = io.graph(args.graph)
    p = stab_facets(g)
    classes, summary = classify_facets(p)
    counts = {}
    for f in p.facets:
        tag = facet_json(g, f)["class"]
        counts[tag] = counts.get(tag, 0) + 1
    return {"h_perfect": summary["is_h_perfect"], "classes": counts}


def cmd_check_perfect(args, io):
    g = io.graph(args.graph)
    return {"perfect": is_perfect(g)}


def _decider(args, io):
    extra = []
    if args.forbidden:
        extra = [(encode_graph6(h), h) for h in io.graphs(args.forbidden)]
    return Decider(tol=args.tol, budget=_budget(args), forbidden=extra)


def cmd_decide_hbar(args, io):
    graphs = io.graphs(args.graph)
    d = _decider(args, io)
    out = [{"graph6": encode_graph6(g), **d.decide(g).to_json()} for g in graphs]
    return out[0] if len(out) == 1 else {"verdicts": out}


def cmd_census(args, io):
    graphs = io.graphs(args.file)
    res = census(graphs, jobs=args.jobs, tol=args.tol, budget=_budget(args))
    return {"rows": res["rows"], "imperfect": res["imperfect"]}


def cmd_ground_bound(args, io):
    from .applications.ground import ground_bound

    a = [float(_number(x)) for x in io.json(args.coeffs)]
    strings = io.strings(args.strings)
    w = None if args.weights is None else [float(_number(x)) for x in io.json(args.weights)]
    return ground_bound(a, Realization.from_strings(strings), w, budget=_budget(args))


def cmd_delta(args, io):
    from .applications.delta import delta_bounds

    g = io.graph(args.graph)
    return delta_bounds(g, refine=args.refine_omega, budget=_budget(args))


def _density(obj):
    rho = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj.get("im", np.zeros_like(obj["re"])), dtype=float)
    return rho


def cmd_witness(args, io):
    from .applications.entanglement import nonlinear_witness

    rho = _density(io.json(args.state))
    sa, sb = io.strings(args.strings_a), io.strings(args.strings_b)
    w = None if args.weights is None else [float(_number(x)) for x in io.json(args.weights)]
    return nonlinear_witness(rho, sa, sb, w)


def cmd_ghz_criterion(args, io):
    from .applications.entanglement import multipartite_criterion
    from .applications.states import GHZ_STABILIZERS

    stabs = GHZ_STABILIZERS if args.stabilizers is None else io.strings(args.stabilizers)
    w = None if args.weights is None else [float(_number(x)) for x in io.json(args.weights)]
    crit = multipartite_criterion(stabs, w)
    out = crit.to_json()
    if args.expectations is not None:
        out["evaluation"] = crit.evaluate(expectations=[float(x) for x in io.json(args.expectations)])
    return out


def cmd_uncertainty(args, io):
    g = io.graph(args.graph)
    caps = [None if c is None else _number(c) for c in io.json(args.caps)]
    if args.sdp:
        from .moment import uncertainty_sdp

        sol = uncertainty_sdp(g, args.target, caps)
        return {"method": "sdp", "min_variance": sol.value, "status": sol.status}
    from .applications.uncertainty import uncertainty_lp

    res = uncertainty_lp(g, args.target, caps)
    return {"method": "lp", **res}


def cmd_qubit_budget(args, io):
    io.literal((args.n, args.c, args.eps))
    out = qubit_budget(args.n, args.c, args.eps)
    if float(out["l"]).is_integer():
        out["l"] = int(out["l"])
    return out


# parser -----------------------------------------------------------------------------


def _default_seed():
    env = os.environ.get("HBAR_SEED")
    return int(env) if env else DEFAULT_SEED


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human readable output")
    common.add_argument("--seed", type=int, default=_default_seed())
    common.add_argument("--tol", type=float, default=1e-5)
    common.add_argument("--restarts", type=int, default=10)
    common.add_argument("--m", type=int, default=8, help="de Finetti level")
    common.add_argument("--basis", choices="ABC", default="C", help="highest moment-SDP level")
    common.add_argument("--sdp-tol", type=float, default=1e-7)
    common.add_argument("--sdp-max-iters", type=int, default=20_000)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--output", "-o", default=None, help="write JSON here instead of stdout")

    p = argparse.ArgumentParser(prog="hbar", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, *graph_args):
        s = sub.add_parser(name, parents=[common])
        for a in graph_args:
            s.add_argument(a)
        s.set_defaults(func=func)
        return s

    add("realize", cmd_realize, "graph")
    add("alpha", cmd_alpha, "graph").add_argument("--weights")
    add("beta", cmd_beta, "graph").add_argument("--weights")
    add("facets", cmd_facets, "graph")
    add("check-hperfect", cmd_check_hperfect, "graph")
    add("check-perfect", cmd_check_perfect, "graph")
    add("decide-hbar", cmd_decide_hbar, "graph").add_argument("--forbidden")
    add("census", cmd_census, "file")
    s = add("ground-bound", cmd_ground_bound)
    s.add_argument("--coeffs", required=True)
    s.add_argument("--strings", required=True)
    s.add_argument("--weights")
    add("delta", cmd_delta, "graph").add_argument("--refine-omega", action="store_true")
    s = add("witness", cmd_witness)
    s.add_argument("--state", required=True)
    s.add_argument("--strings-a", required=True)
    s.add_argument("--strings-b", required=True)
    s.add_argument("--weights")
    s = add("ghz-criterion", cmd_ghz_criterion)
    s.add_argument("--expectations")
    s.add_argument("--weights")
    s.add_argument("--stabilizers")
    s = add("uncertainty", cmd_uncertainty, "graph")
    s.add_argument("--target", type=int, required=True)
    s.add_argument("--caps", required=True)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--lp", action="store_true")
    mode.add_argument("--sdp", action="store_true")
    s = add("qubit-budget", cmd_qubit_budget)
    s.add_argument("--n", type=float, required=True)
    s.add_argument("--c", type=float, required=True)
    s.add_argument("--eps", type=float, required=True)
    return p


def _pretty(result):
    if isinstance(result, dict) and "rows" in result:
        cols = ["n", "connected", "perfect", "h_perfect", "hbar_perfect", "hbar_imperfect", "undetermined"]
        lines = ["  ".join(f"{c:>14}" for c in cols)]
        lines += ["  ".join(f"{row[c]:>14}" for c in cols) for row in result["rows"]]
        lines += [f"imperfect: {x['graph6']} (chromatic number {x['chromatic_number']})" for x in result["imperfect"]]
        return "\n".join(lines)
    return json.dumps(result, indent=2)


def main(argv=None):
    args = build_parser().parse_args(argv)
    io = _Inputs()
    try:
        result = plain(args.func(args, io))
        doc = {"tool_version": __version__, "config": _config(args), "input_digest": io.digest.hexdigest(),
               "result": result}
        text = _pretty(result) if args.pretty else json.dumps(doc)
        code = 0
    except HbarError as exc:
        text = json.dumps(plain(exc.to_json()))
        code = 2
    except (ValueError, KeyError) as exc:
        text = json.dumps({"code": "InvalidInput", "message": str(exc), "context": {}})
        code = 2
    if args.output and code == 0:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=sys.stdout if code == 0 else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
