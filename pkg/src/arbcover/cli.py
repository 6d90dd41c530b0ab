"""Command line front end: ``arbcover solve|oracle|check|gen``.

Instances are JSON documents::

    {"nodes": ["r", "a", "b"],
     "arcs": [{"id": "e0", "tail": "r", "head": "a", "cost": 1, "weight": 1}],
     "root": "r",
     "laminar": [["a", "b"]],
     "problem": "blocker"}

``cost`` defaults to 0 and ``weight`` to 1. Values are integers, or strings
holding exact rationals such as ``"3/2"``.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .arborescence import find_l_tight, min_cost_arborescence, root_set
from .blocker import BlockerResult, covering_tight_arborescences, solve_blocker
from .errors import InvalidArgument, NoArborescence, ParseError, ResourceLimit
from .graph import Digraph, LaminarFamily, crossing_pair, exact, normalize
from .mincut import CutStats
from . import oracle

PROBLEMS = ("min-arb", "blocker", "tight-blocker")

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_MISMATCH = 4

GLOBAL_ROOT = "<root>"


@dataclass
class Arc:
    id: str
    tail: str
    head: str
    cost: int | Fraction = 0
    weight: int | Fraction = 1


@dataclass
class Instance:
    nodes: list[str]
    arcs: list[Arc]
    root: str | None = None
    laminar: list[list[str]] | None = None
    problem: str = "blocker"
    _index: dict = field(default=None, repr=False, compare=False)

    def index(self) -> dict[str, int]:
        if self._index is None:
            self._index = {v: i for i, v in enumerate(self.nodes)}
        return self._index

    def digraph(self) -> Digraph:
        idx = self.index()
        return Digraph(len(self.nodes), ((a.id, idx[a.tail], idx[a.head]) for a in self.arcs))

    def costs(self) -> dict:
        return {a.id: a.cost for a in self.arcs}

    def weights(self) -> dict:
        return {a.id: a.weight for a in self.arcs}

    def family(self) -> list[frozenset[int]]:
        idx = self.index()
        return [frozenset(idx[v] for v in F) for F in self.laminar or []]

    def root_id(self) -> int | None:
        return None if self.root is None else self.index()[self.root]


def _value(raw, where):
    if isinstance(raw, bool):
        raise ParseError("expected a number", field=where)
    if isinstance(raw, int):
        return raw
    if isinstance(raw, str):
        try:
            return normalize(Fraction(raw.strip()))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not an exact number: {raw!r}", field=where) from None
    if isinstance(raw, float):
        return normalize(Fraction(repr(raw)))
    raise ParseError("expected a number", field=where)


def parse_instance(text: str) -> Instance:
    """Parse and validate an instance document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    unknown = set(doc) - {"nodes", "arcs", "root", "laminar", "problem"}
    if unknown:
        raise ParseError(f"unknown fields {sorted(unknown)}")

    nodes = doc.get("nodes")
    if not isinstance(nodes, list) or not all(isinstance(v, str) for v in nodes):
        raise ParseError("must be a list of strings", field="nodes")
    if len(set(nodes)) != len(nodes):
        raise ParseError("labels must be unique", field="nodes")
    known = set(nodes)

    raw_arcs = doc.get("arcs", [])
    if not isinstance(raw_arcs, list):
        raise ParseError("must be a list", field="arcs")
    arcs, seen = [], set()
    for i, raw in enumerate(raw_arcs):
        where = f"arcs[{i}]"
        if not isinstance(raw, dict):
            raise ParseError("must be an object", field=where)
        extra = set(raw) - {"id", "tail", "head", "cost", "weight"}
        if extra:
            raise ParseError(f"unknown fields {sorted(extra)}", field=where)
        arc_id = raw.get("id")
        if not isinstance(arc_id, str):
            raise ParseError("missing string id", field=f"{where}.id")
        if arc_id in seen:
            raise ParseError(f"duplicate arc id {arc_id!r}", field=f"{where}.id")
        seen.add(arc_id)
        for end in ("tail", "head"):
            if raw.get(end) not in known:
                raise ParseError(f"unknown node {raw.get(end)!r}", field=f"{where}.{end}")
        if raw["tail"] == raw["head"]:
            raise ParseError("self-loops are not allowed", field=where)
        cost = _value(raw.get("cost", 0), f"{where}.cost")
        weight = _value(raw.get("weight", 1), f"{where}.weight")
        if weight < 0:
            raise ParseError("weight must be non-negative", field=f"{where}.weight")
        arcs.append(Arc(arc_id, raw["tail"], raw["head"], cost, weight))

    root = doc.get("root")
    if root is not None and root not in known:
        raise ParseError(f"unknown node {root!r}", field="root")

    laminar = doc.get("laminar")
    if laminar is not None:
        if not isinstance(laminar, list):
            raise ParseError("must be a list of label lists", field="laminar")
        for i, F in enumerate(laminar):
            if not isinstance(F, list) or not F or any(v not in known for v in F):
                raise ParseError("must be a non-empty list of known labels", field=f"laminar[{i}]")
        bad = crossing_pair([frozenset(F) for F in laminar])
        if bad is not None:
            raise ParseError(f"sets {sorted(bad[0])} and {sorted(bad[1])} cross", field="laminar")
        laminar = [list(F) for F in laminar]

    problem = doc.get("problem", "blocker")
    if problem not in PROBLEMS:
        raise ParseError(f"must be one of {list(PROBLEMS)}", field="problem")
    return Instance(list(nodes), arcs, root, laminar, problem)


def _dump_value(x):
    x = normalize(x)
    return x if isinstance(x, int) else str(x)


def format_instance(inst: Instance) -> str:
    doc = {
        "nodes": inst.nodes,
        "arcs": [
            {"id": a.id, "tail": a.tail, "head": a.head,
             "cost": _dump_value(a.cost), "weight": _dump_value(a.weight)}
            for a in inst.arcs
        ],
        "problem": inst.problem,
    }
    if inst.root is not None:
        doc["root"] = inst.root
    if inst.laminar is not None:
        doc["laminar"] = inst.laminar
    return json.dumps(doc, indent=2)


def generate_instance(seed, nodes, arcs, max_cost=4, max_weight=1, problem="blocker") -> Instance:
    """Reproducible random instance; equal arguments give identical output.

    The first ``min(arcs, nodes - 1)`` arcs form a random arborescence rooted
    at ``v0``; the rest are distinct random pairs (parallel arcs only once
    every pair is used).
    """
    rng = random.Random(seed)
    labels = [f"v{i}" for i in range(nodes)]
    order = [0] + rng.sample(range(1, nodes), nodes - 1) if nodes else []
    chosen = [(rng.choice(order[:i]), order[i]) for i in range(1, nodes)][:arcs]
    pairs = [(u, v) for u in range(nodes) for v in range(nodes) if u != v]
    free = [p for p in pairs if p not in set(chosen)]
    extra = arcs - len(chosen)
    if extra > 0 and pairs:
        if extra <= len(free):
            chosen += rng.sample(free, extra)
        else:
            chosen += free + [rng.choice(pairs) for _ in range(extra - len(free))]
    arc_list = [
        Arc(f"e{i}", labels[u], labels[v], rng.randint(0, max_cost), rng.randint(1, max_weight))
        for i, (u, v) in enumerate(chosen)
    ]
    laminar = None
    if problem == "tight-blocker":
        laminar = [sorted(F, key=labels.index) for F in random_laminar(rng, labels, rng.randint(0, 4))]
    root = labels[0] if problem != "tight-blocker" and labels else None
    return Instance(labels, arc_list, root, laminar, problem)


def random_laminar(rng: random.Random, items, count, attempts=50):
    family: list[frozenset] = []
    for _ in range(attempts):
        if len(family) >= count:
            break
        F = frozenset(rng.sample(list(items), rng.randint(1, len(items))))
        if F not in family and crossing_pair(family + [F]) is None:
            family.append(F)
    return family


def _global_reduction(D: Digraph, c: dict, w: dict):
    """New root joined to every node by an arc of prohibitive cost and weight."""
    spread = sum(abs(exact(x)) for x in c.values())
    high_cost = 2 * spread + 1
    high_weight = sum(exact(x) for x in w.values()) + 1
    new_arcs = [(("__root__", v), D.n, v) for v in range(D.n)]
    G = Digraph(D.n + 1, [*D.arcs(), *new_arcs])
    c2 = {**c, **{a: high_cost for a, _, _ in new_arcs}}
    w2 = {**w, **{a: high_weight for a, _, _ in new_arcs}}
    return G, D.n, c2, w2


@dataclass
class Report:
    optimum: object
    arcs: list
    certificate: dict | None = None
    root: str | None = None
    runtime_ms: float = 0.0
    mincut_calls: int = 0

    def as_dict(self):
        opt = self.optimum
        if opt is None or opt == math.inf:
            opt = None if opt is None else "inf"
        else:
            opt = _dump_value(opt)
        out = {
            "optimum": opt,
            "arcs": self.arcs,
            "certificate": self.certificate,
            "runtime_ms": round(self.runtime_ms, 3),
            "mincut_calls": self.mincut_calls,
        }
        if self.root is not None:
            out["root"] = self.root
        return out

    def as_text(self):
        d = self.as_dict()
        lines = [f"optimum: {d['optimum']}", f"arcs: {' '.join(d['arcs']) or '-'}"]
        if self.root is not None:
            lines.append(f"root: {self.root}")
        if self.certificate:
            for k in ("F", "Z1", "Z2"):
                lines.append(f"{k}: {' '.join(self.certificate[k])}")
        lines.append(f"runtime_ms: {d['runtime_ms']}  mincut_calls: {d['mincut_calls']}")
        return "\n".join(lines)


def _sorted_arcs(inst: Instance, ids):
    order = {a.id: i for i, a in enumerate(inst.arcs)}
    return sorted((a for a in ids if a in order), key=order.__getitem__)


def _certificate(labels, res: BlockerResult):
    if res.certificate is None:
        return None
    cert = res.certificate
    return {k: [labels[v] for v in sorted(getattr(cert, k))] for k in ("F", "Z1", "Z2")}


def _require_root(inst: Instance, use_global: bool):
    if inst.root is None and not use_global:
        raise InvalidArgument(f"problem {inst.problem!r} needs a root (or --global)")


def run_solve(inst: Instance, use_global=False) -> Report:
    D, c, w = inst.digraph(), inst.costs(), inst.weights()
    stats = CutStats()
    start = time.perf_counter()
    if inst.problem == "min-arb":
        _require_root(inst, use_global)
        if use_global:
            G, r, c2, _ = _global_reduction(D, c, w)
            B, cost = min_cost_arborescence(G, c2, r)
            link = [a for a in B.arcs if isinstance(a, tuple)]
            if len(link) != 1:
                raise NoArborescence("digraph has no spanning arborescence")
            root = inst.nodes[link[0][1]]
            arcs = [a for a in B.arcs if not isinstance(a, tuple)]
            cost = normalize(cost - c2[link[0]])
        else:
            B, cost = min_cost_arborescence(D, c, inst.root_id())
            root, arcs = inst.root, B.arcs
        return Report(cost, _sorted_arcs(inst, arcs), None, root,
                      (time.perf_counter() - start) * 1e3, stats.calls)
    labels = inst.nodes
    if inst.problem == "blocker":
        _require_root(inst, use_global)
        if use_global:
            G, r, c2, w2 = _global_reduction(D, c, w)
            labels = [*inst.nodes, GLOBAL_ROOT]
            if not root_set(D):
                raise NoArborescence("digraph has no spanning arborescence")
            res = solve_blocker(G, r, c2, w2, stats)
        else:
            res = solve_blocker(D, inst.root_id(), c, w, stats)
    else:
        if use_global:
            raise InvalidArgument("--global applies to min-arb and blocker only")
        if inst.root is not None:
            r = inst.root_id()
            D = D.without_arcs([a for a in D.arc_ids if D.head(a) == r])
            w = {a: w[a] for a in D.arc_ids}
        res = covering_tight_arborescences(D, inst.family(), w, stats)
    return Report(res.gamma, _sorted_arcs(inst, res.H), _certificate(labels, res), None,
                  (time.perf_counter() - start) * 1e3, stats.calls)


def run_oracle(inst: Instance, use_global=False) -> Report:
    if use_global:
        raise InvalidArgument("oracle does not support --global")
    D, c, w = inst.digraph(), inst.costs(), inst.weights()
    start = time.perf_counter()
    if inst.problem == "min-arb":
        _require_root(inst, False)
        low, optimal = oracle.oracle_min_cost_arborescences(D, c, inst.root_id())
        if low is None:
            raise NoArborescence("no arborescence with this root")
        B = min(optimal, key=lambda s: _sorted_arcs(inst, s))
        return Report(low, _sorted_arcs(inst, B), None, inst.root,
                      (time.perf_counter() - start) * 1e3)
    if inst.problem == "blocker":
        _require_root(inst, False)
        found = oracle.oracle_min_cost_blocker(D, inst.root_id(), c, w)
        if found is None:
            raise NoArborescence("no arborescence with this root")
        value, H = found
        return Report(value, _sorted_arcs(inst, H), None, None, (time.perf_counter() - start) * 1e3)
    if inst.root is not None:
        r = inst.root_id()
        D = D.without_arcs([a for a in D.arc_ids if D.head(a) == r])
    family = inst.family() + [frozenset(range(D.n))]
    value, H = oracle.oracle_blocker(D, family, w)
    return Report(value, _sorted_arcs(inst, H), None, None, (time.perf_counter() - start) * 1e3)


def check_instance(inst: Instance) -> tuple[bool, Report, Report]:
    """Solve with both routes; also confirm the solver's arc set really blocks."""
    got = run_solve(inst)
    want = run_oracle(inst)
    ok = got.optimum == want.optimum
    if ok and inst.problem != "min-arb" and got.optimum not in (0, math.inf):
        D = inst.digraph()
        rest = D.without_arcs(got.arcs)
        if inst.problem == "tight-blocker":
            if inst.root is not None:
                r = inst.root_id()
                rest = rest.without_arcs([a for a in rest.arc_ids if rest.head(a) == r])
            family = LaminarFamily(inst.family()).add(frozenset(range(D.n)))
            ok = find_l_tight(rest, family) is None
        else:
            low, _ = oracle.oracle_min_cost_arborescences(D, inst.costs(), inst.root_id())
            survivors, _ = oracle.oracle_min_cost_arborescences(
                rest, {a: inst.costs()[a] for a in rest.arc_ids}, inst.root_id())
            ok = survivors is None or survivors != low
    return ok, got, want


def _emit(report: Report, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        print(json.dumps(report.as_dict()), file=out)
    else:
        print(report.as_text(), file=out)


def _read_instance(path):
    if path in (None, "-"):
        return parse_instance(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="instance JSON file ('-' for stdin)")
    common.add_argument("--problem", choices=PROBLEMS, help="override the instance's problem")
    common.add_argument("--global", dest="use_global", action="store_true",
                        help="ignore the root and cover globally minimum cost arborescences")
    common.add_argument("--output", choices=("json", "text"), default="json")

    gen_opts = argparse.ArgumentParser(add_help=False)
    gen_opts.add_argument("--seed", type=int, default=0)
    gen_opts.add_argument("--nodes", type=int, default=5)
    gen_opts.add_argument("--arcs", type=int, default=8)
    gen_opts.add_argument("--max-cost", type=int, default=4)
    gen_opts.add_argument("--max-weight", type=int, default=1)

    parser = argparse.ArgumentParser(prog="arbcover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="run the polynomial algorithm")
    sub.add_parser("oracle", parents=[common], help="run the exhaustive reference")
    chk = sub.add_parser("check", parents=[common, gen_opts],
                         help="compare solver and oracle (on --input or on generated instances)")
    chk.add_argument("--count", type=int, default=1, help="generated instances when no --input")
    gen = sub.add_parser("gen", parents=[gen_opts], help="emit a random instance")
    gen.add_argument("--problem", choices=PROBLEMS, default="blocker")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            inst = generate_instance(args.seed, args.nodes, args.arcs, args.max_cost,
                                     args.max_weight, args.problem)
            print(format_instance(inst))
            return EXIT_OK
        if args.command == "check" and args.input is None:
            instances = [
                generate_instance(args.seed + k, args.nodes, args.arcs, args.max_cost,
                                  args.max_weight, args.problem or "tight-blocker")
                for k in range(args.count)
            ]
        else:
            instances = [_read_instance(args.input)]
        if args.problem:
            for inst in instances:
                inst.problem = args.problem
        if args.command in ("solve", "oracle"):
            run = run_solve if args.command == "solve" else run_oracle
            report = run(instances[0], args.use_global)
            _emit(report, args.output)
            # a single node cannot be separated from its (empty) arborescence
            return EXIT_INFEASIBLE if report.optimum == math.inf else EXIT_OK
        else:
            failures = 0
            for inst in instances:
                try:
                    ok, got, want = check_instance(inst)
                except NoArborescence:
                    continue
                if not ok:
                    failures += 1
                    print(f"mismatch: solver {got.as_dict()} oracle {want.as_dict()}", file=sys.stderr)
            print(json.dumps({"instances": len(instances), "mismatches": failures}))
            return EXIT_MISMATCH if failures else EXIT_OK
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NoArborescence as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InvalidArgument as exc:
        print(f"invalid argument: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
