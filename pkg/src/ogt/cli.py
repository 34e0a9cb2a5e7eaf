"""Command-line interface.

Exit codes: 0 success or a positive answer, 1 a negative answer (no
homomorphism, check failed, ...), 2 usage error, 3 a size cap was hit.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import checks, compressibility, domination, enumeration, extremal, layered
from .errors import CyclicGraphError, GraphError, OGTError, SizeCapError
from .formats import parse_graph_text
from .graphs import (
    OrientedGraph,
    Tournament,
    arrow_join,
    bipartite_oriented,
    blow_up,
    composition,
    directed_cycle,
    directed_path,
    knn_orientation,
    power_cycle,
    power_path,
    rotational_11,
    special_t,
    tilde_t7,
    transitive_tournament,
)
from .hom import contains_copy, count_homs, hom_exists
from .randomgraphs import DEFAULT_SEED

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# construction expressions

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")

# name -> argument kinds: "i" integer, "g" graph, "l" list of integers
_CONSTRUCTORS = {
    "TT": ("i", transitive_tournament),
    "P": ("i", directed_path),
    "C": ("i", directed_cycle),
    "B": ("ii", bipartite_oriented),
    "PP": ("ii", power_path),
    "CC": ("ii", power_cycle),
    "comp": ("gg", composition),
    "join": ("gg", arrow_join),
    "blow": ("gl", blow_up),
    "knn": ("i", knn_orientation),
    "Q": ("i", layered.q_gadget),
    "univ": ("ii", compressibility.build_universal_dk),
}
_CONSTANTS = {
    "tildeT7": tilde_t7,
    "rot11": rotational_11,
    **{f"T{w}": (lambda w=w: special_t(w)) for w in "abcde"},
}


def _tokens(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, sym = m.groups()
        if num is not None:
            out.append(("int", num))
        elif name is not None:
            out.append(("name", name))
        elif sym.strip():
            if sym not in "(),[]":
                raise UsageError(f"unexpected character {sym!r} in {text!r}")
            out.append(("sym", sym))
        pos = m.end()
    return out


class _Parser:
    """Two passes: parse to a tree (validating every name), then build."""

    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            raise UsageError(f"expected {want} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        tree = self.graph()
        if self.i != len(self.toks):
            raise UsageError(f"trailing input in {self.text!r}")
        return tree

    def graph(self):
        _, name = self.take("name")
        if name in _CONSTANTS:
            return ("const", name)
        if name not in _CONSTRUCTORS:
            raise UsageError(f"unknown construction {name!r}")
        kinds, _ = _CONSTRUCTORS[name]
        self.take("sym", "(")
        args = []
        for j, kind in enumerate(kinds):
            if j:
                self.take("sym", ",")
            if kind == "i":
                args.append(int(self.take("int")[1]))
            elif kind == "g":
                args.append(self.graph())
            else:
                self.take("sym", "[")
                items = [int(self.take("int")[1])]
                while self.peek() == ("sym", ","):
                    self.take()
                    items.append(int(self.take("int")[1]))
                self.take("sym", "]")
                args.append(items)
        self.take("sym", ")")
        return ("call", name, args)


def _build(tree) -> OrientedGraph:
    if tree[0] == "const":
        return _CONSTANTS[tree[1]]()
    _, name, args = tree
    kinds, fn = _CONSTRUCTORS[name]
    built = [_build(a) if k == "g" else a for k, a in zip(kinds, args)]
    return fn(*built)


def parse_expression(text: str) -> OrientedGraph:
    return _build(_Parser(text).parse())


_HEX = re.compile(r"^\d+:[0-9A-Fa-f]*$")


def _read_graph_source(arg: str):
    """Resolve a CLI graph argument into an unbuilt description, failing early on bad names."""
    if arg.startswith("&") or _HEX.match(arg):
        return ("text", arg)
    path = Path(arg)
    if path.is_file():
        lines = [ln.strip() for ln in path.read_text().splitlines() if ln.strip()]
        if not lines:
            raise UsageError(f"{arg}: no graph in file")
        return ("text", lines[0])
    return ("tree", _Parser(arg).parse())


def _realize(src) -> OrientedGraph:
    kind, value = src
    if kind == "text":
        try:
            return parse_graph_text(value)
        except GraphError as exc:
            raise UsageError(str(exc)) from exc
    return _build(value)


def split_top_level(text: str) -> list[str]:
    """Split on commas that sit outside every bracket."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur).strip())
    return [p for p in parts if p]


def load_graphs(*args: str) -> list[OrientedGraph]:
    sources = [_read_graph_source(a) for a in args]
    return [_realize(s) for s in sources]


# ---------------------------------------------------------------------------
# output


def _graph_record(g: OrientedGraph) -> dict:
    rec = {"n": g.n, "arcs": g.num_arcs, "digraph6": g.to_digraph6()}
    if isinstance(g, Tournament) and g.n:
        rec["hex"] = g.to_hex()
    return rec


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, record: dict, human: str) -> None:
        print(json.dumps(record, sort_keys=True) if self.as_json else human)


# ---------------------------------------------------------------------------
# subcommands


def cmd_construct(a, out: _Out) -> int:
    (g,) = load_graphs(a.expr)
    rec = _graph_record(g)
    lines = [rec["digraph6"]] + ([rec["hex"]] if "hex" in rec else [])
    out.emit(rec, "\n".join(lines))
    return EXIT_OK


def cmd_hom(a, out: _Out) -> int:
    h, t = load_graphs(a.source, a.target)
    if a.count:
        c = count_homs(h, t)
        out.emit({"count": c}, str(c))
        return EXIT_OK if c else EXIT_NEGATIVE
    found = hom_exists(h, t)
    if found is None:
        out.emit({"hom": None}, "no homomorphism")
        return EXIT_NEGATIVE
    out.emit({"hom": list(found.map)}, " ".join(map(str, found.map)))
    return EXIT_OK


def cmd_contains(a, out: _Out) -> int:
    g, p = load_graphs(a.host, a.pattern)
    found = contains_copy(g, p)
    if found is None:
        out.emit({"copy": None}, "no copy")
        return EXIT_NEGATIVE
    out.emit({"copy": list(found.map)}, " ".join(map(str, found.map)))
    return EXIT_OK


def cmd_tau(a, out: _Out) -> int:
    exprs = [a.graph] + (split_top_level(a.family) if a.family else [])
    family = load_graphs(*exprs)
    try:
        res = compressibility.tau_family(family, max_k=a.max_k, seed=a.seed)
    except CyclicGraphError as exc:
        out.emit({"tau": None, "reason": str(exc)}, "infinite: " + str(exc))
        return EXIT_NEGATIVE
    witnesses = {str(k): w.to_hex() for k, w in sorted(res.witnesses.items()) if w.n}
    rec = {"tau": res.tau, "p": res.p, "status": res.status, "witnesses": witnesses}
    if res.exact:
        out.emit(rec, str(res.tau))
        return EXIT_OK
    out.emit(rec, f">= {res.tau} (cap reached at {a.max_k})")
    return EXIT_CAP


def _predicate(spec: str | None):
    if not spec:
        return None
    name, _, arg = spec.partition(":")
    if name == "strong":
        return enumeration.strongly_connected
    if name == "ttfree" and arg.isdigit():
        return enumeration.tt_free(int(arg))
    if name == "dominated" and arg.isdigit():
        return enumeration.all_k_subsets_dominated(int(arg))
    raise UsageError(f"unknown predicate {spec!r}; use strong, ttfree:K or dominated:K")


def cmd_enumerate(a, out: _Out) -> int:
    pred = _predicate(a.pred)
    if a.oriented:
        if pred is not None:
            raise UsageError("--pred applies to tournaments only")
        members = list(enumeration.oriented_graphs(a.n))
    else:
        members = [t for t in enumeration.tournaments(a.n) if pred is None or pred(t)]
    if a.count:
        out.emit({"n": a.n, "count": len(members)}, str(len(members)))
        return EXIT_OK
    for g in members:
        rec = _graph_record(g)
        out.emit(rec, rec.get("hex", rec["digraph6"]))
    return EXIT_OK


def cmd_dom(a, out: _Out) -> int:
    (t,) = load_graphs(a.graph)
    if a.k is not None:
        ok, bad = domination.all_k_subsets_dominated(t, a.k)
        out.emit({"k": a.k, "dominated": ok, "undominated": list(bad) if bad else None},
                 "all dominated" if ok else f"undominated: {' '.join(map(str, bad))}")
        return EXIT_OK if ok else EXIT_NEGATIVE
    d = domination.domination_graph(t)
    rec = {"arcs": [list(x) for x in d.arcs()]}
    human = " ".join(f"{u}->{v}" for u, v in d.arcs()) or "(no arcs)"
    if a.classify:
        cls = domination.classify_domination(d)
        rec.update(shape=cls.shape, cycle=list(cls.cycle), spines=[list(s) for s in cls.spines])
        human += f"\n{cls.shape}"
        out.emit(rec, human)
        return EXIT_OK if cls.shape != domination.OTHER else EXIT_NEGATIVE
    out.emit(rec, human)
    return EXIT_OK


def cmd_layered(a, out: _Out) -> int:
    (h,) = load_graphs(a.graph)
    analysis = layered.analyze_layers(h, a.ell)
    failure = analysis.failure
    if failure is not None:
        v, src, snk = failure
        out.emit({"layered": False, "vertex": v, "source_residues": src, "sink_residues": snk},
                 f"not {a.ell}-layered: vertex {v} has source residues {src} and sink residues {snk}")
        return EXIT_NEGATIVE
    typing = layered.layer_typing(h, a.ell)
    tags = [t if isinstance(t, str) else list(t) for t in typing.tags]
    rec = {"layered": True, "types": tags}
    human = "\n".join(f"{v}: {t if isinstance(t, str) else tuple(t)}" for v, t in enumerate(tags))
    if a.to_q:
        hom = layered.canonical_hom_to_q(h, typing)
        rec["map"] = list(hom.map)
        human += "\nmap: " + " ".join(map(str, hom.map))
    out.emit(rec, human)
    return EXIT_OK


def cmd_ex(a, out: _Out) -> int:
    if not a.forbid:
        raise UsageError("give at least one --forbid graph")
    forbidden = load_graphs(*a.forbid)
    res = extremal.exact_ex_oriented(a.n, forbidden)
    rec = {"n": a.n, "value": res.value, "witness": res.extremal_witness.to_digraph6()}
    out.emit(rec, f"{res.value}\n{rec['witness']}")
    return EXIT_OK


def _scale_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def cmd_verify(a, out: _Out) -> int:
    ids = a.checks or list(checks.CHECKS)
    unknown = [c for c in ids if c not in checks.CHECKS]
    if unknown:
        raise UsageError(f"unknown check(s): {', '.join(unknown)}")
    scale = {}
    for item in a.scale or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--scale expects key=value, got {item!r}")
        scale[key] = _scale_value(value)
    ok = True
    for cid in ids:
        params = {k: v for k, v in scale.items() if k in checks.CHECKS[cid].__code__.co_varnames}
        try:
            report = checks.run_check(cid, seed=a.seed, **params)
        except TypeError as exc:
            raise UsageError(str(exc)) from exc
        print(report.to_json())
        ok &= report.passed
    return EXIT_OK if ok else EXIT_NEGATIVE


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON-lines output")
    common.add_argument("--threads", type=int, default=None, help="worker cap (default: OGT_THREADS or all cores)")
    common.add_argument("--seed", type=int, default=None, help=f"random seed (default {DEFAULT_SEED})")

    p = argparse.ArgumentParser(prog="ogt", description="Compressibility of oriented graphs.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("construct", parents=[common], help="build a named graph and print digraph6 (and hex)")
    s.add_argument("expr")
    s.set_defaults(run=cmd_construct)

    s = sub.add_parser("hom", parents=[common], help="find a homomorphism H -> T")
    s.add_argument("source")
    s.add_argument("target")
    s.add_argument("--count", action="store_true", help="count all homomorphisms by brute force")
    s.set_defaults(run=cmd_hom)

    s = sub.add_parser("contains", parents=[common], help="find a copy of P in G")
    s.add_argument("host")
    s.add_argument("pattern")
    s.set_defaults(run=cmd_contains)

    s = sub.add_parser("tau", parents=[common], help="compressibility number by census sweep")
    s.add_argument("graph")
    s.add_argument("--max-k", type=int, default=compressibility.DEFAULT_MAX_K)
    s.add_argument("--family", help="further family members, comma separated")
    s.set_defaults(run=cmd_tau)

    s = sub.add_parser("enumerate", parents=[common], help="census of tournaments (or oriented graphs)")
    s.add_argument("n", type=int)
    s.add_argument("--pred", help="strong | ttfree:K | dominated:K")
    s.add_argument("--oriented", action="store_true", help="all oriented graphs instead of tournaments")
    s.add_argument("--count", action="store_true")
    s.set_defaults(run=cmd_enumerate)

    s = sub.add_parser("dom", parents=[common], help="domination graph of a tournament")
    s.add_argument("graph")
    s.add_argument("--classify", action="store_true")
    s.add_argument("--k", type=int, help="check that every k-subset is dominated instead")
    s.set_defaults(run=cmd_dom)

    s = sub.add_parser("layered", parents=[common], help="layer typing")
    s.add_argument("graph")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--to-q", action="store_true", help="also print the canonical map into Q_ell")
    s.set_defaults(run=cmd_layered)

    s = sub.add_parser("ex", parents=[common], help="exact oriented Turan number")
    s.add_argument("n", type=int)
    s.add_argument("--forbid", action="append")
    s.set_defaults(run=cmd_ex)

    s = sub.add_parser("verify", parents=[common], help="run named checks, JSON report per check")
    s.add_argument("checks", nargs="*")
    s.add_argument("--scale", action="append", help="key=value passed to checks that accept it")
    s.set_defaults(run=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if a.threads is not None:
        if a.threads < 1:
            print("error: --threads must be positive", file=sys.stderr)
            return EXIT_USAGE
        enumeration.set_threads(a.threads)
    if a.seed is None and a.command != "verify":
        a.seed = 0 if a.command == "tau" else DEFAULT_SEED
    try:
        return a.run(a, _Out(a.json))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeCapError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphError, OGTError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if a.threads is not None:
            enumeration.set_threads(None)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
