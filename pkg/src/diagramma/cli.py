"""Check, classify, relate and export chemical diagrams and molecules.

Exit status: 0 for success or an affirmative answer, 1 for a negative answer
(not well-formed, not about, not coarser), 2 for usage, file or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import corpus
from .aboutness import is_about
from .chemgraph import (
    DEFAULT_TABLE,
    Registry,
    ValenceTable,
    classify_feasibility,
    parse_cgf,
    parse_smiles_subset,
    write_cgf,
)
from .coarsening import coarsen_to, coarser_than
from .diaglang import LANGUAGE_IDS, abstract_diagram, builtin_language, parse_dgf, well_formed, write_dgf
from .errors import DiagrammaError, IllFormedDiagram
from .ontology import emit_document
from .selftest import run_selftest
from .svg import render_svg

ENV_TABLE = "DIAGRAMMA_VALENCE_TABLE"


class Negative(Exception):
    """A checked answer of "no"; carries the result payload."""

    def __init__(self, text: str, payload: dict):
        self.text = text
        self.payload = payload


class _Ctx:
    def __init__(self, args):
        self.args = args
        path = args.valence_table or os.environ.get(ENV_TABLE)
        self.table = ValenceTable.load(path) if path else DEFAULT_TABLE
        self._registry = None

    @property
    def registry(self) -> Registry | None:
        if self._registry is None and self.args.registry:
            if self.args.registry == "bundled":
                self._registry = corpus.registry(self.table)
            else:
                self._registry = Registry.load(self.args.registry, self.table)
        return self._registry

    def read(self, path: str) -> str:
        return Path(path).read_text(encoding="utf-8")

    def diagram(self, path: str):
        return parse_dgf(self.read(path), self.table)

    def molecule(self, path: str):
        return parse_cgf(self.read(path), self.table)


def _batch(fn, paths):
    """Run ``fn`` per file concurrently; results keep argument order."""
    if len(paths) == 1:
        return [fn(paths[0])]
    with ThreadPoolExecutor(max_workers=min(8, len(paths))) as pool:
        return list(pool.map(fn, paths))


def cmd_check(ctx: _Ctx):
    def one(path):
        try:
            if path.endswith(".cgf"):
                ctx.molecule(path)
                return {"file": path, "well_formed": True, "violations": []}
            d = ctx.diagram(path)
            v = well_formed(d, builtin_language(d.language, ctx.table))
            return {"file": path, "well_formed": not v, "violations": [str(x) for x in v]}
        except (OSError, DiagrammaError) as exc:
            return {"file": path, "error": str(exc)}

    results = _batch(one, ctx.args.files)
    errors = [r for r in results if "error" in r]
    if errors:
        raise DiagrammaError("; ".join(f"{r['file']}: {r['error']}" for r in errors))
    lines = []
    for r in results:
        status = "well-formed" if r["well_formed"] else "NOT well-formed"
        lines.append(f"{r['file']}: {status}")
        lines.extend(f"  {v}" for v in r["violations"])
    ok = all(r["well_formed"] for r in results)
    payload = {"result": ok, "files": results}
    if not ok:
        raise Negative("\n".join(lines), payload)
    return "\n".join(lines), payload


def cmd_classify(ctx: _Ctx):
    def one(path):
        return path, classify_feasibility(ctx.molecule(path), ctx.registry, ctx.table)

    results = _batch(one, ctx.args.files)
    if len(results) == 1:
        fc = results[0][1]
        return str(fc), {"result": fc.label.value, "detail": fc.detail}
    text = "\n".join(f"{p}: {fc}" for p, fc in results)
    return text, {"result": [{"file": p, "class": fc.label.value, "detail": fc.detail} for p, fc in results]}


def cmd_about(ctx: _Ctx):
    d = ctx.diagram(ctx.args.diagram)
    x = ctx.molecule(ctx.args.molecule)
    witness = is_about(d, builtin_language(d.language, ctx.table), x)
    if witness is None:
        raise Negative("ABOUT: no", {"result": "no"})
    lines = ["ABOUT: yes"] + [f"  token {t} -> {p}" for t, p in witness.describe().items()]
    return "\n".join(lines), {"result": "yes", "witness": witness.describe()}


def cmd_abstract(ctx: _Ctx):
    d = ctx.diagram(ctx.args.diagram)
    g = abstract_diagram(d, builtin_language(d.language, ctx.table))
    text = write_cgf(g)
    return text, {"result": text}


def cmd_coarsen(ctx: _Ctx):
    d = ctx.diagram(ctx.args.diagram)
    out, chain = coarsen_to(d, ctx.args.to, ctx.table)
    text = write_dgf(out)
    return text, {"result": text, "chain": [m.id for m in chain]}


def cmd_coarser_than(ctx: _Ctx):
    d2 = ctx.diagram(ctx.args.coarser)
    d1 = ctx.diagram(ctx.args.finer)
    verdict = coarser_than(d2, d1, ctx.table)
    payload = {"result": verdict.result, "justification": verdict.justification, "chain": list(verdict.chain)}
    if not verdict:
        raise Negative(f"COARSER: no ({verdict.justification})", payload)
    return f"COARSER: yes {verdict.justification}", payload


def cmd_render(ctx: _Ctx):
    svg, warnings = render_svg(ctx.diagram(ctx.args.diagram), ctx.table)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    return svg, {"result": svg, "warnings": warnings}


def cmd_export_ontology(ctx: _Ctx):
    diagrams = _batch(ctx.diagram, ctx.args.diagrams) if ctx.args.diagrams else []
    text = emit_document(diagrams, ctx.registry, ctx.args.legacy, ctx.table)
    return text, {"result": text}


def cmd_parse_smiles(ctx: _Ctx):
    g = parse_smiles_subset(ctx.args.smiles, ctx.table)
    if ctx.args.name:
        g = g.with_name(ctx.args.name)
    text = write_cgf(g)
    return text, {"result": text}


def cmd_selftest(ctx: _Ctx):
    results = run_selftest(ctx.args.pairs, ctx.args.samples, ctx.args.seed, ctx.table)
    lines = [f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}" for r in results]
    payload = {"result": all(r.passed for r in results), "suites": [r.__dict__ for r in results]}
    if not payload["result"]:
        raise Negative("\n".join(lines), payload)
    return "\n".join(lines), payload


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--registry", metavar="FILE", help="registry of known molecules ('bundled' for the built-in one)")
    common.add_argument("--valence-table", metavar="FILE", help=f"valence table (default: ${ENV_TABLE} or built-in)")
    common.add_argument("--machine", action="store_true", help="print one JSON object per invocation")
    common.add_argument("-o", "--output", metavar="FILE", help="write the primary output to FILE")

    parser = argparse.ArgumentParser(prog="diagramma", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    add("check", cmd_check, "check well-formedness of .dgf (and parseability of .cgf) files").add_argument(
        "files", nargs="+"
    )
    add("classify", cmd_classify, "Known / Hypothetical / Infeasible / Impossible").add_argument("files", nargs="+")
    p = add("about", cmd_about, "decide whether a diagram is about a molecule")
    p.add_argument("diagram")
    p.add_argument("molecule")
    add("abstract", cmd_abstract, "read a diagram as a chemical graph (CGF)").add_argument("diagram")
    p = add("coarsen", cmd_coarsen, "apply registered coarsenings")
    p.add_argument("diagram")
    p.add_argument("--to", required=True, choices=LANGUAGE_IDS)
    p = add("coarser-than", cmd_coarser_than, "is the first diagram coarser than the second?")
    p.add_argument("coarser")
    p.add_argument("finer")
    add("render", cmd_render, "SVG depiction of a diagram").add_argument("diagram")
    p = add("export-ontology", cmd_export_ontology, "emit the ontology in Manchester syntax")
    p.add_argument("diagrams", nargs="*")
    p.add_argument("--legacy", action="store_true", help="use 'isAbout some Entity' and flag diagrams about nothing")
    p = add("parse-smiles", cmd_parse_smiles, "convert a SMILES-subset string to CGF")
    p.add_argument("smiles")
    p.add_argument("--name")
    p = add("selftest", cmd_selftest, "run the bundled oracle and coarsening suites")
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _emit(args, text: str, payload: dict) -> None:
    if getattr(args, "output", None) and text:
        Path(args.output).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        if not args.machine:
            return
    if args.machine:
        print(json.dumps({"command": args.command, **payload}, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        ctx = _Ctx(args)
        text, payload = args.func(ctx)
    except Negative as neg:
        _emit(args, neg.text, neg.payload)
        return 1
    except IllFormedDiagram as exc:
        _emit(args, f"NOT well-formed: {exc}", {"result": "not-well-formed", "violations": [str(v) for v in exc.violations]})
        return 1
    except (OSError, ValueError) as exc:
        if args.machine:
            print(json.dumps({"command": args.command, "result": "error", "error": str(exc)}, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(args, text, payload)
    return 0


def main() -> None:
    sys.exit(run())
