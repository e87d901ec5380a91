"""Command line front end.

Inputs are Seifert fibered spaces ``SFS(g=<int>; e=<int>; r1, r2, ...)`` with
rationals written ``p/q`` or ``n``, or odd pretzels ``P(c1,...,ck)``; the
grammar is whitespace-insensitive.  Each subcommand takes one input inline or
``--file`` with one input per line (``-`` for stdin) and reports per line, in
input order.  ``--json`` emits one JSON object per line, stable across runs
(keys sorted); the shape is described by ``schema/report.schema.json``.

Exit codes: 0 for any completed classification, 1 for parse or usage errors,
2 when a search budget was exceeded.  The default budgets can be set with the
``SFS4_BUDGET`` environment variable (lattice node budget) and
``SFS4_FIBER_BUDGET`` (partition search fiber count).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from .classify import BUDGET_EXCEEDED, classify
from .homology import h1_formula
from .lattice import embeddings_for, induced_partition, pair_surjective
from .mubar import spin_report
from .partitions import is_partitionable
from .plumbing import build_plumbing, intersection_form
from .pretzel import OddPretzel, double_branched_cover, doubly_slice_classify, pretzel_mubar
from .rationals import format_rational, parse_rational
from .seifert import SeifertData, euler_invariant, find_contractions, normalize


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_SFS_RE = re.compile(r"^SFS\(g=(-?\d+);e=(-?\d+);(.*)\)$")
_PRETZEL_RE = re.compile(r"^P\((.*)\)$")


def parse_input(text: str):
    """Parse one input line into SeifertData or OddPretzel."""
    stripped = re.sub(r"\s+", "", text)
    if not stripped:
        raise ParseError("empty input", 0)
    m = _SFS_RE.match(stripped)
    if m:
        genus, central, body = int(m.group(1)), int(m.group(2)), m.group(3)
        fibers = []
        if body:
            for part in body.split(","):
                if not part:
                    raise ParseError("empty fiber entry", text.find(",,") + 1 if ",," in text else len(text))
                pos = max(text.find(part), 0)
                try:
                    r = parse_rational(part)
                except ValueError as exc:
                    raise ParseError(str(exc), pos) from None
                if r == 0:
                    raise ParseError(f"zero fiber {part!r}", pos)
                fibers.append(r)
        if genus < 0:
            raise ParseError("genus must be nonnegative", text.find("g="))
        return SeifertData(genus, central, tuple(fibers))
    m = _PRETZEL_RE.match(stripped)
    if m:
        strands = []
        for part in m.group(1).split(","):
            if not part:
                raise ParseError("empty strand entry", len(text))
            pos = max(text.find(part), 0)
            try:
                c = int(part)
            except ValueError:
                raise ParseError(f"malformed strand {part!r}", pos) from None
            if c % 2 == 0:
                raise ParseError(f"even strand {c}", pos)
            strands.append(c)
        return OddPretzel(tuple(strands))
    raise ParseError("expected SFS(g=..; e=..; ...) or P(...)", 0)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _need_seifert(value, line):
    if not isinstance(value, SeifertData):
        raise ParseError("this subcommand needs an SFS(...) input", 0)
    return value


def _need_pretzel(value, line):
    if not isinstance(value, OddPretzel):
        raise ParseError("this subcommand needs a P(...) input", 0)
    return value


def _std_dict(s):
    return {
        "genus": s.genus,
        "central": s.central,
        "fibers": [format_rational(r) for r in s.fibers],
        "orientation_reversed": s.orientation_reversed,
    }


def cmd_classify(value, line, args):
    data = _need_seifert(value, line)
    verdict = classify(data, fiber_budget=args.fiber_budget)
    report = {"input": line, "command": "classify", **verdict.to_dict()}
    text = [f"{line}: {verdict.tag}"]
    if verdict.certificate:
        text.append(f"  certificate: {verdict.certificate.rule}")
    if verdict.obstruction:
        text.append(f"  obstruction: {verdict.obstruction.name}: {verdict.obstruction.detail}")
    for t in verdict.trace:
        text.append(f"  [{t.result}] {t.test}: {t.detail}")
    return report, "\n".join(text), verdict.tag == BUDGET_EXCEEDED


def cmd_homology(value, line, args):
    data = _need_seifert(value, line)
    group = h1_formula(data)
    report = {
        "input": line,
        "command": "homology",
        "h1": {"free_rank": group.free_rank, "invariant_factors": list(group.invariant_factors)},
        "pretty": str(group),
    }
    return report, f"{line}: H1 = {group}", False


def cmd_partitions(value, line, args):
    data = _need_seifert(value, line)
    std = normalize(data)
    if euler_invariant(std) <= 0:
        raise ParseError("partition search needs eps > 0 after normalization", 0)
    res = is_partitionable(std, fiber_budget=args.fiber_budget)
    report = {"input": line, "command": "partitions", "status": res.status}
    if res.is_witness:
        report["witness"] = {
            "p1": [list(c) for c in res.witness.p1],
            "p2": [list(c) for c in res.witness.p2],
            "deficit_class_1": list(res.witness.deficit_class_1),
            "deficit_class_2": list(res.witness.deficit_class_2),
        }
        text = f"{line}: partitionable; P1 = {res.witness.p1}, P2 = {res.witness.p2}"
    elif res.status == "refuted":
        report["refuted"] = res.refuted
        report["detail"] = res.detail
        text = f"{line}: not partitionable ({res.refuted}: {res.detail})"
    else:
        report["detail"] = res.detail
        text = f"{line}: budget exceeded ({res.detail})"
    return report, text, res.status == "budget_exceeded"


def cmd_mubar(value, line, args):
    data = _need_seifert(value, line)
    std = normalize(data)
    rep = spin_report(std)
    report = {
        "input": line,
        "command": "mubar",
        "standard_form": _std_dict(std),
        "spin_structures": [
            {"characteristic_subset": list(c), "mubar": v}
            for c, v in zip(rep.subsets, rep.values)
        ],
        "z2_dim": rep.z2_dim,
    }
    lines = [f"{line}: {len(rep.subsets)} spin structure(s)"]
    lines.extend(
        f"  subset {list(c)}: mubar = {v}" for c, v in zip(rep.subsets, rep.values)
    )
    return report, "\n".join(lines), False


def cmd_plumbing(value, line, args):
    data = _need_seifert(value, line)
    std = normalize(data)
    graph = build_plumbing(std)
    q = intersection_form(graph)
    report = {
        "input": line,
        "command": "plumbing",
        "standard_form": _std_dict(std),
        "graph": json.loads(graph.to_json()),
        "determinant": q.det(),
    }
    return report, f"{line}:\n{graph.to_text()}", False


def cmd_lattice(value, line, args):
    data = _need_seifert(value, line)
    std = normalize(data)
    if euler_invariant(std) <= 0:
        raise ParseError("lattice search needs eps > 0 after normalization", 0)
    graph = build_plumbing(std)
    q = intersection_form(graph)
    res = embeddings_for(std, graph, q, budget=args.budget)
    rows = []
    for a in res:
        entry = {"matrix": [list(r) for r in a.rows]}
        try:
            entry["induced_partition"] = [list(c) for c in induced_partition(a, std, graph)]
        except ValueError:
            pass
        rows.append(entry)
    surjective_pair = None
    for i, a1 in enumerate(res.embeddings):
        for a2 in res.embeddings[i:]:
            if pair_surjective(a1, a2):
                surjective_pair = [
                    [list(r) for r in a1.rows],
                    [list(r) for r in a2.rows],
                ]
                break
        if surjective_pair:
            break
    report = {
        "input": line,
        "command": "lattice",
        "vertex_count": graph.size,
        "embeddings": rows,
        "nodes": res.nodes,
        "budget_exceeded": res.budget_exceeded,
        "surjective_pair": surjective_pair,
    }
    text = f"{line}: {len(rows)} embedding(s), {res.nodes} nodes"
    if res.budget_exceeded:
        text += " (budget exceeded)"
    return report, text, res.budget_exceeded


def cmd_pretzel(value, line, args):
    knot = _need_pretzel(value, line)
    cover = double_branched_cover(knot)
    cover_verdict = classify(cover, fiber_budget=args.fiber_budget)
    report = {
        "input": line,
        "command": "pretzel",
        "strands": list(knot.strands),
        "double_cover": {"input": str(cover), **cover_verdict.to_dict()},
    }
    lines = [f"{line}: double branched cover {cover}"]
    if knot.is_knot:
        verdict = doubly_slice_classify(knot)
        report["verdict"] = verdict.verdict
        report["parameter"] = verdict.parameter
        report["failed_condition"] = verdict.failed_condition
        report["mubar"] = pretzel_mubar(knot)
        lines.append(f"  {verdict.verdict}" + (f" (a = {verdict.parameter})" if verdict.parameter else ""))
        if verdict.failed_condition:
            lines.append(f"  failed: {verdict.failed_condition}: {verdict.detail}")
    else:
        report["verdict"] = "LINK_OUT_OF_SCOPE"
        lines.append("  even strand count: a link; double sliceness not classified")
    lines.append(f"  cover classification: {cover_verdict.tag}")
    return report, "\n".join(lines), cover_verdict.tag == BUDGET_EXCEEDED


def cmd_reduce(value, line, args):
    data = _need_seifert(value, line)
    std = normalize(data)
    steps = []
    cur = std
    while True:
        options = find_contractions(cur)
        if not options:
            break
        j, smaller = options[0]
        steps.append(
            {
                "duplicated_fiber": format_rational(smaller.fibers[j - 1]),
                "result": _std_dict(smaller),
            }
        )
        cur = smaller
    report = {
        "input": line,
        "command": "reduce",
        "standard_form": _std_dict(std),
        "epsilon": format_rational(euler_invariant(std)),
        "steps": steps,
        "minimal": _std_dict(cur),
    }
    lines = [f"{line}: standard form {std}"]
    lines.extend(f"  contract {s['duplicated_fiber']}" for s in steps)
    lines.append(f"  minimal: SFS(g={cur.genus}; e={cur.central}; " + ", ".join(format_rational(r) for r in cur.fibers) + ")")
    return report, "\n".join(lines), False


COMMANDS = {
    "classify": cmd_classify,
    "homology": cmd_homology,
    "partitions": cmd_partitions,
    "mubar": cmd_mubar,
    "plumbing": cmd_plumbing,
    "lattice": cmd_lattice,
    "pretzel": cmd_pretzel,
    "reduce": cmd_reduce,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sfs4",
        description="Classify Seifert fibered spaces against smooth embedding in the 4-sphere.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", nargs="?", help="one input, e.g. 'SFS(g=0; e=2; 3/2, 3, 3/2)' or 'P(3,-3,3)'")
        p.add_argument("--file", help="file with one input per line, or - for stdin")
        p.add_argument("--json", action="store_true", help="emit one JSON object per input line")
        p.add_argument(
            "--budget",
            type=int,
            default=int(os.environ.get("SFS4_BUDGET", 10**7)),
            help="lattice search node budget",
        )
        p.add_argument(
            "--fiber-budget",
            type=int,
            default=int(os.environ.get("SFS4_FIBER_BUDGET", 14)),
            help="partition search fiber-count budget",
        )
        p.add_argument("--seed", type=int, default=0, help="seed recorded in reports for corpus tooling")
    return parser


def _input_lines(args):
    if args.file and args.input:
        raise ParseError("give an inline input or --file, not both", 0)
    if args.file:
        if args.file == "-":
            return [ln.strip() for ln in sys.stdin if ln.strip()]
        with open(args.file) as fh:
            return [ln.strip() for ln in fh if ln.strip()]
    if args.input is None:
        raise ParseError("no input given", 0)
    return [args.input]


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        lines = _input_lines(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    handler = COMMANDS[args.command]
    budget_hit = False
    outputs = []
    for line in lines:
        try:
            value = parse_input(line)
            report, text, over = handler(value, line, args)
        except (ParseError, ValueError) as exc:
            print(f"error: {line!r}: {exc}", file=sys.stderr)
            return 1
        budget_hit = budget_hit or over
        report["seed"] = args.seed
        outputs.append(_dump(report) if args.json else text)
    for out in outputs:
        print(out)
    return 2 if budget_hit else 0


if __name__ == "__main__":
    sys.exit(main())
