"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 invalid fat graph, 4 cycle cap
exceeded, 5 bad parameter.
"""

from __future__ import annotations

import argparse
import sys

from . import hyperbolic as hyp
from .admissibility import check_admissibility, check_minimality, verify_metric
from .cycles import DEFAULT_CAP
from .errors import (
    BadParameter,
    CycleCapExceeded,
    DomainError,
    InvalidGraph,
    MissingLength,
    NonPositiveLength,
    NotFourRegular,
    ParseError,
)
from .fatgraph import FatGraph
from .generators import gen_example_g8, gen_trivalent_girth, gen_unitrivalent_girth, gen_wheel_family, girth
from .io import (
    fraction_str,
    input_digest,
    parse_fatgraph,
    parse_metric,
    parse_plain_graph,
    report_document,
    serialize_fatgraph,
    serialize_plain_graph,
    variable_key,
)
from .topology import min_genus_report, ribbon_genus, vf_obstruction

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_CAP, EXIT_PARAM = 0, 2, 3, 4, 5


class Report:
    """Everything a command produces; rendered as text or as JSON."""

    def __init__(self, command, input_sha=None):
        self.command = command
        self.input_sha = input_sha
        self.result = {}
        self.witness = None
        self.certificate = None
        self.diagnostics = {}
        self.text: list[str] = []

    def render(self, as_json: bool) -> str:
        if as_json:
            return report_document(
                self.command, self.input_sha, self.result, self.witness, self.certificate, self.diagnostics
            )
        return "\n".join(self.text) + "\n"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _metric_dict(graph: FatGraph, metric) -> dict[str, str]:
    return {variable_key(graph, v): fraction_str(x) for v, x in sorted(metric.lengths.items())}


def _cycle_names(graph: FatGraph, cycle) -> str:
    if cycle.is_circle:
        return f"circle {cycle.circle}"
    return "(" + " ".join(graph.nodes[n].name for n in cycle.nodes) + ")"


def _load_graph(args, report_name):
    text = _read(args.file)
    graph = parse_fatgraph(text)
    return graph, Report(report_name, input_digest(text))


def cmd_check(args) -> Report:
    graph, rep = _load_graph(args, "check")
    verdict = check_admissibility(graph, args.max_cycles)
    std, nonstd, edges = verdict.constraint_counts
    rep.result = {
        "status": verdict.status,
        "margin": verdict.margin,
        "constraint_counts": {"standard": std, "non_standard": nonstd, "edges": edges},
    }
    rep.diagnostics = {"simplex_iterations": verdict.iterations}
    rep.text = [
        f"status: {verdict.status}",
        f"margin: {fraction_str(verdict.margin)}",
        f"constraints: {std} standard, {nonstd} non-standard, {edges} edges",
    ]
    if verdict.witness is not None:
        rep.witness = _metric_dict(graph, verdict.witness)
        rep.text.append("witness:")
        rep.text += [f"len {k} {v}" for k, v in rep.witness.items()]
    return rep


def cmd_verify(args) -> Report:
    graph, rep = _load_graph(args, "verify")
    metric_text = _read(args.metric)
    metric = parse_metric(metric_text, graph)
    vr = verify_metric(graph, metric, args.max_cycles)
    cycles = graph.standard_cycles
    tightest = [variable_key(graph, v) for v in vr.tightest] if vr.tightest else None
    rep.result = {
        "passed": vr.passed,
        "systole": vr.systole,
        "standard_sums": [{"cycle": _cycle_names(graph, cycles[i]), "sum": s} for i, s in vr.standard_sums],
        "deviations": [{"cycle": _cycle_names(graph, cycles[i]), "deviation": d} for i, d in vr.deviations],
        "min_slack": vr.min_slack,
        "tightest": tightest,
        "non_standard_count": vr.non_standard_count,
    }
    rep.diagnostics = {"metric_sha": input_digest(metric_text)}
    rep.text = [f"verdict: {'PASS' if vr.passed else 'FAIL'}", f"systole: {fraction_str(vr.systole)}"]
    rep.text += [f"standard {_cycle_names(graph, cycles[i])}: {fraction_str(s)}" for i, s in vr.standard_sums]
    rep.text += [f"deviation {_cycle_names(graph, cycles[i])}: {fraction_str(d)}" for i, d in vr.deviations]
    if vr.min_slack is not None:
        rep.text.append(f"min non-standard slack: {fraction_str(vr.min_slack)} on {' '.join(tightest)}")
    rep.text.append(f"non-standard cycles: {vr.non_standard_count}")
    return rep


def cmd_minimal(args) -> Report:
    graph, rep = _load_graph(args, "minimal")
    mr = check_minimality(graph, args.max_cycles)
    cycles = graph.standard_cycles
    rep.result = {
        "status": mr.status,
        "full": {"status": mr.full.status, "margin": mr.full.margin},
        "deletions": [
            {"cycle": _cycle_names(graph, cycles[cid]), "status": v.status, "margin": v.margin}
            for cid, v in mr.deletions
        ],
    }
    rep.text = [f"status: {mr.status}", f"full graph: {mr.full.status} (margin {fraction_str(mr.full.margin)})"]
    for cid, v in mr.deletions:
        rep.text.append(f"without {_cycle_names(graph, cycles[cid])}: {v.status} (margin {fraction_str(v.margin)})")
    return rep


def cmd_obstruction(args) -> Report:
    graph, rep = _load_graph(args, "obstruction")
    cert = vf_obstruction(graph)
    if cert is None:
        rep.result = {"status": "inconclusive"}
        rep.text = ["inconclusive"]
        return rep
    faces = []
    for fc in cert.face_cycles:
        faces.append(
            {
                "edges": [variable_key(graph, e) for e in fc.edges],
                "nodes": [graph.nodes[n].name for n in fc.nodes],
                "simple": fc.simple,
            }
        )
    rep.result = {"status": "certificate"}
    rep.certificate = {
        "v": cert.v,
        "f": cert.f,
        "average_face_length": cert.average_face_length,
        "orientation": list(cert.orientation),
        "face_cycles": faces,
    }
    rep.text = [
        f"certificate: v = {cert.v}, f = {cert.f}",
        f"average face-cycle length with unit standard cycles: {fraction_str(cert.average_face_length)}",
    ]
    for k, face in enumerate(faces):
        note = "" if face["simple"] else " (revisits a node)"
        rep.text.append(f"face {k}: {' '.join(face['nodes'])}{note}")
    return rep


def cmd_genus(args) -> Report:
    graph, rep = _load_graph(args, "genus")
    rg = ribbon_genus(graph)
    mg = min_genus_report(graph)
    rep.result = {
        "chi": rg.chi,
        "boundary_count": rg.boundary_count,
        "genus": rg.genus,
        "components": [{"chi": c, "boundaries": b, "genus": g} for c, b, g in rg.components],
        "min_genus": mg.min_genus,
        "statement": mg.statement,
    }
    rep.text = [f"chi: {rg.chi}", f"boundaries: {rg.boundary_count}", f"genus: {rg.genus}", mg.statement]
    return rep


def cmd_gen(args) -> Report:
    rep = Report("gen " + args.family)
    if args.family == "wheel":
        text = serialize_fatgraph(gen_wheel_family(args.n))
    elif args.family == "example-g8":
        text = serialize_fatgraph(gen_example_g8())
    elif args.family == "trivalent-girth":
        text = serialize_plain_graph(gen_trivalent_girth(args.girth))
    else:
        text = serialize_plain_graph(gen_unitrivalent_girth(args.girth))
    rep.result = {"text": text}
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        rep.text = [f"wrote {args.output}"]
    else:
        rep.text = [text.rstrip("\n")]
    return rep


def cmd_girth(args) -> Report:
    text = _read(args.file)
    graph = parse_plain_graph(text)
    g = girth(graph)
    rep = Report("girth", input_digest(text))
    rep.result = {
        "vertices": len(graph.vertices),
        "edges": len(graph.edges),
        "girth": g,
        "degree_sequence": graph.degree_sequence(),
    }
    rep.text = [f"vertices: {len(graph.vertices)}", f"edges: {len(graph.edges)}", f"girth: {g}"]
    return rep


def cmd_pants(args) -> Report:
    rep = Report("pants " + args.what)
    if args.what == "height":
        if args.lem2:
            m = hyp.pants_height_cosh(args.waist)
            rep.result = {"l": args.waist, "variant": "cosh", "m": m}
        else:
            ps = hyp.pants_spec(args.waist, args.k)
            rep.result = {"l": ps.l, "k": ps.k, "l_prime": ps.l_prime, "m": ps.m}
            m = ps.m
        rep.text = [f"height: {m!r}"]
    else:
        d = hyp.pants_boundary_distance(args.l)
        rep.result = {"l": args.l, "distance": d}
        rep.text = [f"distance: {d!r}"]
    return rep


def _lengths(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise BadParameter(f"cannot read lengths from {text!r}") from None


def cmd_cap(args) -> Report:
    rep = Report("cap " + args.what)
    if args.what == "gap":
        first, second = hyp.gap_branches(args.l)
        a = min(first, second)
        rep.result = {"l": args.l, "a": a, "branches": [first, second]}
        rep.text = [f"a(l): {a!r}", f"branches: {first!r}, {second!r}"]
    elif args.what == "girth":
        t = hyp.capping_girth(args.l)
        rep.result = {"l": args.l, "a": hyp.capping_gap(args.l), "t": t}
        rep.text = [f"t(l): {t}"]
    else:
        plan = hyp.cap_plan(_lengths(args.l))
        pieces = []
        for p in plan.pieces:
            pieces.append(
                {
                    "l": p.l,
                    "a": p.gap,
                    "branches": list(p.branches),
                    "t": p.t,
                    "girth": p.girth,
                    "vertex_count": p.vertex_count,
                    "terminal_pants": list(p.terminal_pants),
                    "inner_pants": list(p.inner_pants),
                    "inner_pants_count": p.inner_count,
                }
            )
            rep.text.append(
                f"l = {p.l!r}: a = {p.gap!r}, t = {p.t}, graph girth {p.girth} on {p.vertex_count} vertices,"
                f" 1 x P{p.terminal_pants} + {p.inner_count} x P{p.inner_pants}"
            )
        rep.result = {"pieces": pieces}
    return rep


def cmd_quasi(args) -> Report:
    rep = Report("quasi " + args.what)
    if args.what == "constant":
        k = hyp.quasi_constant(args.alpha)
        rep.result = {"alpha": args.alpha, "k": k}
        rep.text = [f"k(alpha): {k!r}"]
    else:
        r = hyp.twoseg_quasi_check(args.l1, args.l2, args.alpha, args.samples, args.seed)
        rep.result = {
            "alpha": r.alpha,
            "k": r.k_alpha,
            "samples": r.samples,
            "min_euclidean_ratio": r.min_euclidean_ratio,
            "min_hyperbolic_ratio": r.min_hyperbolic_ratio,
            "ok": r.ok,
        }
        rep.text = [
            f"min Euclidean ratio: {r.min_euclidean_ratio!r}",
            f"min hyperbolic ratio: {r.min_hyperbolic_ratio!r}",
            f"claim holds: {r.ok}",
        ]
    return rep


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    capped = argparse.ArgumentParser(add_help=False)
    capped.add_argument("--max-cycles", type=int, default=DEFAULT_CAP, metavar="N")

    parser = argparse.ArgumentParser(prog="systolic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (
        ("check", cmd_check, "decide combinatorial admissibility"),
        ("minimal", cmd_minimal, "decide minimal non-admissibility"),
    ):
        p = sub.add_parser(name, parents=[common, capped], help=helptext)
        p.add_argument("file")
        p.set_defaults(func=fn)
    p = sub.add_parser("verify", parents=[common, capped], help="check a metric exactly")
    p.add_argument("file")
    p.add_argument("--metric", required=True)
    p.set_defaults(func=cmd_verify)
    for name, fn, helptext in (
        ("obstruction", cmd_obstruction, "v <= f certificate"),
        ("genus", cmd_genus, "boundary count, genus and minimum realisation genus"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
        p.set_defaults(func=fn)

    p = sub.add_parser("gen", help="generate a graph family member")
    gen = p.add_subparsers(dest="family", required=True)
    g = gen.add_parser("wheel", parents=[common])
    g.add_argument("--n", type=int, required=True)
    gen.add_parser("example-g8", parents=[common])
    for fam in ("trivalent-girth", "unitrivalent-girth"):
        g = gen.add_parser(fam, parents=[common])
        g.add_argument("--girth", type=int, required=True)
    for g in gen.choices.values():
        g.add_argument("-o", "--output")
        g.set_defaults(func=cmd_gen)

    p = sub.add_parser("girth", parents=[common], help="girth of a plain graph")
    p.add_argument("file")
    p.set_defaults(func=cmd_girth)

    p = sub.add_parser("pants", help="pants heights and distances")
    pants = p.add_subparsers(dest="what", required=True)
    g = pants.add_parser("height", parents=[common])
    g.add_argument("--waist", type=float, required=True)
    g.add_argument("--k", type=float, default=1.0)
    g.add_argument("--lem2", action="store_true", help="equal-boundary variant with cosh l' in the height formula")
    g = pants.add_parser("distance", parents=[common])
    g.add_argument("--l", type=float, required=True)
    for g in pants.choices.values():
        g.set_defaults(func=cmd_pants)

    p = sub.add_parser("cap", help="capping gap, girth and plan")
    cap = p.add_subparsers(dest="what", required=True)
    for name in ("gap", "girth"):
        g = cap.add_parser(name, parents=[common])
        g.add_argument("--l", type=float, required=True)
    g = cap.add_parser("plan", parents=[common])
    g.add_argument("--l", required=True, help="comma-separated boundary lengths")
    for g in cap.choices.values():
        g.set_defaults(func=cmd_cap)

    p = sub.add_parser("quasi", help="two-segment quasi-geodesic constant")
    quasi = p.add_subparsers(dest="what", required=True)
    g = quasi.add_parser("constant", parents=[common])
    g.add_argument("--alpha", type=float, required=True)
    g = quasi.add_parser("check", parents=[common])
    g.add_argument("--alpha", type=float, required=True)
    g.add_argument("--l1", type=float, default=5.0)
    g.add_argument("--l2", type=float, default=5.0)
    g.add_argument("--samples", type=int, default=10_000)
    g.add_argument("--seed", type=int, default=0)
    for g in quasi.choices.values():
        g.set_defaults(func=cmd_quasi)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except (ParseError, NonPositiveLength, MissingLength) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidGraph, NotFourRegular) as exc:
        print(f"invalid graph: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CycleCapExceeded as exc:
        print(f"cycle cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (BadParameter, DomainError) as exc:
        print(f"bad parameter: {exc}", file=sys.stderr)
        return EXIT_PARAM
    sys.stdout.write(report.render(args.json))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
