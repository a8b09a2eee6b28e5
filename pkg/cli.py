"""Command line for the silting workbench.

    python cli.py chain samples/example1.quiver
    python cli.py hom samples/a2.quiver P1 P2
    python cli.py verify samples/example1.quiver --format json

Exit codes: 0 ok, 1 a verification failed, 2 bad input, 3 a computation limit was hit.
"""
import argparse
import logging
import sys
from typing import Callable, List, Optional

from models.config import OutputFormat, WorkbenchConfig, load_config
from models.reports import ARQuiverReport, EndAlgebraReport, ModuleListReport, PerpReport, Report, SpaceReport
from services import emitters
from services.ar_quiver import ar_quiver
from services.chains import build_chain, localization_report, validate_chain
from services.classification import classify_algebra
from services.decomposition import module_entry
from services.errors import InputError, WorkbenchError
from services.heart import HeartContext, heart_decomposition
from services.homology import ExtSpace, tau
from services.indecomposables import standard_name
from services.localization import localize, perpendicular
from services.modules import HomSpace
from services.nsection import build_nsection, nsection_to_chain, torsion_pairs, verify_nsection
from services.silting import build_silting, end_algebra_report, verify_silting
from services.workspace import Workspace

logger = logging.getLogger("cli")


class CommandResult:
    """A report plus the text rendering used in text mode."""

    def __init__(self, report: Optional[Report], text: str, dot: Optional[str] = None, ok: Optional[bool] = None):
        self.report = report
        self.text = text
        self.dot = dot
        self.ok = ok if ok is not None else (report.ok if report is not None else True)


def _checks_text(report: Report) -> List[str]:
    lines = []
    for item in report.checks:
        mark = "✅" if item.passed else "❌"
        extra = f": {item.detail}" if item.detail and not item.passed else ""
        witness = f" [{item.witness}]" if item.witness and not item.passed else ""
        lines.append(f"{mark} {item.name}{extra}{witness}")
    return lines


def _entries_text(entries) -> str:
    parts = []
    for e in entries:
        label = f"{e.label}[{e.shift}]" if e.shift else e.label
        parts.append(f"{label}^{e.multiplicity}" if e.multiplicity > 1 else label)
    return " ⊕ ".join(parts) if parts else "0"


def _sigma(ws: Workspace, args) -> list:
    if args.sigma:
        return ws.sigma(args.sigma)
    if not ws.document.chain:
        raise InputError("no localizing set: pass --sigma or declare a chain")
    return ws.sigma(ws.document.chain[0])


def _chain(ws: Workspace):
    if ws.document.chain:
        return build_chain(ws.algebra, ws.chain_sigmas())
    if ws.document.sections:
        return nsection_to_chain(ws.algebra, ws.section_classes(), ws.universe())
    raise InputError("the document declares neither a chain nor an n-section")


# -- commands ------------------------------------------------------------------------------------

def cmd_parse(ws: Workspace, args) -> CommandResult:
    A = ws.algebra
    report = EndAlgebraReport(name=A.name, dimension=A.dimension, vertices={v: v for v in A.vertices},
                              arrows=[(a.label, a.src, a.dst) for a in A.quiver.arrows],
                              relations=A.relation_texts(), cartan=A.cartan_matrix().tolist(),
                              dsl=emitters.algebra_to_dsl(A))
    text = emitters.algebra_to_dsl(A) + "".join(emitters.module_to_dsl(M, name) for name, M in ws.modules.items())
    return CommandResult(report, text.rstrip(), dot=emitters.quiver_to_dot(A))


def cmd_indec(ws: Workspace, args) -> CommandResult:
    modules = ws.universe()
    report = ModuleListReport(modules=[module_entry(X).model_copy(update={"label": standard_name(X, ws.algebra)})
                                       for X in modules])
    lines = [f"{len(modules)} indecomposables"] + [f"  {e.label:<12} {list(e.dims)}" for e in report.modules]
    return CommandResult(report, "\n".join(lines))


def cmd_arquiver(ws: Workspace, args) -> CommandResult:
    arq = ar_quiver(ws.algebra, ws.universe())
    names = arq.names
    report = ARQuiverReport(
        vertices=[module_entry(X) for X in arq.modules],
        arrows=[(names[i], names[j], m) for (i, j), m in sorted(arq.irreducible.items())],
        translate=[(names[x], names[t]) for x, t in sorted(arq.translate.items())])
    report.add_check("meshes are complete", not arq.mesh_failures, "; ".join(arq.mesh_failures))
    lines = [f"{a} -> {b}" + (f" ({m})" if m > 1 else "") for a, b, m in report.arrows]
    lines += [f"τ {x} = {t}" for x, t in report.translate]
    return CommandResult(report, "\n".join(lines + _checks_text(report)), dot=emitters.ar_quiver_to_dot(arq))


def _space(kind: str, ws: Workspace, args) -> CommandResult:
    M, N = ws.module(args.source), ws.module(args.target)
    d = HomSpace(M, N).dim if kind == "Hom" else ExtSpace(M, N).dim
    report = SpaceReport(kind=kind, source=args.source, target=args.target, dimension=d)
    return CommandResult(report, f"dim {d}  ({kind}({args.source}, {args.target}))")


def cmd_hom(ws: Workspace, args) -> CommandResult:
    return _space("Hom", ws, args)


def cmd_ext(ws: Workspace, args) -> CommandResult:
    return _space("Ext1", ws, args)


def cmd_tau(ws: Workspace, args) -> CommandResult:
    X = tau(ws.module(args.source))
    entry = module_entry(X).model_copy(update={"label": standard_name(X, ws.algebra) if X.total_dim else "0"})
    report = SpaceReport(kind="tau", source=args.source, result=entry)
    return CommandResult(report, f"τ {args.source} = {entry.label} {list(entry.dims)}")


def cmd_perp(ws: Workspace, args) -> CommandResult:
    sigma = _sigma(ws, args)
    P = perpendicular(ws.algebra, sigma, ws.universe())
    members = P.indecomposables
    report = PerpReport(sigma=[s.label() for s in sigma], expected_rank=P.expected_rank,
                        members=[module_entry(X).model_copy(update={"label": standard_name(X, ws.algebra)})
                                 for X in members])
    text = f"perp({', '.join(report.sigma)}) = add({_entries_text(report.members)})"
    return CommandResult(report, text)


def cmd_localize(ws: Workspace, args) -> CommandResult:
    epi = localize(ws.algebra, _sigma(ws, args))
    report = localization_report(epi, ws.universe())
    report.presentation = emitters.algebra_to_dsl(epi.presentation().algebra)
    lines = [f"B = {_entries_text(report.ring_module)} (dimension {report.dimension})",
             f"ker λ = {_entries_text(report.kernel)}", f"coker λ = {_entries_text(report.cokernel)}",
             report.presentation.rstrip()]
    return CommandResult(report, "\n".join(lines + _checks_text(report)))


def cmd_chain(ws: Workspace, args) -> CommandResult:
    chain = _chain(ws)
    try:
        universe = ws.universe()
    except WorkbenchError as exc:
        logger.warning("partition skipped: %s", exc.message)
        universe = None
    report = validate_chain(chain, universe)
    lines = [f"chain of length {report.length}"]
    for i, step in enumerate(report.steps):
        lines.append(f"B_{i} = {_entries_text(step.ring_module)}")
    for c in report.connecting_maps:
        lines.append(f"μ_{c.position}: ker = {_entries_text(c.kernel)}, coker = {_entries_text(c.cokernel)}")
    if report.partition:
        lines.append("partition: " + " | ".join(", ".join(layer) for layer in report.partition))
    return CommandResult(report, "\n".join(lines + _checks_text(report)))


def cmd_silt(ws: Workspace, args) -> CommandResult:
    T = build_silting(_chain(ws))
    report = verify_silting(T)
    lines = ["T = " + " ⊕ ".join(T.labels())]
    return CommandResult(report, "\n".join(lines + _checks_text(report)))


def cmd_end_algebra(ws: Workspace, args) -> CommandResult:
    T = build_silting(_chain(ws))
    report = end_algebra_report(T)
    lines = [f"{v} = {s}" for v, s in report.vertices.items()] + [report.dsl.rstrip()]
    return CommandResult(report, "\n".join(lines + _checks_text(report)))


def cmd_nsection(ws: Workspace, args) -> CommandResult:
    chain = _chain(ws)
    context = HeartContext(chain, ws.universe())
    section = build_nsection(chain, context=context)
    report = verify_nsection(section)
    pairs = torsion_pairs(section, context=context)
    heart = heart_decomposition(context)
    for extra in (heart, pairs):
        report.checks.extend(extra.checks)
    lines = [f"class {i}: {', '.join(c)}   <- {', '.join(o)}"
             for i, (c, o) in enumerate(zip(report.classes, report.origins))]
    return CommandResult(report, "\n".join(lines + _checks_text(report)))


def cmd_classify(ws: Workspace, args) -> CommandResult:
    report = classify_algebra(ws.algebra, ws.universe())
    lines = [f"gl.dim {report.global_dimension}"]
    lines += [f"{k}: {'yes' if v else 'no'}" + (f" ({report.notes[k]})" if k in report.notes else "")
              for k, v in report.flags.items()]
    lines += [f"  {r.label:<12} pd {r.projective_dimension}  id {r.injective_dimension}"
              f"{'  L' if r.left_part else ''}{'  R' if r.right_part else ''}" for r in report.rows]
    return CommandResult(report, "\n".join(lines + _checks_text(report)))


COMMANDS = {
    "parse": cmd_parse,
    "indec": cmd_indec,
    "arquiver": cmd_arquiver,
    "hom": cmd_hom,
    "ext": cmd_ext,
    "tau": cmd_tau,
    "perp": cmd_perp,
    "localize": cmd_localize,
    "chain": cmd_chain,
    "silt": cmd_silt,
    "end-algebra": cmd_end_algebra,
    "nsection": cmd_nsection,
    "classify": cmd_classify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="Q or GF(p)")
    common.add_argument("--seed", type=int)
    common.add_argument("--cap-dim", type=int, dest="cap_dim")
    common.add_argument("--format", choices=[f.value for f in OutputFormat], dest="output_format")
    common.add_argument("--log-level", dest="log_level")

    parser = argparse.ArgumentParser(prog="workbench", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("parse", "indec", "arquiver", "chain", "silt", "end-algebra", "nsection", "classify", "verify"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("file")
    for name in ("hom", "ext"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("file")
        p.add_argument("source")
        p.add_argument("target")
    p = sub.add_parser("tau", parents=[common])
    p.add_argument("file")
    p.add_argument("source")
    for name in ("perp", "localize"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("file")
        p.add_argument("--sigma", help='localizing set such as "I3+I2+I1"; defaults to the first chain step')
    return parser


def _render(result: CommandResult, config: WorkbenchConfig, command: str, out) -> None:
    if config.output_format == OutputFormat.JSON:
        print(result.report.model_dump_json(indent=2), file=out)
    elif config.output_format == OutputFormat.DOT:
        if result.dot is None:
            raise InputError(f"dot output is not available for {command}")
        print(result.dot, end="", file=out)
    else:
        print(result.text, file=out)


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        config = load_config(field=args.field, seed=args.seed, cap_dim=args.cap_dim,
                             output_format=args.output_format, log_level=args.log_level)
        logging.basicConfig(level=config.log_level, format="%(levelname)s %(name)s: %(message)s", stream=err)
        if args.command == "verify":
            return _verify(args.file, config, out)
        ws = Workspace.from_file(args.file, config)
        handler: Callable = COMMANDS[args.command]
        result = handler(ws, args)
        _render(result, config, args.command, out)
        return 0 if result.ok else 1
    except WorkbenchError as exc:
        witness = f" [{exc.witness}]" if exc.witness and not isinstance(exc.witness, Report) else ""
        print(f"❌ {type(exc).__name__}: {exc.message}{witness}", file=err)
        return exc.exit_code


def _verify(path: str, config: WorkbenchConfig, out) -> int:
    from main import print_verify, run_verify, summarize

    state = run_verify(path, config)
    if config.output_format == OutputFormat.JSON:
        print(summarize(state).model_dump_json(indent=2), file=out)
    elif config.output_format == OutputFormat.DOT:
        raise InputError("dot output is not available for verify")
    else:
        print_verify(state, out)
        if state.end_algebra_report is not None:
            print(state.end_algebra_report.dsl.rstrip(), file=out)
    return state.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    raise SystemExit(main())
