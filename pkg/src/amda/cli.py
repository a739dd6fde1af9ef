"""Command line front door for the pipeline and the simulator.

Subcommands: frontend (statecharts -> PIM), transform (PIM -> PSM),
codegen (PSM -> sources), simulate (run a PIM, scripted or served),
validate (check any artifact) and pipeline (all build stages at once).
Exit codes: 0 success, 1 diagnostics, 2 usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import sim
from .codegen import CodegenError, generate
from .frontend import FrontendError, chart_network, parse_statechart, sniff_format
from .hierarchy import FlattenError, flatten_hierarchy
from .ir import FlatNetwork, validate_flat
from .pim import (
    DISPATCH_DTD,
    PIM_DTD,
    DispatcherDoc,
    PimError,
    read_dispatcher,
    read_pim,
    write_pim,
)
from .profiles import ProfileError, load_profile_file
from .psm import TransformError, check_psm, transform
from .service import SimService, serve
from .xmlio import XmlFormatError, parse_bytes


def fail(message: str) -> int:
    print("error: %s" % message, file=sys.stderr)
    return 1


def _max_steps(args) -> int:
    if args.max_steps is not None:
        return args.max_steps
    env = os.environ.get("AMDA_MAX_STEPS")
    return int(env) if env else sim.DEFAULT_MAX_STEPS


def _collect_charts(inputs):
    """Chart files plus optional dispatcher from files or a fixture directory."""
    charts = []
    dispatcher = None
    for item in inputs:
        path = Path(item)
        if path.is_dir():
            charts.extend(sorted(path.glob("*.statechart.xml")))
            found = sorted(path.glob("*.dispatch.xml"))
            if found:
                dispatcher = found[0]
        elif path.name.endswith(".dispatch.xml"):
            dispatcher = path
        else:
            charts.append(path)
    return charts, dispatcher


def _build_network(chart_paths, fmt: str) -> FlatNetwork:
    automata = []
    edges = []
    for path in chart_paths:
        data = Path(path).read_bytes()
        use = sniff_format(data) if fmt == "auto" else fmt
        chart = parse_statechart(data, use)
        for warning in chart.warnings:
            print("warning: %s: %s" % (path, warning), file=sys.stderr)
        flat = flatten_hierarchy(chart_network(chart))
        automata.extend(flat.automata)
        edges.extend(flat.activation_edges)
    return FlatNetwork(tuple(automata), tuple(edges))


def _stage_frontend(args) -> int:
    charts, dispatcher_path = _collect_charts(args.inputs)
    if args.dispatcher:
        dispatcher_path = Path(args.dispatcher)
    if not charts:
        return fail("no statechart files found")
    net = _build_network(charts, args.format)
    problems = validate_flat(net)
    if problems:
        for p in problems:
            print("error: %s" % p, file=sys.stderr)
        return 1
    if dispatcher_path is not None:
        disp = read_dispatcher(Path(dispatcher_path).read_bytes())
    else:
        bound = {edge.child for edge in net.activation_edges}
        from .pim import Instance
        disp = DispatcherDoc(tuple(
            Instance(a.id.lower(), a.id) for a in net.automata if a.id not in bound))

    base = args.name or _default_base(args.inputs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    pim_bytes, disp_bytes = write_pim(net, disp)
    (out / ("%s.pim.xml" % base)).write_bytes(pim_bytes)
    (out / ("%s.dispatch.xml" % base)).write_bytes(disp_bytes)
    (out / "pim_phsa.dtd").write_text(PIM_DTD)
    (out / "dispatcher.dtd").write_text(DISPATCH_DTD)
    print("wrote %s.pim.xml and %s.dispatch.xml to %s" % (base, base, out))
    return 0


def _default_base(inputs) -> str:
    first = Path(inputs[0])
    return first.name if first.is_dir() else first.stem.split(".")[0]


def _stage_transform(args) -> int:
    profile = load_profile_file(args.profile)
    pim_bytes = Path(args.pim).read_bytes()
    psm_bytes = transform(pim_bytes, profile)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    base = Path(args.pim).name.replace(".pim.xml", "")
    target = out / ("%s.%s.psm.xml" % (base, profile.name))
    target.write_bytes(psm_bytes)
    print("wrote %s" % target)
    return 0


def _stage_codegen(args) -> int:
    psm_bytes = Path(args.psm).read_bytes()
    root = check_psm(psm_bytes)
    profile_name = root.get("profile", "psm")
    syntax = args.syntax or ("csharp-like" if "dotnet" in root.tag else "java-like")
    dispatcher = None
    if args.dispatcher:
        dispatcher = read_dispatcher(Path(args.dispatcher).read_bytes())
    sources = generate(psm_bytes, syntax, dispatcher)
    out = Path(args.out) / "gen" / profile_name
    out.mkdir(parents=True, exist_ok=True)
    for name, text in sources.files:
        (out / name).write_text(text)
    print("wrote %d source files to %s" % (len(sources.files), out))
    return 0


def _load_session(args):
    pim_path = Path(args.pim)
    pim_bytes = pim_path.read_bytes()
    dispatcher_bytes = None
    dispatch_path = Path(args.dispatcher) if args.dispatcher else \
        pim_path.with_name(pim_path.name.replace(".pim.xml", ".dispatch.xml"))
    if dispatch_path.exists():
        dispatcher_bytes = dispatch_path.read_bytes()
    net, disp = read_pim(pim_bytes, dispatcher_bytes)
    stubs = sim.StubBindings()
    if args.stubs:
        stubs = sim.StubBindings.from_xml(Path(args.stubs).read_bytes())
    return sim.instantiate(net, disp, stubs, _max_steps(args))


def _stage_simulate(args) -> int:
    if args.serve:
        stubs = sim.StubBindings.from_xml(Path(args.stubs).read_bytes()) if args.stubs \
            else sim.StubBindings()
        ui_dir = Path(args.ui) if args.ui else None
        if ui_dir is None:
            bundled = Path("frontend/dist")
            ui_dir = bundled if bundled.is_dir() else None
        service = SimService([args.pim], stubs, _max_steps(args), ui_dir)
        server = serve(service, args.host, args.port)
        print("simulation service on http://%s:%d/ (ctrl-c stops)"
              % (args.host, server.server_address[1]), flush=True)
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            server.shutdown()
        return 0

    session = _load_session(args)
    if args.script:
        sim.run_script(session, Path(args.script).read_text())
    else:
        sim.run_to_quiescence(session)
    trace_text = sim.render_trace(session.trace)
    sys.stdout.write(trace_text)
    snap = sim.snapshot(session)
    print("== final snapshot (step %d%s)" % (snap["step"],
                                             ", quiescent" if snap["quiescent"] else ""))
    for inst in snap["instances"]:
        variables = ", ".join("%s=%s" % (v["name"], v["value"]) for v in inst["variables"])
        suffix = "  [%s]" % variables if variables else ""
        print("%s: %s%s" % (inst["id"], inst["state_name"], suffix))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        base = Path(args.pim).name.replace(".pim.xml", "")
        (out / ("%s.trace.txt" % base)).write_text(trace_text)
    return 0


def _stage_validate(args) -> int:
    path = Path(args.artifact)
    data = path.read_bytes()
    root = parse_bytes(data)
    problems = []
    if root.tag == "statechart":
        chart = parse_statechart(data, "native")
        problems.extend(chart.warnings)
        net = flatten_hierarchy(chart_network(chart))
        problems.extend(validate_flat(net))
    elif root.tag == "pim":
        net, disp = read_pim(data)
        problems.extend(validate_flat(net))
    elif root.tag == "dispatcher":
        read_dispatcher(data)
    elif root.tag == "profile":
        load_profile_file(path)
    elif root.tag.startswith("psm"):
        check_psm(data)
    elif root.tag == "XMI" or root.tag.endswith("}XMI"):
        chart = parse_statechart(data, "xmi-subset")
        problems.extend(chart.warnings)
        net = flatten_hierarchy(chart_network(chart))
        problems.extend(validate_flat(net))
    else:
        return fail("cannot identify artifact with root <%s>" % root.tag)
    for p in problems:
        print(str(p), file=sys.stderr)
    if any(p.code != "unused-event" and not p.code.startswith("unknown-element")
           for p in problems):
        return 1
    print("%s: ok" % path)
    return 0


def _stage_pipeline(args) -> int:
    code = _stage_frontend(argparse.Namespace(
        inputs=args.inputs, format=args.format, dispatcher=args.dispatcher,
        name=args.name, out=args.out))
    if code:
        return code
    base = args.name or _default_base(args.inputs)
    pim_path = Path(args.out) / ("%s.pim.xml" % base)
    code = _stage_transform(argparse.Namespace(
        pim=str(pim_path), profile=args.profile, out=args.out))
    if code:
        return code
    profile = load_profile_file(args.profile)
    psm_path = Path(args.out) / ("%s.%s.psm.xml" % (base, profile.name))
    return _stage_codegen(argparse.Namespace(
        psm=str(psm_path), syntax=None,
        dispatcher=str(Path(args.out) / ("%s.dispatch.xml" % base)),
        out=args.out))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amda",
        description="statechart compiler and simulator over networks of extended automata")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("frontend", help="statecharts -> PIM + dispatcher")
    p.add_argument("inputs", nargs="+", help="chart files or a fixture directory")
    p.add_argument("--format", choices=["native", "xmi-subset", "auto"], default="auto")
    p.add_argument("--dispatcher", help="dispatcher XML (default: found in the directory)")
    p.add_argument("--name", help="base name for outputs (default: input name)")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(run=_stage_frontend)

    p = commands.add_parser("transform", help="PIM + profile -> PSM")
    p.add_argument("pim")
    p.add_argument("--profile", required=True)
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(run=_stage_transform)

    p = commands.add_parser("codegen", help="PSM -> source files")
    p.add_argument("psm")
    p.add_argument("--syntax", choices=["java-like", "csharp-like"])
    p.add_argument("--dispatcher")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(run=_stage_codegen)

    p = commands.add_parser("simulate", help="execute a PIM directly")
    p.add_argument("pim", help="a *.pim.xml file (or a directory with --serve)")
    p.add_argument("--dispatcher")
    p.add_argument("--stubs", help="scripted bindings for external functions")
    p.add_argument("--script", help="event script to replay")
    p.add_argument("--serve", action="store_true", help="host the simulation service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8642)
    p.add_argument("--ui", help="static UI assets directory (default: frontend/dist)")
    p.add_argument("--max-steps", type=int, default=None)
    p.add_argument("-o", "--out", help="also write the trace file here")
    p.set_defaults(run=_stage_simulate)

    p = commands.add_parser("validate", help="check any artifact file")
    p.add_argument("artifact")
    p.set_defaults(run=_stage_validate)

    p = commands.add_parser("pipeline", help="frontend + transform + codegen")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--format", choices=["native", "xmi-subset", "auto"], default="auto")
    p.add_argument("--dispatcher")
    p.add_argument("--name")
    p.add_argument("--profile", required=True)
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(run=_stage_pipeline)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (FrontendError, FlattenError, PimError, ProfileError, TransformError,
            CodegenError, sim.SimError, XmlFormatError) as err:
        return fail(str(err))
    except FileNotFoundError as err:
        return fail("missing file: %s" % err.filename)


if __name__ == "__main__":
    sys.exit(main())
