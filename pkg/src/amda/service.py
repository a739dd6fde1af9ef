"""Simulation service: request/response plus a snapshot event stream.

Protocol (normative schema in docs/sim-protocol.md):

* ``POST /api`` with ``{"op": <name>, "session": <id|null>, "payload": {}}``
  answering ``{"ok": true, "result": ...}`` or
  ``{"ok": false, "error": {"code", "message"}}``;
* ``GET /api/stream?session=<id>`` — server-sent events; one ``snapshot``
  event on connect and after every injection;
* anything else serves static UI assets when a directory was given.

Requests on one session are serialized by a per-session lock; a session
is only ever mutated by the handler thread holding it.
"""

from __future__ import annotations

import json
import queue
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from . import sim
from .pim import read_pim
from .xmlio import XmlFormatError


class _Model:
    def __init__(self, name: str, pim_path: Path):
        self.name = name
        self.pim_path = pim_path
        dispatch = pim_path.with_name(pim_path.name.replace(".pim.xml", ".dispatch.xml"))
        self.dispatch_path = dispatch if dispatch.exists() else None
        self.stub_files = {
            p.name[:-len(".stubs.xml")]: p
            for p in sorted(pim_path.parent.glob("*.stubs.xml"))
        }

    def load(self):
        dispatcher_bytes = self.dispatch_path.read_bytes() if self.dispatch_path else None
        return read_pim(self.pim_path.read_bytes(), dispatcher_bytes)


class _Session:
    def __init__(self, session_id: str, model: _Model, session: sim.SimSession):
        self.id = session_id
        self.model = model
        self.session = session
        self.lock = threading.Lock()
        self.subscribers: list = []

    def push_snapshot(self) -> None:
        snap = sim.snapshot(self.session)
        for q in list(self.subscribers):
            q.put(snap)


class SimService:
    def __init__(self, paths, default_stubs: sim.StubBindings = None,
                 max_steps: int = sim.DEFAULT_MAX_STEPS, ui_dir: Path = None):
        self.models = {}
        for path in paths:
            path = Path(path)
            if path.is_dir():
                for pim in sorted(path.glob("*.pim.xml")):
                    name = pim.name[:-len(".pim.xml")]
                    self.models[name] = _Model(name, pim)
            else:
                name = path.name[:-len(".pim.xml")] if path.name.endswith(".pim.xml") else path.stem
                self.models[name] = _Model(name, path)
        self.default_stubs = default_stubs or sim.StubBindings()
        self.max_steps = max_steps
        self.ui_dir = Path(ui_dir) if ui_dir else None
        self.sessions = {}
        self._counter = 0
        self._registry_lock = threading.Lock()

    # -- operations ----------------------------------------------------------

    def handle(self, op: str, session_id, payload: dict):
        if op == "list_models":
            return self._list_models()
        if op == "instantiate":
            return self._instantiate(payload)
        entry = self.sessions.get(session_id or "")
        if entry is None:
            raise sim.SimError("unknown-session", "no session named %r" % session_id)
        with entry.lock:
            if op == "inject_event":
                sim.inject_event(entry.session, payload.get("instance", ""),
                                 payload.get("event", ""))
                entry.push_snapshot()
                return {"snapshot": sim.snapshot(entry.session)}
            if op == "snapshot":
                return {"snapshot": sim.snapshot(entry.session)}
            if op == "trace":
                since = int(payload.get("since", 0))
                entries = [e.render() for e in entry.session.trace[since:]]
                return {"entries": entries, "next": since + len(entries)}
            if op == "model":
                return self._model_graph(entry)
        raise sim.SimError("unknown-op", "operation %r not in the protocol" % op)

    def _list_models(self):
        models = []
        for name in sorted(self.models):
            model = self.models[name]
            try:
                net, disp = model.load()
            except Exception as err:  # unreadable model still gets listed
                models.append({"name": name, "error": str(err)})
                continue
            models.append({
                "name": name,
                "automata": [a.id for a in net.automata],
                "instances": [{"id": inst.id, "automaton": inst.phsa} for inst in disp.instances],
                "stubs": sorted(model.stub_files),
            })
        return {"models": models, "sessions": sorted(self.sessions)}

    def _instantiate(self, payload: dict):
        name = payload.get("model", "")
        model = self.models.get(name)
        if model is None:
            raise sim.SimError("unknown-model", "no model named %r" % name)
        net, disp = model.load()
        stub_name = payload.get("stubs")
        if stub_name:
            stub_path = model.stub_files.get(stub_name)
            if stub_path is None:
                raise sim.SimError("unknown-stubs", "no stub file named %r" % stub_name)
            stubs = sim.StubBindings.from_xml(stub_path.read_bytes())
        else:
            stubs = self.default_stubs
        session = sim.instantiate(net, disp, stubs, self.max_steps)
        sim.run_to_quiescence(session)
        with self._registry_lock:
            self._counter += 1
            session_id = "s%d" % self._counter
            entry = _Session(session_id, model, session)
            self.sessions[session_id] = entry
        return {"session": session_id, "snapshot": sim.snapshot(session)}

    def _model_graph(self, entry: _Session):
        net = entry.session.net
        automata = []
        for a in net.automata:
            automata.append({
                "id": a.id,
                "states": [{"id": s.id, "name": s.name, "kind": s.kind.value}
                           for s in a.states],
                "transitions": [
                    {"source": t.source, "destination": t.destination,
                     "event": t.event, "guard": t.guard}
                    for t in a.transitions
                ],
                "initial": a.initial_state().id if a.initial_state() else None,
                "finals": [s.id for s in a.final_states()],
            })
        instances = [{"id": inst.id, "automaton": inst.ssa.id}
                     for inst in entry.session.instances.values()]
        return {"automata": automata, "instances": instances}

    def subscribe(self, session_id: str):
        entry = self.sessions.get(session_id)
        if entry is None:
            raise sim.SimError("unknown-session", "no session named %r" % session_id)
        q = queue.Queue()
        entry.subscribers.append(q)
        with entry.lock:
            q.put(sim.snapshot(entry.session))
        return entry, q


def _make_handler(service: SimService):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, format, *args):  # keep stdout clean for traces
            pass

        def _json(self, status: int, body: dict) -> None:
            data = json.dumps(body, sort_keys=True).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(data)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(data)

        def do_POST(self):
            if urlparse(self.path).path != "/api":
                self._json(404, {"ok": False, "error": {"code": "not-found",
                                                        "message": "POST /api only"}})
                return
            try:
                length = int(self.headers.get("Content-Length", "0"))
                request = json.loads(self.rfile.read(length) or b"{}")
                result = service.handle(request.get("op", ""), request.get("session"),
                                        request.get("payload") or {})
                self._json(200, {"ok": True, "result": result})
            except (sim.SimError, XmlFormatError) as err:
                code = getattr(err, "code", "error")
                self._json(200, {"ok": False, "error": {"code": code, "message": str(err)}})
            except Exception as err:
                self._json(200, {"ok": False, "error": {"code": "internal", "message": str(err)}})

        def do_GET(self):
            url = urlparse(self.path)
            if url.path == "/api/stream":
                self._stream(url)
                return
            self._static(url.path)

        def _stream(self, url) -> None:
            params = parse_qs(url.query)
            session_id = (params.get("session") or [""])[0]
            try:
                entry, q = service.subscribe(session_id)
            except sim.SimError as err:
                self._json(404, {"ok": False, "error": {"code": err.code, "message": str(err)}})
                return
            self.send_response(200)
            self.send_header("Content-Type", "text/event-stream")
            self.send_header("Cache-Control", "no-cache")
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            try:
                while True:
                    try:
                        snap = q.get(timeout=15.0)
                    except queue.Empty:
                        self.wfile.write(b": keep-alive\n\n")
                        self.wfile.flush()
                        continue
                    data = json.dumps(snap, sort_keys=True)
                    self.wfile.write(b"event: snapshot\ndata: " + data.encode("utf-8") + b"\n\n")
                    self.wfile.flush()
            except (BrokenPipeError, ConnectionResetError):
                pass
            finally:
                if q in entry.subscribers:
                    entry.subscribers.remove(q)

        def _static(self, path: str) -> None:
            if service.ui_dir is None:
                body = (b"<!doctype html><title>simulation service</title>"
                        b"<p>No UI assets configured. The JSON API lives at POST /api; "
                        b"snapshot streams at GET /api/stream?session=&lt;id&gt;.</p>")
                self.send_response(200)
                self.send_header("Content-Type", "text/html")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)
                return
            rel = path.lstrip("/") or "index.html"
            target = (service.ui_dir / rel).resolve()
            if not str(target).startswith(str(service.ui_dir.resolve())) or not target.is_file():
                self.send_response(404)
                self.send_header("Content-Length", "0")
                self.end_headers()
                return
            types = {".html": "text/html", ".js": "text/javascript",
                     ".css": "text/css", ".map": "application/json",
                     ".svg": "image/svg+xml", ".json": "application/json"}
            data = target.read_bytes()
            self.send_response(200)
            self.send_header("Content-Type", types.get(target.suffix, "application/octet-stream"))
            self.send_header("Content-Length", str(len(data)))
            self.end_headers()
            self.wfile.write(data)

    return Handler


def serve(service: SimService, host: str = "127.0.0.1", port: int = 8642) -> ThreadingHTTPServer:
    """Start the HTTP server; returns it (caller decides to block or not)."""
    server = ThreadingHTTPServer((host, port), _make_handler(service))
    server.daemon_threads = True
    return server
