import json
import threading

import httpx
import pytest

from amda.cli import main
from amda.service import SimService, serve


@pytest.fixture(scope="module")
def live(tmp_path_factory, atm_dir):
    out = tmp_path_factory.mktemp("models")
    assert main(["frontend", str(atm_dir), "-o", str(out)]) == 0
    for stub_file in atm_dir.glob("*.stubs.xml"):
        (out / stub_file.name).write_bytes(stub_file.read_bytes())
    service = SimService([out])
    server = serve(service, "127.0.0.1", 0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = "http://127.0.0.1:%d" % server.server_address[1]
    yield base
    server.shutdown()


def call(base, op, session=None, payload=None):
    response = httpx.post(base + "/api",
                          json={"op": op, "session": session, "payload": payload or {}})
    assert response.status_code == 200
    return response.json()


class TestProtocol:
    def test_list_models(self, live):
        body = call(live, "list_models")
        assert body["ok"]
        models = {m["name"]: m for m in body["result"]["models"]}
        assert "atm" in models
        assert {i["id"] for i in models["atm"]["instances"]} == {
            "atm", "monitor", "card_reader", "keyboard"}
        assert "correct-pin" in models["atm"]["stubs"]

    def test_instantiate_boots_to_s1(self, live):
        body = call(live, "instantiate", payload={"model": "atm", "stubs": "correct-pin"})
        assert body["ok"]
        snap = body["result"]["snapshot"]
        atm_view = [i for i in snap["instances"] if i["id"] == "atm"][0]
        assert atm_view["state_name"] == "S1"
        assert [e["id"] for e in atm_view["possible_events"]] == ["ev3"]

    def test_inject_and_snapshot(self, live):
        session = call(live, "instantiate",
                       payload={"model": "atm", "stubs": "correct-pin"})["result"]["session"]
        body = call(live, "inject_event", session,
                    {"instance": "atm", "event": "ev3"})
        assert body["ok"]
        atm_view = [i for i in body["result"]["snapshot"]["instances"]
                    if i["id"] == "atm"][0]
        assert atm_view["state_name"] == "S2"
        trace = call(live, "trace", session, {"since": 0})["result"]
        assert any("A1_S1 -> A1_S2 on ev3" in line for line in trace["entries"])

    def test_error_envelope(self, live):
        session = call(live, "instantiate",
                       payload={"model": "atm", "stubs": "correct-pin"})["result"]["session"]
        body = call(live, "inject_event", session, {"instance": "atm", "event": "nope"})
        assert not body["ok"]
        assert body["error"]["code"] == "unknown-event"
        assert not call(live, "snapshot", "s999")["ok"]
        assert not call(live, "instantiate", payload={"model": "ghost"})["ok"]

    def test_model_graph(self, live):
        session = call(live, "instantiate",
                       payload={"model": "atm", "stubs": "correct-pin"})["result"]["session"]
        graph = call(live, "model", session)["result"]
        a1 = [a for a in graph["automata"] if a["id"] == "A1"][0]
        assert len(a1["states"]) == 9
        assert len(a1["transitions"]) == 11
        assert a1["initial"] == "A1_S0"
        assert a1["finals"] == ["A1_End"]

    def test_stream_pushes_snapshots(self, live):
        session = call(live, "instantiate",
                       payload={"model": "atm", "stubs": "correct-pin"})["result"]["session"]
        events = []
        ready = threading.Event()

        def listen():
            with httpx.stream("GET", live + "/api/stream",
                              params={"session": session}, timeout=10.0) as response:
                buffer = ""
                for chunk in response.iter_text():
                    buffer += chunk
                    while "\n\n" in buffer:
                        block, buffer = buffer.split("\n\n", 1)
                        if "data: " in block:
                            data = block.split("data: ", 1)[1]
                            events.append(json.loads(data))
                            ready.set()
                            if len(events) >= 2:
                                return

        thread = threading.Thread(target=listen, daemon=True)
        thread.start()
        assert ready.wait(5.0), "no initial snapshot arrived"
        call(live, "inject_event", session, {"instance": "atm", "event": "ev3"})
        thread.join(5.0)
        assert len(events) >= 2
        first = [i for i in events[0]["instances"] if i["id"] == "atm"][0]
        second = [i for i in events[1]["instances"] if i["id"] == "atm"][0]
        assert first["state_name"] == "S1"
        assert second["state_name"] == "S2"

    def test_static_fallback_page(self, live):
        response = httpx.get(live + "/nothing-here")
        assert response.status_code == 200
        assert "simulation service" in response.text
