import { describe, expect, it } from "vitest";

import { SessionViewModel } from "../src/model.js";
import { ApiClient, Snapshot } from "../src/protocol.js";
import { eventButtonsHtml, svgForAutomaton } from "../src/render.js";
import { layoutAutomaton } from "../src/layout.js";

function snapshotAt(state: string, events: string[]): Snapshot {
  return {
    step: 1,
    quiescent: true,
    instances: [
      {
        id: "atm",
        automaton: "A1",
        state: `A1_${state}`,
        state_name: state,
        final: state === "End",
        active: true,
        variables: [{ name: "errors", type: "integer", value: "0" }],
        possible_events: events.map((id) => ({ id, description: `about ${id}` })),
      },
    ],
    recent_trace: [],
  };
}

class FakeClient extends ApiClient {
  injections: [string, string][] = [];
  nextSnapshot: Snapshot = snapshotAt("S2", ["ev7", "ev8"]);

  override async injectEvent(_session: string, instance: string, event: string) {
    this.injections.push([instance, event]);
    return { snapshot: this.nextSnapshot };
  }

  override async trace(_session: string, since: number) {
    return { entries: [], next: since };
  }
}

describe("SessionViewModel", () => {
  it("derives the button set exactly from possible events", () => {
    const vm = new SessionViewModel(new FakeClient(), "s1");
    vm.applySnapshot(snapshotAt("S1", ["ev3"]));
    expect(vm.eventButtons()).toEqual([
      { instance: "atm", event: "ev3", description: "about ev3" },
    ]);
  });

  it("sends offered events and applies the returned snapshot", async () => {
    const client = new FakeClient();
    const vm = new SessionViewModel(client, "s1");
    vm.applySnapshot(snapshotAt("S1", ["ev3"]));
    expect(await vm.sendEvent("atm", "ev3")).toBe(true);
    expect(client.injections).toEqual([["atm", "ev3"]]);
    expect(vm.currentStateOf("atm")).toBe("A1_S2");
  });

  it("never requests a disabled event", async () => {
    const client = new FakeClient();
    const vm = new SessionViewModel(client, "s1");
    vm.applySnapshot(snapshotAt("S1", ["ev3"]));
    expect(await vm.sendEvent("atm", "ev8")).toBe(false);
    expect(await vm.sendEvent("ghost", "ev3")).toBe(false);
    expect(client.injections).toEqual([]);
  });

  it("surfaces a server rejection inline", async () => {
    const client = new FakeClient();
    client.injectEvent = async () => {
      throw Object.assign(new Error("pending internal work"), { code: "not-quiescent" });
    };
    const vm = new SessionViewModel(client, "s1");
    vm.applySnapshot(snapshotAt("S1", ["ev3"]));
    expect(await vm.sendEvent("atm", "ev3")).toBe(false);
    expect(vm.lastError).toContain("pending internal work");
  });

  it("tracks connection state for the stale banner", () => {
    const vm = new SessionViewModel(new FakeClient(), "s1");
    expect(vm.connected).toBe(false);
    vm.markConnected();
    expect(vm.connected).toBe(true);
    vm.markDisconnected();
    expect(vm.connected).toBe(false);
  });
});

describe("renderers", () => {
  it("renders one button per offered event", () => {
    const vm = new SessionViewModel(new FakeClient(), "s1");
    vm.applySnapshot(snapshotAt("S2", ["ev7", "ev8"]));
    const html = eventButtonsHtml(vm.eventButtons(), false);
    expect(html.match(/<button/g)?.length).toBe(2);
    expect(html).toContain('data-event="ev7"');
    expect(html).toContain('data-event="ev8"');
  });

  it("highlights exactly the current state in the svg", () => {
    const graph = {
      id: "A1",
      states: [
        { id: "A1_S0", name: "S0", kind: "initial" as const },
        { id: "A1_End", name: "End", kind: "final" as const },
      ],
      transitions: [{ source: "A1_S0", destination: "A1_End", event: null, guard: null }],
      initial: "A1_S0",
      finals: ["A1_End"],
    };
    const svg = svgForAutomaton("A1", layoutAutomaton(graph), "A1_End");
    expect(svg).toContain('class="node kind-final current" data-state="A1_End"');
    expect(svg).not.toContain('kind-initial current');
  });
});
