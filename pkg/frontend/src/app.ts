// Browser wiring: session picker, live panels, event stream subscription.

import { layoutAutomaton } from "./layout.js";
import { SessionViewModel } from "./model.js";
import { ApiClient, ModelGraph, Snapshot, readSnapshotStream } from "./protocol.js";
import {
  eventButtonsHtml,
  statesHtml,
  svgForAutomaton,
  traceHtml,
  variablesHtml,
} from "./render.js";

const client = new ApiClient("");

function el(id: string): HTMLElement {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found;
}

let vm: SessionViewModel | null = null;
let graph: ModelGraph | null = null;
let streamAbort: AbortController | null = null;

async function showPicker(): Promise<void> {
  const { models } = await client.listModels();
  const picker = el("picker");
  if (models.length === 0) {
    picker.innerHTML = '<p class="empty">no models served; point the service at *.pim.xml files</p>';
    return;
  }
  picker.innerHTML = models
    .map((m) => {
      if (m.error) {
        return `<div class="model broken"><strong>${m.name}</strong> cannot load: ${m.error}</div>`;
      }
      const stubOptions = ['<option value="">no stubs</option>']
        .concat((m.stubs ?? []).map((s) => `<option value="${s}">${s}</option>`))
        .join("");
      return (
        `<div class="model"><strong>${m.name}</strong>` +
        `<span class="autos">${(m.automata ?? []).join(", ")}</span>` +
        `<select data-model="${m.name}">${stubOptions}</select>` +
        `<button data-create="${m.name}">create session</button></div>`
      );
    })
    .join("");
  picker.querySelectorAll<HTMLButtonElement>("button[data-create]").forEach((button) => {
    button.addEventListener("click", () => {
      const model = button.dataset.create!;
      const select = picker.querySelector<HTMLSelectElement>(`select[data-model="${model}"]`);
      void createSession(model, select?.value || undefined);
    });
  });
}

async function createSession(model: string, stubs?: string): Promise<void> {
  const created = await client.instantiate(model, stubs);
  vm = new SessionViewModel(client, created.session);
  vm.applySnapshot(created.snapshot);
  await vm.refreshTrace();
  graph = await client.modelGraph(created.session);
  el("picker").classList.add("hidden");
  el("session").classList.remove("hidden");
  el("session-id").textContent = `${model} / ${created.session}`;
  subscribe(created.session);
  redraw();
}

function subscribe(session: string): void {
  streamAbort?.abort();
  streamAbort = new AbortController();
  void readSnapshotStream(
    client.streamUrl(session),
    (snapshot: Snapshot) => {
      vm?.applySnapshot(snapshot);
      vm?.markConnected();
      void vm?.refreshTrace().then(redraw);
      redraw();
    },
    () => {
      vm?.markDisconnected();
      redraw();
    },
    streamAbort.signal,
  );
}

function redraw(): void {
  if (!vm || !vm.snapshot) return;
  el("stale").classList.toggle("hidden", vm.connected);
  el("states").innerHTML = statesHtml(vm.instances());
  el("variables").innerHTML = variablesHtml(vm.instances());
  el("events").innerHTML = eventButtonsHtml(vm.eventButtons(), vm.busy);
  const log = el("trace");
  log.innerHTML = traceHtml(vm.traceLog);
  log.scrollTop = log.scrollHeight;
  el("error").textContent = vm.lastError;

  if (graph) {
    const stateOf = new Map<string, string | null>();
    for (const inst of vm.instances()) {
      stateOf.set(inst.automaton, inst.state);
    }
    el("graphs").innerHTML = graph.automata
      .filter((a) => stateOf.has(a.id))
      .map((a) => {
        const layout = layoutAutomaton(a);
        return (
          `<figure><figcaption>${a.id}</figcaption>` +
          svgForAutomaton(a.id, layout, stateOf.get(a.id) ?? null) +
          "</figure>"
        );
      })
      .join("");
  }

  el("events")
    .querySelectorAll<HTMLButtonElement>("button.event")
    .forEach((button) => {
      button.addEventListener("click", () => {
        const { instance, event } = button.dataset;
        if (!instance || !event) return;
        void vm?.sendEvent(instance, event).then(redraw);
        redraw();
      });
    });
}

el("retry").addEventListener("click", () => {
  if (vm) subscribe(vm.sessionId);
});

void showPicker();
