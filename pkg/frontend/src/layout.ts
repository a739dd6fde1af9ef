// Deterministic layered layout for one automaton's state graph.
// Layers are breadth-first depths from the initial state; unreachable
// states land behind the deepest layer. Ties order by state id, so the
// same graph always yields the same picture.

import { AutomatonGraph } from "./protocol.js";

export interface NodePosition {
  id: string;
  name: string;
  kind: string;
  x: number;
  y: number;
}

export interface EdgePath {
  source: string;
  destination: string;
  label: string;
  selfLoop: boolean;
}

export interface GraphLayout {
  width: number;
  height: number;
  nodes: NodePosition[];
  edges: EdgePath[];
}

const X_GAP = 170;
const Y_GAP = 92;
const MARGIN = 70;

export function layoutAutomaton(graph: AutomatonGraph): GraphLayout {
  const ids = graph.states.map((s) => s.id);
  const succ = new Map<string, string[]>();
  for (const t of graph.transitions) {
    if (t.source !== t.destination) {
      const out = succ.get(t.source) ?? [];
      out.push(t.destination);
      succ.set(t.source, out);
    }
  }

  const layer = new Map<string, number>();
  if (graph.initial && ids.includes(graph.initial)) {
    layer.set(graph.initial, 0);
    const queue = [graph.initial];
    while (queue.length > 0) {
      const node = queue.shift()!;
      const next = (succ.get(node) ?? []).slice().sort();
      for (const n of next) {
        if (!layer.has(n)) {
          layer.set(n, layer.get(node)! + 1);
          queue.push(n);
        }
      }
    }
  }
  let deepest = 0;
  for (const depth of layer.values()) {
    deepest = Math.max(deepest, depth);
  }
  for (const id of [...ids].sort()) {
    if (!layer.has(id)) {
      layer.set(id, deepest + 1);
    }
  }

  const byLayer = new Map<number, string[]>();
  for (const id of ids) {
    const depth = layer.get(id)!;
    const row = byLayer.get(depth) ?? [];
    row.push(id);
    byLayer.set(depth, row);
  }

  const nodes: NodePosition[] = [];
  const position = new Map<string, { x: number; y: number }>();
  let maxRow = 1;
  for (const [depth, row] of [...byLayer.entries()].sort((a, b) => a[0] - b[0])) {
    row.sort();
    maxRow = Math.max(maxRow, row.length);
    row.forEach((id, index) => {
      const state = graph.states.find((s) => s.id === id)!;
      const x = MARGIN + depth * X_GAP;
      const y = MARGIN + index * Y_GAP;
      position.set(id, { x, y });
      nodes.push({ id, name: state.name, kind: state.kind, x, y });
    });
  }

  const edges: EdgePath[] = graph.transitions.map((t) => ({
    source: t.source,
    destination: t.destination,
    label: [t.event ?? "", t.guard ? `[${t.guard}]` : ""].filter(Boolean).join(" "),
    selfLoop: t.source === t.destination,
  }));

  const layers = Math.max(...[...byLayer.keys()]) + 1;
  return {
    width: MARGIN * 2 + (layers - 1) * X_GAP + 60,
    height: MARGIN * 2 + (maxRow - 1) * Y_GAP,
    nodes,
    edges,
  };
}
