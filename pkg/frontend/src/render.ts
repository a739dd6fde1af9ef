// Pure string renderers: SVG for the state graph, HTML fragments for the
// panels. Keeping them DOM-free makes the walkthrough test runnable
// without a browser; app.ts owns the actual DOM writes.

import { GraphLayout } from "./layout.js";
import { EventButton } from "./model.js";
import { InstanceView } from "./protocol.js";

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const NODE_RX = 34;
const NODE_RY = 22;

export function svgForAutomaton(
  automatonId: string,
  layout: GraphLayout,
  currentState: string | null,
): string {
  const byId = new Map(layout.nodes.map((n) => [n.id, n]));
  const parts: string[] = [];
  parts.push(
    `<svg class="graph" data-automaton="${esc(automatonId)}" ` +
      `viewBox="0 0 ${layout.width} ${layout.height}" ` +
      `width="${layout.width}" height="${layout.height}" xmlns="http://www.w3.org/2000/svg">`,
  );
  parts.push(
    `<defs><marker id="arrow-${esc(automatonId)}" viewBox="0 0 10 10" refX="9" refY="5" ` +
      `markerWidth="7" markerHeight="7" orient="auto-start-reverse">` +
      `<path d="M 0 0 L 10 5 L 0 10 z" fill="#5b6570"/></marker></defs>`,
  );

  for (const edge of layout.edges) {
    const a = byId.get(edge.source);
    const b = byId.get(edge.destination);
    if (!a || !b) continue;
    const marker = `marker-end="url(#arrow-${esc(automatonId)})"`;
    if (edge.selfLoop) {
      const x = a.x;
      const y = a.y - NODE_RY;
      parts.push(
        `<path class="edge" d="M ${x - 12} ${y} C ${x - 28} ${y - 34}, ` +
          `${x + 28} ${y - 34}, ${x + 12} ${y}" fill="none" ${marker}/>`,
      );
      if (edge.label) {
        parts.push(`<text class="edge-label" x="${x}" y="${y - 38}">${esc(edge.label)}</text>`);
      }
      continue;
    }
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const len = Math.hypot(dx, dy) || 1;
    const sx = a.x + (dx / len) * NODE_RX;
    const sy = a.y + (dy / len) * NODE_RY;
    const tx = b.x - (dx / len) * NODE_RX;
    const ty = b.y - (dy / len) * NODE_RY;
    parts.push(`<line class="edge" x1="${sx}" y1="${sy}" x2="${tx}" y2="${ty}" ${marker}/>`);
    if (edge.label) {
      const mx = (sx + tx) / 2;
      const my = (sy + ty) / 2 - 6;
      parts.push(`<text class="edge-label" x="${mx}" y="${my}">${esc(edge.label)}</text>`);
    }
  }

  for (const node of layout.nodes) {
    const classes = ["node", `kind-${node.kind}`];
    if (currentState === node.id) classes.push("current");
    parts.push(
      `<g class="${classes.join(" ")}" data-state="${esc(node.id)}">` +
        `<ellipse cx="${node.x}" cy="${node.y}" rx="${NODE_RX}" ry="${NODE_RY}"/>` +
        `<text x="${node.x}" y="${node.y + 4}">${esc(node.name)}</text></g>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

export function variablesHtml(instances: InstanceView[]): string {
  const rows: string[] = [];
  for (const inst of instances) {
    for (const v of inst.variables) {
      rows.push(
        `<tr><td>${esc(inst.id)}</td><td>${esc(v.name)}</td>` +
          `<td class="type">${esc(v.type)}</td><td class="value">${esc(v.value)}</td></tr>`,
      );
    }
  }
  if (rows.length === 0) {
    return '<p class="empty">no variables</p>';
  }
  return (
    "<table><thead><tr><th>instance</th><th>variable</th><th>type</th><th>value</th>" +
    `</tr></thead><tbody>${rows.join("")}</tbody></table>`
  );
}

export function eventButtonsHtml(buttons: EventButton[], busy: boolean): string {
  if (buttons.length === 0) {
    return '<p class="empty">no external events possible</p>';
  }
  return buttons
    .map(
      (b) =>
        `<button class="event" data-instance="${esc(b.instance)}" data-event="${esc(b.event)}"` +
        `${busy ? " disabled" : ""}>` +
        `<span class="ev">${esc(b.event)}</span><span class="target">@ ${esc(b.instance)}</span>` +
        (b.description ? `<span class="desc">${esc(b.description)}</span>` : "") +
        "</button>",
    )
    .join("");
}

export function statesHtml(instances: InstanceView[]): string {
  return instances
    .map((inst) => {
      const classes = ["instance-state"];
      if (inst.final) classes.push("final");
      if (!inst.active) classes.push("inactive");
      return (
        `<li class="${classes.join(" ")}"><span class="inst">${esc(inst.id)}</span>` +
        `<span class="state">${esc(inst.state_name)}</span>` +
        (inst.active ? "" : '<span class="note">not started</span>') +
        "</li>"
      );
    })
    .join("");
}

export function traceHtml(lines: string[]): string {
  return lines
    .map((line) => {
      const [step, instance, kind, detail] = line.split("\t");
      return (
        `<div class="trace-line kind-${esc(kind ?? "")}"><span class="step">${esc(step ?? "")}</span>` +
        `<span class="inst">${esc(instance ?? "")}</span>` +
        `<span class="kind">${esc(kind ?? "")}</span>` +
        `<span class="detail">${esc(detail ?? "")}</span></div>`
      );
    })
    .join("");
}
