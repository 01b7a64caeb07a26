/** Thin SVG/DOM binding for the explorer; all logic lives in explorer.ts. */

import type { RenderModel } from "./explorer.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const COLLECTION_COLORS: Record<string, string> = {
  EU_TREATY: "#8e44ad",
  EU_LEGISLATION: "#2980b9",
  EU_CASELAW: "#27ae60",
  HU_AB: "#d35400",
  HU_OBH: "#c0392b",
};

export interface ViewCallbacks {
  onNodeClick(nodeId: string): void;
}

export function renderGraph(
  svg: SVGSVGElement,
  model: RenderModel,
  callbacks: ViewCallbacks,
): void {
  svg.replaceChildren();
  const frame = document.createElementNS(SVG_NS, "g");
  frame.setAttribute("transform", "translate(600, 400) scale(0.9)");
  svg.appendChild(frame);

  for (const edge of model.payload.edges) {
    const a = model.positions.get(edge.from);
    const b = model.positions.get(edge.to);
    if (a === undefined || b === undefined) {
      continue;
    }
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(a.x));
    line.setAttribute("y1", String(a.y));
    line.setAttribute("x2", String(b.x));
    line.setAttribute("y2", String(b.y));
    line.setAttribute("class", `edge edge-${edge.lead_type.toLowerCase()}`);
    line.setAttribute("stroke", edge.directed ? "#555" : "#aaa");
    if (edge.directed) {
      line.setAttribute("marker-end", "url(#arrow)");
    }
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = edge.lead_type;
    line.appendChild(title);
    frame.appendChild(line);
  }

  for (const node of model.payload.nodes) {
    const p = model.positions.get(node.id);
    if (p === undefined) {
      continue;
    }
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("transform", `translate(${p.x}, ${p.y})`);
    group.setAttribute("class", "node");
    group.addEventListener("click", () => callbacks.onNodeClick(node.id));
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("r", node.id === model.payload.center ? "16" : "10");
    circle.setAttribute(
      "fill",
      node.id === model.payload.center
        ? "#f1c40f"
        : COLLECTION_COLORS[node.collection] ?? "#7f8c8d",
    );
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${node.label} (${node.collection})`;
    circle.appendChild(title);
    group.appendChild(circle);
    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("dy", "-14");
    text.setAttribute("text-anchor", "middle");
    text.textContent =
      node.label.length > 28 ? `${node.label.slice(0, 27)}…` : node.label;
    group.appendChild(text);
    frame.appendChild(group);
  }
}

export function renderDocument(
  panel: HTMLElement,
  markup: string,
  onReferenceClick: (celex: string) => void,
): void {
  panel.innerHTML = markup;
  panel.querySelectorAll("a[href^='/documents/']").forEach((anchor) => {
    anchor.addEventListener("click", (event) => {
      event.preventDefault();
      const href = anchor.getAttribute("href") ?? "";
      onReferenceClick(decodeURIComponent(href.replace("/documents/", "")));
    });
  });
  // `missing` spans stay red and inert: no handler, no navigation
}
