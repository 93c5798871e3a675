/** Browser entry point: wire the session, store, keypad, and panes.
 *
 * One requestAnimationFrame loop samples the store and redraws; socket
 * and keyboard events only mutate the store, so everything serializes
 * through it.
 */

import { connect } from "./session.js";
import { ConsoleStore } from "./store.js";
import { handleKeypress } from "./keys.js";
import {
  emptyStateMessage,
  gauges,
  planView,
  sideView,
  stripChart,
} from "./views.js";
import { KEY_MODES } from "./telemetry.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className: string,
  parent: HTMLElement,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  node.className = className;
  parent.appendChild(node);
  return node;
}

function svgPane(parent: HTMLElement, w: number, h: number): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("width", String(w));
  svg.setAttribute("height", String(h));
  parent.appendChild(svg);
  return svg;
}

function polyline(svg: SVGSVGElement, stroke: string): SVGPolylineElement {
  const p = document.createElementNS(SVG_NS, "polyline");
  p.setAttribute("fill", "none");
  p.setAttribute("stroke", stroke);
  p.setAttribute("stroke-width", "1.5");
  svg.appendChild(p);
  return p;
}

function line(svg: SVGSVGElement, stroke: string, width = 2): SVGLineElement {
  const l = document.createElementNS(SVG_NS, "line");
  l.setAttribute("stroke", stroke);
  l.setAttribute("stroke-width", String(width));
  svg.appendChild(l);
  return l;
}

export function startConsole(root: HTMLElement, url: string): () => void {
  const store = new ConsoleStore();

  const header = el("div", "header", root);
  const connBadge = el("span", "badge conn", header);
  const modeBadge = el("span", "badge mode", header);
  const waterBadge = el("span", "badge water", header);
  const toastBox = el("div", "toasts", root);

  const panes = el("div", "panes", root);
  const planBox = el("div", "pane", panes);
  el("h2", "", planBox).textContent = "plan view";
  const planSvg = svgPane(planBox, 360, 260);
  const planTrack = polyline(planSvg, "#2a6");
  const planArrow = line(planSvg, "#d33");

  const sideBox = el("div", "pane", panes);
  el("h2", "", sideBox).textContent = "side profile";
  const sideSvg = svgPane(sideBox, 360, 260);
  const waterline = line(sideSvg, "#06c", 1);
  const hull = line(sideSvg, "#333", 4);

  const stripBox = el("div", "pane", panes);
  el("h2", "", stripBox).textContent = "tail curvature";
  const stripSvg = svgPane(stripBox, 360, 120);
  const stripLine = polyline(stripSvg, "#86c");

  const gaugeBox = el("div", "gauges", root);
  const empty = el("div", "empty", root);

  const session = connect(url, {
    onFrame: (frame) => store.applyFrame(frame, performance.now()),
    onServerError: (msg) => store.addToast(`service: ${msg}`),
    onState: (state) => store.handleSessionState(state),
  });

  const onKey = (ev: KeyboardEvent) => handleKeypress(ev.key, session, store);
  window.addEventListener("keydown", onKey);

  let raf = 0;
  const draw = () => {
    raf = requestAnimationFrame(draw);
    connBadge.textContent = store.connection;
    connBadge.dataset["state"] = store.connection;
    for (const toast of store.takeToasts()) {
      const t = el("div", "toast", toastBox);
      t.textContent = toast;
      setTimeout(() => t.remove(), 3000);
    }
    const sample = store.sample(performance.now());
    if (!sample) {
      empty.textContent = emptyStateMessage(store.connection);
      empty.style.display = "block";
      return;
    }
    empty.style.display = "none";
    modeBadge.textContent = store.modeBadge ?? "";

    const plan = planView(store.track, sample, { width: 360, height: 260 });
    planTrack.setAttribute(
      "points",
      plan.points.map(([x, y]) => `${x},${y}`).join(" "),
    );
    planArrow.setAttribute("x1", String(plan.arrow.from[0]));
    planArrow.setAttribute("y1", String(plan.arrow.from[1]));
    planArrow.setAttribute("x2", String(plan.arrow.to[0]));
    planArrow.setAttribute("y2", String(plan.arrow.to[1]));

    const side = sideView(sample, { width: 360, height: 260 });
    waterline.setAttribute("x1", "0");
    waterline.setAttribute("x2", "360");
    waterline.setAttribute("y1", String(side.waterlineY));
    waterline.setAttribute("y2", String(side.waterlineY));
    const [cx, cy] = side.fish.center;
    hull.setAttribute("x1", String(cx - side.fish.noseDx));
    hull.setAttribute("y1", String(cy - side.fish.noseDy));
    hull.setAttribute("x2", String(cx + side.fish.noseDx));
    hull.setAttribute("y2", String(cy + side.fish.noseDy));
    waterBadge.textContent = side.sensorHigh
      ? "surface: water sensor HIGH"
      : `depth ${sample.depth.toFixed(2)} m`;
    waterBadge.dataset["surfaced"] = String(side.surfaced);

    const strip = stripChart(store.kappaHistory, { width: 360, height: 120 }, 600);
    stripLine.setAttribute(
      "points",
      strip.points.map(([x, y]) => `${x},${y}`).join(" "),
    );

    gaugeBox.textContent = "";
    for (const g of gauges(sample.frame)) {
      const cell = el("div", "gauge", gaugeBox);
      el("span", "label", cell).textContent = g.label;
      el("span", "value", cell).textContent = g.text;
      const bar = el("div", "bar", cell);
      const fill = el("div", "fill", bar);
      fill.style.width = `${(g.frac * 100).toFixed(1)}%`;
    }
  };
  raf = requestAnimationFrame(draw);

  return () => {
    cancelAnimationFrame(raf);
    window.removeEventListener("keydown", onKey);
    session.close();
  };
}

declare global {
  interface Window {
    softfishConsole?: { stop: () => void };
  }
}

if (typeof document !== "undefined" && document.getElementById("console-root")) {
  const params = new URLSearchParams(location.search);
  const url = params.get("url") ?? "ws://127.0.0.1:8765";
  const root = document.getElementById("console-root") as HTMLElement;
  const legend = document.createElement("p");
  legend.className = "legend";
  legend.textContent =
    "keys: " +
    Object.entries(KEY_MODES)
      .map(([k, m]) => `${k}=${m}`)
      .join("  ");
  root.appendChild(legend);
  window.softfishConsole = { stop: startConsole(root, url) };
}
