/** Pure view geometry: frames in, pixel primitives out.
 *
 * Nothing here touches the DOM, so every view is testable headless.
 * The plan view keeps equal scale on both axes; a straight run must
 * render as a straight track, not get its lateral noise stretched to
 * fill the pane.
 */

import { TelemetryFrame } from "./telemetry.js";
import { DisplaySample, TrackPoint } from "./store.js";

export interface Viewport {
  width: number;
  height: number;
}

export type Px = [number, number];

export interface PlanView {
  points: Px[];
  /** heading arrow from the current position */
  arrow: { from: Px; to: Px };
  metersPerPixel: number;
}

export interface SideView {
  waterlineY: number;
  fish: { center: Px; noseDx: number; noseDy: number };
  surfaced: boolean;
  /** water sensor line reads HIGH when the hull is out of the water */
  sensorHigh: boolean;
}

export interface Gauge {
  label: string;
  text: string;
  frac: number;
}

export interface StripChart {
  points: Px[];
  yRange: number;
}

const PLAN_MARGIN = 20;
const ARROW_PX = 24;

function clamp01(v: number): number {
  return Math.min(1, Math.max(0, v));
}

/** Top-down track with a yaw arrow; world x right, world y up. */
export function planView(
  track: TrackPoint[],
  sample: DisplaySample,
  vp: Viewport,
): PlanView {
  let minX = sample.x, maxX = sample.x, minY = sample.y, maxY = sample.y;
  for (const p of track) {
    minX = Math.min(minX, p.x);
    maxX = Math.max(maxX, p.x);
    minY = Math.min(minY, p.y);
    maxY = Math.max(maxY, p.y);
  }
  const spanX = Math.max(maxX - minX, 1e-6);
  const spanY = Math.max(maxY - minY, 1e-6);
  const scale = Math.min(
    (vp.width - 2 * PLAN_MARGIN) / spanX,
    (vp.height - 2 * PLAN_MARGIN) / spanY,
  );
  const cx = (minX + maxX) / 2;
  const cy = (minY + maxY) / 2;
  const toPx = (x: number, y: number): Px => [
    vp.width / 2 + (x - cx) * scale,
    vp.height / 2 - (y - cy) * scale,
  ];
  const points = track.map((p) => toPx(p.x, p.y));
  const from = toPx(sample.x, sample.y);
  const yaw = (sample.yaw_deg * Math.PI) / 180;
  const to: Px = [
    from[0] + ARROW_PX * Math.cos(yaw),
    from[1] - ARROW_PX * Math.sin(yaw),
  ];
  return { points, arrow: { from, to }, metersPerPixel: 1 / scale };
}

/** Depth profile: waterline fixed, hull glyph pitched nose-up positive. */
export function sideView(
  sample: DisplaySample,
  vp: Viewport,
  maxDepthM = 3,
): SideView {
  const waterlineY = vp.height * 0.15;
  const usable = vp.height - waterlineY - 10;
  const depthFrac = clamp01(sample.depth / maxDepthM);
  const center: Px = [vp.width / 2, waterlineY + depthFrac * usable];
  const pitch = (sample.pitch_deg * Math.PI) / 180;
  const body = Math.min(vp.width, vp.height) * 0.18;
  return {
    waterlineY,
    fish: {
      center,
      noseDx: body * Math.cos(pitch),
      noseDy: -body * Math.sin(pitch),
    },
    surfaced: sample.depth <= 0,
    sensorHigh: sample.frame.water_low === 0,
  };
}

export function gauges(frame: TelemetryFrame): Gauge[] {
  return [
    {
      label: "battery",
      text: `${(frame.soc * 100).toFixed(1)} %`,
      frac: clamp01(frame.soc),
    },
    {
      label: "pack voltage",
      text: `${frame.vbat.toFixed(2)} V`,
      frac: clamp01((frame.vbat - 9.0) / 3.6),
    },
    {
      label: "supply current",
      text: `${frame.current_a.toFixed(2)} A`,
      frac: clamp01(frame.current_a / 5),
    },
  ];
}

/** Tail curvature history, symmetric range so zero sits mid-pane. */
export function stripChart(
  history: number[],
  vp: Viewport,
  capacity: number,
): StripChart {
  let yRange = 1e-6;
  for (const k of history) yRange = Math.max(yRange, Math.abs(k));
  const dx = vp.width / Math.max(capacity - 1, 1);
  const x0 = vp.width - dx * (history.length - 1);
  const points = history.map((k, i): Px => [
    x0 + dx * i,
    vp.height / 2 - (k / yRange) * (vp.height / 2 - 4),
  ]);
  return { points, yRange };
}

export function emptyStateMessage(connection: string): string {
  return connection === "connected"
    ? "connected, waiting for telemetry"
    : "no telemetry: service unreachable";
}
