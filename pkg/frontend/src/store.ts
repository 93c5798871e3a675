/** Single state store: socket events and key events both land here.
 *
 * Frames apply strictly in t_ms order; anything older than the latest
 * applied frame is dropped. Displayed values come from frames alone,
 * except for a linear blend between the two newest frames used for
 * smooth animation. The blend never spans more than INTERP_WINDOW_MS
 * and never extrapolates past the newest frame: once the blend
 * parameter saturates, the sample IS the newest frame, field for
 * field.
 */

import { Mode, TelemetryFrame } from "./telemetry.js";

export const INTERP_WINDOW_MS = 100;
export const TRACK_CAP = 4000;
export const KAPPA_CAP = 600;

export type ConnectionState = "connecting" | "connected" | "disconnected";

interface StampedFrame {
  frame: TelemetryFrame;
  receivedAt: number;
}

/** What the renderer draws for one animation tick. */
export interface DisplaySample {
  /* blended for animation */
  x: number;
  y: number;
  depth: number;
  yaw_deg: number;
  pitch_deg: number;
  tail_kappa: number;
  /* always the newest frame verbatim */
  frame: TelemetryFrame;
  interpolated: boolean;
}

export interface TrackPoint {
  x: number;
  y: number;
}

function blend(a: number, b: number, alpha: number): number {
  return a + (b - a) * alpha;
}

export class ConsoleStore {
  connection: ConnectionState = "disconnected";
  modeBadge: Mode | null = null;
  droppedFrames = 0;
  track: TrackPoint[] = [];
  kappaHistory: number[] = [];

  private newest: StampedFrame | null = null;
  private older: StampedFrame | null = null;
  private toasts: string[] = [];

  setConnection(state: ConnectionState): void {
    this.connection = state;
  }

  /** Session state hook: a fresh link is a fresh stream. The server
   * may have restarted, so t_ms can go backward across reconnects;
   * clearing here keeps the in-order rule sound within one stream. */
  handleSessionState(state: ConnectionState): void {
    if (state === "connected" && this.connection !== "connected") {
      this.clearFrames();
    }
    this.connection = state;
  }

  get latest(): TelemetryFrame | null {
    return this.newest ? this.newest.frame : null;
  }

  /** Apply a frame; false means it arrived out of order and was dropped. */
  applyFrame(frame: TelemetryFrame, nowMs: number): boolean {
    if (this.newest && frame.t_ms <= this.newest.frame.t_ms) {
      this.droppedFrames += 1;
      return false;
    }
    this.older = this.newest;
    this.newest = { frame, receivedAt: nowMs };
    this.modeBadge = frame.mode;
    this.track.push({ x: frame.x, y: frame.y });
    if (this.track.length > TRACK_CAP) this.track.shift();
    this.kappaHistory.push(frame.tail_kappa);
    if (this.kappaHistory.length > KAPPA_CAP) this.kappaHistory.shift();
    return true;
  }

  /** Forget frames but keep connection state (server reset). */
  clearFrames(): void {
    this.newest = null;
    this.older = null;
    this.modeBadge = null;
    this.track = [];
    this.kappaHistory = [];
  }

  addToast(message: string): void {
    this.toasts.push(message);
  }

  takeToasts(): string[] {
    const out = this.toasts;
    this.toasts = [];
    return out;
  }

  /** Displayed values at wall time nowMs; null until a frame exists. */
  sample(nowMs: number): DisplaySample | null {
    if (!this.newest) return null;
    const nf = this.newest.frame;
    const exact: DisplaySample = {
      x: nf.x,
      y: nf.y,
      depth: nf.depth,
      yaw_deg: nf.yaw_deg,
      pitch_deg: nf.pitch_deg,
      tail_kappa: nf.tail_kappa,
      frame: nf,
      interpolated: false,
    };
    if (!this.older) return exact;
    const dt = this.newest.receivedAt - this.older.receivedAt;
    if (dt <= 0 || dt > INTERP_WINDOW_MS) return exact;
    const alpha = (nowMs - this.newest.receivedAt) / dt;
    if (alpha >= 1) return exact;
    const of = this.older.frame;
    const a = Math.max(alpha, 0);
    return {
      x: blend(of.x, nf.x, a),
      y: blend(of.y, nf.y, a),
      depth: blend(of.depth, nf.depth, a),
      yaw_deg: blend(of.yaw_deg, nf.yaw_deg, a),
      pitch_deg: blend(of.pitch_deg, nf.pitch_deg, a),
      tail_kappa: blend(of.tail_kappa, nf.tail_kappa, a),
      frame: nf,
      interpolated: true,
    };
  }
}
