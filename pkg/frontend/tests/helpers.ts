import { Mode, TelemetryFrame } from "../src/telemetry.js";
import { SocketLike } from "../src/session.js";

export function makeFrame(
  tMs: number,
  overrides: Partial<TelemetryFrame> = {},
): TelemetryFrame {
  return {
    t_ms: tMs,
    mode: "Straight" as Mode,
    x: 0,
    y: 0,
    depth: 1,
    yaw_deg: 0,
    pitch_deg: 0,
    surge: 0,
    tail_kappa: 0,
    p_left: 0,
    p_right: 0,
    stepper_steps: 0,
    mass_x_mm: 0,
    fin_l_deg: 0,
    fin_r_deg: 0,
    vbat: 12.6,
    current_a: 0.3,
    adc_current: 524,
    soc: 1,
    water_low: 1,
    flex_ra: 10000,
    flex_rb: 10000,
    ...overrides,
  };
}

export function frameMessage(
  tMs: number,
  overrides: Partial<TelemetryFrame> = {},
): string {
  return JSON.stringify({ type: "telemetry", ...makeFrame(tMs, overrides) });
}

/** Scripted WebSocket stand-in; tests drive open/message/close by hand. */
export class FakeSocket implements SocketLike {
  onopen: ((ev?: unknown) => void) | null = null;
  onmessage: ((ev: { data: unknown }) => void) | null = null;
  onclose: ((ev?: unknown) => void) | null = null;
  onerror: ((ev?: unknown) => void) | null = null;
  sent: string[] = [];
  closedByClient = false;

  constructor(public url: string) {}

  send(data: string): void {
    this.sent.push(data);
  }

  close(): void {
    this.closedByClient = true;
    this.onclose?.();
  }

  emitOpen(): void {
    this.onopen?.();
  }

  emitMessage(data: string): void {
    this.onmessage?.({ data });
  }

  emitClose(): void {
    this.onclose?.();
  }
}

export class FakeSocketFactory {
  sockets: FakeSocket[] = [];

  factory = (url: string): FakeSocket => {
    const ws = new FakeSocket(url);
    this.sockets.push(ws);
    return ws;
  };

  get last(): FakeSocket {
    if (this.sockets.length === 0) throw new Error("no socket created yet");
    return this.sockets[this.sockets.length - 1];
  }
}
