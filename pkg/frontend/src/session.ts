/** WebSocket session with automatic reconnect.
 *
 * The browser gets the global WebSocket; tests inject a factory. The
 * session owns the retry loop: exponential backoff that resets on a
 * successful open, stopped only by close().
 */

import { CommandMessage, TelemetryFrame, parseServerFrame } from "./telemetry.js";
import { ConnectionState } from "./store.js";

/** The subset of the WebSocket surface the session touches. */
export interface SocketLike {
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  onerror: ((ev?: unknown) => void) | null;
  send(data: string): void;
  close(): void;
}

export type SocketFactory = (url: string) => SocketLike;

export interface SessionOptions {
  onFrame: (frame: TelemetryFrame) => void;
  onServerError?: (msg: string) => void;
  onState?: (state: ConnectionState) => void;
  socketFactory?: SocketFactory;
  /** first retry delay; doubles per failure up to maxBackoffMs */
  backoffMs?: number;
  maxBackoffMs?: number;
  /** scheduling hooks, overridable for tests */
  setTimeoutFn?: (fn: () => void, ms: number) => unknown;
  clearTimeoutFn?: (handle: unknown) => void;
}

function defaultFactory(url: string): SocketLike {
  const ctor = (globalThis as { WebSocket?: new (url: string) => SocketLike })
    .WebSocket;
  if (!ctor) {
    throw new Error("no WebSocket implementation; pass socketFactory");
  }
  return new ctor(url);
}

export class Session {
  state: ConnectionState = "connecting";

  private readonly url: string;
  private readonly opts: Required<
    Pick<SessionOptions, "backoffMs" | "maxBackoffMs">
  > &
    SessionOptions;
  private socket: SocketLike | null = null;
  private retryDelay: number;
  private retryHandle: unknown = null;
  private closed = false;

  constructor(url: string, options: SessionOptions) {
    this.url = url;
    this.opts = { backoffMs: 250, maxBackoffMs: 4000, ...options };
    this.retryDelay = this.opts.backoffMs;
    this.open();
  }

  private setState(state: ConnectionState): void {
    if (this.state === state) return;
    this.state = state;
    this.opts.onState?.(state);
  }

  private open(): void {
    const factory = this.opts.socketFactory ?? defaultFactory;
    this.setState("connecting");
    let ws: SocketLike;
    try {
      ws = factory(this.url);
    } catch {
      this.scheduleRetry();
      return;
    }
    this.socket = ws;
    ws.onopen = () => {
      this.retryDelay = this.opts.backoffMs;
      this.setState("connected");
    };
    ws.onmessage = (ev) => {
      const frame = parseServerFrame(String(ev.data));
      if (!frame) return;
      if (frame.type === "error") {
        this.opts.onServerError?.(frame.msg);
      } else {
        this.opts.onFrame(frame);
      }
    };
    ws.onerror = () => {
      /* the close event carries the reconnect logic */
    };
    ws.onclose = () => {
      this.socket = null;
      if (this.closed) return;
      this.setState("disconnected");
      this.scheduleRetry();
    };
  }

  private scheduleRetry(): void {
    if (this.closed || this.retryHandle !== null) return;
    const setT = this.opts.setTimeoutFn ?? setTimeout;
    const delay = this.retryDelay;
    this.retryDelay = Math.min(this.retryDelay * 2, this.opts.maxBackoffMs);
    this.retryHandle = setT(() => {
      this.retryHandle = null;
      if (!this.closed) this.open();
    }, delay);
  }

  /** Send a command; false when not connected (caller shows a toast). */
  send(command: CommandMessage): boolean {
    if (this.state !== "connected" || !this.socket) return false;
    this.socket.send(JSON.stringify(command));
    return true;
  }

  close(): void {
    this.closed = true;
    if (this.retryHandle !== null) {
      (this.opts.clearTimeoutFn ?? clearTimeout)(
        this.retryHandle as Parameters<typeof clearTimeout>[0],
      );
      this.retryHandle = null;
    }
    this.socket?.close();
    this.socket = null;
    this.setState("disconnected");
  }
}

export function connect(url: string, options: SessionOptions): Session {
  return new Session(url, options);
}
