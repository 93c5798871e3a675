import { describe, expect, it } from "vitest";

import {
  ConsoleStore,
  INTERP_WINDOW_MS,
  KAPPA_CAP,
  TRACK_CAP,
} from "../src/store.js";
import { makeFrame } from "./helpers.js";

describe("frame ordering", () => {
  it("applies frames in t_ms order", () => {
    const store = new ConsoleStore();
    expect(store.applyFrame(makeFrame(50), 1000)).toBe(true);
    expect(store.applyFrame(makeFrame(100), 1050)).toBe(true);
    expect(store.latest?.t_ms).toBe(100);
    expect(store.droppedFrames).toBe(0);
  });

  it("drops stale and duplicate frames without touching state", () => {
    const store = new ConsoleStore();
    store.applyFrame(makeFrame(100, { depth: 2 }), 1000);
    expect(store.applyFrame(makeFrame(50, { depth: 9 }), 1010)).toBe(false);
    expect(store.applyFrame(makeFrame(100, { depth: 9 }), 1020)).toBe(false);
    expect(store.latest?.depth).toBe(2);
    expect(store.droppedFrames).toBe(2);
    expect(store.track.length).toBe(1);
  });

  it("mode badge follows the newest applied frame (last writer wins)", () => {
    const store = new ConsoleStore();
    store.applyFrame(makeFrame(50, { mode: "Straight" }), 0);
    store.applyFrame(makeFrame(100, { mode: "LeftTurn" }), 50);
    store.applyFrame(makeFrame(150, { mode: "RightTurn" }), 100);
    expect(store.modeBadge).toBe("RightTurn");
  });

  it("caps track and curvature history", () => {
    const store = new ConsoleStore();
    for (let i = 0; i < TRACK_CAP + 100; i++) {
      store.applyFrame(makeFrame(i + 1, { x: i }), i);
    }
    expect(store.track.length).toBe(TRACK_CAP);
    expect(store.kappaHistory.length).toBe(KAPPA_CAP);
    expect(store.track[store.track.length - 1].x).toBe(TRACK_CAP + 99);
  });
});

describe("display sampling", () => {
  it("returns null before any frame", () => {
    expect(new ConsoleStore().sample(0)).toBeNull();
  });

  it("is exactly the only frame when no older frame exists", () => {
    const store = new ConsoleStore();
    const f = makeFrame(50, { depth: 1.25, pitch_deg: 3.5 });
    store.applyFrame(f, 1000);
    const s = store.sample(1234);
    expect(s?.depth).toBe(f.depth);
    expect(s?.pitch_deg).toBe(f.pitch_deg);
    expect(s?.interpolated).toBe(false);
  });

  it("blends linearly between the two newest frames", () => {
    const store = new ConsoleStore();
    store.applyFrame(makeFrame(50, { depth: 1.0, x: 0 }), 1000);
    store.applyFrame(makeFrame(100, { depth: 2.0, x: 1 }), 1050);
    const s = store.sample(1075); // halfway through the 50 ms gap
    expect(s?.interpolated).toBe(true);
    expect(s?.depth).toBeCloseTo(1.5, 12);
    expect(s?.x).toBeCloseTo(0.5, 12);
  });

  it("never extrapolates: at and past the gap it IS the newest frame", () => {
    const store = new ConsoleStore();
    const newest = makeFrame(100, { depth: 2.0, pitch_deg: -7.25 });
    store.applyFrame(makeFrame(50, { depth: 1.0 }), 1000);
    store.applyFrame(newest, 1050);
    for (const now of [1100, 1500, 99999]) {
      const s = store.sample(now);
      expect(s?.interpolated).toBe(false);
      // exact equality, not approximate: displayed values are frame values
      expect(Object.is(s?.depth, newest.depth)).toBe(true);
      expect(Object.is(s?.pitch_deg, newest.pitch_deg)).toBe(true);
    }
  });

  it("clamps the blend below the oldest endpoint", () => {
    const store = new ConsoleStore();
    store.applyFrame(makeFrame(50, { depth: 1.0 }), 1000);
    store.applyFrame(makeFrame(100, { depth: 2.0 }), 1050);
    const s = store.sample(900); // before the newest frame arrived
    expect(s?.depth).toBe(1.0);
  });

  it("snaps to the newest frame when the arrival gap exceeds the window", () => {
    const store = new ConsoleStore();
    store.applyFrame(makeFrame(50, { depth: 1.0 }), 1000);
    store.applyFrame(
      makeFrame(500, { depth: 2.0 }),
      1000 + INTERP_WINDOW_MS + 50,
    );
    const s = store.sample(1000 + INTERP_WINDOW_MS + 51);
    expect(s?.interpolated).toBe(false);
    expect(s?.depth).toBe(2.0);
  });

  it("discrete fields always come from the newest frame", () => {
    const store = new ConsoleStore();
    store.applyFrame(makeFrame(50, { water_low: 1, adc_current: 520 }), 1000);
    store.applyFrame(makeFrame(100, { water_low: 0, adc_current: 530 }), 1050);
    const s = store.sample(1060); // mid-blend
    expect(s?.interpolated).toBe(true);
    expect(s?.frame.water_low).toBe(0);
    expect(s?.frame.adc_current).toBe(530);
  });
});

describe("toasts and reset", () => {
  it("takeToasts drains the queue once", () => {
    const store = new ConsoleStore();
    store.addToast("a");
    store.addToast("b");
    expect(store.takeToasts()).toEqual(["a", "b"]);
    expect(store.takeToasts()).toEqual([]);
  });

  it("a reconnect starts a fresh stream, so t_ms may restart", () => {
    const store = new ConsoleStore();
    store.handleSessionState("connected");
    store.applyFrame(makeFrame(2000), 0);
    store.handleSessionState("disconnected");
    store.handleSessionState("connected");
    // a restarted server streams from the beginning again
    expect(store.applyFrame(makeFrame(50), 10)).toBe(true);
    expect(store.latest?.t_ms).toBe(50);
  });

  it("clearFrames forgets telemetry but keeps the connection state", () => {
    const store = new ConsoleStore();
    store.setConnection("connected");
    store.applyFrame(makeFrame(100), 0);
    store.clearFrames();
    expect(store.sample(10)).toBeNull();
    expect(store.modeBadge).toBeNull();
    expect(store.connection).toBe("connected");
    // a fresh stream restarting at small t_ms must now apply
    expect(store.applyFrame(makeFrame(10), 20)).toBe(true);
  });
});
