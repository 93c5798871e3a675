/** Wire protocol shared with the telemetry service.
 *
 * The service sends one JSON object per frame; every field the console
 * displays originates here. The console never invents simulation state.
 */

export const MODES = [
  "Straight",
  "LeftTurn",
  "RightTurn",
  "ElevatorUp",
  "ElevatorDown",
] as const;

export type Mode = (typeof MODES)[number];

export interface TelemetryFrame {
  t_ms: number;
  mode: Mode;
  x: number;
  y: number;
  depth: number;
  yaw_deg: number;
  pitch_deg: number;
  surge: number;
  tail_kappa: number;
  p_left: number;
  p_right: number;
  stepper_steps: number;
  mass_x_mm: number;
  fin_l_deg: number;
  fin_r_deg: number;
  vbat: number;
  current_a: number;
  adc_current: number;
  soc: number;
  water_low: number;
  flex_ra: number;
  flex_rb: number;
}

export interface ErrorFrame {
  type: "error";
  msg: string;
}

export type ServerFrame =
  | ({ type: "telemetry" } & TelemetryFrame)
  | ErrorFrame;

export type CommandMessage =
  | { type: "key"; key: 1 | 2 | 3 | 4 | 5 }
  | { type: "pause" }
  | { type: "resume" }
  | { type: "reset" };

/** Keypad labels as the operator sees them. */
export const KEY_MODES: Record<number, Mode> = {
  1: "Straight",
  2: "LeftTurn",
  3: "RightTurn",
  4: "ElevatorUp",
  5: "ElevatorDown",
};

const NUMERIC_FIELDS: (keyof TelemetryFrame)[] = [
  "t_ms", "x", "y", "depth", "yaw_deg", "pitch_deg", "surge",
  "tail_kappa", "p_left", "p_right", "stepper_steps", "mass_x_mm",
  "fin_l_deg", "fin_r_deg", "vbat", "current_a", "adc_current", "soc",
  "water_low", "flex_ra", "flex_rb",
];

/** Parse one server message; null if it is not a well-formed frame. */
export function parseServerFrame(text: string): ServerFrame | null {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch {
    return null;
  }
  if (typeof raw !== "object" || raw === null) return null;
  const obj = raw as Record<string, unknown>;
  if (obj["type"] === "error") {
    return typeof obj["msg"] === "string"
      ? { type: "error", msg: obj["msg"] }
      : null;
  }
  if (obj["type"] !== "telemetry") return null;
  if (!MODES.includes(obj["mode"] as Mode)) return null;
  for (const field of NUMERIC_FIELDS) {
    if (typeof obj[field] !== "number") return null;
  }
  return obj as unknown as ServerFrame;
}
