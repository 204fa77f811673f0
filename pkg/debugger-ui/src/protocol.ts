// Wire types exchanged with the debug server over the /ws endpoint.

export interface AmplitudeView {
  mag: number;
  phase: number;
}

export interface StateMessage {
  type: "state";
  time_fs: number;
  step: number;
  steps_total: number;
  cycle: number;
  amplitudes: AmplitudeView[];
  outputs: Record<string, string>;
}

export interface EndedMessage {
  type: "ended";
}

export interface ErrorMessage {
  type: "error";
  message: string;
}

export type ServerMessage = StateMessage | EndedMessage | ErrorMessage;

export type CommandMessage = { type: "step" } | { type: "status" };

function isAmplitude(value: unknown): value is AmplitudeView {
  return (
    typeof value === "object" && value !== null &&
    typeof (value as AmplitudeView).mag === "number" &&
    typeof (value as AmplitudeView).phase === "number"
  );
}

/** Parse one server frame; null marks a malformed message (kept non-fatal). */
export function parseServerMessage(text: string): ServerMessage | null {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch {
    return null;
  }
  if (typeof raw !== "object" || raw === null) return null;
  const msg = raw as Record<string, unknown>;
  if (msg.type === "ended") return { type: "ended" };
  if (msg.type === "error" && typeof msg.message === "string") {
    return { type: "error", message: msg.message };
  }
  if (
    msg.type === "state" &&
    typeof msg.time_fs === "number" &&
    typeof msg.step === "number" &&
    typeof msg.steps_total === "number" &&
    typeof msg.cycle === "number" &&
    Array.isArray(msg.amplitudes) &&
    msg.amplitudes.every(isAmplitude) &&
    typeof msg.outputs === "object" && msg.outputs !== null
  ) {
    return {
      type: "state",
      time_fs: msg.time_fs,
      step: msg.step,
      steps_total: msg.steps_total,
      cycle: msg.cycle,
      amplitudes: msg.amplitudes as AmplitudeView[],
      outputs: msg.outputs as Record<string, string>,
    };
  }
  return null;
}
