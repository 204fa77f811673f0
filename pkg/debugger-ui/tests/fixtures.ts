import type { StateMessage } from "../src/protocol.js";

// The entangled-pair display after the controlled-NOT of the first cycle:
// states 0 and 3 at magnitude sqrt(1/2), phases all zero.
export const BELL_STEP3: StateMessage = {
  type: "state",
  time_fs: 5000000,
  step: 3,
  steps_total: 6,
  cycle: 0,
  amplitudes: [
    { mag: 0.7071067811865476, phase: 0 },
    { mag: 0, phase: 0 },
    { mag: 0, phase: 0 },
    { mag: 0.7071067811865476, phase: 0 },
  ],
  outputs: { a_out: "0", b_out: "0" },
};
