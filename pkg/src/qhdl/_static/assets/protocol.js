// Wire types exchanged with the debug server over the /ws endpoint.
function isAmplitude(value) {
    return (typeof value === "object" && value !== null &&
        typeof value.mag === "number" &&
        typeof value.phase === "number");
}
/** Parse one server frame; null marks a malformed message (kept non-fatal). */
export function parseServerMessage(text) {
    let raw;
    try {
        raw = JSON.parse(text);
    }
    catch {
        return null;
    }
    if (typeof raw !== "object" || raw === null)
        return null;
    const msg = raw;
    if (msg.type === "ended")
        return { type: "ended" };
    if (msg.type === "error" && typeof msg.message === "string") {
        return { type: "error", message: msg.message };
    }
    if (msg.type === "state" &&
        typeof msg.time_fs === "number" &&
        typeof msg.step === "number" &&
        typeof msg.steps_total === "number" &&
        typeof msg.cycle === "number" &&
        Array.isArray(msg.amplitudes) &&
        msg.amplitudes.every(isAmplitude) &&
        typeof msg.outputs === "object" && msg.outputs !== null) {
        return {
            type: "state",
            time_fs: msg.time_fs,
            step: msg.step,
            steps_total: msg.steps_total,
            cycle: msg.cycle,
            amplitudes: msg.amplitudes,
            outputs: msg.outputs,
        };
    }
    return null;
}
