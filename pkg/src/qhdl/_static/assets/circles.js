// Circular-notation view model: one circle per basis state, the inner
// radius scaled by amplitude magnitude and a needle showing the phase.
export function circleViews(amplitudes, outerRadius = 28) {
    return amplitudes.map((amp, basisIndex) => ({
        basisIndex,
        outerRadius,
        innerRadius: Math.min(amp.mag, 1) * outerRadius,
        needleAngle: amp.phase,
    }));
}
/** Needle tip for a circle centered at (cx, cy): up at 0, clockwise positive. */
export function needleTip(view, cx, cy) {
    return {
        x: cx + Math.sin(view.needleAngle) * view.outerRadius,
        y: cy - Math.cos(view.needleAngle) * view.outerRadius,
    };
}
export function statusLine(msg) {
    return `Simulation time ${msg.time_fs} step ${msg.step}`;
}
/** Split into display rows; long state vectors wrap instead of scrolling. */
export function rowsOf(items, width = 64) {
    const rows = [];
    for (let start = 0; start < items.length; start += width) {
        rows.push(items.slice(start, start + width));
    }
    return rows;
}
