// Circular-notation view model: one circle per basis state, the inner
// radius scaled by amplitude magnitude and a needle showing the phase.

import type { AmplitudeView } from "./protocol.js";

export interface CircleView {
  basisIndex: number;
  outerRadius: number;
  innerRadius: number;
  /** Radians; 0 points straight up, positive turns clockwise. */
  needleAngle: number;
}

export function circleViews(
  amplitudes: AmplitudeView[],
  outerRadius = 28,
): CircleView[] {
  return amplitudes.map((amp, basisIndex) => ({
    basisIndex,
    outerRadius,
    innerRadius: Math.min(amp.mag, 1) * outerRadius,
    needleAngle: amp.phase,
  }));
}

/** Needle tip for a circle centered at (cx, cy): up at 0, clockwise positive. */
export function needleTip(
  view: CircleView,
  cx: number,
  cy: number,
): { x: number; y: number } {
  return {
    x: cx + Math.sin(view.needleAngle) * view.outerRadius,
    y: cy - Math.cos(view.needleAngle) * view.outerRadius,
  };
}

export function statusLine(msg: { time_fs: number; step: number }): string {
  return `Simulation time ${msg.time_fs} step ${msg.step}`;
}

/** Split into display rows; long state vectors wrap instead of scrolling. */
export function rowsOf<T>(items: T[], width = 64): T[][] {
  const rows: T[][] = [];
  for (let start = 0; start < items.length; start += width) {
    rows.push(items.slice(start, start + width));
  }
  return rows;
}
