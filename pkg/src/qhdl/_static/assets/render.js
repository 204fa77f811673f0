// DOM rendering: a pure function of the last state message.
import { circleViews, needleTip, rowsOf, statusLine } from "./circles.js";
const SVG_NS = "http://www.w3.org/2000/svg";
const OUTER_RADIUS = 28;
const CELL = 2 * OUTER_RADIUS + 8;
export function findPage(doc) {
    return {
        circles: doc.getElementById("circles"),
        status: doc.getElementById("status"),
        banner: doc.getElementById("banner"),
        stepButton: doc.getElementById("step"),
    };
}
function renderRow(doc, row) {
    const svg = doc.createElementNS(SVG_NS, "svg");
    svg.setAttribute("width", String(row.length * CELL));
    svg.setAttribute("height", String(CELL + 16));
    for (let i = 0; i < row.length; i += 1) {
        const view = row[i];
        const cx = i * CELL + CELL / 2;
        const cy = OUTER_RADIUS + 4;
        const outer = doc.createElementNS(SVG_NS, "circle");
        outer.setAttribute("cx", String(cx));
        outer.setAttribute("cy", String(cy));
        outer.setAttribute("r", String(view.outerRadius));
        outer.setAttribute("fill", "none");
        outer.setAttribute("stroke", "#555");
        svg.appendChild(outer);
        const inner = doc.createElementNS(SVG_NS, "circle");
        inner.setAttribute("class", "inner");
        inner.setAttribute("cx", String(cx));
        inner.setAttribute("cy", String(cy));
        inner.setAttribute("r", String(view.innerRadius));
        inner.setAttribute("fill", "#4a90d9");
        inner.setAttribute("fill-opacity", "0.6");
        inner.setAttribute("stroke", "#1c5fa8");
        svg.appendChild(inner);
        const tip = needleTip(view, cx, cy);
        const needle = doc.createElementNS(SVG_NS, "line");
        needle.setAttribute("class", "needle");
        needle.setAttribute("x1", String(cx));
        needle.setAttribute("y1", String(cy));
        needle.setAttribute("x2", String(tip.x));
        needle.setAttribute("y2", String(tip.y));
        needle.setAttribute("stroke", "#222");
        svg.appendChild(needle);
        const label = doc.createElementNS(SVG_NS, "text");
        label.setAttribute("class", "basis-label");
        label.setAttribute("x", String(cx));
        label.setAttribute("y", String(cy + OUTER_RADIUS + 14));
        label.setAttribute("text-anchor", "middle");
        label.textContent = String(view.basisIndex);
        svg.appendChild(label);
    }
    return svg;
}
/** Rebuild the circle display and status line from one state message. */
export function renderState(doc, page, msg) {
    const views = circleViews(msg.amplitudes, OUTER_RADIUS);
    page.circles.replaceChildren(...rowsOf(views, 64).map((row) => renderRow(doc, row)));
    page.status.textContent = statusLine(msg);
}
export function showBanner(page, text) {
    page.banner.textContent = text;
}
export function clearBanner(page) {
    page.banner.textContent = "";
}
