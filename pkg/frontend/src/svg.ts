/**
 * Deterministic SVG builders: transition-probability bar charts labeled by
 * binary state index, and (t_braid x V) heatmaps with hatch overlays on
 * cells above a threshold.
 */

import { BarDatum, SweepGrid } from "./data.js";

const FONT = "font-family=\"Helvetica, Arial, sans-serif\"";

function esc(v: number): string {
  return Number.isInteger(v) ? v.toString() : v.toPrecision(6).replace(/0+$/, "").replace(/\.$/, "");
}

/** Perceptually even-ish dark-blue -> yellow map on [0, 1]. */
export function colorMap(value: number): string {
  if (!Number.isFinite(value)) {
    return "#cccccc";
  }
  const t = Math.min(1, Math.max(0, value));
  const r = Math.round(253 * Math.pow(t, 1.1) + 34 * (1 - t));
  const g = Math.round(231 * Math.pow(t, 1.4) + 42 * (1 - t));
  const b = Math.round(37 * t + 92 * (1 - t));
  return `rgb(${r},${g},${b})`;
}

export function barChart(data: BarDatum[], opts: { title?: string } = {}): string {
  if (data.length === 0) {
    throw new Error("bar chart needs at least one bar");
  }
  const width = 640;
  const height = 420;
  const mLeft = 64;
  const mBottom = 72;
  const mTop = 48;
  const plotW = width - mLeft - 32;
  const plotH = height - mTop - mBottom;
  const n = data.length;
  const slot = plotW / n;
  const barW = Math.min(slot * 0.72, 80);
  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`);
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  if (opts.title) {
    parts.push(`<text x="${width / 2}" y="24" text-anchor="middle" font-size="16" ${FONT}>${opts.title}</text>`);
  }
  // y axis with quarter gridlines
  for (let q = 0; q <= 4; q++) {
    const y = mTop + plotH - (q / 4) * plotH;
    parts.push(`<line x1="${mLeft}" y1="${y}" x2="${mLeft + plotW}" y2="${y}" stroke="#dddddd" stroke-width="1"/>`);
    parts.push(`<text x="${mLeft - 8}" y="${y + 4}" text-anchor="end" font-size="12" ${FONT}>${(q / 4).toFixed(2)}</text>`);
  }
  data.forEach((d, i) => {
    const h = Math.min(1, Math.max(0, d.probability)) * plotH;
    const x = mLeft + i * slot + (slot - barW) / 2;
    const y = mTop + plotH - h;
    parts.push(`<rect class="bar" data-label="${d.label}" x="${esc(x)}" y="${esc(y)}" width="${esc(barW)}" height="${esc(h)}" fill="#3d6fb4"/>`);
    parts.push(`<text x="${esc(x + barW / 2)}" y="${mTop + plotH + 18}" text-anchor="middle" font-size="12" ${FONT}>|${d.binary}&#x27E9;</text>`);
    parts.push(`<text x="${esc(x + barW / 2)}" y="${mTop + plotH + 34}" text-anchor="middle" font-size="10" fill="#666666" ${FONT}>${d.label}</text>`);
  });
  parts.push(`<line x1="${mLeft}" y1="${mTop}" x2="${mLeft}" y2="${mTop + plotH}" stroke="black"/>`);
  parts.push(`<line x1="${mLeft}" y1="${mTop + plotH}" x2="${mLeft + plotW}" y2="${mTop + plotH}" stroke="black"/>`);
  parts.push(`<text x="18" y="${mTop + plotH / 2}" font-size="13" ${FONT} transform="rotate(-90 18 ${mTop + plotH / 2})" text-anchor="middle">probability</text>`);
  parts.push(`<text x="${mLeft + plotW / 2}" y="${height - 16}" font-size="13" ${FONT} text-anchor="middle">state index</text>`);
  parts.push("</svg>");
  return parts.join("\n");
}

export function heatmap(grid: SweepGrid, opts: { threshold?: number; title?: string; valueLabel?: string } = {}): string {
  const threshold = opts.threshold ?? 0.99;
  const nT = grid.tBraids.length;
  const nV = grid.vs.length;
  if (nT === 0 || nV === 0) {
    throw new Error("heatmap needs a non-empty grid");
  }
  const cell = 56;
  const mLeft = 84;
  const mTop = 48;
  const mBottom = 64;
  const width = mLeft + nV * cell + 110;
  const height = mTop + nT * cell + mBottom;
  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`);
  parts.push("<defs>");
  parts.push('<pattern id="hatch" width="7" height="7" patternTransform="rotate(45)" patternUnits="userSpaceOnUse">' +
    '<line x1="0" y1="0" x2="0" y2="7" stroke="black" stroke-width="1.6"/></pattern>');
  parts.push("</defs>");
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  if (opts.title) {
    parts.push(`<text x="${mLeft + (nV * cell) / 2}" y="24" text-anchor="middle" font-size="16" ${FONT}>${opts.title}</text>`);
  }
  for (let i = 0; i < nT; i++) {
    for (let j = 0; j < nV; j++) {
      // row 0 (smallest t_braid) at the bottom, like the published panels
      const x = mLeft + j * cell;
      const y = mTop + (nT - 1 - i) * cell;
      const value = grid.cells[i][j];
      parts.push(`<rect class="cell" data-tb="${esc(grid.tBraids[i])}" data-v="${esc(grid.vs[j])}" ` +
        `x="${x}" y="${y}" width="${cell}" height="${cell}" fill="${colorMap(value)}" stroke="#ffffff" stroke-width="1"/>`);
      if (Number.isFinite(value) && value > threshold) {
        parts.push(`<rect class="hatched" data-tb="${esc(grid.tBraids[i])}" data-v="${esc(grid.vs[j])}" ` +
          `x="${x}" y="${y}" width="${cell}" height="${cell}" fill="url(#hatch)" stroke="none"/>`);
      }
    }
  }
  grid.vs.forEach((v, j) => {
    parts.push(`<text x="${mLeft + j * cell + cell / 2}" y="${mTop + nT * cell + 18}" text-anchor="middle" font-size="12" ${FONT}>${esc(v)}</text>`);
  });
  grid.tBraids.forEach((tb, i) => {
    parts.push(`<text x="${mLeft - 8}" y="${mTop + (nT - 1 - i) * cell + cell / 2 + 4}" text-anchor="end" font-size="12" ${FONT}>${esc(tb)}</text>`);
  });
  parts.push(`<text x="${mLeft + (nV * cell) / 2}" y="${height - 14}" font-size="13" ${FONT} text-anchor="middle">disorder strength V</text>`);
  parts.push(`<text x="20" y="${mTop + (nT * cell) / 2}" font-size="13" ${FONT} transform="rotate(-90 20 ${mTop + (nT * cell) / 2})" text-anchor="middle">braid time</text>`);
  // color bar
  const cbX = mLeft + nV * cell + 28;
  for (let s = 0; s < 40; s++) {
    const vv = 1 - s / 39;
    parts.push(`<rect x="${cbX}" y="${mTop + (s * nT * cell) / 40}" width="16" height="${(nT * cell) / 40 + 0.5}" fill="${colorMap(vv)}"/>`);
  }
  parts.push(`<text x="${cbX + 22}" y="${mTop + 10}" font-size="11" ${FONT}>1.0</text>`);
  parts.push(`<text x="${cbX + 22}" y="${mTop + nT * cell}" font-size="11" ${FONT}>0.0</text>`);
  if (opts.valueLabel) {
    parts.push(`<text x="${cbX + 8}" y="${mTop - 10}" font-size="11" ${FONT}>${opts.valueLabel}</text>`);
  }
  parts.push("</svg>");
  return parts.join("\n");
}
