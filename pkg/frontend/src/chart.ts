/** SVG expected-winnings trajectory with offer markers and an optional
 * what-if overlay. Geometry is computed by a pure function so tests can
 * derive the expected coordinates straight from the service payload. */

import { formatMoney } from "./format.js";
import type { OfferRecord, TrajectoryPoint } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 640;
const HEIGHT = 260;
const MARGIN = { top: 14, right: 14, bottom: 26, left: 84 };
const QUESTIONS = 13;

export interface OfferMarker {
  x: number;
  label: string;
}

export interface ChartGeometry {
  width: number;
  height: number;
  path: string;
  overlayPath: string | null;
  markers: OfferMarker[];
  yTicks: { y: number; label: string }[];
}

function maxWinnings(series: TrajectoryPoint[][]): number {
  let top = 0;
  for (const points of series) {
    for (const point of points) {
      top = Math.max(top, point.expected_winnings);
    }
  }
  return top > 0 ? top : 1;
}

export function chartGeometry(
  points: TrajectoryPoint[],
  offers: OfferRecord[],
  overlay: TrajectoryPoint[] | null = null,
): ChartGeometry {
  const innerWidth = WIDTH - MARGIN.left - MARGIN.right;
  const innerHeight = HEIGHT - MARGIN.top - MARGIN.bottom;
  const yMax = maxWinnings(overlay ? [points, overlay] : [points]);
  const x = (revealIndex: number): number =>
    MARGIN.left + (revealIndex / QUESTIONS) * innerWidth;
  const y = (winnings: number): number =>
    MARGIN.top + innerHeight - (winnings / yMax) * innerHeight;
  const path = (series: TrajectoryPoint[]): string =>
    series
      .map((p) => `${x(p.reveal_index).toFixed(1)},${y(p.expected_winnings).toFixed(1)}`)
      .join(" ");
  // an offer lands between two reveals, so its marker sits at index + 0.5
  const markers = offers.map((offer) => ({
    x: Number(x(offer.after_reveal + 0.5).toFixed(1)),
    label: formatMoney(offer.amount),
  }));
  const yTicks = [0, 0.5, 1].map((fraction) => ({
    y: Number(y(fraction * yMax).toFixed(1)),
    label: formatMoney(fraction * yMax),
  }));
  return {
    width: WIDTH,
    height: HEIGHT,
    path: path(points),
    overlayPath: overlay ? path(overlay) : null,
    markers,
    yTicks,
  };
}

function svgElement<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [name, value] of Object.entries(attrs)) {
    node.setAttribute(name, value);
  }
  return node;
}

export function trajectoryChart(
  points: TrajectoryPoint[],
  offers: OfferRecord[],
  overlay: TrajectoryPoint[] | null = null,
): SVGSVGElement {
  const geometry = chartGeometry(points, offers, overlay);
  const svg = svgElement("svg", {
    viewBox: `0 0 ${geometry.width} ${geometry.height}`,
    width: String(geometry.width),
    height: String(geometry.height),
    class: "trajectory-chart",
  });
  const plotTop = MARGIN.top;
  const plotBottom = HEIGHT - MARGIN.bottom;

  for (const tick of geometry.yTicks) {
    svg.append(
      svgElement("line", {
        class: "gridline",
        x1: String(MARGIN.left),
        x2: String(WIDTH - MARGIN.right),
        y1: String(tick.y),
        y2: String(tick.y),
      }),
    );
    const label = svgElement("text", {
      class: "tick",
      x: String(MARGIN.left - 6),
      y: String(tick.y + 4),
      "text-anchor": "end",
    });
    label.textContent = tick.label;
    svg.append(label);
  }

  for (const marker of geometry.markers) {
    svg.append(
      svgElement("line", {
        class: "offer-marker",
        x1: String(marker.x),
        x2: String(marker.x),
        y1: String(plotTop),
        y2: String(plotBottom),
      }),
    );
    const label = svgElement("text", {
      class: "offer-label",
      x: String(marker.x + 4),
      y: String(plotTop + 12),
    });
    label.textContent = marker.label;
    svg.append(label);
  }

  if (geometry.overlayPath !== null) {
    svg.append(
      svgElement("polyline", {
        class: "overlay",
        points: geometry.overlayPath,
        fill: "none",
      }),
    );
  }
  svg.append(
    svgElement("polyline", {
      class: "trajectory",
      points: geometry.path,
      fill: "none",
    }),
  );
  return svg;
}
