/** Display formatting. Every value shown in the UI passes through here, so
 * tests can compare rendered text against service payloads exactly. */

import type { TiePair } from "./types.js";

/** Dollars with thousands separators and cents: -45156.25 -> "-$45,156.25". */
export function formatMoney(amount: number): string {
  const sign = amount < 0 ? "-" : "";
  const fixed = Math.abs(amount).toFixed(2);
  const [whole, cents] = fixed.split(".") as [string, string];
  const grouped = whole.replace(/\B(?=(\d{3})+(?!\d))/g, ",");
  return `${sign}$${grouped}.${cents}`;
}

/** Four decimal places, matching the service CLI's probability display. */
export function formatProbability(p: number): string {
  return p.toFixed(4);
}

/** "10-12 / 10"; the 13 bet has no separate number and renders "13 / —". */
export function betLabel(range: string, number: number | null): string {
  return number === null ? `${range} / —` : `${range} / ${number}`;
}

export function formatTies(ties: TiePair[]): string {
  if (ties.length === 0) {
    return "none";
  }
  return ties.map((tie) => betLabel(tie.range, tie.number)).join(", ");
}
