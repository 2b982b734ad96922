/** Strategy table browser over GET /tables/{model}. */

import { ApiError, type AdvisorClient } from "./api.js";
import { clear, el, option } from "./dom.js";
import { betLabel, formatMoney, formatProbability, formatTies } from "./format.js";
import type { StrategyRow } from "./types.js";

export interface TablesHandle {
  element: HTMLElement;
  load(model: "two" | "three", utility: "winnings" | "winprob"): Promise<StrategyRow[] | null>;
}

export function strategyTables(client: AdvisorClient): TablesHandle {
  const modelSelect = el("select", { "data-field": "table-model" }, [
    option("two", "two categories (sure/guess)"),
    option("three", "three categories (sure/unsure/guess)"),
  ]);
  const utilitySelect = el("select", { "data-field": "table-utility" }, [
    option("winnings", "expected winnings"),
    option("winprob", "win probability"),
  ]);
  const loadButton = el("button", { type: "button" }, ["load"]);
  const errorBox = el("p", { class: "error", "data-field": "tables-error", hidden: true });
  const body = el("tbody", {});
  const table = el("table", { class: "strategy", hidden: true }, [
    el("thead", {}, [
      el("tr", {}, ["s/u/g", "bet", "win probability", "expected winnings", "ties"].map(
        (heading) => el("th", {}, [heading]),
      )),
    ]),
    body,
  ]);

  const element = el("section", { class: "tables" }, [
    el("p", {}, [
      el("label", {}, ["model ", modelSelect]),
      " ",
      el("label", {}, ["utility ", utilitySelect]),
      " ",
      loadButton,
    ]),
    errorBox,
    table,
  ]);

  function renderRows(rows: StrategyRow[]): void {
    clear(body);
    for (const row of rows) {
      const cell = (name: string, text: string): HTMLTableCellElement => {
        const td = el("td", { "data-field": name });
        td.textContent = text;
        return td;
      };
      body.append(
        el("tr", {}, [
          cell("split", `${row.s}/${row.u}/${row.g}`),
          cell("bet", betLabel(row.range, row.number)),
          cell("win-probability", formatProbability(row.win_probability)),
          cell("expected-winnings", formatMoney(row.expected_winnings)),
          cell("ties", formatTies(row.ties)),
        ]),
      );
    }
    table.hidden = false;
  }

  async function load(
    model: "two" | "three",
    utility: "winnings" | "winprob",
  ): Promise<StrategyRow[] | null> {
    errorBox.hidden = true;
    try {
      const rows = await client.table(model, utility);
      renderRows(rows);
      return rows;
    } catch (error) {
      errorBox.textContent = error instanceof ApiError ? error.message : String(error);
      errorBox.hidden = false;
      return null;
    }
  }

  loadButton.addEventListener("click", () => {
    void load(
      modelSelect.value as "two" | "three",
      utilitySelect.value as "winnings" | "winprob",
    );
  });

  return { element, load };
}
