/** Live game tracker. Every state change round-trips through the service:
 * a reveal or offer is POSTed, then the authoritative view is re-fetched,
 * so nothing on screen was computed client-side. The what-if overlay is a
 * shadow game with the same profile and an alternative bet, replayed
 * through the same endpoints. */

import { ApiError, type AdvisorClient } from "./api.js";
import { trajectoryChart } from "./chart.js";
import { clear, el, option } from "./dom.js";
import { betLabel, formatMoney, formatProbability } from "./format.js";
import type {
  GameView,
  OfferEvaluation,
  ProfileDict,
  TrajectoryPoint,
} from "./types.js";
import { isCounts } from "./types.js";

const RANGES = ["1-3", "4-6", "7-9", "10-12", "13"];
const CATEGORIES = ["S", "U", "G"] as const;

type Category = (typeof CATEGORIES)[number];

interface WhatIfState {
  id: string;
  range: string;
  number: number | null;
  trajectory: TrajectoryPoint[];
}

export interface TrackerOptions {
  onSessionChange?: (id: string | null) => void;
}

export interface TrackerHandle {
  element: HTMLElement;
  start(profile: ProfileDict, range: string, number: number | null): Promise<GameView>;
  resume(id: string): Promise<GameView>;
  reveal(question: Category | number, correct: boolean): Promise<void>;
  offer(amount: number): Promise<OfferEvaluation | null>;
  whatIf(range: string, number: number | null): Promise<void>;
  clearWhatIf(): void;
  view(): GameView | null;
  prefill(profile: ProfileDict, range: string, number: number | null): void;
}

function remainingByCategory(view: GameView): Record<Category, number> {
  const remaining: Record<Category, number> = { S: 0, U: 0, G: 0 };
  if (!isCounts(view.profile)) {
    return remaining;
  }
  remaining.S = view.profile.s;
  remaining.U = view.profile.u;
  remaining.G = view.profile.g;
  for (const record of view.reveals) {
    if (record.category === "S" || record.category === "U" || record.category === "G") {
      remaining[record.category] -= 1;
    }
  }
  return remaining;
}

export function liveTracker(
  client: AdvisorClient,
  options: TrackerOptions = {},
): TrackerHandle {
  let current: GameView | null = null;
  let shadow: WhatIfState | null = null;

  // --- new game form -------------------------------------------------
  const countsInputs = {
    s: el("input", { type: "number", min: "0", max: "13", value: "0", "data-field": "new-s" }),
    u: el("input", { type: "number", min: "0", max: "13", value: "0", "data-field": "new-u" }),
    g: el("input", { type: "number", min: "0", max: "13", value: "0", "data-field": "new-g" }),
  };
  const probsInput = el("input", {
    type: "text",
    placeholder: "13 comma-separated probabilities (optional)",
    "data-field": "new-p",
    size: "40",
  });
  const rangeSelect = el("select", { "data-field": "new-range" }, RANGES.map((r) => option(r)));
  const numberInput = el("input", {
    type: "number",
    min: "1",
    max: "13",
    value: "1",
    "data-field": "new-number",
  });
  rangeSelect.addEventListener("change", () => {
    numberInput.disabled = rangeSelect.value === "13";
  });
  const startButton = el("button", { type: "button" }, ["start game"]);

  // --- live controls -------------------------------------------------
  const statusLine = el("p", { class: "status", "data-field": "status" });
  const pointPanel = el("dl", { class: "point", hidden: true });
  const revealBar = el("p", { class: "reveals" });
  const revealButtons = new Map<string, HTMLButtonElement>();
  for (const category of CATEGORIES) {
    for (const correct of [true, false]) {
      const key = `${category}-${correct ? "correct" : "wrong"}`;
      const button = el("button", { type: "button", "data-reveal": key, disabled: true }, [
        `${category} ${correct ? "✓" : "✗"}`,
      ]);
      revealButtons.set(key, button);
      revealBar.append(button, " ");
    }
  }
  const probRevealInput = el("input", {
    type: "number",
    min: "0.5",
    max: "1",
    step: "0.01",
    value: "0.75",
    "data-field": "reveal-p",
    hidden: true,
  });
  const probRevealButtons = [true, false].map((correct) => {
    const button = el(
      "button",
      { type: "button", "data-reveal": `p-${correct ? "correct" : "wrong"}`, disabled: true, hidden: true },
      [`p ${correct ? "✓" : "✗"}`],
    );
    button.addEventListener("click", () => {
      void revealQuestion(Number(probRevealInput.value), correct);
    });
    return button;
  });
  revealBar.append(probRevealInput, " ", ...probRevealButtons);
  const timeline = el("p", { class: "timeline", "data-field": "timeline" });

  // --- offer dialog --------------------------------------------------
  const offerAmount = el("input", {
    type: "number",
    min: "0",
    step: "0.01",
    "data-field": "offer-amount",
  });
  const offerButton = el("button", { type: "button", disabled: true }, ["evaluate offer"]);
  const offerDialog = el("div", { class: "offer-dialog", role: "dialog", hidden: true });
  const offerClose = el("button", { type: "button" }, ["close"]);
  offerClose.addEventListener("click", () => {
    offerDialog.hidden = true;
  });

  // --- what-if -------------------------------------------------------
  const whatIfRange = el("select", { "data-field": "whatif-range" }, RANGES.map((r) => option(r)));
  const whatIfNumber = el("input", {
    type: "number",
    min: "1",
    max: "13",
    value: "10",
    "data-field": "whatif-number",
  });
  whatIfRange.addEventListener("change", () => {
    whatIfNumber.disabled = whatIfRange.value === "13";
  });
  const whatIfButton = el("button", { type: "button", disabled: true }, ["overlay what-if"]);
  const whatIfClear = el("button", { type: "button", disabled: true }, ["clear"]);
  const whatIfCaption = el("p", { class: "whatif-caption", "data-field": "whatif-caption", hidden: true });

  const chartBox = el("div", { class: "chart" });
  const errorBox = el("p", { class: "error", "data-field": "tracker-error", hidden: true });

  const element = el("section", { class: "tracker" }, [
    el("fieldset", { class: "new-game" }, [
      el("legend", {}, ["new game"]),
      el("label", {}, ["sure ", countsInputs.s]),
      el("label", {}, [" unsure ", countsInputs.u]),
      el("label", {}, [" guess ", countsInputs.g]),
      el("br", {}),
      el("label", {}, ["or probabilities ", probsInput]),
      el("br", {}),
      el("label", {}, ["range ", rangeSelect]),
      el("label", {}, [" number ", numberInput]),
      " ",
      startButton,
    ]),
    statusLine,
    pointPanel,
    revealBar,
    timeline,
    el("p", {}, [
      el("label", {}, ["offer ", offerAmount]),
      " ",
      offerButton,
    ]),
    offerDialog,
    el("p", {}, [
      el("label", {}, ["what-if range ", whatIfRange]),
      el("label", {}, [" number ", whatIfNumber]),
      " ",
      whatIfButton,
      " ",
      whatIfClear,
    ]),
    whatIfCaption,
    chartBox,
    errorBox,
  ]);

  function showError(message: string): void {
    errorBox.textContent = message;
    errorBox.hidden = false;
  }

  function lastPoint(view: GameView): TrajectoryPoint | null {
    return view.trajectory.length > 0
      ? (view.trajectory[view.trajectory.length - 1] as TrajectoryPoint)
      : null;
  }

  function render(): void {
    if (current === null) {
      return;
    }
    const view = current;
    statusLine.textContent =
      `bet ${betLabel(view.bet.range, view.bet.number)}` +
      ` | reveals ${view.reveal_count}/13` +
      ` | correct ${view.correct_count}` +
      (view.complete ? " | complete" : "");

    const point = lastPoint(view);
    clear(pointPanel);
    if (point !== null) {
      const field = (term: string, name: string, text: string): void => {
        const dd = el("dd", { "data-field": name });
        dd.textContent = text;
        pointPanel.append(el("dt", {}, [term]), dd);
      };
      field("expected winnings", "expected-winnings", formatMoney(point.expected_winnings));
      field("range probability", "range-probability", formatProbability(point.range_probability));
      field("number probability", "number-probability", formatProbability(point.number_probability));
      pointPanel.hidden = false;
    }

    const counts = isCounts(view.profile);
    const remaining = remainingByCategory(view);
    for (const category of CATEGORIES) {
      for (const correct of [true, false]) {
        const button = revealButtons.get(`${category}-${correct ? "correct" : "wrong"}`);
        if (button) {
          button.hidden = !counts;
          // a Sure question can only be revealed correct
          const impossible = category === "S" && !correct;
          button.disabled = view.complete || remaining[category] < 1 || impossible;
        }
      }
    }
    probRevealInput.hidden = counts;
    for (const button of probRevealButtons) {
      button.hidden = counts;
      button.disabled = view.complete;
    }

    timeline.textContent = view.reveals
      .map((record) => {
        const name = record.category ?? formatProbability(record.p ?? 0);
        return `${name}${record.correct ? "✓" : "✗"}`;
      })
      .join(" ");

    offerButton.disabled = view.complete;
    whatIfButton.disabled = false;
    whatIfClear.disabled = shadow === null;
    if (shadow !== null) {
      const startPoint = shadow.trajectory[0];
      const start =
        startPoint !== undefined ? ` | start ${formatMoney(startPoint.expected_winnings)}` : "";
      whatIfCaption.textContent = `what-if ${betLabel(shadow.range, shadow.number)}${start}`;
      whatIfCaption.hidden = false;
    } else {
      whatIfCaption.hidden = true;
    }

    clear(chartBox);
    chartBox.append(trajectoryChart(view.trajectory, view.offers, shadow?.trajectory ?? null));
  }

  async function refresh(): Promise<void> {
    if (current === null) {
      return;
    }
    current = await client.game(current.id);
    if (shadow !== null) {
      const shadowView = await client.game(shadow.id);
      shadow = { ...shadow, trajectory: shadowView.trajectory };
    }
    render();
  }

  async function start(
    profile: ProfileDict,
    range: string,
    number: number | null,
  ): Promise<GameView> {
    errorBox.hidden = true;
    shadow = null;
    current = await client.createGame(profile, range, number);
    options.onSessionChange?.(current.id);
    render();
    return current;
  }

  async function resume(id: string): Promise<GameView> {
    errorBox.hidden = true;
    shadow = null;
    current = await client.game(id);
    options.onSessionChange?.(current.id);
    render();
    return current;
  }

  async function revealQuestion(question: Category | number, correct: boolean): Promise<void> {
    if (current === null) {
      return;
    }
    errorBox.hidden = true;
    try {
      await client.reveal(current.id, question, correct);
      if (shadow !== null) {
        await client.reveal(shadow.id, question, correct);
      }
      await refresh();
    } catch (error) {
      showError(error instanceof ApiError ? error.message : String(error));
    }
  }

  async function submitOffer(amount: number): Promise<OfferEvaluation | null> {
    if (current === null) {
      return null;
    }
    errorBox.hidden = true;
    try {
      const evaluation = await client.offer(current.id, amount);
      clear(offerDialog);
      const list = el("dl", {});
      const field = (term: string, name: string, text: string): void => {
        const dd = el("dd", { "data-field": name });
        dd.textContent = text;
        list.append(el("dt", {}, [term]), dd);
      };
      field("advice", "offer-advice", evaluation.advice);
      field("offer", "offer-value", formatMoney(evaluation.offer));
      field("continuation", "offer-continuation", formatMoney(evaluation.continuation_value));
      field("margin", "offer-margin", formatMoney(evaluation.margin));
      offerDialog.append(list, offerClose);
      offerDialog.hidden = false;
      await refresh();
      return evaluation;
    } catch (error) {
      showError(error instanceof ApiError ? error.message : String(error));
      return null;
    }
  }

  async function showWhatIf(range: string, number: number | null): Promise<void> {
    if (current === null) {
      return;
    }
    errorBox.hidden = true;
    try {
      const created = await client.createGame(current.profile, range, number);
      for (const record of current.reveals) {
        const question = record.category ?? record.p;
        if (question !== undefined) {
          await client.reveal(created.id, question, record.correct);
        }
      }
      const shadowView = await client.game(created.id);
      shadow = { id: created.id, range, number, trajectory: shadowView.trajectory };
      render();
    } catch (error) {
      showError(error instanceof ApiError ? error.message : String(error));
    }
  }

  startButton.addEventListener("click", () => {
    const probsText = probsInput.value.trim();
    const profile: ProfileDict = probsText
      ? { p: probsText.split(",").map((piece) => Number(piece.trim())) }
      : {
          s: Number(countsInputs.s.value),
          u: Number(countsInputs.u.value),
          g: Number(countsInputs.g.value),
        };
    const number = rangeSelect.value === "13" ? null : Number(numberInput.value);
    start(profile, rangeSelect.value, number).catch((error: unknown) => {
      showError(error instanceof ApiError ? error.message : String(error));
    });
  });
  for (const category of CATEGORIES) {
    for (const correct of [true, false]) {
      revealButtons
        .get(`${category}-${correct ? "correct" : "wrong"}`)
        ?.addEventListener("click", () => {
          void revealQuestion(category, correct);
        });
    }
  }
  offerButton.addEventListener("click", () => {
    void submitOffer(Number(offerAmount.value));
  });
  whatIfButton.addEventListener("click", () => {
    const number = whatIfRange.value === "13" ? null : Number(whatIfNumber.value);
    void showWhatIf(whatIfRange.value, number);
  });
  whatIfClear.addEventListener("click", () => {
    shadow = null;
    render();
  });

  return {
    element,
    start,
    resume,
    reveal: revealQuestion,
    offer: submitOffer,
    whatIf: showWhatIf,
    clearWhatIf() {
      shadow = null;
      render();
    },
    view: () => current,
    prefill(profile, range, number) {
      if (isCounts(profile)) {
        countsInputs.s.value = String(profile.s);
        countsInputs.u.value = String(profile.u);
        countsInputs.g.value = String(profile.g);
        probsInput.value = "";
      } else {
        probsInput.value = profile.p.join(", ");
      }
      rangeSelect.value = range;
      numberInput.disabled = range === "13";
      if (number !== null) {
        numberInput.value = String(number);
      }
    },
  };
}
