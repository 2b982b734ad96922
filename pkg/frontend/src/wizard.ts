/** Profile wizard: thirteen per-question assessments, a utility choice,
 * one round-trip to POST /advise, and a panel echoing the response. */

import { ApiError, type AdvisorClient } from "./api.js";
import { clear, el, option } from "./dom.js";
import { betLabel, formatMoney, formatProbability, formatTies } from "./format.js";
import type { AdviseRequest, ProfileDict, Recommendation } from "./types.js";

export type SlotValue = "S" | "U" | "G" | number | null;

export type Utility = "winnings" | "winprob";

const SLOT_COUNT = 13;
const CATEGORY_P: Record<"S" | "U" | "G", number> = { S: 1.0, U: 0.75, G: 0.5 };

export interface WizardOptions {
  onAdvised?: (profile: ProfileDict, recommendation: Recommendation) => void;
}

export interface WizardHandle {
  element: HTMLElement;
  setSlot(index: number, value: SlotValue): void;
  setAll(value: "S" | "U" | "G"): void;
  setUtility(utility: Utility): void;
  setJoint(joint: boolean): void;
  /** null while any slot is unassessed; the counts form when possible. */
  profile(): ProfileDict | null;
  submit(): Promise<Recommendation | null>;
}

export function profileWizard(
  client: AdvisorClient,
  options: WizardOptions = {},
): WizardHandle {
  const slots: SlotValue[] = Array(SLOT_COUNT).fill(null);
  let utility: Utility = "winnings";
  let joint = false;

  const selects: HTMLSelectElement[] = [];
  const sliders: HTMLInputElement[] = [];
  const rows = Array.from({ length: SLOT_COUNT }, (_, index) => {
    const select = el("select", { "data-slot": String(index) }, [
      option("", "unassessed"),
      option("S", "sure"),
      option("U", "unsure"),
      option("G", "guess"),
      option("custom", "probability"),
    ]);
    const slider = el("input", {
      type: "number",
      min: "0.5",
      max: "1",
      step: "0.01",
      value: "0.75",
      hidden: true,
      "data-slot-p": String(index),
    });
    select.addEventListener("change", () => {
      slider.hidden = select.value !== "custom";
      slots[index] =
        select.value === ""
          ? null
          : select.value === "custom"
            ? Number(slider.value)
            : (select.value as "S" | "U" | "G");
    });
    slider.addEventListener("change", () => {
      if (select.value === "custom") {
        slots[index] = Number(slider.value);
      }
    });
    selects.push(select);
    sliders.push(slider);
    return el("label", { class: "slot" }, [`Q${index + 1} `, select, slider]);
  });

  const utilitySelect = el("select", { "data-field": "utility" }, [
    option("winnings", "expected winnings"),
    option("winprob", "win probability"),
  ]);
  utilitySelect.addEventListener("change", () => {
    utility = utilitySelect.value as Utility;
  });
  const jointBox = el("input", { type: "checkbox", "data-field": "joint" });
  jointBox.addEventListener("change", () => {
    joint = jointBox.checked;
  });

  const errorBox = el("p", { class: "error", "data-field": "wizard-error", hidden: true });
  const panel = el("dl", { class: "recommendation", hidden: true });
  const submitButton = el("button", { type: "button" }, ["advise"]);

  const element = el("section", { class: "wizard" }, [
    el("div", { class: "slots" }, rows),
    el("p", {}, [
      el("label", {}, ["utility ", utilitySelect]),
      " ",
      el("label", {}, [jointBox, " joint range and number (bonus aware)"]),
      " ",
      submitButton,
    ]),
    errorBox,
    panel,
  ]);

  function showError(message: string): void {
    errorBox.textContent = message;
    errorBox.hidden = false;
  }

  function profile(): ProfileDict | null {
    if (slots.some((slot) => slot === null)) {
      return null;
    }
    const filled = slots as ("S" | "U" | "G" | number)[];
    if (filled.every((slot) => typeof slot === "string")) {
      const counts = { s: 0, u: 0, g: 0 };
      for (const slot of filled as ("S" | "U" | "G")[]) {
        if (slot === "S") counts.s += 1;
        else if (slot === "U") counts.u += 1;
        else counts.g += 1;
      }
      return counts;
    }
    const p = filled.map((slot) => (typeof slot === "number" ? slot : CATEGORY_P[slot]));
    return { p };
  }

  function renderRecommendation(rec: Recommendation): void {
    clear(panel);
    const field = (term: string, name: string, text: string): void => {
      const dt = el("dt", {}, [term]);
      const dd = el("dd", { "data-field": name });
      dd.textContent = text;
      panel.append(dt, dd);
    };
    field("bet", "bet", betLabel(rec.range, rec.number));
    field("win probability", "win-probability", formatProbability(rec.win_probability));
    field(
      "number hit probability",
      "number-hit-probability",
      formatProbability(rec.number_hit_probability),
    );
    field("expected winnings", "expected-winnings", formatMoney(rec.expected_winnings));
    field("ties", "ties", formatTies(rec.ties));
    panel.hidden = false;
  }

  async function submit(): Promise<Recommendation | null> {
    errorBox.hidden = true;
    const body = profile();
    if (body === null) {
      showError("assess all 13 questions before asking for advice");
      return null;
    }
    const request: AdviseRequest = { ...body, utility, joint };
    try {
      const recommendation = await client.advise(request);
      renderRecommendation(recommendation);
      options.onAdvised?.(body, recommendation);
      return recommendation;
    } catch (error) {
      showError(error instanceof ApiError ? error.message : String(error));
      return null;
    }
  }

  submitButton.addEventListener("click", () => {
    void submit();
  });

  function setSlot(index: number, value: SlotValue): void {
    const select = selects[index];
    const slider = sliders[index];
    if (!select || !slider) {
      throw new RangeError(`no question slot ${index}`);
    }
    slots[index] = value;
    if (typeof value === "number") {
      select.value = "custom";
      slider.value = String(value);
      slider.hidden = false;
    } else {
      select.value = value ?? "";
      slider.hidden = true;
    }
  }

  return {
    element,
    setSlot,
    setAll(value) {
      for (let index = 0; index < SLOT_COUNT; index += 1) {
        setSlot(index, value);
      }
    },
    setUtility(value) {
      utility = value;
      utilitySelect.value = value;
    },
    setJoint(value) {
      joint = value;
      jointBox.checked = value;
    },
    profile,
    submit,
  };
}
