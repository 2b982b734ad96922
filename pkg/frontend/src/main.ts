/** Application shell: base-URL configuration, three views, and the session
 * id kept in the URL so a reload can resume the same game. */

import { AdvisorClient } from "./api.js";
import { el } from "./dom.js";
import { strategyTables } from "./tables.js";
import { liveTracker } from "./tracker.js";
import { profileWizard } from "./wizard.js";

const DEFAULT_BASE_URL = "http://localhost:8000";

function sessionIdFromUrl(): string | null {
  return new URLSearchParams(window.location.search).get("game");
}

function writeSessionId(id: string | null): void {
  const params = new URLSearchParams(window.location.search);
  if (id === null) {
    params.delete("game");
  } else {
    params.set("game", id);
  }
  const query = params.toString();
  const url = query ? `${window.location.pathname}?${query}` : window.location.pathname;
  window.history.replaceState(null, "", url);
}

export function mountApp(root: HTMLElement): void {
  const baseInput = el("input", {
    type: "url",
    value: DEFAULT_BASE_URL,
    size: "30",
    "data-field": "base-url",
  });
  const client = (): AdvisorClient => new AdvisorClient(baseInput.value.replace(/\/$/, ""));

  // components hold the client by reference through this proxy so a base
  // URL edit takes effect on the next request
  const proxy = new AdvisorClient("", (input, init) => {
    const live = client();
    return fetch(live.baseUrl + input, init);
  });

  const tracker = liveTracker(proxy, { onSessionChange: writeSessionId });
  const wizard = profileWizard(proxy, {
    onAdvised: (profile, recommendation) => {
      tracker.prefill(profile, recommendation.range, recommendation.number);
    },
  });
  const tables = strategyTables(proxy);

  const views: Record<string, HTMLElement> = {
    advise: wizard.element,
    track: tracker.element,
    tables: tables.element,
  };
  const tabBar = el("nav", { class: "tabs" });
  const stage = el("main", {});

  function show(name: keyof typeof views): void {
    for (const [key, view] of Object.entries(views)) {
      view.hidden = key !== name;
    }
    stage.replaceChildren(...Object.values(views));
  }

  for (const name of Object.keys(views) as (keyof typeof views)[]) {
    const button = el("button", { type: "button" }, [String(name)]);
    button.addEventListener("click", () => show(name));
    tabBar.append(button, " ");
  }

  root.append(
    el("header", {}, [
      el("h1", {}, ["Lucky 13 advisor"]),
      el("label", {}, ["service ", baseInput]),
    ]),
    tabBar,
    stage,
  );

  const existing = sessionIdFromUrl();
  if (existing !== null) {
    show("track");
    tracker.resume(existing).catch(() => writeSessionId(null));
  } else {
    show("advise");
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  mountApp(document.getElementById("app") as HTMLElement);
}
