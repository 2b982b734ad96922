/** Thin fetch client for the advisor service. The UI performs no game
 * arithmetic of its own; every number it shows came out of these calls. */

import type {
  AdviseRequest,
  GameView,
  OfferEvaluation,
  ProfileDict,
  Recommendation,
  StrategyRow,
  TrajectoryPoint,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function errorMessage(response: Response): Promise<string> {
  try {
    const body: unknown = await response.json();
    if (body && typeof body === "object" && "error" in body) {
      return String((body as { error: unknown }).error);
    }
  } catch {
    // non-JSON error body; fall through to the status line
  }
  return `${response.status} ${response.statusText}`;
}

export class AdvisorClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) {
      throw new ApiError(response.status, await errorMessage(response));
    }
    return (await response.json()) as T;
  }

  advise(request: AdviseRequest): Promise<Recommendation> {
    return this.request("POST", "/advise", request);
  }

  createGame(
    profile: ProfileDict,
    range: string,
    number: number | null,
  ): Promise<GameView> {
    const body: Record<string, unknown> = { ...profile, range };
    if (number !== null) {
      body.number = number;
    }
    return this.request("POST", "/games", body);
  }

  game(id: string): Promise<GameView> {
    return this.request("GET", `/games/${id}`);
  }

  /** A string question is an S/U/G category, a number a success probability. */
  reveal(id: string, question: string | number, correct: boolean): Promise<TrajectoryPoint> {
    const body =
      typeof question === "string"
        ? { category: question, correct }
        : { p: question, correct };
    return this.request("POST", `/games/${id}/reveals`, body);
  }

  offer(id: string, amount: number): Promise<OfferEvaluation> {
    return this.request("POST", `/games/${id}/offers`, { amount });
  }

  table(model: "two" | "three", utility: "winnings" | "winprob"): Promise<StrategyRow[]> {
    return this.request("GET", `/tables/${model}?utility=${utility}`);
  }
}
