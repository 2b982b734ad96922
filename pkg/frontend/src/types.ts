/** JSON shapes returned by the advisor service, mirrored field for field. */

export interface TiePair {
  range: string;
  number: number | null;
}

export interface Recommendation {
  range: string;
  number: number | null;
  win_probability: number;
  expected_winnings: number;
  number_hit_probability: number;
  ties: TiePair[];
}

export interface TrajectoryPoint {
  reveal_index: number;
  correct_so_far: number;
  expected_winnings: number;
  range_probability: number;
  number_probability: number;
}

export interface OfferEvaluation {
  offer: number;
  continuation_value: number;
  advice: "accept" | "reject";
  margin: number;
  range_probability: number;
  number_probability: number;
}

export interface CountsProfile {
  s: number;
  u: number;
  g: number;
}

export interface ProbsProfile {
  p: number[];
}

export type ProfileDict = CountsProfile | ProbsProfile;

export function isCounts(profile: ProfileDict): profile is CountsProfile {
  return !("p" in profile);
}

export interface RevealRecord {
  category?: string;
  p?: number;
  correct: boolean;
}

export interface OfferRecord {
  after_reveal: number;
  amount: number;
  decision: string;
}

export interface GameView {
  id: string;
  created: string;
  updated: string;
  profile: ProfileDict;
  bet: { range: string; number: number | null };
  reveals: RevealRecord[];
  offers: OfferRecord[];
  reveal_count: number;
  correct_count: number;
  complete: boolean;
  trajectory: TrajectoryPoint[];
}

export interface StrategyRow extends Recommendation {
  s: number;
  u: number;
  g: number;
}

/** Request body for /advise; counts and probability forms are exclusive. */
export interface AdviseRequest {
  s?: number;
  u?: number;
  g?: number;
  p?: number[];
  utility?: "winnings" | "winprob";
  joint?: boolean;
}
