// Wire types for the tanklab service. Every probability arrives as a
// rational/decimal string pair; the UI echoes the decimal strings verbatim
// and never computes probabilities itself.

export interface Frac {
  rational: string;
  decimal: string;
}

export type TeamId = 1 | 2 | 3 | 4;

export interface NextGame {
  week: number;
  game: [number, number];
}

export interface RecordedResult {
  week: number;
  game: [number, number];
  winner: number;
}

export interface SeasonSnapshot {
  kind: 'season';
  id: string;
  name: string;
  weights: Frac[];
  wins: number[];
  week: number;
  results: RecordedResult[];
  next_game: NextGame | null;
  revision: number;
}

export interface SeasonList {
  kind: 'season-list';
  seasons: SeasonSnapshot[];
}

export interface AdvicePayload {
  kind: 'advice';
  model: 'frns';
  week: number;
  wins: number[];
  weights: Frac[];
  action: 'win' | 'lose';
  value_win: Frac;
  value_lose: Frac;
}

export interface PureEquilibrium {
  profile: number[];
  payoffs: Frac[];
  margins: Frac[];
}

export interface MixedSolution {
  kind: 'continuum' | 'family';
  a12: Frac;
  a34: Frac;
  sample_profile: Frac[];
  payoffs: Frac[];
  note: string;
  constraint?: string;
}

export interface EquilibriaPayload {
  kind: 'equilibria';
  model: 'frs';
  week: number;
  wins: number[];
  weights: Frac[];
  pure?: PureEquilibrium[];
  mixed?: MixedSolution | null;
  // present instead of pure/mixed when the requested week has no analysis
  note?: string;
  available_at_week?: number;
}

export interface FinalOddsPayload {
  kind: 'final-odds';
  phase: 'complete';
  weights: Frac[];
  wins?: number[];
  championship: Record<string, Frac>;
}

export interface ChampTablePayload {
  kind: 'champ-table';
  weights: Frac[];
  teams: Record<string, Record<'A' | 'B' | 'C', Frac>>;
}

export type AdviceResponse = AdvicePayload | EquilibriaPayload | FinalOddsPayload;

export interface ServiceError {
  error: { status: number; reason: string };
}
