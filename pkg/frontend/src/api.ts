import type {
  AdviceResponse,
  ChampTablePayload,
  SeasonList,
  SeasonSnapshot,
  ServiceError,
} from './types';

// All traffic goes through the /api prefix (the dev server proxies it to a
// running `tanklab serve`; production hosting mounts the service there).
const BASE = '/api';

export class ApiFailure extends Error {
  readonly status: number;

  constructor(status: number, reason: string) {
    super(reason);
    this.status = status;
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(BASE + path, init);
  if (!response.ok) {
    let reason = `HTTP ${response.status}`;
    try {
      const body = (await response.json()) as ServiceError;
      if (body?.error?.reason) reason = body.error.reason;
    } catch {
      // non-JSON error body: keep the generic reason
    }
    throw new ApiFailure(response.status, reason);
  }
  return (await response.json()) as T;
}

function post<T>(path: string, body: unknown): Promise<T> {
  return request<T>(path, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(body),
  });
}

export function listSeasons(): Promise<SeasonList> {
  return request<SeasonList>('/seasons');
}

export function loadSeason(id: string): Promise<SeasonSnapshot> {
  return request<SeasonSnapshot>(`/season/${encodeURIComponent(id)}`);
}

export function createSeason(name: string, weights: string[]): Promise<SeasonSnapshot> {
  return post<SeasonSnapshot>('/season', { name, weights });
}

/** Record the next scheduled game's winner; the revision guards stale views. */
export function recordResult(
  id: string,
  winner: number,
  revision: number,
): Promise<SeasonSnapshot> {
  return post<SeasonSnapshot>(`/season/${encodeURIComponent(id)}/result`, { winner, revision });
}

export function fetchAdvice(id: string, model: 'frns' | 'frs'): Promise<AdviceResponse> {
  return request<AdviceResponse>(`/season/${encodeURIComponent(id)}/advice?model=${model}`);
}

export interface WhatIfQuery {
  model: 'frns' | 'frs';
  week?: number;
  wins?: number[];
  results?: number[];
  weights?: string[];
}

export function whatIf(id: string, query: WhatIfQuery): Promise<AdviceResponse> {
  return post<AdviceResponse>(`/season/${encodeURIComponent(id)}/whatif`, query);
}

export function fetchProbs(weights: string[]): Promise<ChampTablePayload> {
  return request<ChampTablePayload>(`/probs?weights=${encodeURIComponent(weights.join(','))}`);
}

/** The region sweep is a static CSV artifact produced by the `regions`
 * command; the explorer fetches and renders it without recomputing. */
export async function fetchRegionCsv(path: string): Promise<string> {
  const response = await fetch(path);
  if (!response.ok) {
    throw new ApiFailure(response.status, `could not load ${path}`);
  }
  return await response.text();
}
