import { ApiFailure } from './api';
import type * as apiModule from './api';
import { advicePanelHtml, escapeHtml, scheduleHtml } from './render';
import { parseRegionCsv, sliceByV4, sliceSvg, type RegionSlice } from './regions';
import type { SeasonSnapshot } from './types';

// The cockpit drives one season at a time. All numbers on screen come from
// service payloads; this module only wires events to endpoints.

export type CockpitApi = Pick<
  typeof apiModule,
  | 'listSeasons'
  | 'loadSeason'
  | 'createSeason'
  | 'recordResult'
  | 'fetchAdvice'
  | 'whatIf'
  | 'fetchRegionCsv'
>;

export const DEFAULT_WEIGHTS = '1,0.8,0.5,0.3';
export const DEFAULT_REGION_CSV = '/regions.csv';

const SHELL = `
<header><h1>tanklab cockpit</h1><p id="message" class="message" hidden></p></header>
<section id="picker">
  <h2>seasons</h2>
  <select id="season-select" size="5"></select>
  <form id="create-form">
    <input id="create-name" placeholder="season name" required />
    <input id="create-weights" value="${DEFAULT_WEIGHTS}" />
    <button type="submit">start season</button>
  </form>
</section>
<section id="season">
  <h2>season</h2>
  <div id="schedule"></div>
  <div id="record"></div>
</section>
<section id="advice-section">
  <h2>advice</h2>
  <label><input type="radio" name="model" value="frns" checked /> next-move advice</label>
  <label><input type="radio" name="model" value="frs" /> equilibria</label>
  <div id="advice"></div>
</section>
<section id="whatif-section">
  <h2>what if</h2>
  <form id="whatif-form">
    <input id="whatif-weights" placeholder="weights e.g. 1,1,0.5,0.5" />
    <input id="whatif-week" type="number" min="1" max="3" value="3" />
    <input id="whatif-wins" placeholder="wins e.g. 1,2,0,1" />
    <input id="whatif-results" placeholder="or results so far e.g. 1,3,1" />
    <select id="whatif-model"><option value="frns">advice</option><option value="frs">equilibria</option></select>
    <button type="submit">evaluate</button>
  </form>
  <div id="whatif"></div>
</section>
<section id="regions-section">
  <h2>decision regions</h2>
  <form id="regions-form">
    <input id="regions-path" value="${DEFAULT_REGION_CSV}" />
    <button type="submit">load sweep</button>
  </form>
  <select id="regions-slice" hidden></select>
  <div id="regions"></div>
</section>
`;

function parseList(text: string): number[] {
  return text
    .split(',')
    .map((part) => part.trim())
    .filter((part) => part.length > 0)
    .map(Number);
}

export class Cockpit {
  private readonly root: HTMLElement;
  private readonly api: CockpitApi;
  private season: SeasonSnapshot | null = null;
  private slices: RegionSlice[] = [];

  constructor(root: HTMLElement, api: CockpitApi) {
    this.root = root;
    this.api = api;
    root.innerHTML = SHELL;
    this.wire();
  }

  private element<T extends HTMLElement>(id: string): T {
    const found = this.root.querySelector<T>(`#${id}`);
    if (!found) throw new Error(`missing cockpit element #${id}`);
    return found;
  }

  private showMessage(text: string | null): void {
    const box = this.element<HTMLParagraphElement>('message');
    box.hidden = text === null;
    box.textContent = text ?? '';
  }

  private async guard<T>(work: () => Promise<T>): Promise<T | null> {
    try {
      const result = await work();
      this.showMessage(null);
      return result;
    } catch (failure) {
      const reason =
        failure instanceof ApiFailure
          ? `${failure.status}: ${failure.message}`
          : failure instanceof Error
            ? failure.message
            : String(failure);
      this.showMessage(reason);
      return null;
    }
  }

  private model(): 'frns' | 'frs' {
    for (const radio of this.root.querySelectorAll<HTMLInputElement>('input[name="model"]')) {
      if (radio.checked && radio.value === 'frs') return 'frs';
    }
    return 'frns';
  }

  private wire(): void {
    this.element<HTMLFormElement>('create-form').addEventListener('submit', (event) => {
      event.preventDefault();
      void this.createSeason();
    });
    this.element<HTMLSelectElement>('season-select').addEventListener('change', (event) => {
      const id = (event.target as HTMLSelectElement).value;
      if (id) void this.openSeason(id);
    });
    for (const radio of this.root.querySelectorAll<HTMLInputElement>('input[name="model"]')) {
      radio.addEventListener('change', () => void this.refreshAdvice());
    }
    this.element<HTMLFormElement>('whatif-form').addEventListener('submit', (event) => {
      event.preventDefault();
      void this.runWhatIf();
    });
    this.element<HTMLFormElement>('regions-form').addEventListener('submit', (event) => {
      event.preventDefault();
      void this.loadRegions();
    });
    this.element<HTMLSelectElement>('regions-slice').addEventListener('change', () =>
      this.renderSlice(),
    );
  }

  async start(): Promise<void> {
    await this.refreshPicker();
  }

  async refreshPicker(): Promise<void> {
    const listing = await this.guard(() => this.api.listSeasons());
    if (!listing) return;
    const select = this.element<HTMLSelectElement>('season-select');
    select.innerHTML = listing.seasons
      .map(
        (season) =>
          `<option value="${season.id}">${escapeHtml(season.name)} (week ${season.week})</option>`,
      )
      .join('');
  }

  private async createSeason(): Promise<void> {
    const name = this.element<HTMLInputElement>('create-name').value.trim();
    const weights = this.element<HTMLInputElement>('create-weights')
      .value.split(',')
      .map((part) => part.trim());
    const created = await this.guard(() => this.api.createSeason(name, weights));
    if (!created) return;
    await this.refreshPicker();
    this.renderSeason(created);
    await this.refreshAdvice();
  }

  async openSeason(id: string): Promise<void> {
    const snapshot = await this.guard(() => this.api.loadSeason(id));
    if (!snapshot) return;
    this.renderSeason(snapshot);
    await this.refreshAdvice();
  }

  private renderSeason(snapshot: SeasonSnapshot): void {
    this.season = snapshot;
    this.element<HTMLDivElement>('schedule').innerHTML = scheduleHtml(snapshot);
    const record = this.element<HTMLDivElement>('record');
    if (!snapshot.next_game) {
      record.innerHTML = '';
      return;
    }
    const [home, away] = snapshot.next_game.game;
    record.innerHTML =
      `record winner: <button type="button" data-winner="${home}">a${home}</button> ` +
      `<button type="button" data-winner="${away}">a${away}</button>`;
    for (const button of record.querySelectorAll<HTMLButtonElement>('button')) {
      button.addEventListener('click', () => {
        void this.record(Number(button.dataset.winner));
      });
    }
  }

  private async record(winner: number): Promise<void> {
    if (!this.season) return;
    const { id, revision } = this.season;
    const updated = await this.guard(() => this.api.recordResult(id, winner, revision));
    if (!updated) return;
    this.renderSeason(updated);
    await this.refreshPicker();
    await this.refreshAdvice();
  }

  async refreshAdvice(): Promise<void> {
    if (!this.season) return;
    const panel = this.element<HTMLDivElement>('advice');
    try {
      const response = await this.api.fetchAdvice(this.season.id, this.model());
      panel.innerHTML = advicePanelHtml(response);
    } catch (failure) {
      // mid-week the service declines with a reason; show it where the
      // advice would have been instead of treating it as an app error
      const reason = failure instanceof ApiFailure ? failure.message : String(failure);
      panel.innerHTML = `<p class="note">${escapeHtml(reason)}</p>`;
    }
  }

  private async runWhatIf(): Promise<void> {
    if (!this.season) {
      this.showMessage('open a season first');
      return;
    }
    const weightsText = this.element<HTMLInputElement>('whatif-weights').value.trim();
    const winsText = this.element<HTMLInputElement>('whatif-wins').value.trim();
    const resultsText = this.element<HTMLInputElement>('whatif-results').value.trim();
    const model = this.element<HTMLSelectElement>('whatif-model').value as 'frns' | 'frs';
    const query: apiModule.WhatIfQuery = { model };
    if (weightsText) query.weights = weightsText.split(',').map((part) => part.trim());
    if (resultsText) {
      query.results = parseList(resultsText);
    } else if (winsText) {
      query.wins = parseList(winsText);
      query.week = Number(this.element<HTMLInputElement>('whatif-week').value);
    }
    const id = this.season.id;
    const response = await this.guard(() => this.api.whatIf(id, query));
    if (!response) return;
    this.element<HTMLDivElement>('whatif').innerHTML = advicePanelHtml(response);
  }

  private async loadRegions(): Promise<void> {
    const path = this.element<HTMLInputElement>('regions-path').value.trim();
    const text = await this.guard(() => this.api.fetchRegionCsv(path));
    if (text === null) return;
    try {
      this.slices = sliceByV4(parseRegionCsv(text));
    } catch (parseFailure) {
      this.showMessage(parseFailure instanceof Error ? parseFailure.message : 'bad CSV');
      return;
    }
    const select = this.element<HTMLSelectElement>('regions-slice');
    select.hidden = false;
    select.innerHTML = this.slices
      .map((slice, index) => `<option value="${index}">v4 = ${slice.v4}</option>`)
      .join('');
    this.renderSlice();
  }

  private renderSlice(): void {
    const select = this.element<HTMLSelectElement>('regions-slice');
    const slice = this.slices[Number(select.value || '0')];
    this.element<HTMLDivElement>('regions').innerHTML = slice ? sliceSvg(slice) : '';
  }
}

export function createCockpit(root: HTMLElement, api: CockpitApi): Cockpit {
  return new Cockpit(root, api);
}
