import type {
  AdvicePayload,
  AdviceResponse,
  ChampTablePayload,
  EquilibriaPayload,
  FinalOddsPayload,
  Frac,
  SeasonSnapshot,
} from './types';

// Pure payload -> HTML renderers. Deterministic for a given payload, and
// every number shown is a service-provided string, copied verbatim.

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function frac(value: Frac): string {
  return `<span class="num" title="${escapeHtml(value.rational)}">${escapeHtml(
    value.decimal,
  )}</span>`;
}

export function weightsLine(weights: Frac[]): string {
  return weights.map((w) => escapeHtml(w.decimal)).join(', ');
}

export function adviceHtml(advice: AdvicePayload): string {
  const badge =
    advice.action === 'lose'
      ? '<span class="badge badge-lose">lose intentionally</span>'
      : '<span class="badge badge-win">try to win</span>';
  return [
    `<div class="advice" data-week="${advice.week}">`,
    `  <p>week ${advice.week}, wins [${advice.wins.join(', ')}] → ${badge}</p>`,
    `  <dl>`,
    `    <dt>value if trying</dt><dd>${frac(advice.value_win)}</dd>`,
    `    <dt>value if losing</dt><dd>${frac(advice.value_lose)}</dd>`,
    `  </dl>`,
    `</div>`,
  ].join('\n');
}

export function equilibriaHtml(report: EquilibriaPayload): string {
  if (report.note !== undefined) {
    return `<div class="equilibria"><p class="note">${escapeHtml(report.note)}</p></div>`;
  }
  const parts = [`<div class="equilibria" data-week="${report.week}">`];
  const pure = report.pure ?? [];
  if (pure.length === 0) {
    parts.push('  <p>no pure equilibria</p>');
  } else {
    parts.push('  <ul class="pure">');
    for (const eq of pure) {
      const payoffs = eq.payoffs.map(frac).join(', ');
      parts.push(`    <li>pure (${eq.profile.join(',')}) — payoffs: ${payoffs}</li>`);
    }
    parts.push('  </ul>');
  }
  const mixed = report.mixed;
  if (mixed && mixed.kind === 'continuum' && mixed.constraint) {
    parts.push(
      `  <p class="banner continuum">mixed equilibria: ${escapeHtml(mixed.constraint)}` +
        ` (A12 = ${escapeHtml(mixed.a12.decimal)}, A34 = ${escapeHtml(mixed.a34.decimal)})</p>`,
    );
  } else if (mixed) {
    parts.push(`  <p class="banner family">${escapeHtml(mixed.note)}</p>`);
  }
  parts.push('</div>');
  return parts.join('\n');
}

export function finalOddsHtml(final: FinalOddsPayload): string {
  const rows = Object.entries(final.championship)
    .map(([team, value]) => `    <tr><td>team ${team}</td><td>${frac(value)}</td></tr>`)
    .join('\n');
  return [
    '<div class="final-odds">',
    '  <p>season complete — championship odds after seeding</p>',
    '  <table><thead><tr><th>team</th><th>title probability</th></tr></thead><tbody>',
    rows,
    '  </tbody></table>',
    '</div>',
  ].join('\n');
}

export function advicePanelHtml(response: AdviceResponse): string {
  switch (response.kind) {
    case 'advice':
      return adviceHtml(response);
    case 'equilibria':
      return equilibriaHtml(response);
    case 'final-odds':
      return finalOddsHtml(response);
  }
}

export function scheduleHtml(season: SeasonSnapshot): string {
  const played = season.results
    .map(
      (r) =>
        `    <li class="played">week ${r.week}: a${r.game[0]}–a${r.game[1]} → winner a${r.winner}</li>`,
    )
    .join('\n');
  const next = season.next_game
    ? `    <li class="next">next: week ${season.next_game.week}, a${season.next_game.game[0]}–a${season.next_game.game[1]}</li>`
    : '    <li class="done">all games played</li>';
  return [
    `<div class="schedule" data-revision="${season.revision}">`,
    `  <p>${escapeHtml(season.name)} — weights ${weightsLine(season.weights)}</p>`,
    `  <p>wins [${season.wins.join(', ')}]</p>`,
    '  <ol>',
    played,
    next,
    '  </ol>',
    '</div>',
  ].join('\n');
}

export function champTableHtml(table: ChampTablePayload): string {
  const header =
    '<thead><tr><th>team</th><th>pairing A</th><th>pairing B</th><th>pairing C</th></tr></thead>';
  const rows = (['1', '2', '3', '4'] as const)
    .map((team) => {
      const cols = table.teams[team];
      return `    <tr><td>team ${team}</td><td>${frac(cols.A)}</td><td>${frac(
        cols.B,
      )}</td><td>${frac(cols.C)}</td></tr>`;
    })
    .join('\n');
  return `<table class="champ-table">${header}<tbody>\n${rows}\n</tbody></table>`;
}
