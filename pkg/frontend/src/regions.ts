// Region-sweep explorer: parse the CSV artifact written by the `regions`
// command and render each fixed-v4 slice as an SVG scatter of the (v2, v3)
// plane. The decision column decides the color; the value strings ride
// along verbatim as tooltips. Coordinates are parsed to numbers only to
// position the dots — no probability is recomputed.

export interface RegionRow {
  v2: string;
  v3: string;
  v4: string;
  valueWin: string;
  valueLose: string;
  decision: 'win' | 'lose';
}

export const REGION_HEADER = 'v2,v3,v4,value_win,value_lose,decision';

export function parseRegionCsv(text: string): RegionRow[] {
  const lines = text.split('\n').filter((line) => line.trim().length > 0);
  if (lines.length === 0 || lines[0].trim() !== REGION_HEADER) {
    throw new Error(`unexpected region CSV header: ${lines[0] ?? '(empty file)'}`);
  }
  return lines.slice(1).map((line, index) => {
    const cells = line.split(',');
    if (cells.length !== 6 || (cells[5] !== 'win' && cells[5] !== 'lose')) {
      throw new Error(`bad region CSV row ${index + 2}: ${line}`);
    }
    return {
      v2: cells[0],
      v3: cells[1],
      v4: cells[2],
      valueWin: cells[3],
      valueLose: cells[4],
      decision: cells[5],
    };
  });
}

export interface RegionSlice {
  v4: string;
  rows: RegionRow[];
}

/** Group rows into 2-D slices, one per distinct v4, in file order. */
export function sliceByV4(rows: RegionRow[]): RegionSlice[] {
  const slices = new Map<string, RegionRow[]>();
  for (const row of rows) {
    const bucket = slices.get(row.v4);
    if (bucket) {
      bucket.push(row);
    } else {
      slices.set(row.v4, [row]);
    }
  }
  return [...slices.entries()].map(([v4, sliceRows]) => ({ v4, rows: sliceRows }));
}

const SIZE = 320;
const PAD = 28;
const WIN_COLOR = '#1f77b4';
const LOSE_COLOR = '#d62728';

function coord(value: string): number {
  // layout only: map (0, 1] onto the padded square
  return PAD + Number(value) * (SIZE - 2 * PAD);
}

export function sliceSvg(slice: RegionSlice): string {
  const dots = slice.rows
    .map((row) => {
      const x = coord(row.v2);
      const y = SIZE - coord(row.v3);
      const fill = row.decision === 'lose' ? LOSE_COLOR : WIN_COLOR;
      const tip = `v2=${row.v2} v3=${row.v3} win=${row.valueWin} lose=${row.valueLose}`;
      return (
        `  <circle cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="4" fill="${fill}" ` +
        `data-decision="${row.decision}"><title>${tip}</title></circle>`
      );
    })
    .join('\n');
  return [
    `<svg viewBox="0 0 ${SIZE} ${SIZE}" role="img" aria-label="decision regions at v4=${slice.v4}">`,
    `  <text x="${PAD}" y="16" class="slice-title">v4 = ${slice.v4}</text>`,
    `  <line x1="${PAD}" y1="${SIZE - PAD}" x2="${SIZE - PAD}" y2="${SIZE - PAD}" stroke="#999"/>`,
    `  <line x1="${PAD}" y1="${PAD}" x2="${PAD}" y2="${SIZE - PAD}" stroke="#999"/>`,
    `  <text x="${SIZE / 2}" y="${SIZE - 6}" class="axis">v2</text>`,
    `  <text x="8" y="${SIZE / 2}" class="axis">v3</text>`,
    dots,
    '</svg>',
  ].join('\n');
}
