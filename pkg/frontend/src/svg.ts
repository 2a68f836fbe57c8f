/** Minimal SVG assembly: fixed layout, no runtime dependencies. */

export interface Frame {
  width: number;
  height: number;
  margin: { top: number; right: number; bottom: number; left: number };
}

export const DEFAULT_FRAME: Frame = {
  width: 720,
  height: 520,
  margin: { top: 50, right: 30, bottom: 60, left: 70 },
};

export interface Scale {
  (value: number): number;
  domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = domain;
  return scale;
}

export function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

const fmt = (v: number) => (Number.isInteger(v) ? String(v) : v.toPrecision(4));

export class Svg {
  private parts: string[] = [];

  constructor(readonly frame: Frame) {}

  rect(x: number, y: number, w: number, h: number, fill: string, extra = ""): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}" ${extra}/>`,
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, extra = ""): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" stroke="${stroke}" ${extra}/>`,
    );
  }

  circle(cx: number, cy: number, r: number, fill: string): void {
    this.parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" fill="${fill}"/>`);
  }

  polyline(points: Array<[number, number]>, stroke: string, extra = ""): void {
    const path = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(`<polyline points="${path}" fill="none" stroke="${stroke}" ${extra}/>`);
  }

  text(x: number, y: number, content: string, extra = ""): void {
    this.parts.push(`<text x="${fmt(x)}" y="${fmt(y)}" ${extra}>${esc(content)}</text>`);
  }

  render(): string {
    const { width, height } = this.frame;
    return [
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="12">`,
      `<rect x="0" y="0" width="${width}" height="${height}" fill="white"/>`,
      ...this.parts,
      "</svg>",
    ].join("\n");
  }
}

/** Blue (0) to warm red (1) ramp for success rates. */
export function rateColor(rate: number): string {
  const t = Math.max(0, Math.min(1, rate));
  const r = Math.round(40 + 205 * t);
  const g = Math.round(60 + 60 * (1 - Math.abs(t - 0.5) * 2));
  const b = Math.round(200 - 170 * t);
  return `rgb(${r},${g},${b})`;
}

export function axes(
  svg: Svg,
  xScale: Scale,
  yScale: Scale,
  xLabel: string,
  yLabel: string,
  title: string,
  caption: string,
): void {
  const { width, height, margin } = svg.frame;
  const x0 = margin.left;
  const x1 = width - margin.right;
  const y0 = height - margin.bottom;
  const y1 = margin.top;
  svg.line(x0, y0, x1, y0, "black");
  svg.line(x0, y0, x0, y1, "black");
  for (const f of [0, 0.25, 0.5, 0.75, 1]) {
    const xv = xScale.domain[0] + f * (xScale.domain[1] - xScale.domain[0]);
    const yv = yScale.domain[0] + f * (yScale.domain[1] - yScale.domain[0]);
    svg.line(xScale(xv), y0, xScale(xv), y0 + 4, "black");
    svg.text(xScale(xv), y0 + 18, xv.toPrecision(3), 'text-anchor="middle"');
    svg.line(x0 - 4, yScale(yv), x0, yScale(yv), "black");
    svg.text(x0 - 8, yScale(yv) + 4, yv.toPrecision(3), 'text-anchor="end"');
  }
  svg.text((x0 + x1) / 2, height - 16, xLabel, 'text-anchor="middle"');
  svg.text(16, (y0 + y1) / 2, yLabel, `text-anchor="middle" transform="rotate(-90 16 ${(y0 + y1) / 2})"`);
  svg.text((x0 + x1) / 2, 22, title, 'text-anchor="middle" font-size="15"');
  svg.text((x0 + x1) / 2, 38, caption, 'text-anchor="middle" font-size="10" fill="#555"');
}
