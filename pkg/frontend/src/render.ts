import { layoutBounds, type NodeLayout } from './layout.js';
import type { ViewCounts } from './store.js';
import type {
  ConfidenceLevel,
  DeclKind,
  GraphEdgePayload,
  GraphNodePayload,
} from './types.js';

/** Header line summarizing the current selection. */
export function countsLabel(counts: ViewCounts | null): string {
  if (counts === null) return '';
  return `cone ${counts.cone} / kept ${counts.kept} (${counts.reduction})`;
}

/**
 * Confidence renders as a gray-to-green ramp so reviewed material reads
 * as "safe" at a glance while unreviewed clusters stay visually loud.
 */
export function confidenceColor(level: ConfidenceLevel): string {
  switch (level) {
    case 'unreviewed':
      return '#8a8f98';
    case 'low':
      return '#b7a249';
    case 'medium':
      return '#8fae4f';
    case 'high':
      return '#5fae62';
    case 'verified':
      return '#2e9e6b';
  }
}

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

const NODE_RADIUS = 14;

/**
 * Each declaration kind gets its own silhouette: circles for theorems,
 * squares for plain definitions, diamonds for inductives, hexagons for
 * structures, rounded squares for abbreviations, and triangles for
 * axioms so assumed material never hides among proved material.
 */
export function nodeShapePath(kind: DeclKind, x: number, y: number): string {
  const r = NODE_RADIUS;
  switch (kind) {
    case 'theorem':
      return `<circle cx="${x}" cy="${y}" r="${r}"`;
    case 'definition':
      return `<rect x="${x - r}" y="${y - r}" width="${2 * r}" height="${2 * r}"`;
    case 'abbreviation':
      return `<rect x="${x - r}" y="${y - r}" width="${2 * r}" height="${2 * r}" rx="6"`;
    case 'inductive':
      return `<path d="M ${x} ${y - r} L ${x + r} ${y} L ${x} ${y + r} L ${x - r} ${y} Z"`;
    case 'structure': {
      const half = r * 0.5;
      return (
        `<path d="M ${x - half} ${y - r} L ${x + half} ${y - r} L ${x + r} ${y} ` +
        `L ${x + half} ${y + r} L ${x - half} ${y + r} L ${x - r} ${y} Z"`
      );
    }
    case 'axiom':
      return `<path d="M ${x} ${y - r} L ${x + r} ${y + r} L ${x - r} ${y + r} Z"`;
  }
}

export interface RenderOptions {
  /** Draw edges; the caller decides based on view size and selection. */
  drawEdges: boolean;
  /** Names to ring with the kept accent. */
  keptNames: ReadonlySet<string>;
  targets: ReadonlySet<string>;
}

function renderEdge(
  edge: GraphEdgePayload,
  layout: NodeLayout,
): string | null {
  const from = layout.get(edge.source);
  const to = layout.get(edge.target);
  if (!from || !to) return null;
  const cls = edge.pruned ? 'edge pruned' : 'edge';
  return (
    `<line class="${cls}" x1="${from.x.toFixed(1)}" y1="${from.y.toFixed(1)}" ` +
    `x2="${to.x.toFixed(1)}" y2="${to.y.toFixed(1)}"/>`
  );
}

function renderNode(
  node: GraphNodePayload,
  layout: NodeLayout,
  options: RenderOptions,
): string | null {
  const placed = layout.get(node.name);
  if (!placed) return null;
  const classes = ['node'];
  if (options.keptNames.has(node.name)) classes.push('kept');
  if (options.targets.has(node.name)) classes.push('target');
  const fill = confidenceColor(node.metadata.confidence);
  const shape = nodeShapePath(node.kind, 0, 0);
  const sorryMark = node.metadata.hasSorry
    ? `<text class="sorry-mark" x="0" y="-20">!</text>`
    : '';
  const label = escapeXml(node.name);
  return (
    `<g class="${classes.join(' ')}" data-name="${label}" ` +
    `transform="translate(${placed.x.toFixed(1)} ${placed.y.toFixed(1)})">` +
    `${shape} fill="${fill}"/>` +
    `${sorryMark}` +
    `<text class="node-label" x="0" y="30">${label}</text>` +
    `</g>`
  );
}

/**
 * Render the whole scene to an svg string. Pure: same inputs, same
 * markup, which is what the snapshot tests lean on.
 */
export function renderSvg(
  nodes: GraphNodePayload[],
  edges: GraphEdgePayload[],
  layout: NodeLayout,
  options: RenderOptions,
): string {
  const box = layoutBounds(layout);
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="` +
      `${box.minX.toFixed(1)} ${box.minY.toFixed(1)} ` +
      `${box.width.toFixed(1)} ${box.height.toFixed(1)}">`,
  ];
  if (options.drawEdges) {
    for (const edge of edges) {
      const line = renderEdge(edge, layout);
      if (line) parts.push(line);
    }
  }
  for (const node of nodes) {
    const group = renderNode(node, layout, options);
    if (group) parts.push(group);
  }
  parts.push('</svg>');
  return parts.join('\n');
}
