export interface LayoutEdge {
  source: string;
  target: string;
  pruned: boolean;
}

export interface PlacedNode {
  name: string;
  layer: number;
  x: number;
  y: number;
}

export type NodeLayout = Map<string, PlacedNode>;

const LAYER_SPACING = 130;
const COLUMN_SPACING = 120;

/**
 * Layer assignment for the targeted view: each node sits at its
 * longest-path depth from the selected targets, walking only edges the
 * scoping rule actually traverses (the server marks the rest pruned).
 * Nodes in the view without any traversable path, for example members
 * reachable only through pruned edges, sink below the deepest layer so
 * cut-off material reads as cut off. Ties inside a layer order by name.
 */
export function hierarchicalLayout(
  names: string[],
  edges: LayoutEdge[],
  targets: string[],
): NodeLayout {
  const visible = new Set(names);
  const depth = new Map<string, number>();
  for (const target of targets) {
    if (visible.has(target)) depth.set(target, 0);
  }
  const traversable = edges.filter(
    (edge) =>
      !edge.pruned && visible.has(edge.source) && visible.has(edge.target),
  );
  // Longest-path relaxation; the sweep cap keeps cycles from looping forever
  // and leaves every acyclic path fully relaxed.
  const maxSweeps = Math.max(1, visible.size);
  for (let sweep = 0; sweep < maxSweeps; sweep += 1) {
    let changed = false;
    for (const edge of traversable) {
      const from = depth.get(edge.source);
      if (from === undefined) continue;
      const candidate = Math.min(from + 1, maxSweeps);
      const existing = depth.get(edge.target);
      if (existing === undefined || candidate > existing) {
        depth.set(edge.target, candidate);
        changed = true;
      }
    }
    if (!changed) break;
  }

  let deepest = 0;
  for (const value of depth.values()) deepest = Math.max(deepest, value);
  const sinkLayer = depth.size < visible.size ? deepest + 1 : deepest;

  const layers = new Map<number, string[]>();
  for (const name of [...names].sort()) {
    const layer = depth.get(name) ?? sinkLayer;
    const members = layers.get(layer);
    if (members) members.push(name);
    else layers.set(layer, [name]);
  }

  const layout: NodeLayout = new Map();
  for (const [layer, members] of layers) {
    const width = (members.length - 1) * COLUMN_SPACING;
    members.forEach((name, index) => {
      layout.set(name, {
        name,
        layer,
        x: index * COLUMN_SPACING - width / 2,
        y: layer * LAYER_SPACING,
      });
    });
  }
  return layout;
}

/** Small deterministic PRNG so untargeted layouts are reproducible. */
function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function hashName(name: string): number {
  let hash = 2166136261;
  for (let i = 0; i < name.length; i += 1) {
    hash ^= name.charCodeAt(i);
    hash = Math.imul(hash, 16777619);
  }
  return hash >>> 0;
}

const FORCE_ITERATIONS = 60;
const FORCE_PHYSICS_CUTOFF = 1500;

/**
 * Untargeted browsing layout: seeded initial placement on a spiral, then a
 * fixed number of spring relaxation passes. Everything is deterministic,
 * so the same graph always lands in the same picture. Above the physics
 * cutoff the relaxation passes are skipped and the spiral stands alone;
 * pair layouts at that scale with a filter rather than raw inspection.
 */
export function forceLayout(names: string[], edges: LayoutEdge[]): NodeLayout {
  const ordered = [...names].sort();
  const layout: NodeLayout = new Map();
  const golden = 2.399963229728653;
  ordered.forEach((name, index) => {
    const jitter = mulberry32(hashName(name));
    const radius = 40 * Math.sqrt(index + jitter());
    const angle = index * golden + jitter() * 0.1;
    layout.set(name, {
      name,
      layer: 0,
      x: radius * Math.cos(angle),
      y: radius * Math.sin(angle),
    });
  });

  if (ordered.length === 0 || ordered.length > FORCE_PHYSICS_CUTOFF) {
    return layout;
  }

  const visibleEdges = edges.filter(
    (edge) => layout.has(edge.source) && layout.has(edge.target),
  );
  const springLength = 110;
  for (let iteration = 0; iteration < FORCE_ITERATIONS; iteration += 1) {
    const cooling = 1 - iteration / FORCE_ITERATIONS;
    for (const edge of visibleEdges) {
      const a = layout.get(edge.source)!;
      const b = layout.get(edge.target)!;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const distance = Math.max(1, Math.hypot(dx, dy));
      const pull = ((distance - springLength) / distance) * 0.05 * cooling;
      a.x += dx * pull;
      a.y += dy * pull;
      b.x -= dx * pull;
      b.y -= dy * pull;
    }
  }
  return layout;
}

export interface ViewBox {
  minX: number;
  minY: number;
  width: number;
  height: number;
}

/** Bounding box with margin for the svg viewBox attribute. */
export function layoutBounds(layout: NodeLayout, margin = 80): ViewBox {
  if (layout.size === 0) {
    return { minX: -200, minY: -200, width: 400, height: 400 };
  }
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const node of layout.values()) {
    minX = Math.min(minX, node.x);
    minY = Math.min(minY, node.y);
    maxX = Math.max(maxX, node.x);
    maxY = Math.max(maxY, node.y);
  }
  return {
    minX: minX - margin,
    minY: minY - margin,
    width: maxX - minX + margin * 2,
    height: maxY - minY + margin * 2,
  };
}
