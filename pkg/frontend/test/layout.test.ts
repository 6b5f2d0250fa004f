import { describe, expect, it } from 'vitest';
import {
  forceLayout,
  hierarchicalLayout,
  layoutBounds,
  type LayoutEdge,
} from '../src/layout.js';

// Mirrors the fixture graph: T scopes to E and F while T->L is pruned,
// so L and D stay in the view without any traversable path from T.
const FIXTURE_NAMES = ['D', 'E', 'F', 'L', 'T'];
const FIXTURE_EDGES: LayoutEdge[] = [
  { source: 'E', target: 'F', pruned: false },
  { source: 'L', target: 'D', pruned: true },
  { source: 'T', target: 'E', pruned: false },
  { source: 'T', target: 'L', pruned: true },
];

describe('hierarchicalLayout', () => {
  it('layers by longest traversable path from the targets', () => {
    const layout = hierarchicalLayout(FIXTURE_NAMES, FIXTURE_EDGES, ['T']);
    expect(layout.get('T')!.layer).toBe(0);
    expect(layout.get('E')!.layer).toBe(1);
    expect(layout.get('F')!.layer).toBe(2);
  });

  it('sinks nodes reachable only through pruned edges below the rest', () => {
    const layout = hierarchicalLayout(FIXTURE_NAMES, FIXTURE_EDGES, ['T']);
    const deepest = Math.max(
      layout.get('T')!.layer,
      layout.get('E')!.layer,
      layout.get('F')!.layer,
    );
    expect(layout.get('L')!.layer).toBe(deepest + 1);
    expect(layout.get('D')!.layer).toBe(deepest + 1);
  });

  it('prefers the longest path when several exist', () => {
    const edges: LayoutEdge[] = [
      { source: 'A', target: 'B', pruned: false },
      { source: 'B', target: 'C', pruned: false },
      { source: 'C', target: 'D', pruned: false },
      { source: 'A', target: 'D', pruned: false },
    ];
    const layout = hierarchicalLayout(['A', 'B', 'C', 'D'], edges, ['A']);
    expect(layout.get('D')!.layer).toBe(3);
  });

  it('terminates on cycles and keeps layers bounded', () => {
    const edges: LayoutEdge[] = [
      { source: 'A', target: 'B', pruned: false },
      { source: 'B', target: 'A', pruned: false },
    ];
    const layout = hierarchicalLayout(['A', 'B'], edges, ['A']);
    expect(layout.size).toBe(2);
    for (const node of layout.values()) {
      expect(node.layer).toBeLessThanOrEqual(2);
    }
  });

  it('orders ties inside a layer by name', () => {
    const edges: LayoutEdge[] = [
      { source: 'root', target: 'beta', pruned: false },
      { source: 'root', target: 'alpha', pruned: false },
    ];
    const layout = hierarchicalLayout(['root', 'alpha', 'beta'], edges, ['root']);
    expect(layout.get('alpha')!.layer).toBe(1);
    expect(layout.get('beta')!.layer).toBe(1);
    expect(layout.get('alpha')!.x).toBeLessThan(layout.get('beta')!.x);
  });

  it('is deterministic', () => {
    const first = hierarchicalLayout(FIXTURE_NAMES, FIXTURE_EDGES, ['T']);
    const second = hierarchicalLayout(FIXTURE_NAMES, FIXTURE_EDGES, ['T']);
    expect([...second.entries()]).toEqual([...first.entries()]);
  });
});

describe('forceLayout', () => {
  it('is deterministic for the same graph', () => {
    const first = forceLayout(FIXTURE_NAMES, FIXTURE_EDGES);
    const second = forceLayout(FIXTURE_NAMES, FIXTURE_EDGES);
    expect([...second.entries()]).toEqual([...first.entries()]);
  });

  it('gives every node its own position', () => {
    const layout = forceLayout(FIXTURE_NAMES, FIXTURE_EDGES);
    const positions = new Set(
      [...layout.values()].map((node) => `${node.x},${node.y}`),
    );
    expect(positions.size).toBe(FIXTURE_NAMES.length);
  });

  it('handles an empty graph', () => {
    expect(forceLayout([], []).size).toBe(0);
    const box = layoutBounds(forceLayout([], []));
    expect(box.width).toBeGreaterThan(0);
  });
});

describe('layoutBounds', () => {
  it('covers every placed node with margin', () => {
    const layout = hierarchicalLayout(FIXTURE_NAMES, FIXTURE_EDGES, ['T']);
    const box = layoutBounds(layout, 50);
    for (const node of layout.values()) {
      expect(node.x).toBeGreaterThanOrEqual(box.minX);
      expect(node.y).toBeGreaterThanOrEqual(box.minY);
      expect(node.x).toBeLessThanOrEqual(box.minX + box.width);
      expect(node.y).toBeLessThanOrEqual(box.minY + box.height);
    }
  });
});
