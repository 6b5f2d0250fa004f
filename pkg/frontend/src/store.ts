import { ApiClient, ApiError } from './api.js';
import {
  emptyPanel,
  encodeViewQuery,
  namePatternError,
  normalizePanel,
  panelIsActive,
  type FilterPanelState,
} from './filters.js';
import { makeToast, type Toast, type ToastKind } from './toast.js';
import type {
  CompassResponse,
  ConfidenceLevel,
  GraphEdgePayload,
  GraphNodePayload,
} from './types.js';

export interface ViewCounts {
  cone: number;
  kept: number;
  /** Combined reduction rendered to one decimal, e.g. "20.0%". */
  reduction: string;
}

export type LayoutMode = 'hierarchical' | 'force';

export interface ViewerSnapshot {
  phase: 'idle' | 'loading' | 'ready' | 'error';
  projectName: string;
  targets: string[];
  panel: FilterPanelState;
  nodes: GraphNodePayload[];
  edges: GraphEdgePayload[];
  /** Names highlighted as kept; mirrors the latest scoping response. */
  keptNames: ReadonlySet<string>;
  axiomNames: ReadonlySet<string>;
  compass: CompassResponse | null;
  counts: ViewCounts | null;
  layoutMode: LayoutMode;
  toasts: Toast[];
  error: string | null;
}

type Listener = (snapshot: ViewerSnapshot) => void;

function renderReduction(value: number): string {
  return `${(value * 100).toFixed(1)}%`;
}

/**
 * View model for the explorer. Every set the store exposes comes straight
 * from the service: the kept highlight is the node list of the latest
 * scoping response, cone membership comes from the response's per-target
 * cones, and filtered node lists come from the graph endpoint with the
 * panel's query parameters attached. Nothing here re-walks edges or
 * reimplements filter semantics.
 */
export class ViewerStore {
  private readonly api: ApiClient;
  private snapshot: ViewerSnapshot;
  private readonly listeners = new Set<Listener>();
  private requestSequence = 0;

  constructor(api: ApiClient) {
    this.api = api;
    this.snapshot = {
      phase: 'idle',
      projectName: '',
      targets: [],
      panel: emptyPanel(),
      nodes: [],
      edges: [],
      keptNames: new Set(),
      axiomNames: new Set(),
      compass: null,
      counts: null,
      layoutMode: 'force',
      toasts: [],
      error: null,
    };
  }

  get state(): ViewerSnapshot {
    return this.snapshot;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private publish(update: Partial<ViewerSnapshot>): void {
    this.snapshot = { ...this.snapshot, ...update };
    for (const listener of this.listeners) listener(this.snapshot);
  }

  pushToast(kind: ToastKind, message: string): void {
    this.publish({ toasts: [...this.snapshot.toasts, makeToast(kind, message)] });
  }

  dismissToast(id: number): void {
    this.publish({
      toasts: this.snapshot.toasts.filter((toast) => toast.id !== id),
    });
  }

  /** Load the view for the given state, replacing whatever is on screen. */
  async initialize(targets: string[], panel: FilterPanelState): Promise<void> {
    const health = await this.api.health();
    this.publish({ projectName: `${health.graphNodeCount} declarations` });
    if (targets.length > 0) {
      const selected = await this.selectTargets(targets, panel);
      if (selected) return;
      // Selection from a stale link failed; fall back to the open view.
    }
    await this.applyPanel(panel);
  }

  /**
   * Select scoping targets. Returns false and leaves the view untouched
   * when the service rejects the request, for example an unknown name.
   */
  async selectTargets(
    targets: string[],
    panelOverride?: FilterPanelState,
  ): Promise<boolean> {
    const panel = normalizePanel(panelOverride ?? this.snapshot.panel);
    if (targets.length === 0) {
      await this.applyPanel(panel);
      return true;
    }
    const sequence = this.beginRequest();
    let compass: CompassResponse;
    try {
      compass = await this.api.compass(targets);
    } catch (error) {
      this.failRequest(sequence, 'selection failed', error);
      return false;
    }

    let nodes: GraphNodePayload[];
    let edges: GraphEdgePayload[];
    try {
      const graph = await this.api.graph(encodeViewQuery(panel, compass.targets));
      nodes = graph.nodes;
      edges = graph.edges;
    } catch (error) {
      this.failRequest(sequence, 'graph fetch failed', error);
      return false;
    }
    if (sequence !== this.requestSequence) return false;

    const cone = new Set<string>();
    for (const members of Object.values(compass.reviewCone)) {
      for (const name of members) cone.add(name);
    }
    this.publish({
      phase: 'ready',
      targets: compass.targets,
      panel,
      nodes,
      edges,
      keptNames: new Set(compass.keptNodes),
      axiomNames: new Set(compass.axiomNodes),
      compass,
      counts: {
        cone: cone.size,
        kept: compass.keptNodes.length,
        reduction: renderReduction(compass.combinedReduction),
      },
      layoutMode: 'hierarchical',
      error: null,
    });
    return true;
  }

  async clearTargets(): Promise<void> {
    await this.applyPanel(this.snapshot.panel);
  }

  /** Re-fetch the open (untargeted) view with the given panel state. */
  async applyPanel(panel: FilterPanelState): Promise<boolean> {
    const patternProblem = namePatternError(panel.namePattern);
    if (patternProblem !== null) {
      this.pushToast('error', patternProblem);
      return false;
    }
    const normalized = normalizePanel(panel);
    if (this.snapshot.targets.length > 0) {
      return this.selectTargets(this.snapshot.targets, normalized);
    }
    const sequence = this.beginRequest();
    try {
      const graph = await this.api.graph(encodeViewQuery(normalized, []));
      if (sequence !== this.requestSequence) return false;
      this.publish({
        phase: 'ready',
        targets: [],
        panel: normalized,
        nodes: graph.nodes,
        edges: graph.edges,
        keptNames: new Set(),
        axiomNames: new Set(),
        compass: null,
        counts: null,
        layoutMode: 'force',
        error: null,
      });
      return true;
    } catch (error) {
      this.failRequest(sequence, 'graph fetch failed', error);
      return false;
    }
  }

  /**
   * Edit a node's confidence with optimistic local update. The edit shows
   * immediately; a rejected request rolls the value back and surfaces the
   * error. On success the server-confirmed record replaces the guess.
   */
  async editConfidence(name: string, level: ConfidenceLevel): Promise<boolean> {
    const index = this.snapshot.nodes.findIndex((node) => node.name === name);
    if (index < 0) {
      this.pushToast('error', `${name} is not in the current view`);
      return false;
    }
    const previous = this.snapshot.nodes[index];
    const optimistic = [...this.snapshot.nodes];
    optimistic[index] = {
      ...previous,
      metadata: { ...previous.metadata, confidence: level },
    };
    this.publish({ nodes: optimistic });
    try {
      const confirmed = await this.api.patchMetadata(name, { confidence: level });
      const nodes = [...this.snapshot.nodes];
      const at = nodes.findIndex((node) => node.name === name);
      if (at >= 0) {
        nodes[at] = { ...nodes[at], metadata: confirmed };
        this.publish({ nodes });
      }
      return true;
    } catch (error) {
      const nodes = [...this.snapshot.nodes];
      const at = nodes.findIndex((node) => node.name === name);
      if (at >= 0) {
        nodes[at] = previous;
        this.publish({ nodes });
      }
      this.pushToast('error', describeError('confidence update failed', error));
      return false;
    }
  }

  /** Whether the current view should draw edges at all. */
  edgesVisible(threshold = 3000): boolean {
    if (this.snapshot.targets.length > 0) return true;
    if (panelIsActive(this.snapshot.panel)) return true;
    return this.snapshot.nodes.length <= threshold;
  }

  private beginRequest(): number {
    this.requestSequence += 1;
    this.publish({ phase: 'loading' });
    return this.requestSequence;
  }

  private failRequest(sequence: number, prefix: string, error: unknown): void {
    if (sequence !== this.requestSequence) return;
    const message = describeError(prefix, error);
    this.publish({
      phase: this.snapshot.nodes.length > 0 ? 'ready' : 'error',
      error: message,
      toasts: [...this.snapshot.toasts, makeToast('error', message)],
    });
  }
}

function describeError(prefix: string, error: unknown): string {
  if (error instanceof ApiError) return `${prefix}: ${error.message}`;
  if (error instanceof Error) return `${prefix}: ${error.message}`;
  return `${prefix}: ${String(error)}`;
}
