import type { ConfidenceLevel, DeclKind, DepSite, ProgressState } from './types.js';

// Panel model for the filter axes a user can toggle. The scope axis is
// not part of the panel: target selection owns it (selected targets fetch
// the graph with scope=reviewConeOf). An empty list or empty string means
// the axis is off and is omitted from the encoding entirely; the server
// rejects present-but-empty axes.
export interface FilterPanelState {
  declKinds: DeclKind[];
  aggKinds: string[];
  proofProgress: ProgressState[];
  defProgress: ProgressState[];
  edgeKinds: string[];
  depSites: DepSite[];
  confidenceAtLeast: ConfidenceLevel | null;
  confidenceAtMost: ConfidenceLevel | null;
  hasSorry: boolean | null;
  namespacePrefix: string;
  namePattern: string;
}

export function emptyPanel(): FilterPanelState {
  return {
    declKinds: [],
    aggKinds: [],
    proofProgress: [],
    defProgress: [],
    edgeKinds: [],
    depSites: [],
    confidenceAtLeast: null,
    confidenceAtMost: null,
    hasSorry: null,
    namespacePrefix: '',
    namePattern: '',
  };
}

/** True when at least one axis is active. */
export function panelIsActive(panel: FilterPanelState): boolean {
  return (
    panel.declKinds.length > 0 ||
    panel.aggKinds.length > 0 ||
    panel.proofProgress.length > 0 ||
    panel.defProgress.length > 0 ||
    panel.edgeKinds.length > 0 ||
    panel.depSites.length > 0 ||
    panel.confidenceAtLeast !== null ||
    panel.confidenceAtMost !== null ||
    panel.hasSorry !== null ||
    panel.namespacePrefix !== '' ||
    panel.namePattern !== ''
  );
}

/**
 * Name globs support only `*` and `?`; anything that looks like a
 * character class is rejected inline before it ever reaches the server.
 */
export function namePatternError(pattern: string): string | null {
  if (pattern === '') return null;
  if (/[[\]]/.test(pattern)) {
    return 'name pattern supports only * and ? wildcards';
  }
  return null;
}

function sortedUnique(values: string[]): string[] {
  return [...new Set(values)].sort();
}

/** Normalize list axes to sorted unique members so encodings are stable. */
export function normalizePanel(panel: FilterPanelState): FilterPanelState {
  return {
    ...panel,
    declKinds: sortedUnique(panel.declKinds) as DeclKind[],
    aggKinds: sortedUnique(panel.aggKinds),
    proofProgress: sortedUnique(panel.proofProgress) as ProgressState[],
    defProgress: sortedUnique(panel.defProgress) as ProgressState[],
    edgeKinds: sortedUnique(panel.edgeKinds),
    depSites: sortedUnique(panel.depSites) as DepSite[],
  };
}

const SET_AXES: Array<[string, keyof FilterPanelState]> = [
  ['declKind', 'declKinds'],
  ['aggKind', 'aggKinds'],
  ['proofProgress', 'proofProgress'],
  ['defProgress', 'defProgress'],
  ['edgeKind', 'edgeKinds'],
  ['depSite', 'depSites'],
];

/**
 * Encode panel state plus target selection into the query parameters the
 * service understands. The same encoding doubles as the shareable URL
 * query, so a copied URL reproduces the view exactly.
 */
export function encodeViewQuery(
  panel: FilterPanelState,
  targets: string[],
): URLSearchParams {
  const normalized = normalizePanel(panel);
  const params = new URLSearchParams();
  for (const [param, key] of SET_AXES) {
    const values = normalized[key] as string[];
    if (values.length > 0) params.set(param, values.join(','));
  }
  if (normalized.confidenceAtLeast !== null) {
    params.set('confidenceAtLeast', normalized.confidenceAtLeast);
  }
  if (normalized.confidenceAtMost !== null) {
    params.set('confidenceAtMost', normalized.confidenceAtMost);
  }
  if (normalized.hasSorry !== null) {
    params.set('hasSorry', normalized.hasSorry ? 'true' : 'false');
  }
  if (normalized.namespacePrefix !== '') {
    params.set('namespacePrefix', normalized.namespacePrefix);
  }
  if (normalized.namePattern !== '') {
    params.set('namePattern', normalized.namePattern);
  }
  if (targets.length > 0) {
    params.set('scope', 'reviewConeOf');
    params.set('targets', sortedUnique(targets).join(','));
  }
  return params;
}

export interface DecodedViewQuery {
  panel: FilterPanelState;
  targets: string[];
}

/** Inverse of encodeViewQuery; tolerant of missing parameters. */
export function decodeViewQuery(params: URLSearchParams): DecodedViewQuery {
  const panel = emptyPanel();
  for (const [param, key] of SET_AXES) {
    const raw = params.get(param);
    if (raw) {
      (panel[key] as string[]) = sortedUnique(raw.split(',').filter(Boolean));
    }
  }
  const atLeast = params.get('confidenceAtLeast');
  if (atLeast) panel.confidenceAtLeast = atLeast as ConfidenceLevel;
  const atMost = params.get('confidenceAtMost');
  if (atMost) panel.confidenceAtMost = atMost as ConfidenceLevel;
  const hasSorry = params.get('hasSorry');
  if (hasSorry === 'true') panel.hasSorry = true;
  if (hasSorry === 'false') panel.hasSorry = false;
  panel.namespacePrefix = params.get('namespacePrefix') ?? '';
  panel.namePattern = params.get('namePattern') ?? '';

  const targetsRaw = params.get('targets');
  const targets = targetsRaw
    ? sortedUnique(targetsRaw.split(',').filter(Boolean))
    : [];
  return { panel, targets };
}
