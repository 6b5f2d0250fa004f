import {
  decodeViewQuery,
  encodeViewQuery,
  type DecodedViewQuery,
  type FilterPanelState,
} from './filters.js';

/**
 * The address bar carries the same query parameters the graph endpoint
 * accepts, so view state survives reload and a copied link reproduces the
 * view byte for byte.
 */
export function stateToSearch(panel: FilterPanelState, targets: string[]): string {
  const params = encodeViewQuery(panel, targets);
  const encoded = params.toString();
  return encoded === '' ? '' : `?${encoded}`;
}

export function searchToState(search: string): DecodedViewQuery {
  const raw = search.startsWith('?') ? search.slice(1) : search;
  return decodeViewQuery(new URLSearchParams(raw));
}

/** Replace the current history entry without adding navigation steps. */
export function syncUrl(panel: FilterPanelState, targets: string[]): void {
  if (typeof window === 'undefined' || !window.history) return;
  const search = stateToSearch(panel, targets);
  const next = `${window.location.pathname}${search}`;
  const current = `${window.location.pathname}${window.location.search}`;
  if (next !== current) {
    window.history.replaceState(null, '', next);
  }
}
