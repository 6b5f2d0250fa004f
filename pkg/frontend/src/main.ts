import { ApiClient } from './api.js';
import {
  emptyPanel,
  namePatternError,
  type FilterPanelState,
} from './filters.js';
import { forceLayout, hierarchicalLayout, type NodeLayout } from './layout.js';
import { countsLabel, renderSvg } from './render.js';
import { ViewerStore, type ViewerSnapshot } from './store.js';
import { searchToState, syncUrl } from './urlState.js';
import {
  AGG_KINDS,
  CONFIDENCE_LEVELS,
  DECL_KINDS,
  DEP_SITES,
  EDGE_KINDS,
  PROGRESS_STATES,
  type ConfidenceLevel,
  type DeclKind,
  type DepSite,
  type GraphNodePayload,
  type ProgressState,
} from './types.js';

function element<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function checkboxGroup(
  container: HTMLElement,
  legend: string,
  axis: string,
  values: readonly string[],
): void {
  const block = element('fieldset', 'axis-group');
  block.append(element('legend', undefined, legend));
  for (const value of values) {
    const label = element('label', 'axis-option');
    const input = element('input');
    input.type = 'checkbox';
    input.dataset.axis = axis;
    input.value = value;
    label.append(input, document.createTextNode(value));
    block.append(label);
  }
  container.append(block);
}

function confidenceSelect(
  container: HTMLElement,
  legend: string,
  id: string,
): void {
  const block = element('fieldset', 'axis-group');
  block.append(element('legend', undefined, legend));
  const select = element('select');
  select.id = id;
  select.append(new Option('any', ''));
  for (const level of CONFIDENCE_LEVELS) select.append(new Option(level, level));
  block.append(select);
  container.append(block);
}

function readPanel(root: HTMLElement): FilterPanelState {
  const panel = emptyPanel();
  const picks = (axis: string): string[] =>
    [...root.querySelectorAll<HTMLInputElement>(`input[data-axis="${axis}"]`)]
      .filter((input) => input.checked)
      .map((input) => input.value);
  panel.declKinds = picks('declKind') as DeclKind[];
  panel.aggKinds = picks('aggKind');
  panel.proofProgress = picks('proofProgress') as ProgressState[];
  panel.defProgress = picks('defProgress') as ProgressState[];
  panel.edgeKinds = picks('edgeKind');
  panel.depSites = picks('depSite') as DepSite[];
  const atLeast = (root.querySelector('#confidence-at-least') as HTMLSelectElement).value;
  if (atLeast) panel.confidenceAtLeast = atLeast as ConfidenceLevel;
  const atMost = (root.querySelector('#confidence-at-most') as HTMLSelectElement).value;
  if (atMost) panel.confidenceAtMost = atMost as ConfidenceLevel;
  const sorry = (root.querySelector('#has-sorry') as HTMLSelectElement).value;
  if (sorry === 'true') panel.hasSorry = true;
  if (sorry === 'false') panel.hasSorry = false;
  panel.namespacePrefix = (
    root.querySelector('#namespace-prefix') as HTMLInputElement
  ).value.trim();
  panel.namePattern = (
    root.querySelector('#name-pattern') as HTMLInputElement
  ).value.trim();
  return panel;
}

function writePanel(root: HTMLElement, panel: FilterPanelState): void {
  const lists: Array<[string, string[]]> = [
    ['declKind', panel.declKinds],
    ['aggKind', panel.aggKinds],
    ['proofProgress', panel.proofProgress],
    ['defProgress', panel.defProgress],
    ['edgeKind', panel.edgeKinds],
    ['depSite', panel.depSites],
  ];
  for (const [axis, values] of lists) {
    const wanted = new Set(values);
    for (const input of root.querySelectorAll<HTMLInputElement>(
      `input[data-axis="${axis}"]`,
    )) {
      input.checked = wanted.has(input.value);
    }
  }
  (root.querySelector('#confidence-at-least') as HTMLSelectElement).value =
    panel.confidenceAtLeast ?? '';
  (root.querySelector('#confidence-at-most') as HTMLSelectElement).value =
    panel.confidenceAtMost ?? '';
  (root.querySelector('#has-sorry') as HTMLSelectElement).value =
    panel.hasSorry === null ? '' : String(panel.hasSorry);
  (root.querySelector('#namespace-prefix') as HTMLInputElement).value =
    panel.namespacePrefix;
  (root.querySelector('#name-pattern') as HTMLInputElement).value =
    panel.namePattern;
}

function buildDetail(
  node: GraphNodePayload,
  store: ViewerStore,
): HTMLElement {
  const panel = element('div', 'detail-body');
  panel.append(element('h3', undefined, node.name));
  panel.append(element('p', 'detail-line', `${node.kind} in ${node.module}`));
  const meta = node.metadata;
  panel.append(
    element(
      'p',
      'detail-line',
      `proof ${meta.proofProgress} / definition ${meta.defProgress}` +
        (meta.hasSorry ? ' / has sorry' : ''),
    ),
  );
  if (meta.lastModified) {
    panel.append(element('p', 'detail-line', `updated ${meta.lastModified}`));
  }
  const label = element('label', 'detail-line', 'confidence ');
  const select = element('select');
  for (const level of CONFIDENCE_LEVELS) {
    select.append(new Option(level, level, false, level === meta.confidence));
  }
  select.addEventListener('change', () => {
    void store.editConfidence(node.name, select.value as ConfidenceLevel);
  });
  label.append(select);
  panel.append(label);
  return panel;
}

function start(): void {
  const app = document.getElementById('app');
  if (!app) throw new Error('missing #app container');

  const topbar = element('header', 'topbar');
  const title = element('span', 'brand', 'depcompass');
  const project = element('span', 'project-label');
  const counts = element('span', 'counts-label');
  const targetInput = element('input', 'target-input');
  targetInput.placeholder = 'target names, comma separated';
  targetInput.setAttribute('list', 'node-names');
  const datalist = element('datalist');
  datalist.id = 'node-names';
  const scopeButton = element('button', undefined, 'scope');
  const clearButton = element('button', undefined, 'clear');
  topbar.append(
    title,
    project,
    targetInput,
    datalist,
    scopeButton,
    clearButton,
    counts,
  );

  const filterPanelEl = element('aside', 'filter-panel');
  checkboxGroup(filterPanelEl, 'declaration kind', 'declKind', DECL_KINDS);
  checkboxGroup(filterPanelEl, 'aggregate kind', 'aggKind', AGG_KINDS);
  checkboxGroup(filterPanelEl, 'proof progress', 'proofProgress', PROGRESS_STATES);
  checkboxGroup(filterPanelEl, 'definition progress', 'defProgress', PROGRESS_STATES);
  checkboxGroup(filterPanelEl, 'edge kind', 'edgeKind', EDGE_KINDS);
  checkboxGroup(filterPanelEl, 'dependency site', 'depSite', DEP_SITES);
  confidenceSelect(filterPanelEl, 'confidence at least', 'confidence-at-least');
  confidenceSelect(filterPanelEl, 'confidence at most', 'confidence-at-most');
  const sorryBlock = element('fieldset', 'axis-group');
  sorryBlock.append(element('legend', undefined, 'has sorry'));
  const sorrySelect = element('select');
  sorrySelect.id = 'has-sorry';
  sorrySelect.append(new Option('any', ''), new Option('yes', 'true'), new Option('no', 'false'));
  sorryBlock.append(sorrySelect);
  filterPanelEl.append(sorryBlock);
  const textBlock = element('fieldset', 'axis-group');
  textBlock.append(element('legend', undefined, 'name filters'));
  const prefixInput = element('input');
  prefixInput.id = 'namespace-prefix';
  prefixInput.placeholder = 'namespace prefix';
  const patternInput = element('input');
  patternInput.id = 'name-pattern';
  patternInput.placeholder = 'name glob (* and ?)';
  const patternHint = element('p', 'pattern-hint');
  textBlock.append(prefixInput, patternInput, patternHint);
  filterPanelEl.append(textBlock);
  const applyButton = element('button', 'apply-button', 'apply filters');
  filterPanelEl.append(applyButton);

  const graphPane = element('main', 'graph-pane');
  const edgeNotice = element('p', 'edge-notice');
  const svgHost = element('div', 'svg-host');
  graphPane.append(edgeNotice, svgHost);

  const detailPane = element('aside', 'detail-pane');
  const toastHost = element('div', 'toast-host');

  app.append(topbar, filterPanelEl, graphPane, detailPane, toastHost);

  const store = new ViewerStore(new ApiClient(window.location.origin));
  const shownToasts = new Set<number>();

  const rebuild = (snapshot: ViewerSnapshot): void => {
    project.textContent = snapshot.projectName;
    counts.textContent = countsLabel(snapshot.counts);
    targetInput.value = snapshot.targets.join(',');
    writePanel(filterPanelEl, snapshot.panel);
    patternHint.textContent =
      namePatternError(snapshot.panel.namePattern) ?? '';

    datalist.replaceChildren(
      ...snapshot.nodes.map((node) => new Option(node.name)),
    );

    const names = snapshot.nodes.map((node) => node.name);
    const edges = snapshot.edges.map((edge) => ({
      source: edge.source,
      target: edge.target,
      pruned: edge.pruned,
    }));
    const layout: NodeLayout =
      snapshot.layoutMode === 'hierarchical'
        ? hierarchicalLayout(names, edges, snapshot.targets)
        : forceLayout(names, edges);
    const drawEdges = store.edgesVisible();
    edgeNotice.textContent = drawEdges
      ? ''
      : 'edges hidden for large views; pick a target or apply a filter';
    svgHost.innerHTML = renderSvg(snapshot.nodes, snapshot.edges, layout, {
      drawEdges,
      keptNames: snapshot.keptNames,
      targets: new Set(snapshot.targets),
    });

    for (const toast of snapshot.toasts) {
      if (shownToasts.has(toast.id)) continue;
      shownToasts.add(toast.id);
      const el = element('div', `toast ${toast.kind}`, toast.message);
      toastHost.append(el);
      window.setTimeout(() => {
        el.remove();
        store.dismissToast(toast.id);
      }, 6000);
    }

    if (snapshot.phase === 'ready') {
      syncUrl(snapshot.panel, snapshot.targets);
    }
  };

  store.subscribe(rebuild);

  svgHost.addEventListener('click', (event) => {
    const group = (event.target as Element).closest('g.node');
    if (!group) return;
    const name = group.getAttribute('data-name');
    const node = store.state.nodes.find((candidate) => candidate.name === name);
    if (!node) return;
    detailPane.replaceChildren(buildDetail(node, store));
  });

  scopeButton.addEventListener('click', () => {
    const names = targetInput.value
      .split(',')
      .map((part) => part.trim())
      .filter(Boolean);
    void store.selectTargets(names);
  });
  clearButton.addEventListener('click', () => {
    targetInput.value = '';
    void store.clearTargets();
  });
  applyButton.addEventListener('click', () => {
    void store.applyPanel(readPanel(filterPanelEl));
  });
  patternInput.addEventListener('input', () => {
    patternHint.textContent = namePatternError(patternInput.value.trim()) ?? '';
  });

  window.addEventListener('popstate', () => {
    const { panel, targets } = searchToState(window.location.search);
    void store.initialize(targets, panel).catch((error) => {
      store.pushToast('error', `reload failed: ${String(error)}`);
    });
  });

  const initial = searchToState(window.location.search);
  void store.initialize(initial.targets, initial.panel).catch((error) => {
    store.pushToast('error', `startup failed: ${String(error)}`);
  });
}

start();
