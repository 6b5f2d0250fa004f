// Wire types for the depcompass HTTP API. Field names mirror the JSON
// payloads exactly; no client-side reinterpretation happens here.

export type DeclKind =
  | 'theorem'
  | 'definition'
  | 'inductive'
  | 'structure'
  | 'abbreviation'
  | 'axiom';

export type DepSite = 'type' | 'value';

export type ConfidenceLevel = 'unreviewed' | 'low' | 'medium' | 'high' | 'verified';

export type ProgressState = 'notStarted' | 'inProgress' | 'complete';

export const CONFIDENCE_LEVELS: ConfidenceLevel[] = [
  'unreviewed',
  'low',
  'medium',
  'high',
  'verified',
];

export const DECL_KINDS: DeclKind[] = [
  'theorem',
  'definition',
  'inductive',
  'structure',
  'abbreviation',
  'axiom',
];

export const AGG_KINDS = ['theorem', 'definition', 'axiom'] as const;

export const PROGRESS_STATES: ProgressState[] = [
  'notStarted',
  'inProgress',
  'complete',
];

export const DEP_SITES: DepSite[] = ['type', 'value'];

export const EDGE_KINDS = [
  'thm_type_to_def',
  'thm_type_to_thm',
  'thm_value_to_def',
  'thm_value_to_thm',
  'def_type_to_def',
  'def_type_to_thm',
  'def_value_to_def',
  'def_value_to_thm',
] as const;

export interface NodeMetadataPayload {
  name: string;
  confidence: ConfidenceLevel;
  proofProgress: ProgressState;
  defProgress: ProgressState;
  hasSorry: boolean;
  lastModified: string | null;
}

export interface GraphNodePayload {
  name: string;
  kind: DeclKind;
  module: string;
  metadata: NodeMetadataPayload;
}

export interface GraphEdgePayload {
  source: string;
  target: string;
  site: DepSite;
  kind: string;
  pruned: boolean;
}

export interface GraphPayload {
  project: { name: string; revision: string | null };
  nodes: GraphNodePayload[];
  edges: GraphEdgePayload[];
  provenance: unknown;
}

export interface CompassOptionsPayload {
  includeAllAxioms: boolean;
  restrictAxiomsToCone: boolean;
}

export interface CompassResponse {
  targets: string[];
  keptNodes: string[];
  axiomNodes: string[];
  reviewCone: Record<string, string[]>;
  prunedEdgeCount: number;
  perTargetReduction: Record<string, number>;
  combinedReduction: number;
  options: CompassOptionsPayload;
}

export interface HealthResponse {
  status: string;
  graphNodeCount: number;
  schemaVersion: number;
}
