export type ToastKind = 'error' | 'info';

export interface Toast {
  id: number;
  kind: ToastKind;
  message: string;
}

let nextId = 1;

export function makeToast(kind: ToastKind, message: string): Toast {
  nextId += 1;
  return { id: nextId, kind, message };
}
