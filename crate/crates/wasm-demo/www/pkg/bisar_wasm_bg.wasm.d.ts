/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_sceneview_free: (a: number, b: number) => void;
export const presetConfig: (a: number, b: number) => [number, number];
export const presetNames: () => [number, number];
export const sceneview_height: (a: number) => number;
export const sceneview_report: (a: number) => [number, number];
export const sceneview_rgba: (a: number) => [number, number];
export const sceneview_width: (a: number) => number;
export const simulateScene: (a: number, b: number) => [number, number, number];
export const sweepFrequencies: (a: number, b: number, c: number) => [number, number, number, number];
export const verifyScenario: (a: number, b: number, c: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_drop_slice: (a: number, b: number) => void;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
