/* tslint:disable */
/* eslint-disable */

/**
 * Rendered magnitude map (RGBA, row 0 at the top) and its report.
 */
export class SceneView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly height: number;
    /**
     * The `targets.json` report.
     */
    readonly report: string;
    readonly rgba: Uint8Array;
    readonly width: number;
}

export function presetConfig(name: string): string | undefined;

export function presetNames(): string[];

export function simulateScene(config_json: string): SceneView;

export function sweepFrequencies(config_json: string, max_m: number): string;

export function verifyScenario(config_json: string, tol: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_sceneview_free: (a: number, b: number) => void;
    readonly presetConfig: (a: number, b: number) => [number, number];
    readonly presetNames: () => [number, number];
    readonly sceneview_height: (a: number) => number;
    readonly sceneview_report: (a: number) => [number, number];
    readonly sceneview_rgba: (a: number) => [number, number];
    readonly sceneview_width: (a: number) => number;
    readonly simulateScene: (a: number, b: number) => [number, number, number];
    readonly sweepFrequencies: (a: number, b: number, c: number) => [number, number, number, number];
    readonly verifyScenario: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_drop_slice: (a: number, b: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
