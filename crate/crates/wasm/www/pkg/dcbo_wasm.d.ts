/* tslint:disable */
/* eslint-disable */

/**
 * Analyzes pasted source (one or more classes) as a single project.
 */
export function analyze_source(source: string): string;

/**
 * Generates and analyzes the synthetic suite in memory. Returns the rows,
 * the CSV report and the trendline chart.
 */
export function experiment_suite(pen_count: number, step: number): string;

/**
 * Friedman test of `metric` ("mai" or "dmai") between the projects below
 * and above `threshold` in the synthetic suite.
 */
export function friedman(pen_count: number, step: number, threshold: number, metric: string, boundary: string, alpha: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze_source: (a: number, b: number) => [number, number];
    readonly experiment_suite: (a: number, b: number) => [number, number];
    readonly friedman: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
