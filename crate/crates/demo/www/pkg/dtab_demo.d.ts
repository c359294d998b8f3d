/* tslint:disable */
/* eslint-disable */

/**
 * Analyzes a table in `.dtab` text.
 */
export function analyze_table(text: string): string;

/**
 * Builds the table of a line arrangement (`name a b c` per line). The
 * response carries float coefficients for drawing and the decision of each
 * realized pattern.
 */
export function line_arrangement(text: string, decisions: string, seed: number): string;

/**
 * Sign vectors of univariate polynomials (`name c0 c1 ...` per line) and
 * approximate root locations.
 */
export function poly_arrangement(text: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze_table: (a: number, b: number) => [number, number];
    readonly line_arrangement: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly poly_arrangement: (a: number, b: number) => [number, number];
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
