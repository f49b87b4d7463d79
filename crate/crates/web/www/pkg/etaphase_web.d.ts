/* tslint:disable */
/* eslint-disable */

export class Heatmap {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    max(): number;
    min(): number;
    np(): number;
    nx(): number;
    p_max(): number;
    p_min(): number;
    self_purity(): number;
    /**
     * Row-major, row `j` is `x_j`.
     */
    values(): Float64Array;
    x_max(): number;
    x_min(): number;
}

export class Sweep {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    etas(): Float64Array;
    /**
     * `NaN` where the state is classical.
     */
    purities(): Float64Array;
    threshold(): number;
    /**
     * 0 classical, 1 mixed quantum, 2 pure quantum, 3 boundary.
     */
    verdicts(): Uint8Array;
}

/**
 * Single-mode Gaussian with `Var x = σx²`, `Var p = σp²`, correlation `r`,
 * classified at `steps` values of η evenly spaced in `(0, eta_max]`.
 */
export function gaussian_sweep(sigma_x: number, sigma_p: number, r: number, eta_max: number, steps: number): Sweep;

/**
 * One line: implied purity and verdict.
 */
export function transition(purity: number, hbar: number, eta: number, modes: number): string;

/**
 * `W_ηψ` of a preset on a `len`-point grid spanning `[−length/2, length/2)`.
 */
export function wigner_heatmap(state: string, width: number, eta: number, length: number, len: number): Heatmap;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_heatmap_free: (a: number, b: number) => void;
    readonly __wbg_sweep_free: (a: number, b: number) => void;
    readonly gaussian_sweep: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly heatmap_max: (a: number) => number;
    readonly heatmap_min: (a: number) => number;
    readonly heatmap_np: (a: number) => number;
    readonly heatmap_nx: (a: number) => number;
    readonly heatmap_p_max: (a: number) => number;
    readonly heatmap_p_min: (a: number) => number;
    readonly heatmap_self_purity: (a: number) => number;
    readonly heatmap_values: (a: number) => [number, number];
    readonly heatmap_x_max: (a: number) => number;
    readonly heatmap_x_min: (a: number) => number;
    readonly sweep_etas: (a: number) => [number, number];
    readonly sweep_purities: (a: number) => [number, number];
    readonly sweep_verdicts: (a: number) => [number, number];
    readonly transition: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly wigner_heatmap: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly sweep_threshold: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
