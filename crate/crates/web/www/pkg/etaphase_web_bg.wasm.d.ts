/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_heatmap_free: (a: number, b: number) => void;
export const __wbg_sweep_free: (a: number, b: number) => void;
export const gaussian_sweep: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const heatmap_max: (a: number) => number;
export const heatmap_min: (a: number) => number;
export const heatmap_np: (a: number) => number;
export const heatmap_nx: (a: number) => number;
export const heatmap_p_max: (a: number) => number;
export const heatmap_p_min: (a: number) => number;
export const heatmap_self_purity: (a: number) => number;
export const heatmap_values: (a: number) => [number, number];
export const heatmap_x_max: (a: number) => number;
export const heatmap_x_min: (a: number) => number;
export const sweep_etas: (a: number) => [number, number];
export const sweep_purities: (a: number) => [number, number];
export const sweep_verdicts: (a: number) => [number, number];
export const transition: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const wigner_heatmap: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const sweep_threshold: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
