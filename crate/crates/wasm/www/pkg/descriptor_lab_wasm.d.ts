/* tslint:disable */
/* eslint-disable */

/**
 * CHSH winning measure and per-setting branch measures for the given angles.
 */
export function chsh(a: number, a_prime: number, b: number, b_prime: number): string;

/**
 * Winning measure as Bob's two angles are rotated together through a full turn.
 */
export function chshSweep(a: number, a_prime: number, b: number, b_prime: number, samples: number): string;

/**
 * Descriptor components after every gate of a circuit file.
 */
export function stepTrace(circuit_json: string): string;

/**
 * Teleports `cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>` and reports Bob's final density.
 */
export function teleport(theta: number, phi: number, decohere: boolean, hops: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly chsh: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly chshSweep: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly stepTrace: (a: number, b: number) => [number, number, number, number];
    readonly teleport: (a: number, b: number, c: number, d: number) => [number, number, number, number];
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
