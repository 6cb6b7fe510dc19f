/*
 Copyright 2026 The voscade authors
 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <cstddef>
#include <cstdint>

namespace voscade::kernels {

// Pixel-loop kernels behind the mask/score/resample hot paths. Every kernel
// has a scalar reference implementation and, on x86-64 with AVX2, a vector
// variant selected at runtime. The two variants are bit-exact for every
// kernel: float kernels fix the accumulation pattern (8 lanes, fixed
// reduction order) and are compiled with FP contraction off, so selecting a
// different backend never changes results.
//
// Backend selection: AVX2 is used when the CPU supports it, unless the
// environment variable VOSCADE_SIMD=scalar forces the reference path.

enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name();
bool avx2_available();

/// Test hook: pin the backend for subsequent calls. Throws std::runtime_error
/// if the requested backend is unavailable on this CPU. Not thread-safe.
void force_backend(Backend b);

/// Number of nonzero bytes; inputs must hold only 0 or 1.
uint64_t count_nonzero(const uint8_t* p, size_t n);

/// Intersection and union pixel counts of two 0/1 masks of equal length.
void overlap_counts(const uint8_t* a, const uint8_t* b, size_t n,
                    uint64_t& inter, uint64_t& uni);

// Quantized-color table kernels. For each interleaved RGB pixel the bin
// index is ((r >> s) << 2k) | ((g >> s) << k) | (b >> s) with k = bins_log2
// and s = 8 - k; tables hold 2^(3k) floats.

/// Sum of table values over all pixels (8-lane accumulation order).
float table_sum_rgb(const uint8_t* rgb, size_t npx, const float* table, int bins_log2);

/// Per-pixel table value.
void table_map_rgb(const uint8_t* rgb, size_t npx, const float* table,
                   int bins_log2, float* out);

/// Per-pixel fg / (fg + bg) from two lookup tables.
void posterior_map_rgb(const uint8_t* rgb, size_t npx, const float* fg_table,
                       const float* bg_table, int bins_log2, float* out);

/// Elementwise product.
void mul(const float* a, const float* b, float* out, size_t n);

/// out[i] = p[i] >= t ? 1 : 0.
void threshold_ge(const float* p, size_t n, float t, uint8_t* out);

/// Bilinear resample of a single-channel float image under the affine map
/// sx = sx0 + dx * sxstep, sy = sy0 + dy * systep, with clamp-to-edge
/// sampling. dst is dw x dh row-major.
void bilinear_map(const float* src, int sw, int sh, float* dst, int dw, int dh,
                  float sx0, float sxstep, float sy0, float systep);

}  // namespace voscade::kernels
