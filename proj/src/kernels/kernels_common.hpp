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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>

// Internal to the kernel backends. The helpers here define the exact
// arithmetic both backends must reproduce; vector code may only regroup
// pixels into lanes, never change per-pixel operation order. Both backend
// translation units are compiled with -ffp-contract=off.

namespace voscade::kernels::detail {

struct KernelTable {
    uint64_t (*count_nonzero)(const uint8_t*, size_t);
    void (*overlap_counts)(const uint8_t*, const uint8_t*, size_t, uint64_t&, uint64_t&);
    float (*table_sum_rgb)(const uint8_t*, size_t, const float*, int);
    void (*table_map_rgb)(const uint8_t*, size_t, const float*, int, float*);
    void (*posterior_map_rgb)(const uint8_t*, size_t, const float*, const float*, int, float*);
    void (*mul)(const float*, const float*, float*, size_t);
    void (*threshold_ge)(const float*, size_t, float, uint8_t*);
    void (*bilinear_map)(const float*, int, int, float*, int, int, float, float, float, float);
};

const KernelTable& scalar_table();
#if defined(VOSCADE_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

inline int rgb_bin(const uint8_t* px, int bins_log2) {
    int s = 8 - bins_log2;
    return ((px[0] >> s) << (2 * bins_log2)) | ((px[1] >> s) << bins_log2) | (px[2] >> s);
}

/// Fixed reduction order for 8-lane float accumulators.
inline float reduce8(const float* acc) {
    float r = acc[0];
    for (int i = 1; i < 8; ++i) r += acc[i];
    return r;
}

/// The per-pixel bilinear formula both backends implement: lerp in x on the
/// two clamped rows, then lerp in y.
inline float bilinear_at(const float* src, int sw, int sh, float sx, float sy) {
    float fxf = std::floor(sx);
    float fyf = std::floor(sy);
    float fx = sx - fxf;
    float fy = sy - fyf;
    int x0 = std::clamp(static_cast<int>(fxf), 0, sw - 1);
    int x1 = std::clamp(static_cast<int>(fxf) + 1, 0, sw - 1);
    int y0 = std::clamp(static_cast<int>(fyf), 0, sh - 1);
    int y1 = std::clamp(static_cast<int>(fyf) + 1, 0, sh - 1);
    float p00 = src[size_t(y0) * sw + x0];
    float p01 = src[size_t(y0) * sw + x1];
    float p10 = src[size_t(y1) * sw + x0];
    float p11 = src[size_t(y1) * sw + x1];
    float h0 = p00 + (p01 - p00) * fx;
    float h1 = p10 + (p11 - p10) * fx;
    return h0 + (h1 - h0) * fy;
}

}  // namespace voscade::kernels::detail
