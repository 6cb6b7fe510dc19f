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

#include "kernels_common.hpp"

namespace voscade::kernels::detail {
namespace {

uint64_t count_nonzero_scalar(const uint8_t* p, size_t n) {
    uint64_t c = 0;
    for (size_t i = 0; i < n; ++i) c += p[i];
    return c;
}

void overlap_counts_scalar(const uint8_t* a, const uint8_t* b, size_t n,
                           uint64_t& inter, uint64_t& uni) {
    uint64_t in = 0, un = 0;
    for (size_t i = 0; i < n; ++i) {
        in += a[i] & b[i];
        un += a[i] | b[i];
    }
    inter = in;
    uni = un;
}

float table_sum_rgb_scalar(const uint8_t* rgb, size_t npx, const float* table,
                           int bins_log2) {
    float acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    for (size_t i = 0; i < npx; ++i)
        acc[i & 7] += table[rgb_bin(rgb + 3 * i, bins_log2)];
    return reduce8(acc);
}

void table_map_rgb_scalar(const uint8_t* rgb, size_t npx, const float* table,
                          int bins_log2, float* out) {
    for (size_t i = 0; i < npx; ++i)
        out[i] = table[rgb_bin(rgb + 3 * i, bins_log2)];
}

void posterior_map_rgb_scalar(const uint8_t* rgb, size_t npx, const float* fg_table,
                              const float* bg_table, int bins_log2, float* out) {
    for (size_t i = 0; i < npx; ++i) {
        int bin = rgb_bin(rgb + 3 * i, bins_log2);
        float fg = fg_table[bin];
        float bg = bg_table[bin];
        out[i] = fg / (fg + bg);
    }
}

void mul_scalar(const float* a, const float* b, float* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void threshold_ge_scalar(const float* p, size_t n, float t, uint8_t* out) {
    for (size_t i = 0; i < n; ++i) out[i] = p[i] >= t ? 1 : 0;
}

void bilinear_map_scalar(const float* src, int sw, int sh, float* dst, int dw, int dh,
                         float sx0, float sxstep, float sy0, float systep) {
    for (int dy = 0; dy < dh; ++dy) {
        float sy = sy0 + float(dy) * systep;
        float* row = dst + size_t(dy) * dw;
        for (int dx = 0; dx < dw; ++dx) {
            float sx = sx0 + float(dx) * sxstep;
            row[dx] = bilinear_at(src, sw, sh, sx, sy);
        }
    }
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable t = {
        count_nonzero_scalar,  overlap_counts_scalar, table_sum_rgb_scalar,
        table_map_rgb_scalar,  posterior_map_rgb_scalar,
        mul_scalar,            threshold_ge_scalar,   bilinear_map_scalar,
    };
    return t;
}

}  // namespace voscade::kernels::detail
