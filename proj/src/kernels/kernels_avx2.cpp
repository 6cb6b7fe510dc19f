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

#if defined(VOSCADE_HAVE_AVX2)

#include <immintrin.h>

namespace voscade::kernels::detail {
namespace {

// Lane l of every 8-wide block holds pixel 8j + l, matching the scalar
// reference's acc[i & 7] pattern exactly.

uint64_t count_nonzero_avx2(const uint8_t* p, size_t n) {
    __m256i acc = _mm256_setzero_si256();
    const __m256i zero = _mm256_setzero_si256();
    size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(v, zero));
    }
    alignas(32) uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    uint64_t c = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) c += p[i];
    return c;
}

void overlap_counts_avx2(const uint8_t* a, const uint8_t* b, size_t n,
                         uint64_t& inter, uint64_t& uni) {
    __m256i acc_in = _mm256_setzero_si256();
    __m256i acc_un = _mm256_setzero_si256();
    const __m256i zero = _mm256_setzero_si256();
    size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        acc_in = _mm256_add_epi64(acc_in, _mm256_sad_epu8(_mm256_and_si256(va, vb), zero));
        acc_un = _mm256_add_epi64(acc_un, _mm256_sad_epu8(_mm256_or_si256(va, vb), zero));
    }
    alignas(32) uint64_t li[4], lu[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(li), acc_in);
    _mm256_store_si256(reinterpret_cast<__m256i*>(lu), acc_un);
    uint64_t in = li[0] + li[1] + li[2] + li[3];
    uint64_t un = lu[0] + lu[1] + lu[2] + lu[3];
    for (; i < n; ++i) {
        in += a[i] & b[i];
        un += a[i] | b[i];
    }
    inter = in;
    uni = un;
}

// Loads the dwords starting at bytes 3i..3i+21 (one per pixel); the gather
// touches one byte past pixel i+7, so the vector loop stops 9 pixels early
// and the tail runs scalar.
inline __m256i gather_bins(const uint8_t* rgb, size_t i, int bins_log2) {
    const __m256i pix_off = _mm256_setr_epi32(0, 3, 6, 9, 12, 15, 18, 21);
    __m256i idx = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(3 * i)), pix_off);
    __m256i raw = _mm256_i32gather_epi32(reinterpret_cast<const int*>(rgb), idx, 1);
    const __m256i byte_mask = _mm256_set1_epi32(0xff);
    int s = 8 - bins_log2;
    __m256i r = _mm256_srli_epi32(_mm256_and_si256(raw, byte_mask), s);
    __m256i g = _mm256_srli_epi32(_mm256_and_si256(_mm256_srli_epi32(raw, 8), byte_mask), s);
    __m256i b = _mm256_srli_epi32(_mm256_and_si256(_mm256_srli_epi32(raw, 16), byte_mask), s);
    return _mm256_or_si256(_mm256_slli_epi32(r, 2 * bins_log2),
                           _mm256_or_si256(_mm256_slli_epi32(g, bins_log2), b));
}

float table_sum_rgb_avx2(const uint8_t* rgb, size_t npx, const float* table,
                         int bins_log2) {
    __m256 vacc = _mm256_setzero_ps();
    size_t i = 0;
    while (i + 9 <= npx) {
        __m256i bins = gather_bins(rgb, i, bins_log2);
        vacc = _mm256_add_ps(vacc, _mm256_i32gather_ps(table, bins, 4));
        i += 8;
    }
    alignas(32) float acc[8];
    _mm256_store_ps(acc, vacc);
    for (; i < npx; ++i)
        acc[i & 7] += table[rgb_bin(rgb + 3 * i, bins_log2)];
    return reduce8(acc);
}

void table_map_rgb_avx2(const uint8_t* rgb, size_t npx, const float* table,
                        int bins_log2, float* out) {
    size_t i = 0;
    while (i + 9 <= npx) {
        __m256i bins = gather_bins(rgb, i, bins_log2);
        _mm256_storeu_ps(out + i, _mm256_i32gather_ps(table, bins, 4));
        i += 8;
    }
    for (; i < npx; ++i)
        out[i] = table[rgb_bin(rgb + 3 * i, bins_log2)];
}

void posterior_map_rgb_avx2(const uint8_t* rgb, size_t npx, const float* fg_table,
                            const float* bg_table, int bins_log2, float* out) {
    size_t i = 0;
    while (i + 9 <= npx) {
        __m256i bins = gather_bins(rgb, i, bins_log2);
        __m256 fg = _mm256_i32gather_ps(fg_table, bins, 4);
        __m256 bg = _mm256_i32gather_ps(bg_table, bins, 4);
        _mm256_storeu_ps(out + i, _mm256_div_ps(fg, _mm256_add_ps(fg, bg)));
        i += 8;
    }
    for (; i < npx; ++i) {
        int bin = rgb_bin(rgb + 3 * i, bins_log2);
        float fg = fg_table[bin];
        float bg = bg_table[bin];
        out[i] = fg / (fg + bg);
    }
}

void mul_avx2(const float* a, const float* b, float* out, size_t n) {
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        _mm256_storeu_ps(out + i, _mm256_mul_ps(_mm256_loadu_ps(a + i),
                                                _mm256_loadu_ps(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void threshold_ge_avx2(const float* p, size_t n, float t, uint8_t* out) {
    const __m256 vt = _mm256_set1_ps(t);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        int m = _mm256_movemask_ps(_mm256_cmp_ps(_mm256_loadu_ps(p + i), vt, _CMP_GE_OQ));
        for (int j = 0; j < 8; ++j) out[i + j] = (m >> j) & 1;
    }
    for (; i < n; ++i) out[i] = p[i] >= t ? 1 : 0;
}

void bilinear_map_avx2(const float* src, int sw, int sh, float* dst, int dw, int dh,
                       float sx0, float sxstep, float sy0, float systep) {
    const __m256 vsx0 = _mm256_set1_ps(sx0);
    const __m256 vstep = _mm256_set1_ps(sxstep);
    const __m256 lane = _mm256_setr_ps(0, 1, 2, 3, 4, 5, 6, 7);
    const __m256i vzero = _mm256_setzero_si256();
    const __m256i vxmax = _mm256_set1_epi32(sw - 1);
    for (int dy = 0; dy < dh; ++dy) {
        float sy = sy0 + float(dy) * systep;
        float syf = std::floor(sy);
        float fy = sy - syf;
        int y0 = std::clamp(static_cast<int>(syf), 0, sh - 1);
        int y1 = std::clamp(static_cast<int>(syf) + 1, 0, sh - 1);
        const __m256 vfy = _mm256_set1_ps(fy);
        const __m256i vrow0 = _mm256_set1_epi32(y0 * sw);
        const __m256i vrow1 = _mm256_set1_epi32(y1 * sw);
        float* row = dst + size_t(dy) * dw;
        int dx = 0;
        for (; dx + 8 <= dw; dx += 8) {
            __m256 xs = _mm256_add_ps(lane, _mm256_set1_ps(float(dx)));
            __m256 sx = _mm256_add_ps(vsx0, _mm256_mul_ps(xs, vstep));
            __m256 sxf = _mm256_floor_ps(sx);
            __m256 fx = _mm256_sub_ps(sx, sxf);
            __m256i x0 = _mm256_cvttps_epi32(sxf);
            __m256i x1 = _mm256_add_epi32(x0, _mm256_set1_epi32(1));
            x0 = _mm256_min_epi32(_mm256_max_epi32(x0, vzero), vxmax);
            x1 = _mm256_min_epi32(_mm256_max_epi32(x1, vzero), vxmax);
            __m256 p00 = _mm256_i32gather_ps(src, _mm256_add_epi32(vrow0, x0), 4);
            __m256 p01 = _mm256_i32gather_ps(src, _mm256_add_epi32(vrow0, x1), 4);
            __m256 p10 = _mm256_i32gather_ps(src, _mm256_add_epi32(vrow1, x0), 4);
            __m256 p11 = _mm256_i32gather_ps(src, _mm256_add_epi32(vrow1, x1), 4);
            __m256 h0 = _mm256_add_ps(p00, _mm256_mul_ps(_mm256_sub_ps(p01, p00), fx));
            __m256 h1 = _mm256_add_ps(p10, _mm256_mul_ps(_mm256_sub_ps(p11, p10), fx));
            __m256 v = _mm256_add_ps(h0, _mm256_mul_ps(_mm256_sub_ps(h1, h0), vfy));
            _mm256_storeu_ps(row + dx, v);
        }
        for (; dx < dw; ++dx) {
            float sx = sx0 + float(dx) * sxstep;
            row[dx] = bilinear_at(src, sw, sh, sx, sy);
        }
    }
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable t = {
        count_nonzero_avx2,  overlap_counts_avx2, table_sum_rgb_avx2,
        table_map_rgb_avx2,  posterior_map_rgb_avx2,
        mul_avx2,            threshold_ge_avx2,   bilinear_map_avx2,
    };
    return t;
}

}  // namespace voscade::kernels::detail

#endif  // VOSCADE_HAVE_AVX2
