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

#include "voscade/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "kernels_common.hpp"

namespace voscade::kernels {

namespace {

using detail::KernelTable;

bool detect_avx2() {
#if defined(VOSCADE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

struct Dispatch {
    const KernelTable* table;
    Backend backend;

    Dispatch() {
        bool use_avx2 = detect_avx2();
        const char* env = std::getenv("VOSCADE_SIMD");
        if (env != nullptr && std::strcmp(env, "scalar") == 0) use_avx2 = false;
#if defined(VOSCADE_HAVE_AVX2)
        if (use_avx2) {
            table = &detail::avx2_table();
            backend = Backend::avx2;
            return;
        }
#endif
        table = &detail::scalar_table();
        backend = Backend::scalar;
    }
};

Dispatch& dispatch() {
    static Dispatch d;
    return d;
}

}  // namespace

Backend active_backend() { return dispatch().backend; }

const char* backend_name() {
    return dispatch().backend == Backend::avx2 ? "avx2" : "scalar";
}

bool avx2_available() { return detect_avx2(); }

void force_backend(Backend b) {
    Dispatch& d = dispatch();
    if (b == Backend::avx2) {
#if defined(VOSCADE_HAVE_AVX2)
        if (!detect_avx2()) throw std::runtime_error("avx2 backend unavailable on this CPU");
        d.table = &detail::avx2_table();
        d.backend = Backend::avx2;
        return;
#else
        throw std::runtime_error("avx2 backend not built");
#endif
    }
    d.table = &detail::scalar_table();
    d.backend = Backend::scalar;
}

uint64_t count_nonzero(const uint8_t* p, size_t n) {
    return dispatch().table->count_nonzero(p, n);
}

void overlap_counts(const uint8_t* a, const uint8_t* b, size_t n,
                    uint64_t& inter, uint64_t& uni) {
    dispatch().table->overlap_counts(a, b, n, inter, uni);
}

float table_sum_rgb(const uint8_t* rgb, size_t npx, const float* table, int bins_log2) {
    return dispatch().table->table_sum_rgb(rgb, npx, table, bins_log2);
}

void table_map_rgb(const uint8_t* rgb, size_t npx, const float* table,
                   int bins_log2, float* out) {
    dispatch().table->table_map_rgb(rgb, npx, table, bins_log2, out);
}

void posterior_map_rgb(const uint8_t* rgb, size_t npx, const float* fg_table,
                       const float* bg_table, int bins_log2, float* out) {
    dispatch().table->posterior_map_rgb(rgb, npx, fg_table, bg_table, bins_log2, out);
}

void mul(const float* a, const float* b, float* out, size_t n) {
    dispatch().table->mul(a, b, out, n);
}

void threshold_ge(const float* p, size_t n, float t, uint8_t* out) {
    dispatch().table->threshold_ge(p, n, t, out);
}

void bilinear_map(const float* src, int sw, int sh, float* dst, int dw, int dh,
                  float sx0, float sxstep, float sy0, float systep) {
    dispatch().table->bilinear_map(src, sw, sh, dst, dw, dh, sx0, sxstep, sy0, systep);
}

}  // namespace voscade::kernels
