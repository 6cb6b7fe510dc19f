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

#include "voscade/maskops.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace voscade {

std::vector<int> chebyshev_distance(const BinaryMask& m, uint8_t target) {
    std::vector<int> dist(m.bits.size(), -1);
    std::deque<int> queue;
    for (size_t i = 0; i < m.bits.size(); ++i) {
        if ((m.bits[i] != 0) == (target != 0)) {
            dist[i] = 0;
            queue.push_back(static_cast<int>(i));
        }
    }
    while (!queue.empty()) {
        int idx = queue.front();
        queue.pop_front();
        int x = idx % m.width;
        int y = idx / m.width;
        int d = dist[idx];
        for (int ny = y - 1; ny <= y + 1; ++ny) {
            for (int nx = x - 1; nx <= x + 1; ++nx) {
                if (nx < 0 || nx >= m.width || ny < 0 || ny >= m.height) continue;
                int nidx = ny * m.width + nx;
                if (dist[nidx] < 0) {
                    dist[nidx] = d + 1;
                    queue.push_back(nidx);
                }
            }
        }
    }
    return dist;
}

BinaryMask boundary_mask(const BinaryMask& m) {
    BinaryMask out(m.width, m.height);
    for (int y = 0; y < m.height; ++y) {
        for (int x = 0; x < m.width; ++x) {
            if (!m.at(x, y)) continue;
            bool edge = x == 0 || x == m.width - 1 || y == 0 || y == m.height - 1;
            bool bg_adjacent =
                (x > 0 && !m.at(x - 1, y)) || (x < m.width - 1 && !m.at(x + 1, y)) ||
                (y > 0 && !m.at(x, y - 1)) || (y < m.height - 1 && !m.at(x, y + 1));
            if (edge || bg_adjacent) out.set(x, y, 1);
        }
    }
    return out;
}

namespace {

// 1D lower envelope of parabolas for the squared distance transform.
void edt_1d(const int64_t* f, int64_t* d, int n, int* v, double* z) {
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            int p = v[k];
            s = (double(f[q] + int64_t(q) * q) - double(f[p] + int64_t(p) * p)) / (2.0 * (q - p));
            if (s > z[k]) break;
            --k;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        int64_t dq = q - v[k];
        d[q] = dq * dq + f[v[k]];
    }
}

}  // namespace

std::vector<int64_t> squared_euclidean_distance(const BinaryMask& m) {
    const int64_t kInf = int64_t(1) << 50;
    size_t n = m.bits.size();
    std::vector<int64_t> dist(n);
    for (size_t i = 0; i < n; ++i) dist[i] = m.bits[i] ? 0 : kInf;

    int side = std::max(m.width, m.height);
    std::vector<int64_t> f(side), d(side);
    std::vector<int> v(side);
    std::vector<double> z(side + 1);

    for (int x = 0; x < m.width; ++x) {
        for (int y = 0; y < m.height; ++y) f[y] = dist[size_t(y) * m.width + x];
        edt_1d(f.data(), d.data(), m.height, v.data(), z.data());
        for (int y = 0; y < m.height; ++y) dist[size_t(y) * m.width + x] = d[y];
    }
    for (int y = 0; y < m.height; ++y) {
        int64_t* row = dist.data() + size_t(y) * m.width;
        std::copy(row, row + m.width, f.begin());
        edt_1d(f.data(), d.data(), m.width, v.data(), z.data());
        std::copy(d.begin(), d.begin() + m.width, row);
    }
    return dist;
}

BinaryMask keep_largest_component(const BinaryMask& m) {
    std::vector<int32_t> label(m.bits.size(), 0);
    int next = 0;
    int best_label = 0;
    uint64_t best_size = 0;
    std::deque<int> queue;
    for (size_t start = 0; start < m.bits.size(); ++start) {
        if (!m.bits[start] || label[start] != 0) continue;
        ++next;
        uint64_t size = 0;
        label[start] = next;
        queue.push_back(static_cast<int>(start));
        while (!queue.empty()) {
            int idx = queue.front();
            queue.pop_front();
            ++size;
            int x = idx % m.width;
            int y = idx / m.width;
            const int dx[4] = {1, -1, 0, 0};
            const int dy[4] = {0, 0, 1, -1};
            for (int k = 0; k < 4; ++k) {
                int nx = x + dx[k];
                int ny = y + dy[k];
                if (nx < 0 || nx >= m.width || ny < 0 || ny >= m.height) continue;
                int nidx = ny * m.width + nx;
                if (m.bits[nidx] && label[nidx] == 0) {
                    label[nidx] = next;
                    queue.push_back(nidx);
                }
            }
        }
        if (size > best_size) {
            best_size = size;
            best_label = next;
        }
    }
    BinaryMask out(m.width, m.height);
    if (best_label == 0) return out;
    for (size_t i = 0; i < m.bits.size(); ++i)
        out.bits[i] = label[i] == best_label ? 1 : 0;
    return out;
}

}  // namespace voscade
