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

#include "voscade/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "voscade/kernels.hpp"
#include "voscade/maskops.hpp"

namespace voscade {

uint64_t BinaryMask::foreground_count() const {
    return kernels::count_nonzero(bits.data(), bits.size());
}

void Frame::fill(uint8_t r, uint8_t g, uint8_t b) {
    for (size_t i = 0; i < rgb.size(); i += 3) {
        rgb[i] = r;
        rgb[i + 1] = g;
        rgb[i + 2] = b;
    }
}

IntRect rounded_rect(const BoundingBox& b) {
    IntRect r;
    r.x = static_cast<int>(std::lround(b.x));
    r.y = static_cast<int>(std::lround(b.y));
    r.w = std::max(1, static_cast<int>(std::lround(b.w)));
    r.h = std::max(1, static_cast<int>(std::lround(b.h)));
    return r;
}

double iou(const BoundingBox& a, const BoundingBox& b) {
    double ix = std::min(a.right(), b.right()) - std::max(a.x, b.x);
    double iy = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
    if (ix <= 0.0 || iy <= 0.0) return 0.0;
    double inter = ix * iy;
    return inter / (a.area() + b.area() - inter);
}

double rasterized_iou(const BoundingBox& a, const BoundingBox& b, double grid_step) {
    if (grid_step <= 0.0) throw std::invalid_argument("grid_step must be positive");
    double minx = std::min(a.x, b.x);
    double miny = std::min(a.y, b.y);
    double maxx = std::max(a.right(), b.right());
    double maxy = std::max(a.bottom(), b.bottom());
    double gx = std::floor(minx / grid_step) * grid_step;
    double gy = std::floor(miny / grid_step) * grid_step;

    auto contains = [](const BoundingBox& box, double px, double py) {
        return px >= box.x && px < box.right() && py >= box.y && py < box.bottom();
    };

    uint64_t na = 0, nb = 0, ni = 0;
    for (int j = 0;; ++j) {
        double py = gy + (j + 0.5) * grid_step;
        if (py > maxy) break;
        for (int i = 0;; ++i) {
            double px = gx + (i + 0.5) * grid_step;
            if (px > maxx) break;
            bool in_a = contains(a, px, py);
            bool in_b = contains(b, px, py);
            na += in_a;
            nb += in_b;
            ni += in_a && in_b;
        }
    }
    uint64_t uni = na + nb - ni;
    return uni == 0 ? 0.0 : double(ni) / double(uni);
}

std::optional<BoundingBox> enclosing_box(const BinaryMask& mask) {
    int minx = std::numeric_limits<int>::max();
    int miny = std::numeric_limits<int>::max();
    int maxx = -1;
    int maxy = -1;
    for (int y = 0; y < mask.height; ++y) {
        const uint8_t* row = mask.bits.data() + size_t(y) * mask.width;
        for (int x = 0; x < mask.width; ++x) {
            if (row[x]) {
                minx = std::min(minx, x);
                maxx = std::max(maxx, x);
                miny = std::min(miny, y);
                maxy = std::max(maxy, y);
            }
        }
    }
    if (maxx < 0) return std::nullopt;
    return BoundingBox{double(minx), double(miny), double(maxx - minx + 1),
                       double(maxy - miny + 1)};
}

BoundingBox expand_box(const BoundingBox& b, double factor) {
    if (factor <= 0.0) throw std::invalid_argument("expand factor must be positive");
    return BoundingBox::from_center(b.cx(), b.cy(), b.w * factor, b.h * factor);
}

Frame crop_resize(const Frame& frame, const BoundingBox& box, int out_side) {
    if (out_side < 2) throw std::invalid_argument("out_side must be >= 2");
    IntRect r = rounded_rect(box);
    Frame out(out_side, out_side);
    double xscale = double(r.w) / out_side;
    double yscale = double(r.h) / out_side;

    auto sample = [&](int x, int y, int c) -> double {
        if (x < 0 || x >= frame.width || y < 0 || y >= frame.height) return 0.0;
        return frame.px(x, y)[c];
    };

    for (int oy = 0; oy < out_side; ++oy) {
        double sy = r.y + (oy + 0.5) * yscale - 0.5;
        sy = std::clamp(sy, double(r.y), double(r.y + r.h - 1));
        int y0 = static_cast<int>(std::floor(sy));
        double fy = sy - y0;
        for (int ox = 0; ox < out_side; ++ox) {
            double sx = r.x + (ox + 0.5) * xscale - 0.5;
            sx = std::clamp(sx, double(r.x), double(r.x + r.w - 1));
            int x0 = static_cast<int>(std::floor(sx));
            double fx = sx - x0;
            uint8_t* dst = out.px(ox, oy);
            for (int c = 0; c < 3; ++c) {
                double h0 = sample(x0, y0, c) * (1.0 - fx) + sample(x0 + 1, y0, c) * fx;
                double h1 = sample(x0, y0 + 1, c) * (1.0 - fx) + sample(x0 + 1, y0 + 1, c) * fx;
                double v = h0 * (1.0 - fy) + h1 * fy;
                dst[c] = static_cast<uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
            }
        }
    }
    return out;
}

BinaryMask crop_resize_mask(const BinaryMask& mask, const BoundingBox& box, int out_side) {
    if (out_side < 2) throw std::invalid_argument("out_side must be >= 2");
    IntRect r = rounded_rect(box);
    BinaryMask out(out_side, out_side);
    for (int oy = 0; oy < out_side; ++oy) {
        int sy = r.y + static_cast<int>(std::floor((oy + 0.5) * double(r.h) / out_side));
        for (int ox = 0; ox < out_side; ++ox) {
            int sx = r.x + static_cast<int>(std::floor((ox + 0.5) * double(r.w) / out_side));
            uint8_t v = mask.in_bounds(sx, sy) ? mask.at(sx, sy) : 0;
            out.set(ox, oy, v);
        }
    }
    return out;
}

std::vector<BoundingBox> gaussian_box_samples(const BoundingBox& b, int n,
                                              const GaussianSampleConfig& cfg, Rng& rng) {
    std::vector<BoundingBox> out;
    out.reserve(std::max(n, 0));
    double d = 0.5 * (b.w + b.h);
    for (int i = 0; i < n; ++i) {
        double dx = rng.normal(0.0, cfg.spatial_sigma * d);
        double dy = rng.normal(0.0, cfg.spatial_sigma * d);
        double k = std::clamp(rng.normal(0.0, cfg.scale_sigma), -cfg.max_scale_steps,
                              cfg.max_scale_steps);
        double s = std::pow(cfg.scale_base, k);
        out.push_back(BoundingBox::from_center(b.cx() + dx, b.cy() + dy, b.w * s, b.h * s));
    }
    return out;
}

BoundingBox random_shift(const BoundingBox& box, const GaussianSampleConfig& cfg, Rng& rng) {
    return gaussian_box_samples(box, 1, cfg, rng)[0];
}

namespace {

BinaryMask morph(const BinaryMask& mask, int radius, bool dilate) {
    // Dilation moves bg pixels within `radius` of fg into fg; erosion is the
    // dual. Chebyshev distance, so the structuring element is a square.
    std::vector<int> dist = chebyshev_distance(mask, dilate ? 1 : 0);
    BinaryMask out(mask.width, mask.height);
    for (size_t i = 0; i < mask.bits.size(); ++i) {
        // dist measures from the opposite class; 0 on the class itself.
        bool near_other = dist[i] > 0 && dist[i] <= radius;
        if (dilate)
            out.bits[i] = mask.bits[i] || near_other;
        else
            out.bits[i] = mask.bits[i] && !near_other;
    }
    return out;
}

}  // namespace

BinaryMask degrade_mask(const BinaryMask& mask, Rng& rng, const DegradeConfig& cfg) {
    int radius = static_cast<int>(rng.uniform_int(0, std::max(0, cfg.max_radius)));
    bool dilate = rng.uniform01() < 0.5;
    BinaryMask out = radius > 0 ? morph(mask, radius, dilate) : mask;
    if (cfg.flip_rate <= 0.0) return out;

    BinaryMask flipped = out;
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            uint8_t v = out.at(x, y);
            bool band = false;
            for (int ny = y - 1; ny <= y + 1 && !band; ++ny)
                for (int nx = x - 1; nx <= x + 1 && !band; ++nx)
                    if (out.in_bounds(nx, ny) && out.at(nx, ny) != v) band = true;
            if (band && rng.uniform01() < cfg.flip_rate) flipped.set(x, y, v ^ 1);
        }
    }
    return flipped;
}

}  // namespace voscade
