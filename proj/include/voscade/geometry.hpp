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

#include <cstdint>
#include <optional>
#include <vector>

#include "voscade/rng.hpp"

namespace voscade {

/// Axis-aligned box in real pixel coordinates, (x, y) = top-left corner.
/// Boxes may extend outside the frame; crop operations pad.
struct BoundingBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double right() const { return x + w; }
    double bottom() const { return y + h; }
    double cx() const { return x + 0.5 * w; }
    double cy() const { return y + 0.5 * h; }
    double area() const { return w * h; }
    bool valid() const {
        return w > 0.0 && h > 0.0 && std::isfinite(x) && std::isfinite(y) &&
               std::isfinite(w) && std::isfinite(h);
    }
    static BoundingBox from_center(double cx, double cy, double w, double h) {
        return {cx - 0.5 * w, cy - 0.5 * h, w, h};
    }
    bool operator==(const BoundingBox&) const = default;
};

/// Per-pixel object mask, row-major, one byte per pixel holding 0 or 1.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> bits;

    BinaryMask() = default;
    BinaryMask(int w, int h) : width(w), height(h), bits(size_t(w) * h, 0) {}

    uint8_t at(int x, int y) const { return bits[size_t(y) * width + x]; }
    void set(int x, int y, uint8_t v) { bits[size_t(y) * width + x] = v; }
    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }
    uint64_t foreground_count() const;
    bool empty_fg() const { return foreground_count() == 0; }
    bool operator==(const BinaryMask&) const = default;
};

/// RGB image, row-major interleaved 8-bit triples.
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> rgb;

    Frame() = default;
    Frame(int w, int h) : width(w), height(h), rgb(size_t(3) * w * h, 0) {}

    const uint8_t* px(int x, int y) const { return &rgb[(size_t(y) * width + x) * 3]; }
    uint8_t* px(int x, int y) { return &rgb[(size_t(y) * width + x) * 3]; }
    void fill(uint8_t r, uint8_t g, uint8_t b);
    bool operator==(const Frame&) const = default;
};

/// Hyper-parameters of the Gaussian box sampler. Center offsets are drawn
/// per-axis from Normal(0, (spatial_sigma * d)^2) with d = (w + h) / 2;
/// width and height are jointly scaled by scale_base^k with
/// k ~ Normal(0, scale_sigma^2) clipped to |k| <= max_scale_steps.
struct GaussianSampleConfig {
    double spatial_sigma = 0.1;
    double scale_sigma = 1.5;
    double scale_base = 1.05;
    double max_scale_steps = 2.0;
};

/// Mask degradation used to simulate an imperfect previous prediction:
/// random dilation or erosion with radius in [0, max_radius], then flips
/// of boundary-band pixels at flip_rate.
struct DegradeConfig {
    int max_radius = 3;
    double flip_rate = 0.05;
};

/// Integer pixel rectangle; the rounded footprint shared by crop and
/// paste-back so both sides agree on geometry.
struct IntRect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;
};

/// Round a real box to the pixel grid (width/height at least 1).
IntRect rounded_rect(const BoundingBox& b);

/// Intersection over union of two boxes; 0 for disjoint boxes.
double iou(const BoundingBox& a, const BoundingBox& b);

/// Area-count oracle for iou: point-in-box tests at the centers of a regular
/// grid with the given spacing. Exact when box edges lie on the grid.
double rasterized_iou(const BoundingBox& a, const BoundingBox& b, double grid_step);

/// Tightest box containing every foreground pixel; nullopt for empty masks.
std::optional<BoundingBox> enclosing_box(const BinaryMask& mask);

/// Same center, width and height multiplied by factor.
BoundingBox expand_box(const BoundingBox& b, double factor);

/// Resample the region under `box` (rounded to the pixel grid) into an
/// out_side x out_side patch with bilinear interpolation. Pixels sampled
/// outside the frame contribute zero.
Frame crop_resize(const Frame& frame, const BoundingBox& box, int out_side);

/// Mask variant of crop_resize with nearest-neighbor resampling;
/// out-of-bounds samples are background.
BinaryMask crop_resize_mask(const BinaryMask& mask, const BoundingBox& box, int out_side);

/// n Gaussian perturbations of b; deterministic given the stream.
std::vector<BoundingBox> gaussian_box_samples(const BoundingBox& b, int n,
                                              const GaussianSampleConfig& cfg, Rng& rng);

/// Single Gaussian perturbation; the training-simulation shift.
BoundingBox random_shift(const BoundingBox& box, const GaussianSampleConfig& cfg, Rng& rng);

BinaryMask degrade_mask(const BinaryMask& mask, Rng& rng, const DegradeConfig& cfg = {});

}  // namespace voscade
