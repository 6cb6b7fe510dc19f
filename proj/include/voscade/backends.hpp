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

#include <memory>
#include <optional>
#include <vector>

#include "voscade/drsn.hpp"
#include "voscade/opn.hpp"
#include "voscade/otn.hpp"

namespace voscade {

/// Quantized RGB histogram with add-1 smoothing. Bins per channel must be a
/// power of two so pixel binning reduces to shifts.
struct ColorHistogram {
    int bins = 16;
    int bins_log2 = 4;
    std::vector<double> counts;  // bins^3, fractional when weighted
    double total = 0.0;

    explicit ColorHistogram(int bins_per_channel = 16);

    int bin_of(const uint8_t* px) const {
        int s = 8 - bins_log2;
        return ((px[0] >> s) << (2 * bins_log2)) | ((px[1] >> s) << bins_log2) | (px[2] >> s);
    }

    /// Accumulate the pixels of `img` where the mask value matches
    /// `foreground`, each contributing `weight`.
    void add_pixels(const Frame& img, const BinaryMask& mask, bool foreground, double weight);

    /// Accumulate `other` rescaled to carry `mass` total weight.
    void add_normalized(const ColorHistogram& other, double mass);

    /// Smoothed probability of one bin: (count + 1) / (total + bins^3).
    double probability(int bin) const {
        return (counts[bin] + 1.0) / (total + double(counts.size()));
    }

    /// All smoothed probabilities as a float lookup table.
    std::vector<float> probability_table() const;
};

/// Ground truth of a sequence for one object, as the oracle backends see it.
/// Frame indices are 1-based.
struct OracleContext {
    std::vector<BinaryMask> masks;                 // visible ground-truth masks
    std::vector<std::optional<BoundingBox>> boxes; // none while fully occluded
    GaussianSampleConfig jitter{0.02, 0.4, 1.05, 1.0};
    int n_jitter = 10;
    int n_distractors = 20;
    double dropout_rate = 0.0;  // fraction of frames whose true box is withheld
    uint64_t seed = 1;

    int frames() const { return static_cast<int>(masks.size()); }
    const std::optional<BoundingBox>& box_at(int frame_index) const {
        return boxes.at(size_t(frame_index) - 1);
    }
    const BinaryMask& mask_at(int frame_index) const {
        return masks.at(size_t(frame_index) - 1);
    }
};

/// Ground truth for one object id extracted from per-frame label maps.
OracleContext make_oracle_context(const std::vector<LabelMap>& annotations, int object_id,
                                  uint64_t seed);

// ---------------------------------------------------------------------------
// Proposal sources

struct GridSourceConfig {
    std::vector<double> scales{0.2, 0.35, 0.55, 0.8};  // box side / min frame side
    double stride_fraction = 0.18;                     // stride / box side
    std::vector<double> aspects{0.5, 1.0, 2.0};        // width / height
};

/// Sliding-window boxes over the frame at several scales and aspects,
/// roughly 2000 on a 256x256 frame with defaults; every box lies inside
/// the frame.
class GridProposalSource : public ProposalSource {
public:
    explicit GridProposalSource(GridSourceConfig cfg = {}) : cfg_(std::move(cfg)) {}
    std::vector<Proposal> propose(const Frame& frame, int frame_index) override;

private:
    GridSourceConfig cfg_;
};

/// Ground-truth box plus jittered copies plus uniform distractors. In
/// dropout mode the true box and its jitters are withheld on a fixed-count
/// seeded subset of frames, modeling a proposal stage that misses the
/// target at the configured rate.
class OracleProposalSource : public ProposalSource {
public:
    explicit OracleProposalSource(std::shared_ptr<const OracleContext> ctx);
    std::vector<Proposal> propose(const Frame& frame, int frame_index) override;
    bool dropped(int frame_index) const;

private:
    std::shared_ptr<const OracleContext> ctx_;
    std::vector<uint8_t> dropped_;
};

// ---------------------------------------------------------------------------
// Appearance scorers

/// score = IoU(candidate box, ground-truth box) - 0.5; -0.5 while the
/// target is fully occluded. Ignores pixels entirely.
class OracleScorer : public AppearanceScorer {
public:
    explicit OracleScorer(std::shared_ptr<const OracleContext> ctx) : ctx_(std::move(ctx)) {}
    void adapt_to_first_frame(const Frame&, const BinaryMask&) override {}
    double score(const Frame&, const BoundingBox& box, int frame_index) override;
    void update(const SampleMemory&, int) override {}
    bool needs_patch_pixels() const override { return false; }

private:
    std::shared_ptr<const OracleContext> ctx_;
};

struct HistogramScorerConfig {
    int bins = 16;
    int calibration_patch_side = 107;  // patch used to anchor the +1 score
};

/// Foreground/background color model scored as the mean per-pixel
/// log-likelihood ratio, affinely calibrated so the first-frame target
/// patch scores +1 and an average background patch about -1. update()
/// re-estimates both histograms as an equal mixture of the first-frame
/// model and the recent window's samples.
class HistogramScorer : public AppearanceScorer {
public:
    explicit HistogramScorer(HistogramScorerConfig cfg = {});
    void adapt_to_first_frame(const Frame& frame, const BinaryMask& mask) override;
    double score(const Frame& patch, const BoundingBox& box, int frame_index) override;
    std::vector<float> describe(const Frame& patch) override;
    void update(const SampleMemory& memory, int window) override;

private:
    void rebuild_table();

    HistogramScorerConfig cfg_;
    ColorHistogram init_fg_, init_bg_, fg_, bg_;
    std::vector<float> llr_table_;
    double scale_ = 1.0;
    double offset_ = 0.0;
    bool adapted_ = false;
};

// ---------------------------------------------------------------------------
// Segmenters

/// Emits the ground-truth mask resampled into the current patch.
class OracleSegmenter : public MaskSegmenter {
public:
    explicit OracleSegmenter(std::shared_ptr<const OracleContext> ctx) : ctx_(std::move(ctx)) {}
    std::vector<float> segment(const ReferenceSet& refs, int frame_index) override;

private:
    std::shared_ptr<const OracleContext> ctx_;
};

struct ColorSegmenterConfig {
    int bins = 16;
    double tau_fraction = 0.15;   // spatial prior decay, fraction of patch side
    double dynamic_weight = 2.0;  // recency weight of dynamic reference pixels
    double fg_threshold = 0.5;    // connected-component cut; match the driver's
};

/// Classical reference-guided segmentation: fg/bg histograms pooled over the
/// static and dynamic reference pairs (dynamic weighted for recency),
/// per-pixel posterior from the likelihood ratio, multiplied by a spatial
/// prior decaying with distance from the previous mask (uniform 0.5 when the
/// mask channel is empty), keeping the largest connected component.
class ColorModelSegmenter : public MaskSegmenter {
public:
    explicit ColorModelSegmenter(ColorSegmenterConfig cfg = {}) : cfg_(cfg) {}
    std::vector<float> segment(const ReferenceSet& refs, int frame_index) override;

private:
    ColorSegmenterConfig cfg_;
};

}  // namespace voscade
