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

#include "voscade/backends.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "voscade/kernels.hpp"
#include "voscade/maskops.hpp"

namespace voscade {

namespace {

int log2_exact(int v) {
    int k = 0;
    while ((1 << k) < v) ++k;
    if ((1 << k) != v) throw std::invalid_argument("histogram bins must be a power of two");
    return k;
}

}  // namespace

ColorHistogram::ColorHistogram(int bins_per_channel)
    : bins(bins_per_channel), bins_log2(log2_exact(bins_per_channel)) {
    if (bins < 2 || bins > 256) throw std::invalid_argument("histogram bins out of range");
    counts.assign(size_t(bins) * bins * bins, 0.0);
}

void ColorHistogram::add_pixels(const Frame& img, const BinaryMask& mask, bool foreground,
                                double weight) {
    if (img.width != mask.width || img.height != mask.height)
        throw std::invalid_argument("image/mask dimension mismatch");
    size_t n = mask.bits.size();
    for (size_t i = 0; i < n; ++i) {
        if ((mask.bits[i] != 0) != foreground) continue;
        counts[bin_of(&img.rgb[3 * i])] += weight;
        total += weight;
    }
}

void ColorHistogram::add_normalized(const ColorHistogram& other, double mass) {
    if (other.counts.size() != counts.size())
        throw std::invalid_argument("histogram bin count mismatch");
    if (other.total <= 0.0) return;
    double s = mass / other.total;
    for (size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i] * s;
    total += mass;
}

std::vector<float> ColorHistogram::probability_table() const {
    std::vector<float> t(counts.size());
    for (size_t i = 0; i < counts.size(); ++i)
        t[i] = static_cast<float>(probability(static_cast<int>(i)));
    return t;
}

OracleContext make_oracle_context(const std::vector<LabelMap>& annotations, int object_id,
                                  uint64_t seed) {
    OracleContext ctx;
    ctx.seed = seed;
    for (const LabelMap& lm : annotations) {
        BinaryMask m = lm.mask_for(object_id);
        ctx.boxes.push_back(enclosing_box(m));
        ctx.masks.push_back(std::move(m));
    }
    return ctx;
}

// ---------------------------------------------------------------------------
// GridProposalSource

std::vector<Proposal> GridProposalSource::propose(const Frame& frame, int) {
    if (frame.width <= 0 || frame.height <= 0)
        throw std::invalid_argument("grid source needs a non-empty frame");
    std::vector<Proposal> out;
    double minside = std::min(frame.width, frame.height);
    for (double scale : cfg_.scales) {
        double side = scale * minside;
        double stride = cfg_.stride_fraction * side;
        if (side <= 1.0 || stride <= 0.0) continue;
        for (double aspect : cfg_.aspects) {
            double bw = side * std::sqrt(aspect);
            double bh = side / std::sqrt(aspect);
            if (bw > frame.width || bh > frame.height) continue;
            double xmax = frame.width - bw;
            double ymax = frame.height - bh;
            for (double y = 0.0;;) {
                for (double x = 0.0;;) {
                    out.push_back({BoundingBox{x, y, bw, bh}, 0.0});
                    if (x >= xmax) break;
                    x = std::min(x + stride, xmax);
                }
                if (y >= ymax) break;
                y = std::min(y + stride, ymax);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// OracleProposalSource

OracleProposalSource::OracleProposalSource(std::shared_ptr<const OracleContext> ctx)
    : ctx_(std::move(ctx)) {
    int n = ctx_->frames();
    dropped_.assign(size_t(n) + 1, 0);
    if (ctx_->dropout_rate > 0.0 && n > 0) {
        // Fixed-count dropout: exactly round(rate * n) frames lose the true
        // box, so the measured recall matches the configured rate.
        int k = static_cast<int>(std::lround(ctx_->dropout_rate * n));
        k = std::clamp(k, 0, n);
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 1);
        Rng rng = Rng(ctx_->seed).fork("opn-dropout");
        for (int i = 0; i < k; ++i) {
            int j = static_cast<int>(rng.uniform_int(i, n - 1));
            std::swap(idx[i], idx[j]);
            dropped_[idx[i]] = 1;
        }
    }
}

bool OracleProposalSource::dropped(int frame_index) const {
    return dropped_.at(size_t(frame_index)) != 0;
}

std::vector<Proposal> OracleProposalSource::propose(const Frame& frame, int frame_index) {
    (void)frame;
    const BinaryMask& gt_mask = ctx_->mask_at(frame_index);
    int w = gt_mask.width;
    int h = gt_mask.height;
    double minside = std::min(w, h);
    const std::optional<BoundingBox>& gt = ctx_->box_at(frame_index);

    std::vector<Proposal> out;
    if (gt && !dropped(frame_index)) {
        out.push_back({*gt, 1.0});
        Rng jrng = Rng(ctx_->seed).fork(hash_combine(hash_str("opn-jitter"), uint64_t(frame_index)));
        for (BoundingBox b : gaussian_box_samples(*gt, ctx_->n_jitter, ctx_->jitter, jrng))
            out.push_back({b, 0.8});
    }
    Rng drng = Rng(ctx_->seed).fork(hash_combine(hash_str("opn-distract"), uint64_t(frame_index)));
    for (int i = 0; i < ctx_->n_distractors; ++i) {
        BoundingBox b;
        for (int attempt = 0; attempt < 64; ++attempt) {
            b.w = drng.uniform(0.08, 0.35) * minside;
            b.h = drng.uniform(0.08, 0.35) * minside;
            b.x = drng.uniform(0.0, std::max(1.0, w - b.w));
            b.y = drng.uniform(0.0, std::max(1.0, h - b.h));
            if (!gt || iou(b, *gt) < 0.3) break;
        }
        out.push_back({b, 0.1});
    }
    return out;
}

// ---------------------------------------------------------------------------
// OracleScorer

double OracleScorer::score(const Frame&, const BoundingBox& box, int frame_index) {
    const std::optional<BoundingBox>& gt = ctx_->box_at(frame_index);
    if (!gt) return -0.5;
    return iou(box, *gt) - 0.5;
}

// ---------------------------------------------------------------------------
// HistogramScorer

HistogramScorer::HistogramScorer(HistogramScorerConfig cfg)
    : cfg_(cfg), init_fg_(cfg.bins), init_bg_(cfg.bins), fg_(cfg.bins), bg_(cfg.bins) {}

void HistogramScorer::rebuild_table() {
    llr_table_.resize(fg_.counts.size());
    for (size_t i = 0; i < llr_table_.size(); ++i) {
        int b = static_cast<int>(i);
        llr_table_[i] = static_cast<float>(std::log(fg_.probability(b) / bg_.probability(b)));
    }
}

void HistogramScorer::adapt_to_first_frame(const Frame& frame, const BinaryMask& mask) {
    std::optional<BoundingBox> box = enclosing_box(mask);
    if (!box) throw std::invalid_argument("empty mask");
    init_fg_ = ColorHistogram(cfg_.bins);
    init_bg_ = ColorHistogram(cfg_.bins);
    init_fg_.add_pixels(frame, mask, true, 1.0);
    init_bg_.add_pixels(frame, mask, false, 1.0);
    fg_ = init_fg_;
    bg_ = init_bg_;
    rebuild_table();

    // Affine calibration: the first-frame target patch maps to +1 and the
    // background's expected log ratio (-KL(bg || fg)) to -1.
    Frame gt_patch = crop_resize(frame, *box, cfg_.calibration_patch_side);
    size_t npx = size_t(gt_patch.width) * gt_patch.height;
    double s_fg =
        kernels::table_sum_rgb(gt_patch.rgb.data(), npx, llr_table_.data(), fg_.bins_log2) /
        double(npx);
    double s_bg = 0.0;
    for (size_t i = 0; i < llr_table_.size(); ++i)
        s_bg += bg_.probability(static_cast<int>(i)) * double(llr_table_[i]);
    double span = std::max(s_fg - s_bg, 1e-6);
    scale_ = 2.0 / span;
    offset_ = 1.0 - scale_ * s_fg;
    adapted_ = true;
}

double HistogramScorer::score(const Frame& patch, const BoundingBox&, int) {
    if (!adapted_) throw std::runtime_error("scorer used before first-frame adaptation");
    size_t npx = size_t(patch.width) * patch.height;
    if (npx == 0) throw std::invalid_argument("empty patch");
    double raw =
        kernels::table_sum_rgb(patch.rgb.data(), npx, llr_table_.data(), fg_.bins_log2) /
        double(npx);
    return scale_ * raw + offset_;
}

std::vector<float> HistogramScorer::describe(const Frame& patch) {
    std::vector<float> hist(init_fg_.counts.size(), 0.0f);
    size_t npx = size_t(patch.width) * patch.height;
    for (size_t i = 0; i < npx; ++i) hist[init_fg_.bin_of(&patch.rgb[3 * i])] += 1.0f;
    return hist;
}

void HistogramScorer::update(const SampleMemory& memory, int window) {
    if (!adapted_) throw std::runtime_error("scorer used before first-frame adaptation");
    size_t nbins = init_fg_.counts.size();
    std::vector<double> pos(nbins, 0.0), neg(nbins, 0.0);
    double pos_total = 0.0, neg_total = 0.0;
    for (const SampleBucket* bucket : memory.recent(window)) {
        for (const Sample& s : bucket->samples) {
            if (s.descriptor.size() != nbins) continue;
            std::vector<double>& dst = s.label == SampleLabel::positive ? pos : neg;
            double& tot = s.label == SampleLabel::positive ? pos_total : neg_total;
            for (size_t i = 0; i < nbins; ++i) dst[i] += s.descriptor[i];
            for (size_t i = 0; i < nbins; ++i) tot += s.descriptor[i];
        }
    }

    // Equal mixture of the first-frame model and the window's samples,
    // renormalized to the initial mass so smoothing strength is stable.
    auto remix = [nbins](const ColorHistogram& init, const std::vector<double>& win,
                         double win_total) {
        ColorHistogram mixed(init.bins);
        if (win_total <= 0.0) return init;
        double s = 0.5 * init.total / win_total;
        for (size_t i = 0; i < nbins; ++i)
            mixed.counts[i] = 0.5 * init.counts[i] + win[i] * s;
        mixed.total = init.total;
        return mixed;
    };
    fg_ = remix(init_fg_, pos, pos_total);
    bg_ = remix(init_bg_, neg, neg_total);
    rebuild_table();
}

// ---------------------------------------------------------------------------
// OracleSegmenter

std::vector<float> OracleSegmenter::segment(const ReferenceSet& refs, int frame_index) {
    int side = refs.current.image.width;
    BinaryMask gt = crop_resize_mask(ctx_->mask_at(frame_index), refs.current.origin_box, side);
    std::vector<float> prob(gt.bits.size());
    for (size_t i = 0; i < prob.size(); ++i) prob[i] = gt.bits[i] ? 1.0f : 0.0f;
    return prob;
}

// ---------------------------------------------------------------------------
// ColorModelSegmenter

std::vector<float> ColorModelSegmenter::segment(const ReferenceSet& refs, int) {
    int side = refs.current.image.width;
    size_t npx = size_t(side) * side;

    ColorHistogram fg(cfg_.bins), bg(cfg_.bins);
    auto add_pair = [&](const ImageMaskPatch& p, double w) {
        fg.add_pixels(p.image, p.mask, true, w);
        bg.add_pixels(p.image, p.mask, false, w);
    };
    add_pair(refs.static_ref, 1.0);
    for (const ImageMaskPatch& p : refs.dynamic) add_pair(p, cfg_.dynamic_weight);

    std::vector<float> fg_table = fg.probability_table();
    std::vector<float> bg_table = bg.probability_table();
    std::vector<float> prob(npx);
    kernels::posterior_map_rgb(refs.current.image.rgb.data(), npx, fg_table.data(),
                               bg_table.data(), fg.bins_log2, prob.data());

    // Spatial prior from the previous-mask channel.
    std::vector<float> prior(npx, 0.5f);
    if (!refs.current.mask.empty_fg()) {
        std::vector<int> dist = chebyshev_distance(refs.current.mask, 1);
        double tau = cfg_.tau_fraction * side;
        int maxd = 2 * side;
        std::vector<float> decay(size_t(maxd) + 1);
        for (int d = 0; d <= maxd; ++d) decay[d] = static_cast<float>(std::exp(-d / tau));
        for (size_t i = 0; i < npx; ++i) prior[i] = decay[std::min(dist[i], maxd)];
    }
    kernels::mul(prob.data(), prior.data(), prob.data(), npx);

    // Keep only the largest connected component over the threshold.
    BinaryMask above(side, side);
    kernels::threshold_ge(prob.data(), npx, float(cfg_.fg_threshold), above.bits.data());
    BinaryMask largest = keep_largest_component(above);
    for (size_t i = 0; i < npx; ++i)
        if (!largest.bits[i] && above.bits[i]) prob[i] = 0.0f;
    return prob;
}

}  // namespace voscade
