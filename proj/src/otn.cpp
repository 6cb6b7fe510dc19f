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

#include "voscade/otn.hpp"

#include <algorithm>
#include <stdexcept>

namespace voscade {

std::vector<ScoredCandidate> select_top_k(const std::vector<ScoredCandidate>& scored, int k) {
    if (scored.empty()) throw std::invalid_argument("no candidates");
    std::vector<ScoredCandidate> out = scored;
    std::sort(out.begin(), out.end(), [](const ScoredCandidate& a, const ScoredCandidate& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.source_index < b.source_index;
    });
    if (static_cast<int>(out.size()) > k) out.resize(k);
    return out;
}

bool tracking_success(const std::vector<ScoredCandidate>& top, double threshold) {
    if (top.empty()) throw std::invalid_argument("no candidates");
    double sum = 0.0;
    for (const ScoredCandidate& c : top) sum += c.score;
    return sum / double(top.size()) > threshold;
}

BoundingBox estimate_box(const std::vector<ScoredCandidate>& top) {
    if (top.empty()) throw std::invalid_argument("no candidates");
    BoundingBox mean{0, 0, 0, 0};
    for (const ScoredCandidate& c : top) {
        mean.x += c.box.x;
        mean.y += c.box.y;
        mean.w += c.box.w;
        mean.h += c.box.h;
    }
    double n = double(top.size());
    return {mean.x / n, mean.y / n, mean.w / n, mean.h / n};
}

SampleBucket collect_samples(const TrackerState& state, const Frame& frame,
                             const std::vector<ScoredCandidate>& candidates,
                             const BoundingBox& est, const TrackerConfig& cfg,
                             AppearanceScorer& scorer) {
    SampleBucket bucket;
    bucket.frame_index = state.frame_index + 1;
    bool pixels = scorer.needs_patch_pixels();
    for (const ScoredCandidate& c : candidates) {
        double overlap = iou(c.box, est);
        SampleLabel label;
        if (overlap >= cfg.pos_iou)
            label = SampleLabel::positive;
        else if (overlap <= cfg.neg_iou)
            label = SampleLabel::negative;
        else
            continue;
        Sample s;
        s.label = label;
        if (pixels) {
            Frame patch = crop_resize(frame, c.box, cfg.patch_side);
            s.descriptor = scorer.describe(patch);
        }
        bucket.samples.push_back(std::move(s));
    }
    return bucket;
}

TrackerState init_tracker(const Frame& first_frame, const BinaryMask& annotation,
                          AppearanceScorer& scorer) {
    std::optional<BoundingBox> box = enclosing_box(annotation);
    if (!box) throw std::invalid_argument("empty first-frame annotation");
    scorer.adapt_to_first_frame(first_frame, annotation);
    TrackerState state;
    state.current_box = *box;
    state.frame_index = 1;
    state.last_success = true;
    return state;
}

StepResult step(TrackerState& state, const Frame& frame, const CandidateSet& candidates,
                AppearanceScorer& scorer, const TrackerConfig& cfg, Rng& rng) {
    (void)rng;  // reserved for stochastic backends; scoring itself is deterministic
    if (candidates.boxes.empty()) throw std::invalid_argument("no candidates");
    int n = state.frame_index + 1;

    bool pixels = scorer.needs_patch_pixels();
    std::vector<ScoredCandidate> scored;
    scored.reserve(candidates.boxes.size());
    Frame empty_patch;
    for (size_t i = 0; i < candidates.boxes.size(); ++i) {
        const BoundingBox& box = candidates.boxes[i];
        double s;
        if (pixels) {
            Frame patch = crop_resize(frame, box, cfg.patch_side);
            s = scorer.score(patch, box, n);
        } else {
            s = scorer.score(empty_patch, box, n);
        }
        scored.push_back({box, s, static_cast<int>(i)});
    }

    std::vector<ScoredCandidate> top = select_top_k(scored, cfg.top_k);
    bool success = tracking_success(top, cfg.success_threshold);

    StepResult result;
    if (success) {
        result.box = estimate_box(top);
        state.memory.push_bucket(collect_samples(state, frame, scored, result.box, cfg, scorer),
                                 cfg.long_window);
        scorer.update(state.memory, cfg.short_window);
        state.current_box = result.box;
    } else {
        result.box = state.current_box;
        if (cfg.long_interval > 0 && n % cfg.long_interval == 0)
            scorer.update(state.memory, cfg.long_window);
    }
    result.success = success;
    state.frame_index = n;
    state.last_success = success;
    return result;
}

}  // namespace voscade
