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

#include <deque>
#include <vector>

#include "voscade/geometry.hpp"
#include "voscade/opn.hpp"

namespace voscade {

struct TrackerConfig {
    int top_k = 5;
    double success_threshold = 0.0;  // mean top-k score must exceed this
    int short_window = 5;            // buckets used by the per-success update
    int long_window = 20;            // memory capacity and periodic update span
    int long_interval = 10;          // frames between long-term updates
    double pos_iou = 0.7;            // labeling thresholds for sample collection
    double neg_iou = 0.3;
    int patch_side = 107;
};

struct ScoredCandidate {
    BoundingBox box;
    double score = 0.0;
    int source_index = 0;
};

enum class SampleLabel : uint8_t { positive, negative };

/// Backend-opaque appearance descriptor plus its label.
struct Sample {
    std::vector<float> descriptor;
    SampleLabel label;
};

struct SampleBucket {
    int frame_index = 0;
    std::vector<Sample> samples;
};

/// Per-frame buckets of labeled samples, capped at the tracker's long
/// window with strictly oldest-first eviction.
class SampleMemory {
public:
    void push_bucket(SampleBucket bucket, int capacity) {
        buckets_.push_back(std::move(bucket));
        while (static_cast<int>(buckets_.size()) > capacity) buckets_.pop_front();
    }
    const std::deque<SampleBucket>& buckets() const { return buckets_; }
    size_t size() const { return buckets_.size(); }

    /// The most recent `window` buckets, oldest first.
    std::vector<const SampleBucket*> recent(int window) const {
        std::vector<const SampleBucket*> out;
        size_t take = std::min<size_t>(window < 0 ? 0 : window, buckets_.size());
        for (size_t i = buckets_.size() - take; i < buckets_.size(); ++i)
            out.push_back(&buckets_[i]);
        return out;
    }

private:
    std::deque<SampleBucket> buckets_;
};

/// Pluggable appearance model. score() receives the resized patch together
/// with the full-frame box it was cut from and the frame index, so oracle
/// backends can score geometrically while appearance backends read pixels.
class AppearanceScorer {
public:
    virtual ~AppearanceScorer() = default;

    virtual void adapt_to_first_frame(const Frame& frame, const BinaryMask& mask) = 0;

    /// Positive means target. Deterministic between updates.
    virtual double score(const Frame& patch, const BoundingBox& box, int frame_index) = 0;

    /// Compact descriptor stored in sample memory; consumed by update().
    virtual std::vector<float> describe(const Frame& patch) {
        (void)patch;
        return {};
    }

    virtual void update(const SampleMemory& memory, int window) = 0;

    /// Backends that score geometrically can skip patch extraction.
    virtual bool needs_patch_pixels() const { return true; }
};

struct TrackerState {
    BoundingBox current_box;
    SampleMemory memory;
    int frame_index = 1;  // last processed frame, 1-based
    bool last_success = true;
};

struct StepResult {
    BoundingBox box;
    bool success = false;
};

/// k highest-scoring candidates, score-descending, ties broken by lower
/// source index; all of them when fewer than k. Throws on empty input.
std::vector<ScoredCandidate> select_top_k(const std::vector<ScoredCandidate>& scored, int k);

/// Mean top score strictly above threshold.
bool tracking_success(const std::vector<ScoredCandidate>& top, double threshold);

/// Component-wise mean of the boxes in (x, y, w, h).
BoundingBox estimate_box(const std::vector<ScoredCandidate>& top);

/// Label candidates against the estimated box (>= pos_iou positive,
/// <= neg_iou negative, rest discarded) and build one memory bucket.
SampleBucket collect_samples(const TrackerState& state, const Frame& frame,
                             const std::vector<ScoredCandidate>& candidates,
                             const BoundingBox& est, const TrackerConfig& cfg,
                             AppearanceScorer& scorer);

/// Start tracking from the first-frame annotation.
TrackerState init_tracker(const Frame& first_frame, const BinaryMask& annotation,
                          AppearanceScorer& scorer);

/// One tracking step over the candidate set. On success the box is the
/// top-k mean, samples are collected and a short-term update runs; on
/// failure the previous box is returned unchanged and a long-term update
/// runs on the configured interval.
StepResult step(TrackerState& state, const Frame& frame, const CandidateSet& candidates,
                AppearanceScorer& scorer, const TrackerConfig& cfg, Rng& rng);

}  // namespace voscade
