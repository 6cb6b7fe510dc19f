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

#include <vector>

#include "voscade/geometry.hpp"

namespace voscade {

/// Class-agnostic scored box from a proposal source. The objectness score is
/// carried but never used for filtering; gating is purely geometric.
struct Proposal {
    BoundingBox box;
    double objectness = 0.0;
};

struct ProposalFilterConfig {
    double alpha = 0.3;   // IoU gate against the previous box
    int min_count = 5;    // below this many survivors, fill up
    int fill_count = 256; // Gaussian boxes appended on shortfall
    GaussianSampleConfig sampling;
};

/// Pluggable producer of class-agnostic proposals. Implementations must be
/// deterministic given the frame, its index and their own seed.
class ProposalSource {
public:
    virtual ~ProposalSource() = default;
    virtual std::vector<Proposal> propose(const Frame& frame, int frame_index) = 0;
};

/// Candidate boxes fed to the tracker: survivors of the IoU gate first,
/// then any fill-up samples.
struct CandidateSet {
    std::vector<BoundingBox> boxes;
    int n_from_source = 0;
    int n_filled = 0;
};

/// Keep exactly the proposals whose IoU with prev_box exceeds cfg.alpha,
/// in source order.
std::vector<BoundingBox> filter_proposals(const std::vector<Proposal>& proposals,
                                          const BoundingBox& prev_box,
                                          const ProposalFilterConfig& cfg);

/// Gate the source's proposals; when fewer than cfg.min_count survive,
/// append cfg.fill_count Gaussian samples around prev_box.
CandidateSet generate_candidates(const Frame& frame, int frame_index,
                                 const BoundingBox& prev_box, ProposalSource& source,
                                 const ProposalFilterConfig& cfg, Rng& rng);

/// Fraction of frames whose best proposal reaches IoU >= thresh against the
/// ground-truth box. Throws on empty input.
double recall_at(const std::vector<std::vector<Proposal>>& per_frame_proposals,
                 const std::vector<BoundingBox>& gt_boxes, double thresh);

}  // namespace voscade
