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

#include "voscade/opn.hpp"

#include <stdexcept>

namespace voscade {

std::vector<BoundingBox> filter_proposals(const std::vector<Proposal>& proposals,
                                          const BoundingBox& prev_box,
                                          const ProposalFilterConfig& cfg) {
    std::vector<BoundingBox> kept;
    for (const Proposal& p : proposals) {
        if (iou(p.box, prev_box) > cfg.alpha) kept.push_back(p.box);
    }
    return kept;
}

CandidateSet generate_candidates(const Frame& frame, int frame_index,
                                 const BoundingBox& prev_box, ProposalSource& source,
                                 const ProposalFilterConfig& cfg, Rng& rng) {
    CandidateSet set;
    set.boxes = filter_proposals(source.propose(frame, frame_index), prev_box, cfg);
    set.n_from_source = static_cast<int>(set.boxes.size());
    if (set.n_from_source < cfg.min_count) {
        std::vector<BoundingBox> fill =
            gaussian_box_samples(prev_box, cfg.fill_count, cfg.sampling, rng);
        set.boxes.insert(set.boxes.end(), fill.begin(), fill.end());
        set.n_filled = static_cast<int>(fill.size());
    }
    return set;
}

double recall_at(const std::vector<std::vector<Proposal>>& per_frame_proposals,
                 const std::vector<BoundingBox>& gt_boxes, double thresh) {
    if (per_frame_proposals.empty()) throw std::invalid_argument("no frames");
    if (per_frame_proposals.size() != gt_boxes.size())
        throw std::invalid_argument("proposal/ground-truth frame count mismatch");
    if (!(thresh > 0.0 && thresh <= 1.0))
        throw std::invalid_argument("recall threshold must be in (0, 1]");

    size_t hits = 0;
    for (size_t f = 0; f < gt_boxes.size(); ++f) {
        double best = 0.0;
        for (const Proposal& p : per_frame_proposals[f])
            best = std::max(best, iou(p.box, gt_boxes[f]));
        if (best >= thresh) ++hits;
    }
    return double(hits) / double(gt_boxes.size());
}

}  // namespace voscade
