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

#include <string>
#include <vector>

#include "voscade/drsn.hpp"
#include "voscade/geometry.hpp"

namespace voscade {

struct EvalRow {
    std::string sequence;
    int object = 0;
    int frame = 0;  // 1-based
    double j = 0.0;
    double f = 0.0;
};

/// Per-frame J/F records plus DAVIS-style aggregates: frames are averaged
/// within each (sequence, object), then those means are averaged.
struct EvalReport {
    std::vector<EvalRow> rows;
    double j_mean = 0.0;
    double f_mean = 0.0;
    double g = 0.0;
    int frames_evaluated = 0;

    /// Recompute the aggregates from rows.
    void finalize();
};

/// Mask IoU; 1.0 when both masks are empty. Throws on dimension mismatch.
double region_similarity(const BinaryMask& pred, const BinaryMask& gt);

/// Boundary F-measure with a pixel tolerance band (Euclidean). tol < 0
/// selects the default ceil(0.008 * image diagonal). Both masks empty
/// scores 1.0; exactly one boundary empty scores 0.0.
double contour_accuracy(const BinaryMask& pred, const BinaryMask& gt, double tol = -1.0);

/// Per-object J/F over aligned prediction and ground-truth label maps. By
/// DAVIS convention the first (given) and last frames are excluded unless
/// include_first_last is set.
EvalReport evaluate_sequence(const std::vector<LabelMap>& preds,
                             const std::vector<LabelMap>& gts,
                             const std::vector<int>& object_ids,
                             bool include_first_last = false,
                             const std::string& sequence_name = "seq");

/// Merge per-sequence reports into one, re-aggregating over all
/// (sequence, object) pairs.
EvalReport combine_reports(const std::vector<EvalReport>& reports);

/// Success-plot area under the curve over thresholds {0, 0.05, ..., 1.0};
/// success uses IoU >= t, so a perfect tracker scores 1.0.
double auc_success(const std::vector<BoundingBox>& pred_boxes,
                   const std::vector<BoundingBox>& gt_boxes);

}  // namespace voscade
