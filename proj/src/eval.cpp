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

#include "voscade/eval.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "voscade/kernels.hpp"
#include "voscade/maskops.hpp"

namespace voscade {

double region_similarity(const BinaryMask& pred, const BinaryMask& gt) {
    if (pred.width != gt.width || pred.height != gt.height)
        throw std::invalid_argument("mask dimension mismatch");
    uint64_t inter = 0, uni = 0;
    kernels::overlap_counts(pred.bits.data(), gt.bits.data(), pred.bits.size(), inter, uni);
    if (uni == 0) return 1.0;
    return double(inter) / double(uni);
}

double contour_accuracy(const BinaryMask& pred, const BinaryMask& gt, double tol) {
    if (pred.width != gt.width || pred.height != gt.height)
        throw std::invalid_argument("mask dimension mismatch");
    if (tol < 0.0) {
        double diag = std::sqrt(double(pred.width) * pred.width +
                                double(pred.height) * pred.height);
        tol = std::ceil(0.008 * diag);
    }
    BinaryMask pb = boundary_mask(pred);
    BinaryMask gb = boundary_mask(gt);
    uint64_t np = pb.foreground_count();
    uint64_t ng = gb.foreground_count();
    if (np == 0 && ng == 0) return 1.0;
    if (np == 0 || ng == 0) return 0.0;

    int64_t tol2 = static_cast<int64_t>(tol * tol + 1e-9);
    auto matched_fraction = [&](const BinaryMask& from, const BinaryMask& to, uint64_t n) {
        std::vector<int64_t> dist = squared_euclidean_distance(to);
        uint64_t hit = 0;
        for (size_t i = 0; i < from.bits.size(); ++i)
            if (from.bits[i] && dist[i] <= tol2) ++hit;
        return double(hit) / double(n);
    };
    double precision = matched_fraction(pb, gb, np);
    double recall = matched_fraction(gb, pb, ng);
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

void EvalReport::finalize() {
    std::map<std::pair<std::string, int>, std::pair<double, int>> j_acc, f_acc;
    for (const EvalRow& r : rows) {
        auto key = std::make_pair(r.sequence, r.object);
        j_acc[key].first += r.j;
        j_acc[key].second += 1;
        f_acc[key].first += r.f;
        f_acc[key].second += 1;
    }
    j_mean = f_mean = 0.0;
    frames_evaluated = static_cast<int>(rows.size());
    if (j_acc.empty()) {
        g = 0.0;
        return;
    }
    for (const auto& [key, acc] : j_acc) j_mean += acc.first / acc.second;
    for (const auto& [key, acc] : f_acc) f_mean += acc.first / acc.second;
    j_mean /= double(j_acc.size());
    f_mean /= double(f_acc.size());
    g = 0.5 * (j_mean + f_mean);
}

EvalReport evaluate_sequence(const std::vector<LabelMap>& preds,
                             const std::vector<LabelMap>& gts,
                             const std::vector<int>& object_ids,
                             bool include_first_last,
                             const std::string& sequence_name) {
    if (preds.size() != gts.size()) throw std::invalid_argument("frame count mismatch");
    if (preds.empty()) throw std::invalid_argument("no frames");

    EvalReport report;
    size_t first = include_first_last ? 0 : 1;
    size_t last = include_first_last ? preds.size() : (preds.size() > 1 ? preds.size() - 1 : 0);
    for (int id : object_ids) {
        for (size_t fidx = first; fidx < last; ++fidx) {
            BinaryMask pm = preds[fidx].mask_for(id);
            BinaryMask gm = gts[fidx].mask_for(id);
            EvalRow row;
            row.sequence = sequence_name;
            row.object = id;
            row.frame = static_cast<int>(fidx) + 1;
            row.j = region_similarity(pm, gm);
            row.f = contour_accuracy(pm, gm);
            report.rows.push_back(std::move(row));
        }
    }
    report.finalize();
    return report;
}

EvalReport combine_reports(const std::vector<EvalReport>& reports) {
    EvalReport out;
    for (const EvalReport& r : reports)
        out.rows.insert(out.rows.end(), r.rows.begin(), r.rows.end());
    out.finalize();
    return out;
}

double auc_success(const std::vector<BoundingBox>& pred_boxes,
                   const std::vector<BoundingBox>& gt_boxes) {
    if (pred_boxes.empty()) throw std::invalid_argument("no frames");
    if (pred_boxes.size() != gt_boxes.size())
        throw std::invalid_argument("box list length mismatch");
    std::vector<double> ious(pred_boxes.size());
    for (size_t i = 0; i < pred_boxes.size(); ++i) ious[i] = iou(pred_boxes[i], gt_boxes[i]);

    double auc = 0.0;
    for (int t = 0; t <= 20; ++t) {
        double thresh = double(t) / 20.0;
        size_t hits = 0;
        for (double v : ious)
            if (v >= thresh) ++hits;
        auc += double(hits) / double(ious.size());
    }
    return auc / 21.0;
}

}  // namespace voscade
