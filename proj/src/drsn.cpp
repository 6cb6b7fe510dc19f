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

#include "voscade/drsn.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "voscade/kernels.hpp"

namespace voscade {

std::vector<int> LabelMap::object_ids() const {
    std::set<int32_t> ids;
    for (int32_t v : labels)
        if (v != 0) ids.insert(v);
    return std::vector<int>(ids.begin(), ids.end());
}

BinaryMask LabelMap::mask_for(int id) const {
    BinaryMask m(width, height);
    for (size_t i = 0; i < labels.size(); ++i) m.bits[i] = labels[i] == id ? 1 : 0;
    return m;
}

ObjectHistory::ObjectHistory(const Frame& first_frame, const BinaryMask& annotation,
                             const ReferenceConfig& cfg)
    : static_pair_(build_reference_pair(first_frame, annotation, cfg)) {
    Entry e;
    e.mask = annotation;
    e.box = enclosing_box(annotation);
    e.ref_pair = static_pair_;
    entries_.push_back(std::move(e));
}

const BinaryMask& ObjectHistory::mask(int frame_index) const {
    return entries_.at(size_t(frame_index) - 1).mask;
}

const std::optional<BoundingBox>& ObjectHistory::box(int frame_index) const {
    return entries_.at(size_t(frame_index) - 1).box;
}

const ImageMaskPatch& ObjectHistory::reference_pair(int frame_index) const {
    const Entry& e = entries_.at(size_t(frame_index) - 1);
    return e.ref_pair ? *e.ref_pair : static_pair_;
}

void ObjectHistory::append(int frame_index, BinaryMask mask, std::optional<BoundingBox> box,
                           std::optional<ImageMaskPatch> ref_pair) {
    if (frame_index != frames() + 1)
        throw std::invalid_argument("history entries must be contiguous");
    entries_.push_back(Entry{std::move(mask), box, std::move(ref_pair)});
}

std::vector<int> select_reference_indices(int n, const ReferenceConfig& cfg) {
    if (n < 2) throw std::invalid_argument("reference selection needs n >= 2");
    std::vector<int> out;
    out.reserve(cfg.n_dynamic);
    for (int j = cfg.n_dynamic; j >= 1; --j)
        out.push_back(std::max(1, n - j * cfg.interval));
    return out;
}

ImageMaskPatch build_reference_pair(const Frame& frame, const BinaryMask& mask,
                                    const ReferenceConfig& cfg) {
    std::optional<BoundingBox> box = enclosing_box(mask);
    if (!box) throw std::invalid_argument("empty reference mask");
    ImageMaskPatch patch;
    patch.origin_box = expand_box(*box, cfg.expand);
    patch.image = crop_resize(frame, patch.origin_box, cfg.patch_side);
    patch.mask = crop_resize_mask(mask, patch.origin_box, cfg.patch_side);
    return patch;
}

ImageMaskPatch build_current_input(const Frame& frame, const BinaryMask& prev_mask,
                                   const BoundingBox& otn_box, const ReferenceConfig& cfg) {
    if (!otn_box.valid()) throw std::invalid_argument("invalid tracker box");
    ImageMaskPatch patch;
    patch.origin_box = expand_box(otn_box, cfg.expand);
    patch.image = crop_resize(frame, patch.origin_box, cfg.patch_side);
    patch.mask = crop_resize_mask(prev_mask, patch.origin_box, cfg.patch_side);
    return patch;
}

MaskPrediction segment_object(ObjectHistory& history, const Frame& frame, int frame_index,
                              const BoundingBox& otn_box, MaskSegmenter& segmenter,
                              const ReferenceConfig& cfg) {
    if (history.frames() != frame_index - 1)
        throw std::invalid_argument("history must cover frames 1..N-1");

    ReferenceSet refs;
    refs.static_ref = history.static_pair();
    for (int idx : select_reference_indices(frame_index, cfg))
        refs.dynamic.push_back(history.reference_pair(idx));
    refs.current = build_current_input(frame, history.mask(frame_index - 1), otn_box, cfg);

    std::vector<float> prob = segmenter.segment(refs, frame_index);
    int side = cfg.patch_side;
    if (prob.size() != size_t(side) * side)
        throw std::runtime_error("segmenter returned a map of the wrong size");

    // Paste back: resample the patch-resolution map over the rounded origin
    // box, clipped to the frame. Probability is zero outside the footprint.
    IntRect r = rounded_rect(refs.current.origin_box);
    MaskPrediction out;
    out.mask = BinaryMask(frame.width, frame.height);

    int cx0 = std::max(r.x, 0);
    int cy0 = std::max(r.y, 0);
    int cx1 = std::min(r.x + r.w, frame.width);
    int cy1 = std::min(r.y + r.h, frame.height);
    out.footprint.rect = {cx0, cy0, std::max(0, cx1 - cx0), std::max(0, cy1 - cy0)};
    const IntRect& c = out.footprint.rect;
    out.footprint.prob.assign(size_t(c.w) * c.h, 0.0f);

    if (c.w > 0 && c.h > 0) {
        float sxstep = float(side) / float(r.w);
        float systep = float(side) / float(r.h);
        float sx0 = (float(c.x - r.x) + 0.5f) * sxstep - 0.5f;
        float sy0 = (float(c.y - r.y) + 0.5f) * systep - 0.5f;
        kernels::bilinear_map(prob.data(), side, side, out.footprint.prob.data(), c.w, c.h,
                              sx0, sxstep, sy0, systep);
        std::vector<uint8_t> fg(out.footprint.prob.size());
        kernels::threshold_ge(out.footprint.prob.data(), out.footprint.prob.size(),
                              float(cfg.fg_threshold), fg.data());
        for (int y = 0; y < c.h; ++y) {
            uint8_t* dst = out.mask.bits.data() + size_t(c.y + y) * frame.width + c.x;
            std::copy_n(fg.data() + size_t(y) * c.w, c.w, dst);
        }
    }

    std::optional<ImageMaskPatch> pair;
    if (!out.mask.empty_fg()) pair = build_reference_pair(frame, out.mask, cfg);
    history.append(frame_index, out.mask, otn_box, std::move(pair));
    return out;
}

LabelMap merge_objects(const std::vector<std::pair<FootprintProbMap, int>>& per_object,
                       int width, int height, double fg_threshold) {
    std::set<int> seen;
    for (const auto& [fp, id] : per_object) {
        if (!seen.insert(id).second) throw std::invalid_argument("duplicate object id");
        if (id <= 0) throw std::invalid_argument("object ids must be positive");
        if (fp.rect.x < 0 || fp.rect.y < 0 || fp.rect.x + fp.rect.w > width ||
            fp.rect.y + fp.rect.h > height)
            throw std::invalid_argument("footprint outside frame bounds");
    }

    LabelMap out(width, height);
    std::vector<float> best(size_t(width) * height, -1.0f);
    for (const auto& [fp, id] : per_object) {
        for (int y = 0; y < fp.rect.h; ++y) {
            for (int x = 0; x < fp.rect.w; ++x) {
                float p = fp.prob[size_t(y) * fp.rect.w + x];
                if (p < float(fg_threshold)) continue;
                size_t idx = size_t(fp.rect.y + y) * width + (fp.rect.x + x);
                if (p > best[idx] || (p == best[idx] && id < out.labels[idx])) {
                    best[idx] = p;
                    out.labels[idx] = id;
                }
            }
        }
    }
    return out;
}

}  // namespace voscade
