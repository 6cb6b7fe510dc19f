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

#include <optional>
#include <utility>
#include <vector>

#include "voscade/geometry.hpp"

namespace voscade {

/// Per-pixel object-id image; 0 is background.
struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<int32_t> labels;

    LabelMap() = default;
    LabelMap(int w, int h) : width(w), height(h), labels(size_t(w) * h, 0) {}

    int32_t at(int x, int y) const { return labels[size_t(y) * width + x]; }
    void set(int x, int y, int32_t v) { labels[size_t(y) * width + x] = v; }

    /// Sorted nonzero ids present in the map.
    std::vector<int> object_ids() const;

    /// 0/1 mask of the pixels carrying `id`.
    BinaryMask mask_for(int id) const;

    bool operator==(const LabelMap&) const = default;
};

struct ReferenceConfig {
    int window = 4;          // n_dynamic * interval; informational
    int interval = 2;        // spacing of dynamic reference frames
    int n_dynamic = 2;       // number of dynamic references
    double expand = 1.5;     // box expansion before cropping
    int patch_side = 256;
    double fg_threshold = 0.5;
};

/// Square image+mask patch cut from a full frame; origin_box is the
/// (unrounded) full-frame box it came from.
struct ImageMaskPatch {
    Frame image;
    BinaryMask mask;
    BoundingBox origin_box;
};

/// What the segmenter sees: the annotated first frame, the dynamic
/// references, and the current frame with the previous predicted mask.
struct ReferenceSet {
    ImageMaskPatch static_ref;
    std::vector<ImageMaskPatch> dynamic;
    ImageMaskPatch current;
};

/// Pluggable segmentation backend: per-pixel foreground probability at
/// patch resolution, deterministic given inputs.
class MaskSegmenter {
public:
    virtual ~MaskSegmenter() = default;
    virtual std::vector<float> segment(const ReferenceSet& refs, int frame_index) = 0;
    virtual void adapt_to_first_frame(const ImageMaskPatch& static_pair) { (void)static_pair; }
};

/// Probability map pasted back into its full-frame footprint.
struct FootprintProbMap {
    IntRect rect;  // clipped to the frame
    std::vector<float> prob;
};

struct MaskPrediction {
    BinaryMask mask;  // full-frame
    FootprintProbMap footprint;
};

/// Per-object record of predicted masks and boxes, frame 1 holding the
/// ground-truth annotation. Reference patches are built when a frame is
/// appended so past frame images need not be retained.
class ObjectHistory {
public:
    ObjectHistory(const Frame& first_frame, const BinaryMask& annotation,
                  const ReferenceConfig& cfg);

    int frames() const { return static_cast<int>(entries_.size()); }
    const BinaryMask& mask(int frame_index) const;
    const std::optional<BoundingBox>& box(int frame_index) const;
    const ImageMaskPatch& static_pair() const { return static_pair_; }

    /// Reference pair for a frame; the static pair substitutes when that
    /// frame's predicted mask was empty.
    const ImageMaskPatch& reference_pair(int frame_index) const;

    void append(int frame_index, BinaryMask mask, std::optional<BoundingBox> box,
                std::optional<ImageMaskPatch> ref_pair);

private:
    struct Entry {
        BinaryMask mask;
        std::optional<BoundingBox> box;
        std::optional<ImageMaskPatch> ref_pair;
    };
    ImageMaskPatch static_pair_;
    std::vector<Entry> entries_;
};

/// Dynamic reference frame indices for frame n: max(1, n - j*interval) for
/// j = n_dynamic..1, non-decreasing; duplicates allowed.
std::vector<int> select_reference_indices(int n, const ReferenceConfig& cfg);

/// Crop an image-mask pair around the mask's expanded enclosing box.
/// Throws on an empty mask.
ImageMaskPatch build_reference_pair(const Frame& frame, const BinaryMask& mask,
                                    const ReferenceConfig& cfg);

/// Crop the current frame and previous mask around the expanded tracker box;
/// an empty previous mask gives an all-background mask channel.
ImageMaskPatch build_current_input(const Frame& frame, const BinaryMask& prev_mask,
                                   const BoundingBox& otn_box, const ReferenceConfig& cfg);

/// Assemble references, run the segmenter, paste the probability map back
/// to full-frame coordinates (bilinear), threshold, and extend the history.
MaskPrediction segment_object(ObjectHistory& history, const Frame& frame, int frame_index,
                              const BoundingBox& otn_box, MaskSegmenter& segmenter,
                              const ReferenceConfig& cfg);

/// Combine per-object probability footprints into one label map: highest
/// probability at or above fg_threshold wins, ties to the lower id.
LabelMap merge_objects(const std::vector<std::pair<FootprintProbMap, int>>& per_object,
                       int width, int height, double fg_threshold);

}  // namespace voscade
