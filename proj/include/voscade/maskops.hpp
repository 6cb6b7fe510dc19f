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

#include <cstdint>
#include <vector>

#include "voscade/geometry.hpp"

namespace voscade {

/// Chebyshev (8-neighborhood) distance to the nearest pixel whose mask value
/// matches `target` (nonzero vs zero); -1 everywhere if no such pixel exists.
std::vector<int> chebyshev_distance(const BinaryMask& m, uint8_t target);

/// Foreground pixels 4-adjacent to background or to the frame edge.
BinaryMask boundary_mask(const BinaryMask& m);

/// Exact squared Euclidean distance to the nearest foreground pixel
/// (Felzenszwalb-Huttenlocher two-pass). Large sentinel when the mask is
/// empty.
std::vector<int64_t> squared_euclidean_distance(const BinaryMask& m);

/// Zero out every foreground pixel outside the largest 4-connected
/// component (ties broken by scan order). Empty masks pass through.
BinaryMask keep_largest_component(const BinaryMask& m);

}  // namespace voscade
