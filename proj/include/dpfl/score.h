//
// Copyright 2026 The dpfl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Rank-based percentile loss q(D, a) and its widened variant
//
//   p_alpha(D, l) = min { q(D, a) : |a - l| <= alpha * m },
//
// the score (negated) of the private median mechanism. Both count how many
// agents sit between a candidate location and the median, so changing one
// agent moves either by at most 1.

#ifndef DPFL_SCORE_H_
#define DPFL_SCORE_H_

#include "absl/status/statusor.h"
#include "dpfl/core.h"
#include "dpfl/piecewise.h"

namespace dpfl {

// Widening radius as a fraction of the diameter, alpha in [0, 1].
class WideningParam {
 public:
  static absl::StatusOr<WideningParam> Create(double alpha);

  double value() const { return alpha_; }

 private:
  explicit WideningParam(double alpha) : alpha_(alpha) {}

  double alpha_;
};

// Percentile loss. Returns 0 exactly at the median and ceil(n/2) outside
// [x_1, x_n]. Fails with LocationOutOfDomain.
absl::StatusOr<int> QValue(const Dataset& dataset, double a);

// Widened percentile loss. Since q is unimodal around the median, the window
// minimum is q evaluated at the projection of the median onto
// [l - alpha m, l + alpha m]. The window is not clipped to V.
absl::StatusOr<int> PAlphaValue(const Dataset& dataset, double location,
                                WideningParam alpha);

// p_alpha(D, .) over all of V as at most n + 2 merged pieces. Built in
// O(n log n) from the candidate breakpoints x_j +- alpha m. Agrees with
// PAlphaValue except at alpha = 0 on the single point T, whose zero-width
// level is dropped.
PiecewiseConstantFn PAlphaPieces(const Dataset& dataset, WideningParam alpha);

}  // namespace dpfl

#endif  // DPFL_SCORE_H_
