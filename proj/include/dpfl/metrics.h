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

// Welfare and fairness losses of placing the facility at `location` instead
// of the welfare-optimal median.

#ifndef DPFL_METRICS_H_
#define DPFL_METRICS_H_

#include <vector>

#include "absl/status/statusor.h"
#include "dpfl/core.h"

namespace dpfl {

// Selects between the closed-form expressions and the definitional oracles.
enum class Evaluation { kClosedForm, kOracle };

// The welfare-optimal location x_{ceil(n/2)}.
double OptimalLocation(const Dataset& dataset);

// s(D, l) = -sum_i |x_i - l|.
absl::StatusOr<double> SocialWelfare(const Dataset& dataset, double location);

// Entry i is |x_i - l| - |x_i - T(D)|, in sorted agent order.
absl::StatusOr<std::vector<double>> LossVector(const Dataset& dataset,
                                               double location);

// Largest individual loss. The closed form is |T(D) - l|.
absl::StatusOr<double> Fair(const Dataset& dataset, double location,
                            Evaluation mode = Evaluation::kClosedForm);

// 1-based indices of agents passed over when moving the facility from T(D)
// to `location`. Agents located exactly at `location` are included.
absl::StatusOr<std::vector<int>> CrossedSet(const Dataset& dataset,
                                            double location);

// s(D, T(D)) - s(D, l). The closed form is |T(D) - l| + 2 sum_{j in C}
// |x_j - l| over the crossed set C.
absl::StatusOr<double> Swdiff(const Dataset& dataset, double location,
                              Evaluation mode = Evaluation::kClosedForm);

}  // namespace dpfl

#endif  // DPFL_METRICS_H_
