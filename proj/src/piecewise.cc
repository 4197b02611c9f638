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

#include "dpfl/piecewise.h"

#include <algorithm>

#include "absl/status/status.h"

namespace dpfl {

absl::StatusOr<PiecewiseConstantFn> PiecewiseConstantFn::Create(
    std::vector<double> breakpoints, std::vector<int> values) {
  if (values.empty() || breakpoints.size() != values.size() + 1) {
    return absl::InvalidArgumentError(
        "piecewise function needs one value per piece");
  }
  for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1])) {
      return absl::InvalidArgumentError(
          "breakpoints must be strictly increasing");
    }
  }
  return PiecewiseConstantFn(std::move(breakpoints), std::move(values));
}

int PiecewiseConstantFn::At(double x) const {
  if (x <= breakpoints_.front()) return values_.front();
  if (x >= breakpoints_.back()) return values_.back();
  // First breakpoint >= x.
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
  const int k = static_cast<int>(it - breakpoints_.begin());
  if (*it == x) return std::min(values_[k - 1], values_[k]);
  return values_[k - 1];
}

}  // namespace dpfl
