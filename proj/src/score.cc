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

#include "dpfl/score.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpfl {
namespace {

// q without the domain check. Case order follows the definition: the left
// branch owns a == T(D).
int QUnchecked(const Dataset& dataset, double a) {
  const auto x = dataset.locations();
  const int half = dataset.median_index() + 1;  // ceil(n/2)
  const double optimum = dataset.median();
  if (a >= x.front() && a <= optimum) {
    // Largest 1-based index with x_i <= a.
    const int largest =
        static_cast<int>(std::upper_bound(x.begin(), x.end(), a) - x.begin());
    return std::max(0, half - largest);
  }
  if (a > optimum && a <= x.back()) {
    // Smallest 1-based index with x_i >= a.
    const int smallest =
        static_cast<int>(std::lower_bound(x.begin(), x.end(), a) - x.begin()) +
        1;
    return smallest - half;
  }
  return half;
}

int PAlphaUnchecked(const Dataset& dataset, double location, double radius) {
  const double nearest =
      std::clamp(dataset.median(), location - radius, location + radius);
  return QUnchecked(dataset, nearest);
}

absl::Status CheckLocation(const Dataset& dataset, double location) {
  if (!dataset.domain().Contains(location)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "LocationOutOfDomain: ", location, " is outside [",
        dataset.domain().lower(), ", ", dataset.domain().upper(), "]"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<WideningParam> WideningParam::Create(double alpha) {
  if (!(alpha >= 0 && alpha <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must lie in [0, 1], got ", alpha));
  }
  return WideningParam(alpha);
}

absl::StatusOr<int> QValue(const Dataset& dataset, double a) {
  if (absl::Status s = CheckLocation(dataset, a); !s.ok()) return s;
  return QUnchecked(dataset, dataset.domain().Clamp(a));
}

absl::StatusOr<int> PAlphaValue(const Dataset& dataset, double location,
                                WideningParam alpha) {
  if (absl::Status s = CheckLocation(dataset, location); !s.ok()) return s;
  return PAlphaUnchecked(dataset, dataset.domain().Clamp(location),
                         alpha.value() * dataset.diameter());
}

PiecewiseConstantFn PAlphaPieces(const Dataset& dataset, WideningParam alpha) {
  const double lo = dataset.domain().lower();
  const double hi = dataset.domain().upper();
  const double radius = alpha.value() * dataset.diameter();

  // p_alpha is constant between consecutive members of {x_j - r, x_j + r}.
  std::vector<double> cuts;
  cuts.reserve(2 * dataset.size() + 2);
  cuts.push_back(lo);
  cuts.push_back(hi);
  for (double x : dataset.locations()) {
    for (double c : {x - radius, x + radius}) {
      if (c > lo && c < hi) cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<double> breakpoints = {lo};
  std::vector<int> values;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = cuts[i] + (cuts[i + 1] - cuts[i]) / 2;
    const int value = PAlphaUnchecked(dataset, mid, radius);
    if (!values.empty() && values.back() == value) {
      breakpoints.back() = cuts[i + 1];
    } else {
      values.push_back(value);
      breakpoints.push_back(cuts[i + 1]);
    }
  }
  return *PiecewiseConstantFn::Create(std::move(breakpoints),
                                      std::move(values));
}

}  // namespace dpfl
