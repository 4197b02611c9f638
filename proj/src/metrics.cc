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

#include "dpfl/metrics.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpfl/base/status_macros.h"

namespace dpfl {
namespace {

absl::Status CheckLocation(const Dataset& dataset, double location) {
  if (!dataset.domain().Contains(location)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "LocationOutOfDomain: ", location, " is outside [",
        dataset.domain().lower(), ", ", dataset.domain().upper(), "]"));
  }
  return absl::OkStatus();
}

double SumOfDistances(const Dataset& dataset, double location) {
  double sum = 0;
  for (double x : dataset.locations()) sum += std::abs(x - location);
  return sum;
}

}  // namespace

double OptimalLocation(const Dataset& dataset) { return dataset.median(); }

absl::StatusOr<double> SocialWelfare(const Dataset& dataset, double location) {
  RETURN_IF_ERROR(CheckLocation(dataset, location));
  return -SumOfDistances(dataset, location);
}

absl::StatusOr<std::vector<double>> LossVector(const Dataset& dataset,
                                               double location) {
  RETURN_IF_ERROR(CheckLocation(dataset, location));
  const double optimum = OptimalLocation(dataset);
  std::vector<double> losses;
  losses.reserve(dataset.size());
  for (double x : dataset.locations()) {
    losses.push_back(std::abs(x - location) - std::abs(x - optimum));
  }
  return losses;
}

absl::StatusOr<double> Fair(const Dataset& dataset, double location,
                            Evaluation mode) {
  if (mode == Evaluation::kClosedForm) {
    RETURN_IF_ERROR(CheckLocation(dataset, location));
    return std::abs(OptimalLocation(dataset) - location);
  }
  ASSIGN_OR_RETURN(std::vector<double> losses, LossVector(dataset, location));
  return *std::max_element(losses.begin(), losses.end());
}

absl::StatusOr<std::vector<int>> CrossedSet(const Dataset& dataset,
                                            double location) {
  RETURN_IF_ERROR(CheckLocation(dataset, location));
  const int median = dataset.median_index();
  const double optimum = dataset.median();
  std::vector<int> crossed;
  if (location < optimum) {
    for (int i = 0; i < median; ++i) {
      if (dataset[i] >= location && dataset[i] <= optimum) {
        crossed.push_back(i + 1);
      }
    }
  } else if (location > optimum) {
    for (int i = median + 1; i < dataset.size(); ++i) {
      if (dataset[i] >= optimum && dataset[i] <= location) {
        crossed.push_back(i + 1);
      }
    }
  }
  return crossed;
}

absl::StatusOr<double> Swdiff(const Dataset& dataset, double location,
                              Evaluation mode) {
  RETURN_IF_ERROR(CheckLocation(dataset, location));
  const double optimum = OptimalLocation(dataset);
  if (mode == Evaluation::kOracle) {
    return SumOfDistances(dataset, location) - SumOfDistances(dataset, optimum);
  }
  ASSIGN_OR_RETURN(std::vector<int> crossed, CrossedSet(dataset, location));
  double crossed_sum = 0;
  for (int index : crossed) {
    crossed_sum += std::abs(dataset[index - 1] - location);
  }
  return std::abs(optimum - location) + 2 * crossed_sum;
}

}  // namespace dpfl
