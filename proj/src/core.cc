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

#include "dpfl/core.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpfl/base/status_macros.h"

namespace dpfl {

absl::StatusOr<Domain> Domain::Create(double diameter) {
  if (!std::isfinite(diameter) || diameter <= 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "NonPositiveDiameter: m must be positive, got ", diameter));
  }
  return Domain(diameter);
}

bool Domain::Contains(double x) const {
  return std::isfinite(x) && std::abs(x) <= upper() + kDomainSlack;
}

double Domain::Clamp(double x) const { return std::clamp(x, lower(), upper()); }

absl::StatusOr<Dataset> LoadDataset(std::span<const double> raw,
                                    double diameter) {
  ASSIGN_OR_RETURN(Domain domain, Domain::Create(diameter));
  if (raw.empty()) {
    return absl::InvalidArgumentError("EmptyDataset: no locations given");
  }
  if (raw.size() % 2 == 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "EvenN: the number of agents must be odd, got ", raw.size()));
  }
  std::vector<double> locations;
  locations.reserve(raw.size());
  for (double x : raw) {
    if (!domain.Contains(x)) {
      return absl::InvalidArgumentError(
          absl::StrCat("OutOfDomain: location ", x, " is outside [",
                       domain.lower(), ", ", domain.upper(), "]"));
    }
    locations.push_back(domain.Clamp(x));
  }
  std::sort(locations.begin(), locations.end());
  return Dataset(domain, std::move(locations));
}

absl::StatusOr<int> ChangeOneDistance(const Dataset& a, const Dataset& b) {
  if (a.size() != b.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("SizeMismatch: datasets have ", a.size(), " and ",
                     b.size(), " agents"));
  }
  if (!(a.domain() == b.domain())) {
    return absl::InvalidArgumentError(
        "DomainMismatch: datasets live on different domains");
  }
  // Two-pointer sweep over the sorted sequences counts matched elements.
  int matched = 0;
  int i = 0;
  int j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++matched;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return a.size() - matched;
}

absl::StatusOr<NeighborPair> MakeNeighborPair(Dataset a, Dataset b) {
  ASSIGN_OR_RETURN(int distance, ChangeOneDistance(a, b));
  return NeighborPair{std::move(a), std::move(b), distance};
}

}  // namespace dpfl
