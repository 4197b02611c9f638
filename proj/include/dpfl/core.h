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

// Domain model for one-dimensional facility location: an interval
// V = [-m/2, m/2] and an odd-sized multiset of agent locations on it.

#ifndef DPFL_CORE_H_
#define DPFL_CORE_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace dpfl {

// Absolute slack accepted on domain membership for parsed input. Values within
// the slack are clamped onto V.
inline constexpr double kDomainSlack = 1e-12;

// The interval V = [-m/2, m/2] of diameter m.
class Domain {
 public:
  // Fails with NonPositiveDiameter unless `diameter` is finite and > 0.
  static absl::StatusOr<Domain> Create(double diameter);

  double diameter() const { return diameter_; }
  double lower() const { return -diameter_ / 2; }
  double upper() const { return diameter_ / 2; }

  // Membership with kDomainSlack tolerance.
  bool Contains(double x) const;
  double Clamp(double x) const;

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.diameter_ == b.diameter_;
  }

 private:
  explicit Domain(double diameter) : diameter_(diameter) {}

  double diameter_;
};

// A sorted multiset of n agent locations on V with n odd. Immutable.
class Dataset {
 public:
  const Domain& domain() const { return domain_; }
  double diameter() const { return domain_.diameter(); }
  int size() const { return static_cast<int>(locations_.size()); }
  std::span<const double> locations() const { return locations_; }

  // 0-based access into the sorted locations.
  double operator[](int i) const { return locations_[i]; }

  // 0-based index of the median agent x_{ceil(n/2)}.
  int median_index() const { return (size() - 1) / 2; }
  double median() const { return locations_[median_index()]; }

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.domain_ == b.domain_ && a.locations_ == b.locations_;
  }

 private:
  friend absl::StatusOr<Dataset> LoadDataset(std::span<const double> raw,
                                             double diameter);

  Dataset(Domain domain, std::vector<double> locations)
      : domain_(domain), locations_(std::move(locations)) {}

  Domain domain_;
  std::vector<double> locations_;
};

// Validates, clamps and sorts `raw`. Errors (all InvalidArgument):
// NonPositiveDiameter, EmptyDataset, EvenN, OutOfDomain.
absl::StatusOr<Dataset> LoadDataset(std::span<const double> raw,
                                    double diameter);

// Size of the multiset difference |a - b|. Values are matched by exact
// equality; generators build shared points with identical arithmetic so this
// is well defined. Fails with SizeMismatch or DomainMismatch.
absl::StatusOr<int> ChangeOneDistance(const Dataset& a, const Dataset& b);

// Two equal-size datasets together with their change-one distance.
struct NeighborPair {
  Dataset a;
  Dataset b;
  int distance;
};

absl::StatusOr<NeighborPair> MakeNeighborPair(Dataset a, Dataset b);

}  // namespace dpfl

#endif  // DPFL_CORE_H_
