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

#ifndef DPFL_PIECEWISE_H_
#define DPFL_PIECEWISE_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace dpfl {

// Integer-valued step function over [breakpoints.front(), breakpoints.back()].
// Piece i covers the open interval (breakpoints[i], breakpoints[i+1]). At an
// interior breakpoint the function takes the smaller of its two neighbouring
// values, i.e. it is lower semicontinuous like the windowed minimum it
// represents.
class PiecewiseConstantFn {
 public:
  // Requires strictly increasing breakpoints, one value per piece and
  // values.size() >= 1.
  static absl::StatusOr<PiecewiseConstantFn> Create(
      std::vector<double> breakpoints, std::vector<int> values);

  int num_pieces() const { return static_cast<int>(values_.size()); }
  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const int> values() const { return values_; }

  double lower(int piece) const { return breakpoints_[piece]; }
  double upper(int piece) const { return breakpoints_[piece + 1]; }
  int value(int piece) const { return values_[piece]; }

  // Value at x. Points outside the support take the value of the nearest end
  // piece.
  int At(double x) const;

 private:
  PiecewiseConstantFn(std::vector<double> breakpoints, std::vector<int> values)
      : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {}

  std::vector<double> breakpoints_;
  std::vector<int> values_;
};

}  // namespace dpfl

#endif  // DPFL_PIECEWISE_H_
