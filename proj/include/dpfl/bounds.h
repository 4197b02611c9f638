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

// Closed-form probability bounds for the widened median mechanism, the
// two-dataset lower-bound floor, and an exact privacy-loss auditor.
//
// With h = floor(n/2) every upper bound is built from the geometric ratio
//
//   R = (1 - exp(-eps h / 2)) / (1 - exp(-eps / 2)),
//
// evaluated through expm1 so that tiny eps keeps full precision.

#ifndef DPFL_BOUNDS_H_
#define DPFL_BOUNDS_H_

#include <optional>
#include <string_view>

#include "absl/status/statusor.h"
#include "dpfl/core.h"
#include "dpfl/mechanism.h"

namespace dpfl {

enum class Family { kCtm, kSpm };

// Accepts "ctm" and "spm".
absl::StatusOr<Family> ParseFamily(std::string_view name);
std::string_view FamilyName(Family family);

enum class BoundKind { kDirectLower, kPTailUpper, kKStar };

struct BoundParams {
  int n = 0;
  double epsilon = 0;
  double alpha = 0;
  double beta = 0;
  std::optional<double> lambda;
  int k = 0;
  Family family = Family::kCtm;
};

struct BoundReport {
  BoundKind kind;
  BoundParams params;
  double value;
  // True when the raw formula exceeded 1 and the value was clamped.
  bool capped = false;
  // k* only: set when n eps < 10 ln(1 / (alpha beta)), where the analytic
  // guarantee is not known to apply.
  bool guarantee_may_not_apply = false;
};

// R for h = floor(n/2).
double GeometricRatio(int n, double epsilon);

// e^{d eps} / (1 + e^{d eps}): no eps-DP mechanism succeeds on both of two
// datasets at change-one distance d with disjoint good sets above this. Its
// complement 1 / (1 + e^{d eps}) is the guaranteed failure floor.
absl::StatusOr<double> DirectLowerBound(int distance, double epsilon);

// Upper bound on Pr[p_alpha(D, M(D)) > k] over the family,
//   min(1, F * R * exp(-eps (k + 1) / 2) / (alpha (h - k))),
// with F = 1 for CTM and F = 2 n lambda for SPM_lambda. Fails with InvalidK
// unless 0 <= k < h.
absl::StatusOr<BoundReport> PTailUpper(const BoundParams& params);

// Smallest k certified by the proof's ceiling expression,
//   max(0, ceil(-1 + (2/eps) ln(G R / (alpha beta h)))),
// G = 2 for CTM and 4 n lambda for SPM_lambda. Fails with BetaOutOfRange
// unless 0 < beta < 1/3.
absl::StatusOr<BoundReport> KStar(const BoundParams& params);

// sup_l |log f(l | a) - log f(l | b)| over V, exact: both densities are
// constant on every cell of the union of their piece partitions. Fails with
// SizeMismatch or DomainMismatch.
absl::StatusOr<double> AuditDp(const Dataset& a, const Dataset& b,
                               const MechanismSpec& spec);

}  // namespace dpfl

#endif  // DPFL_BOUNDS_H_
