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

#include "dpfl/bounds.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpfl/base/status_macros.h"

namespace dpfl {
namespace {

absl::Status CheckCommon(const BoundParams& params) {
  if (params.n < 3 || params.n % 2 == 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("EvenN: n must be odd and at least 3, got ", params.n));
  }
  if (!std::isfinite(params.epsilon) || params.epsilon <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", params.epsilon));
  }
  if (params.family == Family::kSpm &&
      !(params.lambda.has_value() && *params.lambda > 0)) {
    return absl::FailedPreconditionError(
        "InvalidParams: the spm family needs lambda > 0");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Family> ParseFamily(std::string_view name) {
  if (name == "ctm") return Family::kCtm;
  if (name == "spm") return Family::kSpm;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown family '", std::string(name), "' (expected ctm or spm)"));
}

std::string_view FamilyName(Family family) {
  return family == Family::kCtm ? "ctm" : "spm";
}

double GeometricRatio(int n, double epsilon) {
  const int h = n / 2;
  return std::expm1(-epsilon * h / 2) / std::expm1(-epsilon / 2);
}

absl::StatusOr<double> DirectLowerBound(int distance, double epsilon) {
  if (distance < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("distance must be >= 1, got ", distance));
  }
  if (!std::isfinite(epsilon) || epsilon <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  // Logistic form; exact for large d eps.
  return 1 / (1 + std::exp(-distance * epsilon));
}

absl::StatusOr<BoundReport> PTailUpper(const BoundParams& params) {
  RETURN_IF_ERROR(CheckCommon(params));
  const int h = params.n / 2;
  if (params.k < 0 || params.k >= h) {
    return absl::OutOfRangeError(
        absl::StrCat("InvalidK: k must lie in [0, ", h, "), got ", params.k));
  }
  if (!(params.alpha > 0)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "InvalidParams: alpha must be positive, got ", params.alpha));
  }
  const double factor =
      params.family == Family::kCtm ? 1.0 : 2 * params.n * *params.lambda;
  const double raw = factor * GeometricRatio(params.n, params.epsilon) *
                     std::exp(-params.epsilon * (params.k + 1) / 2) /
                     (params.alpha * (h - params.k));
  BoundReport report{BoundKind::kPTailUpper, params, std::min(1.0, raw)};
  report.capped = raw > 1;
  return report;
}

absl::StatusOr<BoundReport> KStar(const BoundParams& params) {
  RETURN_IF_ERROR(CheckCommon(params));
  if (!(params.beta > 0 && params.beta < 1.0 / 3)) {
    return absl::OutOfRangeError(absl::StrCat(
        "BetaOutOfRange: beta must lie in (0, 1/3), got ", params.beta));
  }
  if (!(params.alpha > 0 && params.alpha < 1)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "InvalidParams: alpha must lie in (0, 1), got ", params.alpha));
  }
  const int h = params.n / 2;
  const double factor =
      params.family == Family::kCtm ? 2.0 : 4 * params.n * *params.lambda;
  const double log_argument = factor *
                              GeometricRatio(params.n, params.epsilon) /
                              (params.alpha * params.beta * h);
  const double raw =
      std::ceil(-1 + (2 / params.epsilon) * std::log(log_argument));
  BoundReport report{BoundKind::kKStar, params, std::max(0.0, raw)};
  report.guarantee_may_not_apply =
      params.n * params.epsilon <
      10 * std::log(1 / (params.alpha * params.beta));
  return report;
}

absl::StatusOr<double> AuditDp(const Dataset& a, const Dataset& b,
                               const MechanismSpec& spec) {
  if (a.size() != b.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("SizeMismatch: datasets have ", a.size(), " and ",
                     b.size(), " agents"));
  }
  if (!(a.domain() == b.domain())) {
    return absl::InvalidArgumentError(
        "DomainMismatch: datasets live on different domains");
  }
  ASSIGN_OR_RETURN(OutputDensity fa, BuildOutputDensity(a, spec));
  ASSIGN_OR_RETURN(OutputDensity fb, BuildOutputDensity(b, spec));

  std::vector<double> cuts;
  for (const OutputDensity* f : {&fa, &fb}) {
    for (const DensityPiece& piece : f->pieces()) {
      cuts.push_back(piece.lower);
      cuts.push_back(piece.upper);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double sup = 0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = cuts[i] + (cuts[i + 1] - cuts[i]) / 2;
    sup = std::max(sup, std::abs(fa.LogDensityAt(mid) - fb.LogDensityAt(mid)));
  }
  return sup;
}

}  // namespace dpfl
