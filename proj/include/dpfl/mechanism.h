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

// The widened exponential mechanism for the median,
//
//   f(l | D)  proportional to  exp(-(epsilon / 2) * p_alpha(D, l)),  l in V.
//
// The density is piecewise constant on the pieces of p_alpha, so it is held
// exactly as a list of weighted intervals. Event probabilities are computed by
// integrating over those intervals and sampling is a categorical draw over
// pieces followed by a uniform draw inside the chosen piece.

#ifndef DPFL_MECHANISM_H_
#define DPFL_MECHANISM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dpfl/core.h"
#include "dpfl/score.h"

namespace dpfl {

struct MechanismSpec {
  // Fails unless epsilon is finite and positive.
  static absl::StatusOr<MechanismSpec> Create(double epsilon, double alpha);

  double epsilon;
  WideningParam alpha;
};

struct DensityPiece {
  double lower;
  double upper;
  int score;          // p_alpha on the piece
  double log_weight;  // log(upper - lower) - (epsilon / 2) * score
};

// Normalized output distribution of the mechanism on one dataset.
class OutputDensity {
 public:
  std::span<const DensityPiece> pieces() const { return pieces_; }
  double log_total_mass() const { return log_total_mass_; }
  double epsilon() const { return epsilon_; }
  double lower() const { return pieces_.front().lower; }
  double upper() const { return pieces_.back().upper; }

  // Probability of piece i.
  double probability(int piece) const { return probabilities_[piece]; }

  // Cumulative probabilities; entry i is the mass of pieces [0, i).
  std::span<const double> cumulative() const { return cumulative_; }

  // log f(l | D) on the interior of a piece. At a shared breakpoint the piece
  // to the right wins; single points carry no mass.
  double LogDensityAt(double location) const;

  // Pr[a <= M(D) <= b].
  double Mass(double a, double b) const;

 private:
  friend absl::StatusOr<OutputDensity> BuildOutputDensity(
      const Dataset& dataset, const MechanismSpec& spec);

  std::vector<DensityPiece> pieces_;
  std::vector<double> probabilities_;
  std::vector<double> cumulative_;
  double log_total_mass_ = 0;
  double epsilon_ = 0;
};

// Builds the exact density in log space. Weights are combined with a
// max-shifted log-sum-exp so no piece underflows for n * epsilon up to 1e6.
// Fails with DegenerateSupport if the pieces carry no length.
absl::StatusOr<OutputDensity> BuildOutputDensity(const Dataset& dataset,
                                                 const MechanismSpec& spec);

// One draw of M(D). Deterministic in (rng_seed, trial_index).
double SampleLocation(const OutputDensity& density, uint64_t rng_seed,
                      uint64_t trial_index);

enum class TailMetric { kScore, kFair, kSwdiff };

// Accepts "p", "fair" and "swdiff". Fails with UnknownMetric.
absl::StatusOr<TailMetric> ParseTailMetric(std::string_view name);
std::string_view TailMetricName(TailMetric metric);

// Evaluates a metric at many locations of one dataset in O(log n) each.
class MetricEvaluator {
 public:
  MetricEvaluator(const Dataset& dataset, WideningParam alpha);

  double operator()(TailMetric metric, double location) const;

  // s(D, T(D)) - s(D, l) via prefix sums.
  double Swdiff(double location) const;

  // Inverse of Swdiff on one side of the median: the location at which the
  // welfare gap reaches `threshold`, or nullopt when the gap never exceeds it
  // on that side. The gap grows with slope 1 + 2|C| away from the median.
  std::optional<double> SwdiffInverseLeft(double threshold) const;
  std::optional<double> SwdiffInverseRight(double threshold) const;

 private:
  double SumOfDistances(double location) const;

  Dataset dataset_;
  WideningParam alpha_;
  std::vector<double> prefix_;
  double median_sum_;
};

// Pr[metric(D, M(D)) > threshold], exact up to floating point. For the score
// this sums piece masses, for FAIR it integrates over |l - T(D)| > threshold
// and for SWDIFF it first inverts the monotone welfare gap on each side.
absl::StatusOr<double> ExactTail(const Dataset& dataset,
                                 const MechanismSpec& spec, TailMetric metric,
                                 double threshold);
absl::StatusOr<double> ExactTail(const Dataset& dataset,
                                 const OutputDensity& density,
                                 TailMetric metric, double threshold);

// Smallest t with Pr[FAIR(D, M(D)) > t] <= beta, for 0 < beta < 1.
absl::StatusOr<double> FairQuantile(const Dataset& dataset,
                                    const MechanismSpec& spec, double beta);
absl::StatusOr<double> FairQuantile(const Dataset& dataset,
                                    const OutputDensity& density, double beta);

}  // namespace dpfl

#endif  // DPFL_MECHANISM_H_
