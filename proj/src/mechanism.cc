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

#include "dpfl/mechanism.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpfl/base/status_macros.h"
#include "dpfl/rng.h"

namespace dpfl {

absl::StatusOr<MechanismSpec> MechanismSpec::Create(double epsilon,
                                                    double alpha) {
  if (!std::isfinite(epsilon) || epsilon <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  ASSIGN_OR_RETURN(WideningParam widening, WideningParam::Create(alpha));
  return MechanismSpec{epsilon, widening};
}

double OutputDensity::LogDensityAt(double location) const {
  auto it = std::upper_bound(
      pieces_.begin(), pieces_.end(), location,
      [](double x, const DensityPiece& piece) { return x < piece.upper; });
  if (it == pieces_.end()) --it;
  return -(epsilon_ / 2) * it->score - log_total_mass_;
}

double OutputDensity::Mass(double a, double b) const {
  a = std::max(a, lower());
  b = std::min(b, upper());
  if (!(a < b)) return 0;
  double mass = 0;
  for (size_t i = 0; i < pieces_.size(); ++i) {
    const DensityPiece& piece = pieces_[i];
    if (piece.upper <= a) continue;
    if (piece.lower >= b) break;
    const double overlap = std::min(b, piece.upper) - std::max(a, piece.lower);
    const double length = piece.upper - piece.lower;
    mass += overlap >= length ? probabilities_[i]
                              : probabilities_[i] * (overlap / length);
  }
  return std::min(mass, 1.0);
}

absl::StatusOr<OutputDensity> BuildOutputDensity(const Dataset& dataset,
                                                 const MechanismSpec& spec) {
  const PiecewiseConstantFn score = PAlphaPieces(dataset, spec.alpha);
  OutputDensity density;
  density.epsilon_ = spec.epsilon;
  double max_log_weight = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < score.num_pieces(); ++i) {
    const double length = score.upper(i) - score.lower(i);
    if (!(length > 0)) continue;
    const double log_weight =
        std::log(length) - (spec.epsilon / 2) * score.value(i);
    density.pieces_.push_back(
        {score.lower(i), score.upper(i), score.value(i), log_weight});
    max_log_weight = std::max(max_log_weight, log_weight);
  }
  if (density.pieces_.empty()) {
    return absl::InvalidArgumentError(
        "DegenerateSupport: every piece of the output space has zero length");
  }

  double shifted_sum = 0;
  for (const DensityPiece& piece : density.pieces_) {
    shifted_sum += std::exp(piece.log_weight - max_log_weight);
  }
  density.log_total_mass_ = max_log_weight + std::log(shifted_sum);

  density.probabilities_.reserve(density.pieces_.size());
  density.cumulative_.reserve(density.pieces_.size() + 1);
  density.cumulative_.push_back(0);
  for (const DensityPiece& piece : density.pieces_) {
    const double p = std::exp(piece.log_weight - density.log_total_mass_);
    density.probabilities_.push_back(p);
    density.cumulative_.push_back(density.cumulative_.back() + p);
  }
  return density;
}

double SampleLocation(const OutputDensity& density, uint64_t rng_seed,
                      uint64_t trial_index) {
  const auto cumulative = density.cumulative();
  const double u = CounterUniform(rng_seed, trial_index, 0) * cumulative.back();
  int piece = static_cast<int>(
      std::upper_bound(cumulative.begin() + 1, cumulative.end(), u) -
      (cumulative.begin() + 1));
  piece = std::min(piece, static_cast<int>(density.pieces().size()) - 1);
  const DensityPiece& chosen = density.pieces()[piece];
  const double v = CounterUniform(rng_seed, trial_index, 1);
  return std::min(chosen.lower + v * (chosen.upper - chosen.lower),
                  chosen.upper);
}

absl::StatusOr<TailMetric> ParseTailMetric(std::string_view name) {
  if (name == "p") return TailMetric::kScore;
  if (name == "fair") return TailMetric::kFair;
  if (name == "swdiff") return TailMetric::kSwdiff;
  return absl::InvalidArgumentError(absl::StrCat(
      "UnknownMetric: '", std::string(name), "' (expected p, fair or swdiff)"));
}

std::string_view TailMetricName(TailMetric metric) {
  switch (metric) {
    case TailMetric::kScore:
      return "p";
    case TailMetric::kFair:
      return "fair";
    case TailMetric::kSwdiff:
      return "swdiff";
  }
  return "unknown";
}

MetricEvaluator::MetricEvaluator(const Dataset& dataset, WideningParam alpha)
    : dataset_(dataset), alpha_(alpha) {
  prefix_.reserve(dataset.size() + 1);
  prefix_.push_back(0);
  for (double x : dataset.locations()) prefix_.push_back(prefix_.back() + x);
  median_sum_ = SumOfDistances(dataset.median());
}

double MetricEvaluator::SumOfDistances(double location) const {
  const auto x = dataset_.locations();
  const int n = dataset_.size();
  const int below = static_cast<int>(
      std::upper_bound(x.begin(), x.end(), location) - x.begin());
  return location * below - prefix_[below] + (prefix_[n] - prefix_[below]) -
         location * (n - below);
}

double MetricEvaluator::Swdiff(double location) const {
  return std::max(0.0, SumOfDistances(location) - median_sum_);
}

double MetricEvaluator::operator()(TailMetric metric, double location) const {
  switch (metric) {
    case TailMetric::kScore:
      return *PAlphaValue(dataset_, location, alpha_);
    case TailMetric::kFair:
      return std::abs(location - dataset_.median());
    case TailMetric::kSwdiff:
      return Swdiff(location);
  }
  return 0;
}

namespace {

// Walks outward along `knots` (starting at the median, where the gap is 0)
// and solves the linear segment on which the gap reaches `threshold`.
template <typename GapFn>
std::optional<double> InvertAlongKnots(const std::vector<double>& knots,
                                       double threshold, GapFn gap) {
  double previous_knot = knots.front();
  double previous_gap = 0;
  for (size_t i = 1; i < knots.size(); ++i) {
    const double knot_gap = gap(knots[i]);
    if (knot_gap > threshold) {
      const double fraction =
          (threshold - previous_gap) / (knot_gap - previous_gap);
      return previous_knot + fraction * (knots[i] - previous_knot);
    }
    previous_knot = knots[i];
    previous_gap = knot_gap;
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> MetricEvaluator::SwdiffInverseRight(
    double threshold) const {
  const double optimum = dataset_.median();
  std::vector<double> knots = {optimum};
  for (double x : dataset_.locations()) {
    if (x > knots.back()) knots.push_back(x);
  }
  if (dataset_.domain().upper() > knots.back()) {
    knots.push_back(dataset_.domain().upper());
  }
  return InvertAlongKnots(knots, threshold,
                          [this](double l) { return Swdiff(l); });
}

std::optional<double> MetricEvaluator::SwdiffInverseLeft(
    double threshold) const {
  const double optimum = dataset_.median();
  const auto x = dataset_.locations();
  std::vector<double> knots = {optimum};
  for (auto it = x.rbegin(); it != x.rend(); ++it) {
    if (*it < knots.back()) knots.push_back(*it);
  }
  if (dataset_.domain().lower() < knots.back()) {
    knots.push_back(dataset_.domain().lower());
  }
  return InvertAlongKnots(knots, threshold,
                          [this](double l) { return Swdiff(l); });
}

absl::StatusOr<double> ExactTail(const Dataset& dataset,
                                 const MechanismSpec& spec, TailMetric metric,
                                 double threshold) {
  ASSIGN_OR_RETURN(OutputDensity density, BuildOutputDensity(dataset, spec));
  return ExactTail(dataset, density, metric, threshold);
}

absl::StatusOr<double> ExactTail(const Dataset& dataset,
                                 const OutputDensity& density,
                                 TailMetric metric, double threshold) {
  if (!(threshold >= 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("threshold must be nonnegative, got ", threshold));
  }
  const double lo = density.lower();
  const double hi = density.upper();
  const double optimum = dataset.median();
  switch (metric) {
    case TailMetric::kScore: {
      double tail = 0;
      for (size_t i = 0; i < density.pieces().size(); ++i) {
        if (density.pieces()[i].score > threshold) {
          tail += density.probability(static_cast<int>(i));
        }
      }
      return std::min(tail, 1.0);
    }
    case TailMetric::kFair:
      return std::min(1.0, density.Mass(lo, optimum - threshold) +
                               density.Mass(optimum + threshold, hi));
    case TailMetric::kSwdiff: {
      // The alpha of the evaluator is irrelevant for the welfare gap.
      const MetricEvaluator evaluator(dataset, *WideningParam::Create(0));
      double tail = 0;
      if (auto left = evaluator.SwdiffInverseLeft(threshold)) {
        tail += density.Mass(lo, *left);
      }
      if (auto right = evaluator.SwdiffInverseRight(threshold)) {
        tail += density.Mass(*right, hi);
      }
      return std::min(tail, 1.0);
    }
  }
  return absl::InvalidArgumentError("UnknownMetric");
}

absl::StatusOr<double> FairQuantile(const Dataset& dataset,
                                    const MechanismSpec& spec, double beta) {
  ASSIGN_OR_RETURN(OutputDensity density, BuildOutputDensity(dataset, spec));
  return FairQuantile(dataset, density, beta);
}

absl::StatusOr<double> FairQuantile(const Dataset& dataset,
                                    const OutputDensity& density, double beta) {
  if (!(beta > 0 && beta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta must lie in (0, 1), got ", beta));
  }
  const double optimum = dataset.median();
  const double lo = density.lower();
  const double hi = density.upper();
  auto tail = [&](double t) {
    return density.Mass(lo, optimum - t) + density.Mass(optimum + t, hi);
  };

  // The tail is linear in t between distances from the median to breakpoints.
  std::vector<double> radii = {0, optimum - lo, hi - optimum};
  for (const DensityPiece& piece : density.pieces()) {
    for (double b : {piece.lower, piece.upper}) {
      radii.push_back(std::abs(b - optimum));
    }
  }
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  double previous_radius = 0;
  double previous_tail = tail(0);
  if (previous_tail <= beta) return 0.0;
  for (size_t i = 1; i < radii.size(); ++i) {
    const double current_tail = tail(radii[i]);
    if (current_tail <= beta) {
      const double fraction =
          (previous_tail - beta) / (previous_tail - current_tail);
      return previous_radius + fraction * (radii[i] - previous_radius);
    }
    previous_radius = radii[i];
    previous_tail = current_tail;
  }
  return radii.back();
}

}  // namespace dpfl
