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

#include "dpfl/families.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "dpfl/base/status_macros.h"
#include "dpfl/rng.h"

namespace dpfl {
namespace {

constexpr double kGapSlack = 1e-12;
constexpr double kMassTolerance = 1e-9;
constexpr double kKsSlack = 1e-9;

absl::Status InvalidCertificate(std::string_view why) {
  return absl::InvalidArgumentError(
      absl::StrCat("InvalidCertificate: ", std::string(why)));
}

absl::Status InvalidParams(std::string_view why) {
  return absl::FailedPreconditionError(
      absl::StrCat("InvalidParams: ", std::string(why)));
}

absl::Status CheckOddSize(int n) {
  if (n < 1 || n % 2 == 0) {
    return InvalidParams(
        absl::StrCat("n must be a positive odd integer, got ", n));
  }
  return absl::OkStatus();
}

// Successive uniforms from one (seed, trial) counter stream.
class CounterStream {
 public:
  CounterStream(uint64_t seed, uint64_t trial) : seed_(seed), trial_(trial) {}
  double Next() { return CounterUniform(seed_, trial_, next_++); }

 private:
  uint64_t seed_;
  uint64_t trial_;
  uint64_t next_ = 0;
};

}  // namespace

double SinglePeakedDensity::TotalMass() const {
  double mass = 0;
  for (size_t i = 0; i < densities.size(); ++i) {
    mass += densities[i] * (breakpoints[i + 1] - breakpoints[i]);
  }
  return mass;
}

double SinglePeakedDensity::Cdf(double x) const {
  if (x <= breakpoints.front()) return 0;
  double mass = 0;
  for (size_t i = 0; i < densities.size(); ++i) {
    if (x >= breakpoints[i + 1]) {
      mass += densities[i] * (breakpoints[i + 1] - breakpoints[i]);
    } else {
      mass += densities[i] * (x - breakpoints[i]);
      break;
    }
  }
  return std::min(mass, 1.0);
}

double SinglePeakedDensity::Quantile(double u) const {
  double mass = 0;
  for (size_t i = 0; i < densities.size(); ++i) {
    const double piece = densities[i] * (breakpoints[i + 1] - breakpoints[i]);
    if (piece > 0 && mass + piece >= u) {
      const double x = breakpoints[i] + (u - mass) / densities[i];
      return std::clamp(x, breakpoints[i], breakpoints[i + 1]);
    }
    mass += piece;
  }
  // u beyond the accumulated mass: the right end of the last massive piece.
  for (size_t i = densities.size(); i-- > 0;) {
    if (densities[i] > 0) return breakpoints[i + 1];
  }
  return breakpoints.back();
}

SinglePeakedDensity UniformDensity(double diameter) {
  return {{-diameter / 2, diameter / 2}, {1 / diameter}, 0};
}

absl::Status ValidateSinglePeaked(const SinglePeakedDensity& density) {
  const auto& b = density.breakpoints;
  const auto& f = density.densities;
  if (f.empty() || b.size() != f.size() + 1) {
    return InvalidCertificate("need one density per piece");
  }
  for (size_t i = 0; i + 1 < b.size(); ++i) {
    if (!(b[i] < b[i + 1])) {
      return InvalidCertificate("breakpoints must be strictly increasing");
    }
  }
  double max_density = 0;
  for (double d : f) {
    if (!std::isfinite(d) || d < 0) {
      return InvalidCertificate("densities must be finite and nonnegative");
    }
    max_density = std::max(max_density, d);
  }
  if (std::abs(density.TotalMass() - 1) > kMassTolerance) {
    return InvalidCertificate(
        absl::StrCat("total mass is ", density.TotalMass(), ", not 1"));
  }
  if (!(density.peak >= b.front() && density.peak <= b.back())) {
    return InvalidCertificate("peak lies outside the support");
  }
  const double slack = 1e-12 * max_density;
  for (size_t i = 0; i + 1 < f.size(); ++i) {
    // Pieces i and i+1 share breakpoint b[i+1].
    // At the peak itself either side may be higher.
    if (b[i + 1] < density.peak && f[i + 1] < f[i] - slack) {
      return InvalidCertificate(absl::StrCat("density decreases at ", b[i + 1],
                                             " before the peak ",
                                             density.peak));
    }
    if (b[i + 1] > density.peak && f[i + 1] > f[i] + slack) {
      return InvalidCertificate(absl::StrCat("density increases at ", b[i + 1],
                                             " after the peak ", density.peak));
    }
  }
  if (std::abs(density.Cdf(density.peak) - 0.5) > kMassTolerance) {
    return InvalidCertificate(absl::StrCat("peak is not the median: F(peak) = ",
                                           density.Cdf(density.peak)));
  }
  return absl::OkStatus();
}

bool IsCtm(const Dataset& dataset) {
  const int n = dataset.size();
  const int median = dataset.median_index();
  // Left of the median gaps must not grow as they approach it.
  for (int i = 1; i < median; ++i) {
    const double outer = dataset[i] - dataset[i - 1];
    const double inner = dataset[i + 1] - dataset[i];
    if (inner > outer + kGapSlack) return false;
  }
  // Right of the median gaps must not shrink moving outward.
  for (int i = median + 2; i < n; ++i) {
    const double inner = dataset[i - 1] - dataset[i - 2];
    const double outer = dataset[i] - dataset[i - 1];
    if (inner > outer + kGapSlack) return false;
  }
  return true;
}

double KsDistance(std::span<const double> sorted_sample,
                  const SinglePeakedDensity& density) {
  const double n = static_cast<double>(sorted_sample.size());
  double sup = 0;
  size_t i = 0;
  while (i < sorted_sample.size()) {
    const double x = sorted_sample[i];
    size_t j = i;
    while (j < sorted_sample.size() && sorted_sample[j] == x) ++j;
    const double f = density.Cdf(x);
    sup = std::max(sup, std::abs(static_cast<double>(i) / n - f));
    sup = std::max(sup, std::abs(static_cast<double>(j) / n - f));
    i = j;
  }
  for (double b : density.breakpoints) {
    const auto below =
        std::upper_bound(sorted_sample.begin(), sorted_sample.end(), b) -
        sorted_sample.begin();
    sup = std::max(sup,
                   std::abs(static_cast<double>(below) / n - density.Cdf(b)));
  }
  return sup;
}

absl::StatusOr<double> KsDistance(const Dataset& dataset,
                                  const SinglePeakedDensity& density) {
  if (density.breakpoints.size() < 2 ||
      std::abs(density.breakpoints.front() - dataset.domain().lower()) >
          kDomainSlack ||
      std::abs(density.breakpoints.back() - dataset.domain().upper()) >
          kDomainSlack) {
    return absl::InvalidArgumentError(
        "DomainMismatch: density does not span the dataset's domain");
  }
  return KsDistance(dataset.locations(), density);
}

absl::StatusOr<bool> VerifySpmCertificate(
    const Dataset& dataset, const SinglePeakedDensity& certificate,
    double lambda) {
  if (!(lambda >= 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("lambda must be nonnegative, got ", lambda));
  }
  RETURN_IF_ERROR(ValidateSinglePeaked(certificate));
  ASSIGN_OR_RETURN(double distance, KsDistance(dataset, certificate));
  return distance <= lambda + kKsSlack;
}

absl::StatusOr<SinglePeakedDensity> CtmCertificate(const Dataset& dataset) {
  const int n = dataset.size();
  if (n < 3) {
    return absl::InvalidArgumentError(
        "ZeroGap: a single agent has no gaps to spread mass over");
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (!(dataset[i + 1] > dataset[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("ZeroGap: agents ", i + 1, " and ", i + 2,
                       " share location ", dataset[i]));
    }
  }
  if (!IsCtm(dataset)) {
    return absl::InvalidArgumentError(
        "NotCTM: gaps do not shrink towards the median");
  }
  SinglePeakedDensity density;
  density.peak = dataset.median();
  const double lo = dataset.domain().lower();
  const double hi = dataset.domain().upper();
  if (dataset[0] > lo) {
    density.breakpoints.push_back(lo);
    density.densities.push_back(0);
  }
  for (int i = 0; i + 1 < n; ++i) {
    density.breakpoints.push_back(dataset[i]);
    density.densities.push_back(1 / ((n - 1) * (dataset[i + 1] - dataset[i])));
  }
  density.breakpoints.push_back(dataset[n - 1]);
  if (dataset[n - 1] < hi) {
    density.densities.push_back(0);
    density.breakpoints.push_back(hi);
  }
  return density;
}

double GridPoint(double diameter, int j, int divisions) {
  if (j == divisions) return diameter / 2;
  return -diameter / 2 + (j * diameter) / divisions;
}

absl::StatusOr<Dataset> CtmWorst(int n, int k, double diameter) {
  RETURN_IF_ERROR(CheckOddSize(n));
  const int half = n / 2;
  if (k < 0 || k > half) {
    return InvalidParams(
        absl::StrCat("k must lie in [0, ", half, "], got ", k));
  }
  const int spread = half - k;
  std::vector<double> locations(n - spread, diameter / 2);
  for (int i = 1; i <= spread; ++i) {
    // m/2 - i m / spread, i.e. grid index spread - i out of spread.
    locations.push_back(GridPoint(diameter, spread - i, spread));
  }
  return LoadDataset(locations, diameter);
}

namespace {

int StackSizeForWorstCase(int n, double lambda) {
  // Largest integer s with s / n < lambda.
  return std::max(0, static_cast<int>(std::ceil(lambda * n - 1e-9)) - 1);
}

}  // namespace

absl::StatusOr<Dataset> SpmWorst(int n, int k, double diameter, double lambda) {
  RETURN_IF_ERROR(CheckOddSize(n));
  const int half = n / 2;
  if (k < 0 || k > half) {
    return InvalidParams(
        absl::StrCat("k must lie in [0, ", half, "], got ", k));
  }
  if (!(lambda >= 0)) {
    return InvalidParams(
        absl::StrCat("lambda must be nonnegative, got ", lambda));
  }
  const int spread = half - k;
  const int stacked = std::min(StackSizeForWorstCase(n, lambda), spread);
  const double step = diameter / (spread + lambda * n);
  std::vector<double> locations(stacked, -diameter / 2);
  for (int i = 1; i <= spread - stacked; ++i) {
    locations.push_back(-diameter / 2 + i * step);
  }
  locations.resize(n, diameter / 2);
  return LoadDataset(locations, diameter);
}

absl::StatusOr<SinglePeakedDensity> SpmWorstCertificate(int n, int k,
                                                        double diameter,
                                                        double lambda) {
  RETURN_IF_ERROR(CheckOddSize(n));
  const int half = n / 2;
  if (k < 0 || k > half) {
    return InvalidParams(
        absl::StrCat("k must lie in [0, ", half, "], got ", k));
  }
  const double lo = -diameter / 2;
  const double hi = diameter / 2;
  const double sliver = 1e-6 * diameter;
  const double tail_mass =
      std::min(0.5, static_cast<double>(half - k) / n + lambda);
  SinglePeakedDensity density;
  density.breakpoints = {lo, hi - sliver, hi};
  density.densities = {tail_mass / (diameter - sliver),
                       (1 - tail_mass) / sliver};
  // The sliver is the mode, so the median must not fall left of it.
  density.peak = hi - sliver + (0.5 - tail_mass) / density.densities[1];
  return density;
}

absl::StatusOr<std::pair<Dataset, Dataset>> ImpossibilityPair(int n,
                                                              double diameter) {
  RETURN_IF_ERROR(CheckOddSize(n));
  std::vector<double> first(n, diameter / 2);
  std::vector<double> second(n, -diameter / 2);
  std::fill(first.begin(), first.begin() + (n + 1) / 2, -diameter / 2);
  std::fill(second.begin(), second.begin() + (n + 1) / 2, diameter / 2);
  ASSIGN_OR_RETURN(Dataset a, LoadDataset(first, diameter));
  ASSIGN_OR_RETURN(Dataset b, LoadDataset(second, diameter));
  return std::make_pair(std::move(a), std::move(b));
}

absl::StatusOr<Dataset> UniformGrid(int n, double diameter) {
  RETURN_IF_ERROR(CheckOddSize(n));
  if (n == 1) return LoadDataset(std::vector<double>{0.0}, diameter);
  std::vector<double> locations;
  locations.reserve(n);
  for (int j = 0; j < n; ++j)
    locations.push_back(GridPoint(diameter, j, n - 1));
  return LoadDataset(locations, diameter);
}

absl::StatusOr<std::pair<Dataset, Dataset>> FairLowerBoundPair(int n,
                                                               double diameter,
                                                               double gamma) {
  RETURN_IF_ERROR(CheckOddSize(n));
  if (n < 5) return InvalidParams(absl::StrCat("n must be >= 5, got ", n));
  if (!(gamma < diameter / 3)) {
    return InvalidParams(
        absl::StrCat("gamma must be below m/3 = ", diameter / 3));
  }
  const double steps = gamma * (n - 1) / diameter;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, rounded) ||
      rounded < 1) {
    return InvalidParams(absl::StrCat(
        "gamma must be a positive multiple of m/(n-1) = ", diameter / (n - 1)));
  }
  const int shift = static_cast<int>(rounded);
  const int divisions = n - 1;
  const int center = divisions / 2;  // grid index of T(D_0)
  ASSIGN_OR_RETURN(Dataset base, UniformGrid(n, diameter));

  const int stacked_index = center - shift;
  const int reach = center - shift;  // (n - n_gamma) / 2
  std::vector<double> locations(1 + 2 * shift,
                                GridPoint(diameter, stacked_index, divisions));
  for (int j = -reach; j <= reach; ++j) {
    if (j == 0) continue;
    locations.push_back(GridPoint(diameter, stacked_index + j, divisions));
  }
  ASSIGN_OR_RETURN(Dataset shifted, LoadDataset(locations, diameter));
  return std::make_pair(std::move(base), std::move(shifted));
}

absl::StatusOr<std::pair<Dataset, Dataset>> SpmLowerBoundPair(int n,
                                                              double diameter,
                                                              double lambda) {
  RETURN_IF_ERROR(CheckOddSize(n));
  const int moved = static_cast<int>(std::floor(lambda * n + 1e-9)) - 1;
  const int half = (n + 1) / 2;
  if (moved < 1) {
    return InvalidParams(
        absl::StrCat("s = floor(lambda n) - 1 must be >= 1, got ", moved));
  }
  if (half - moved < 1) {
    return InvalidParams(
        absl::StrCat("s = ", moved, " leaves no agent left of the median"));
  }
  auto build = [&](int first_moved, int last_moved) {
    std::vector<double> locations;
    locations.reserve(n);
    for (int j = 1; j <= n; ++j) {
      locations.push_back(j >= first_moved && j <= last_moved
                              ? -diameter / 2
                              : GridPoint(diameter, j, n));
    }
    return LoadDataset(locations, diameter);
  };
  ASSIGN_OR_RETURN(Dataset first, build(half - moved + 1, half));
  ASSIGN_OR_RETURN(Dataset second, build(half - moved, half - 1));
  return std::make_pair(std::move(first), std::move(second));
}

absl::StatusOr<AdversarialKind> ParseAdversarialKind(std::string_view name) {
  if (name == "ctm-worst") return AdversarialKind::kCtmWorst;
  if (name == "spm-worst") return AdversarialKind::kSpmWorst;
  if (name == "impossibility-pair") return AdversarialKind::kImpossibilityPair;
  if (name == "fair-lb-pair") return AdversarialKind::kFairLowerBoundPair;
  if (name == "spm-lb-pair") return AdversarialKind::kSpmLowerBoundPair;
  if (name == "uniform") return AdversarialKind::kUniform;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown generator kind '", std::string(name), "'"));
}

absl::StatusOr<std::vector<Dataset>> GenAdversarial(
    AdversarialKind kind, const AdversarialParams& params) {
  auto one =
      [](absl::StatusOr<Dataset> d) -> absl::StatusOr<std::vector<Dataset>> {
    if (!d.ok()) return d.status();
    return std::vector<Dataset>{*std::move(d)};
  };
  auto two = [](absl::StatusOr<std::pair<Dataset, Dataset>> d)
      -> absl::StatusOr<std::vector<Dataset>> {
    if (!d.ok()) return d.status();
    return std::vector<Dataset>{std::move(d->first), std::move(d->second)};
  };
  switch (kind) {
    case AdversarialKind::kCtmWorst:
      return one(CtmWorst(params.n, params.k, params.diameter));
    case AdversarialKind::kSpmWorst:
      return one(SpmWorst(params.n, params.k, params.diameter, params.lambda));
    case AdversarialKind::kImpossibilityPair:
      return two(ImpossibilityPair(params.n, params.diameter));
    case AdversarialKind::kFairLowerBoundPair:
      return two(FairLowerBoundPair(params.n, params.diameter, params.gamma));
    case AdversarialKind::kSpmLowerBoundPair:
      return two(SpmLowerBoundPair(params.n, params.diameter, params.lambda));
    case AdversarialKind::kUniform:
      return one(UniformGrid(params.n, params.diameter));
  }
  return absl::InvalidArgumentError("unknown generator kind");
}

absl::StatusOr<Dataset> SampleFromDensity(const SinglePeakedDensity& density,
                                          int n, uint64_t rng_seed,
                                          uint64_t trial_index) {
  if (n < 1 || n % 2 == 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("EvenN: sample size must be odd, got ", n));
  }
  if (density.breakpoints.size() < 2 ||
      density.breakpoints.front() != -density.breakpoints.back()) {
    return absl::InvalidArgumentError(
        "DomainMismatch: density must span a symmetric interval");
  }
  std::vector<double> draws;
  draws.reserve(n);
  for (int i = 0; i < n; ++i) {
    draws.push_back(density.Quantile(CounterUniform(rng_seed, trial_index, i)));
  }
  return LoadDataset(draws, 2 * density.breakpoints.back());
}

double DkwBound(int n, double lambda) {
  return std::min(1.0, 2 * std::exp(-2.0 * n * lambda * lambda));
}

Dataset RandomCtmDataset(int n, double diameter, uint64_t rng_seed,
                         uint64_t trial_index, bool distinct) {
  CounterStream stream(rng_seed, trial_index);
  const double lo = -diameter / 2;
  const double hi = diameter / 2;
  const int half = n / 2;
  const double median = lo + stream.Next() * diameter;
  const double shape = 0.3 + 2.7 * stream.Next();

  // Gaps sorted ascending: the first one sits next to the median.
  auto draw_gaps = [&](double room) {
    std::vector<double> gaps(half);
    for (double& g : gaps) {
      g = std::pow(stream.Next(), shape);
      if (!distinct && stream.Next() < 0.2) g = 0;
    }
    std::sort(gaps.begin(), gaps.end());
    const double total = std::accumulate(gaps.begin(), gaps.end(), 0.0);
    const double extent = room * stream.Next();
    if (total > 0) {
      for (double& g : gaps) g *= extent / total;
    }
    if (distinct) {
      for (double& g : gaps) g = std::max(g, 1e-9 * diameter);
    }
    return gaps;
  };

  std::vector<double> locations = {median};
  double position = median;
  for (double gap : draw_gaps(median - lo)) {
    position -= gap;
    locations.push_back(std::max(position, lo));
  }
  position = median;
  for (double gap : draw_gaps(hi - median)) {
    position += gap;
    locations.push_back(std::min(position, hi));
  }
  return *LoadDataset(locations, diameter);
}

SinglePeakedDensity RandomSinglePeakedDensity(double diameter,
                                              uint64_t rng_seed,
                                              uint64_t trial_index) {
  CounterStream stream(rng_seed, trial_index);
  const double lo = -diameter / 2;
  const double hi = diameter / 2;
  const double peak = lo + diameter * (0.02 + 0.96 * stream.Next());

  // Interior cut points strictly inside (a, b), ascending.
  auto cuts = [&](double a, double b) {
    const int count = static_cast<int>(stream.Next() * 6);
    std::vector<double> c;
    for (int i = 0; i < count; ++i) c.push_back(a + (b - a) * stream.Next());
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    std::erase_if(c, [&](double x) { return !(x > a && x < b); });
    return c;
  };
  auto levels = [&](size_t count) {
    std::vector<double> v(count);
    for (double& x : v) {
      // Occasionally a flat zero tail.
      x = stream.Next() < 0.1 ? 0 : stream.Next();
    }
    return v;
  };

  std::vector<double> left = {lo};
  for (double c : cuts(lo, peak)) left.push_back(c);
  left.push_back(peak);
  std::vector<double> right = {peak};
  for (double c : cuts(peak, hi)) right.push_back(c);
  right.push_back(hi);

  std::vector<double> left_density = levels(left.size() - 1);
  std::sort(left_density.begin(), left_density.end());
  left_density.back() = std::max(left_density.back(), 0.05);
  std::vector<double> right_density = levels(right.size() - 1);
  std::sort(right_density.begin(), right_density.end(), std::greater<>());
  right_density.front() = std::max(right_density.front(), 0.05);

  auto normalize = [](std::vector<double>& density,
                      const std::vector<double>& breaks) {
    double mass = 0;
    for (size_t i = 0; i < density.size(); ++i) {
      mass += density[i] * (breaks[i + 1] - breaks[i]);
    }
    for (double& d : density) d *= 0.5 / mass;
  };
  normalize(left_density, left);
  normalize(right_density, right);

  // Keep the two sides monotone across the peak.
  SinglePeakedDensity density;
  density.peak = peak;
  density.breakpoints = left;
  density.breakpoints.insert(density.breakpoints.end(), right.begin() + 1,
                             right.end());
  density.densities = left_density;
  density.densities.insert(density.densities.end(), right_density.begin(),
                           right_density.end());
  return density;
}

}  // namespace dpfl
