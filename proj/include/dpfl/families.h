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

// Dataset families on which the mechanism has good utility, and the dataset
// constructions used to probe its worst cases.
//
//  * CTM: gaps between consecutive agents shrink towards the median on both
//    sides ("collapsing towards the median").
//  * SPM_lambda: datasets within Kolmogorov-Smirnov distance lambda of some
//    piecewise-constant density that is single-peaked at its own median.
//    Membership is only ever certified by exhibiting such a density.

#ifndef DPFL_FAMILIES_H_
#define DPFL_FAMILIES_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpfl/core.h"

namespace dpfl {

// Piecewise-constant density; piece i has density densities[i] on
// [breakpoints[i], breakpoints[i+1]).
struct SinglePeakedDensity {
  std::vector<double> breakpoints;
  std::vector<double> densities;
  double peak = 0;

  double Cdf(double x) const;
  // Left-continuous inverse CDF for u in [0, 1].
  double Quantile(double u) const;
  double TotalMass() const;
};

// Uniform density on [-m/2, m/2] with its peak at 0.
SinglePeakedDensity UniformDensity(double diameter);

// Checks the class invariants: valid pieces, unit mass (1e-9), density
// non-decreasing before the peak and non-increasing after it, and
// F(peak) = 0.5 (1e-9). Fails with InvalidCertificate.
absl::Status ValidateSinglePeaked(const SinglePeakedDensity& density);

// Both gap-ordering conditions, with 1e-12 slack.
bool IsCtm(const Dataset& dataset);

// sup_x |F_n(x) - F(x)| for a sorted sample, evaluated at every jump (both
// one-sided limits) and every density breakpoint.
double KsDistance(std::span<const double> sorted_sample,
                  const SinglePeakedDensity& density);

// As above; fails with DomainMismatch unless the density spans exactly V.
absl::StatusOr<double> KsDistance(const Dataset& dataset,
                                  const SinglePeakedDensity& density);

// True iff `certificate` is a valid member of the single-peaked class and lies
// within KS distance lambda (+1e-9) of the dataset. An invalid certificate is
// an error (InvalidCertificate), not a false result.
absl::StatusOr<bool> VerifySpmCertificate(
    const Dataset& dataset, const SinglePeakedDensity& certificate,
    double lambda);

// Density spreading mass 1/(n-1) uniformly over each gap [x_i, x_{i+1}).
// Within KS distance 1/(n-1) of the dataset. Fails with ZeroGap or NotCTM.
absl::StatusOr<SinglePeakedDensity> CtmCertificate(const Dataset& dataset);

// Worst case in CTM for Pr[p_alpha <= k]: ceil(n/2) + k agents at m/2 and the
// rest at m/2 - i m / (floor(n/2) - k).
absl::StatusOr<Dataset> CtmWorst(int n, int k, double diameter);

// Worst case in SPM_lambda for Pr[p_alpha <= k]: s = ceil(lambda n) - 1 agents
// at -m/2 (at most floor(n/2) - k), then agents every m / (floor(n/2) - k +
// lambda n), and ceil(n/2) + k agents at m/2.
absl::StatusOr<Dataset> SpmWorst(int n, int k, double diameter, double lambda);

// The uniform-tail density of the SpmWorst construction: mass
// min(1/2, (floor(n/2) - k) / n + lambda) spread uniformly over
// [-m/2, m/2 - w) and the remainder on a sliver [m/2 - w, m/2] of width
// w = 1e-6 m, which holds the peak.
absl::StatusOr<SinglePeakedDensity> SpmWorstCertificate(int n, int k,
                                                        double diameter,
                                                        double lambda);

// ceil(n/2) agents at -m/2 and floor(n/2) at m/2, and its mirror image.
absl::StatusOr<std::pair<Dataset, Dataset>> ImpossibilityPair(int n,
                                                              double diameter);

// n agents evenly spaced m/(n-1) apart from -m/2 to m/2.
absl::StatusOr<Dataset> UniformGrid(int n, double diameter);

// (D_0, D_gamma): D_0 is UniformGrid(n, m); D_gamma stacks
// 1 + 2 gamma (n-1)/m agents at T(D_0) - gamma and keeps the grid spacing
// around it. gamma must be a positive multiple of m/(n-1) below m/3, n >= 5.
// Fails with InvalidParams.
absl::StatusOr<std::pair<Dataset, Dataset>> FairLowerBoundPair(int n,
                                                               double diameter,
                                                               double gamma);

// (D_1, D_2): agents at -m/2 + j m/n (j = 1..n) with s = floor(lambda n) - 1
// agents moved to -m/2; D_1 moves j in [ceil(n/2)-s+1, ceil(n/2)], D_2 moves
// j in [ceil(n/2)-s, ceil(n/2)-1]. Fails with InvalidParams when s < 1.
absl::StatusOr<std::pair<Dataset, Dataset>> SpmLowerBoundPair(int n,
                                                              double diameter,
                                                              double lambda);

// Location -m/2 + j m / divisions, computed identically by every generator so
// shared points compare equal.
double GridPoint(double diameter, int j, int divisions);

enum class AdversarialKind {
  kCtmWorst,
  kSpmWorst,
  kImpossibilityPair,
  kFairLowerBoundPair,
  kSpmLowerBoundPair,
  kUniform,
};

// CLI spellings: ctm-worst, spm-worst, impossibility-pair, fair-lb-pair,
// spm-lb-pair, uniform.
absl::StatusOr<AdversarialKind> ParseAdversarialKind(std::string_view name);

struct AdversarialParams {
  int n = 0;
  int k = 0;
  double diameter = 2;
  double lambda = 0;
  double gamma = 0;
};

// Dispatches to the generator for `kind`. Pair kinds return two datasets.
absl::StatusOr<std::vector<Dataset>> GenAdversarial(
    AdversarialKind kind, const AdversarialParams& params);

// n i.i.d. inverse-CDF draws from `density`, sorted. The density must span a
// symmetric interval [-m/2, m/2]. Deterministic in (rng_seed, trial_index).
absl::StatusOr<Dataset> SampleFromDensity(const SinglePeakedDensity& density,
                                          int n, uint64_t rng_seed,
                                          uint64_t trial_index);

// min(1, 2 exp(-2 n lambda^2)).
double DkwBound(int n, double lambda);

// Random CTM dataset: a uniform median position and floor(n/2) random gaps per
// side, sorted to shrink towards the median and scaled to fit inside V. With
// `distinct` false roughly one gap in five is zero.
Dataset RandomCtmDataset(int n, double diameter, uint64_t rng_seed,
                         uint64_t trial_index, bool distinct);

// Random single-peaked density: 1-6 pieces on each side of a random peak with
// mass 1/2 per side, monotone towards the peak.
SinglePeakedDensity RandomSinglePeakedDensity(double diameter,
                                              uint64_t rng_seed,
                                              uint64_t trial_index);

}  // namespace dpfl

#endif  // DPFL_FAMILIES_H_
