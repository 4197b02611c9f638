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

// Parameter sweeps that pair exact tail probabilities with Monte Carlo
// estimates and the analytic bound. Each cell draws its samples from a seed
// derived from (seed, cell_id), and trial t of a cell always uses counter
// (seed', t), so the output does not depend on the number of workers.

#ifndef DPFL_EXPERIMENT_H_
#define DPFL_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpfl/core.h"
#include "dpfl/mechanism.h"
#include "json.hpp"

namespace dpfl {

enum class DatasetSource {
  kUniform,    // UniformGrid(n, m)
  kRandomCtm,  // RandomCtmDataset(n, m, seed, cell n), distinct points
  kCtmWorst,   // CtmWorst(n, k, m) with k = threshold
  kSpmWorst,   // SpmWorst(n, k, m, lambda) with k = threshold
  kFile,       // one fixed dataset; the n sweep is ignored
};

struct ExperimentConfig {
  DatasetSource source = DatasetSource::kUniform;
  std::optional<Dataset> dataset;  // kFile only
  std::vector<int> ns = {101};
  double diameter = 2;
  std::vector<double> epsilons = {1};
  // nullopt means alpha* = 1 / (n epsilon), resolved per cell.
  std::optional<double> alpha;
  double beta = 0.1;
  std::optional<double> lambda;
  std::vector<TailMetric> metrics = {TailMetric::kFair};
  // Thresholds per cell. When `beta_quantile` is set a FAIR cell uses the
  // exact beta-quantile as its threshold instead.
  std::vector<double> thresholds = {0};
  bool beta_quantile = false;
  int64_t trials = 0;
  uint64_t seed = 0;
  int workers = 1;
};

struct ExperimentRecord {
  int cell_id;
  int n;
  double diameter;
  double epsilon;
  double alpha;
  double beta;
  std::optional<double> lambda;
  TailMetric metric;
  double threshold;
  double exact = 0;
  std::optional<double> mc_estimate = std::nullopt;
  std::optional<double> mc_stderr = std::nullopt;
  std::optional<double> bound = std::nullopt;
};

// Fails on invalid parameters with the library's error kinds.
absl::StatusOr<std::vector<ExperimentRecord>> RunExperiment(
    const ExperimentConfig& config);

// Header plus one line per record; missing values are empty fields.
std::string RecordsToCsv(const std::vector<ExperimentRecord>& records);
nlohmann::ordered_json RecordsToJson(
    const std::vector<ExperimentRecord>& records);

}  // namespace dpfl

#endif  // DPFL_EXPERIMENT_H_
