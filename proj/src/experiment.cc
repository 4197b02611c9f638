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

#include "dpfl/experiment.h"

#include <algorithm>
#include <cmath>
#include <thread>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpfl/base/status_macros.h"
#include "dpfl/bounds.h"
#include "dpfl/families.h"
#include "dpfl/io.h"
#include "dpfl/rng.h"

namespace dpfl {
namespace {

constexpr uint64_t kRandomCtmLabel = 0x6374;

absl::StatusOr<int> ThresholdAsK(double threshold) {
  if (threshold != std::floor(threshold) || threshold < 0) {
    return absl::FailedPreconditionError(absl::StrCat(
        "InvalidParams: worst-case sources need integer thresholds k, got ",
        threshold));
  }
  return static_cast<int>(threshold);
}

absl::StatusOr<Dataset> CellDataset(const ExperimentConfig& config, int n,
                                    double threshold) {
  switch (config.source) {
    case DatasetSource::kUniform:
      return UniformGrid(n, config.diameter);
    case DatasetSource::kRandomCtm:
      if (n < 1 || n % 2 == 0) {
        return absl::InvalidArgumentError(
            absl::StrCat("EvenN: n must be odd, got ", n));
      }
      return RandomCtmDataset(n, config.diameter,
                              DeriveSeed(config.seed, kRandomCtmLabel), n,
                              /*distinct=*/true);
    case DatasetSource::kCtmWorst: {
      ASSIGN_OR_RETURN(int k, ThresholdAsK(threshold));
      return CtmWorst(n, k, config.diameter);
    }
    case DatasetSource::kSpmWorst: {
      if (!config.lambda.has_value()) {
        return absl::FailedPreconditionError(
            "InvalidParams: spm-worst needs lambda");
      }
      ASSIGN_OR_RETURN(int k, ThresholdAsK(threshold));
      return SpmWorst(n, k, config.diameter, *config.lambda);
    }
    case DatasetSource::kFile:
      if (!config.dataset.has_value()) {
        return absl::InvalidArgumentError("no dataset given");
      }
      return *config.dataset;
  }
  return absl::InvalidArgumentError("unknown dataset source");
}

// Counts trials whose metric exceeds `threshold`. Trial t always lands in
// hits[t], so the count is independent of how trials are split.
int64_t CountExceedances(const OutputDensity& density,
                         const MetricEvaluator& evaluator, TailMetric metric,
                         double threshold, int64_t trials, uint64_t seed,
                         int workers) {
  std::vector<uint8_t> hits(trials, 0);
  auto run = [&](int worker) {
    for (int64_t t = worker; t < trials; t += workers) {
      const double location = SampleLocation(density, seed, t);
      hits[t] = evaluator(metric, location) > threshold ? 1 : 0;
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (std::thread& thread : pool) thread.join();
  }
  int64_t total = 0;
  for (uint8_t hit : hits) total += hit;
  return total;
}

std::optional<double> AnalyticBound(const ExperimentConfig& config, int n,
                                    double epsilon, double alpha,
                                    TailMetric metric, double threshold) {
  if (metric != TailMetric::kScore || threshold != std::floor(threshold)) {
    return std::nullopt;
  }
  BoundParams params;
  params.n = n;
  params.epsilon = epsilon;
  params.alpha = alpha;
  params.k = static_cast<int>(threshold);
  params.lambda = config.lambda;
  params.family = config.lambda.has_value() ? Family::kSpm : Family::kCtm;
  absl::StatusOr<BoundReport> report = PTailUpper(params);
  if (!report.ok()) return std::nullopt;
  return report->value;
}

}  // namespace

absl::StatusOr<std::vector<ExperimentRecord>> RunExperiment(
    const ExperimentConfig& config) {
  if (config.trials < 0) {
    return absl::InvalidArgumentError("trials must be nonnegative");
  }
  if (config.workers < 1) {
    return absl::InvalidArgumentError("workers must be at least 1");
  }
  std::vector<int> ns = config.ns;
  if (config.source == DatasetSource::kFile && config.dataset.has_value()) {
    ns = {config.dataset->size()};
  }

  std::vector<ExperimentRecord> records;
  int cell_id = 0;
  for (int n : ns) {
    for (double epsilon : config.epsilons) {
      const double alpha =
          config.alpha.has_value() ? *config.alpha : 1 / (n * epsilon);
      ASSIGN_OR_RETURN(MechanismSpec spec,
                       MechanismSpec::Create(epsilon, alpha));
      for (TailMetric metric : config.metrics) {
        const bool quantile_cell =
            config.beta_quantile && metric == TailMetric::kFair;
        const std::vector<double> thresholds =
            quantile_cell ? std::vector<double>{0} : config.thresholds;
        for (double threshold : thresholds) {
          ASSIGN_OR_RETURN(Dataset dataset, CellDataset(config, n, threshold));
          ASSIGN_OR_RETURN(OutputDensity density,
                           BuildOutputDensity(dataset, spec));
          if (quantile_cell) {
            ASSIGN_OR_RETURN(threshold,
                             FairQuantile(dataset, density, config.beta));
          }
          ExperimentRecord record{cell_id,       n,      config.diameter,
                                  epsilon,       alpha,  config.beta,
                                  config.lambda, metric, threshold};
          ASSIGN_OR_RETURN(record.exact,
                           ExactTail(dataset, density, metric, threshold));
          if (config.trials > 0) {
            const MetricEvaluator evaluator(dataset, spec.alpha);
            const int64_t hits = CountExceedances(
                density, evaluator, metric, threshold, config.trials,
                DeriveSeed(config.seed, cell_id), config.workers);
            const double p = static_cast<double>(hits) / config.trials;
            record.mc_estimate = p;
            record.mc_stderr = std::sqrt(p * (1 - p) / config.trials);
          }
          record.bound =
              AnalyticBound(config, n, epsilon, alpha, metric, threshold);
          records.push_back(record);
          ++cell_id;
        }
      }
    }
  }
  return records;
}

std::string RecordsToCsv(const std::vector<ExperimentRecord>& records) {
  auto optional = [](const std::optional<double>& x) {
    return x.has_value() ? FormatDouble(*x) : std::string();
  };
  std::string csv =
      "cell_id,n,m,epsilon,alpha,beta,lambda,metric,threshold,exact,"
      "mc_estimate,mc_stderr,bound\n";
  for (const ExperimentRecord& r : records) {
    absl::StrAppend(&csv, r.cell_id, ",", r.n, ",", FormatDouble(r.diameter),
                    ",", FormatDouble(r.epsilon), ",", FormatDouble(r.alpha),
                    ",", FormatDouble(r.beta), ",", optional(r.lambda), ",",
                    std::string(TailMetricName(r.metric)), ",",
                    FormatDouble(r.threshold), ",", FormatDouble(r.exact), ",",
                    optional(r.mc_estimate), ",", optional(r.mc_stderr), ",",
                    optional(r.bound), "\n");
  }
  return csv;
}

nlohmann::ordered_json RecordsToJson(
    const std::vector<ExperimentRecord>& records) {
  auto optional = [](const std::optional<double>& x) {
    return x.has_value() ? nlohmann::ordered_json(*x)
                         : nlohmann::ordered_json();
  };
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ExperimentRecord& r : records) {
    nlohmann::ordered_json row;
    row["cell_id"] = r.cell_id;
    row["n"] = r.n;
    row["m"] = r.diameter;
    row["epsilon"] = r.epsilon;
    row["alpha"] = r.alpha;
    row["beta"] = r.beta;
    row["lambda"] = optional(r.lambda);
    row["metric"] = std::string(TailMetricName(r.metric));
    row["threshold"] = r.threshold;
    row["exact"] = r.exact;
    row["mc_estimate"] = optional(r.mc_estimate);
    row["mc_stderr"] = optional(r.mc_stderr);
    row["bound"] = optional(r.bound);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dpfl
