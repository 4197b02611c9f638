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

#include "dpfl/cli.h"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "dpfl/base/status_macros.h"
#include "dpfl/bounds.h"
#include "dpfl/core.h"
#include "dpfl/experiment.h"
#include "dpfl/families.h"
#include "dpfl/io.h"
#include "dpfl/mechanism.h"
#include "dpfl/metrics.h"
#include "dpfl/score.h"

namespace dpfl {
namespace {

using Json = nlohmann::ordered_json;

// Every flag of every subcommand; each handler reads the ones it declared.
struct Flags {
  std::string kind;
  std::string dataset;
  std::string dataset_a;
  std::string dataset_b;
  std::string certificate;
  std::string metric = "p";
  std::string alpha;
  std::string family = "ctm";
  std::string format = "json";
  std::string source = "uniform";
  int n = 0;
  int k = 0;
  int distance = 1;
  double m = 2;
  double epsilon = 1;
  double beta = 0.1;
  double threshold = 0;
  double location = 0;
  std::optional<double> lambda;
  std::optional<double> gamma;
  int64_t trials = 0;
  std::optional<uint64_t> seed;
  int workers = 1;
  std::vector<int> ns;
  std::vector<double> epsilons;
  std::vector<std::string> metrics;
  std::vector<std::string> thresholds;
};

// A failure that maps to the usage exit code rather than a status code.
absl::Status UsageError(std::string_view message) {
  return absl::UnimplementedError(std::string(message));
}

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kUnimplemented:
      return kExitUsage;
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kOutOfRange:
      return kExitConstraint;
    default:
      return kExitData;
  }
}

uint64_t ResolveSeed(const Flags& flags) {
  if (flags.seed.has_value()) return *flags.seed;
  if (const char* env = std::getenv("DPFL_SEED")) {
    uint64_t seed;
    if (absl::SimpleAtoi(env, &seed)) return seed;
  }
  return 0;
}

// Parses --alpha: a number, or "auto" for 1 / (n epsilon).
absl::StatusOr<double> ResolveAlpha(const std::string& text, int n,
                                    double epsilon) {
  if (text.empty()) return UsageError("--alpha is required");
  if (text == "auto") return 1 / (n * epsilon);
  double alpha;
  if (!absl::SimpleAtod(text, &alpha)) {
    return UsageError(
        absl::StrCat("--alpha must be a number or 'auto', got '", text, "'"));
  }
  return alpha;
}

absl::StatusOr<Dataset> RequireDataset(const std::string& path,
                                       std::string_view flag) {
  if (path.empty()) {
    return UsageError(absl::StrCat(std::string(flag), " is required"));
  }
  return ReadDatasetFile(path);
}

absl::StatusOr<MechanismSpec> SpecFor(const Flags& flags, int n) {
  ASSIGN_OR_RETURN(double alpha, ResolveAlpha(flags.alpha, n, flags.epsilon));
  return MechanismSpec::Create(flags.epsilon, alpha);
}

absl::Status Gen(const Flags& flags, std::ostream& out) {
  ASSIGN_OR_RETURN(AdversarialKind kind, ParseAdversarialKind(flags.kind));
  AdversarialParams params;
  params.n = flags.n;
  params.k = flags.k;
  params.diameter = flags.m;
  params.lambda = flags.lambda.value_or(0);
  params.gamma = flags.gamma.value_or(0);
  ASSIGN_OR_RETURN(std::vector<Dataset> datasets, GenAdversarial(kind, params));
  if (datasets.size() == 1) {
    out << DumpJson(DatasetToJson(datasets[0])) << "\n";
    return absl::OkStatus();
  }
  Json json;
  json["datasets"] = Json::array();
  for (const Dataset& d : datasets)
    json["datasets"].push_back(DatasetToJson(d));
  ASSIGN_OR_RETURN(int distance, ChangeOneDistance(datasets[0], datasets[1]));
  json["change_one_distance"] = distance;
  json["median_gap"] = datasets[1].median() - datasets[0].median();
  out << DumpJson(json) << "\n";
  return absl::OkStatus();
}

absl::Status Metrics(const Flags& flags, std::ostream& out) {
  ASSIGN_OR_RETURN(Dataset dataset, RequireDataset(flags.dataset, "--dataset"));
  const double l = flags.location;
  Json json;
  json["n"] = dataset.size();
  json["location"] = l;
  json["optimal_location"] = OptimalLocation(dataset);
  ASSIGN_OR_RETURN(json["social_welfare"], SocialWelfare(dataset, l));
  ASSIGN_OR_RETURN(json["loss_vector"], LossVector(dataset, l));
  ASSIGN_OR_RETURN(json["fair"], Fair(dataset, l));
  ASSIGN_OR_RETURN(json["fair_oracle"], Fair(dataset, l, Evaluation::kOracle));
  ASSIGN_OR_RETURN(json["crossed_set"], CrossedSet(dataset, l));
  ASSIGN_OR_RETURN(json["swdiff"], Swdiff(dataset, l));
  ASSIGN_OR_RETURN(json["swdiff_oracle"],
                   Swdiff(dataset, l, Evaluation::kOracle));
  ASSIGN_OR_RETURN(json["q"], QValue(dataset, l));
  if (!flags.alpha.empty()) {
    ASSIGN_OR_RETURN(double alpha,
                     ResolveAlpha(flags.alpha, dataset.size(), flags.epsilon));
    ASSIGN_OR_RETURN(WideningParam widening, WideningParam::Create(alpha));
    json["alpha"] = alpha;
    ASSIGN_OR_RETURN(json["p_alpha"], PAlphaValue(dataset, l, widening));
  }
  out << DumpJson(json) << "\n";
  return absl::OkStatus();
}

absl::Status Sample(const Flags& flags, std::ostream& out) {
  ASSIGN_OR_RETURN(Dataset dataset, RequireDataset(flags.dataset, "--dataset"));
  ASSIGN_OR_RETURN(MechanismSpec spec, SpecFor(flags, dataset.size()));
  ASSIGN_OR_RETURN(OutputDensity density, BuildOutputDensity(dataset, spec));
  const uint64_t seed = ResolveSeed(flags);
  std::vector<double> samples;
  samples.reserve(flags.trials);
  for (int64_t t = 0; t < flags.trials; ++t) {
    samples.push_back(SampleLocation(density, seed, t));
  }
  if (flags.format == "csv") {
    out << "trial,location\n";
    for (size_t t = 0; t < samples.size(); ++t) {
      out << t << "," << FormatDouble(samples[t]) << "\n";
    }
    return absl::OkStatus();
  }
  Json json;
  json["seed"] = seed;
  json["epsilon"] = spec.epsilon;
  json["alpha"] = spec.alpha.value();
  json["samples"] = samples;
  out << DumpJson(json) << "\n";
  return absl::OkStatus();
}

absl::Status Tail(const Flags& flags, std::ostream& out) {
  ASSIGN_OR_RETURN(Dataset dataset, RequireDataset(flags.dataset, "--dataset"));
  ASSIGN_OR_RETURN(TailMetric metric, ParseTailMetric(flags.metric));
  ASSIGN_OR_RETURN(MechanismSpec spec, SpecFor(flags, dataset.size()));
  ExperimentConfig config;
  config.source = DatasetSource::kFile;
  config.dataset = dataset;
  config.epsilons = {spec.epsilon};
  config.alpha = spec.alpha.value();
  config.metrics = {metric};
  config.thresholds = {flags.threshold};
  config.trials = flags.trials;
  config.seed = ResolveSeed(flags);
  config.workers = flags.workers;
  ASSIGN_OR_RETURN(std::vector<ExperimentRecord> records,
                   RunExperiment(config));
  const ExperimentRecord& r = records.front();
  Json json;
  json["exact"] = r.exact;
  json["metric"] = std::string(TailMetricName(metric));
  json["threshold"] = r.threshold;
  json["epsilon"] = r.epsilon;
  json["alpha"] = r.alpha;
  if (r.mc_estimate.has_value()) {
    json["trials"] = flags.trials;
    json["mc_estimate"] = *r.mc_estimate;
    json["mc_stderr"] = *r.mc_stderr;
  }
  out << DumpJson(json) << "\n";
  return absl::OkStatus();
}

absl::Status Quantile(const Flags& flags, std::ostream& out) {
  ASSIGN_OR_RETURN(Dataset dataset, RequireDataset(flags.dataset, "--dataset"));
  ASSIGN_OR_RETURN(MechanismSpec spec, SpecFor(flags, dataset.size()));
  ASSIGN_OR_RETURN(OutputDensity density, BuildOutputDensity(dataset, spec));
  ASSIGN_OR_RETURN(double quantile, FairQuantile(dataset, density, flags.beta));
  ASSIGN_OR_RETURN(double tail,
                   ExactTail(dataset, density, TailMetric::kFair, quantile));
  Json json;
  json["beta"] = flags.beta;
  json["epsilon"] = spec.epsilon;
  json["alpha"] = spec.alpha.value();
  json["fair_quantile"] = quantile;
  json["tail_at_quantile"] = tail;
  out << DumpJson(json) << "\n";
  return absl::OkStatus();
}

absl::Status Bound(const Flags& flags, std::ostream& out) {
  Json json;
  json["kind"] = flags.kind;
  if (flags.kind == "direct-lower") {
    ASSIGN_OR_RETURN(double cap,
                     DirectLowerBound(flags.distance, flags.epsilon));
    json["distance"] = flags.distance;
    json["epsilon"] = flags.epsilon;
    json["success_cap"] = cap;
    json["failure_floor"] = 1 - cap;
    out << DumpJson(json) << "\n";
    return absl::OkStatus();
  }
  if (flags.kind != "p-tail" && flags.kind != "k-star") {
    return UsageError(
        absl::StrCat("--kind must be direct-lower, p-tail or k-star, got '",
                     flags.kind, "'"));
  }
  BoundParams params;
  params.n = flags.n;
  params.epsilon = flags.epsilon;
  ASSIGN_OR_RETURN(params.alpha,
                   ResolveAlpha(flags.alpha, flags.n, flags.epsilon));
  params.beta = flags.beta;
  params.lambda = flags.lambda;
  params.k = flags.k;
  ASSIGN_OR_RETURN(params.family, ParseFamily(flags.family));
  json["family"] = std::string(FamilyName(params.family));
  json["n"] = params.n;
  json["epsilon"] = params.epsilon;
  json["alpha"] = params.alpha;
  if (params.lambda.has_value()) json["lambda"] = *params.lambda;
  if (flags.kind == "p-tail") {
    ASSIGN_OR_RETURN(BoundReport report, PTailUpper(params));
    json["k"] = params.k;
    json["value"] = report.value;
    json["capped"] = report.capped;
  } else {
    ASSIGN_OR_RETURN(BoundReport report, KStar(params));
    json["beta"] = params.beta;
    json["k_star"] = static_cast<int64_t>(report.value);
    json["guarantee_may_not_apply"] = report.guarantee_may_not_apply;
  }
  out << DumpJson(json) << "\n";
  return absl::OkStatus();
}

absl::Status AuditDpCommand(const Flags& flags, std::ostream& out) {
  ASSIGN_OR_RETURN(Dataset a, RequireDataset(flags.dataset_a, "--a"));
  ASSIGN_OR_RETURN(Dataset b, RequireDataset(flags.dataset_b, "--b"));
  ASSIGN_OR_RETURN(int distance, ChangeOneDistance(a, b));
  ASSIGN_OR_RETURN(MechanismSpec spec, SpecFor(flags, a.size()));
  ASSIGN_OR_RETURN(double ratio, AuditDp(a, b, spec));
  const double budget = distance * spec.epsilon;
  Json json;
  json["change_one_distance"] = distance;
  json["epsilon"] = spec.epsilon;
  json["alpha"] = spec.alpha.value();
  json["max_log_ratio"] = ratio;
  json["budget"] = budget;
  json["within_budget"] = ratio <= budget + 1e-9;
  out << DumpJson(json) << "\n";
  return absl::OkStatus();
}

absl::Status CheckFamily(const Flags& flags, std::ostream& out) {
  ASSIGN_OR_RETURN(Dataset dataset, RequireDataset(flags.dataset, "--dataset"));
  Json json;
  json["n"] = dataset.size();
  json["is_ctm"] = IsCtm(dataset);
  if (!flags.certificate.empty()) {
    if (!flags.lambda.has_value()) {
      return UsageError("--certificate needs --lambda");
    }
    ASSIGN_OR_RETURN(SinglePeakedDensity certificate,
                     ReadCertificateFile(flags.certificate));
    ASSIGN_OR_RETURN(bool certified,
                     VerifySpmCertificate(dataset, certificate, *flags.lambda));
    ASSIGN_OR_RETURN(json["ks_distance"], KsDistance(dataset, certificate));
    json["lambda"] = *flags.lambda;
    json["spm_certified"] = certified;
  }
  if (flags.lambda.has_value()) {
    json["dkw_bound"] = DkwBound(dataset.size(), *flags.lambda);
  }
  out << DumpJson(json) << "\n";
  return absl::OkStatus();
}

absl::Status Certificate(const Flags& flags, std::ostream& out) {
  ASSIGN_OR_RETURN(Dataset dataset, RequireDataset(flags.dataset, "--dataset"));
  ASSIGN_OR_RETURN(SinglePeakedDensity certificate, CtmCertificate(dataset));
  out << DumpJson(CertificateToJson(certificate)) << "\n";
  return absl::OkStatus();
}

absl::StatusOr<DatasetSource> ParseSource(const std::string& name) {
  if (name == "uniform") return DatasetSource::kUniform;
  if (name == "random-ctm") return DatasetSource::kRandomCtm;
  if (name == "ctm-worst") return DatasetSource::kCtmWorst;
  if (name == "spm-worst") return DatasetSource::kSpmWorst;
  if (name == "file") return DatasetSource::kFile;
  return UsageError(absl::StrCat(
      "--source must be uniform, random-ctm, ctm-worst, spm-worst or file, "
      "got '",
      name, "'"));
}

absl::Status Experiment(const Flags& flags, std::ostream& out) {
  ExperimentConfig config;
  ASSIGN_OR_RETURN(config.source, ParseSource(flags.source));
  if (config.source == DatasetSource::kFile) {
    ASSIGN_OR_RETURN(config.dataset,
                     RequireDataset(flags.dataset, "--dataset"));
  }
  if (!flags.ns.empty()) config.ns = flags.ns;
  config.diameter = flags.m;
  if (!flags.epsilons.empty()) config.epsilons = flags.epsilons;
  if (!flags.alpha.empty() && flags.alpha != "auto") {
    double alpha;
    if (!absl::SimpleAtod(flags.alpha, &alpha)) {
      return UsageError("--alpha must be a number or 'auto'");
    }
    config.alpha = alpha;
  }
  config.beta = flags.beta;
  config.lambda = flags.lambda;
  if (!flags.metrics.empty()) {
    config.metrics.clear();
    for (const std::string& name : flags.metrics) {
      ASSIGN_OR_RETURN(TailMetric metric, ParseTailMetric(name));
      config.metrics.push_back(metric);
    }
  }
  if (!flags.thresholds.empty()) {
    config.thresholds.clear();
    for (const std::string& text : flags.thresholds) {
      if (text == "quantile") {
        config.beta_quantile = true;
        continue;
      }
      double t;
      if (!absl::SimpleAtod(text, &t)) {
        return UsageError(absl::StrCat(
            "--threshold must be a number or 'quantile', got '", text, "'"));
      }
      config.thresholds.push_back(t);
    }
    if (config.thresholds.empty()) config.thresholds = {0};
  }
  config.trials = flags.trials;
  config.seed = ResolveSeed(flags);
  config.workers = flags.workers;
  ASSIGN_OR_RETURN(std::vector<ExperimentRecord> records,
                   RunExperiment(config));
  if (flags.format == "csv") {
    out << RecordsToCsv(records);
  } else {
    out << DumpJson(RecordsToJson(records)) << "\n";
  }
  return absl::OkStatus();
}

void AddAlpha(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--alpha", flags.alpha,
                  "Widening parameter in [0, 1], or 'auto' for 1/(n epsilon)");
}

void AddSeed(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--seed", flags.seed,
                  "64-bit seed (falls back to $DPFL_SEED, then 0)");
}

void AddFormat(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int RunCommand(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  Flags flags;
  CLI::App app{"Private facility location toolkit", "dpfl"};
  app.require_subcommand(1);

  CLI::App* gen = app.add_subcommand("gen", "Generate an adversarial dataset");
  gen->add_option("--kind", flags.kind,
                  "ctm-worst, spm-worst, impossibility-pair, fair-lb-pair, "
                  "spm-lb-pair or uniform")
      ->required();
  gen->add_option("--n", flags.n, "Number of agents (odd)")->required();
  gen->add_option("--k", flags.k, "Worst-case level k");
  gen->add_option("--m", flags.m, "Domain diameter");
  gen->add_option("--lambda", flags.lambda, "KS radius");
  gen->add_option("--gamma", flags.gamma, "Median shift of fair-lb-pair");

  CLI::App* metrics = app.add_subcommand("metrics", "Losses at one location");
  metrics->add_option("--dataset", flags.dataset, "Dataset JSON")->required();
  metrics->add_option("--location", flags.location, "Facility location")
      ->required();
  metrics->add_option("--epsilon", flags.epsilon, "Needed for --alpha auto");
  AddAlpha(metrics, flags);

  CLI::App* sample = app.add_subcommand("sample", "Draw mechanism outputs");
  sample->add_option("--dataset", flags.dataset, "Dataset JSON")->required();
  sample->add_option("--epsilon", flags.epsilon, "Privacy budget")->required();
  AddAlpha(sample, flags);
  sample->add_option("--trials", flags.trials, "Number of draws")
      ->check(CLI::NonNegativeNumber);
  AddSeed(sample, flags);
  AddFormat(sample, flags);

  CLI::App* tail =
      app.add_subcommand("tail", "Exact (and MC) tail probability");
  tail->add_option("--dataset", flags.dataset, "Dataset JSON")->required();
  tail->add_option("--metric", flags.metric, "p, fair or swdiff");
  tail->add_option("--epsilon", flags.epsilon, "Privacy budget")->required();
  AddAlpha(tail, flags);
  tail->add_option("--threshold", flags.threshold, "Tail threshold")
      ->required();
  tail->add_option("--trials", flags.trials, "Monte Carlo draws")
      ->check(CLI::NonNegativeNumber);
  tail->add_option("--workers", flags.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  AddSeed(tail, flags);

  CLI::App* quantile =
      app.add_subcommand("quantile", "Exact FAIR quantile at level 1 - beta");
  quantile->add_option("--dataset", flags.dataset, "Dataset JSON")->required();
  quantile->add_option("--epsilon", flags.epsilon, "Privacy budget")
      ->required();
  AddAlpha(quantile, flags);
  quantile->add_option("--beta", flags.beta, "Tail level in (0, 1)");

  CLI::App* bound = app.add_subcommand("bound", "Analytic bounds");
  bound->add_option("--kind", flags.kind, "direct-lower, p-tail or k-star")
      ->required();
  bound->add_option("--distance", flags.distance, "Change-one distance");
  bound->add_option("--n", flags.n, "Number of agents");
  bound->add_option("--epsilon", flags.epsilon, "Privacy budget");
  AddAlpha(bound, flags);
  bound->add_option("--beta", flags.beta, "Failure probability");
  bound->add_option("--k", flags.k, "Score level");
  bound->add_option("--family", flags.family, "ctm or spm");
  bound->add_option("--lambda", flags.lambda, "KS radius (spm)");

  CLI::App* audit = app.add_subcommand("audit-dp", "Exact privacy-loss audit");
  audit->add_option("--a", flags.dataset_a, "First dataset JSON")->required();
  audit->add_option("--b", flags.dataset_b, "Second dataset JSON")->required();
  audit->add_option("--epsilon", flags.epsilon, "Privacy budget")->required();
  AddAlpha(audit, flags);

  CLI::App* check =
      app.add_subcommand("check-family", "CTM test and SPM certificate check");
  check->add_option("--dataset", flags.dataset, "Dataset JSON")->required();
  check->add_option("--certificate", flags.certificate, "Certificate JSON");
  check->add_option("--lambda", flags.lambda, "KS radius");

  CLI::App* certificate = app.add_subcommand(
      "certificate", "Single-peaked certificate of a CTM dataset");
  certificate->add_option("--dataset", flags.dataset, "Dataset JSON")
      ->required();

  CLI::App* experiment =
      app.add_subcommand("experiment", "Exact vs Monte Carlo sweep");
  experiment->add_option("--source", flags.source,
                         "uniform, random-ctm, ctm-worst, spm-worst or file");
  experiment->add_option("--dataset", flags.dataset, "Dataset JSON (file)");
  experiment->add_option("--n", flags.ns, "Agent counts")->delimiter(',');
  experiment->add_option("--m", flags.m, "Domain diameter");
  experiment->add_option("--epsilon", flags.epsilons, "Privacy budgets")
      ->delimiter(',');
  AddAlpha(experiment, flags);
  experiment->add_option("--beta", flags.beta, "Quantile level");
  experiment->add_option("--lambda", flags.lambda, "KS radius");
  experiment->add_option("--metric", flags.metrics, "p, fair, swdiff")
      ->delimiter(',');
  experiment
      ->add_option("--threshold", flags.thresholds,
                   "Thresholds, or 'quantile' for the beta-quantile")
      ->delimiter(',');
  experiment->add_option("--trials", flags.trials, "Monte Carlo draws per cell")
      ->check(CLI::NonNegativeNumber);
  experiment->add_option("--workers", flags.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  AddSeed(experiment, flags);
  AddFormat(experiment, flags);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  absl::Status status;
  if (gen->parsed()) {
    status = Gen(flags, out);
  } else if (metrics->parsed()) {
    status = Metrics(flags, out);
  } else if (sample->parsed()) {
    status = Sample(flags, out);
  } else if (tail->parsed()) {
    status = Tail(flags, out);
  } else if (quantile->parsed()) {
    status = Quantile(flags, out);
  } else if (bound->parsed()) {
    status = Bound(flags, out);
  } else if (audit->parsed()) {
    status = AuditDpCommand(flags, out);
  } else if (check->parsed()) {
    status = CheckFamily(flags, out);
  } else if (certificate->parsed()) {
    status = Certificate(flags, out);
  } else if (experiment->parsed()) {
    status = Experiment(flags, out);
  }
  if (!status.ok()) {
    err << "error: " << status.message() << "\n";
    return ExitCodeFor(status);
  }
  return kExitOk;
}

}  // namespace dpfl
