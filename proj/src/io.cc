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

#include "dpfl/io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpfl {
namespace {

void DumpTo(const nlohmann::ordered_json& value, std::string& out) {
  switch (value.type()) {
    case nlohmann::ordered_json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::ordered_json(key).dump();
        out += ':';
        DumpTo(item, out);
      }
      out += '}';
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      out += '[';
      for (size_t i = 0; i < value.size(); ++i) {
        if (i > 0) out += ',';
        DumpTo(value[i], out);
      }
      out += ']';
      return;
    }
    case nlohmann::ordered_json::value_t::number_float: {
      const double x = value.get<double>();
      out += std::isfinite(x) ? FormatDouble(x) : "null";
      return;
    }
    default:
      out += value.dump();
  }
}

absl::StatusOr<std::vector<double>> NumberArray(const nlohmann::json& value,
                                                std::string_view key) {
  const auto it = value.find(key);
  if (it == value.end() || !it->is_array()) {
    return absl::InvalidArgumentError(
        absl::StrCat("missing array field '", std::string(key), "'"));
  }
  std::vector<double> numbers;
  numbers.reserve(it->size());
  for (const auto& item : *it) {
    if (!item.is_number()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "field '", std::string(key), "' must hold only numbers"));
    }
    numbers.push_back(item.get<double>());
  }
  return numbers;
}

absl::StatusOr<double> Number(const nlohmann::json& value,
                              std::string_view key) {
  const auto it = value.find(key);
  if (it == value.end() || !it->is_number()) {
    return absl::InvalidArgumentError(
        absl::StrCat("missing numeric field '", std::string(key), "'"));
  }
  return it->get<double>();
}

}  // namespace

std::string FormatDouble(double value) {
  if (!std::isfinite(value)) return "";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string DumpJson(const nlohmann::ordered_json& value) {
  std::string out;
  DumpTo(value, out);
  return out;
}

nlohmann::ordered_json DatasetToJson(const Dataset& dataset) {
  nlohmann::ordered_json json;
  json["m"] = dataset.diameter();
  json["locations"] = std::vector<double>(dataset.locations().begin(),
                                          dataset.locations().end());
  return json;
}

absl::StatusOr<Dataset> DatasetFromJson(const nlohmann::json& value) {
  if (!value.is_object()) {
    return absl::InvalidArgumentError("dataset must be a JSON object");
  }
  const absl::StatusOr<double> m = Number(value, "m");
  if (!m.ok()) return m.status();
  const absl::StatusOr<std::vector<double>> locations =
      NumberArray(value, "locations");
  if (!locations.ok()) return locations.status();
  return LoadDataset(*locations, *m);
}

nlohmann::ordered_json CertificateToJson(const SinglePeakedDensity& density) {
  nlohmann::ordered_json json;
  json["breakpoints"] = density.breakpoints;
  json["densities"] = density.densities;
  json["peak"] = density.peak;
  return json;
}

absl::StatusOr<SinglePeakedDensity> CertificateFromJson(
    const nlohmann::json& value) {
  if (!value.is_object()) {
    return absl::InvalidArgumentError("certificate must be a JSON object");
  }
  SinglePeakedDensity density;
  absl::StatusOr<std::vector<double>> breakpoints =
      NumberArray(value, "breakpoints");
  if (!breakpoints.ok()) return breakpoints.status();
  absl::StatusOr<std::vector<double>> densities =
      NumberArray(value, "densities");
  if (!densities.ok()) return densities.status();
  const absl::StatusOr<double> peak = Number(value, "peak");
  if (!peak.ok()) return peak.status();
  density.breakpoints = *std::move(breakpoints);
  density.densities = *std::move(densities);
  density.peak = *peak;
  return density;
}

absl::StatusOr<nlohmann::json> ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json value =
      nlohmann::json::parse(buffer.str(), nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat(path, " is not valid JSON"));
  }
  return value;
}

absl::StatusOr<Dataset> ReadDatasetFile(const std::string& path) {
  absl::StatusOr<nlohmann::json> value = ReadJsonFile(path);
  if (!value.ok()) return value.status();
  return DatasetFromJson(*value);
}

absl::StatusOr<SinglePeakedDensity> ReadCertificateFile(
    const std::string& path) {
  absl::StatusOr<nlohmann::json> value = ReadJsonFile(path);
  if (!value.ok()) return value.status();
  return CertificateFromJson(*value);
}

}  // namespace dpfl
