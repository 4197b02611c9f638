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

// JSON file formats.
//
//   dataset:      {"m": <float>, "locations": [<float>, ...]}
//   certificate:  {"breakpoints": [...], "densities": [...], "peak": <float>}
//
// Floats are written with 17 significant digits so files round-trip exactly.

#ifndef DPFL_IO_H_
#define DPFL_IO_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "dpfl/core.h"
#include "dpfl/families.h"
#include "json.hpp"

namespace dpfl {

// "%.17g". Non-finite values render as "" (null in JSON, empty in CSV).
std::string FormatDouble(double value);

// Compact JSON with every float rendered by FormatDouble. Keys keep insertion
// order when the value is an ordered_json.
std::string DumpJson(const nlohmann::ordered_json& value);

nlohmann::ordered_json DatasetToJson(const Dataset& dataset);
absl::StatusOr<Dataset> DatasetFromJson(const nlohmann::json& value);

nlohmann::ordered_json CertificateToJson(const SinglePeakedDensity& density);
absl::StatusOr<SinglePeakedDensity> CertificateFromJson(
    const nlohmann::json& value);

// Whole-file helpers. Parse failures are InvalidArgument, missing files
// NotFound.
absl::StatusOr<nlohmann::json> ReadJsonFile(const std::string& path);
absl::StatusOr<Dataset> ReadDatasetFile(const std::string& path);
absl::StatusOr<SinglePeakedDensity> ReadCertificateFile(
    const std::string& path);

}  // namespace dpfl

#endif  // DPFL_IO_H_
