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

#ifndef DPFL_BASE_STATUS_MACROS_H_
#define DPFL_BASE_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define DPFL_STATUS_CONCAT_INNER_(x, y) x##y
#define DPFL_STATUS_CONCAT_(x, y) DPFL_STATUS_CONCAT_INNER_(x, y)

#define RETURN_IF_ERROR(expr)                    \
  do {                                           \
    const absl::Status _dpfl_status = (expr);    \
    if (!_dpfl_status.ok()) return _dpfl_status; \
  } while (0)

#define ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                           \
  if (!statusor.ok()) return statusor.status();      \
  lhs = *std::move(statusor)

#define ASSIGN_OR_RETURN(lhs, rexpr) \
  ASSIGN_OR_RETURN_IMPL_(            \
      DPFL_STATUS_CONCAT_(_dpfl_statusor_, __LINE__), lhs, rexpr)

#endif  // DPFL_BASE_STATUS_MACROS_H_
