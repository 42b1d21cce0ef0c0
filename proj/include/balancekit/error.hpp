/*
 * Copyright (c) 2026, The balancekit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace balancekit {

enum class ErrorCode {
  invalid_argument = 1,
  parse_error,
  io_error,
  directed_input,
  not_converged,
  degenerate_input,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the iterative eigensolver; carries the best residual norms
/// reached for each requested eigenpair.
class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& what, std::vector<double> residuals)
      : Error(ErrorCode::not_converged, what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> residuals_;
};

}  // namespace balancekit
