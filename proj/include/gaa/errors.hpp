/*
 * Copyright 2026 The gaa Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GAA_ERRORS_HPP
#define GAA_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gaa {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite or otherwise malformed numeric input.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// Gradient requested at a simplex boundary point for an entropy family whose
// gradient is singular there (negative Shannon, Tsallis with q < 1).
class BoundaryGradientError : public Error {
 public:
  using Error::Error;
};

// Log-type loss queried at an outcome with zero predicted probability.
class InfiniteLossError : public Error {
 public:
  using Error::Error;
};

// Game or harness configuration is inconsistent (dimension mismatch, unknown
// field, missing seed, ...).
class InvalidConfigError : public Error {
 public:
  using Error::Error;
};

// Prior cannot be brought into the relative interior.
class InvalidPriorError : public Error {
 public:
  using Error::Error;
};

// Regret bound requested where the entropy is infinite at the comparator.
class UnboundedPenaltyError : public Error {
 public:
  using Error::Error;
};

// Mixability-constant search exhausted its bracket without a usable answer.
class EtaOutOfRangeError : public Error {
 public:
  using Error::Error;
};

// Iterative solver failed to certify its tolerance; carries the best iterate
// found and the residual (certified optimality gap) at that iterate.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, std::vector<double> best_iterate,
              double residual)
      : Error(what), best_iterate_(std::move(best_iterate)), residual_(residual) {}

  const std::vector<double>& best_iterate() const { return best_iterate_; }
  double residual() const { return residual_; }

 private:
  std::vector<double> best_iterate_;
  double residual_;
};

}  // namespace gaa

#endif  // GAA_ERRORS_HPP
