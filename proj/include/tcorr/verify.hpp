// Copyright 2026 The tcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tcorr/protocol.hpp"
#include "tcorr/qcore.hpp"

namespace tcorr::verify {

/// Deterministic random stream for one trial, derived from (seed, trial) so
/// trials are independent of evaluation order.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi);
  PauliAxis axis() { return static_cast<PauliAxis>(integer(0, 2)); }
  /// Haar-random pure qubit state with a random global phase.
  StateVector pure_state();

 private:
  std::mt19937_64 engine_;
};

struct SuiteReport {
  std::string suite;
  std::size_t trials = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<double> errors;  // per trial
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite or trials == 0.
SuiteReport run_suite(const std::string& suite, std::size_t trials,
                      std::uint64_t seed);

/// "<suite>: trials=... max_error=... tolerance=... PASS|FAIL"
std::string format_report(const SuiteReport& report);
/// suite,trial,error rows.
std::string format_errors_csv(const std::vector<SuiteReport>& reports);

}  // namespace tcorr::verify
