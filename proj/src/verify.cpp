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

#include "tcorr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "tcorr/nmr.hpp"
#include "tcorr/oracle.hpp"
#include "tcorr/response.hpp"

namespace tcorr::verify {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr double kMaxTime = 10e-3;
constexpr double kMaxCoefficient = 500.0 * kPi;

// Random correlation: n ∈ [1,10], t0 = 0, later times in [0, 10 ms], sorted
// unless `monotonic` is false.
CorrelationSpec random_spec(TrialRng& rng, bool monotonic) {
  const int n = rng.integer(1, 10);
  std::vector<double> times{0.0};
  for (int k = 1; k < n; ++k) times.push_back(rng.uniform(0.0, kMaxTime));
  if (monotonic) std::sort(times.begin() + 1, times.end());
  CorrelationSpec spec;
  for (int k = 0; k < n; ++k) spec.ops.push_back({rng.axis(), times[k]});
  return spec;
}

ConstHamiltonian random_hamiltonian(TrialRng& rng) {
  return {rng.uniform(-kMaxCoefficient, kMaxCoefficient),
          rng.uniform(-kMaxCoefficient, kMaxCoefficient),
          rng.uniform(-kMaxCoefficient, kMaxCoefficient),
          rng.uniform(-kMaxCoefficient, kMaxCoefficient)};
}

double protocol_vs_oracle(TrialRng& rng) {
  const CorrelationSpec spec = random_spec(rng, true);
  const Hamiltonian h = random_hamiltonian(rng);
  const StateVector psi = rng.pure_state();
  return std::abs(run_protocol(spec, h, psi).f -
                  oracle::correlation_direct(spec, h, psi));
}

double nmr_vs_protocol(TrialRng& rng) {
  // Non-monotonic times exercise the refocused (inverted) delays.
  const CorrelationSpec spec = random_spec(rng, false);
  const double delta_nu = rng.uniform(-500.0, 500.0);
  const auto mol = nmr::MoleculeParams::with_system_offset(delta_nu);
  const StateVector psi = rng.pure_state();
  const Hamiltonian h = nmr::internal_hamiltonian(mol).system();
  return std::abs(nmr::run_nmr_experiment(spec, mol, psi) -
                  run_protocol(spec, h, psi).f);
}

double decompositions(TrialRng& rng) {
  nmr::MoleculeParams mol;
  mol.nu1 = rng.uniform(-500.0, 500.0);
  mol.nu2 = rng.uniform(-500.0, 500.0);
  mol.j12 = rng.uniform(100.0, 300.0);
  double worst = 0.0;
  for (PauliAxis axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
    const Operator target = controlled_s(axis);
    const Operator net =
        nmr::sequence_propagator(nmr::compile_controlled(axis, mol), mol);
    const Operator xy =
        nmr::sequence_propagator(nmr::compile_controlled(axis, mol, true), mol);
    const double err = axis == PauliAxis::Z ? max_abs_diff(net, target)
                                            : phase_normalized_diff(net, target);
    worst = std::max({worst, err, max_abs_diff(xy, net)});
  }
  return worst;
}

double response_consistency(TrialRng& rng) {
  response::ResponseParams p;
  p.gamma = 1.0;
  p.field = rng.uniform(50.0 * kPi, 500.0 * kPi);
  p.bp0 = rng.uniform(0.1, 2.0);
  p.beta = rng.uniform(0.0, 0.02);
  const PauliAxis alpha = rng.axis();
  const PauliAxis beta_axis = rng.axis();
  const double t = rng.uniform(0.0, kMaxTime);
  return std::abs(response::response_from_protocol(alpha, beta_axis, t, p) -
                  response::response_function(alpha, beta_axis, t, p));
}

struct SuiteDef {
  const char* name;
  double tolerance;
  double (*trial)(TrialRng&);
};

constexpr SuiteDef kSuites[] = {
    {"protocol-vs-oracle", 1e-10, protocol_vs_oracle},
    {"nmr-vs-protocol", 1e-8, nmr_vs_protocol},
    {"decompositions", 1e-12, decompositions},
    {"response-consistency", 1e-9, response_consistency},
};

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial)
    : engine_(splitmix64(splitmix64(seed) ^ (trial * 0xd1b54a32d192ed03ULL))) {}

double TrialRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int TrialRng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

StateVector TrialRng::pure_state() {
  const double theta = std::acos(1.0 - 2.0 * uniform());
  const double phi = uniform(0.0, 2.0 * kPi);
  const double global = uniform(0.0, 2.0 * kPi);
  StateVector psi(2);
  psi << std::cos(0.5 * theta), std::polar(std::sin(0.5 * theta), phi);
  return std::polar(1.0, global) * psi;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : kSuites) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

SuiteReport run_suite(const std::string& suite, std::size_t trials,
                      std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const auto* def = std::find_if(std::begin(kSuites), std::end(kSuites),
                                 [&](const SuiteDef& s) { return suite == s.name; });
  if (def == std::end(kSuites)) {
    throw std::invalid_argument("unknown verification suite '" + suite + "'");
  }
  SuiteReport report;
  report.suite = def->name;
  report.trials = trials;
  report.tolerance = def->tolerance;
  report.errors.reserve(trials);
  for (std::size_t k = 0; k < trials; ++k) {
    TrialRng rng(seed, k);
    double err = 0.0;
    try {
      err = def->trial(rng);
    } catch (const std::exception&) {
      err = std::numeric_limits<double>::infinity();
    }
    if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
    report.errors.push_back(err);
    report.max_error = std::max(report.max_error, err);
  }
  report.pass = report.max_error < report.tolerance;
  return report;
}

std::string format_report(const SuiteReport& report) {
  return fmt::format("{}: trials={} max_error={:.3e} tolerance={:.0e} {}",
                     report.suite, report.trials, report.max_error,
                     report.tolerance, report.pass ? "PASS" : "FAIL");
}

std::string format_errors_csv(const std::vector<SuiteReport>& reports) {
  std::string out = "suite,trial,error\n";
  for (const auto& r : reports) {
    for (std::size_t k = 0; k < r.errors.size(); ++k) {
      out += fmt::format("{},{},{:.17g}\n", r.suite, k, r.errors[k]);
    }
  }
  return out;
}

}  // namespace tcorr::verify
