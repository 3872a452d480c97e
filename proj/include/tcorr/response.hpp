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

#include <stdexcept>
#include <vector>

#include "tcorr/qcore.hpp"

namespace tcorr::response {

/// Spin-1/2 in a static field along z, H0 = -γ B σz, probed by a weak field
/// of amplitude B'0 along α. Units: γB in rad/s, β in s·rad (ħ = 1).
struct ResponseParams {
  double gamma = 1.0;
  double field = 100.0 * kPi;
  double bp0 = 1.0;
  double beta = 0.0;
  // Adiabatic switch-on rate for the χ(ω) integral.
  double eta = 50.0;
  std::vector<double> omega;

  ConstHamiltonian unperturbed() const { return {0.0, 0.0, 0.0, -gamma * field}; }
  void validate() const;
};

/// F(t) sampled on t_start + k·dt, linearly interpolated.
struct PerturbationEnvelope {
  double t_start = 0.0;
  double dt = 1e-5;
  std::vector<double> samples;

  double at(double t) const;
  static PerturbationEnvelope constant(double value, double t_end,
                                       std::size_t n = 2);
};

/// Raised when step halving cannot meet the quadrature tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// φ_{α,β}(t) = <[γB'0 σα, γ σβ(t)]>/i over the Gibbs state of H0.
double response_function(PauliAxis alpha, PauliAxis beta_axis, double t,
                         const ResponseParams& params);

/// The same φ, assembled from ancilla-protocol correlations measured on the
/// two H0 eigenstates and Gibbs-weighted.
double response_from_protocol(PauliAxis alpha, PauliAxis beta_axis, double t,
                              const ResponseParams& params);

/// χ(ω) = ∫_0^T φ(τ) e^{-iωτ} e^{-ητ} dτ, composite Simpson with step
/// halving (relative change < 1e-8, at most 2^20 points), e^{-ηT} < 1e-10.
Complex susceptibility(PauliAxis alpha, PauliAxis beta_axis, double omega,
                       const ResponseParams& params);

/// χ over params.omega, sharing φ samples across frequencies.
std::vector<Complex> susceptibility_sweep(PauliAxis alpha, PauliAxis beta_axis,
                                          const ResponseParams& params);

/// μ_β(t) = γ<σβ> + χ_{α,β}(ω) e^{-iωt}.
Complex corrected_moment(PauliAxis alpha, PauliAxis beta_axis, double omega,
                         double t, const ResponseParams& params);

/// ∫_0^t dt1 ∫_0^t1 dt2 <[B(t), [A(t1), A(t2)]]> F(t1) F(t2) by nested
/// trapezoid rules on `grid_steps` uniform intervals. The expectation is over
/// the Gibbs state of H0.
double second_order_correction(PauliAxis b_axis, PauliAxis a_axis,
                               const PerturbationEnvelope& f, double t,
                               const ResponseParams& params,
                               std::size_t grid_steps);

/// As above with an explicit expectation state.
double second_order_correction(PauliAxis b_axis, PauliAxis a_axis,
                               const PerturbationEnvelope& f, double t,
                               const ResponseParams& params,
                               std::size_t grid_steps,
                               const DensityMatrix& rho);

}  // namespace tcorr::response
