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

#include <array>
#include <complex>
#include <cstddef>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace tcorr {

using Complex = std::complex<double>;

// Dense operators and states. Dimensions are restricted to 2 (one spin) and
// 4 (ancilla ⊗ system, ancilla first, basis |00>,|01>,|10>,|11>).
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

enum class PauliAxis { X, Y, Z };

char axis_char(PauliAxis axis);
/// Accepts "x", "y", "z" in either case.
PauliAxis parse_axis(std::string_view text);

/// H = h0·I + hx·σx + hy·σy + hz·σz, coefficients in rad/s (ħ = 1).
struct ConstHamiltonian {
  double h0 = 0.0;
  double hx = 0.0;
  double hy = 0.0;
  double hz = 0.0;

  Operator matrix() const;
  bool is_finite() const;
};

/// A(t) = amplitude · exp(-rate · t). rate = 0 gives a constant term.
struct ExpDecay {
  double amplitude = 0.0;  // rad/s
  double rate = 0.0;       // 1/s
};

/// Piecewise-linear envelope through (time_s, rad/s) samples.
struct Sampled {
  std::vector<std::pair<double, double>> grid;
};

using Envelope = std::variant<ExpDecay, Sampled>;

/// Throws std::domain_error when t lies outside a sampled grid.
double envelope_value(const Envelope& env, double t);
/// Validates finiteness and (for sampled envelopes) a strictly increasing grid.
void validate_envelope(const Envelope& env);

struct TimeDepTerm {
  PauliAxis axis = PauliAxis::Z;
  Envelope envelope;
};

/// H(t) = Σ envelope_k(t) σ_{axis_k}.
struct TimeDepHamiltonian {
  std::vector<TimeDepTerm> terms;
  // Midpoint sub-steps per propagation interval.
  std::size_t steps = 1024;

  /// Coefficient vector (hx, hy, hz) at time t.
  std::array<double, 3> field_at(double t) const;
};

using Hamiltonian = std::variant<ConstHamiltonian, TimeDepHamiltonian>;

Operator identity(int dim);
Operator pauli(PauliAxis axis);

/// R_n(θ) = exp(-i θ σ_n / 2).
Operator rotation(PauliAxis axis, double angle);

/// exp(-i (h0 I + a·σ) dt) in closed form.
Operator su2_exp(double h0, const std::array<double, 3>& a, double dt);

/// exp(-i H dt); dt may be negative.
Operator propagator_const(const ConstHamiltonian& h, double dt);

/// Time-ordered product of midpoint propagators over `steps` uniform
/// sub-intervals of [t0, t1]. Rejects t1 < t0.
Operator propagator_timedep(const TimeDepHamiltonian& h, double t0, double t1,
                            std::size_t steps);

/// U(t1; t0) for either Hamiltonian kind (time-dependent uses h.steps).
Operator propagator(const Hamiltonian& h, double t0, double t1);

Operator tensor(const Operator& a, const Operator& b);
StateVector tensor(const StateVector& a, const StateVector& b);
Operator dagger(const Operator& a);
StateVector apply(const Operator& a, const StateVector& psi);
Complex expect(const Operator& a, const StateVector& psi);
Complex expect(const Operator& a, const DensityMatrix& rho);

DensityMatrix projector(const StateVector& psi);
/// |0>, |1>, |+> etc. live here for convenience.
StateVector basis_state(int dim, int index);
StateVector plus_state();

double max_abs(const Operator& a);
double max_abs_diff(const Operator& a, const Operator& b);
bool is_unitary(const Operator& u, double tol = 1e-12);
bool is_hermitian(const Operator& a, double tol = 1e-12);

/// Throws std::invalid_argument unless dim ∈ {2,4} and ‖ψ‖ = 1 within 1e-10.
void require_state(const StateVector& psi, int dim);
/// Hermitian, unit trace, eigenvalues ≥ -1e-10.
void require_density(const DensityMatrix& rho, int dim);

/// Removes the global phase of `a` relative to `b` using the first entry of
/// largest magnitude in `b`, then returns the max entry deviation.
double phase_normalized_diff(const Operator& a, const Operator& b);

/// Eigenstates of a single-spin Hamiltonian with Gibbs weights ∝ exp(-β E).
/// states[0] is the ground state. Degenerate spectra yield |0>, |1>.
struct ThermalBasis {
  std::array<StateVector, 2> states;
  std::array<double, 2> energies{};
  std::array<double, 2> weights{};
};

ThermalBasis thermal_basis(const ConstHamiltonian& h, double beta);
DensityMatrix gibbs_state(const ConstHamiltonian& h, double beta);

}  // namespace tcorr
