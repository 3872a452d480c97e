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

#include "tcorr/qcore.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace tcorr {

char axis_char(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X:
      return 'x';
    case PauliAxis::Y:
      return 'y';
    case PauliAxis::Z:
      return 'z';
  }
  return '?';
}

PauliAxis parse_axis(std::string_view text) {
  if (text.size() == 1) {
    switch (std::tolower(static_cast<unsigned char>(text[0]))) {
      case 'x':
        return PauliAxis::X;
      case 'y':
        return PauliAxis::Y;
      case 'z':
        return PauliAxis::Z;
      default:
        break;
    }
  }
  throw std::invalid_argument("unknown Pauli axis '" + std::string(text) + "'");
}

Operator ConstHamiltonian::matrix() const {
  return h0 * identity(2) + hx * pauli(PauliAxis::X) +
         hy * pauli(PauliAxis::Y) + hz * pauli(PauliAxis::Z);
}

bool ConstHamiltonian::is_finite() const {
  return std::isfinite(h0) && std::isfinite(hx) && std::isfinite(hy) &&
         std::isfinite(hz);
}

double envelope_value(const Envelope& env, double t) {
  if (const auto* e = std::get_if<ExpDecay>(&env)) {
    return e->amplitude * std::exp(-e->rate * t);
  }
  const auto& grid = std::get<Sampled>(env).grid;
  if (grid.empty() || t < grid.front().first || t > grid.back().first) {
    throw std::domain_error("time " + std::to_string(t) +
                            " s lies outside the sampled envelope");
  }
  if (grid.size() == 1) return grid.front().second;
  auto hi = std::upper_bound(
      grid.begin(), grid.end(), t,
      [](double v, const std::pair<double, double>& p) { return v < p.first; });
  if (hi == grid.end()) return grid.back().second;
  auto lo = std::prev(hi);
  const double w = (t - lo->first) / (hi->first - lo->first);
  return (1.0 - w) * lo->second + w * hi->second;
}

void validate_envelope(const Envelope& env) {
  if (const auto* e = std::get_if<ExpDecay>(&env)) {
    if (!std::isfinite(e->amplitude) || !std::isfinite(e->rate)) {
      throw std::invalid_argument("exponential envelope must be finite");
    }
    return;
  }
  const auto& grid = std::get<Sampled>(env).grid;
  if (grid.empty()) throw std::invalid_argument("sampled envelope is empty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!std::isfinite(grid[k].first) || !std::isfinite(grid[k].second)) {
      throw std::invalid_argument("sampled envelope must be finite");
    }
    if (k > 0 && !(grid[k].first > grid[k - 1].first)) {
      throw std::invalid_argument(
          "sampled envelope grid must be strictly increasing in time");
    }
  }
}

std::array<double, 3> TimeDepHamiltonian::field_at(double t) const {
  std::array<double, 3> a{0.0, 0.0, 0.0};
  for (const auto& term : terms) {
    a[static_cast<int>(term.axis)] += envelope_value(term.envelope, t);
  }
  return a;
}

Operator identity(int dim) { return Operator::Identity(dim, dim); }

Operator pauli(PauliAxis axis) {
  Operator m = Operator::Zero(2, 2);
  switch (axis) {
    case PauliAxis::X:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case PauliAxis::Y:
      m(0, 1) = -kI;
      m(1, 0) = kI;
      break;
    case PauliAxis::Z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
  }
  return m;
}

Operator su2_exp(double h0, const std::array<double, 3>& a, double dt) {
  const double norm = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  const double phi = norm * dt;
  const double c = std::cos(phi);
  // sin(|a| dt)/|a|, continuous at |a| = 0
  const double s_over = norm > 0.0 ? std::sin(phi) / norm : dt;
  Operator u(2, 2);
  u(0, 0) = Complex(c, -s_over * a[2]);
  u(1, 1) = Complex(c, s_over * a[2]);
  // -i s (ax σx + ay σy): off-diagonals -i s (ax ∓ i ay)
  u(0, 1) = Complex(-s_over * a[1], -s_over * a[0]);
  u(1, 0) = Complex(s_over * a[1], -s_over * a[0]);
  if (h0 != 0.0) u *= std::exp(Complex(0.0, -h0 * dt));
  return u;
}

Operator rotation(PauliAxis axis, double angle) {
  std::array<double, 3> a{0.0, 0.0, 0.0};
  a[static_cast<int>(axis)] = 0.5;
  return su2_exp(0.0, a, angle);
}

Operator propagator_const(const ConstHamiltonian& h, double dt) {
  if (!std::isfinite(dt)) throw std::invalid_argument("dt must be finite");
  return su2_exp(h.h0, {h.hx, h.hy, h.hz}, dt);
}

Operator propagator_timedep(const TimeDepHamiltonian& h, double t0, double t1,
                            std::size_t steps) {
  if (!(t1 >= t0)) {
    throw std::invalid_argument(
        "time-dependent evolution requires t1 >= t0");
  }
  if (steps == 0) throw std::invalid_argument("steps must be >= 1");
  Operator u = identity(2);
  if (t1 == t0) return u;
  const double dt = (t1 - t0) / static_cast<double>(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const double mid = t0 + (static_cast<double>(k) + 0.5) * dt;
    u = su2_exp(0.0, h.field_at(mid), dt) * u;
  }
  return u;
}

Operator propagator(const Hamiltonian& h, double t0, double t1) {
  if (const auto* c = std::get_if<ConstHamiltonian>(&h)) {
    return propagator_const(*c, t1 - t0);
  }
  const auto& td = std::get<TimeDepHamiltonian>(h);
  return propagator_timedep(td, t0, t1, td.steps);
}

namespace {

void require_square(const Operator& a, const char* what) {
  if (a.rows() != a.cols() || (a.rows() != 2 && a.rows() != 4)) {
    throw std::invalid_argument(std::string(what) +
                                ": operator must be 2x2 or 4x4");
  }
}

}  // namespace

Operator tensor(const Operator& a, const Operator& b) {
  require_square(a, "tensor");
  require_square(b, "tensor");
  if (a.rows() * b.rows() > 4) {
    throw std::invalid_argument("tensor: result dimension exceeds 4");
  }
  return Eigen::kroneckerProduct(a, b).eval();
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  if (a.size() * b.size() > 4) {
    throw std::invalid_argument("tensor: result dimension exceeds 4");
  }
  return Eigen::kroneckerProduct(a, b).eval();
}

Operator dagger(const Operator& a) { return a.adjoint(); }

StateVector apply(const Operator& a, const StateVector& psi) {
  require_square(a, "apply");
  if (a.cols() != psi.size()) {
    throw std::invalid_argument("apply: dimension mismatch");
  }
  return a * psi;
}

Complex expect(const Operator& a, const StateVector& psi) {
  require_square(a, "expect");
  if (a.cols() != psi.size()) {
    throw std::invalid_argument("expect: dimension mismatch");
  }
  return psi.dot(a * psi);
}

Complex expect(const Operator& a, const DensityMatrix& rho) {
  require_square(a, "expect");
  if (rho.rows() != a.rows() || rho.cols() != a.cols()) {
    throw std::invalid_argument("expect: dimension mismatch");
  }
  return (a * rho).trace();
}

DensityMatrix projector(const StateVector& psi) { return psi * psi.adjoint(); }

StateVector basis_state(int dim, int index) {
  StateVector v = StateVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

StateVector plus_state() {
  StateVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

double max_abs(const Operator& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double max_abs_diff(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  }
  return max_abs(a - b);
}

bool is_unitary(const Operator& u, double tol) {
  return u.rows() == u.cols() &&
         max_abs(u.adjoint() * u - identity(static_cast<int>(u.rows()))) < tol;
}

bool is_hermitian(const Operator& a, double tol) {
  return a.rows() == a.cols() && max_abs(a - a.adjoint()) < tol;
}

void require_state(const StateVector& psi, int dim) {
  if (psi.size() != dim) {
    throw std::invalid_argument("state has dimension " +
                                std::to_string(psi.size()) + ", expected " +
                                std::to_string(dim));
  }
  if (!psi.allFinite()) throw std::invalid_argument("state is not finite");
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("state is not normalized");
  }
}

void require_density(const DensityMatrix& rho, int dim) {
  if (rho.rows() != dim || rho.cols() != dim) {
    throw std::invalid_argument("density matrix has wrong dimension");
  }
  if (!rho.allFinite()) {
    throw std::invalid_argument("density matrix is not finite");
  }
  if (!is_hermitian(rho, 1e-10)) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-10) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("density matrix is not positive");
  }
}

double phase_normalized_diff(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("phase_normalized_diff: dimension mismatch");
  }
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  const double largest = b.cwiseAbs().maxCoeff(&row, &col);
  // maxCoeff returns the first maximum in column-major order; scan row-major
  // so "first" means reading order.
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    bool found = false;
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      if (std::abs(b(i, j)) >= largest * (1.0 - 1e-12)) {
        row = i;
        col = j;
        found = true;
        break;
      }
    }
    if (found) break;
  }
  const Complex ref = a(row, col);
  if (std::abs(ref) == 0.0) return max_abs(a) + max_abs(b);
  const Complex phase = (b(row, col) / ref) / std::abs(b(row, col) / ref);
  return max_abs(phase * a - b);
}

ThermalBasis thermal_basis(const ConstHamiltonian& h, double beta) {
  if (!std::isfinite(beta)) {
    throw std::invalid_argument("inverse temperature must be finite");
  }
  if (!h.is_finite()) throw std::invalid_argument("Hamiltonian not finite");
  ThermalBasis out;
  const double norm = std::sqrt(h.hx * h.hx + h.hy * h.hy + h.hz * h.hz);
  if (norm == 0.0) {
    out.states = {basis_state(2, 0), basis_state(2, 1)};
    out.energies = {h.h0, h.h0};
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix());
    out.states = {es.eigenvectors().col(0), es.eigenvectors().col(1)};
    out.energies = {es.eigenvalues()(0), es.eigenvalues()(1)};
  }
  // Shift by the ground energy so large β cannot overflow.
  const double x = -beta * (out.energies[1] - out.energies[0]);
  if (x <= 0.0) {
    const double w1 = std::exp(x);
    out.weights = {1.0 / (1.0 + w1), w1 / (1.0 + w1)};
  } else {
    const double w0 = std::exp(-x);
    out.weights = {w0 / (1.0 + w0), 1.0 / (1.0 + w0)};
  }
  return out;
}

DensityMatrix gibbs_state(const ConstHamiltonian& h, double beta) {
  const auto tb = thermal_basis(h, beta);
  return tb.weights[0] * projector(tb.states[0]) +
         tb.weights[1] * projector(tb.states[1]);
}

}  // namespace tcorr
