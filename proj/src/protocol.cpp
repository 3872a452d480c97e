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

#include "tcorr/protocol.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tcorr {

void validate_spec(const CorrelationSpec& spec, bool time_dependent) {
  if (spec.ops.empty()) {
    throw std::invalid_argument("correlation needs at least one operator");
  }
  if (spec.ops.front().time != 0.0) {
    throw std::invalid_argument("the first operator must act at time 0");
  }
  for (std::size_t k = 0; k < spec.ops.size(); ++k) {
    if (!std::isfinite(spec.ops[k].time)) {
      throw std::invalid_argument("operator time " + std::to_string(k) +
                                  " is not finite");
    }
    if (time_dependent && k > 0 && spec.ops[k].time < spec.ops[k - 1].time) {
      throw std::invalid_argument(
          "time-dependent Hamiltonians need non-decreasing operator times");
    }
  }
}

Operator s_operator(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X:
      return pauli(PauliAxis::X);
    case PauliAxis::Y:
      return -kI * pauli(PauliAxis::Y);
    case PauliAxis::Z:
      return kI * pauli(PauliAxis::Z);
  }
  return identity(2);
}

Operator controlled_s(PauliAxis axis) {
  Operator u = Operator::Zero(4, 4);
  u.topLeftCorner(2, 2) = identity(2);
  u.bottomRightCorner(2, 2) = s_operator(axis);
  return u;
}

Complex phase_correction(int r, int l) {
  if (r < 0 || l < 0) {
    throw std::invalid_argument("occurrence counts must be non-negative");
  }
  // i^r (-i)^l = i^(r - l) = i^((r + 3l) mod 4)
  static constexpr Complex kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPowers[(r + 3 * l) % 4];
}

namespace {

bool is_time_dependent(const Hamiltonian& h) {
  return std::holds_alternative<TimeDepHamiltonian>(h);
}

// Gate/evolution schedule shared by the pure and mixed paths: calls
// `gate(controlled_s)` and `evolve(I ⊗ U)` in circuit order.
template <typename Gate, typename Evolve>
void walk_circuit(const CorrelationSpec& spec, const Hamiltonian& h, Gate gate,
                  Evolve evolve) {
  const auto n = spec.ops.size();
  const Operator id2 = identity(2);
  for (std::size_t k = 0; k < n; ++k) {
    gate(controlled_s(spec.ops[k].axis));
    if (k + 1 < n) {
      evolve(tensor(id2, propagator(h, spec.ops[k].time,
                                    spec.ops[k + 1].time)));
    }
  }
}

ProtocolResult finish(const CorrelationSpec& spec, double sx, double sy) {
  ProtocolResult out;
  for (const auto& op : spec.ops) {
    if (op.axis == PauliAxis::Y) ++out.r;
    if (op.axis == PauliAxis::Z) ++out.l;
  }
  out.sx = sx;
  out.sy = sy;
  out.f = phase_correction(out.r, out.l) * Complex(sx, sy);
  return out;
}

const Operator& ancilla_x() {
  static const Operator m = tensor(pauli(PauliAxis::X), identity(2));
  return m;
}

const Operator& ancilla_y() {
  static const Operator m = tensor(pauli(PauliAxis::Y), identity(2));
  return m;
}

}  // namespace

ProtocolResult run_protocol(const CorrelationSpec& spec, const Hamiltonian& h,
                            const StateVector& psi) {
  validate_spec(spec, is_time_dependent(h));
  require_state(psi, 2);
  StateVector state = tensor(plus_state(), psi);
  walk_circuit(
      spec, h, [&](const Operator& g) { state = g * state; },
      [&](const Operator& u) { state = u * state; });
  return finish(spec, expect(ancilla_x(), state).real(),
                expect(ancilla_y(), state).real());
}

ProtocolResult run_protocol(const CorrelationSpec& spec, const Hamiltonian& h,
                            const DensityMatrix& rho) {
  validate_spec(spec, is_time_dependent(h));
  require_density(rho, 2);
  DensityMatrix state = tensor(projector(plus_state()), rho);
  walk_circuit(
      spec, h,
      [&](const Operator& g) { state = g * state * g.adjoint(); },
      [&](const Operator& u) { state = u * state * u.adjoint(); });
  return finish(spec, expect(ancilla_x(), state).real(),
                expect(ancilla_y(), state).real());
}

Complex run_protocol_thermal(const CorrelationSpec& spec,
                             const ConstHamiltonian& h, double beta) {
  const auto tb = thermal_basis(h, beta);
  Complex f{0.0, 0.0};
  for (int k = 0; k < 2; ++k) {
    if (tb.weights[k] == 0.0) continue;
    f += tb.weights[k] * run_protocol(spec, h, tb.states[k]).f;
  }
  return f;
}

}  // namespace tcorr
