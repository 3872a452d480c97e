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

#include "tcorr/oracle.hpp"

#include <stdexcept>

namespace tcorr::oracle {

Operator heisenberg_op(PauliAxis axis, double t, const Hamiltonian& h) {
  if (t == 0.0) return pauli(axis);
  if (std::holds_alternative<TimeDepHamiltonian>(h) && t < 0.0) {
    throw std::invalid_argument(
        "time-dependent Heisenberg operators need t >= 0");
  }
  const Operator u = propagator(h, 0.0, t);
  return u.adjoint() * pauli(axis) * u;
}

namespace {

Operator ordered_product(const CorrelationSpec& spec, const Hamiltonian& h) {
  validate_spec(spec, std::holds_alternative<TimeDepHamiltonian>(h));
  Operator product = identity(2);
  for (const auto& op : spec.ops) {
    product = heisenberg_op(op.axis, op.time, h) * product;
  }
  return product;
}

}  // namespace

Complex correlation_direct(const CorrelationSpec& spec, const Hamiltonian& h,
                           const StateVector& psi) {
  require_state(psi, 2);
  return expect(ordered_product(spec, h), psi);
}

Complex correlation_direct(const CorrelationSpec& spec, const Hamiltonian& h,
                           const DensityMatrix& rho) {
  require_density(rho, 2);
  return expect(ordered_product(spec, h), rho);
}

}  // namespace tcorr::oracle
