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

#include "tcorr/protocol.hpp"
#include "tcorr/qcore.hpp"

// Brute-force Heisenberg-picture evaluation of correlation functions. This
// path is the reference the ancilla protocol is checked against, so it uses
// nothing from the protocol circuit beyond CorrelationSpec.
namespace tcorr::oracle {

/// σ_axis(t) = U†(t;0) σ_axis U(t;0).
Operator heisenberg_op(PauliAxis axis, double t, const Hamiltonian& h);

/// <σ_γ(t_{n-1}) ··· σ_β(t_1) σ_α(0)> with the latest operator leftmost.
Complex correlation_direct(const CorrelationSpec& spec, const Hamiltonian& h,
                           const StateVector& psi);
Complex correlation_direct(const CorrelationSpec& spec, const Hamiltonian& h,
                           const DensityMatrix& rho);

}  // namespace tcorr::oracle
