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

#include <vector>

#include "tcorr/qcore.hpp"

namespace tcorr {

struct TimedPauli {
  PauliAxis axis = PauliAxis::Z;
  double time = 0.0;  // seconds
};

/// Operators of f(t1,...,t_{n-1}) listed innermost-first: entry 0 is
/// σ_α(0), the last entry is the latest operator. The printed product
/// σ_γ(t_{n-1})···σ_β(t_1)σ_α(0) reads this list in reverse.
struct CorrelationSpec {
  std::vector<TimedPauli> ops;

  std::size_t order() const { return ops.size(); }
};

/// Throws std::invalid_argument on an empty list, ops[0].time != 0,
/// non-finite times, or (when `time_dependent`) decreasing times.
void validate_spec(const CorrelationSpec& spec, bool time_dependent);

struct ProtocolResult {
  Complex f;
  double sx = 0.0;  // <σx ⊗ I> on the final state
  double sy = 0.0;  // <σy ⊗ I>
  int r = 0;        // number of σy in the correlator
  int l = 0;        // number of σz
};

/// S_x = σx, S_y = -iσy, S_z = iσz.
Operator s_operator(PauliAxis axis);

/// |1><1| ⊗ S_axis + |0><0| ⊗ I.
Operator controlled_s(PauliAxis axis);

/// i^r (-i)^l
Complex phase_correction(int r, int l);

ProtocolResult run_protocol(const CorrelationSpec& spec, const Hamiltonian& h,
                            const StateVector& psi);
ProtocolResult run_protocol(const CorrelationSpec& spec, const Hamiltonian& h,
                            const DensityMatrix& rho);

/// Gibbs-weighted combination of run_protocol over the eigenstates of h.
Complex run_protocol_thermal(const CorrelationSpec& spec,
                             const ConstHamiltonian& h, double beta);

}  // namespace tcorr
