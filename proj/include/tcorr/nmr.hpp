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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tcorr/protocol.hpp"
#include "tcorr/qcore.hpp"

// Two-spin NMR realization of the ancilla protocol. Nucleus 1 (13C) holds the
// ancilla, nucleus 2 (1H) the system.
namespace tcorr::nmr {

/// Chemical shifts and reference frequencies in Hz. The relaxation times are
/// carried for documentation only and never enter the dynamics.
struct MoleculeParams {
  double nu1 = 0.0;
  double nu2 = 0.0;
  double nu1_ref = 0.0;
  double nu2_ref = 0.0;
  double j12 = 215.0;
  double t1_relax = 0.0;
  double t2_relax = 0.0;

  /// Offsets ν1 = ν1°, ν2 - ν2° = `delta_nu_hz`, so H0 = -π Δν σz.
  static MoleculeParams with_system_offset(double delta_nu_hz,
                                           double j12 = 215.0);
};

/// -π(ν1-ν1°) σz⊗I - π(ν2-ν2°) I⊗σz + (πJ/2) σz⊗σz, all diagonal.
struct TwoSpinHamiltonian {
  double z1 = 0.0;   // rad/s
  double z2 = 0.0;   // rad/s
  double jzz = 0.0;  // rad/s

  Operator matrix() const;
  Operator propagator(double dt) const;
  /// The system-nucleus part -π(ν2-ν2°) σz as a single-spin Hamiltonian.
  ConstHamiltonian system() const { return {0.0, 0.0, 0.0, z2}; }
};

TwoSpinHamiltonian internal_hamiltonian(const MoleculeParams& p);

/// Instantaneous rotation of one nucleus about x or y.
struct HardPulse {
  int nucleus = 2;
  PauliAxis axis = PauliAxis::X;
  double angle = 0.0;
};

/// Free evolution. With coupling_on the full internal Hamiltonian acts.
/// With decouple_system_free the J term and the ancilla offset are removed
/// (ideal broadband decoupling) and only the system evolves; if drive_start
/// is set, the system additionally feels the RF envelope from drive_start to
/// drive_start + duration.
struct Delay {
  double duration = 0.0;
  bool coupling_on = false;
  bool decouple_system_free = true;
  std::optional<double> drive_start;
};

/// Virtual z rotation; `expand_z_rotations` rewrites it with x/y pulses.
struct ZRotation {
  int nucleus = 2;
  double angle = 0.0;
};

using PulseEvent = std::variant<HardPulse, Delay, ZRotation>;

/// Events in time order (first event acts first).
struct PulseSequence {
  std::vector<PulseEvent> events;

  PulseSequence& then(const PulseEvent& e) {
    events.push_back(e);
    return *this;
  }
  PulseSequence& then(const PulseSequence& other);
  bool has_z_rotation() const;
};

/// Throws std::invalid_argument for malformed events.
void validate_event(const PulseEvent& e);

/// Controlled-S gate as pulses and a 1/(2J) coupling window. Chemical-shift
/// evolution accrued during that window is undone with trailing z rotations,
/// so the net propagator does not depend on the offsets.
PulseSequence compile_controlled(PauliAxis axis, const MoleculeParams& p,
                                 bool xy_only = false);

/// Rz(θ) = Ry(π/2) Rx(-θ) Ry(-π/2) for every ZRotation.
PulseSequence expand_z_rotations(const PulseSequence& seq);

/// A decoupled delay; with `invert`, bracketed by system π_x pulses so a σz
/// system Hamiltonian evolves with reversed sign.
PulseSequence refocused_delay(double duration, bool invert);

/// Net 4×4 propagator of a sequence.
Operator sequence_propagator(const PulseSequence& seq, const MoleculeParams& p,
                             const TimeDepHamiltonian* drive = nullptr);

DensityMatrix simulate_sequence(const PulseSequence& seq,
                                const MoleculeParams& p,
                                const DensityMatrix& rho_in,
                                const TimeDepHamiltonian* drive = nullptr);

/// The full sequence used by run_nmr_experiment, exposed for inspection.
PulseSequence build_experiment_sequence(const CorrelationSpec& spec,
                                        const MoleculeParams& p,
                                        bool time_dependent);

Complex run_nmr_experiment(
    const CorrelationSpec& spec, const MoleculeParams& p,
    const StateVector& psi_sys,
    const std::optional<TimeDepHamiltonian>& timedep = std::nullopt);

/// One line per event: PULSE / DELAY / ZROT.
std::string format_sequence(const PulseSequence& seq);

}  // namespace tcorr::nmr
