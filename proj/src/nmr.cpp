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

#include "tcorr/nmr.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace tcorr::nmr {

MoleculeParams MoleculeParams::with_system_offset(double delta_nu_hz,
                                                  double j12) {
  MoleculeParams p;
  p.nu2 = delta_nu_hz;
  p.j12 = j12;
  return p;
}

Operator TwoSpinHamiltonian::matrix() const {
  const Operator z = pauli(PauliAxis::Z);
  const Operator id = identity(2);
  return z1 * tensor(z, id) + z2 * tensor(id, z) + jzz * tensor(z, z);
}

Operator TwoSpinHamiltonian::propagator(double dt) const {
  Operator u = Operator::Zero(4, 4);
  for (int a = 0; a < 2; ++a) {
    for (int s = 0; s < 2; ++s) {
      const double za = a == 0 ? 1.0 : -1.0;
      const double zs = s == 0 ? 1.0 : -1.0;
      const double energy = z1 * za + z2 * zs + jzz * za * zs;
      u(2 * a + s, 2 * a + s) = std::exp(Complex(0.0, -energy * dt));
    }
  }
  return u;
}

TwoSpinHamiltonian internal_hamiltonian(const MoleculeParams& p) {
  return {-kPi * (p.nu1 - p.nu1_ref), -kPi * (p.nu2 - p.nu2_ref),
          0.5 * kPi * p.j12};
}

PulseSequence& PulseSequence::then(const PulseSequence& other) {
  events.insert(events.end(), other.events.begin(), other.events.end());
  return *this;
}

bool PulseSequence::has_z_rotation() const {
  for (const auto& e : events) {
    if (std::holds_alternative<ZRotation>(e)) return true;
  }
  return false;
}

void validate_event(const PulseEvent& e) {
  auto check_nucleus = [](int n) {
    if (n != 1 && n != 2) throw std::invalid_argument("nucleus must be 1 or 2");
  };
  if (const auto* pulse = std::get_if<HardPulse>(&e)) {
    check_nucleus(pulse->nucleus);
    if (pulse->axis == PauliAxis::Z) {
      throw std::invalid_argument("hard pulses rotate about x or y only");
    }
    if (!std::isfinite(pulse->angle)) {
      throw std::invalid_argument("pulse angle must be finite");
    }
  } else if (const auto* delay = std::get_if<Delay>(&e)) {
    if (!(delay->duration >= 0.0) || !std::isfinite(delay->duration)) {
      throw std::invalid_argument("delay duration must be finite and >= 0");
    }
    if (delay->coupling_on == delay->decouple_system_free) {
      throw std::invalid_argument(
          "a delay is either a coupling window or a decoupled window");
    }
    if (delay->drive_start && delay->coupling_on) {
      throw std::invalid_argument("RF drive is only applied while decoupled");
    }
  } else {
    const auto& z = std::get<ZRotation>(e);
    check_nucleus(z.nucleus);
    if (!std::isfinite(z.angle)) {
      throw std::invalid_argument("z rotation angle must be finite");
    }
  }
}

PulseSequence compile_controlled(PauliAxis axis, const MoleculeParams& p,
                                 bool xy_only) {
  if (p.j12 == 0.0 || !std::isfinite(p.j12)) {
    throw std::invalid_argument("controlled gates need a finite nonzero J12");
  }
  const double window = 1.0 / (2.0 * p.j12);
  const TwoSpinHamiltonian h = internal_hamiltonian(p);

  PulseSequence coupling;
  coupling.then(Delay{window, true, false, std::nullopt});
  if (h.z1 != 0.0) coupling.then(ZRotation{1, -2.0 * h.z1 * window});
  if (h.z2 != 0.0) coupling.then(ZRotation{2, -2.0 * h.z2 * window});

  constexpr double kHalfPi = 0.5 * kPi;
  PulseSequence seq;
  switch (axis) {
    case PauliAxis::Z:
      // U(1/2J) R2z(-π/2)
      seq.then(ZRotation{2, -kHalfPi}).then(coupling);
      break;
    case PauliAxis::X:
      // √i R1z(π/2) R2z(-π/2) R2x(π/2) U(1/2J) R2y(π/2)
      seq.then(HardPulse{2, PauliAxis::Y, kHalfPi})
          .then(coupling)
          .then(HardPulse{2, PauliAxis::X, kHalfPi})
          .then(ZRotation{2, -kHalfPi})
          .then(ZRotation{1, kHalfPi});
      break;
    case PauliAxis::Y:
      // R2x(π/2) U(1/2J) R2x(-π/2) R2y(π/2)
      seq.then(HardPulse{2, PauliAxis::Y, kHalfPi})
          .then(HardPulse{2, PauliAxis::X, -kHalfPi})
          .then(coupling)
          .then(HardPulse{2, PauliAxis::X, kHalfPi});
      break;
  }
  return xy_only ? expand_z_rotations(seq) : seq;
}

PulseSequence expand_z_rotations(const PulseSequence& seq) {
  constexpr double kHalfPi = 0.5 * kPi;
  PulseSequence out;
  for (const auto& e : seq.events) {
    if (const auto* z = std::get_if<ZRotation>(&e)) {
      out.then(HardPulse{z->nucleus, PauliAxis::Y, -kHalfPi})
          .then(HardPulse{z->nucleus, PauliAxis::X, -z->angle})
          .then(HardPulse{z->nucleus, PauliAxis::Y, kHalfPi});
    } else {
      out.then(e);
    }
  }
  return out;
}

PulseSequence refocused_delay(double duration, bool invert) {
  if (!(duration >= 0.0)) {
    throw std::invalid_argument("delay duration must be >= 0");
  }
  PulseSequence seq;
  const Delay free{duration, false, true, std::nullopt};
  if (invert) {
    seq.then(HardPulse{2, PauliAxis::X, kPi})
        .then(free)
        .then(HardPulse{2, PauliAxis::X, kPi});
  } else {
    seq.then(free);
  }
  return seq;
}

namespace {

Operator on_nucleus(int nucleus, const Operator& u) {
  return nucleus == 1 ? tensor(u, identity(2)) : tensor(identity(2), u);
}

Operator event_propagator(const PulseEvent& e, const TwoSpinHamiltonian& h,
                          const TimeDepHamiltonian* drive) {
  validate_event(e);
  if (const auto* pulse = std::get_if<HardPulse>(&e)) {
    return on_nucleus(pulse->nucleus, rotation(pulse->axis, pulse->angle));
  }
  if (const auto* z = std::get_if<ZRotation>(&e)) {
    return on_nucleus(z->nucleus, rotation(PauliAxis::Z, z->angle));
  }
  const auto& delay = std::get<Delay>(e);
  if (delay.coupling_on) return h.propagator(delay.duration);
  if (!delay.drive_start) {
    return on_nucleus(2, propagator_const(h.system(), delay.duration));
  }
  if (drive == nullptr) {
    throw std::invalid_argument("driven delay without an RF envelope");
  }
  TimeDepHamiltonian driven = *drive;
  if (h.z2 != 0.0) {
    driven.terms.push_back({PauliAxis::Z, ExpDecay{h.z2, 0.0}});
  }
  const double t0 = *delay.drive_start;
  return on_nucleus(2, propagator_timedep(driven, t0, t0 + delay.duration,
                                          driven.steps));
}

}  // namespace

Operator sequence_propagator(const PulseSequence& seq, const MoleculeParams& p,
                             const TimeDepHamiltonian* drive) {
  const TwoSpinHamiltonian h = internal_hamiltonian(p);
  Operator u = identity(4);
  for (const auto& e : seq.events) u = event_propagator(e, h, drive) * u;
  return u;
}

DensityMatrix simulate_sequence(const PulseSequence& seq,
                                const MoleculeParams& p,
                                const DensityMatrix& rho_in,
                                const TimeDepHamiltonian* drive) {
  require_density(rho_in, 4);
  const TwoSpinHamiltonian h = internal_hamiltonian(p);
  DensityMatrix rho = rho_in;
  for (const auto& e : seq.events) {
    const Operator u = event_propagator(e, h, drive);
    rho = u * rho * u.adjoint();
  }
  return rho;
}

PulseSequence build_experiment_sequence(const CorrelationSpec& spec,
                                        const MoleculeParams& p,
                                        bool time_dependent) {
  validate_spec(spec, time_dependent);
  PulseSequence seq;
  const auto n = spec.ops.size();
  for (std::size_t k = 0; k < n; ++k) {
    seq.then(compile_controlled(spec.ops[k].axis, p));
    if (k + 1 == n) break;
    const double t0 = spec.ops[k].time;
    const double dt = spec.ops[k + 1].time - t0;
    if (time_dependent) {
      seq.then(Delay{dt, false, true, t0});
    } else {
      seq.then(refocused_delay(std::abs(dt), dt < 0.0));
    }
  }
  return seq;
}

Complex run_nmr_experiment(const CorrelationSpec& spec,
                           const MoleculeParams& p, const StateVector& psi_sys,
                           const std::optional<TimeDepHamiltonian>& timedep) {
  require_state(psi_sys, 2);
  const PulseSequence seq =
      build_experiment_sequence(spec, p, timedep.has_value());
  const DensityMatrix rho0 = tensor(projector(plus_state()), projector(psi_sys));
  const DensityMatrix rho = simulate_sequence(
      seq, p, rho0, timedep ? &timedep.value() : nullptr);
  int r = 0;
  int l = 0;
  for (const auto& op : spec.ops) {
    if (op.axis == PauliAxis::Y) ++r;
    if (op.axis == PauliAxis::Z) ++l;
  }
  const double sx =
      expect(tensor(pauli(PauliAxis::X), identity(2)), rho).real();
  const double sy =
      expect(tensor(pauli(PauliAxis::Y), identity(2)), rho).real();
  return phase_correction(r, l) * Complex(sx, sy);
}

std::string format_sequence(const PulseSequence& seq) {
  std::string out;
  for (const auto& e : seq.events) {
    if (const auto* pulse = std::get_if<HardPulse>(&e)) {
      out += fmt::format("PULSE nucleus={} axis={} angle={:.17g}\n",
                         pulse->nucleus, axis_char(pulse->axis), pulse->angle);
    } else if (const auto* delay = std::get_if<Delay>(&e)) {
      out += fmt::format("DELAY dur={:.17g} coupling={}\n", delay->duration,
                         delay->coupling_on ? "on" : "off");
    } else {
      const auto& z = std::get<ZRotation>(e);
      out += fmt::format("ZROT nucleus={} angle={:.17g}\n", z.nucleus,
                         z.angle);
    }
  }
  return out;
}

}  // namespace tcorr::nmr
