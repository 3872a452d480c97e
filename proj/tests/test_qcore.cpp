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

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "tcorr/qcore.hpp"
#include "test_util.hpp"

namespace tcorr::test {
namespace {

constexpr double kFig5Amplitude = 500.0 * kPi;  // rad/s
constexpr double kFig5Rate = 300.0;             // 1/s

TimeDepHamiltonian fig5_hamiltonian(std::size_t steps) {
  TimeDepHamiltonian h;
  h.terms.push_back({PauliAxis::Y, ExpDecay{kFig5Amplitude, kFig5Rate}});
  h.steps = steps;
  return h;
}

// exp(-i Θ σy) with Θ = ∫_0^t 500π e^{-300 s} ds, via Eigen's generic
// matrix exponential rather than the closed-form half-angle path.
Operator fig5_exact(double t) {
  const double theta = kFig5Amplitude / kFig5Rate * (1.0 - std::exp(-kFig5Rate * t));
  const Operator gen = Complex(0.0, -theta) * pauli(PauliAxis::Y);
  return gen.exp();
}

// Independent reference for propagator_const.
Operator expm_reference(const ConstHamiltonian& h, double dt) {
  const Operator gen = Complex(0.0, -dt) * h.matrix();
  return gen.exp();
}

TEST_CASE("pauli matrices") {
  CHECK(pauli(PauliAxis::X) == mat2(0, 1, 1, 0));
  CHECK(pauli(PauliAxis::Y) == mat2(0, -kI, kI, 0));
  CHECK(pauli(PauliAxis::Z) == mat2(1, 0, 0, -1));
  for (PauliAxis a : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
    CHECK(is_hermitian(pauli(a)));
    CHECK(is_unitary(pauli(a)));
    CHECK(std::abs(pauli(a).trace()) == 0.0);
  }
}

TEST_CASE("axis parsing") {
  CHECK(parse_axis("x") == PauliAxis::X);
  CHECK(parse_axis("Y") == PauliAxis::Y);
  CHECK(axis_char(PauliAxis::Z) == 'z');
  CHECK_THROWS_AS(parse_axis("w"), std::invalid_argument);
  CHECK_THROWS_AS(parse_axis("xy"), std::invalid_argument);
}

TEST_CASE("rotation convention identities") {
  // Rz(-π) = iσz, Ry(π) = -iσy, iRx(π) = σx
  CHECK_OP_NEAR(rotation(PauliAxis::Z, -kPi), kI * pauli(PauliAxis::Z), 1e-15);
  CHECK_OP_NEAR(rotation(PauliAxis::Y, kPi), -kI * pauli(PauliAxis::Y), 1e-15);
  CHECK_OP_NEAR(kI * rotation(PauliAxis::X, kPi), pauli(PauliAxis::X), 1e-15);
}

TEST_CASE("propagator_const examples") {
  SUBCASE("zero generator") {
    CHECK_OP_NEAR(propagator_const({}, 1e-3), identity(2), 1e-15);
  }
  SUBCASE("-100π σz for 10 ms is -I") {
    const Operator u = propagator_const({0, 0, 0, -100 * kPi}, 10e-3);
    CHECK_OP_NEAR(u, -identity(2), 1e-13);
  }
  SUBCASE("a σx with a·dt = π/2 is -iσx") {
    const double a = 250.0;
    const Operator u = propagator_const({0, a, 0, 0}, 0.5 * kPi / a);
    CHECK_OP_NEAR(u, -kI * pauli(PauliAxis::X), 1e-15);
  }
  SUBCASE("non-finite dt rejected") {
    CHECK_THROWS_AS(propagator_const({}, NAN), std::invalid_argument);
  }
}

TEST_CASE("propagator_const properties over random Hamiltonians") {
  std::mt19937_64 gen(1234);
  std::uniform_real_distribution<double> coef(-500 * kPi, 500 * kPi);
  std::uniform_real_distribution<double> time(-10e-3, 10e-3);
  for (int trial = 0; trial < 200; ++trial) {
    const ConstHamiltonian h{coef(gen), coef(gen), coef(gen), coef(gen)};
    const double dt = time(gen);
    const Operator u = propagator_const(h, dt);
    CHECK(is_unitary(u, 1e-12));
    CHECK_OP_NEAR(u * propagator_const(h, -dt), identity(2), 1e-12);
    CHECK_OP_NEAR(u, expm_reference(h, dt), 1e-11);
  }
}

TEST_CASE("propagator_timedep") {
  SUBCASE("zero-length interval is identity") {
    CHECK(propagator_timedep(fig5_hamiltonian(16), 2e-3, 2e-3, 16) == identity(2));
  }
  SUBCASE("backwards interval rejected") {
    CHECK_THROWS_AS(propagator_timedep(fig5_hamiltonian(16), 1e-3, 0.0, 16),
                    std::invalid_argument);
    CHECK_THROWS_AS(propagator_timedep(fig5_hamiltonian(16), 0.0, 1e-3, 0),
                    std::invalid_argument);
  }
  SUBCASE("constant sampled envelope matches propagator_const") {
    TimeDepHamiltonian h;
    h.terms.push_back({PauliAxis::Z, Sampled{{{0.0, 321.0}, {5e-3, 321.0}}}});
    const Operator u = propagator_timedep(h, 0.0, 5e-3, 7);
    CHECK_OP_NEAR(u, propagator_const({0, 0, 0, 321.0}, 5e-3), 1e-13);
  }
  SUBCASE("exponential envelope against the integrated closed form") {
    const double t1 = 5.76e-3;
    const Operator exact = fig5_exact(t1);
    const Operator u4096 = propagator_timedep(fig5_hamiltonian(4096), 0, t1, 4096);
    CHECK(is_unitary(u4096, 1e-12));
    // Midpoint rule on a self-commuting generator: the rotation angle error is
    // (h²/24)(f'(t1) - f'(0)), i.e. 3.19e-8 rad at 4096 steps.
    const double h = t1 / 4096;
    const double fp0 = -kFig5Rate * kFig5Amplitude;
    const double fp1 = fp0 * std::exp(-kFig5Rate * t1);
    const double angle_err = h * h / 24.0 * std::abs(fp1 - fp0);
    CHECK(angle_err == doctest::Approx(3.19e-8).epsilon(0.01));
    CHECK(max_abs_diff(u4096, exact) < angle_err);
    const Operator u8192 = propagator_timedep(fig5_hamiltonian(8192), 0, t1, 8192);
    CHECK(max_abs_diff(u8192, exact) < 1e-8);
  }
  SUBCASE("second-order convergence") {
    const double t1 = 5.76e-3;
    auto u = [&](std::size_t n) {
      return propagator_timedep(fig5_hamiltonian(n), 0, t1, n);
    };
    const double d12 = max_abs_diff(u(64), u(128));
    const double d24 = max_abs_diff(u(128), u(256));
    CHECK(d12 < 4.0 * d24 * 1.05);
    CHECK(d12 / d24 == doctest::Approx(4.0).epsilon(0.02));
  }
  SUBCASE("sampled envelope outside its grid") {
    TimeDepHamiltonian h;
    h.terms.push_back({PauliAxis::Z, Sampled{{{0.0, 1.0}, {1e-3, 1.0}}}});
    CHECK_THROWS_AS(propagator_timedep(h, 0.0, 2e-3, 4), std::domain_error);
  }
}

TEST_CASE("envelope validation") {
  CHECK_NOTHROW(validate_envelope(ExpDecay{1.0, 2.0}));
  CHECK_THROWS(validate_envelope(ExpDecay{INFINITY, 2.0}));
  CHECK_THROWS(validate_envelope(Sampled{{{0.0, 1.0}, {0.0, 2.0}}}));
  CHECK_THROWS(validate_envelope(Sampled{}));
  CHECK(envelope_value(Sampled{{{0.0, 0.0}, {2.0, 4.0}}}, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("tensor, dagger, apply, expect") {
  CHECK(tensor(identity(2), identity(2)) == identity(4));
  CHECK(expect(pauli(PauliAxis::Z), basis_state(2, 0)) == Complex(1.0));
  CHECK(std::abs(expect(pauli(PauliAxis::X), plus_state()) - 1.0) < 1e-15);
  const Operator a = mat2(1.0, kI, 2.0, 3.0);
  CHECK(dagger(a) == mat2(1.0, 2.0, -kI, 3.0));
  CHECK((tcorr::apply(pauli(PauliAxis::X), basis_state(2, 0)) == basis_state(2, 1)));
  CHECK_THROWS_AS(tcorr::apply(identity(4), basis_state(2, 0)), std::invalid_argument);
  CHECK_THROWS_AS(expect(identity(4), basis_state(2, 0)), std::invalid_argument);
  CHECK_THROWS_AS(tensor(identity(4), identity(2)), std::invalid_argument);
  // Ancilla is the first factor.
  const StateVector s = tensor(basis_state(2, 1), basis_state(2, 0));
  CHECK(s == basis_state(4, 2));
}

TEST_CASE("expectations of Hermitian operators are real") {
  std::mt19937_64 gen(99);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    StateVector psi = ket(Complex(n(gen), n(gen)), Complex(n(gen), n(gen)));
    psi.normalize();
    const ConstHamiltonian h{n(gen), n(gen), n(gen), n(gen)};
    CHECK(std::abs(expect(h.matrix(), psi).imag()) < 1e-10);
    CHECK(std::abs(expect(h.matrix(), projector(psi)).imag()) < 1e-10);
  }
}

TEST_CASE("state and density validation") {
  CHECK_NOTHROW(require_state(plus_state(), 2));
  CHECK_THROWS(require_state(ket(1.0, 1.0), 2));
  CHECK_THROWS(require_state(plus_state(), 4));
  CHECK_NOTHROW(require_density(projector(plus_state()), 2));
  CHECK_THROWS(require_density(2.0 * projector(plus_state()), 2));
  CHECK_THROWS(require_density(mat2(1.5, 0, 0, -0.5), 2));
}

TEST_CASE("phase-normalized comparison") {
  const Operator a = pauli(PauliAxis::Y);
  CHECK(phase_normalized_diff(std::polar(1.0, 0.7) * a, a) < 1e-15);
  CHECK(phase_normalized_diff(pauli(PauliAxis::X), a) > 0.5);
}

TEST_CASE("thermal basis") {
  const ConstHamiltonian h{0, 0, 0, -100 * kPi};
  SUBCASE("ground state of -γBσz is |0>") {
    const auto tb = thermal_basis(h, 1.0);
    CHECK(std::abs(std::abs(tb.states[0](0)) - 1.0) < 1e-14);
    CHECK(tb.weights[0] == doctest::Approx(1.0));
    CHECK(tb.weights[1] < 1e-100);
  }
  SUBCASE("infinite temperature") {
    const auto tb = thermal_basis(h, 0.0);
    CHECK(tb.weights[0] == doctest::Approx(0.5));
    CHECK(tb.weights[1] == doctest::Approx(0.5));
  }
  SUBCASE("Gibbs weights") {
    const double beta = 1e-3;
    const auto tb = thermal_basis(h, beta);
    CHECK(tb.weights[1] / tb.weights[0] ==
          doctest::Approx(std::exp(-beta * 200 * kPi)));
  }
  SUBCASE("degenerate spectrum") {
    const auto tb = thermal_basis(ConstHamiltonian{3.0, 0, 0, 0}, 10.0);
    CHECK(tb.weights[0] == doctest::Approx(0.5));
    CHECK_OP_NEAR(gibbs_state(ConstHamiltonian{3.0, 0, 0, 0}, 10.0),
                  0.5 * identity(2), 1e-15);
  }
  SUBCASE("non-finite beta") {
    CHECK_THROWS_AS(thermal_basis(h, INFINITY), std::invalid_argument);
  }
}

}  // namespace
}  // namespace tcorr::test
