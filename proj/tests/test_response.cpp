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

#include "tcorr/response.hpp"
#include "test_util.hpp"

namespace tcorr::test {
namespace {

using namespace tcorr::response;

ResponseParams params(double beta) {
  ResponseParams p;
  p.gamma = 1.0;
  p.field = 100 * kPi;
  p.bp0 = 1.0;
  p.beta = beta;
  p.eta = 50.0;
  return p;
}

// φ_xx(t) = 2γ²B'0 sin(Ωt) <σz>, Ω = 2γB, <σz> = tanh(βγB).
double phi_xx_closed(double t, const ResponseParams& p) {
  const double omega0 = 2 * p.gamma * p.field;
  return 2 * p.gamma * p.gamma * p.bp0 * std::sin(omega0 * t) *
         std::tanh(p.beta * p.gamma * p.field);
}

// Laplace transform of the closed form: C Ω / ((η + iω)² + Ω²).
Complex chi_xx_closed(double w, const ResponseParams& p) {
  const double omega0 = 2 * p.gamma * p.field;
  const double c = 2 * p.gamma * p.gamma * p.bp0 *
                   std::tanh(p.beta * p.gamma * p.field);
  const Complex s(p.eta, w);
  return c * omega0 / (s * s + omega0 * omega0);
}

// Heisenberg operator through Eigen's generic matrix exponential.
Operator heis_expm(PauliAxis a, double t, const ResponseParams& p) {
  const Operator h0 = -p.gamma * p.field * pauli(PauliAxis::Z);
  const Operator u = (Complex(0, -t) * h0).exp();
  return u.adjoint() * pauli(a) * u;
}

TEST_CASE("response_function examples") {
  const ResponseParams p = params(2e-3);
  SUBCASE("equal axes at t = 0 vanish") {
    for (PauliAxis a : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
      CHECK(std::abs(response_function(a, a, 0.0, p)) < 1e-15);
    }
  }
  SUBCASE("(X, X) sine closed form and matrix commutator") {
    const DensityMatrix rho = gibbs_state(p.unperturbed(), p.beta);
    for (double t = 0.0; t <= 10e-3; t += 0.37e-3) {
      const double phi = response_function(PauliAxis::X, PauliAxis::X, t, p);
      const Operator sx = pauli(PauliAxis::X);
      const Operator xt = heis_expm(PauliAxis::X, t, p);
      const Complex direct =
          (p.gamma * p.gamma * p.bp0) * expect(sx * xt - xt * sx, rho) / kI;
      CHECK(phi == doctest::Approx(direct.real()).epsilon(1e-12).scale(1.0));
      CHECK(std::abs(phi - phi_xx_closed(t, p)) < 1e-12);
    }
  }
  SUBCASE("infinite temperature gives zero") {
    const ResponseParams hot = params(0.0);
    for (PauliAxis a : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
      for (PauliAxis b : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
        for (double t : {0.0, 1.1e-3, 4.9e-3}) {
          CHECK(std::abs(response_function(a, b, t, hot)) < 1e-15);
        }
      }
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(response_function(PauliAxis::X, PauliAxis::X, -1.0, p),
                    std::invalid_argument);
    ResponseParams bad = p;
    bad.eta = 0.0;
    CHECK_THROWS_AS(response_function(PauliAxis::X, PauliAxis::X, 1.0, bad),
                    std::invalid_argument);
  }
}

TEST_CASE("response_function properties") {
  std::mt19937_64 gen(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    ResponseParams p = params(0.02 * u(gen));
    p.field = 50 * kPi + 450 * kPi * u(gen);
    p.bp0 = 0.1 + 2 * u(gen);
    const auto a = static_cast<PauliAxis>(trial % 3);
    const auto b = static_cast<PauliAxis>((trial / 3) % 3);
    const double t = 10e-3 * u(gen);
    // The imaginary-residue assertion never fires.
    const double phi = response_function(a, b, t, p);
    ResponseParams doubled = p;
    doubled.bp0 *= 2;
    CHECK(std::abs(response_function(a, b, t, doubled) - 2 * phi) < 1e-12);
    CHECK(std::abs(response_from_protocol(a, b, t, p) - phi) < 1e-9);
  }
}

TEST_CASE("zero-temperature limit is the ground-state commutator") {
  ResponseParams p = params(1.0);  // βΔE = 200π
  const StateVector ground = basis_state(2, 0);
  for (PauliAxis a : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
    for (PauliAxis b : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
      for (double t : {0.2e-3, 3.3e-3}) {
        const Operator bt = heis_expm(b, t, p);
        const Complex c =
            expect(pauli(a) * bt - bt * pauli(a), ground) / kI;
        CHECK(std::abs(response_function(a, b, t, p) - c.real()) < 1e-10);
      }
    }
  }
}

TEST_CASE("susceptibility") {
  SUBCASE("zero response gives zero susceptibility") {
    const ResponseParams p = params(0.0);
    for (double w : {-500.0, 0.0, 628.0}) {
      CHECK(std::abs(susceptibility(PauliAxis::X, PauliAxis::X, w, p)) == 0.0);
    }
  }
  SUBCASE("(X, X) matches the analytic Laplace transform") {
    const ResponseParams p = params(2e-3);
    for (double w : {-900.0, -628.3, -100.0, 0.0, 250.0, 628.3, 1500.0}) {
      const Complex chi = susceptibility(PauliAxis::X, PauliAxis::X, w, p);
      const Complex ref = chi_xx_closed(w, p);
      CHECK(std::abs(chi - ref) / std::abs(ref) < 1e-6);
    }
  }
  SUBCASE("reality symmetry") {
    const ResponseParams p = params(3e-3);
    for (PauliAxis b : {PauliAxis::X, PauliAxis::Y}) {
      for (double w : {100.0, 700.0}) {
        const Complex plus = susceptibility(PauliAxis::X, b, w, p);
        const Complex minus = susceptibility(PauliAxis::X, b, -w, p);
        CHECK(std::abs(minus - std::conj(plus)) < 1e-8 * std::abs(plus));
      }
    }
  }
  SUBCASE("sweep agrees with single-frequency evaluation") {
    ResponseParams p = params(2e-3);
    p.omega = {-300.0, 0.0, 300.0, 628.0};
    const auto sweep = susceptibility_sweep(PauliAxis::X, PauliAxis::Y, p);
    REQUIRE(sweep.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
      const Complex single = susceptibility(PauliAxis::X, PauliAxis::Y, p.omega[k], p);
      CHECK(std::abs(sweep[k] - single) <= 1e-12 * std::abs(single));
    }
  }
  SUBCASE("omega grid must increase") {
    ResponseParams p = params(2e-3);
    p.omega = {1.0, 1.0};
    CHECK_THROWS_AS(susceptibility_sweep(PauliAxis::X, PauliAxis::X, p),
                    std::invalid_argument);
  }
}

TEST_CASE("corrected_moment") {
  SUBCASE("infinite temperature") {
    const ResponseParams p = params(0.0);
    CHECK(std::abs(corrected_moment(PauliAxis::X, PauliAxis::Z, 300.0, 1e-3, p)) < 1e-15);
  }
  SUBCASE("t = 0 adds χ directly") {
    const ResponseParams p = params(2e-3);
    const double mu0 = p.gamma * std::tanh(p.beta * p.gamma * p.field);
    const Complex chi = susceptibility(PauliAxis::X, PauliAxis::Z, 400.0, p);
    CHECK(std::abs(corrected_moment(PauliAxis::X, PauliAxis::Z, 400.0, 0.0, p) -
                   (mu0 + chi)) < 1e-12);
  }
  SUBCASE("zero perturbation amplitude") {
    ResponseParams p = params(2e-3);
    p.bp0 = 0.0;
    const double mu0 = p.gamma * std::tanh(p.beta * p.gamma * p.field);
    for (double t : {0.0, 1e-3, 7e-3}) {
      CHECK(std::abs(corrected_moment(PauliAxis::X, PauliAxis::Z, 400.0, t, p) -
                     mu0) < 1e-15);
    }
  }
}

// Monte-Carlo estimate of ∫∫_{0<t2<t1<t} g(t1, t2) with g built from Eigen
// matrix exponentials; returns (mean, standard error).
std::pair<double, double> mc_second_order(PauliAxis b, PauliAxis a, double t,
                                          const ResponseParams& p,
                                          const DensityMatrix& rho, int samples,
                                          std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, t);
  const Operator bt = heis_expm(b, t, p);
  double sum = 0.0;
  double sum2 = 0.0;
  const double area = 0.5 * t * t;
  for (int k = 0; k < samples; ++k) {
    double t1 = u(gen);
    double t2 = u(gen);
    if (t2 > t1) std::swap(t1, t2);
    const Operator a1 = heis_expm(a, t1, p);
    const Operator a2 = heis_expm(a, t2, p);
    const Operator inner = a1 * a2 - a2 * a1;
    const double g = expect(bt * inner - inner * bt, rho).real() * area;
    sum += g;
    sum2 += g * g;
  }
  const double mean = sum / samples;
  const double var = (sum2 / samples - mean * mean) / (samples - 1);
  return {mean, std::sqrt(std::max(var, 0.0))};
}

TEST_CASE("second_order_correction") {
  const ResponseParams p = params(2e-3);
  const double t = 4e-3;
  SUBCASE("zero envelope") {
    const auto f = PerturbationEnvelope::constant(0.0, t);
    CHECK(second_order_correction(PauliAxis::Y, PauliAxis::X, f, t, p, 200) == 0.0);
  }
  SUBCASE("commuting perturbation") {
    const auto f = PerturbationEnvelope::constant(1.0, t);
    const DensityMatrix plus = projector(plus_state());
    for (PauliAxis b : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
      CHECK(second_order_correction(b, PauliAxis::Z, f, t, p, 200) == 0.0);
      CHECK(second_order_correction(b, PauliAxis::Z, f, t, p, 200, plus) == 0.0);
    }
  }
  SUBCASE("thermal states of a σz Hamiltonian see no second-order shift") {
    // [A(t1), A(t2)] ∝ σz and [B(t), σz] is off-diagonal.
    const auto f = PerturbationEnvelope::constant(1.0, t);
    CHECK(std::abs(second_order_correction(PauliAxis::Y, PauliAxis::X, f, t, p, 400)) < 1e-14);
  }
  SUBCASE("A = X, B = Y, F = 1 against a Monte-Carlo simplex estimate") {
    const auto f = PerturbationEnvelope::constant(1.0, t);
    const DensityMatrix plus = projector(plus_state());
    const double quad =
        second_order_correction(PauliAxis::Y, PauliAxis::X, f, t, p, 2000, plus);
    const auto [mean, se] = mc_second_order(PauliAxis::Y, PauliAxis::X, t, p,
                                            plus, 40000, 2024);
    CHECK(std::abs(mean) > 5 * se);  // the test case is not trivially zero
    CHECK(std::abs(quad - mean) < 3 * se);
  }
  SUBCASE("trapezoid convergence") {
    const DensityMatrix plus = projector(plus_state());
    const auto f = PerturbationEnvelope::constant(1.0, t);
    auto q = [&](std::size_t n) {
      return second_order_correction(PauliAxis::Y, PauliAxis::X, f, t, p, n, plus);
    };
    const double d1 = std::abs(q(100) - q(200));
    const double d2 = std::abs(q(200) - q(400));
    CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.05));
  }
  SUBCASE("envelope must cover [0, t]") {
    const auto f = PerturbationEnvelope::constant(1.0, 0.5 * t);
    CHECK_THROWS_AS(second_order_correction(PauliAxis::Y, PauliAxis::X, f, t, p, 10),
                    std::domain_error);
  }
}

TEST_CASE("perturbation envelope interpolation") {
  PerturbationEnvelope f{0.0, 1.0, {0.0, 2.0, 4.0}};
  CHECK(f.at(0.5) == doctest::Approx(1.0));
  CHECK(f.at(2.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(f.at(2.5), std::domain_error);
}

}  // namespace
}  // namespace tcorr::test
