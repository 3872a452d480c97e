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

#include "tcorr/response.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tcorr/protocol.hpp"

namespace tcorr::response {

namespace {

constexpr double kImagTolerance = 1e-10;
constexpr double kRelTolerance = 1e-8;
constexpr std::size_t kMaxIntervals = std::size_t{1} << 20;
constexpr std::size_t kStartIntervals = 64;

// |Im| must stay below 1e-10 relative to the natural scale of the result.
double checked_real(Complex value, double scale, const char* what) {
  if (std::abs(value.imag()) >= kImagTolerance * std::max(1.0, scale)) {
    throw std::logic_error(std::string(what) +
                           ": imaginary residue " +
                           std::to_string(value.imag()) +
                           " exceeds tolerance");
  }
  return value.real();
}

Operator evolved(PauliAxis axis, double t, const ConstHamiltonian& h0) {
  const Operator u = propagator_const(h0, t);
  return u.adjoint() * pauli(axis) * u;
}

// φ on the uniform grid k·T/N, refined by halving while keeping old nodes.
class PhiSamples {
 public:
  PhiSamples(PauliAxis alpha, PauliAxis beta_axis, const ResponseParams& p,
             double span)
      : alpha_(alpha), beta_(beta_axis), params_(p), span_(span) {
    values_.resize(kStartIntervals + 1);
    for (std::size_t k = 0; k <= kStartIntervals; ++k) {
      values_[k] = sample(k, kStartIntervals);
    }
  }

  std::size_t intervals() const { return values_.size() - 1; }
  double span() const { return span_; }

  void refine() {
    const std::size_t n = intervals();
    std::vector<double> next(2 * n + 1);
    for (std::size_t k = 0; k <= n; ++k) next[2 * k] = values_[k];
    for (std::size_t k = 0; k < n; ++k) next[2 * k + 1] = sample(2 * k + 1, 2 * n);
    values_ = std::move(next);
  }

  // Composite Simpson of φ(τ)·e^{-(η+iω)τ} on `n` intervals (n | intervals()).
  std::pair<Complex, double> simpson(std::size_t n, double omega) const {
    const std::size_t stride = intervals() / n;
    const double h = span_ / static_cast<double>(n);
    const Complex rate(params_.eta, omega);
    Complex sum{0.0, 0.0};
    double l1 = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      const double w = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
      const double tau = h * static_cast<double>(k);
      const double phi = values_[k * stride];
      sum += w * phi * std::exp(-rate * tau);
      l1 += w * std::abs(phi) * std::exp(-params_.eta * tau);
    }
    return {sum * (h / 3.0), l1 * (h / 3.0)};
  }

 private:
  double sample(std::size_t k, std::size_t n) const {
    return response_function(alpha_, beta_,
                             span_ * static_cast<double>(k) /
                                 static_cast<double>(n),
                             params_);
  }

  PauliAxis alpha_;
  PauliAxis beta_;
  const ResponseParams& params_;
  double span_;
  std::vector<double> values_;
};

double truncation_span(double eta) {
  // e^{-ηT} = 1e-11 < 1e-10
  return 11.0 * std::log(10.0) / eta;
}

Complex integrate(PhiSamples& samples, double omega) {
  std::size_t n = kStartIntervals;
  auto [prev, l1] = samples.simpson(n, omega);
  while (true) {
    const std::size_t next = 2 * n;
    if (next > kMaxIntervals) {
      throw QuadratureError("susceptibility quadrature did not converge at ω=" +
                            std::to_string(omega) + " rad/s");
    }
    while (samples.intervals() < next) samples.refine();
    auto [cur, cur_l1] = samples.simpson(next, omega);
    const double scale = std::max(std::abs(cur), cur_l1);
    if (std::abs(cur - prev) <= kRelTolerance * scale) return cur;
    prev = cur;
    n = next;
  }
}

Operator commutator(const Operator& a, const Operator& b) {
  return a * b - b * a;
}

}  // namespace

void ResponseParams::validate() const {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("eta must be a finite positive rate");
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be finite and >= 0");
  }
  if (!std::isfinite(gamma) || !std::isfinite(field) || !std::isfinite(bp0)) {
    throw std::invalid_argument("gamma, field and bp0 must be finite");
  }
  for (std::size_t k = 0; k < omega.size(); ++k) {
    if (!std::isfinite(omega[k])) {
      throw std::invalid_argument("omega grid must be finite");
    }
    if (k > 0 && !(omega[k] > omega[k - 1])) {
      throw std::invalid_argument("omega grid must be strictly increasing");
    }
  }
}

double PerturbationEnvelope::at(double t) const {
  if (samples.empty()) throw std::invalid_argument("empty perturbation envelope");
  const double pos = (t - t_start) / dt;
  const double last = static_cast<double>(samples.size() - 1);
  if (pos < -1e-9 || pos > last + 1e-9) {
    throw std::domain_error("perturbation envelope undefined at t=" +
                            std::to_string(t));
  }
  const double clamped = std::clamp(pos, 0.0, last);
  const auto lo = static_cast<std::size_t>(std::floor(clamped));
  if (lo + 1 >= samples.size()) return samples.back();
  const double w = clamped - static_cast<double>(lo);
  return (1.0 - w) * samples[lo] + w * samples[lo + 1];
}

PerturbationEnvelope PerturbationEnvelope::constant(double value, double t_end,
                                                    std::size_t n) {
  PerturbationEnvelope f;
  f.t_start = 0.0;
  f.dt = t_end / static_cast<double>(std::max<std::size_t>(n, 2) - 1);
  f.samples.assign(std::max<std::size_t>(n, 2), value);
  return f;
}

double response_function(PauliAxis alpha, PauliAxis beta_axis, double t,
                         const ResponseParams& params) {
  if (!(t >= 0.0)) throw std::invalid_argument("response time must be >= 0");
  params.validate();
  const ConstHamiltonian h0 = params.unperturbed();
  const DensityMatrix rho = gibbs_state(h0, params.beta);
  const double g2 = params.gamma * params.gamma * params.bp0;
  const Operator c =
      commutator(pauli(alpha), evolved(beta_axis, t, h0)) * g2;
  const Complex value = expect(c, rho) / kI;
  return checked_real(value, std::abs(g2), "response_function");
}

double response_from_protocol(PauliAxis alpha, PauliAxis beta_axis, double t,
                              const ResponseParams& params) {
  if (!(t >= 0.0)) throw std::invalid_argument("response time must be >= 0");
  params.validate();
  const ConstHamiltonian h0 = params.unperturbed();
  const auto tb = thermal_basis(h0, params.beta);
  // <σα σβ(t)> equals <σα(-t) σβ> on stationary states.
  const CorrelationSpec alpha_first{{{beta_axis, 0.0}, {alpha, -t}}};
  const CorrelationSpec beta_first{{{alpha, 0.0}, {beta_axis, t}}};
  Complex acc{0.0, 0.0};
  for (int k = 0; k < 2; ++k) {
    if (tb.weights[k] == 0.0) continue;
    const Complex ab = run_protocol(alpha_first, h0, tb.states[k]).f;
    const Complex ba = run_protocol(beta_first, h0, tb.states[k]).f;
    acc += tb.weights[k] * (ab - ba);
  }
  const double g2 = params.gamma * params.gamma * params.bp0;
  return checked_real(g2 * acc / kI, std::abs(g2), "response_from_protocol");
}

Complex susceptibility(PauliAxis alpha, PauliAxis beta_axis, double omega,
                       const ResponseParams& params) {
  params.validate();
  PhiSamples samples(alpha, beta_axis, params, truncation_span(params.eta));
  return integrate(samples, omega);
}

std::vector<Complex> susceptibility_sweep(PauliAxis alpha, PauliAxis beta_axis,
                                          const ResponseParams& params) {
  params.validate();
  PhiSamples samples(alpha, beta_axis, params, truncation_span(params.eta));
  std::vector<Complex> out;
  out.reserve(params.omega.size());
  for (double w : params.omega) out.push_back(integrate(samples, w));
  return out;
}

Complex corrected_moment(PauliAxis alpha, PauliAxis beta_axis, double omega,
                         double t, const ResponseParams& params) {
  const ConstHamiltonian h0 = params.unperturbed();
  const DensityMatrix rho = gibbs_state(h0, params.beta);
  const double mu0 = params.gamma * expect(pauli(beta_axis), rho).real();
  if (params.bp0 == 0.0) return mu0;
  return mu0 + susceptibility(alpha, beta_axis, omega, params) *
                   std::exp(Complex(0.0, -omega * t));
}

double second_order_correction(PauliAxis b_axis, PauliAxis a_axis,
                               const PerturbationEnvelope& f, double t,
                               const ResponseParams& params,
                               std::size_t grid_steps) {
  params.validate();
  return second_order_correction(b_axis, a_axis, f, t, params, grid_steps,
                                 gibbs_state(params.unperturbed(), params.beta));
}

double second_order_correction(PauliAxis b_axis, PauliAxis a_axis,
                               const PerturbationEnvelope& f, double t,
                               const ResponseParams& params,
                               std::size_t grid_steps,
                               const DensityMatrix& rho) {
  params.validate();
  require_density(rho, 2);
  if (!(t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  if (grid_steps == 0) throw std::invalid_argument("grid_steps must be >= 1");
  const ConstHamiltonian h0 = params.unperturbed();
  const std::size_t n = grid_steps;
  const double h = t / static_cast<double>(n);

  // Tr(ρ[B,K]) = Tr([ρ,B] K) and Tr(M[Ai,Aj]) = Tr((M Ai - Ai M) Aj).
  using Mat2 = Eigen::Matrix2cd;
  const Mat2 m = commutator(rho, evolved(b_axis, t, h0));
  std::vector<Mat2> a(n + 1);
  std::vector<Mat2> left(n + 1);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double ti = h * static_cast<double>(i);
    a[i] = evolved(a_axis, ti, h0);
    left[i] = m * a[i] - a[i] * m;
    fv[i] = f.at(ti);
  }

  Complex outer{0.0, 0.0};
  for (std::size_t i = 1; i <= n; ++i) {
    Complex inner{0.0, 0.0};
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex g = (left[i].transpose().cwiseProduct(a[j])).sum() * fv[j];
      inner += (j == 0 || j == i) ? 0.5 * g : g;
    }
    inner *= h * fv[i];
    outer += (i == n) ? 0.5 * inner : inner;
  }
  outer *= h;
  return checked_real(outer, 1.0, "second_order_correction");
}

}  // namespace tcorr::response
