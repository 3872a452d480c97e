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

#include "tcorr/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

#include <fmt/format.h>

#include "tcorr/oracle.hpp"

namespace tcorr::experiment {

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Protocol:
      return "protocol";
    case Backend::Oracle:
      return "oracle";
    case Backend::Nmr:
      return "nmr";
  }
  return "?";
}

CorrelationSpec build_mn_spec(Family family, int n, double dt) {
  if (n < 2) throw std::invalid_argument("correlation order n must be >= 2");
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("time step must be finite and > 0");
  }
  CorrelationSpec spec;
  for (int k = 0; k < n; ++k) {
    const bool odd = k % 2 == 1;
    const PauliAxis axis =
        family == Family::XY && odd ? PauliAxis::Y : PauliAxis::X;
    spec.ops.push_back({axis, k * dt});
  }
  return spec;
}

std::size_t SweepAxis::count() const {
  return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
}

std::size_t ExperimentConfig::point_count() const {
  std::size_t total = 1;
  for (const auto& axis : sweep) total *= axis.count();
  return total;
}

std::size_t ExperimentConfig::time_axis_count() const {
  return static_cast<std::size_t>(
      std::count_if(sweep.begin(), sweep.end(),
                    [](const SweepAxis& a) { return !a.is_order(); }));
}

bool ExperimentConfig::wants(Backend b) const {
  return std::find(backends.begin(), backends.end(), b) != backends.end();
}

std::optional<double> SweepRow::abs_err_max() const {
  std::vector<Complex> values;
  for (const auto* v : {&protocol, &oracle, &nmr}) {
    if (v->has_value()) values.push_back(v->value());
  }
  if (values.size() < 2) return std::nullopt;
  double worst = 0.0;
  for (std::size_t a = 0; a < values.size(); ++a) {
    for (std::size_t b = a + 1; b < values.size(); ++b) {
      worst = std::max(worst, std::abs(values[a] - values[b]));
    }
  }
  return worst;
}

CorrelationSpec spec_at(const ExperimentConfig& cfg, std::size_t index,
                        std::vector<double>* times) {
  // First sweep axis is the outermost loop.
  std::vector<double> coords(cfg.sweep.size());
  std::size_t rest = index;
  for (std::size_t k = cfg.sweep.size(); k-- > 0;) {
    const std::size_t count = cfg.sweep[k].count();
    coords[k] = cfg.sweep[k].value(rest % count);
    rest /= count;
  }
  if (times) {
    times->clear();
    for (std::size_t k = 0; k < cfg.sweep.size(); ++k) {
      if (!cfg.sweep[k].is_order()) times->push_back(coords[k]);
    }
  }
  if (const auto* fam = std::get_if<OrderFamily>(&cfg.operators)) {
    return build_mn_spec(fam->family, static_cast<int>(std::lround(coords[0])),
                         fam->dt);
  }
  std::map<std::string, double> vars;
  for (std::size_t k = 0; k < cfg.sweep.size(); ++k) {
    vars[cfg.sweep[k].variable] = coords[k];
  }
  CorrelationSpec spec;
  for (const auto& t : std::get<std::vector<OperatorTemplate>>(cfg.operators)) {
    const double time = std::holds_alternative<double>(t.time)
                            ? std::get<double>(t.time)
                            : vars.at(std::get<std::string>(t.time));
    spec.ops.push_back({t.axis, time});
  }
  return spec;
}

nmr::MoleculeParams molecule_for(const ExperimentConfig& cfg) {
  if (cfg.molecule) return *cfg.molecule;
  if (const auto* h = std::get_if<ConstHamiltonian>(&cfg.hamiltonian)) {
    if (h->hx != 0.0 || h->hy != 0.0) {
      throw std::invalid_argument(
          "the nmr backend realizes σz-type system Hamiltonians only");
    }
    return nmr::MoleculeParams::with_system_offset(-h->hz / kPi);
  }
  return nmr::MoleculeParams::with_system_offset(0.0);
}

namespace {

Complex eval_protocol(const ExperimentConfig& cfg, const CorrelationSpec& spec) {
  if (cfg.initial_state.beta) {
    return run_protocol_thermal(spec,
                                std::get<ConstHamiltonian>(cfg.hamiltonian),
                                *cfg.initial_state.beta);
  }
  return run_protocol(spec, cfg.hamiltonian, *cfg.initial_state.ket).f;
}

Complex eval_oracle(const ExperimentConfig& cfg, const CorrelationSpec& spec) {
  if (cfg.initial_state.beta) {
    const DensityMatrix rho =
        gibbs_state(std::get<ConstHamiltonian>(cfg.hamiltonian),
                    *cfg.initial_state.beta);
    return oracle::correlation_direct(spec, cfg.hamiltonian, rho);
  }
  return oracle::correlation_direct(spec, cfg.hamiltonian,
                                    *cfg.initial_state.ket);
}

Complex eval_nmr(const ExperimentConfig& cfg, const CorrelationSpec& spec) {
  const nmr::MoleculeParams mol = molecule_for(cfg);
  std::optional<TimeDepHamiltonian> drive;
  if (const auto* td = std::get_if<TimeDepHamiltonian>(&cfg.hamiltonian)) {
    drive = *td;
  }
  if (cfg.initial_state.beta) {
    const auto tb = thermal_basis(nmr::internal_hamiltonian(mol).system(),
                                  *cfg.initial_state.beta);
    Complex f{0.0, 0.0};
    for (int k = 0; k < 2; ++k) {
      if (tb.weights[k] == 0.0) continue;
      f += tb.weights[k] * nmr::run_nmr_experiment(spec, mol, tb.states[k], drive);
    }
    return f;
  }
  return nmr::run_nmr_experiment(spec, mol, *cfg.initial_state.ket, drive);
}

std::string describe_point(const std::vector<double>& times, int n) {
  std::string out = fmt::format("n={}", n);
  for (std::size_t k = 0; k < times.size(); ++k) {
    out += fmt::format(" t{}={:.17g}s", k + 1, times[k]);
  }
  return out;
}

SweepRow evaluate_point(const ExperimentConfig& cfg, std::size_t index) {
  SweepRow row;
  const CorrelationSpec spec = spec_at(cfg, index, &row.times);
  row.n = static_cast<int>(spec.order());
  Backend current = Backend::Protocol;
  try {
    for (Backend b : cfg.backends) {
      current = b;
      switch (b) {
        case Backend::Protocol:
          row.protocol = eval_protocol(cfg, spec);
          break;
        case Backend::Oracle:
          row.oracle = eval_oracle(cfg, spec);
          break;
        case Backend::Nmr:
          row.nmr = eval_nmr(cfg, spec);
          break;
      }
    }
  } catch (const std::exception& e) {
    throw BackendError(fmt::format("{} backend failed at {}: {}",
                                   backend_name(current),
                                   describe_point(row.times, row.n), e.what()));
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_config(const ExperimentConfig& cfg, unsigned jobs) {
  const std::size_t total = cfg.point_count();
  std::vector<SweepRow> rows(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        rows[i] = evaluate_point(cfg, i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), total));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string csv_header(const ExperimentConfig& cfg) {
  std::string out;
  for (std::size_t k = 0; k < cfg.time_axis_count(); ++k) {
    out += fmt::format("t_{}_s,", k + 1);
  }
  out +=
      "n,re_protocol,im_protocol,re_oracle,im_oracle,re_nmr,im_nmr,abs_err_max";
  return out;
}

std::string format_csv(const ExperimentConfig& cfg,
                       const std::vector<SweepRow>& rows) {
  std::string out = csv_header(cfg) + "\n";
  auto cell = [](const std::optional<Complex>& v) {
    return v ? fmt::format("{:.17g},{:.17g}", v->real(), v->imag())
             : std::string(",");
  };
  for (const auto& row : rows) {
    for (double t : row.times) out += fmt::format("{:.17g},", t);
    out += fmt::format("{},{},{},{},", row.n, cell(row.protocol),
                       cell(row.oracle), cell(row.nmr));
    if (const auto err = row.abs_err_max()) out += fmt::format("{:.17g}", *err);
    out += "\n";
  }
  return out;
}

}  // namespace tcorr::experiment
