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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tcorr/nmr.hpp"
#include "tcorr/protocol.hpp"
#include "tcorr/qcore.hpp"

namespace tcorr::experiment {

/// Invalid configuration; `field` is a JSON-pointer-like path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// A backend failed at a particular sweep point.
class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Backend { Protocol, Oracle, Nmr };
const char* backend_name(Backend b);

enum class Family { XX, XY };

/// Mⁿ_xx = <σx(t_{n-1})···σx(t1)σx>; Mⁿ_xy interleaves σy on odd slots.
/// Times are t_k = k·dt.
CorrelationSpec build_mn_spec(Family family, int n, double dt);

struct InitialState {
  // Exactly one is set.
  std::optional<StateVector> ket;
  std::optional<double> beta;
};

/// An operator acting at a fixed time or at a swept time variable "t<k>".
struct OperatorTemplate {
  PauliAxis axis = PauliAxis::Z;
  std::variant<double, std::string> time = 0.0;
};

struct OrderFamily {
  Family family = Family::XX;
  double dt = 0.0;
};

struct SweepAxis {
  std::string variable;  // "t1", "t2", ... or "n"
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::size_t count() const;
  double value(std::size_t index) const { return start + step * index; }
  bool is_order() const { return variable == "n"; }
};

struct ExperimentConfig {
  std::string label;
  Hamiltonian hamiltonian;
  InitialState initial_state;
  std::variant<std::vector<OperatorTemplate>, OrderFamily> operators;
  std::vector<SweepAxis> sweep;
  std::vector<Backend> backends;  // canonical order protocol, oracle, nmr
  std::optional<nmr::MoleculeParams> molecule;

  /// Product of the sweep-axis counts.
  std::size_t point_count() const;
  std::size_t time_axis_count() const;
  bool wants(Backend b) const;
};

struct SweepRow {
  std::vector<double> times;  // one per swept time variable, seconds
  int n = 0;                  // correlation order
  std::optional<Complex> protocol;
  std::optional<Complex> oracle;
  std::optional<Complex> nmr;

  /// Max pairwise |f_a - f_b| over the backends present.
  std::optional<double> abs_err_max() const;
};

ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

struct Preset {
  std::string name;
  std::string description;
  std::vector<ExperimentConfig> experiments;
};

Preset load_preset_file(const std::filesystem::path& path);
/// Looks for `<dir>/<name>.json` in the given directory, or in the shipped
/// presets directory when `dir` is empty.
Preset load_preset(const std::string& name,
                   const std::filesystem::path& dir = {});
std::filesystem::path default_preset_dir();

/// The correlation evaluated at sweep point `index`.
CorrelationSpec spec_at(const ExperimentConfig& cfg, std::size_t index,
                        std::vector<double>* times = nullptr);

/// Molecule used by the nmr backend: the configured one, or one derived from
/// a σz-only static Hamiltonian (Δν = -hz/π) or zero offsets for a driven run.
nmr::MoleculeParams molecule_for(const ExperimentConfig& cfg);

std::vector<SweepRow> run_config(const ExperimentConfig& cfg,
                                 unsigned jobs = 1);

std::string csv_header(const ExperimentConfig& cfg);
std::string format_csv(const ExperimentConfig& cfg,
                       const std::vector<SweepRow>& rows);

}  // namespace tcorr::experiment
