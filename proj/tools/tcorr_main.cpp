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

// tcorr command-line front end.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tcorr/experiment.hpp"
#include "tcorr/nmr.hpp"
#include "tcorr/response.hpp"
#include "tcorr/verify.hpp"

namespace {

namespace fs = std::filesystem;
using namespace tcorr;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitVerifyFailed = 2;

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

struct CorrelateArgs {
  std::string config;
  std::string out;
  unsigned jobs = 1;
};

int run_correlate(const CorrelateArgs& args) {
  const auto cfg = experiment::parse_config_file(args.config);
  const auto rows = experiment::run_config(cfg, args.jobs);
  write_text(args.out, experiment::format_csv(cfg, rows));
  std::cout << fmt::format("wrote {} rows to {}\n", rows.size(), args.out);
  return kExitOk;
}

struct FigureArgs {
  std::string preset;
  std::string out;
  std::string preset_dir;
  unsigned jobs = 1;
};

int run_figure(const FigureArgs& args) {
  const auto preset = experiment::load_preset(args.preset, args.preset_dir);
  for (const auto& cfg : preset.experiments) {
    const auto rows = experiment::run_config(cfg, args.jobs);
    const fs::path path =
        fs::path(args.out) / fmt::format("{}_{}.csv", preset.name, cfg.label);
    write_text(path, experiment::format_csv(cfg, rows));
    std::cout << fmt::format("wrote {} rows to {}\n", rows.size(),
                             path.string());
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string suite = "all";
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  std::optional<double> tolerance;
  std::string out;
};

int run_verify(const VerifyArgs& args) {
  std::vector<std::string> suites;
  if (args.suite == "all") {
    suites = verify::suite_names();
  } else {
    suites.push_back(args.suite);
  }
  std::vector<verify::SuiteReport> reports;
  bool ok = true;
  for (const auto& name : suites) {
    reports.push_back(verify::run_suite(name, args.trials, args.seed));
    if (args.tolerance) {
      reports.back().tolerance = *args.tolerance;
      reports.back().pass = reports.back().max_error < *args.tolerance;
    }
    std::cout << verify::format_report(reports.back()) << "\n";
    ok = ok && reports.back().pass;
  }
  if (!args.out.empty()) write_text(args.out, verify::format_errors_csv(reports));
  return ok ? kExitOk : kExitVerifyFailed;
}

struct SusceptibilityArgs {
  std::string alpha = "x";
  std::string beta = "x";
  double omega_start = 0.0;
  double omega_stop = 0.0;
  double omega_step = 1.0;
  double eta = 50.0;
  double beta_inv_temp = 0.0;
  double gamma = 1.0;
  double field = 100.0 * kPi;
  double bp0 = 1.0;
  std::string out;
};

int run_susceptibility(const SusceptibilityArgs& args) {
  response::ResponseParams p;
  p.gamma = args.gamma;
  p.field = args.field;
  p.bp0 = args.bp0;
  p.beta = args.beta_inv_temp;
  p.eta = args.eta;
  if (!(args.omega_step > 0.0) || args.omega_stop < args.omega_start) {
    throw std::invalid_argument(
        "omega grid needs step > 0 and stop >= start");
  }
  const auto count = static_cast<std::size_t>(std::floor(
                         (args.omega_stop - args.omega_start) / args.omega_step +
                         1e-9)) + 1;
  for (std::size_t k = 0; k < count; ++k) {
    p.omega.push_back(args.omega_start + args.omega_step * k);
  }
  const PauliAxis alpha = parse_axis(args.alpha);
  const PauliAxis beta = parse_axis(args.beta);
  const auto chi = response::susceptibility_sweep(alpha, beta, p);
  std::string csv = "omega_rad_s,re_chi,im_chi\n";
  for (std::size_t k = 0; k < chi.size(); ++k) {
    csv += fmt::format("{:.17g},{:.17g},{:.17g}\n", p.omega[k], chi[k].real(),
                       chi[k].imag());
  }
  write_text(args.out, csv);
  std::cout << fmt::format("wrote {} rows to {}\n", chi.size(), args.out);
  return kExitOk;
}

struct CompileArgs {
  std::string gate;
  bool xy_only = false;
  double delta_nu = 0.0;
  double j12 = 215.0;
};

int run_compile(const CompileArgs& args) {
  PauliAxis axis = PauliAxis::Z;
  if (args.gate == "cx") {
    axis = PauliAxis::X;
  } else if (args.gate == "cy") {
    axis = PauliAxis::Y;
  } else if (args.gate == "cz") {
    axis = PauliAxis::Z;
  } else {
    throw std::invalid_argument("unknown gate '" + args.gate + "'");
  }
  const auto mol = nmr::MoleculeParams::with_system_offset(args.delta_nu, args.j12);
  std::cout << nmr::format_sequence(nmr::compile_controlled(axis, mol, args.xy_only));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ancilla-assisted n-time correlation functions: simulation, "
               "verification, linear response and NMR pulse compilation"};
  app.require_subcommand(1);

  CorrelateArgs correlate;
  auto* cmd_correlate = app.add_subcommand("correlate", "Run a JSON experiment config");
  cmd_correlate->add_option("--config", correlate.config, "Config file")
      ->required()->check(CLI::ExistingFile);
  cmd_correlate->add_option("--out", correlate.out, "Output CSV")->required();
  cmd_correlate->add_option("--jobs", correlate.jobs, "Worker threads");

  FigureArgs figure;
  auto* cmd_figure = app.add_subcommand("figure", "Run a shipped figure preset");
  cmd_figure->add_option("--preset", figure.preset, "Preset name, e.g. fig4a")
      ->required();
  cmd_figure->add_option("--out", figure.out, "Output directory")->required();
  cmd_figure->add_option("--preset-dir", figure.preset_dir,
                         "Directory holding preset JSON files");
  cmd_figure->add_option("--jobs", figure.jobs, "Worker threads");

  VerifyArgs verify_args;
  auto* cmd_verify = app.add_subcommand("verify", "Run randomized verification suites");
  std::vector<std::string> suite_choices = verify::suite_names();
  suite_choices.push_back("all");
  cmd_verify->add_option("--suite", verify_args.suite, "Suite name or 'all'")
      ->check(CLI::IsMember(suite_choices));
  cmd_verify->add_option("--trials", verify_args.trials, "Trials per suite")
      ->check(CLI::PositiveNumber);
  cmd_verify->add_option("--seed", verify_args.seed, "Random seed");
  cmd_verify->add_option("--tolerance", verify_args.tolerance,
                         "Override the per-suite tolerance");
  cmd_verify->add_option("--out", verify_args.out, "Per-trial error CSV");

  SusceptibilityArgs sus;
  auto* cmd_sus = app.add_subcommand("susceptibility", "Sweep χ(ω)");
  cmd_sus->add_option("--alpha", sus.alpha, "Perturbation axis")
      ->check(CLI::IsMember({"x", "y", "z"}));
  cmd_sus->add_option("--beta", sus.beta, "Observed axis")
      ->check(CLI::IsMember({"x", "y", "z"}));
  cmd_sus->add_option("--omega-start", sus.omega_start, "rad/s")->required();
  cmd_sus->add_option("--omega-stop", sus.omega_stop, "rad/s")->required();
  cmd_sus->add_option("--omega-step", sus.omega_step, "rad/s")->required();
  cmd_sus->add_option("--eta", sus.eta, "Regularization rate, 1/s");
  cmd_sus->add_option("--beta-inv-temp", sus.beta_inv_temp,
                      "Inverse temperature, s·rad");
  cmd_sus->add_option("--gamma", sus.gamma, "Gyromagnetic ratio");
  cmd_sus->add_option("--field", sus.field, "Static field B (γB in rad/s)");
  cmd_sus->add_option("--bp0", sus.bp0, "Perturbation amplitude B'0");
  cmd_sus->add_option("--out", sus.out, "Output CSV")->required();

  CompileArgs comp;
  auto* cmd_compile = app.add_subcommand("compile", "Print the pulse sequence of a controlled gate");
  cmd_compile->add_option("--gate", comp.gate, "cx, cy or cz")
      ->required()->check(CLI::IsMember({"cx", "cy", "cz"}));
  cmd_compile->add_flag("--xy-only", comp.xy_only, "Expand z rotations into x/y pulses");
  cmd_compile->add_option("--delta-nu", comp.delta_nu, "System offset ν2-ν2°, Hz");
  cmd_compile->add_option("--j12", comp.j12, "J coupling, Hz");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*cmd_correlate) return run_correlate(correlate);
    if (*cmd_figure) return run_figure(figure);
    if (*cmd_verify) return run_verify(verify_args);
    if (*cmd_sus) return run_susceptibility(sus);
    if (*cmd_compile) return run_compile(comp);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
