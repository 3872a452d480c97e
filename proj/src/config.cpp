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
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tcorr/experiment.hpp"

namespace tcorr::experiment {

namespace {

using nlohmann::json;

std::string child(const std::string& path, const std::string& key) {
  return path + "/" + key;
}

std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

const json& require(const json& j, const std::string& key,
                    const std::string& path) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(child(path, key), "missing required field");
  }
  return j.at(key);
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
  return v;
}

double number_or(const json& j, const std::string& key, double fallback,
                 const std::string& path) {
  if (!j.contains(key)) return fallback;
  return as_number(j.at(key), child(path, key));
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

// Seconds per configured time unit.
double time_unit(const json& j, const std::string& path) {
  if (!j.contains("unit")) return 1.0;
  const std::string unit = as_string(j.at("unit"), child(path, "unit"));
  if (unit == "s") return 1.0;
  if (unit == "ms") return 1e-3;
  if (unit == "us") return 1e-6;
  throw ConfigError(child(path, "unit"), "unknown time unit '" + unit + "'");
}

// Multiplier for rad/s coefficients: "scale": "pi" means values are in
// units of π rad/s.
double coefficient_scale(const json& j, const std::string& path) {
  if (!j.contains("scale")) return 1.0;
  const std::string s = as_string(j.at("scale"), child(path, "scale"));
  if (s == "1") return 1.0;
  if (s == "pi") return kPi;
  throw ConfigError(child(path, "scale"), "expected \"1\" or \"pi\"");
}

PauliAxis parse_axis_field(const json& j, const std::string& path) {
  try {
    return parse_axis(as_string(j, path));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

Envelope parse_envelope(const json& j, const std::string& path) {
  const std::string kind = as_string(require(j, "kind", path), child(path, "kind"));
  const double scale = coefficient_scale(j, path);
  Envelope env;
  if (kind == "exp_decay") {
    env = ExpDecay{as_number(require(j, "amplitude", path),
                             child(path, "amplitude")) * scale,
                   as_number(require(j, "rate", path), child(path, "rate"))};
  } else if (kind == "sampled") {
    const double unit = time_unit(j, path);
    const json& grid = require(j, "grid", path);
    const std::string gpath = child(path, "grid");
    if (!grid.is_array()) throw ConfigError(gpath, "expected an array");
    Sampled s;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const json& pt = grid[k];
      if (!pt.is_array() || pt.size() != 2) {
        throw ConfigError(child(gpath, k), "expected [time, value]");
      }
      s.grid.emplace_back(as_number(pt[0], child(gpath, k)) * unit,
                          as_number(pt[1], child(gpath, k)) * scale);
    }
    env = std::move(s);
  } else {
    throw ConfigError(child(path, "kind"), "unknown envelope kind '" + kind + "'");
  }
  try {
    validate_envelope(env);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  return env;
}

Hamiltonian parse_hamiltonian(const json& j, const std::string& path) {
  const std::string type = as_string(require(j, "type", path), child(path, "type"));
  if (type == "const") {
    const double scale = coefficient_scale(j, path);
    return ConstHamiltonian{number_or(j, "h0", 0.0, path) * scale,
                            number_or(j, "hx", 0.0, path) * scale,
                            number_or(j, "hy", 0.0, path) * scale,
                            number_or(j, "hz", 0.0, path) * scale};
  }
  if (type == "timedep") {
    TimeDepHamiltonian h;
    if (j.contains("steps")) {
      const double steps = as_number(j.at("steps"), child(path, "steps"));
      if (steps < 1 || steps != std::floor(steps)) {
        throw ConfigError(child(path, "steps"), "must be a positive integer");
      }
      h.steps = static_cast<std::size_t>(steps);
    }
    const json& terms = require(j, "terms", path);
    const std::string tpath = child(path, "terms");
    if (!terms.is_array() || terms.empty()) {
      throw ConfigError(tpath, "expected a non-empty array");
    }
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const std::string p = child(tpath, k);
      h.terms.push_back(
          {parse_axis_field(require(terms[k], "axis", p), child(p, "axis")),
           parse_envelope(require(terms[k], "envelope", p),
                          child(p, "envelope"))});
    }
    return h;
  }
  throw ConfigError(child(path, "type"), "expected \"const\" or \"timedep\"");
}

InitialState parse_initial_state(const json& j, const std::string& path) {
  if (!j.is_object() || j.size() != 1) {
    throw ConfigError(path,
                      "expected exactly one of ket, basis, rotation, thermal");
  }
  InitialState out;
  if (j.contains("ket")) {
    const json& ket = j.at("ket");
    const std::string kpath = child(path, "ket");
    if (!ket.is_array() || ket.size() != 2) {
      throw ConfigError(kpath, "expected two [re, im] amplitudes");
    }
    StateVector psi(2);
    for (std::size_t k = 0; k < 2; ++k) {
      const json& a = ket[k];
      if (!a.is_array() || a.size() != 2) {
        throw ConfigError(child(kpath, k), "expected [re, im]");
      }
      psi(k) = Complex(as_number(a[0], child(kpath, k)),
                       as_number(a[1], child(kpath, k)));
    }
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
      throw ConfigError(kpath, "state is not normalized");
    }
    out.ket = psi;
  } else if (j.contains("basis")) {
    const std::string b = as_string(j.at("basis"), child(path, "basis"));
    const double r = 1.0 / std::sqrt(2.0);
    StateVector psi(2);
    if (b == "0") {
      psi << 1.0, 0.0;
    } else if (b == "1") {
      psi << 0.0, 1.0;
    } else if (b == "+") {
      psi << r, r;
    } else if (b == "-") {
      psi << r, -r;
    } else if (b == "+i") {
      psi << r, Complex(0.0, r);
    } else if (b == "-i") {
      psi << r, Complex(0.0, -r);
    } else {
      throw ConfigError(child(path, "basis"), "unknown basis state '" + b + "'");
    }
    out.ket = psi;
  } else if (j.contains("rotation")) {
    const json& rot = j.at("rotation");
    const std::string rpath = child(path, "rotation");
    const PauliAxis axis =
        parse_axis_field(require(rot, "axis", rpath), child(rpath, "axis"));
    double angle = 0.0;
    if (rot.contains("angle_pi") == rot.contains("angle")) {
      throw ConfigError(rpath, "give exactly one of angle, angle_pi");
    }
    if (rot.contains("angle_pi")) {
      angle = as_number(rot.at("angle_pi"), child(rpath, "angle_pi")) * kPi;
    } else {
      angle = as_number(rot.at("angle"), child(rpath, "angle"));
    }
    out.ket = rotation(axis, angle) * basis_state(2, 0);
  } else if (j.contains("thermal")) {
    const std::string tpath = child(path, "thermal");
    const double beta =
        as_number(require(j.at("thermal"), "beta", tpath), child(tpath, "beta"));
    out.beta = beta;
  } else {
    throw ConfigError(path, "expected one of ket, basis, rotation, thermal");
  }
  return out;
}

SweepAxis parse_sweep_axis(const json& j, const std::string& path) {
  SweepAxis axis;
  axis.variable = as_string(require(j, "variable", path), child(path, "variable"));
  const double unit = axis.is_order() ? 1.0 : time_unit(j, path);
  axis.start = as_number(require(j, "start", path), child(path, "start")) * unit;
  axis.stop = as_number(require(j, "stop", path), child(path, "stop")) * unit;
  axis.step = as_number(require(j, "step", path), child(path, "step")) * unit;
  if (!(axis.step > 0.0)) throw ConfigError(child(path, "step"), "must be > 0");
  if (axis.stop < axis.start) {
    throw ConfigError(child(path, "stop"), "must be >= start");
  }
  if (axis.is_order()) {
    auto integral = [](double v) { return v == std::floor(v); };
    if (!integral(axis.start) || !integral(axis.step)) {
      throw ConfigError(path, "order sweeps need integer start and step");
    }
    if (axis.start < 2) throw ConfigError(child(path, "start"), "order n must be >= 2");
  } else if (axis.variable.size() < 2 || axis.variable[0] != 't' ||
             axis.variable.find_first_not_of("0123456789", 1) !=
                 std::string::npos) {
    throw ConfigError(child(path, "variable"),
                      "expected a time variable t1, t2, ... or n");
  }
  return axis;
}

std::vector<Backend> parse_backends(const json& j, const std::string& path) {
  std::vector<std::string> names;
  if (j.is_string()) {
    names.push_back(j.get<std::string>());
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) {
      names.push_back(as_string(j[k], child(path, k)));
    }
  } else {
    throw ConfigError(path, "expected a backend name or a list of names");
  }
  bool want[3] = {false, false, false};
  for (const auto& n : names) {
    if (n == "all") {
      want[0] = want[1] = want[2] = true;
    } else if (n == "protocol") {
      want[0] = true;
    } else if (n == "oracle") {
      want[1] = true;
    } else if (n == "nmr") {
      want[2] = true;
    } else {
      throw ConfigError(path, "unknown backend '" + n + "'");
    }
  }
  std::vector<Backend> out;
  if (want[0]) out.push_back(Backend::Protocol);
  if (want[1]) out.push_back(Backend::Oracle);
  if (want[2]) out.push_back(Backend::Nmr);
  if (out.empty()) throw ConfigError(path, "no backend selected");
  return out;
}

nmr::MoleculeParams parse_molecule(const json& j, const std::string& path) {
  nmr::MoleculeParams p;
  p.nu1 = number_or(j, "nu1", p.nu1, path);
  p.nu2 = number_or(j, "nu2", p.nu2, path);
  p.nu1_ref = number_or(j, "nu1_ref", p.nu1_ref, path);
  p.nu2_ref = number_or(j, "nu2_ref", p.nu2_ref, path);
  p.j12 = number_or(j, "J12", p.j12, path);
  p.t1_relax = number_or(j, "t1_relax", p.t1_relax, path);
  p.t2_relax = number_or(j, "t2_relax", p.t2_relax, path);
  if (p.j12 == 0.0) throw ConfigError(child(path, "J12"), "must be nonzero");
  return p;
}

ExperimentConfig parse_config_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "/" : path, "expected an object");
  ExperimentConfig cfg;
  if (j.contains("label")) cfg.label = as_string(j.at("label"), child(path, "label"));
  cfg.hamiltonian =
      parse_hamiltonian(require(j, "hamiltonian", path), child(path, "hamiltonian"));
  const bool time_dependent =
      std::holds_alternative<TimeDepHamiltonian>(cfg.hamiltonian);
  cfg.initial_state = parse_initial_state(require(j, "initial_state", path),
                                          child(path, "initial_state"));
  if (cfg.initial_state.beta && time_dependent) {
    throw ConfigError(child(path, "initial_state"),
                      "thermal states need a constant Hamiltonian");
  }

  const json& sweep = require(j, "sweep", path);
  const std::string spath = child(path, "sweep");
  if (sweep.is_object()) {
    cfg.sweep.push_back(parse_sweep_axis(sweep, spath));
  } else if (sweep.is_array() && !sweep.empty()) {
    for (std::size_t k = 0; k < sweep.size(); ++k) {
      cfg.sweep.push_back(parse_sweep_axis(sweep[k], child(spath, k)));
    }
  } else {
    throw ConfigError(spath, "expected a sweep axis or a non-empty list");
  }

  const json& ops = require(j, "operators", path);
  const std::string opath = child(path, "operators");
  if (ops.is_object()) {
    OrderFamily fam;
    const std::string f = as_string(require(ops, "family", opath), child(opath, "family"));
    if (f == "xx") {
      fam.family = Family::XX;
    } else if (f == "xy") {
      fam.family = Family::XY;
    } else {
      throw ConfigError(child(opath, "family"), "expected \"xx\" or \"xy\"");
    }
    fam.dt = as_number(require(ops, "dt", opath), child(opath, "dt")) *
             time_unit(ops, opath);
    if (!(fam.dt > 0.0)) throw ConfigError(child(opath, "dt"), "must be > 0");
    if (cfg.sweep.size() != 1 || !cfg.sweep[0].is_order()) {
      throw ConfigError(spath, "an operator family needs a single sweep over n");
    }
    cfg.operators = fam;
  } else if (ops.is_array() && !ops.empty()) {
    std::vector<OperatorTemplate> list;
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const std::string p = child(opath, k);
      OperatorTemplate t;
      t.axis = parse_axis_field(require(ops[k], "axis", p), child(p, "axis"));
      const json& time = require(ops[k], "time", p);
      if (time.is_string()) {
        t.time = time.get<std::string>();
      } else {
        t.time = as_number(time, child(p, "time")) * time_unit(ops[k], p);
      }
      list.push_back(std::move(t));
    }
    // Time sweep variables must be t1..tk in order, each referenced.
    for (std::size_t k = 0; k < cfg.sweep.size(); ++k) {
      if (cfg.sweep[k].variable != "t" + std::to_string(k + 1)) {
        throw ConfigError(child(child(spath, k), "variable"),
                          "expected t" + std::to_string(k + 1));
      }
    }
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (const auto* name = std::get_if<std::string>(&list[k].time)) {
        bool known = false;
        for (const auto& axis : cfg.sweep) known |= axis.variable == *name;
        if (!known) {
          throw ConfigError(child(child(opath, k), "time"),
                            "unknown sweep variable '" + *name + "'");
        }
      }
    }
    if (const auto* t0 = std::get_if<double>(&list[0].time); !t0 || *t0 != 0.0) {
      throw ConfigError(child(child(opath, 0), "time"),
                        "the first operator must act at time 0");
    }
    cfg.operators = std::move(list);
  } else {
    throw ConfigError(opath, "expected an operator list or a family object");
  }

  cfg.backends = j.contains("backend")
                     ? parse_backends(j.at("backend"), child(path, "backend"))
                     : std::vector<Backend>{Backend::Protocol, Backend::Oracle};
  if (j.contains("molecule")) {
    cfg.molecule = parse_molecule(j.at("molecule"), child(path, "molecule"));
  }
  if (cfg.wants(Backend::Nmr) && !cfg.molecule) {
    if (const auto* h = std::get_if<ConstHamiltonian>(&cfg.hamiltonian);
        h && (h->hx != 0.0 || h->hy != 0.0)) {
      throw ConfigError(child(path, "backend"),
                        "the nmr backend needs a σz-only system Hamiltonian "
                        "or an explicit molecule");
    }
  }
  return cfg;
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin, std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& json_text) {
  return parse_config_json(parse_json_text(json_text, "/"), "");
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
  return parse_config_json(parse_json_text(read_file(path), path.string()), "");
}

Preset load_preset_file(const std::filesystem::path& path) {
  const json j = parse_json_text(read_file(path), path.string());
  Preset preset;
  preset.name = as_string(require(j, "name", ""), "/name");
  if (j.contains("description")) {
    preset.description = as_string(j.at("description"), "/description");
  }
  const json& experiments = require(j, "experiments", "");
  if (!experiments.is_array() || experiments.empty()) {
    throw ConfigError("/experiments", "expected a non-empty array");
  }
  for (std::size_t k = 0; k < experiments.size(); ++k) {
    auto cfg = parse_config_json(experiments[k], child("/experiments", k));
    if (cfg.label.empty()) {
      throw ConfigError(child(child("/experiments", k), "label"),
                        "preset experiments need a label");
    }
    preset.experiments.push_back(std::move(cfg));
  }
  return preset;
}

std::filesystem::path default_preset_dir() {
  if (const char* env = std::getenv("TCORR_PRESET_DIR")) return env;
#ifdef TCORR_PRESET_DIR
  return TCORR_PRESET_DIR;
#else
  return "presets";
#endif
}

Preset load_preset(const std::string& name, const std::filesystem::path& dir) {
  const auto base = dir.empty() ? default_preset_dir() : dir;
  const auto path = base / (name + ".json");
  if (!std::filesystem::exists(path)) {
    throw ConfigError("--preset", "no preset named '" + name + "' in " +
                                      base.string());
  }
  return load_preset_file(path);
}

}  // namespace tcorr::experiment
