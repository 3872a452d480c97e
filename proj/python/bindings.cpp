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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tcorr/experiment.hpp"
#include "tcorr/nmr.hpp"
#include "tcorr/oracle.hpp"
#include "tcorr/protocol.hpp"
#include "tcorr/qcore.hpp"
#include "tcorr/response.hpp"
#include "tcorr/verify.hpp"

namespace py = pybind11;
using namespace tcorr;

namespace {

// Python-side correlations are lists of (axis, time_s) tuples, innermost first.
CorrelationSpec to_spec(const std::vector<std::pair<std::string, double>>& ops) {
  CorrelationSpec spec;
  for (const auto& [axis, t] : ops) spec.ops.push_back({parse_axis(axis), t});
  return spec;
}

std::vector<std::pair<std::string, double>> from_spec(const CorrelationSpec& s) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& op : s.ops) out.emplace_back(std::string(1, axis_char(op.axis)), op.time);
  return out;
}

ConstHamiltonian make_const(double h0, double hx, double hy, double hz) {
  return {h0, hx, hy, hz};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "n-time correlation functions via an ancilla qubit";

  py::register_exception<experiment::ConfigError>(m, "ConfigError",
                                                   PyExc_ValueError);

  py::class_<ConstHamiltonian>(m, "ConstHamiltonian")
      .def(py::init(&make_const), py::arg("h0") = 0.0, py::arg("hx") = 0.0,
           py::arg("hy") = 0.0, py::arg("hz") = 0.0)
      .def_readwrite("h0", &ConstHamiltonian::h0)
      .def_readwrite("hx", &ConstHamiltonian::hx)
      .def_readwrite("hy", &ConstHamiltonian::hy)
      .def_readwrite("hz", &ConstHamiltonian::hz)
      .def("matrix", &ConstHamiltonian::matrix);

  py::class_<TimeDepHamiltonian>(m, "TimeDepHamiltonian")
      .def(py::init([](std::size_t steps) {
             TimeDepHamiltonian h;
             h.steps = steps;
             return h;
           }),
           py::arg("steps") = 1024)
      .def("add_exp_decay",
           [](TimeDepHamiltonian& h, const std::string& axis, double amplitude,
              double rate) {
             h.terms.push_back({parse_axis(axis), ExpDecay{amplitude, rate}});
           },
           py::arg("axis"), py::arg("amplitude"), py::arg("rate"))
      .def_readwrite("steps", &TimeDepHamiltonian::steps);

  py::class_<ProtocolResult>(m, "ProtocolResult")
      .def_readonly("f", &ProtocolResult::f)
      .def_readonly("sx", &ProtocolResult::sx)
      .def_readonly("sy", &ProtocolResult::sy)
      .def_readonly("r", &ProtocolResult::r)
      .def_readonly("l", &ProtocolResult::l);

  m.def("pauli", [](const std::string& axis) { return pauli(parse_axis(axis)); });
  m.def("rotation", [](const std::string& axis, double angle) {
    return rotation(parse_axis(axis), angle);
  });
  m.def("propagator_const", &propagator_const, py::arg("h"), py::arg("dt"));
  m.def("propagator_timedep", &propagator_timedep, py::arg("h"), py::arg("t0"),
        py::arg("t1"), py::arg("steps"));
  m.def("controlled_s", [](const std::string& axis) {
    return controlled_s(parse_axis(axis));
  });
  m.def("phase_correction", &phase_correction, py::arg("r"), py::arg("l"));

  m.def("run_protocol",
        [](const std::vector<std::pair<std::string, double>>& ops,
           const ConstHamiltonian& h, const StateVector& psi) {
          return run_protocol(to_spec(ops), h, psi);
        },
        py::arg("ops"), py::arg("h"), py::arg("psi"));
  m.def("run_protocol_timedep",
        [](const std::vector<std::pair<std::string, double>>& ops,
           const TimeDepHamiltonian& h, const StateVector& psi) {
          return run_protocol(to_spec(ops), h, psi);
        },
        py::arg("ops"), py::arg("h"), py::arg("psi"));
  m.def("run_protocol_thermal",
        [](const std::vector<std::pair<std::string, double>>& ops,
           const ConstHamiltonian& h, double beta) {
          return run_protocol_thermal(to_spec(ops), h, beta);
        },
        py::arg("ops"), py::arg("h"), py::arg("beta"));
  m.def("correlation_direct",
        [](const std::vector<std::pair<std::string, double>>& ops,
           const ConstHamiltonian& h, const StateVector& psi) {
          return oracle::correlation_direct(to_spec(ops), h, psi);
        },
        py::arg("ops"), py::arg("h"), py::arg("psi"));
  m.def("heisenberg_op",
        [](const std::string& axis, double t, const ConstHamiltonian& h) {
          return oracle::heisenberg_op(parse_axis(axis), t, h);
        },
        py::arg("axis"), py::arg("t"), py::arg("h"));
  m.def("run_nmr_experiment",
        [](const std::vector<std::pair<std::string, double>>& ops,
           double delta_nu_hz, const StateVector& psi, double j12) {
          return nmr::run_nmr_experiment(
              to_spec(ops), nmr::MoleculeParams::with_system_offset(delta_nu_hz, j12),
              psi);
        },
        py::arg("ops"), py::arg("delta_nu_hz"), py::arg("psi"),
        py::arg("j12") = 215.0);
  m.def("compile_controlled",
        [](const std::string& axis, bool xy_only, double delta_nu_hz, double j12) {
          return nmr::format_sequence(nmr::compile_controlled(
              parse_axis(axis),
              nmr::MoleculeParams::with_system_offset(delta_nu_hz, j12), xy_only));
        },
        py::arg("axis"), py::arg("xy_only") = false, py::arg("delta_nu_hz") = 0.0,
        py::arg("j12") = 215.0);
  m.def("build_mn_spec",
        [](const std::string& family, int n, double dt) {
          if (family != "xx" && family != "xy") {
            throw std::invalid_argument("family must be 'xx' or 'xy'");
          }
          return from_spec(experiment::build_mn_spec(
              family == "xx" ? experiment::Family::XX : experiment::Family::XY,
              n, dt));
        },
        py::arg("family"), py::arg("n"), py::arg("dt"));

  auto make_params = [](double gamma, double field, double bp0, double beta,
                        double eta) {
    response::ResponseParams p;
    p.gamma = gamma;
    p.field = field;
    p.bp0 = bp0;
    p.beta = beta;
    p.eta = eta;
    return p;
  };
  m.def("response_function",
        [make_params](const std::string& a, const std::string& b, double t,
                      double gamma, double field, double bp0, double beta) {
          return response::response_function(parse_axis(a), parse_axis(b), t,
                                              make_params(gamma, field, bp0, beta, 50.0));
        },
        py::arg("alpha"), py::arg("beta_axis"), py::arg("t"),
        py::arg("gamma") = 1.0, py::arg("field") = 100.0 * kPi,
        py::arg("bp0") = 1.0, py::arg("beta") = 0.0);
  m.def("susceptibility",
        [make_params](const std::string& a, const std::string& b,
                      std::vector<double> omega, double gamma, double field,
                      double bp0, double beta, double eta) {
          auto p = make_params(gamma, field, bp0, beta, eta);
          p.omega = std::move(omega);
          py::gil_scoped_release release;
          return response::susceptibility_sweep(parse_axis(a), parse_axis(b), p);
        },
        py::arg("alpha"), py::arg("beta_axis"), py::arg("omega"),
        py::arg("gamma") = 1.0, py::arg("field") = 100.0 * kPi,
        py::arg("bp0") = 1.0, py::arg("beta") = 0.0, py::arg("eta") = 50.0);

  m.def("correlate_csv",
        [](const std::string& config_json, unsigned jobs) {
          const auto cfg = experiment::parse_config_text(config_json);
          py::gil_scoped_release release;
          return experiment::format_csv(cfg, experiment::run_config(cfg, jobs));
        },
        py::arg("config_json"), py::arg("jobs") = 1);
  m.def("verify",
        [](const std::string& suite, std::size_t trials, std::uint64_t seed) {
          const auto r = verify::run_suite(suite, trials, seed);
          return py::make_tuple(r.pass, r.max_error, r.tolerance);
        },
        py::arg("suite"), py::arg("trials"), py::arg("seed"));
}
