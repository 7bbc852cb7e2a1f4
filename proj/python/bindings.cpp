// Copyright 2026 The clockpress Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "clockpress/channels.hpp"
#include "clockpress/clockstate.hpp"
#include "clockpress/compressor.hpp"
#include "clockpress/experiment.hpp"
#include "clockpress/oracle.hpp"
#include "clockpress/repkit.hpp"

namespace py = pybind11;
using namespace clockpress;

namespace {

// Spins and magnetic numbers cross the boundary as floats (0.5, 1, 1.5, ...).
Spin spin(double j) { return Spin::from_double(j); }

int twice(double m) {
  const double t = 2.0 * m;
  if (std::abs(t - std::round(t)) > 1e-9) throw std::invalid_argument("not a half-integer");
  return static_cast<int>(std::lround(t));
}

py::dict window_dict(const channels::Window& w) {
  py::dict d;
  d["j"] = w.j.value();
  d["s"] = w.s;
  d["center"] = w.center;
  d["half_width"] = w.half_width;
  std::vector<double> kept;
  for (int tm : w.kept_twice_m()) kept.push_back(0.5 * tm);
  d["kept"] = kept;
  return d;
}

py::dict report_dict(const ErrorReport& r, double x) {
  const MemoryReport m = memory_report(r.record, x);
  py::dict d;
  d["epsilon"] = r.epsilon;
  d["epsilon_upper"] = r.epsilon_upper;
  d["tail_mass"] = r.tail_mass;
  d["t_grid"] = r.t_grid;
  d["per_t"] = r.per_t;
  d["covariance_spread"] = r.covariance_spread;
  d["quantum_dim"] = r.record.quantum_dim;
  d["classical_count"] = r.record.classical_count;
  d["qubits_exact"] = m.qubits_exact;
  d["qubit_bound"] = m.qubit_bound;
  d["cbits_exact"] = m.cbits_exact;
  d["cbits_ceil"] = m.cbits_ceil;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Qubit-clock compression simulator (C++ core)";

  py::register_exception<experiment::ConfigError>(mod, "ConfigError", PyExc_ValueError);
  py::register_exception<oracle::SizeRefusal>(mod, "SizeRefusal", PyExc_RuntimeError);

  mod.def(
      "clebsch_gordan",
      [](double j1, double m1, double j2, double m2, double J, double M) {
        return repkit::clebsch_gordan(spin(j1), twice(m1), spin(j2), twice(m2), spin(J), twice(M));
      },
      py::arg("j1"), py::arg("m1"), py::arg("j2"), py::arg("m2"), py::arg("J"), py::arg("M"));
  mod.def(
      "wigner_d", [](double j, double theta) { return repkit::wigner_d(spin(j), theta); },
      py::arg("j"), py::arg("theta"), "Small-d matrix, rows and columns ordered m = j..-j.");
  mod.def(
      "multiplicity", [](int n, double j) { return repkit::multiplicity(n, spin(j)); }, py::arg("n"),
      py::arg("j"));
  mod.def("rotation_angle", &repkit::rotation_angle, py::arg("s"));

  mod.def(
      "qj_weights",
      [](int n, double p) {
        std::vector<std::pair<double, double>> out;
        for (const SpinWeight& w : qj_weights(n, p)) out.emplace_back(w.j.value(), w.q);
        return out;
      },
      py::arg("n"), py::arg("p"), "List of (J, q_J) from J = n/2 downward.");
  mod.def(
      "rho_pJ", [](double p, double j, double s) { return rho_pJ(p, spin(j), s); }, py::arg("p"),
      py::arg("j"), py::arg("s"));
  mod.def(
      "evolve", [](const CMatrix& mat, double t) { return evolve(mat, t); }, py::arg("mat"), py::arg("t"));

  mod.def(
      "convert", [](double j, double k, const CMatrix& mat) { return channels::convert(spin(j), spin(k), mat); },
      py::arg("J"), py::arg("K"), py::arg("mat"));
  mod.def(
      "frequency_projection",
      [](double j, double s, const CMatrix& mat, std::optional<CMatrix> fallback) {
        return channels::frequency_projection(spin(j), s, mat, fallback);
      },
      py::arg("J"), py::arg("s"), py::arg("mat"), py::arg("fallback") = py::none());
  mod.def(
      "make_window", [](double j, double s) { return window_dict(channels::make_window(spin(j), s)); },
      py::arg("J"), py::arg("s"));
  mod.def(
      "projection_error_bound", [](double j, double p) { return channels::projection_error_bound(spin(j), p); },
      py::arg("J"), py::arg("p"));

  mod.def(
      "make_partition",
      [](int n, double x) {
        const Partition part = make_partition(n, x);
        py::dict d;
        d["b"] = part.b;
        d["r"] = part.r;
        d["r_satisfies_constraint"] = part.r_satisfies_constraint;
        py::list intervals;
        for (int i = 1; i <= part.b; ++i) {
          std::vector<double> spins;
          for (Spin j : part.spins_in(i)) spins.push_back(j.value());
          intervals.append(spins);
        }
        d["intervals"] = intervals;
        return d;
      },
      py::arg("n"), py::arg("x"), "Intervals list spins in descending order.");
  mod.def("error_bound", &error_bound, py::arg("n"), py::arg("p"));
  mod.def(
      "compression_error",
      [](int n, double p, double s, const std::string& mode, double x, std::optional<std::vector<double>> t_grid,
         bool restrict_tail, int threads) {
        ErrorOptions options;
        if (t_grid) options.t_grid = *t_grid;
        options.restrict_tail = restrict_tail;
        options.threads = threads;
        py::gil_scoped_release release;
        const ErrorReport r = compression_error({n, s, p, 0.0}, parse_mode(mode), x, options);
        py::gil_scoped_acquire acquire;
        return report_dict(r, x);
      },
      py::arg("n"), py::arg("p"), py::arg("s") = 0.5, py::arg("mode") = "unknown", py::arg("x") = 0.1,
      py::arg("t_grid") = py::none(), py::arg("restrict_tail") = true, py::arg("threads") = 1);
  mod.def(
      "starved_run", [](int n, double p, double s, double w) { return starved_run({n, s, p, 0.0}, w); },
      py::arg("n"), py::arg("p") = 1.0, py::arg("s") = 0.5, py::arg("w") = 0.3);

  mod.def(
      "oracle_convert",
      [](double j, double k, const CMatrix& mat) { return oracle::oracle_convert(spin(j), spin(k), mat); },
      py::arg("J"), py::arg("K"), py::arg("mat"));
  mod.def(
      "full_product_state", [](int n, double p, double s, double t) { return oracle::full_product_state({n, s, p, t}); },
      py::arg("n"), py::arg("p"), py::arg("s"), py::arg("t") = 0.0);

  mod.def(
      "run_experiment",
      [](const std::string& preset, const std::map<std::string, std::string>& options) {
        experiment::KeyValues flags(options.begin(), options.end());
        const experiment::ExperimentConfig config =
            experiment::parse_config(experiment::parse_preset(preset), {}, flags);
        experiment::RunOutcome outcome;
        {
          py::gil_scoped_release release;
          outcome = experiment::run(config);
        }
        std::ostringstream csv;
        experiment::write_csv(csv, outcome.rows);
        return py::make_tuple(csv.str(), outcome.diagnostics, outcome.tolerance_failure);
      },
      py::arg("preset"), py::arg("options"),
      "Runs a CLI preset; options use config-file keys. Returns (csv, diagnostics, tolerance_failure).");
}
