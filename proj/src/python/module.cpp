// Python bindings for the main operations: protocol simulation, channels,
// benchmark tasks, readout training, and the experiment runner.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qrc/experiment.hpp"

namespace py = pybind11;
using namespace qrc;

namespace {

Eigen::MatrixXd records_to_matrix(const std::vector<StepRecord>& records) {
  return feature_matrix(records);
}

py::dict report_to_dict(const MetricReport& r) {
  py::dict d;
  d["task"] = r.task;
  d["n_or_tau"] = r.n_or_tau;
  d["a_in"] = r.a_in;
  d["a_fb"] = r.a_fb;
  d["g"] = r.g;
  d["n_meas"] = r.n_meas;
  d["gamma"] = r.gamma;
  d["feedback_observable"] = r.feedback_observable;
  d["seed"] = r.seed;
  d["value"] = r.value;
  return d;
}

py::list reports_to_list(const std::vector<MetricReport>& rows) {
  py::list out;
  for (const auto& r : rows) out.append(report_to_dict(r));
  return out;
}

}  // namespace

PYBIND11_MODULE(qrcsim, m) {
  m.doc() = "feedback-driven quantum reservoir computing simulator";

  py::class_<IsingHamiltonian>(m, "IsingHamiltonian")
      .def_readonly("n_qubits", &IsingHamiltonian::n_qubits)
      .def_readonly("couplings", &IsingHamiltonian::couplings)
      .def_readonly("field", &IsingHamiltonian::field)
      .def_readonly("energy_scale", &IsingHamiltonian::energy_scale);

  py::class_<ReservoirConfig>(m, "ReservoirConfig")
      .def(py::init([](std::uint64_t coupling_seed) {
             return ReservoirConfig::defaults(coupling_seed);
           }),
           py::arg("coupling_seed") = 1)
      .def_readwrite("n_qubits", &ReservoirConfig::n_qubits)
      .def_readwrite("a_in", &ReservoirConfig::a_in)
      .def_readwrite("a_fb", &ReservoirConfig::a_fb)
      .def_readwrite("g", &ReservoirConfig::g)
      .def_readwrite("dt", &ReservoirConfig::dt)
      .def_readwrite("depolarizing_rate", &ReservoirConfig::depolarizing_rate)
      .def_readwrite("measure_x_first", &ReservoirConfig::measure_x_first)
      .def_property(
          "feedback_observable",
          [](const ReservoirConfig& c) { return to_string(c.feedback_observable); },
          [](ReservoirConfig& c, const std::string& s) {
            c.feedback_observable = feedback_observable_from_string(s);
          })
      .def("set_finite_measurements",
           [](ReservoirConfig& c, double n_meas, std::uint64_t seed) {
             c.noise = MeasurementNoiseModel::finite(n_meas, c.g, seed);
           },
           py::arg("n_meas"), py::arg("seed") = 0)
      .def("validate", &ReservoirConfig::validate)
      .def_property_readonly("hamiltonian",
                             [](const ReservoirConfig& c) { return c.hamiltonian; });

  m.def("sample_couplings", &sample_couplings, py::arg("n_qubits"), py::arg("j_s"),
        py::arg("seed"));
  m.def("measurement_sigma", &measurement_sigma, py::arg("arity"), py::arg("g"),
        py::arg("n_meas"));
  m.def("coupling_gate_local", &coupling_gate_local, py::arg("theta"));

  m.def(
      "run_sequence",
      [](const std::vector<double>& inputs, const ReservoirConfig& cfg) {
        const auto records = run_sequence(inputs, cfg);
        py::dict out;
        out["readouts"] = records_to_matrix(records);
        std::vector<std::vector<double>> fb;
        std::vector<double> qc;
        for (const auto& r : records) {
          fb.push_back(r.feedback_values);
          qc.push_back(r.coherence);
        }
        out["feedback_values"] = fb;
        out["coherence"] = qc;
        return out;
      },
      py::arg("inputs"), py::arg("config"),
      "Run the protocol over an input sequence; returns readouts (steps x 2N), "
      "per-step feedback values, and post-evolution coherence.");

  m.def(
      "stm_dataset",
      [](int length, int delay, std::uint64_t seed) {
        const TaskDataset ds = stm_dataset(length, delay, seed);
        py::dict out;
        out["inputs"] = ds.inputs;
        out["targets"] = ds.targets;
        out["washout"] = ds.washout;
        out["train"] = ds.train;
        out["test"] = ds.test;
        return out;
      },
      py::arg("length"), py::arg("delay"), py::arg("seed"));

  m.def(
      "narma_dataset",
      [](int length, int order) {
        NarmaParams p;
        p.order = order;
        const TaskDataset ds = narma_dataset(length, p);
        py::dict out;
        out["inputs"] = ds.inputs;
        out["inputs_raw"] = ds.inputs_raw;
        out["targets"] = ds.targets;
        out["washout"] = ds.washout;
        out["train"] = ds.train;
        out["test"] = ds.test;
        return out;
      },
      py::arg("length"), py::arg("order") = 10);

  m.def(
      "train_ridge",
      [](const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double alpha) {
        const LinearReadout r = train_ridge(x, y, alpha);
        return py::make_tuple(r.weights, r.bias);
      },
      py::arg("features"), py::arg("targets"),
      py::arg("alpha") = kDefaultRidgeAlpha);
  m.def("determination_coefficient", &determination_coefficient, py::arg("y"),
        py::arg("y_hat"));
  m.def("nmse", &nmse, py::arg("y"), py::arg("y_hat"));

  m.def(
      "evaluate_stm",
      [](const ReservoirConfig& cfg, const std::vector<std::uint64_t>& seeds,
         int tau_max, int length) {
        return reports_to_list(evaluate_stm(cfg, seeds, tau_max, length));
      },
      py::arg("config"), py::arg("seeds"), py::arg("tau_max") = kTauMax,
      py::arg("length") = 1000);
  m.def(
      "evaluate_narma",
      [](const ReservoirConfig& cfg, const std::vector<std::uint64_t>& seeds,
         const std::vector<int>& orders, int length) {
        return reports_to_list(evaluate_narma(cfg, seeds, orders, length));
      },
      py::arg("config"), py::arg("seeds"), py::arg("orders"),
      py::arg("length") = 1000);

  m.def(
      "feedback_transform_verify",
      [](int n_qubits, int trials, std::uint64_t seed) {
        const auto rep = feedback_transform_verify(n_qubits, trials, seed);
        py::dict out;
        out["n_qubits"] = rep.n_qubits;
        out["trials"] = rep.trials;
        out["max_deviation"] = rep.max_deviation;
        out["passed"] = rep.passed;
        return out;
      },
      py::arg("n_qubits"), py::arg("trials") = 100, py::arg("seed") = 1);

  m.def(
      "run_experiment_json",
      [](const std::string& json_text, int threads) {
        const auto cfg = ExperimentConfig::from_json(json_text);
        return reports_to_list(run_experiment_rows(cfg, threads));
      },
      py::arg("json_text"), py::arg("threads") = 1,
      "Run a sweep described by a JSON config string; returns metric rows.");

  m.def("bundled_experiments", [] {
    py::list out;
    for (const auto& b : bundled_catalog()) {
      py::dict d;
      d["name"] = b.name;
      d["figure"] = b.figure;
      d["description"] = b.description;
      d["json"] = b.json;
      out.append(d);
    }
    return out;
  });
}
