#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mlqsp/cost_model.hpp"
#include "mlqsp/errors.hpp"
#include "mlqsp/filters.hpp"
#include "mlqsp/io.hpp"
#include "mlqsp/pipeline.hpp"
#include "mlqsp/qsp.hpp"
#include "mlqsp/spectral.hpp"

namespace py = pybind11;
using namespace mlqsp;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ground-state filtering with fast-forwarded Hamiltonian evolution";

  py::register_exception<solver_failure>(m, "SolverFailure", PyExc_RuntimeError);

  py::enum_<FFRegime>(m, "FFRegime")
      .value("tau_cutoff", FFRegime::tau_cutoff)
      .value("alpha_soft", FFRegime::alpha_soft);

  py::enum_<Method>(m, "Method")
      .value("multilevel", Method::multilevel)
      .value("lcu", Method::lcu)
      .value("standard_qsp", Method::standard_qsp);

  py::enum_<PhaseConvention>(m, "PhaseConvention")
      .value("qetu", PhaseConvention::qetu)
      .value("qsp", PhaseConvention::qsp);

  py::class_<SpectralHamiltonian>(m, "SpectralHamiltonian")
      .def(py::init<>())
      .def_readwrite("eigenvalues", &SpectralHamiltonian::eigenvalues)
      .def_readwrite("spectral_radius", &SpectralHamiltonian::spectral_radius)
      .def_readwrite("mu", &SpectralHamiltonian::mu)
      .def_readwrite("gap", &SpectralHamiltonian::gap)
      .def_readwrite("shift", &SpectralHamiltonian::shift)
      .def_readwrite("basis", &SpectralHamiltonian::basis)
      .def("dimension", &SpectralHamiltonian::dimension)
      .def("validate", &SpectralHamiltonian::validate)
      .def_static("from_dense", &SpectralHamiltonian::from_dense, py::arg("matrix"));

  m.def("shift_spectrum", &shift_spectrum, py::arg("h"), py::arg("shift"));
  m.def("equally_spaced_spectrum", &equally_spaced_spectrum, py::arg("h_norm"),
        py::arg("gap"), py::arg("excited_count") = 20);

  py::class_<InitialState>(m, "InitialState")
      .def(py::init<>())
      .def_readwrite("amplitudes", &InitialState::amplitudes)
      .def_readwrite("overlap", &InitialState::overlap)
      .def_static("from_amplitudes", &InitialState::from_amplitudes,
                  py::arg("amplitudes"))
      .def_static("uniform", &InitialState::uniform, py::arg("dimension"));

  py::class_<FastForwardModel>(m, "FastForwardModel")
      .def(py::init<>())
      .def_readwrite("regime", &FastForwardModel::regime)
      .def_readwrite("tau", &FastForwardModel::tau)
      .def_readwrite("alpha", &FastForwardModel::alpha)
      .def_readwrite("delta", &FastForwardModel::delta)
      .def("validate", &FastForwardModel::validate);

  py::class_<QueryCost>(m, "QueryCost")
      .def_readonly("queries", &QueryCost::queries)
      .def_readonly("gate_units", &QueryCost::gate_units);
  m.def("query_cost", &query_cost, py::arg("t"), py::arg("model"),
        py::arg("h_norm"));

  py::class_<QueryLedger>(m, "QueryLedger")
      .def(py::init<>())
      .def_readwrite("oracle_queries", &QueryLedger::oracle_queries)
      .def_readwrite("gate_units", &QueryLedger::gate_units)
      .def_readwrite("t_gates", &QueryLedger::t_gates)
      .def_readwrite("initial_state_queries", &QueryLedger::initial_state_queries)
      .def_readwrite("ancilla_qubits", &QueryLedger::ancilla_qubits)
      .def_readwrite("accumulated_error", &QueryLedger::accumulated_error);

  py::class_<FilterPolynomial>(m, "FilterPolynomial")
      .def(py::init<>())
      .def_readwrite("chebyshev_coeffs", &FilterPolynomial::chebyshev_coeffs)
      .def_readwrite("degree", &FilterPolynomial::degree)
      .def_readwrite("eps_prime", &FilterPolynomial::eps_prime);

  py::class_<FourierFilter>(m, "FourierFilter")
      .def(py::init<>())
      .def_readonly("indices", &FourierFilter::indices)
      .def_readonly("coefficients", &FourierFilter::coefficients)
      .def_readonly("times", &FourierFilter::times)
      .def_readonly("one_norm", &FourierFilter::one_norm)
      .def_readonly("h_norm", &FourierFilter::h_norm)
      .def_readonly("degree", &FourierFilter::degree)
      .def_readonly("eps", &FourierFilter::eps);

  m.def("build_two_band_filter", &build_two_band_filter, py::arg("stop_hi"),
        py::arg("pass_lo"), py::arg("eps"), py::arg("degree_cap") = 512);
  m.def("build_level_filter", &build_level_filter, py::arg("eps_prime"));
  m.def("build_cleanup_filter", &build_cleanup_filter, py::arg("mu"),
        py::arg("gap"), py::arg("eps"));
  m.def("build_heaviside_fourier", &build_heaviside_fourier, py::arg("h_norm"),
        py::arg("mu"), py::arg("gap"), py::arg("eps"));
  m.def("eval_filter",
        py::overload_cast<const FilterPolynomial&, double>(&eval_filter),
        py::arg("filter"), py::arg("x"));
  m.def("eval_fourier_filter",
        py::overload_cast<const FourierFilter&, double>(&eval_filter),
        py::arg("filter"), py::arg("x"));

  py::class_<PhaseFactorSet>(m, "PhaseFactorSet")
      .def(py::init<>())
      .def_readwrite("qetu_phases", &PhaseFactorSet::qetu_phases)
      .def_readwrite("degree", &PhaseFactorSet::degree)
      .def_readwrite("convention", &PhaseFactorSet::convention)
      .def_readwrite("residual", &PhaseFactorSet::residual)
      .def("validate", &PhaseFactorSet::validate);

  py::class_<Su2Response>(m, "Su2Response")
      .def_readonly("g_val", &Su2Response::g_val)
      .def_readonly("h_val", &Su2Response::h_val)
      .def_readonly("q_val", &Su2Response::q_val)
      .def_readonly("x", &Su2Response::x);

  m.def("qsp_unitary", &qsp_unitary, py::arg("phases_qsp"), py::arg("x"));
  m.def("qetu_response", &qetu_response, py::arg("phases"), py::arg("t"),
        py::arg("lam"));
  m.def("response_g", &response_g, py::arg("phases"), py::arg("x"));
  m.def("convert_phases", &convert_phases, py::arg("phases"), py::arg("direction"));
  m.def("golden_phase_table", &golden_phase_table);
  m.def("solve_symmetric_phase_factors", &solve_symmetric_phase_factors,
        py::arg("target"), py::arg("tol") = 1e-12, py::arg("max_iter") = 500);
  m.def("filter_from_phases", &filter_from_phases, py::arg("phases"));

  py::class_<LevelState>(m, "LevelState")
      .def(py::init<>())
      .def_readwrite("amplitudes", &LevelState::amplitudes)
      .def_readwrite("level", &LevelState::level)
      .def_readwrite("norm_sq", &LevelState::norm_sq)
      .def_static("from_initial", &LevelState::from_initial, py::arg("init"));

  py::class_<TraceRow>(m, "TraceRow")
      .def_readonly("level", &TraceRow::level)
      .def_readonly("t", &TraceRow::t)
      .def_readonly("norm_sq", &TraceRow::norm_sq)
      .def_readonly("ground_amp", &TraceRow::ground_amp)
      .def_readonly("oracle_queries_cum", &TraceRow::oracle_queries_cum);

  py::class_<CounterRegister>(m, "CounterRegister")
      .def_readonly("width", &CounterRegister::width)
      .def_readonly("value_distribution", &CounterRegister::value_distribution)
      .def("total_norm_sq", &CounterRegister::total_norm_sq);

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("final_state", &RunReport::final_state)
      .def_readonly("fidelity", &RunReport::fidelity)
      .def_readonly("ground_overlap", &RunReport::ground_overlap)
      .def_readonly("success_probability", &RunReport::success_probability)
      .def_readonly("ledger", &RunReport::ledger)
      .def_readonly("level_trace", &RunReport::level_trace)
      .def_readonly("method", &RunReport::method)
      .def_readonly("regime", &RunReport::regime)
      .def_readonly("applied_shift", &RunReport::applied_shift)
      .def_readonly("repetition_estimate", &RunReport::repetition_estimate)
      .def_readonly("aa_rounds", &RunReport::aa_rounds)
      .def_readonly("filter_degrees", &RunReport::filter_degrees)
      .def_readonly("warnings", &RunReport::warnings)
      .def_readonly("counter", &RunReport::counter);

  py::class_<MultilevelPlan>(m, "MultilevelPlan")
      .def_readonly("levels", &MultilevelPlan::levels)
      .def_readonly("times", &MultilevelPlan::times)
      .def_readonly("level_filter", &MultilevelPlan::level_filter)
      .def_readonly("level_phases", &MultilevelPlan::level_phases)
      .def_readonly("has_cleanup", &MultilevelPlan::has_cleanup)
      .def_readonly("cleanup_filter", &MultilevelPlan::cleanup_filter)
      .def_readonly("cleanup_phases", &MultilevelPlan::cleanup_phases)
      .def_readonly("eps_prime", &MultilevelPlan::eps_prime)
      .def_readonly("applied_shift", &MultilevelPlan::applied_shift);

  m.def("level_schedule", &level_schedule, py::arg("h_norm"), py::arg("mode"),
        py::arg("gap") = 0.0);
  m.def("prepare_multilevel", &prepare_multilevel, py::arg("h"), py::arg("model"),
        py::arg("eps"), py::arg("gamma"));
  m.def("run_multilevel_measured",
        py::overload_cast<const SpectralHamiltonian&, const InitialState&,
                          const FastForwardModel&, double>(&run_multilevel_measured),
        py::arg("h"), py::arg("init"), py::arg("model"), py::arg("eps"));
  m.def("run_multilevel_coherent",
        py::overload_cast<const SpectralHamiltonian&, const InitialState&,
                          const FastForwardModel&, double>(&run_multilevel_coherent),
        py::arg("h"), py::arg("init"), py::arg("model"), py::arg("eps"));
  m.def("run_standard_qsp", &run_standard_qsp, py::arg("h"), py::arg("init"),
        py::arg("eps"), py::arg("model"));
  m.def("run_lcu", &run_lcu, py::arg("h"), py::arg("init"), py::arg("eps"),
        py::arg("model"));
  m.def("inject_oracle_error", &inject_oracle_error, py::arg("h"), py::arg("init"),
        py::arg("model"), py::arg("eps"), py::arg("delta"), py::arg("seed"));
  m.def("simulate_forced_pattern", &simulate_forced_pattern, py::arg("flags"));

  py::class_<CostEstimate>(m, "CostEstimate")
      .def_readonly("oracle_queries", &CostEstimate::oracle_queries)
      .def_readonly("gate_units", &CostEstimate::gate_units)
      .def_readonly("t_gates", &CostEstimate::t_gates)
      .def_readonly("ancilla", &CostEstimate::ancilla)
      .def_readonly("oi_queries", &CostEstimate::oi_queries)
      .def_readonly("method", &CostEstimate::method)
      .def_readonly("regime", &CostEstimate::regime);

  m.def("estimate", &estimate, py::arg("method"), py::arg("regime"),
        py::arg("h_norm"), py::arg("gap"), py::arg("gamma"), py::arg("eps"),
        py::arg("tau") = 1.0, py::arg("alpha") = 0.0);
  m.def("trotter_steps", &trotter_steps, py::arg("c_t"), py::arg("p"),
        py::arg("queries"), py::arg("eps"));

  m.def("method_name", &method_name, py::arg("method"));
  m.def("regime_name", &regime_name, py::arg("regime"));
}
