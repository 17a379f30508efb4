#include "mlqsp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace mlqsp {

namespace {

using nlohmann::json;
using c64 = std::complex<double>;

[[noreturn]] void schema_error(const std::string& context, const std::string& detail) {
  throw invalid_argument(context + ": " + detail);
}

c64 parse_complex(const json& v, const std::string& context) {
  if (v.is_number()) return c64(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return c64(v[0].get<double>(), v[1].get<double>());
  }
  schema_error(context, "expected a real number or a [re, im] pair");
}

json complex_to_json(const c64& v) { return json::array({v.real(), v.imag()}); }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (res.ec != std::errc()) {
    throw std::runtime_error("format_double: conversion failed");
  }
  return std::string(buf, res.ptr);
}

std::string method_name(Method m) {
  switch (m) {
    case Method::multilevel: return "multilevel";
    case Method::lcu: return "lcu";
    case Method::standard_qsp: return "standard_qsp";
  }
  return "multilevel";
}

Method method_from_name(const std::string& name) {
  if (name == "multilevel") return Method::multilevel;
  if (name == "lcu") return Method::lcu;
  if (name == "standard_qsp" || name == "standard-qsp") return Method::standard_qsp;
  schema_error("method", "unknown method '" + name + "'");
}

std::string regime_name(FFRegime r) {
  return r == FFRegime::tau_cutoff ? "tau-cutoff" : "alpha-soft";
}

FFRegime regime_from_name(const std::string& name) {
  if (name == "tau-cutoff" || name == "tau_cutoff") return FFRegime::tau_cutoff;
  if (name == "alpha-soft" || name == "alpha_soft") return FFRegime::alpha_soft;
  schema_error("regime", "unknown regime '" + name + "'");
}

json hamiltonian_to_json(const SpectralHamiltonian& h) {
  json j;
  j["eigenvalues"] = h.eigenvalues;
  j["spectral_radius"] = h.spectral_radius;
  j["mu"] = h.mu;
  j["gap"] = h.gap;
  j["shift"] = h.shift;
  return j;
}

SpectralHamiltonian hamiltonian_from_json(const json& j) {
  try {
    if (!j.is_object()) schema_error("hamiltonian", "expected a JSON object");
    SpectralHamiltonian h;
    if (j.contains("dense")) {
      const json& rows = j.at("dense");
      if (!rows.is_array() || rows.empty()) {
        schema_error("hamiltonian", "'dense' must be a nonempty array of rows");
      }
      const std::size_t n = rows.size();
      Eigen::MatrixXcd mat(n, n);
      for (std::size_t r = 0; r < n; ++r) {
        if (!rows[r].is_array() || rows[r].size() != n) {
          schema_error("hamiltonian", "'dense' must be square");
        }
        for (std::size_t c = 0; c < n; ++c) {
          mat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              parse_complex(rows[r][c], "hamiltonian dense entry");
        }
      }
      h = SpectralHamiltonian::from_dense(mat);
      if (j.contains("mu")) h.mu = j.at("mu").get<double>();
      if (j.contains("gap")) h.gap = j.at("gap").get<double>();
    } else if (j.contains("eigenvalues")) {
      h.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
      if (h.eigenvalues.empty()) {
        schema_error("hamiltonian", "'eigenvalues' must be nonempty");
      }
      h.spectral_radius = j.contains("spectral_radius")
                              ? j.at("spectral_radius").get<double>()
                              : h.eigenvalues.back();
      if (h.eigenvalues.size() >= 2) {
        h.mu = j.contains("mu") ? j.at("mu").get<double>()
                                : 0.5 * (h.eigenvalues[0] + h.eigenvalues[1]);
        h.gap = j.contains("gap") ? j.at("gap").get<double>()
                                  : h.eigenvalues[1] - h.eigenvalues[0];
      } else {
        h.mu = j.value("mu", 0.0);
        h.gap = j.value("gap", 0.0);
      }
      h.shift = j.value("shift", 0.0);
    } else {
      schema_error("hamiltonian", "expected an 'eigenvalues' or 'dense' field");
    }
    h.validate();
    return h;
  } catch (const json::exception& e) {
    schema_error("hamiltonian", e.what());
  }
}

json state_to_json(const InitialState& s) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < s.amplitudes.size(); ++k) {
    arr.push_back(complex_to_json(s.amplitudes[k]));
  }
  return arr;
}

InitialState state_from_json(const json& j, const SpectralHamiltonian& h) {
  try {
    if (j.is_string()) {
      if (j.get<std::string>() == "uniform") return InitialState::uniform(h.dimension());
      schema_error("initial state", "unknown state keyword '" + j.get<std::string>() + "'");
    }
    if (!j.is_array()) {
      schema_error("initial state", "expected \"uniform\" or an amplitude array");
    }
    if (j.size() != h.dimension()) {
      schema_error("initial state", "amplitude count does not match the spectrum dimension");
    }
    Eigen::VectorXcd amp(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) {
      amp[static_cast<Eigen::Index>(k)] = parse_complex(j[k], "initial state amplitude");
    }
    if (h.basis.size() > 0) {
      amp = h.basis.adjoint() * amp;  // computational -> eigenbasis
    }
    return InitialState::from_amplitudes(std::move(amp));
  } catch (const json::exception& e) {
    schema_error("initial state", e.what());
  }
}

json filter_to_json(const FilterPolynomial& g) {
  json j;
  j["kind"] = "chebyshev-even";
  j["degree"] = g.degree;
  j["coeffs"] = g.chebyshev_coeffs;
  j["eps"] = g.eps_prime;
  return j;
}

json filter_to_json(const FourierFilter& f) {
  json coeffs = json::array();
  if (!f.coefficients.empty()) {
    coeffs.push_back(f.coefficients[0].real());
    for (std::size_t i = 1; i < f.coefficients.size(); ++i) {
      coeffs.push_back(complex_to_json(f.coefficients[i]));
    }
  }
  json j;
  j["kind"] = "fourier-odd";
  j["degree"] = f.degree;
  j["coeffs"] = std::move(coeffs);
  j["eps"] = f.eps;
  j["h_norm"] = f.h_norm;
  return j;
}

FilterPolynomial chebyshev_filter_from_json(const json& j) {
  try {
    if (j.value("kind", "") != std::string("chebyshev-even")) {
      schema_error("filter", "expected kind 'chebyshev-even'");
    }
    FilterPolynomial g;
    g.degree = j.at("degree").get<int>();
    g.chebyshev_coeffs = j.at("coeffs").get<std::vector<double>>();
    g.eps_prime = j.at("eps").get<double>();
    if (g.degree < 0 || g.degree % 2 != 0 ||
        static_cast<int>(g.chebyshev_coeffs.size()) != g.degree / 2 + 1) {
      schema_error("filter", "degree and coefficient count are inconsistent");
    }
    return g;
  } catch (const json::exception& e) {
    schema_error("filter", e.what());
  }
}

FourierFilter fourier_filter_from_json(const json& j) {
  try {
    if (j.value("kind", "") != std::string("fourier-odd")) {
      schema_error("filter", "expected kind 'fourier-odd'");
    }
    FourierFilter f;
    f.degree = j.at("degree").get<int>();
    f.eps = j.at("eps").get<double>();
    f.h_norm = j.at("h_norm").get<double>();
    const json& coeffs = j.at("coeffs");
    if (f.degree < 0 || !(f.h_norm > 0.0) || !coeffs.is_array() ||
        static_cast<int>(coeffs.size()) != 2 * f.degree + 3) {
      schema_error("filter", "degree, h_norm, and coefficient count are inconsistent");
    }
    f.coefficients.reserve(coeffs.size());
    f.coefficients.push_back(c64(coeffs[0].get<double>(), 0.0));
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
      f.coefficients.push_back(parse_complex(coeffs[i], "fourier coefficient"));
    }
    f.indices.reserve(coeffs.size());
    f.times.reserve(coeffs.size());
    f.indices.push_back(0);
    f.times.push_back(0.0);
    for (int k = 0; k <= f.degree; ++k) {
      const int m = 2 * k + 1;
      f.indices.push_back(m);
      f.times.push_back(m / f.h_norm);
      f.indices.push_back(-m);
      f.times.push_back(-m / f.h_norm);
    }
    f.one_norm = 0.0;
    for (const auto& c : f.coefficients) f.one_norm += std::abs(c);
    return f;
  } catch (const json::exception& e) {
    schema_error("filter", e.what());
  }
}

json phases_to_json(const PhaseFactorSet& p) {
  json j;
  j["phases"] = p.qetu_phases;
  j["degree"] = p.degree;
  j["convention"] = p.convention == PhaseConvention::qetu ? "qetu" : "qsp";
  j["residual"] = p.residual;
  return j;
}

PhaseFactorSet phases_from_json(const json& j) {
  try {
    PhaseFactorSet p;
    p.qetu_phases = j.at("phases").get<std::vector<double>>();
    p.degree = j.at("degree").get<int>();
    const std::string conv = j.at("convention").get<std::string>();
    if (conv == "qetu") {
      p.convention = PhaseConvention::qetu;
    } else if (conv == "qsp") {
      p.convention = PhaseConvention::qsp;
    } else {
      schema_error("phase set", "unknown convention '" + conv + "'");
    }
    p.residual = j.value("residual", 0.0);
    p.validate();
    return p;
  } catch (const json::exception& e) {
    schema_error("phase set", e.what());
  }
}

json report_to_json(const RunReport& rep) {
  json j;
  j["method"] = method_name(rep.method);
  j["regime"] = regime_name(rep.regime);
  j["fidelity"] = rep.fidelity;
  j["ground_overlap"] = rep.ground_overlap;
  j["success_probability"] = rep.success_probability;
  j["applied_shift"] = rep.applied_shift;
  j["repetition_estimate"] = rep.repetition_estimate;
  j["aa_rounds"] = rep.aa_rounds;
  j["filter_degrees"] = rep.filter_degrees;
  j["warnings"] = rep.warnings;
  j["ledger"] = {{"oracle_queries", rep.ledger.oracle_queries},
                 {"gate_units", rep.ledger.gate_units},
                 {"t_gates", rep.ledger.t_gates},
                 {"initial_state_queries", rep.ledger.initial_state_queries},
                 {"ancilla_qubits", rep.ledger.ancilla_qubits},
                 {"accumulated_error", rep.ledger.accumulated_error}};
  json amps = json::array();
  for (Eigen::Index k = 0; k < rep.final_state.amplitudes.size(); ++k) {
    amps.push_back(complex_to_json(rep.final_state.amplitudes[k]));
  }
  j["final_state"] = {{"level", rep.final_state.level},
                      {"norm_sq", rep.final_state.norm_sq},
                      {"amplitudes", std::move(amps)}};
  json trace = json::array();
  for (const TraceRow& r : rep.level_trace) {
    trace.push_back({{"level", r.level},
                     {"t", r.t},
                     {"norm_sq", r.norm_sq},
                     {"ground_amp", r.ground_amp},
                     {"oracle_queries_cum", r.oracle_queries_cum}});
  }
  j["level_trace"] = std::move(trace);
  if (rep.counter.width > 0) j["counter_width"] = rep.counter.width;
  return j;
}

std::string trace_to_csv(const RunReport& rep) {
  std::string out = "level,t,norm_sq,ground_amp,oracle_queries_cum\n";
  for (const TraceRow& r : rep.level_trace) {
    out += std::to_string(r.level);
    out += ',';
    out += format_double(r.t);
    out += ',';
    out += format_double(r.norm_sq);
    out += ',';
    out += format_double(r.ground_amp);
    out += ',';
    out += std::to_string(r.oracle_queries_cum);
    out += '\n';
  }
  return out;
}

std::string scaling_to_csv(const std::vector<ScalingRow>& rows) {
  const bool any_sim =
      std::any_of(rows.begin(), rows.end(), [](const ScalingRow& r) { return r.has_simulated; });
  std::string out =
      "method,regime,H_norm,gap,gamma,eps,tau,alpha,oracle_queries,gate_units,"
      "t_gates,ancilla,oi_queries";
  if (any_sim) out += ",sim_oracle_queries,sim_gate_units,ratio_oracle_queries";
  out += '\n';
  for (const ScalingRow& r : rows) {
    out += method_name(r.est.method);
    out += ',';
    out += regime_name(r.est.regime);
    for (const double v : {r.h_norm, r.gap, r.gamma, r.eps, r.tau, r.alpha,
                           r.est.oracle_queries, r.est.gate_units, r.est.t_gates}) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += std::to_string(r.est.ancilla);
    out += ',';
    out += format_double(r.est.oi_queries);
    if (any_sim) {
      if (r.has_simulated) {
        out += ',';
        out += format_double(r.sim_oracle_queries);
        out += ',';
        out += format_double(r.sim_gate_units);
        out += ',';
        out += format_double(r.est.oracle_queries > 0.0
                                 ? r.sim_oracle_queries / r.est.oracle_queries
                                 : 0.0);
      } else {
        out += ",,,";
      }
    }
    out += '\n';
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw invalid_argument("cannot open '" + path.string() + "'");
  }
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw invalid_argument("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

ExperimentConfig config_from_json(const json& j) {
  try {
    if (!j.is_object()) schema_error("config", "expected a JSON object");
    ExperimentConfig c;
    c.hamiltonian = hamiltonian_from_json(j.at("hamiltonian"));
    if (j.contains("initial_state")) {
      c.initial_state = state_from_json(j.at("initial_state"), c.hamiltonian);
    } else {
      c.initial_state = InitialState::uniform(c.hamiltonian.dimension());
    }
    if (j.contains("method")) c.method = method_from_name(j.at("method").get<std::string>());
    if (j.contains("regime")) c.model.regime = regime_from_name(j.at("regime").get<std::string>());
    c.model.tau = j.value("tau", 1.0);
    c.model.alpha = j.value("alpha", 0.0);
    c.model.delta = j.value("delta", 0.0);
    c.eps = j.value("eps", 1e-2);
    c.seed = j.value("seed", static_cast<unsigned long long>(0));
    c.output_dir = j.value("output_dir", std::string("."));
    c.model.validate();
    if (!(c.eps > 0.0 && c.eps < 1.0)) {
      schema_error("config", "eps must lie in (0, 1)");
    }
    return c;
  } catch (const json::exception& e) {
    schema_error("config", e.what());
  }
}

}  // namespace mlqsp
