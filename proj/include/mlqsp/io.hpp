#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "mlqsp/cost_model.hpp"
#include "mlqsp/pipeline.hpp"
#include "mlqsp/qsp.hpp"
#include "mlqsp/spectral.hpp"

namespace mlqsp {

// Locale-independent shortest-faithful decimal with 17 significant digits.
std::string format_double(double v);

std::string method_name(Method m);
Method method_from_name(const std::string& name);
std::string regime_name(FFRegime r);
FFRegime regime_from_name(const std::string& name);

// Hamiltonian schema: either {"eigenvalues": [...], "spectral_radius": r,
// "mu": m?, "gap": g?} or {"dense": [[entry, ...], ...]} with entries given as
// real numbers or [re, im] pairs; mu and gap default to the spectrum's
// midpoint and first gap when omitted.
nlohmann::json hamiltonian_to_json(const SpectralHamiltonian& h);
SpectralHamiltonian hamiltonian_from_json(const nlohmann::json& j);

// Initial state: the string "uniform" or an amplitude array (reals or [re,im]
// pairs). Explicit amplitudes are interpreted in the computational basis and
// rotated into the eigenbasis whenever the Hamiltonian records one.
nlohmann::json state_to_json(const InitialState& s);
InitialState state_from_json(const nlohmann::json& j, const SpectralHamiltonian& h);

// Filter schema: {"kind": "chebyshev-even"|"fourier-odd", "degree", "coeffs",
// "eps"} with "h_norm" added for Fourier filters; Fourier coeffs serialize as
// the real k=0 term followed by [re, im] pairs in index order.
nlohmann::json filter_to_json(const FilterPolynomial& g);
nlohmann::json filter_to_json(const FourierFilter& f);
FilterPolynomial chebyshev_filter_from_json(const nlohmann::json& j);
FourierFilter fourier_filter_from_json(const nlohmann::json& j);

// Phase-set schema: {"phases": [...], "degree", "convention": "qetu"|"qsp",
// "residual"}.
nlohmann::json phases_to_json(const PhaseFactorSet& p);
PhaseFactorSet phases_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const RunReport& rep);

// CSV emission: 17 significant digits, LF line endings.
std::string trace_to_csv(const RunReport& rep);
std::string scaling_to_csv(const std::vector<ScalingRow>& rows);

void write_file(const std::filesystem::path& path, const std::string& content);
nlohmann::json load_json_file(const std::filesystem::path& path);

// CLI-facing experiment description (flags and config file share this shape).
struct ExperimentConfig {
  SpectralHamiltonian hamiltonian;
  InitialState initial_state;
  Method method = Method::multilevel;
  FastForwardModel model;
  double eps = 1e-2;
  unsigned long long seed = 0;
  std::string output_dir = ".";
};

ExperimentConfig config_from_json(const nlohmann::json& j);

}  // namespace mlqsp
