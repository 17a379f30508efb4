#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "mlqsp/cost_model.hpp"
#include "mlqsp/errors.hpp"
#include "mlqsp/filters.hpp"
#include "mlqsp/io.hpp"
#include "mlqsp/pipeline.hpp"
#include "mlqsp/qsp.hpp"
#include "mlqsp/spectral.hpp"

namespace fs = std::filesystem;
using namespace mlqsp;

namespace {

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream stream(text);
  while (std::getline(stream, tok, ',')) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& tok : split_csv(text)) {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) {
      throw invalid_argument("expected a comma-separated list of numbers, got '" +
                             tok + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) {
    throw invalid_argument("expected a non-empty comma-separated list of numbers");
  }
  return out;
}

void write_report_files(const RunReport& rep, const std::string& dir) {
  const fs::path base(dir);
  write_file((base / "report.json").string(), report_to_json(rep).dump(2) + "\n");
  write_file((base / "trace.csv").string(), trace_to_csv(rep));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Ground-state filters via fast-forwarded evolution: phase solving, "
      "filter construction, pipeline simulation, and query-cost comparison"};
  app.require_subcommand(1);

  // ---------------------------------------------------------------- solve-phases
  auto* solve = app.add_subcommand(
      "solve-phases", "Solve symmetric phase factors for an even filter polynomial");
  std::string sp_filter;
  std::string sp_out = "phases.json";
  bool sp_golden = false;
  double sp_constant = 0.0;
  double sp_tol = 1e-12;
  auto* sp_filter_opt =
      solve->add_option("--filter", sp_filter, "Chebyshev filter JSON to realize");
  auto* sp_const_opt = solve->add_option("--constant", sp_constant,
                                         "Degree-0 constant target value");
  solve->add_flag("--golden-target", sp_golden,
                  "Target the polynomial induced by the built-in reference table");
  solve->add_option("--tol", sp_tol, "Node residual tolerance");
  solve->add_option("--out", sp_out, "Output phase-set JSON path");
  solve->callback([&] {
    const int sources = static_cast<int>(sp_filter_opt->count() > 0) +
                        static_cast<int>(sp_const_opt->count() > 0) +
                        static_cast<int>(sp_golden);
    if (sources != 1) {
      throw invalid_argument(
          "solve-phases: give exactly one of --filter, --constant, --golden-target");
    }
    FilterPolynomial target;
    if (sp_filter_opt->count() > 0) {
      target = chebyshev_filter_from_json(load_json_file(sp_filter));
    } else if (sp_golden) {
      target = filter_from_phases(golden_phase_table());
    } else {
      target.degree = 0;
      target.chebyshev_coeffs = {sp_constant};
    }
    const PhaseFactorSet set = solve_symmetric_phase_factors(target, sp_tol);
    write_file(sp_out, phases_to_json(set).dump(2) + "\n");
    std::cout << "degree " << set.degree << "\n"
              << "residual " << format_double(set.residual) << "\n"
              << "wrote " << sp_out << "\n";
  });

  // ---------------------------------------------------------------- build-filter
  auto* build = app.add_subcommand(
      "build-filter", "Construct an even Chebyshev filter or an odd Fourier filter");
  std::string bf_kind = "level";
  std::string bf_out = "filter.json";
  double bf_eps = 1e-2;
  double bf_mu = 0.5;
  double bf_gap = 1.0;
  double bf_h = 20.0;
  double bf_pass = 0.92;
  double bf_stop = 0.70;
  int bf_cap = 512;
  build->add_option("--kind", bf_kind, "level | cleanup | two-band | heaviside")
      ->check(CLI::IsMember({"level", "cleanup", "two-band", "heaviside"}));
  build->add_option("--eps", bf_eps, "Uniform error budget");
  build->add_option("--mu", bf_mu, "Band center (cleanup / heaviside)");
  build->add_option("--gap", bf_gap, "Band width (cleanup / heaviside)");
  build->add_option("--h-norm", bf_h, "Spectral radius (heaviside)");
  build->add_option("--pass-lo", bf_pass, "Pass-band lower edge (two-band)");
  build->add_option("--stop-hi", bf_stop, "Stop-band upper edge (two-band)");
  build->add_option("--degree-cap", bf_cap, "Maximum degree (two-band)");
  build->add_option("--out", bf_out, "Output filter JSON path");
  build->callback([&] {
    if (bf_kind == "heaviside") {
      const FourierFilter f = build_heaviside_fourier(bf_h, bf_mu, bf_gap, bf_eps);
      write_file(bf_out, filter_to_json(f).dump(2) + "\n");
      std::cout << "kind heaviside\n"
                << "degree " << f.degree << "\n"
                << "one_norm " << format_double(f.one_norm) << "\n"
                << "wrote " << bf_out << "\n";
      return;
    }
    FilterPolynomial g;
    if (bf_kind == "level") {
      g = build_level_filter(bf_eps);
    } else if (bf_kind == "cleanup") {
      g = build_cleanup_filter(bf_mu, bf_gap, bf_eps);
    } else {
      g = build_two_band_filter(bf_stop, bf_pass, bf_eps, bf_cap);
    }
    write_file(bf_out, filter_to_json(g).dump(2) + "\n");
    std::cout << "kind " << bf_kind << "\n"
              << "degree " << g.degree << "\n"
              << "achieved_error " << format_double(g.eps_prime) << "\n"
              << "wrote " << bf_out << "\n";
  });

  // ------------------------------------------------------------------------ run
  auto* runc = app.add_subcommand("run", "Execute a ground-state filtering pipeline");
  std::string r_config;
  std::string r_method;
  std::string r_regime;
  std::string r_outdir;
  double r_eps = 0.0, r_tau = 0.0, r_alpha = 0.0, r_delta = 0.0;
  std::uint64_t r_seed = 0;
  bool r_coherent = false;
  runc->add_option("--config", r_config, "Experiment config JSON")->required();
  auto* r_method_o =
      runc->add_option("--method", r_method, "multilevel | lcu | standard_qsp");
  auto* r_regime_o = runc->add_option("--regime", r_regime, "tau-cutoff | alpha-soft");
  auto* r_eps_o = runc->add_option("--eps", r_eps, "Target accuracy");
  auto* r_tau_o = runc->add_option("--tau", r_tau, "Time cutoff");
  auto* r_alpha_o = runc->add_option("--alpha", r_alpha, "Soft cost exponent");
  auto* r_delta_o = runc->add_option("--delta", r_delta, "Per-query oracle error");
  auto* r_seed_o = runc->add_option("--seed", r_seed, "Random seed");
  auto* r_outdir_o = runc->add_option("--output-dir", r_outdir, "Output directory");
  runc->add_flag("--coherent", r_coherent,
                 "Coherent compression-gadget run (multilevel only)");
  runc->callback([&] {
    ExperimentConfig cfg = config_from_json(load_json_file(r_config));
    if (r_method_o->count() > 0) cfg.method = method_from_name(r_method);
    if (r_regime_o->count() > 0) cfg.model.regime = regime_from_name(r_regime);
    if (r_eps_o->count() > 0) cfg.eps = r_eps;
    if (r_tau_o->count() > 0) cfg.model.tau = r_tau;
    if (r_alpha_o->count() > 0) cfg.model.alpha = r_alpha;
    if (r_delta_o->count() > 0) cfg.model.delta = r_delta;
    if (r_seed_o->count() > 0) cfg.seed = r_seed;
    if (r_outdir_o->count() > 0) cfg.output_dir = r_outdir;
    cfg.model.validate();
    if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) {
      throw invalid_argument("run: eps must lie in (0, 1)");
    }
    if (r_coherent && cfg.method != Method::multilevel) {
      throw invalid_argument("run: --coherent applies to the multilevel method only");
    }
    RunReport rep;
    switch (cfg.method) {
      case Method::multilevel:
        rep = r_coherent ? run_multilevel_coherent(cfg.hamiltonian, cfg.initial_state,
                                                   cfg.model, cfg.eps)
                         : run_multilevel_measured(cfg.hamiltonian, cfg.initial_state,
                                                   cfg.model, cfg.eps);
        break;
      case Method::standard_qsp:
        rep = run_standard_qsp(cfg.hamiltonian, cfg.initial_state, cfg.eps, cfg.model);
        break;
      case Method::lcu:
        rep = run_lcu(cfg.hamiltonian, cfg.initial_state, cfg.eps, cfg.model);
        break;
    }
    write_report_files(rep, cfg.output_dir);
    std::cout << "method " << method_name(rep.method) << "\n"
              << "fidelity " << format_double(rep.fidelity) << "\n"
              << "success_probability " << format_double(rep.success_probability)
              << "\n"
              << "oracle_queries " << rep.ledger.oracle_queries << "\n"
              << "wrote " << (fs::path(cfg.output_dir) / "report.json").string()
              << "\n";
    for (const std::string& w : rep.warnings) std::cout << "warning: " << w << "\n";
  });

  // -------------------------------------------------------------------- compare
  auto* cmp = app.add_subcommand(
      "compare", "Tabulate estimated (and optionally simulated) query costs");
  std::string c_grid = "8,16,32,64,128,256,512,1024";
  std::string c_methods = "multilevel,standard_qsp";
  std::string c_regime = "tau-cutoff";
  double c_gap = 1.0;
  double c_gamma = 0.21821789023599236;  // uniform overlap for 21 eigenvalues
  double c_eps = 1e-2;
  double c_tau = 1.0;
  double c_alpha = 0.0;
  bool c_sim = false;
  std::string c_out = "scaling.csv";
  std::string c_curve;
  cmp->add_option("--h-grid", c_grid, "Comma-separated spectral radii");
  cmp->add_option("--methods", c_methods,
                  "Comma-separated subset of multilevel,lcu,standard_qsp");
  cmp->add_option("--regime", c_regime, "tau-cutoff | alpha-soft");
  cmp->add_option("--gap", c_gap, "Spectral gap");
  cmp->add_option("--gamma", c_gamma, "Initial overlap lower bound");
  cmp->add_option("--eps", c_eps, "Target accuracy");
  cmp->add_option("--tau", c_tau, "Time cutoff");
  cmp->add_option("--alpha", c_alpha, "Soft cost exponent");
  cmp->add_flag("--simulate", c_sim,
                "Also run each pipeline on a synthetic equally spaced spectrum");
  cmp->add_option("--out", c_out, "Output scaling CSV path");
  cmp->add_option("--curve", c_curve,
                  "Optional CSV of the two filter response curves over [0, 20]");
  cmp->callback([&] {
    const std::vector<double> grid = parse_double_list(c_grid);
    std::vector<Method> methods;
    for (const std::string& tok : split_csv(c_methods)) {
      methods.push_back(method_from_name(tok));
    }
    if (methods.empty()) {
      throw invalid_argument("compare: --methods must name at least one method");
    }
    const FFRegime regime = regime_from_name(c_regime);
    std::vector<ScalingRow> rows =
        scaling_table(methods, regime, grid, c_gap, c_gamma, c_eps, c_tau, c_alpha);
    if (c_sim) {
      FastForwardModel model;
      model.regime = regime;
      model.tau = c_tau;
      model.alpha = c_alpha;
      for (ScalingRow& row : rows) {
        const SpectralHamiltonian h = equally_spaced_spectrum(row.h_norm, c_gap);
        const InitialState init = InitialState::uniform(h.dimension());
        RunReport rep;
        switch (row.est.method) {
          case Method::multilevel:
            rep = run_multilevel_measured(h, init, model, c_eps);
            break;
          case Method::standard_qsp:
            rep = run_standard_qsp(h, init, c_eps, model);
            break;
          case Method::lcu:
            rep = run_lcu(h, init, c_eps, model);
            break;
        }
        row.has_simulated = true;
        row.sim_oracle_queries = rep.ledger.oracle_queries;
        row.sim_gate_units = rep.ledger.gate_units;
      }
    }
    write_file(c_out, scaling_to_csv(rows));
    std::cout << "rows " << rows.size() << "\n"
              << "wrote " << c_out << "\n";
    if (c_curve.empty()) return;
    // Response curves of the two constructions over a shared spectral range.
    const double h_curve = 20.0;
    const SpectralHamiltonian h = equally_spaced_spectrum(h_curve, c_gap);
    FastForwardModel model;
    model.regime = regime;
    model.tau = c_tau;
    model.alpha = c_alpha;
    const MultilevelPlan plan = prepare_multilevel(h, model, c_eps, c_gamma);
    const StandardPlan splan = prepare_standard_qsp(h, c_eps, c_gamma);
    std::string csv = "lambda,multilevel,standard\n";
    const int points = 1000;
    for (int i = 0; i < points; ++i) {
      const double lam = h_curve * static_cast<double>(i) /
                         static_cast<double>(points - 1);
      double ml = 1.0;
      const double lam_ml = lam + plan.applied_shift;
      for (double t : plan.times) {
        ml *= eval_filter(plan.level_filter, std::cos(lam_ml * t / 2.0));
      }
      if (plan.has_cleanup) {
        ml *= eval_filter(plan.cleanup_filter, std::cos(lam_ml / 2.0));
      }
      const double sd =
          eval_filter(splan.filter,
                      std::cos((lam + splan.shift) * splan.t / 2.0));
      csv += format_double(lam);
      csv += ',';
      csv += format_double(ml);
      csv += ',';
      csv += format_double(sd);
      csv += '\n';
    }
    write_file(c_curve, csv);
    std::cout << "wrote " << c_curve << "\n";
  });

  // --------------------------------------------------------------- inject-error
  auto* inj = app.add_subcommand(
      "inject-error", "Run the multilevel pipeline with per-query phase noise");
  std::string i_config;
  std::string i_outdir;
  double i_delta = 0.0;
  std::uint64_t i_seed = 0;
  inj->add_option("--config", i_config, "Experiment config JSON")->required();
  inj->add_option("--delta", i_delta, "Per-query oracle error bound")->required();
  auto* i_seed_o = inj->add_option("--seed", i_seed, "Random seed");
  auto* i_outdir_o = inj->add_option("--output-dir", i_outdir, "Output directory");
  inj->callback([&] {
    ExperimentConfig cfg = config_from_json(load_json_file(i_config));
    if (i_seed_o->count() > 0) cfg.seed = i_seed;
    if (i_outdir_o->count() > 0) cfg.output_dir = i_outdir;
    auto [rep, deviation] = inject_oracle_error(
        cfg.hamiltonian, cfg.initial_state, cfg.model, cfg.eps, i_delta, cfg.seed);
    write_report_files(rep, cfg.output_dir);
    std::cout << "oracle_queries " << rep.ledger.oracle_queries << "\n"
              << "deviation " << format_double(deviation) << "\n"
              << "bound " << format_double(rep.ledger.accumulated_error) << "\n"
              << "wrote " << (fs::path(cfg.output_dir) / "report.json").string()
              << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const solver_failure& e) {
    std::cerr << "solver failure: " << e.what() << " (best residual "
              << format_double(e.best_residual) << ")\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "precondition violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
