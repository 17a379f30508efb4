#pragma once

#include <vector>

#include "mlqsp/errors.hpp"
#include "mlqsp/spectral.hpp"

namespace mlqsp {

// Closed-form scaling estimate with all implied constants set to 1 and
// logarithms base 2. These are scaling references for cross-checking the
// simulated ledgers, not gate counts.
struct CostEstimate {
  double oracle_queries = 0.0;
  double gate_units = 0.0;
  double t_gates = 0.0;
  long long ancilla = 0;
  double oi_queries = 0.0;  // initial-state oracle factor, 1/gamma with amplification
  Method method = Method::multilevel;
  FFRegime regime = FFRegime::tau_cutoff;
};

CostEstimate estimate(Method method, FFRegime regime, double h_norm, double gap,
                      double gamma, double eps, double tau, double alpha);

// One row of the comparison table; simulated columns are filled by callers
// that also ran the pipeline.
struct ScalingRow {
  CostEstimate est;
  double h_norm = 0.0;
  double gap = 0.0;
  double gamma = 0.0;
  double eps = 0.0;
  double tau = 0.0;
  double alpha = 0.0;
  bool has_simulated = false;
  double sim_oracle_queries = 0.0;
  double sim_gate_units = 0.0;
};

// Deterministic method x h_norm grid of estimates at fixed remaining
// parameters. Grid must be nonempty.
std::vector<ScalingRow> scaling_table(const std::vector<Method>& methods,
                                      FFRegime regime,
                                      const std::vector<double>& h_grid, double gap,
                                      double gamma, double eps, double tau,
                                      double alpha);

// Trotter-step inversion r = (c_t * queries / eps)^(1/p) for a p-th order
// product formula with error constant c_t.
double trotter_steps(double c_t, double p, double queries, double eps);

}  // namespace mlqsp
