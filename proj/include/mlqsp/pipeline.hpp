#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "mlqsp/filters.hpp"
#include "mlqsp/qsp.hpp"
#include "mlqsp/spectral.hpp"

namespace mlqsp {

// Unnormalized state over the eigenbasis after `level` filter stages.
struct LevelState {
  Eigen::VectorXcd amplitudes;
  int level = 0;
  double norm_sq = 0.0;  // cached sum of |amplitude|^2

  void refresh_norm();
  void validate() const;  // cache fresh within 1e-12, norm_sq <= 1 + 1e-10
  static LevelState from_initial(const InitialState& init);
};

// Compression-gadget counter of width m, entangled with the reusable branch
// ancilla and the system register: value_distribution[c] is the unnormalized
// amplitude vector attached to counter basis state |c>, laid out as the
// ancilla-0 block followed by the ancilla-1 block (dimension 2N for an
// N-dimensional system). Keeping the branch ancilla explicit makes every
// gadget stage unitary, so the total squared norm is conserved exactly.
struct CounterRegister {
  int width = 0;
  std::vector<Eigen::VectorXcd> value_distribution;  // size 2^width

  double total_norm_sq() const;
};

struct TraceRow {
  int level = 0;
  double t = 0.0;
  double norm_sq = 0.0;
  double ground_amp = 0.0;
  long long oracle_queries_cum = 0;
};

struct RunReport {
  LevelState final_state;
  double fidelity = 0.0;             // |<psi0|phi>| / ||phi||
  double ground_overlap = 0.0;       // |<psi0|phi>| unnormalized
  double success_probability = 0.0;  // ||phi||^2
  QueryLedger ledger;
  std::vector<TraceRow> level_trace;

  Method method = Method::multilevel;
  FFRegime regime = FFRegime::tau_cutoff;
  double applied_shift = 0.0;            // spectrum shift applied before the run
  long long repetition_estimate = 0;     // ceil(ln 3 / p_success), measured runs
  long long aa_rounds = 0;               // ceil(pi / (4 asin ||phi||)), coherent runs
  std::vector<int> filter_degrees;       // per stage, in application order
  std::vector<std::string> warnings;
  CounterRegister counter;               // populated by coherent runs
};

// Pre-built filters and phase factors for a multi-level run. The same level
// filter is reused at every level (the bands are fixed in x-space); the
// clean-up stage exists only in tau-cutoff mode.
struct MultilevelPlan {
  int levels = 0;
  std::vector<double> times;  // t_l = 2^l / ||H||, l = 1..levels
  FilterPolynomial level_filter;
  PhaseFactorSet level_phases;
  bool has_cleanup = false;
  FilterPolynomial cleanup_filter;
  PhaseFactorSet cleanup_phases;
  double eps_prime = 0.0;      // per-level target gamma * eps
  double applied_shift = 0.0;  // shift applied to satisfy the positioning condition
  std::vector<std::string> warnings;
};

// Level count and time schedule t_l = 2^l / h_norm. tau-cutoff mode requires
// h_norm >= pi and returns L = ceil(log2(h_norm/2)); alpha-soft mode requires
// gap > 0 and returns ceil(log2(pi h_norm / (4 gap))), which must be >= 1.
std::pair<int, std::vector<double>> level_schedule(double h_norm, FFRegime mode,
                                                   double gap = 0.0);

// Builds schedule, level filter, clean-up filter, and their phase factors for
// eps' = gamma * eps; records any automatic spectrum shift and warnings.
MultilevelPlan prepare_multilevel(const SpectralHamiltonian& h,
                                  const FastForwardModel& model, double eps,
                                  double gamma);

// One QETU stage: multiplies amplitude k by g(cos(lambda_k t / 2)) and debits
// degree-many controlled-evolution segments of duration t.
LevelState apply_qetu_level(const SpectralHamiltonian& h, const LevelState& state,
                            const PhaseFactorSet& phases, double t,
                            const FastForwardModel& model, QueryLedger& ledger);

RunReport run_multilevel_measured(const SpectralHamiltonian& h, const InitialState& init,
                                  const MultilevelPlan& filters,
                                  const FastForwardModel& model, double eps);
RunReport run_multilevel_measured(const SpectralHamiltonian& h, const InitialState& init,
                                  const FastForwardModel& model, double eps);

RunReport run_multilevel_coherent(const SpectralHamiltonian& h, const InitialState& init,
                                  const MultilevelPlan& filters,
                                  const FastForwardModel& model, double eps);
RunReport run_multilevel_coherent(const SpectralHamiltonian& h, const InitialState& init,
                                  const FastForwardModel& model, double eps);

// Recentering shift, sharp filter, and per-segment time for the one-stage
// standard pipeline.
struct StandardPlan {
  double shift = 0.0;   // upward spectrum shift applied before filtering
  double h_norm = 0.0;  // post-shift spectral radius
  double t = 0.0;       // per-segment evolution time, 1 / h_norm
  FilterPolynomial filter;
};

StandardPlan prepare_standard_qsp(const SpectralHamiltonian& h, double eps,
                                  double gamma);

RunReport run_standard_qsp(const SpectralHamiltonian& h, const InitialState& init,
                           double eps, const FastForwardModel& model);

RunReport run_lcu(const SpectralHamiltonian& h, const InitialState& init, double eps,
                  const FastForwardModel& model);

// Measured multi-level run with every controlled-evolution query replaced by a
// perturbed unitary within operator distance delta (seeded, reproducible).
// Returns the perturbed report and the 2-norm deviation between perturbed and
// exact final unnormalized states; the deviation never exceeds
// oracle_queries * delta.
std::pair<RunReport, double> inject_oracle_error(const SpectralHamiltonian& h,
                                                 const InitialState& init,
                                                 const FastForwardModel& model,
                                                 double eps, double delta,
                                                 unsigned long long seed);

// One gadget stage. Per system index k the stage applies the SU(2) branch
// unitary [[s, -conj(f)], [f, conj(s)]] with s = success[k], f = failure[k]
// to the two-block ancilla layout of each counter entry, then decrements the
// counter (mod 2^width) on the ancilla-0 outcome and leaves it on ancilla-1.
// Unitary (hence norm-exact) whenever |success[k]|^2 + |failure[k]|^2 = 1.
void apply_gadget_stage(CounterRegister& reg, const Eigen::VectorXcd& success,
                        const Eigen::VectorXcd& failure);

// Toy gadget run on a one-dimensional system with forced per-stage outcomes
// (flag true = success with amplitude 1, false = deterministic branch flip):
// the counter ends at 0 iff all stages succeed. Used for exhaustive
// enumeration checks.
CounterRegister simulate_forced_pattern(const std::vector<bool>& flags);

}  // namespace mlqsp
