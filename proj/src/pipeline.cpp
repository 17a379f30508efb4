#include "mlqsp/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace mlqsp {

namespace {

constexpr double kPi = std::numbers::pi;
using c64 = std::complex<double>;

int ceil_int(double v) { return static_cast<int>(std::ceil(v - 1e-12)); }

long long repetition_for(double p_success) {
  if (!(p_success > 1e-15)) return 0;
  return static_cast<long long>(std::ceil(std::log(3.0) / p_success));
}

// Fills overlap/fidelity/success fields from the final state.
void score_report(RunReport& rep) {
  const LevelState& st = rep.final_state;
  rep.ground_overlap = st.amplitudes.size() > 0 ? std::abs(st.amplitudes[0]) : 0.0;
  rep.success_probability = st.norm_sq;
  const double norm = std::sqrt(st.norm_sq);
  rep.fidelity = norm > 0.0 ? std::min(1.0, rep.ground_overlap / norm) : 0.0;
}

}  // namespace

void LevelState::refresh_norm() { norm_sq = amplitudes.squaredNorm(); }

void LevelState::validate() const {
  if (amplitudes.size() == 0) {
    throw invalid_argument("level state: amplitude vector must be nonempty");
  }
  if (std::abs(amplitudes.squaredNorm() - norm_sq) > 1e-12) {
    throw invalid_argument("level state: cached norm is stale");
  }
  if (norm_sq > 1.0 + 1e-10) {
    throw invalid_argument("level state: squared norm exceeds 1");
  }
}

LevelState LevelState::from_initial(const InitialState& init) {
  LevelState st;
  st.amplitudes = init.amplitudes;
  st.level = 0;
  st.refresh_norm();
  return st;
}

double CounterRegister::total_norm_sq() const {
  double total = 0.0;
  for (const auto& branch : value_distribution) total += branch.squaredNorm();
  return total;
}

std::pair<int, std::vector<double>> level_schedule(double h_norm, FFRegime mode,
                                                   double gap) {
  if (!(h_norm > 0.0)) {
    throw invalid_argument("level schedule: spectral radius must be positive");
  }
  int levels = 0;
  if (mode == FFRegime::tau_cutoff) {
    if (h_norm < kPi) {
      throw invalid_argument(
          "level schedule: hypothesis ‖H‖ >= pi violated in tau-cutoff mode");
    }
    levels = std::max(1, ceil_int(std::log2(h_norm / 2.0)));
  } else {
    if (!(gap > 0.0)) {
      throw invalid_argument("level schedule: alpha-soft mode requires a positive gap");
    }
    levels = ceil_int(std::log2(kPi * h_norm / (4.0 * gap)));
    if (levels < 1) {
      throw invalid_argument(
          "level schedule: alpha-soft schedule must contain at least one level");
    }
  }
  std::vector<double> times(levels);
  for (int l = 1; l <= levels; ++l) {
    times[l - 1] = std::ldexp(1.0, l) / h_norm;
  }
  return {levels, times};
}

MultilevelPlan prepare_multilevel(const SpectralHamiltonian& h,
                                  const FastForwardModel& model, double eps,
                                  double gamma) {
  h.validate();
  model.validate();
  if (!(eps > 0.0 && eps < 1.0)) {
    throw invalid_argument("multilevel plan: eps must lie in (0, 1)");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw invalid_argument("multilevel plan: gamma must lie in (0, 1]");
  }
  MultilevelPlan plan;
  const bool tau_mode = model.regime == FFRegime::tau_cutoff;
  const double threshold = tau_mode ? kPi / 4.0 : h.gap / 2.0;
  SpectralHamiltonian hh = h;
  if (h.eigenvalues.front() > threshold) {
    plan.applied_shift = threshold - h.eigenvalues.front();
    hh = shift_spectrum(h, plan.applied_shift);
  }
  const auto schedule = level_schedule(hh.spectral_radius, model.regime, hh.gap);
  plan.levels = schedule.first;
  plan.times = schedule.second;
  plan.eps_prime = gamma * eps;
  if (plan.eps_prime * plan.levels > std::log(1.5)) {
    plan.warnings.push_back(
        "eps' * L exceeds ln(3/2); the sufficient condition is violated, proceeding");
  }
  plan.level_filter = build_level_filter(plan.eps_prime);
  plan.level_phases = solve_symmetric_phase_factors(plan.level_filter, 1e-12, 500);
  if (tau_mode) {
    plan.has_cleanup = true;
    plan.cleanup_filter = build_cleanup_filter(hh.mu, hh.gap, plan.eps_prime);
    plan.cleanup_phases = solve_symmetric_phase_factors(plan.cleanup_filter, 1e-12, 500);
  }
  return plan;
}

LevelState apply_qetu_level(const SpectralHamiltonian& h, const LevelState& state,
                            const PhaseFactorSet& phases, double t,
                            const FastForwardModel& model, QueryLedger& ledger) {
  h.validate();
  state.validate();
  phases.validate();
  model.validate();
  if (!(t > 0.0)) {
    throw invalid_argument("qetu level: evolution time must be positive");
  }
  if (state.amplitudes.size() != static_cast<Eigen::Index>(h.eigenvalues.size())) {
    throw invalid_argument("qetu level: state dimension does not match the spectrum");
  }
  LevelState out = state;
  out.level = state.level + 1;
  for (Eigen::Index k = 0; k < out.amplitudes.size(); ++k) {
    out.amplitudes[k] *= qetu_response(phases, t, h.eigenvalues[k]).g_val;
  }
  out.refresh_norm();
  if (phases.degree > 0) {
    ledger.charge(query_cost(t, model, h.spectral_radius), model.delta, phases.degree);
  }
  ledger.note_ancilla(1);
  return out;
}

RunReport run_multilevel_measured(const SpectralHamiltonian& h, const InitialState& init,
                                  const MultilevelPlan& filters,
                                  const FastForwardModel& model, double eps) {
  h.validate();
  init.validate(h.dimension());
  model.validate();
  if (!(eps > 0.0 && eps < 1.0)) {
    throw invalid_argument("multilevel run: eps must lie in (0, 1)");
  }
  const SpectralHamiltonian hh =
      filters.applied_shift != 0.0 ? shift_spectrum(h, filters.applied_shift) : h;

  RunReport rep;
  rep.method = Method::multilevel;
  rep.regime = model.regime;
  rep.applied_shift = filters.applied_shift;
  rep.warnings = filters.warnings;

  LevelState st = LevelState::from_initial(init);
  for (int l = 1; l <= filters.levels; ++l) {
    st = apply_qetu_level(hh, st, filters.level_phases, filters.times[l - 1], model,
                          rep.ledger);
    rep.level_trace.push_back({l, filters.times[l - 1], st.norm_sq,
                               std::abs(st.amplitudes[0]), rep.ledger.oracle_queries});
    rep.filter_degrees.push_back(filters.level_filter.degree);
  }
  if (filters.has_cleanup) {
    st = apply_qetu_level(hh, st, filters.cleanup_phases, 1.0, model, rep.ledger);
    rep.level_trace.push_back({filters.levels + 1, 1.0, st.norm_sq,
                               std::abs(st.amplitudes[0]), rep.ledger.oracle_queries});
    rep.filter_degrees.push_back(filters.cleanup_filter.degree);
  }
  rep.final_state = std::move(st);
  score_report(rep);
  rep.repetition_estimate = repetition_for(rep.success_probability);
  rep.ledger.initial_state_queries = rep.repetition_estimate;
  rep.ledger.note_ancilla(1);
  return rep;
}

RunReport run_multilevel_measured(const SpectralHamiltonian& h, const InitialState& init,
                                  const FastForwardModel& model, double eps) {
  init.validate(h.dimension());
  const MultilevelPlan plan = prepare_multilevel(h, model, eps, init.overlap);
  return run_multilevel_measured(h, init, plan, model, eps);
}

void apply_gadget_stage(CounterRegister& reg, const Eigen::VectorXcd& success,
                        const Eigen::VectorXcd& failure) {
  if (reg.width <= 0 ||
      reg.value_distribution.size() != (static_cast<std::size_t>(1) << reg.width)) {
    throw invalid_argument("gadget stage: counter register has inconsistent width");
  }
  const Eigen::Index dim = success.size();
  if (failure.size() != dim) {
    throw invalid_argument("gadget stage: branch factor vectors differ in dimension");
  }
  const int size = 1 << reg.width;
  std::vector<Eigen::VectorXcd> next(size, Eigen::VectorXcd::Zero(2 * dim));
  for (int c = 0; c < size; ++c) {
    const Eigen::VectorXcd& entry = reg.value_distribution[c];
    if (entry.size() != 2 * dim) {
      throw invalid_argument("gadget stage: counter entry dimension mismatch");
    }
    const auto a0 = entry.head(dim);
    const auto a1 = entry.tail(dim);
    // Branch unitary on the reusable ancilla, per system index.
    const Eigen::VectorXcd new0 =
        success.cwiseProduct(a0) - failure.conjugate().cwiseProduct(a1);
    const Eigen::VectorXcd new1 =
        failure.cwiseProduct(a0) + success.conjugate().cwiseProduct(a1);
    const int dec = (c - 1 + size) % size;
    next[dec].head(dim) += new0;
    next[c].tail(dim) += new1;
  }
  reg.value_distribution = std::move(next);
}

CounterRegister simulate_forced_pattern(const std::vector<bool>& flags) {
  const int stages = static_cast<int>(flags.size());
  if (stages < 1) {
    throw invalid_argument("forced pattern: at least one stage required");
  }
  const int m = ceil_int(std::log2(static_cast<double>(stages) + 1.0));
  CounterRegister reg;
  reg.width = std::max(1, m);
  reg.value_distribution.assign(static_cast<std::size_t>(1) << reg.width,
                                Eigen::VectorXcd::Zero(2));
  reg.value_distribution[stages][0] = 1.0;  // ancilla-0 block of |stages>
  for (const bool flag : flags) {
    Eigen::VectorXcd success(1), failure(1);
    success[0] = flag ? 1.0 : 0.0;
    failure[0] = flag ? 0.0 : 1.0;
    apply_gadget_stage(reg, success, failure);
  }
  return reg;
}

RunReport run_multilevel_coherent(const SpectralHamiltonian& h, const InitialState& init,
                                  const MultilevelPlan& filters,
                                  const FastForwardModel& model, double eps) {
  h.validate();
  init.validate(h.dimension());
  model.validate();
  if (!(eps > 0.0 && eps < 1.0)) {
    throw invalid_argument("multilevel run: eps must lie in (0, 1)");
  }
  const SpectralHamiltonian hh =
      filters.applied_shift != 0.0 ? shift_spectrum(h, filters.applied_shift) : h;
  const Eigen::Index dim = static_cast<Eigen::Index>(hh.eigenvalues.size());
  const int stages = filters.levels + (filters.has_cleanup ? 1 : 0);
  const int m = std::max(1, ceil_int(std::log2(static_cast<double>(filters.levels) + 2.0)));

  RunReport rep;
  rep.method = Method::multilevel;
  rep.regime = model.regime;
  rep.applied_shift = filters.applied_shift;
  rep.warnings = filters.warnings;

  CounterRegister reg;
  reg.width = m;
  reg.value_distribution.assign(static_cast<std::size_t>(1) << m,
                                Eigen::VectorXcd::Zero(2 * dim));
  reg.value_distribution[stages].head(dim) =
      init.amplitudes;  // counter starts at |stages>, ancilla at |0>

  for (int s = 1; s <= stages; ++s) {
    const bool is_cleanup = s > filters.levels;
    const PhaseFactorSet& ph = is_cleanup ? filters.cleanup_phases : filters.level_phases;
    const double t = is_cleanup ? 1.0 : filters.times[s - 1];
    Eigen::VectorXcd success(dim), failure(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      const Su2Response r = qetu_response(ph, t, hh.eigenvalues[k]);
      success[k] = r.g_val;
      // garbage phase fixed by the circuit unitary's first column
      failure[k] = c64(r.q_val * std::sqrt(std::max(0.0, 1.0 - r.x * r.x)), r.h_val);
    }
    apply_gadget_stage(reg, success, failure);
    if (ph.degree > 0) {
      rep.ledger.charge(query_cost(t, model, hh.spectral_radius), model.delta, ph.degree);
    }
    // Counter value stages - s is reachable after s stages only via the
    // all-success history, so its ancilla-0 block is the surviving branch.
    const Eigen::VectorXcd lead = reg.value_distribution[stages - s].head(dim);
    rep.level_trace.push_back({is_cleanup ? filters.levels + 1 : s, t,
                               lead.squaredNorm(), std::abs(lead[0]),
                               rep.ledger.oracle_queries});
    rep.filter_degrees.push_back(is_cleanup ? filters.cleanup_filter.degree
                                            : filters.level_filter.degree);
  }

  LevelState st;
  st.amplitudes = reg.value_distribution[0].head(dim);
  st.level = stages;
  st.refresh_norm();
  rep.final_state = std::move(st);
  score_report(rep);
  const double amp = std::min(1.0, std::sqrt(rep.success_probability));
  rep.aa_rounds = amp > 0.0
                      ? static_cast<long long>(std::ceil(kPi / (4.0 * std::asin(amp))))
                      : 0;
  rep.ledger.initial_state_queries = rep.aa_rounds;
  rep.ledger.note_ancilla(m + 1);
  rep.counter = std::move(reg);
  return rep;
}

RunReport run_multilevel_coherent(const SpectralHamiltonian& h, const InitialState& init,
                                  const FastForwardModel& model, double eps) {
  init.validate(h.dimension());
  const MultilevelPlan plan = prepare_multilevel(h, model, eps, init.overlap);
  return run_multilevel_coherent(h, init, plan, model, eps);
}

StandardPlan prepare_standard_qsp(const SpectralHamiltonian& h, double eps,
                                  double gamma) {
  h.validate();
  if (!(eps > 0.0 && eps < 1.0)) {
    throw invalid_argument("standard qsp: eps must lie in (0, 1)");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw invalid_argument("standard qsp: gamma must lie in (0, 1]");
  }
  // Recenter the spectrum so the gap sits where cos(lambda/(2 h')) moves
  // fastest; r* maximizes the transition width the two-band filter sees.
  const double rstar = 0.49;
  const double lam0 = h.eigenvalues.front();
  StandardPlan plan;
  if (lam0 < rstar * h.spectral_radius) {
    plan.shift = (rstar * h.spectral_radius - lam0) / (1.0 - rstar);
  }
  const SpectralHamiltonian hh =
      plan.shift > 0.0 ? shift_spectrum(h, plan.shift) : h;
  plan.h_norm = hh.spectral_radius;
  const double pass_lo =
      std::cos((hh.mu - hh.gap / 2.0) / (2.0 * plan.h_norm));
  const double stop_hi =
      std::cos((hh.mu + hh.gap / 2.0) / (2.0 * plan.h_norm));
  plan.filter = build_two_band_filter(stop_hi, pass_lo, gamma * eps, 200000);
  plan.t = 1.0 / plan.h_norm;
  return plan;
}

RunReport run_standard_qsp(const SpectralHamiltonian& h, const InitialState& init,
                           double eps, const FastForwardModel& model) {
  init.validate(h.dimension());
  model.validate();
  const StandardPlan plan = prepare_standard_qsp(h, eps, init.overlap);
  const SpectralHamiltonian hh =
      plan.shift > 0.0 ? shift_spectrum(h, plan.shift) : h;
  const double hn = plan.h_norm;
  const FilterPolynomial& filt = plan.filter;
  const double t = plan.t;

  RunReport rep;
  rep.method = Method::standard_qsp;
  rep.regime = model.regime;
  rep.applied_shift = plan.shift;

  LevelState st = LevelState::from_initial(init);
  for (Eigen::Index k = 0; k < st.amplitudes.size(); ++k) {
    st.amplitudes[k] *= eval_filter(filt, std::cos(hh.eigenvalues[k] * t / 2.0));
  }
  st.level = 1;
  st.refresh_norm();
  rep.ledger.charge(query_cost(t, model, hn), model.delta, filt.degree);
  rep.ledger.note_ancilla(2);
  rep.level_trace.push_back(
      {1, t, st.norm_sq, std::abs(st.amplitudes[0]), rep.ledger.oracle_queries});
  rep.filter_degrees.push_back(filt.degree);
  rep.final_state = std::move(st);
  score_report(rep);
  rep.repetition_estimate = repetition_for(rep.success_probability);
  rep.ledger.initial_state_queries = rep.repetition_estimate;
  return rep;
}

RunReport run_lcu(const SpectralHamiltonian& h, const InitialState& init, double eps,
                  const FastForwardModel& model) {
  h.validate();
  init.validate(h.dimension());
  model.validate();
  if (!(eps > 0.0 && eps < 1.0)) {
    throw invalid_argument("lcu: eps must lie in (0, 1)");
  }
  if (!(h.gap / h.spectral_radius < kPi / 2.0)) {
    throw invalid_argument("lcu: hypothesis gap/‖H‖ < pi/2 violated");
  }
  const double gamma = init.overlap;
  // Two passes: measure ‖c‖₁ at the raw target, then rebuild at
  // eps~ = gamma*eps/‖c‖₁ so the post-selected state error lands at gamma*eps.
  const FourierFilter probe =
      build_heaviside_fourier(h.spectral_radius, h.mu, h.gap, gamma * eps);
  const double eps_tilde = gamma * eps / std::max(1.0, probe.one_norm);
  const FourierFilter f =
      build_heaviside_fourier(h.spectral_radius, h.mu, h.gap, eps_tilde);

  RunReport rep;
  rep.method = Method::lcu;
  rep.regime = model.regime;

  LevelState st = LevelState::from_initial(init);
  for (Eigen::Index k = 0; k < st.amplitudes.size(); ++k) {
    st.amplitudes[k] *= eval_filter(f, h.eigenvalues[k]) / f.one_norm;
  }
  st.level = 1;
  st.refresh_norm();

  const int d = f.degree;
  const int lmax = ceil_int(std::log2(2.0 * d + 1.0));
  long long queries = 0;
  double gate = 0.0;
  if (model.regime == FFRegime::tau_cutoff) {
    for (int l = 0; l <= lmax; ++l) {
      queries += static_cast<long long>(
          std::ceil(std::ldexp(1.0, l) / (model.tau * h.spectral_radius) - 1e-12));
    }
    queries *= 2;
    gate = static_cast<double>(queries);
  } else {
    queries = 2LL * (lmax + 1);
    for (int l = 0; l <= lmax; ++l) {
      gate += std::pow(std::ldexp(1.0, l), model.alpha);
    }
  }
  rep.ledger.oracle_queries = queries;
  rep.ledger.gate_units = gate;
  rep.ledger.t_gates = d + std::log2(1.0 / eps_tilde);
  rep.ledger.accumulated_error = static_cast<double>(queries) * model.delta;
  rep.ledger.note_ancilla(ceil_int(std::log2(2.0 * d + 2.0)) +
                          ceil_int(std::log2(1.0 / eps_tilde)));
  rep.level_trace.push_back({1, 0.0, st.norm_sq, std::abs(st.amplitudes[0]), queries});
  rep.filter_degrees.push_back(d);
  rep.final_state = std::move(st);
  score_report(rep);
  rep.repetition_estimate = repetition_for(rep.success_probability);
  rep.ledger.initial_state_queries = rep.repetition_estimate;
  return rep;
}

std::pair<RunReport, double> inject_oracle_error(const SpectralHamiltonian& h,
                                                 const InitialState& init,
                                                 const FastForwardModel& model,
                                                 double eps, double delta,
                                                 unsigned long long seed) {
  h.validate();
  init.validate(h.dimension());
  model.validate();
  if (delta < 0.0) {
    throw invalid_argument("error injection: delta must be nonnegative");
  }
  FastForwardModel noisy = model;
  noisy.delta = delta;
  const MultilevelPlan plan = prepare_multilevel(h, noisy, eps, init.overlap);
  const SpectralHamiltonian hh =
      plan.applied_shift != 0.0 ? shift_spectrum(h, plan.applied_shift) : h;
  const Eigen::Index dim = static_cast<Eigen::Index>(hh.eigenvalues.size());
  const int stages = plan.levels + (plan.has_cleanup ? 1 : 0);

  // Per-query diagonal phase perturbation within operator distance delta.
  const double eta_max = 2.0 * std::asin(std::min(1.0, delta / 2.0));
  std::mt19937_64 rng(seed);
  const auto draw = [&]() {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    return (2.0 * u - 1.0) * eta_max;
  };

  RunReport rep;
  rep.method = Method::multilevel;
  rep.regime = model.regime;
  rep.applied_shift = plan.applied_shift;
  rep.warnings = plan.warnings;

  Eigen::VectorXcd exact = init.amplitudes;
  Eigen::VectorXcd pert = init.amplitudes;
  for (int s = 1; s <= stages; ++s) {
    const bool is_cleanup = s > plan.levels;
    const PhaseFactorSet& ph = is_cleanup ? plan.cleanup_phases : plan.level_phases;
    const double t = is_cleanup ? 1.0 : plan.times[s - 1];
    const PhaseFactorSet qetu_set = convert_phases(ph, PhaseConvention::qetu);
    const int d = qetu_set.degree;
    const double sign = (d / 2) % 2 == 0 ? 1.0 : -1.0;
    const QueryCost qc = query_cost(t, noisy, hh.spectral_radius);
    Eigen::MatrixXd noise = Eigen::MatrixXd::Zero(d, dim);
    for (int seg = 0; seg < d; ++seg) {
      for (long long q = 0; q < qc.queries; ++q) {
        for (Eigen::Index k = 0; k < dim; ++k) {
          noise(seg, k) += draw();
        }
      }
    }
    std::vector<double> seg_exact(d), seg_pert(d);
    for (Eigen::Index k = 0; k < dim; ++k) {
      for (int j = 1; j <= d; ++j) {
        const double base = (j % 2 == 1 ? 1.0 : -1.0) * t * hh.eigenvalues[k];
        seg_exact[j - 1] = base;
        seg_pert[j - 1] = base + noise(j - 1, k);
      }
      exact[k] *= sign * qetu_matrix_with_segments(qetu_set.qetu_phases, seg_exact)(0, 0);
      pert[k] *= sign * qetu_matrix_with_segments(qetu_set.qetu_phases, seg_pert)(0, 0);
    }
    if (d > 0) rep.ledger.charge(qc, delta, d);
    rep.level_trace.push_back({is_cleanup ? plan.levels + 1 : s, t, pert.squaredNorm(),
                               std::abs(pert[0]), rep.ledger.oracle_queries});
    rep.filter_degrees.push_back(d);
  }
  rep.ledger.note_ancilla(1);

  const double deviation = (pert - exact).norm();
  LevelState st;
  st.amplitudes = std::move(pert);
  st.level = stages;
  st.refresh_norm();
  rep.final_state = std::move(st);
  score_report(rep);
  rep.repetition_estimate = repetition_for(rep.success_probability);
  rep.ledger.initial_state_queries = rep.repetition_estimate;
  return {rep, deviation};
}

}  // namespace mlqsp
