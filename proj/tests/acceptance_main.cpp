// Standalone acceptance gate: exercises the eight headline checks end to end
// and prints one PASS/FAIL line per criterion. Exits nonzero if any fail.
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mlqsp/cost_model.hpp"
#include "mlqsp/filters.hpp"
#include "mlqsp/pipeline.hpp"
#include "mlqsp/qsp.hpp"
#include "mlqsp/spectral.hpp"

using namespace mlqsp;
using c64 = std::complex<double>;
using clock_type = std::chrono::steady_clock;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kGamma = 1.0 / std::sqrt(21.0);

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

using Mat2 = std::array<c64, 4>;

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 xrot(double a) {
  return {c64(std::cos(a), 0.0), c64(0.0, std::sin(a)), c64(0.0, std::sin(a)),
          c64(std::cos(a), 0.0)};
}

// Independent control-free product e^{iφ₀X} Π_j D_j e^{iφ_jX}.
Mat2 direct_product(const std::vector<double>& phi, double t, double lambda) {
  const int d = static_cast<int>(phi.size()) - 1;
  Mat2 m = xrot(phi[0]);
  for (int j = 1; j <= d; ++j) {
    const double angle = (j % 2 == 1 ? 1.0 : -1.0) * t * lambda;
    const Mat2 seg = {c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), std::polar(1.0, angle)};
    m = mul(mul(m, seg), xrot(phi[j]));
  }
  return m;
}

// Least-squares fit y ~ a + b x; returns the coefficient of determination.
double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double a = (sy - b * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean = sy / n;
  for (std::size_t i = 0; i < n; ++i) {
    const double fit = a + b * x[i];
    ss_res += (y[i] - fit) * (y[i] - fit);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  return ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const auto start = clock_type::now();
  const FilterPolynomial g = filter_from_phases(golden_phase_table());
  const int n = 10000;
  double pass_err = 0.0, stop_err = 0.0;
  const double pass_lo = std::cos(kPi / 8.0);
  const double stop_hi = std::cos(kPi / 4.0);
  for (int i = 0; i < n; ++i) {
    const double xp = pass_lo + (1.0 - pass_lo) * i / (n - 1);
    pass_err = std::max(pass_err, std::abs(eval_filter(g, xp) - 1.0));
    const double xs = stop_hi * i / (n - 1);
    stop_err = std::max(stop_err, std::abs(eval_filter(g, xs)));
  }
  const double linf = std::max(pass_err, stop_err);
  o.require(std::abs(linf - 0.01333) <= 5e-4,
            "L-inf error " + std::to_string(linf) + " outside 0.01333 +- 5e-4");
  o.require(seconds_since(start) < 1.0, "runtime exceeded 1 s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto start = clock_type::now();
  std::mt19937_64 rng(0xacce97);
  for (int trial = 0; trial < 1000; ++trial) {
    const int degree = 2 * (1 + static_cast<int>(uniform01(rng) * 8.0));
    PhaseFactorSet ps;
    ps.qetu_phases.resize(degree + 1);
    for (int j = 0; j <= degree / 2; ++j) {
      ps.qetu_phases[j] = (2.0 * uniform01(rng) - 1.0) * kPi;
      ps.qetu_phases[degree - j] = ps.qetu_phases[j];
    }
    ps.degree = degree;
    ps.convention = PhaseConvention::qetu;
    const double t = 0.2 + 1.8 * uniform01(rng);
    const double lambda = (2.0 * kPi / t) * uniform01(rng);

    const Su2Response r = qetu_response(ps, t, lambda);
    const Mat2 m = direct_product(ps.qetu_phases, t, lambda);
    const double sign = (degree / 2) % 2 == 0 ? 1.0 : -1.0;
    o.require(std::abs(c64(r.g_val, 0.0) - sign * m[0]) <= 1e-10,
              "g_val disagrees with the direct matrix product");

    const Mat2 mh = {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
    const Mat2 prod = mul(m, mh);
    const double defect = std::max({std::abs(prod[0] - 1.0), std::abs(prod[3] - 1.0),
                                    std::abs(prod[1]), std::abs(prod[2])});
    o.require(defect <= 1e-12, "product is not unitary within 1e-12");
  }
  o.require(seconds_since(start) < 5.0, "runtime exceeded 5 s");
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto start = clock_type::now();
  const SpectralHamiltonian h = equally_spaced_spectrum(20.0, 1.0);
  const InitialState init = InitialState::uniform(21);
  FastForwardModel model;  // tau-cutoff, tau = 1
  const MultilevelPlan plan = prepare_multilevel(h, model, 1e-2, kGamma);
  const RunReport rep = run_multilevel_measured(h, init, plan, model, 1e-2);

  o.require(rep.fidelity >= 0.99, "fidelity " + std::to_string(rep.fidelity) + " < 0.99");
  o.require(rep.ground_overlap >= kGamma / 2.0,
            "ground overlap " + std::to_string(rep.ground_overlap) + " < gamma/2");

  double product = 1.0;
  for (double t : plan.times) {
    product *= qetu_response(plan.level_phases, t, h.eigenvalues[0]).g_val;
  }
  const double bound = std::pow(1.0 + plan.eps_prime, plan.levels) - 1.0;
  o.require(std::abs(1.0 - product) <= bound, "telescoping bound violated");
  o.require(seconds_since(start) < 30.0, "runtime exceeded 30 s");
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto start = clock_type::now();
  FastForwardModel ideal;  // tau so large every segment costs one query
  ideal.tau = 1e6;
  const InitialState init = InitialState::uniform(21);

  std::vector<double> log_h, h_lin, q_ml, q_std;
  double ml_at_top = 0.0, std_at_top = 0.0;
  for (double h = 8.0; h <= 1024.0; h *= 2.0) {
    const SpectralHamiltonian spec = equally_spaced_spectrum(h, 1.0);
    const RunReport ml = run_multilevel_measured(spec, init, ideal, 1e-2);
    const RunReport st = run_standard_qsp(spec, init, 1e-2, ideal);
    log_h.push_back(std::log2(h));
    h_lin.push_back(h);
    q_ml.push_back(static_cast<double>(ml.ledger.oracle_queries));
    q_std.push_back(static_cast<double>(st.ledger.oracle_queries));
    if (h == 1024.0) {
      ml_at_top = q_ml.back();
      std_at_top = q_std.back();
    }
  }
  const double r2_ml = r_squared(log_h, q_ml);
  const double r2_std = r_squared(h_lin, q_std);
  o.require(r2_ml >= 0.99,
            "multilevel log-fit R^2 " + std::to_string(r2_ml) + " < 0.99");
  o.require(r2_std >= 0.99, "standard linear-fit R^2 " + std::to_string(r2_std) + " < 0.99");
  o.require(std_at_top / ml_at_top > 20.0,
            "query ratio at 1024 is " + std::to_string(std_at_top / ml_at_top));
  o.require(seconds_since(start) < 300.0, "runtime exceeded 5 min");
  return o;
}

Outcome criterion5() {
  Outcome o;
  struct Params {
    double h_norm, gap;
  };
  for (const Params& p : {Params{20.0, 1.0}, Params{40.0, 1.0}, Params{40.0, 2.0}}) {
    const double mu = p.gap / 2.0;  // benchmark gap window
    const FourierFilter f = build_heaviside_fourier(p.h_norm, mu, p.gap, 1e-2);
    // (A1) on [0, mu - gap/2] (the single point 0 here), (A2) above, (A3) everywhere
    o.require(std::abs(eval_filter(f, 0.0) - 1.0) <= 1e-2 + 1e-12, "(A1) violated at 0");
    const double stop_lo = mu + p.gap / 2.0;
    for (int i = 0; i <= 2000; ++i) {
      const double x = stop_lo + (p.h_norm - stop_lo) * i / 2000.0;
      o.require(std::abs(eval_filter(f, x)) <= 1e-2 + 1e-12, "(A2) violated");
      const double y = p.h_norm * i / 2000.0;
      o.require(std::abs(eval_filter(f, y)) <= 1.0 + 1e-12, "(A3) violated");
    }
  }

  // state-sum against scalar evaluation on every benchmark eigenvalue
  const SpectralHamiltonian spec = equally_spaced_spectrum(20.0, 1.0);
  const FourierFilter f = build_heaviside_fourier(20.0, 0.5, 1.0, 1e-2);
  for (double lambda : spec.eigenvalues) {
    c64 series = 0.0;
    for (std::size_t i = 0; i < f.coefficients.size(); ++i) {
      series += f.coefficients[i] * std::exp(c64(0.0, -lambda * f.times[i]));
    }
    o.require(std::abs(series - eval_filter(f, lambda)) <= 1e-10,
              "state-sum and scalar evaluation disagree");
  }

  // one-norm growth tracks log2(degree) within a factor of 3
  double ratio_min = 1e300, ratio_max = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const FourierFilter fe = build_heaviside_fourier(20.0, 0.5, 1.0, eps);
    const double ratio = fe.one_norm / std::log2(static_cast<double>(fe.degree));
    ratio_min = std::min(ratio_min, ratio);
    ratio_max = std::max(ratio_max, ratio);
  }
  o.require(ratio_max / ratio_min <= 3.0, "one-norm / log2(degree) spread exceeds 3x");
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto start = clock_type::now();
  // exhaustive forced success/failure patterns for up to four stages
  for (int stages = 1; stages <= 4; ++stages) {
    for (unsigned mask = 0; mask < (1u << stages); ++mask) {
      std::vector<bool> flags(stages);
      bool all = true;
      for (int s = 0; s < stages; ++s) {
        flags[s] = (mask >> s) & 1u;
        all = all && flags[s];
      }
      const CounterRegister reg = simulate_forced_pattern(flags);
      const double at_zero = reg.value_distribution[0].squaredNorm();
      o.require(std::abs(reg.total_norm_sq() - 1.0) <= 1e-12, "norm not conserved");
      if (all) {
        o.require(std::abs(at_zero - 1.0) <= 1e-10, "all-success pattern missed counter 0");
      } else {
        o.require(at_zero <= 1e-10, "failure pattern leaked into counter 0");
      }
    }
  }

  // counter-0 branch of the coherent benchmark run equals the measured state
  const SpectralHamiltonian h = equally_spaced_spectrum(20.0, 1.0);
  const InitialState init = InitialState::uniform(21);
  FastForwardModel model;
  const MultilevelPlan plan = prepare_multilevel(h, model, 1e-2, kGamma);
  const RunReport coh = run_multilevel_coherent(h, init, plan, model, 1e-2);
  const RunReport meas = run_multilevel_measured(h, init, plan, model, 1e-2);
  const Eigen::VectorXcd head = coh.counter.value_distribution[0].head(21);
  o.require((head - meas.final_state.amplitudes).norm() <= 1e-10,
            "counter-0 branch deviates from the measured pipeline");
  o.require(seconds_since(start) < 10.0, "runtime exceeded 10 s");
  return o;
}

Outcome criterion7() {
  Outcome o;
  const SpectralHamiltonian h = equally_spaced_spectrum(20.0, 1.0);
  const InitialState init = InitialState::uniform(21);
  FastForwardModel model;
  model.tau = 0.35;  // ~500-query operating point
  const double delta = 1e-6;
  for (unsigned long long seed = 1; seed <= 100; ++seed) {
    const auto [rep, deviation] = inject_oracle_error(h, init, model, 1e-2, delta, seed);
    const double bound = static_cast<double>(rep.ledger.oracle_queries) * delta;
    o.require(rep.ledger.oracle_queries >= 400 && rep.ledger.oracle_queries <= 600,
              "pipeline is not at the ~500-query operating point");
    o.require(deviation <= bound, "deviation exceeded q * delta at seed " +
                                      std::to_string(seed));
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const CostEstimate ideal =
      estimate(Method::multilevel, FFRegime::alpha_soft, 64.0, 1.0, kGamma, 1e-2, 1.0, 0.0);
  const CostEstimate soft =
      estimate(Method::multilevel, FFRegime::alpha_soft, 64.0, 1.0, kGamma, 1e-2, 1.0, 1e-6);
  o.require(std::abs(soft.gate_units - ideal.gate_units) / ideal.gate_units < 0.01,
            "alpha-soft estimate at alpha=1e-6 deviates more than 1% from alpha=0");

  const CostEstimate t1 =
      estimate(Method::multilevel, FFRegime::tau_cutoff, 64.0, 1.0, kGamma, 1e-2, 1.0, 0.0);
  const CostEstimate t2 =
      estimate(Method::multilevel, FFRegime::tau_cutoff, 64.0, 1.0, kGamma, 1e-2, 2.0, 0.0);
  const CostEstimate t10 =
      estimate(Method::multilevel, FFRegime::tau_cutoff, 64.0, 1.0, kGamma, 1e-2, 10.0, 0.0);
  o.require(t1.oracle_queries == t2.oracle_queries && t2.oracle_queries == t10.oracle_queries,
            "tau-cutoff oracle estimate varies with tau");
  o.require(t1.gate_units == t2.gate_units && t2.gate_units == t10.gate_units,
            "tau-cutoff gate estimate varies with tau");
  return o;
}

}  // namespace

int main() {
  bool all_pass = true;
  Outcome (*criteria[])() = {criterion1, criterion2, criterion3, criterion4,
                             criterion5, criterion6, criterion7, criterion8};
  for (int i = 0; i < 8; ++i) {
    const auto start = clock_type::now();
    const Outcome o = criteria[i]();
    const double elapsed = seconds_since(start);
    std::printf("[criterion %d] %s (%.2f s)%s%s\n", i + 1, o.pass ? "PASS" : "FAIL",
                elapsed, o.pass ? "" : " — ", o.pass ? "" : o.detail.c_str());
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
