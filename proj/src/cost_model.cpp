#include "mlqsp/cost_model.hpp"

#include <cmath>
#include <numbers>

namespace mlqsp {

namespace {

constexpr double kPi = std::numbers::pi;

int ceil_int(double v) { return static_cast<int>(std::ceil(v - 1e-12)); }

double ceil_pos(double v) { return std::ceil(v - 1e-12); }

void check_common(double h_norm, double gap, double gamma, double eps, double tau,
                  double alpha) {
  if (!(h_norm > 0.0)) throw invalid_argument("cost estimate: spectral radius must be positive");
  if (!(gap > 0.0)) throw invalid_argument("cost estimate: gap must be positive");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw invalid_argument("cost estimate: gamma must lie in (0, 1]");
  if (!(eps > 0.0 && eps < 1.0)) throw invalid_argument("cost estimate: eps must lie in (0, 1)");
  if (!(tau > 0.0)) throw invalid_argument("cost estimate: tau must be positive");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw invalid_argument("cost estimate: alpha must lie in [0, 1]");
}

}  // namespace

CostEstimate estimate(Method method, FFRegime regime, double h_norm, double gap,
                      double gamma, double eps, double tau, double alpha) {
  check_common(h_norm, gap, gamma, eps, tau, alpha);
  CostEstimate out;
  out.method = method;
  out.regime = regime;
  out.oi_queries = 1.0 / gamma;
  const double log_inv = std::log2(1.0 / (gamma * eps));  // filter sharpness factor

  if (method == Method::multilevel) {
    const double d = log_inv;               // level-filter degree scale
    const double d_cleanup = log_inv / gap;  // clean-up degree scale
    if (regime == FFRegime::tau_cutoff) {
      if (h_norm < kPi) {
        throw invalid_argument("cost estimate: hypothesis ‖H‖ >= pi violated");
      }
      const int levels = std::max(1, ceil_int(std::log2(h_norm / 2.0)));
      double segments = 0.0;
      for (int l = 1; l <= levels; ++l) {
        segments += ceil_pos(std::ldexp(1.0, l) / (h_norm * tau));
      }
      out.oracle_queries = d * segments + d_cleanup * ceil_pos(1.0 / tau);
      out.gate_units = out.oracle_queries;
      out.ancilla = ceil_int(std::log2(levels + 2.0)) + 1;
    } else {
      const int levels = ceil_int(std::log2(kPi * h_norm / (4.0 * gap)));
      if (levels < 1) {
        throw invalid_argument("cost estimate: alpha-soft schedule must contain at least one level");
      }
      out.oracle_queries = d * levels;
      double gate = 0.0;
      for (int l = 1; l <= levels; ++l) {
        gate += std::pow(std::ldexp(1.0, l), alpha);
      }
      out.gate_units = d * gate;
      out.ancilla = ceil_int(std::log2(levels + 2.0)) + 1;
    }
  } else if (method == Method::standard_qsp) {
    const double d = (h_norm / gap) * log_inv;
    if (regime == FFRegime::tau_cutoff) {
      out.oracle_queries = d * std::max(1.0, ceil_pos(1.0 / (tau * h_norm)));
    } else {
      out.oracle_queries = d;
    }
    out.gate_units = out.oracle_queries;
    out.ancilla = 2;
  } else {  // lcu
    if (!(gap / h_norm < kPi / 2.0)) {
      throw invalid_argument("cost estimate: hypothesis gap/‖H‖ < pi/2 violated");
    }
    const double d0 = (h_norm / gap) * log_inv;
    const double one_norm = std::max(1.0, std::log2(std::max(2.0, d0)));
    const double eps_tilde = gamma * eps / one_norm;
    const double d = (h_norm / gap) * std::log2(1.0 / eps_tilde);
    const int lmax = ceil_int(std::log2(2.0 * d + 1.0));
    if (regime == FFRegime::tau_cutoff) {
      double q = 0.0;
      for (int l = 0; l <= lmax; ++l) {
        q += ceil_pos(std::ldexp(1.0, l) / (tau * h_norm));
      }
      out.oracle_queries = 2.0 * q;
      out.gate_units = out.oracle_queries;
    } else {
      out.oracle_queries = 2.0 * (lmax + 1);
      double gate = 0.0;
      for (int l = 0; l <= lmax; ++l) {
        gate += std::pow(std::ldexp(1.0, l), alpha);
      }
      out.gate_units = gate;
    }
    out.t_gates = d + std::log2(1.0 / eps_tilde);
    out.ancilla = ceil_int(std::log2(h_norm / (gap * gamma * eps)));
  }
  return out;
}

std::vector<ScalingRow> scaling_table(const std::vector<Method>& methods,
                                      FFRegime regime,
                                      const std::vector<double>& h_grid, double gap,
                                      double gamma, double eps, double tau,
                                      double alpha) {
  if (methods.empty() || h_grid.empty()) {
    throw invalid_argument("scaling table: method list and grid must be nonempty");
  }
  std::vector<ScalingRow> rows;
  rows.reserve(methods.size() * h_grid.size());
  for (const Method m : methods) {
    for (const double h : h_grid) {
      ScalingRow row;
      row.est = estimate(m, regime, h, gap, gamma, eps, tau, alpha);
      row.h_norm = h;
      row.gap = gap;
      row.gamma = gamma;
      row.eps = eps;
      row.tau = tau;
      row.alpha = alpha;
      rows.push_back(row);
    }
  }
  return rows;
}

double trotter_steps(double c_t, double p, double queries, double eps) {
  if (!(c_t > 0.0) || !(p > 0.0) || !(queries > 0.0) || !(eps > 0.0)) {
    throw invalid_argument("trotter steps: all arguments must be positive");
  }
  return std::pow(c_t * queries / eps, 1.0 / p);
}

}  // namespace mlqsp
