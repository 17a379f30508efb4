#include "mlqsp/qsp.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

namespace mlqsp {

namespace {

constexpr double kPi = std::numbers::pi;
using c64 = std::complex<double>;

Eigen::Matrix2cd z_phase(double phi) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::polar(1.0, phi);
  m(1, 1) = std::polar(1.0, -phi);
  return m;
}

// e^{i a X} = cos(a) I + i sin(a) X
Eigen::Matrix2cd x_rot(double a) {
  Eigen::Matrix2cd m;
  m(0, 0) = std::cos(a);
  m(0, 1) = c64(0.0, std::sin(a));
  m(1, 0) = c64(0.0, std::sin(a));
  m(1, 1) = std::cos(a);
  return m;
}

// Response in the set's native convention at argument x (see qetu_response).
Su2Response response_at(const PhaseFactorSet& phases, double x) {
  if (std::abs(x) > 1.0 + 1e-12) {
    throw invalid_argument("phase response: |x| must not exceed 1");
  }
  x = std::clamp(x, -1.0, 1.0);
  Su2Response r;
  r.x = x;
  if (phases.convention == PhaseConvention::qetu && phases.degree == 0) {
    // single control-free pulse e^{i φ₀ X}: no conversion round-trip exists
    r.g_val = std::cos(phases.qetu_phases[0]);
    r.h_val = std::sin(phases.qetu_phases[0]);
    r.q_val = 0.0;
    return r;
  }
  const std::vector<double>* qsp = &phases.qetu_phases;
  PhaseFactorSet converted;
  if (phases.convention == PhaseConvention::qetu) {
    converted = convert_phases(phases, PhaseConvention::qsp);
    qsp = &converted.qetu_phases;
  }
  const Eigen::Matrix2cd u = qsp_unitary(*qsp, x);
  r.g_val = u(0, 0).real();
  r.h_val = u(0, 0).imag();
  const double s2 = 1.0 - x * x;
  r.q_val = s2 > 1e-16 ? u(1, 0).imag() / std::sqrt(s2) : 0.0;
  return r;
}

}  // namespace

void PhaseFactorSet::validate() const {
  if (degree < 0 || degree % 2 != 0) {
    throw invalid_argument("phase set: degree must be a nonnegative even integer");
  }
  if (static_cast<int>(qetu_phases.size()) != degree + 1) {
    throw invalid_argument("phase set: expected degree + 1 phase values");
  }
  for (int j = 0; j <= degree / 2; ++j) {
    if (std::abs(qetu_phases[j] - qetu_phases[degree - j]) > 1e-12) {
      throw invalid_argument("phase set: phases must be symmetric under j -> d - j");
    }
  }
}

Eigen::Matrix2cd qsp_unitary(const std::vector<double>& phases_qsp, double x) {
  if (phases_qsp.empty()) {
    throw invalid_argument("qsp_unitary: phase vector must be nonempty");
  }
  if (std::abs(x) > 1.0 + 1e-12) {
    throw invalid_argument("qsp_unitary: |x| must not exceed 1");
  }
  x = std::clamp(x, -1.0, 1.0);
  const int d = static_cast<int>(phases_qsp.size()) - 1;
  if (d == 0) {
    return z_phase(2.0 * phases_qsp[0]);  // doubled end phase
  }
  const double theta = std::acos(x);
  const Eigen::Matrix2cd w = x_rot(theta);
  Eigen::Matrix2cd u = z_phase(phases_qsp[0]);
  for (int j = 1; j <= d; ++j) {
    u = u * w * z_phase(phases_qsp[j]);
  }
  return u;
}

Eigen::Matrix2cd qetu_matrix_with_segments(const std::vector<double>& qetu_phases,
                                           const std::vector<double>& segment_angles) {
  if (qetu_phases.empty()) {
    throw invalid_argument("qetu_matrix: phase vector must be nonempty");
  }
  const int d = static_cast<int>(qetu_phases.size()) - 1;
  if (static_cast<int>(segment_angles.size()) != d) {
    throw invalid_argument("qetu_matrix: expected one segment angle per interior slot");
  }
  Eigen::Matrix2cd m = x_rot(qetu_phases[0]);
  for (int j = 1; j <= d; ++j) {
    Eigen::Matrix2cd seg = Eigen::Matrix2cd::Identity();
    seg(1, 1) = std::polar(1.0, segment_angles[j - 1]);
    m = m * seg * x_rot(qetu_phases[j]);
  }
  return m;
}

Eigen::Matrix2cd qetu_matrix(const std::vector<double>& qetu_phases, double t,
                             double lambda) {
  const int d = static_cast<int>(qetu_phases.size()) - 1;
  std::vector<double> seg(std::max(d, 0));
  for (int j = 1; j <= d; ++j) {
    seg[j - 1] = (j % 2 == 1 ? 1.0 : -1.0) * t * lambda;
  }
  return qetu_matrix_with_segments(qetu_phases, seg);
}

Su2Response qetu_response(const PhaseFactorSet& phases, double t, double lambda) {
  phases.validate();
  return response_at(phases, std::cos(t * lambda / 2.0));
}

double response_g(const PhaseFactorSet& phases, double x) {
  phases.validate();
  return response_at(phases, x).g_val;
}

PhaseFactorSet convert_phases(const PhaseFactorSet& phases, PhaseConvention direction) {
  phases.validate();
  PhaseFactorSet out = phases;
  if (direction == phases.convention) {
    return out;
  }
  out.convention = direction;
  const double sgn = direction == PhaseConvention::qsp ? -1.0 : 1.0;
  const int d = phases.degree;
  for (int j = 0; j <= d; ++j) {
    const double shift = (j == 0 || j == d) ? kPi / 4.0 : kPi / 2.0;
    out.qetu_phases[j] += sgn * shift;
  }
  return out;
}

PhaseFactorSet golden_phase_table() {
  static const std::vector<double> values = {
      1.5641113, 1.5804045, 1.5942229, 1.5741280, 1.5233379, 1.5189284, 1.6198455,
      1.7237235, 1.5881872, 1.1064466, 0.7862644, 1.1064466, 1.5881872, 1.7237235,
      1.6198455, 1.5189284, 1.5233379, 1.5741280, 1.5942229, 1.5804045, 1.5641113};
  PhaseFactorSet set;
  set.qetu_phases = values;
  set.degree = 20;
  set.convention = PhaseConvention::qetu;
  set.residual = 0.0;
  return set;
}

namespace {

// g(x_j) for the full QSP phase vector, plus the gradient with respect to the
// reduced symmetric variables p_i = ϕ_i (= ϕ_{d-i}). Exact prefix/suffix
// differentiation: ∂U/∂ϕ_k = (A₀...A_k) (iZ) (A_{k+1}...A_d).
void eval_node(const std::vector<double>& full, double x, double* g_out,
               double* grad_out /* size d/2+1, may be null */) {
  const int d = static_cast<int>(full.size()) - 1;
  const double theta = std::acos(std::clamp(x, -1.0, 1.0));
  const Eigen::Matrix2cd w = x_rot(theta);
  std::vector<Eigen::Matrix2cd> pre(d + 1);
  pre[0] = z_phase(full[0]);
  for (int k = 1; k <= d; ++k) pre[k] = pre[k - 1] * w * z_phase(full[k]);
  *g_out = pre[d](0, 0).real();
  if (!grad_out) return;
  std::vector<Eigen::Matrix2cd> suf(d + 2);
  suf[d + 1] = Eigen::Matrix2cd::Identity();
  for (int k = d; k >= 1; --k) suf[k] = w * z_phase(full[k]) * suf[k + 1];
  std::fill(grad_out, grad_out + d / 2 + 1, 0.0);
  for (int k = 0; k <= d; ++k) {
    // upper-left of pre[k] * iZ * suf[k+1]
    const c64 v =
        pre[k](0, 0) * suf[k + 1](0, 0) - pre[k](0, 1) * suf[k + 1](1, 0);
    grad_out[std::min(k, d - k)] += -v.imag();
  }
}

std::vector<double> mirror_full(const Eigen::VectorXd& reduced, int d) {
  std::vector<double> full(d + 1);
  for (int k = 0; k <= d; ++k) full[k] = reduced[std::min(k, d - k)];
  return full;
}

}  // namespace

PhaseFactorSet solve_symmetric_phase_factors(const FilterPolynomial& target,
                                             double tol, int max_iter) {
  if (target.degree < 0 || target.degree % 2 != 0 ||
      static_cast<int>(target.chebyshev_coeffs.size()) != target.degree / 2 + 1) {
    throw invalid_argument("phase solver: target must be an even polynomial in coefficient form");
  }
  if (!(tol > 0.0)) {
    throw invalid_argument("phase solver: tolerance must be positive");
  }
  for (int i = 0; i <= 10000; ++i) {
    const double x = static_cast<double>(i) / 10000.0;
    if (std::abs(eval_filter(target, x)) > 1.0 + 1e-12) {
      throw invalid_argument("phase solver: target polynomial must satisfy |g| <= 1 on [-1, 1]");
    }
  }

  const int d = target.degree;
  const int nred = d / 2 + 1;

  if (d == 0) {
    const double c = std::clamp(target.chebyshev_coeffs[0], -1.0, 1.0);
    PhaseFactorSet out;
    out.qetu_phases = {std::acos(c) / 2.0};
    out.degree = 0;
    out.convention = PhaseConvention::qsp;
    out.residual = std::abs(std::cos(2.0 * out.qetu_phases[0]) - target.chebyshev_coeffs[0]);
    return out;
  }

  // positive roots of T_{2(d/2+1)}
  std::vector<double> nodes(nred), want(nred);
  for (int j = 1; j <= nred; ++j) {
    nodes[j - 1] = std::cos((2.0 * j - 1.0) * kPi / (4.0 * nred));
    want[j - 1] = eval_filter(target, nodes[j - 1]);
  }

  Eigen::VectorXd p = Eigen::VectorXd::Zero(nred);
  p[0] = kPi / 4.0;

  const auto residuals = [&](const Eigen::VectorXd& vars, Eigen::MatrixXd* jac) {
    Eigen::VectorXd r(nred);
    std::vector<double> grad(nred);
    const std::vector<double> full = mirror_full(vars, d);
    for (int j = 0; j < nred; ++j) {
      double g = 0.0;
      eval_node(full, nodes[j], &g, jac ? grad.data() : nullptr);
      r[j] = g - want[j];
      if (jac) {
        for (int i = 0; i < nred; ++i) (*jac)(j, i) = grad[i];
      }
    }
    return r;
  };

  double best_max = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd jac(nred, nred);
  Eigen::VectorXd r = residuals(p, &jac);
  for (int iter = 0; iter < max_iter; ++iter) {
    const double max_r = r.cwiseAbs().maxCoeff();
    best_max = std::min(best_max, max_r);
    if (max_r <= tol) break;
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-r);
    const double f0 = r.squaredNorm();
    double scale = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 40; ++halving) {
      const Eigen::VectorXd cand = p + scale * step;
      const Eigen::VectorXd rc = residuals(cand, nullptr);
      if (rc.squaredNorm() < f0) {
        p = cand;
        moved = true;
        break;
      }
      scale /= 2.0;
    }
    if (!moved) break;  // stalled
    r = residuals(p, &jac);
  }
  const double final_max = r.cwiseAbs().maxCoeff();
  best_max = std::min(best_max, final_max);
  if (final_max > tol) {
    throw solver_failure("phase solver: Newton iteration did not reach the tolerance",
                         best_max);
  }

  PhaseFactorSet out;
  out.qetu_phases = mirror_full(p, d);
  out.degree = d;
  out.convention = PhaseConvention::qsp;
  out.residual = final_max;
  return out;
}

FilterPolynomial filter_from_phases(const PhaseFactorSet& phases) {
  phases.validate();
  FilterPolynomial out;
  out.degree = phases.degree;
  out.chebyshev_coeffs = chebyshev_even_fit(
      [&](double x) { return response_at(phases, x).g_val; }, phases.degree);
  out.eps_prime = two_band_error(out, std::cos(kPi / 4.0), std::cos(kPi / 8.0));
  return out;
}

}  // namespace mlqsp
