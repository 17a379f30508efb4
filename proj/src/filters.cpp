#include "mlqsp/filters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace mlqsp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGridPoints = 10001;  // 1e4-point validation grids

// Inverse complementary error function on (0, 2), via damped Newton on erfc.
double erfc_inv(double y) {
  if (!(y > 0.0 && y < 2.0)) {
    throw invalid_argument("erfc_inv: argument must lie in (0, 2)");
  }
  if (y == 1.0) return 0.0;
  const bool flip = y > 1.0;  // erfc(-x) = 2 - erfc(x)
  if (flip) y = 2.0 - y;
  double x = y < 0.5 ? std::sqrt(-std::log(y)) : 0.5;
  for (int it = 0; it < 100; ++it) {
    const double f = std::erfc(x) - y;
    const double deriv = -2.0 / std::sqrt(kPi) * std::exp(-x * x);
    double step = f / deriv;
    // keep iterates in a sane range
    if (x - step < 0.0) step = x / 2.0;
    x -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
  }
  return flip ? -x : x;
}

// Clenshaw evaluation of sum_j a_j T_{2j}(x) through T_{2j}(x) = T_j(2x^2-1).
double clenshaw_even(const std::vector<double>& a, int ncoef, double x) {
  const double y = 2.0 * x * x - 1.0;
  double b1 = 0.0, b2 = 0.0;
  for (int j = ncoef - 1; j >= 1; --j) {
    const double b0 = 2.0 * y * b1 - b2 + a[j];
    b2 = b1;
    b1 = b0;
  }
  return y * b1 - b2 + a[0];
}

// Discrete-cosine quadrature of an even function against T_0, T_2, ..., T_degree
// at N = 4*degree first-kind Chebyshev nodes, folded over the x -> -x symmetry.
template <class F>
std::vector<double> cheb_even_quadrature(F&& f, int degree) {
  const int ncoef = degree / 2 + 1;
  const long long n_nodes = 4LL * std::max(degree, 2);
  const long long half = n_nodes / 2;
  std::vector<double> coef(ncoef, 0.0);
  for (long long m = 0; m < half; ++m) {
    const double theta = (static_cast<double>(m) + 0.5) * kPi / static_cast<double>(n_nodes);
    const double fm = f(std::cos(theta));
    if (fm == 0.0) continue;
    const double c1 = std::cos(2.0 * theta);
    coef[0] += fm;
    double u0 = 1.0, u1 = c1;
    if (ncoef > 1) coef[1] += fm * u1;
    for (int j = 2; j < ncoef; ++j) {
      const double u2 = 2.0 * c1 * u1 - u0;
      coef[j] += fm * u2;
      u0 = u1;
      u1 = u2;
    }
  }
  const double scale = 4.0 / static_cast<double>(n_nodes);
  for (double& c : coef) c *= scale;
  coef[0] *= 0.5;
  return coef;
}

struct BandStats {
  double pass_err = 0.0;  // max |g - 1| on [pass_lo, 1]
  double stop_err = 0.0;  // max |g| on [0, stop_hi]
  double max_abs = 0.0;   // max |g| on [0, 1]
  double achieved() const { return std::max(pass_err, stop_err); }
};

// Evaluates a prefix (first `ncoef` coefficients) under the headroom scale
// s = (1 - 0.1*eps)/max(1, grid max |g|), which keeps |g| strictly below 1
// between grid points. Returns the applied scale through `scale_out`.
BandStats scan_bands(const std::vector<double>& coef, int ncoef, double stop_hi,
                     double pass_lo, double eps, double* scale_out) {
  double max_abs = 0.0;
  for (int i = 0; i < kGridPoints; ++i) {
    const double x = static_cast<double>(i) / (kGridPoints - 1);
    max_abs = std::max(max_abs, std::abs(clenshaw_even(coef, ncoef, x)));
  }
  const double s = (1.0 - 0.1 * eps) / std::max(1.0, max_abs);
  BandStats st;
  st.max_abs = s * max_abs;
  for (int i = 0; i < kGridPoints; ++i) {
    const double x = pass_lo + (1.0 - pass_lo) * static_cast<double>(i) / (kGridPoints - 1);
    st.pass_err = std::max(st.pass_err, std::abs(s * clenshaw_even(coef, ncoef, x) - 1.0));
  }
  if (stop_hi > 0.0) {
    for (int i = 0; i < kGridPoints; ++i) {
      const double x = stop_hi * static_cast<double>(i) / (kGridPoints - 1);
      st.stop_err = std::max(st.stop_err, std::abs(s * clenshaw_even(coef, ncoef, x)));
    }
  }
  if (scale_out) *scale_out = s;
  return st;
}

// Lawson-style iteratively reweighted least-squares refinement on the two
// constrained bands. Keeps the refined coefficients only when they improve
// the achieved error.
void lawson_refine(std::vector<double>& coef, double stop_hi, double pass_lo, double eps,
                   double* achieved_io) {
  const int ncoef = static_cast<int>(coef.size());
  const int per_band = 1200;
  std::vector<double> xs, ys;
  xs.reserve(2 * per_band);
  ys.reserve(2 * per_band);
  for (int i = 0; i < per_band; ++i) {
    xs.push_back(pass_lo + (1.0 - pass_lo) * i / (per_band - 1.0));
    ys.push_back(1.0);
  }
  for (int i = 0; i < per_band; ++i) {
    xs.push_back(stop_hi * i / (per_band - 1.0));
    ys.push_back(0.0);
  }
  const int rows = static_cast<int>(xs.size());
  Eigen::MatrixXd basis(rows, ncoef);
  for (int i = 0; i < rows; ++i) {
    const double y = 2.0 * xs[i] * xs[i] - 1.0;
    double t0 = 1.0, t1 = y;
    basis(i, 0) = 1.0;
    if (ncoef > 1) basis(i, 1) = y;
    for (int j = 2; j < ncoef; ++j) {
      const double t2 = 2.0 * y * t1 - t0;
      basis(i, j) = t2;
      t0 = t1;
      t1 = t2;
    }
  }
  Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(ys.data(), rows);
  Eigen::VectorXd weights = Eigen::VectorXd::Ones(rows);
  std::vector<double> best = coef;
  double best_achieved = *achieved_io;
  for (int it = 0; it < 10; ++it) {
    const Eigen::VectorXd sw = weights.array().sqrt();
    Eigen::MatrixXd aw = basis.array().colwise() * sw.array();
    Eigen::VectorXd bw = target.array() * sw.array();
    Eigen::VectorXd c = aw.colPivHouseholderQr().solve(bw);
    std::vector<double> cand(c.data(), c.data() + ncoef);
    double scale = 1.0;
    const BandStats st = scan_bands(cand, ncoef, stop_hi, pass_lo, eps, &scale);
    if (st.achieved() < best_achieved) {
      best_achieved = st.achieved();
      for (int j = 0; j < ncoef; ++j) best[j] = scale * cand[j];
    }
    const Eigen::VectorXd resid = (basis * c - target).cwiseAbs();
    weights = weights.array() * (resid.array() + 1e-14);
    weights *= rows / weights.sum();
  }
  coef = best;
  *achieved_io = best_achieved;
}

int round_up_even(double v) {
  int d = static_cast<int>(std::ceil(v));
  if (d % 2 != 0) ++d;
  return std::max(d, 4);
}

}  // namespace

double eval_filter(const FilterPolynomial& g, double x) {
  if (std::abs(x) > 1.0 + 1e-12) {
    throw invalid_argument("eval_filter: polynomial argument must lie in [-1, 1]");
  }
  x = std::clamp(x, -1.0, 1.0);
  if (g.chebyshev_coeffs.empty()) return 0.0;
  return clenshaw_even(g.chebyshev_coeffs, static_cast<int>(g.chebyshev_coeffs.size()), x);
}

std::complex<double> eval_filter(const FourierFilter& f, double x) {
  if (x < -1e-9 || x > f.h_norm + 1e-9) {
    throw invalid_argument("eval_filter: Fourier argument must lie in [0, ‖H‖]");
  }
  std::complex<double> acc = f.coefficients.empty() ? 0.0 : f.coefficients[0];
  const std::complex<double> z = std::exp(std::complex<double>(0.0, -x / f.h_norm));
  const std::complex<double> z2 = z * z;
  std::complex<double> w = z;  // z^m for the current odd harmonic m
  for (int k = 0; k <= f.degree; ++k) {
    acc += f.coefficients[2 * k + 1] * w + f.coefficients[2 * k + 2] * std::conj(w);
    w *= z2;
  }
  return acc;
}

std::vector<double> chebyshev_even_fit(const std::function<double(double)>& f,
                                       int degree) {
  if (degree < 0 || degree % 2 != 0) {
    throw invalid_argument("chebyshev_even_fit: degree must be a nonnegative even integer");
  }
  return cheb_even_quadrature(f, degree);
}

double two_band_error(const FilterPolynomial& g, double stop_hi, double pass_lo) {
  const int ncoef = static_cast<int>(g.chebyshev_coeffs.size());
  double err = 0.0;
  for (int i = 0; i < kGridPoints; ++i) {
    const double xp = pass_lo + (1.0 - pass_lo) * static_cast<double>(i) / (kGridPoints - 1);
    err = std::max(err, std::abs(clenshaw_even(g.chebyshev_coeffs, ncoef, xp) - 1.0));
    const double xs = stop_hi * static_cast<double>(i) / (kGridPoints - 1);
    err = std::max(err, std::abs(clenshaw_even(g.chebyshev_coeffs, ncoef, xs)));
  }
  return err;
}

FilterPolynomial build_two_band_filter(double stop_hi, double pass_lo, double eps,
                                       int degree_cap) {
  if (!(stop_hi >= 0.0 && stop_hi < pass_lo && pass_lo <= 1.0)) {
    throw invalid_argument("two-band filter: bands must satisfy 0 <= stop_hi < pass_lo <= 1");
  }
  if (!(eps > 0.0 && eps < 0.5)) {
    throw invalid_argument("two-band filter: eps must lie in (0, 1/2)");
  }
  if (degree_cap < 4) {
    throw invalid_argument("two-band filter: degree cap must be at least 4");
  }

  const double x0 = 0.5 * (pass_lo + stop_hi);
  const double w = 0.5 * (pass_lo - stop_hi);
  const double steepness = erfc_inv(eps / 2.0) / w;
  const auto erf_step = [&](double x) {
    const double z = steepness * (std::abs(x) - x0);
    if (z < -7.0) return 0.0;
    if (z > 7.0) return 1.0;
    return 0.5 * (1.0 + std::erf(z));
  };

  int d_fail = 2;
  int d_try = std::min(degree_cap,
                       round_up_even(kPi * steepness * std::sqrt(std::max(1e-12, 1.0 - x0 * x0))));
  std::vector<double> coef;
  double best_achieved = std::numeric_limits<double>::infinity();
  bool found = false;
  while (true) {
    coef = cheb_even_quadrature(erf_step, d_try);
    const BandStats st = scan_bands(coef, d_try / 2 + 1, stop_hi, pass_lo, eps, nullptr);
    best_achieved = std::min(best_achieved, st.achieved());
    if (st.achieved() <= eps) {
      found = true;
      break;
    }
    if (d_try >= degree_cap) break;
    d_fail = d_try;
    d_try = std::min(degree_cap, round_up_even(d_try * 1.3));
  }
  if (!found) {
    throw solver_failure(
        "two-band filter: could not meet the target error within the degree cap",
        best_achieved);
  }

  // Bisect the minimal even degree using prefixes of the converged expansion.
  int lo = d_fail, hi = d_try;  // lo fails (or is below the search floor), hi passes
  while (hi - lo > 2) {
    int mid = (lo + hi) / 2;
    if (mid % 2 != 0) ++mid;
    if (mid >= hi) mid = hi - 2;
    const BandStats st = scan_bands(coef, mid / 2 + 1, stop_hi, pass_lo, eps, nullptr);
    if (st.achieved() <= eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  // Rebuild at the minimal degree with a dedicated quadrature; in the rare
  // case the dedicated build narrowly misses, step the degree up.
  int degree = hi;
  std::vector<double> final_coef;
  double scale = 1.0;
  BandStats st;
  while (true) {
    final_coef = cheb_even_quadrature(erf_step, degree);
    st = scan_bands(final_coef, degree / 2 + 1, stop_hi, pass_lo, eps, &scale);
    if (st.achieved() <= eps || degree >= degree_cap) break;
    degree += 2;
  }
  if (st.achieved() > eps) {
    throw solver_failure(
        "two-band filter: could not meet the target error within the degree cap",
        st.achieved());
  }
  for (double& c : final_coef) c *= scale;
  double achieved = st.achieved();

  if (degree <= 256) {
    lawson_refine(final_coef, stop_hi, pass_lo, eps, &achieved);
  }

  FilterPolynomial out;
  out.chebyshev_coeffs = std::move(final_coef);
  out.degree = degree;
  out.eps_prime = achieved;
  return out;
}

FilterPolynomial build_level_filter(double eps_prime) {
  if (!(eps_prime > 0.0 && eps_prime < 0.5)) {
    throw invalid_argument("level filter: eps_prime must lie in (0, 1/2)");
  }
  return build_two_band_filter(std::cos(kPi / 4.0), std::cos(kPi / 8.0), eps_prime, 512);
}

FilterPolynomial build_cleanup_filter(double mu, double gap, double eps) {
  if (!(gap > 0.0) || gap >= kPi) {
    throw invalid_argument("cleanup filter: gap must lie in (0, pi)");
  }
  if (!(eps > 0.0 && eps < 0.5)) {
    throw invalid_argument("cleanup filter: eps must lie in (0, 1/2)");
  }
  if (mu - gap / 2.0 < 0.0) {
    throw invalid_argument("cleanup filter: the pass band edge mu - gap/2 must be nonnegative");
  }
  if (mu + gap / 2.0 > kPi + 1e-12) {
    throw invalid_argument("cleanup filter: the stop band edge mu + gap/2 must not exceed pi");
  }
  const double pass_lo = std::cos((mu - gap / 2.0) / 2.0);
  const double stop_hi = std::cos(std::min(kPi, mu + gap / 2.0) / 2.0);
  const int cap =
      std::max(64, round_up_even(4.0 * (kPi / gap) * std::log2(1.0 / eps)));
  return build_two_band_filter(stop_hi, pass_lo, eps, cap);
}

FourierFilter build_heaviside_fourier(double h_norm, double mu, double gap, double eps) {
  if (!(h_norm > 0.0)) {
    throw invalid_argument("heaviside filter: spectral radius must be positive");
  }
  if (!(gap > 0.0)) {
    throw invalid_argument("heaviside filter: gap must be positive");
  }
  if (!(gap / h_norm < kPi / 2.0)) {
    throw invalid_argument("heaviside filter: hypothesis gap/‖H‖ < pi/2 violated");
  }
  if (!(eps > 0.0 && eps < 0.5)) {
    throw invalid_argument("heaviside filter: eps must lie in (0, 1/2)");
  }
  if (mu - gap / 2.0 < 0.0 || mu + gap / 2.0 > h_norm) {
    throw invalid_argument(
        "heaviside filter: the window [mu - gap/2, mu + gap/2] must lie inside [0, ‖H‖]");
  }

  // Mollifier width in the angle variable y = (x - mu)/‖H‖. The fixed width
  // gap/(4‖H‖) cannot push the step error below ~erfc(sqrt 2)/2, so the width
  // tightens with eps.
  const double delta_a = gap / (2.0 * h_norm);
  const double sigma = std::min(gap / (4.0 * h_norm),
                                delta_a / (std::sqrt(2.0) * erfc_inv(eps / 4.0)));

  // Mollified square-wave harmonics (2/pi) e^{-sigma^2 m^2/2} / m for odd m;
  // truncate once the tail drops below eps/4.
  std::vector<double> terms;  // term for m = 2k+1 at index k
  double m = 1.0;
  while (true) {
    const double t = (2.0 / kPi) * std::exp(-0.5 * sigma * sigma * m * m) / m;
    terms.push_back(t);
    if (t < eps * 1e-8 || m > 2e7) break;
    m += 2.0;
  }
  double tail = 0.0;
  int cut = static_cast<int>(terms.size());  // number of harmonics kept
  for (int k = static_cast<int>(terms.size()) - 1; k >= 1; --k) {
    if (tail + terms[k] > eps / 4.0) break;
    tail += terms[k];
    cut = k;
  }
  const int d = cut - 1;  // largest harmonic kept is 2d+1

  FourierFilter f;
  f.h_norm = h_norm;
  f.degree = d;
  f.eps = eps;
  f.indices.reserve(2 * d + 3);
  f.coefficients.reserve(2 * d + 3);
  f.times.reserve(2 * d + 3);
  f.indices.push_back(0);
  f.coefficients.push_back(0.5);
  f.times.push_back(0.0);
  for (int k = 0; k <= d; ++k) {
    const double mm = 2.0 * k + 1.0;
    const double amp = std::exp(-0.5 * sigma * sigma * mm * mm) / (kPi * mm);
    const double tk = mm / h_norm;
    // descending mollified step: coefficient -i*amp at harmonic +m, +i*amp at -m,
    // each rotated by e^{i t_k mu} to center the step at mu
    const std::complex<double> rot = std::exp(std::complex<double>(0.0, tk * mu));
    f.indices.push_back(static_cast<int>(mm));
    f.coefficients.push_back(std::complex<double>(0.0, -amp) * rot);
    f.times.push_back(tk);
    f.indices.push_back(-static_cast<int>(mm));
    f.coefficients.push_back(std::complex<double>(0.0, amp) * std::conj(rot));
    f.times.push_back(-tk);
  }

  // Measure the grid maximum and rescale so |f| stays below 1 with margin.
  const int n_grid = 2 * kGridPoints - 1;
  double max_abs = 0.0, pass_err = 0.0, stop_err = 0.0;
  std::vector<std::complex<double>> values(n_grid);
  for (int i = 0; i < n_grid; ++i) {
    const double x = h_norm * static_cast<double>(i) / (n_grid - 1);
    values[i] = eval_filter(f, x);
    max_abs = std::max(max_abs, std::abs(values[i]));
  }
  const double scale = (1.0 - eps / 8.0) / std::max(1.0, max_abs);
  for (auto& c : f.coefficients) c *= scale;
  for (int i = 0; i < n_grid; ++i) {
    const double x = h_norm * static_cast<double>(i) / (n_grid - 1);
    const std::complex<double> v = scale * values[i];
    if (x <= mu - gap / 2.0) pass_err = std::max(pass_err, std::abs(v - 1.0));
    if (x >= mu + gap / 2.0) stop_err = std::max(stop_err, std::abs(v));
  }
  if (std::max(pass_err, stop_err) > eps) {
    throw solver_failure("heaviside filter: constructed series missed the target error",
                         std::max(pass_err, stop_err));
  }

  f.one_norm = 0.0;
  for (const auto& c : f.coefficients) f.one_norm += std::abs(c);
  return f;
}

}  // namespace mlqsp
