#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "mlqsp/errors.hpp"

namespace mlqsp {

// Real even polynomial stored over the even Chebyshev basis T_0, T_2, ..., T_d.
struct FilterPolynomial {
  std::vector<double> chebyshev_coeffs;  // coefficient of T_{2j} at index j
  int degree = 0;                        // even
  double eps_prime = 0.0;                // achieved uniform error on the constrained intervals
};

// Fourier series f(x) = sum_{k in I} c_k e^{-i t_k x} over the odd-harmonic
// index set I = {0} u {+-(2k+1) : k = 0..d}, with t_k = k / h_norm.
struct FourierFilter {
  std::vector<int> indices;
  std::vector<std::complex<double>> coefficients;
  std::vector<double> times;
  double one_norm = 0.0;
  double h_norm = 0.0;
  int degree = 0;  // d: the largest harmonic is 2d+1
  double eps = 0.0;
};

// Step approximation that is ~1 on [pass_lo, 1], ~0 on [0, stop_hi], and
// bounded by 1 on [-1, 1]. Stage 1 seeds from a Chebyshev quadrature of a
// scaled error-function step; stage 2 (small degrees only) refines by
// Lawson-style iterative reweighting. Returns the minimal even degree that
// meets `eps` on 1e4-point validation grids; throws solver_failure past
// `degree_cap`.
FilterPolynomial build_two_band_filter(double stop_hi, double pass_lo, double eps,
                                       int degree_cap);

// Level filter g: |g-1| <= eps_prime above cos(pi/8), |g| <= eps_prime on
// (0, cos(pi/4)), |g| <= 1 everywhere. Degree capped at 512.
FilterPolynomial build_level_filter(double eps_prime);

// Clean-up filter h on the lambda-window [0, pi] mapped through
// x = cos(lambda/2): pass band lambda <= mu - gap/2, stop band
// lambda >= mu + gap/2.
FilterPolynomial build_cleanup_filter(double mu, double gap, double eps);

// Gaussian-mollified Heaviside on [0, h_norm]: ~1 below mu - gap/2, ~0 above
// mu + gap/2, |f| <= 1, odd-harmonic index set with times k / h_norm.
FourierFilter build_heaviside_fourier(double h_norm, double mu, double gap, double eps);

double eval_filter(const FilterPolynomial& g, double x);
std::complex<double> eval_filter(const FourierFilter& f, double x);

// Exact expansion of an even callable over T_0, T_2, ..., T_degree, sampled at
// first-kind Chebyshev nodes (exact whenever f is a polynomial of the stated
// degree). Used to induce coefficient form from phase sets.
std::vector<double> chebyshev_even_fit(const std::function<double(double)>& f,
                                       int degree);

// max(|g-1| over [pass_lo, 1], |g| over [0, stop_hi]) on 1e4-point grids.
double two_band_error(const FilterPolynomial& g, double stop_hi, double pass_lo);

}  // namespace mlqsp
