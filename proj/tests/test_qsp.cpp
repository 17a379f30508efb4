#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mlqsp/errors.hpp"
#include "mlqsp/filters.hpp"
#include "mlqsp/qsp.hpp"

using namespace mlqsp;
using c64 = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Independent 2x2 complex arithmetic (row-major {a00, a01, a10, a11}).
using Mat2 = std::array<c64, 4>;

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

// Raw control-free product e^{iφ₀X} Π_j D_j e^{iφ_jX}, with
// D_j = diag(1, e^{+itλ}) for odd j and diag(1, e^{-itλ}) for even j.
Mat2 direct_qetu_product(const std::vector<double>& phi, double t, double lambda) {
  auto xrot = [](double a) -> Mat2 {
    return {c64(std::cos(a), 0.0), c64(0.0, std::sin(a)), c64(0.0, std::sin(a)),
            c64(std::cos(a), 0.0)};
  };
  const int d = static_cast<int>(phi.size()) - 1;
  Mat2 m = xrot(phi[0]);
  for (int j = 1; j <= d; ++j) {
    const double angle = (j % 2 == 1 ? 1.0 : -1.0) * t * lambda;
    const Mat2 seg = {c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), std::polar(1.0, angle)};
    m = mul(mul(m, seg), xrot(phi[j]));
  }
  return m;
}

std::vector<double> random_symmetric_phases(std::mt19937_64& rng, int degree) {
  std::vector<double> phi(degree + 1);
  for (int j = 0; j <= degree / 2; ++j) {
    phi[j] = (2.0 * uniform01(rng) - 1.0) * kPi;
    phi[degree - j] = phi[j];
  }
  return phi;
}

}  // namespace

TEST_CASE("reference phase table shape and values") {
  const PhaseFactorSet golden = golden_phase_table();
  REQUIRE(golden.qetu_phases.size() == 21);
  CHECK(golden.degree == 20);
  CHECK(golden.convention == PhaseConvention::qetu);
  CHECK(golden.residual == 0.0);
  CHECK_NOTHROW(golden.validate());
  CHECK(golden.qetu_phases[0] == doctest::Approx(1.5641113).epsilon(1e-9));
  CHECK(golden.qetu_phases[10] == doctest::Approx(0.7862644).epsilon(1e-9));
  for (int j = 0; j <= 20; ++j) {
    CHECK(golden.qetu_phases[j] == doctest::Approx(golden.qetu_phases[20 - j]).epsilon(1e-15));
  }
}

TEST_CASE("reference table induces the documented filter accuracy") {
  const FilterPolynomial induced = filter_from_phases(golden_phase_table());
  CHECK(induced.degree == 20);
  CHECK(induced.eps_prime == doctest::Approx(0.013328170883500245).epsilon(1e-9));
  CHECK(std::abs(induced.eps_prime - 0.01333) <= 5e-4);
  const double measured = two_band_error(induced, std::cos(kPi / 4.0), std::cos(kPi / 8.0));
  CHECK(std::abs(measured - 0.01333) <= 5e-4);
}

TEST_CASE("phase set validation") {
  PhaseFactorSet bad;
  bad.qetu_phases = {0.1, 0.2, 0.3};
  bad.degree = 4;  // wrong length for the stated degree
  CHECK_THROWS_AS(bad.validate(), invalid_argument);

  bad.degree = 3;  // odd degree
  bad.qetu_phases = {0.1, 0.2, 0.3, 0.4};
  CHECK_THROWS_AS(bad.validate(), invalid_argument);

  bad.degree = 2;
  bad.qetu_phases = {0.1, 0.2, 0.3};  // not symmetric
  CHECK_THROWS_AS(bad.validate(), invalid_argument);

  bad.qetu_phases = {0.1, 0.2, 0.1};
  CHECK_NOTHROW(bad.validate());
}

TEST_CASE("degree-zero phase vectors act as pure Z phases") {
  const Eigen::Matrix2cd u = qsp_unitary({0.7}, 0.3);
  CHECK(std::abs(u(0, 0) - std::polar(1.0, 1.4)) < 1e-15);
  CHECK(std::abs(u(1, 1) - std::polar(1.0, -1.4)) < 1e-15);
  CHECK(std::abs(u(0, 1)) < 1e-15);
  // independent of x
  const Eigen::Matrix2cd v = qsp_unitary({0.7}, -0.9);
  CHECK((u - v).cwiseAbs().maxCoeff() < 1e-15);

  // native degree-0 response in the control-free convention
  PhaseFactorSet p0;
  p0.qetu_phases = {0.4};
  p0.degree = 0;
  p0.convention = PhaseConvention::qetu;
  const Su2Response r = qetu_response(p0, 1.0, 0.5);
  CHECK(r.g_val == doctest::Approx(std::cos(0.4)).epsilon(1e-15));
  CHECK(r.h_val == doctest::Approx(std::sin(0.4)).epsilon(1e-15));
  CHECK(r.q_val == 0.0);
}

TEST_CASE("response matches an independent matrix-product oracle") {
  std::mt19937_64 rng(0x51c0ffee);
  const int trials = 250;
  double worst_g = 0.0, worst_unitary = 0.0, worst_identity = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const int degree = 2 * (1 + static_cast<int>(uniform01(rng) * 8.0));  // 2..16
    PhaseFactorSet ps;
    ps.qetu_phases = random_symmetric_phases(rng, degree);
    ps.degree = degree;
    ps.convention = PhaseConvention::qetu;

    const double t = 0.2 + 1.8 * uniform01(rng);
    const double lambda = (2.0 * kPi / t) * uniform01(rng);  // x covers [-1, 1]
    const Su2Response r = qetu_response(ps, t, lambda);

    const Mat2 m = direct_qetu_product(ps.qetu_phases, t, lambda);
    const double sign = (degree / 2) % 2 == 0 ? 1.0 : -1.0;
    const c64 g_direct = sign * m[0];
    worst_g = std::max(worst_g, std::abs(c64(r.g_val, 0.0) - g_direct));

    // the raw product is unitary
    const Mat2 mh = {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
    const Mat2 prod = mul(m, mh);
    worst_unitary = std::max({worst_unitary, std::abs(prod[0] - 1.0), std::abs(prod[3] - 1.0),
                              std::abs(prod[1]), std::abs(prod[2])});

    // SU(2) identity on the reported components
    const double defect =
        r.g_val * r.g_val + r.h_val * r.h_val + r.q_val * r.q_val * (1.0 - r.x * r.x) - 1.0;
    worst_identity = std::max(worst_identity, std::abs(defect));
  }
  CHECK(worst_g <= 1e-10);
  CHECK(worst_unitary <= 1e-12);
  CHECK(worst_identity <= 1e-12);
}

TEST_CASE("segment form reproduces the nominal alternating product") {
  const PhaseFactorSet golden = golden_phase_table();
  const double t = 0.8, lambda = 1.7;
  std::vector<double> nominal(golden.degree);
  for (int j = 1; j <= golden.degree; ++j) {
    nominal[j - 1] = (j % 2 == 1 ? 1.0 : -1.0) * t * lambda;
  }
  const Eigen::Matrix2cd a = qetu_matrix(golden.qetu_phases, t, lambda);
  const Eigen::Matrix2cd b = qetu_matrix_with_segments(golden.qetu_phases, nominal);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS_AS(qetu_matrix_with_segments(golden.qetu_phases, {0.1}), invalid_argument);
}

TEST_CASE("phase-convention conversion is the documented affine shift") {
  PhaseFactorSet qetu;
  qetu.qetu_phases = {kPi / 4.0, kPi / 2.0, kPi / 4.0};
  qetu.degree = 2;
  qetu.convention = PhaseConvention::qetu;

  const PhaseFactorSet qsp = convert_phases(qetu, PhaseConvention::qsp);
  CHECK(qsp.convention == PhaseConvention::qsp);
  CHECK(std::abs(qsp.qetu_phases[0]) < 1e-15);
  CHECK(std::abs(qsp.qetu_phases[1]) < 1e-15);
  CHECK(std::abs(qsp.qetu_phases[2]) < 1e-15);

  // involutive
  const PhaseFactorSet back = convert_phases(qsp, PhaseConvention::qetu);
  for (int j = 0; j <= 2; ++j) {
    CHECK(back.qetu_phases[j] == doctest::Approx(qetu.qetu_phases[j]).epsilon(1e-15));
  }

  // converting to the convention already in force is the identity
  const PhaseFactorSet same = convert_phases(qetu, PhaseConvention::qetu);
  CHECK(same.qetu_phases == qetu.qetu_phases);
}

TEST_CASE("native g evaluation agrees with the induced chebyshev form") {
  const PhaseFactorSet golden = golden_phase_table();
  const FilterPolynomial induced = filter_from_phases(golden);
  for (int i = 0; i <= 200; ++i) {
    const double x = -1.0 + 2.0 * i / 200.0;
    CHECK(std::abs(response_g(golden, x) - eval_filter(induced, x)) < 1e-12);
  }
}

TEST_CASE("at the right edge the response collapses to a phase sum") {
  const PhaseFactorSet golden = golden_phase_table();
  const PhaseFactorSet qsp = convert_phases(golden, PhaseConvention::qsp);
  double sum = 0.0;
  for (double phi : qsp.qetu_phases) sum += phi;
  CHECK(response_g(golden, 1.0) == doctest::Approx(std::cos(sum)).epsilon(1e-12));
}

TEST_CASE("solver closed form at degree zero") {
  FilterPolynomial constant;
  constant.chebyshev_coeffs = {0.6};
  constant.degree = 0;
  const PhaseFactorSet ps = solve_symmetric_phase_factors(constant);
  CHECK(ps.degree == 0);
  CHECK(ps.convention == PhaseConvention::qsp);
  CHECK(ps.residual <= 1e-12);
  CHECK(response_g(ps, 0.3) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(response_g(ps, -0.8) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("solver reproduces a freshly built level filter") {
  const FilterPolynomial target = build_level_filter(1e-3);
  const PhaseFactorSet ps = solve_symmetric_phase_factors(target, 1e-12, 500);
  CHECK(ps.degree == target.degree);
  CHECK(ps.residual <= 1e-12);
  CHECK_NOTHROW(ps.validate());
  const FilterPolynomial induced = filter_from_phases(ps);
  for (int i = 0; i <= 400; ++i) {
    const double x = -1.0 + 2.0 * i / 400.0;
    CHECK(std::abs(eval_filter(induced, x) - eval_filter(target, x)) < 1e-10);
  }
}

TEST_CASE("solver reproduces the reference table's polynomial") {
  const FilterPolynomial target = filter_from_phases(golden_phase_table());
  const PhaseFactorSet ps = solve_symmetric_phase_factors(target, 1e-12, 500);
  CHECK(ps.residual <= 1e-8);
  for (int i = 0; i <= 200; ++i) {
    const double x = -1.0 + 2.0 * i / 200.0;
    CHECK(std::abs(response_g(ps, x) - eval_filter(target, x)) < 1e-8);
  }
}

TEST_CASE("solver rejects targets outside [-1, 1]") {
  FilterPolynomial too_big;
  too_big.chebyshev_coeffs = {1.5};
  too_big.degree = 0;
  CHECK_THROWS_AS(solve_symmetric_phase_factors(too_big), invalid_argument);
}

TEST_CASE("solver reports its best residual when starved of iterations") {
  const FilterPolynomial target = build_level_filter(1e-2);
  bool threw = false;
  try {
    solve_symmetric_phase_factors(target, 1e-13, 1);
  } catch (const solver_failure& e) {
    threw = true;
    CHECK(e.best_residual > 1e-13);
  }
  CHECK(threw);
}
