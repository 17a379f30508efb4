#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "mlqsp/errors.hpp"
#include "mlqsp/spectral.hpp"

using namespace mlqsp;
using c64 = std::complex<double>;

namespace {

SpectralHamiltonian three_level() {
  SpectralHamiltonian h;
  h.eigenvalues = {0.0, 1.0, 2.0};
  h.spectral_radius = 2.0;
  h.mu = 0.5;
  h.gap = 1.0;
  return h;
}

}  // namespace

TEST_CASE("hamiltonian validation accepts a conformant spectrum") {
  CHECK_NOTHROW(three_level().validate());
}

TEST_CASE("hamiltonian validation rejects broken invariants") {
  SpectralHamiltonian h = three_level();
  h.eigenvalues = {0.5, 0.5, 2.0};  // degenerate ground state
  CHECK_THROWS_AS(h.validate(), invalid_argument);

  h = three_level();
  h.eigenvalues = {-0.1, 1.0, 2.0};  // below zero
  CHECK_THROWS_AS(h.validate(), invalid_argument);

  h = three_level();
  h.eigenvalues = {0.0, 2.0, 1.0};  // not ascending
  CHECK_THROWS_AS(h.validate(), invalid_argument);

  h = three_level();
  h.spectral_radius = 1.5;  // smaller than max eigenvalue
  CHECK_THROWS_AS(h.validate(), invalid_argument);

  h = three_level();
  h.mu = 1.2;  // mu + gap/2 > lambda_1
  CHECK_THROWS_AS(h.validate(), invalid_argument);

  h = three_level();
  h.mu = -0.2;  // lambda_0 > mu - gap/2
  CHECK_THROWS_AS(h.validate(), invalid_argument);

  h = three_level();
  h.gap = 0.0;
  CHECK_THROWS_AS(h.validate(), invalid_argument);
}

TEST_CASE("from_dense recovers a known spectrum and records the basis") {
  // Build A = U diag(0.2, 1.1, 2.5) U* from a fixed unitary (Givens pair).
  Eigen::Vector3d lam(0.2, 1.1, 2.5);
  Eigen::Matrix3cd u = Eigen::Matrix3cd::Identity();
  const double th1 = 0.3, th2 = 1.1;
  Eigen::Matrix3cd g1 = Eigen::Matrix3cd::Identity();
  g1(0, 0) = std::cos(th1);
  g1(0, 1) = -std::sin(th1);
  g1(1, 0) = std::sin(th1);
  g1(1, 1) = std::cos(th1);
  Eigen::Matrix3cd g2 = Eigen::Matrix3cd::Identity();
  g2(1, 1) = std::cos(th2);
  g2(1, 2) = c64(0.0, -std::sin(th2));
  g2(2, 1) = c64(0.0, -std::sin(th2));
  g2(2, 2) = std::cos(th2);
  u = g1 * g2;
  Eigen::Matrix3cd a = u * lam.asDiagonal().toDenseMatrix().cast<c64>() * u.adjoint();

  const SpectralHamiltonian h = SpectralHamiltonian::from_dense(a);
  REQUIRE(h.dimension() == 3);
  CHECK(h.eigenvalues[0] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(h.eigenvalues[1] == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(h.eigenvalues[2] == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(h.spectral_radius == doctest::Approx(2.5).epsilon(1e-12));
  // default gap window: midpoint/width of the ground gap
  CHECK(h.mu == doctest::Approx(0.65).epsilon(1e-12));
  CHECK(h.gap == doctest::Approx(0.9).epsilon(1e-12));
  CHECK_NOTHROW(h.validate());

  // basis columns are orthonormal and diagonalize a
  const Eigen::Matrix3cd vtv = h.basis.adjoint() * h.basis;
  CHECK((vtv - Eigen::Matrix3cd::Identity()).norm() < 1e-12);
  const Eigen::Matrix3cd d = h.basis.adjoint() * a * h.basis;
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(d(i, i) - h.eigenvalues[i]) < 1e-10);
    for (int j = 0; j < 3; ++j) {
      if (i != j) CHECK(std::abs(d(i, j)) < 1e-10);
    }
  }
}

TEST_CASE("from_dense rejects non-hermitian input") {
  Eigen::Matrix2cd a;
  a << 1.0, 2.0, 3.0, 4.0;
  CHECK_THROWS_AS(SpectralHamiltonian::from_dense(a), invalid_argument);
}

TEST_CASE("shift_spectrum follows the additive contract") {
  const SpectralHamiltonian h = three_level();

  const SpectralHamiltonian same = shift_spectrum(h, 0.0);
  CHECK(same.eigenvalues == h.eigenvalues);
  CHECK(same.mu == h.mu);

  const SpectralHamiltonian up = shift_spectrum(h, 0.5);
  CHECK(up.eigenvalues[0] == doctest::Approx(0.5));
  CHECK(up.eigenvalues[1] == doctest::Approx(1.5));
  CHECK(up.eigenvalues[2] == doctest::Approx(2.5));
  CHECK(up.mu == doctest::Approx(1.0));
  CHECK(up.gap == doctest::Approx(1.0));
  CHECK(up.shift == doctest::Approx(0.5));
  CHECK_NOTHROW(up.validate());

  CHECK_THROWS_AS(shift_spectrum(h, -0.1), invalid_argument);
}

TEST_CASE("equally spaced benchmark spectrum") {
  const SpectralHamiltonian h = equally_spaced_spectrum(20.0, 1.0);
  REQUIRE(h.dimension() == 21);
  for (int k = 0; k <= 20; ++k) {
    CHECK(h.eigenvalues[k] == doctest::Approx(static_cast<double>(k)).epsilon(1e-14));
  }
  CHECK(h.spectral_radius == doctest::Approx(20.0));
  CHECK(h.gap == doctest::Approx(1.0));
  CHECK(h.mu == doctest::Approx(0.5));
  CHECK_NOTHROW(h.validate());

  CHECK_THROWS_AS(equally_spaced_spectrum(1.0, 1.0), invalid_argument);
  CHECK_THROWS_AS(equally_spaced_spectrum(20.0, 0.0), invalid_argument);
  CHECK_THROWS_AS(equally_spaced_spectrum(20.0, 1.0, 0), invalid_argument);
}

TEST_CASE("initial states are unit norm with positive ground overlap") {
  const InitialState u = InitialState::uniform(21);
  CHECK(u.amplitudes.size() == 21);
  CHECK(u.overlap == doctest::Approx(1.0 / std::sqrt(21.0)).epsilon(1e-14));
  CHECK(u.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_NOTHROW(u.validate(21));
  CHECK_THROWS_AS(u.validate(20), invalid_argument);

  Eigen::VectorXcd v(3);
  v << c64(0.6, 0.0), c64(0.0, 0.8), c64(0.0, 0.0);
  const InitialState s = InitialState::from_amplitudes(v);
  CHECK(s.overlap == doctest::Approx(0.6).epsilon(1e-14));
  CHECK_NOTHROW(s.validate(3));

  Eigen::VectorXcd bad(2);
  bad << 0.5, 0.5;  // not unit norm
  CHECK_THROWS_AS(InitialState::from_amplitudes(bad).validate(2), invalid_argument);
  Eigen::VectorXcd zero_ground(2);
  zero_ground << 0.0, 1.0;  // gamma = 0
  CHECK_THROWS_AS(InitialState::from_amplitudes(zero_ground).validate(2), invalid_argument);
}

TEST_CASE("fast-forward model validation") {
  FastForwardModel m;
  CHECK_NOTHROW(m.validate());
  m.tau = 0.0;
  CHECK_THROWS_AS(m.validate(), invalid_argument);
  m.tau = 1.0;
  m.alpha = 1.5;
  CHECK_THROWS_AS(m.validate(), invalid_argument);
  m.alpha = 0.0;
  m.delta = -1.0;
  CHECK_THROWS_AS(m.validate(), invalid_argument);
}

TEST_CASE("query cost per evolution segment") {
  FastForwardModel m;  // tau-cutoff, tau = 1

  m.tau = 0.1;
  const QueryCost a = query_cost(0.3, m, 1.0);
  CHECK(a.queries == 3);  // ceil(0.3 / 0.1)
  CHECK(a.gate_units == doctest::Approx(3.0));

  const QueryCost b = query_cost(0.05, m, 1.0);
  CHECK(b.queries == 1);  // ceil(0.5) = 1

  FastForwardModel soft;
  soft.regime = FFRegime::alpha_soft;
  soft.alpha = 0.5;
  const QueryCost c = query_cost(0.4, soft, 10.0);  // t * H_norm = 4
  CHECK(c.queries == 1);
  CHECK(c.gate_units == doctest::Approx(2.0));  // 4^0.5

  CHECK_THROWS_AS(query_cost(0.0, m, 1.0), invalid_argument);
  CHECK_THROWS_AS(query_cost(-1.0, m, 1.0), invalid_argument);
}

TEST_CASE("ledger accumulates queries, gates, and error linearly") {
  QueryLedger ledger;
  FastForwardModel m;
  m.tau = 0.5;
  const QueryCost per_segment = query_cost(0.8, m, 1.0);  // 2 queries
  ledger.charge(per_segment, 1e-6, 10);                   // 10 segments
  CHECK(ledger.oracle_queries == 20);
  CHECK(ledger.gate_units == doctest::Approx(20.0));
  CHECK(ledger.accumulated_error == doctest::Approx(20e-6).epsilon(1e-12));
  ledger.charge(per_segment, 1e-6, 1);
  CHECK(ledger.oracle_queries == 22);
  ledger.note_ancilla(3);
  ledger.note_ancilla(2);  // high-water mark keeps the max
  CHECK(ledger.ancilla_qubits == 3);
}

TEST_CASE("evolution phases are the diagonal of exp(-iHt)") {
  const SpectralHamiltonian h = three_level();
  const double t = 0.7;
  const auto phases = evolution_phases(h, t);
  REQUIRE(phases.size() == 3);
  for (int k = 0; k < 3; ++k) {
    const c64 expect = std::exp(c64(0.0, -h.eigenvalues[k] * t));
    CHECK(std::abs(phases[k] - expect) < 1e-14);
  }
}
