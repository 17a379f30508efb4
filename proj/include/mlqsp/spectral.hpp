#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mlqsp/errors.hpp"

namespace mlqsp {

// Hamiltonian represented spectrally: an ordered eigenvalue list plus the
// gap window (mu, gap) separating the ground state from the rest of the
// spectrum. All circuit actions used here are diagonal in the eigenbasis,
// so this representation is exact.
struct SpectralHamiltonian {
  std::vector<double> eigenvalues;  // ascending; lambda_0 < lambda_1
  double spectral_radius = 0.0;     // >= max_k lambda_k, > 0
  double mu = 0.0;                  // lambda_0 <= mu - gap/2 < mu + gap/2 <= lambda_1
  double gap = 0.0;                 // > 0
  double shift = 0.0;               // accumulated spectrum offset
  Eigen::MatrixXcd basis;           // eigenvector columns when built from a dense matrix

  std::size_t dimension() const { return eigenvalues.size(); }
  void validate() const;

  // Diagonalizes a dense Hermitian matrix, records the basis change, and
  // defaults (mu, gap) to the midpoint/width of the ground gap.
  static SpectralHamiltonian from_dense(const Eigen::MatrixXcd& h);
};

// Adds `offset` to every eigenvalue (and to mu). Eigenvalues must remain
// nonnegative. The spectral radius moves with the spectrum, preserving any
// cushion between the stored radius and max lambda.
SpectralHamiltonian shift_spectrum(const SpectralHamiltonian& h, double offset);

// Synthetic benchmark spectrum: ground eigenvalue 0 plus `excited_count`
// eigenvalues equally spaced on [gap, h_norm], so the gap and the ground
// overlap of a uniform state stay fixed while h_norm scales.
SpectralHamiltonian equally_spaced_spectrum(double h_norm, double gap,
                                            int excited_count = 20);

struct InitialState {
  Eigen::VectorXcd amplitudes;  // alpha_k over the eigenbasis, unit norm
  double overlap = 0.0;         // gamma = |alpha_0| > 0

  void validate(std::size_t dimension) const;
  static InitialState from_amplitudes(Eigen::VectorXcd alpha);
  static InitialState uniform(std::size_t dimension);
};

// Fast-forwarding regime selector. Explicit rather than inferred from tau
// so ledger semantics stay unambiguous.
enum class FFRegime { tau_cutoff, alpha_soft };

// Which ground-state-preparation method a run or estimate refers to.
enum class Method { multilevel, lcu, standard_qsp };

struct FastForwardModel {
  FFRegime regime = FFRegime::tau_cutoff;
  double tau = 1.0;    // > 0: zero-marginal-cost evolution window
  double alpha = 0.0;  // in [0,1]: soft-cost exponent
  double delta = 0.0;  // >= 0: per-query oracle error

  void validate() const;
};

struct QueryCost {
  long long queries = 0;
  double gate_units = 0.0;
};

// Cost of one evolution segment e^{-iHt}, t > 0.
// tau-cutoff: queries = ceil(t/tau), one gate unit per query.
// alpha-soft: one query of cost (t*H_norm)^alpha gate units.
QueryCost query_cost(double t, const FastForwardModel& model, double h_norm);

struct QueryLedger {
  long long oracle_queries = 0;        // O_H invocations
  double gate_units = 0.0;
  double t_gates = 0.0;
  long long initial_state_queries = 0; // O_I invocations (accounted, not simulated)
  long long ancilla_qubits = 0;        // high-water mark
  double accumulated_error = 0.0;      // oracle_queries * delta, exact

  void charge(const QueryCost& cost, double delta, long long repeat = 1);
  void note_ancilla(long long count);
};

// Per-eigenvalue evolution phases {e^{-i lambda_k t}}.
std::vector<std::complex<double>> evolution_phases(const SpectralHamiltonian& h, double t);

}  // namespace mlqsp
