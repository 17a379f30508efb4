#include "mlqsp/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace mlqsp {

namespace {
constexpr double kTol = 1e-12;
}

void SpectralHamiltonian::validate() const {
  if (eigenvalues.empty()) {
    throw invalid_argument("hamiltonian: eigenvalue list is empty");
  }
  if (!std::is_sorted(eigenvalues.begin(), eigenvalues.end())) {
    throw invalid_argument("hamiltonian: eigenvalues must be ascending");
  }
  if (eigenvalues.front() < -kTol) {
    throw invalid_argument("hamiltonian: eigenvalues must be nonnegative");
  }
  if (spectral_radius <= 0.0) {
    throw invalid_argument("hamiltonian: spectral radius must be positive");
  }
  if (eigenvalues.back() > spectral_radius + 1e-9) {
    throw invalid_argument("hamiltonian: eigenvalues must lie within the spectral radius");
  }
  if (gap <= 0.0) {
    throw invalid_argument("hamiltonian: gap must be positive");
  }
  if (eigenvalues.size() >= 2) {
    const double l0 = eigenvalues[0];
    const double l1 = eigenvalues[1];
    if (!(l0 < l1)) {
      throw invalid_argument("hamiltonian: ground state must be nondegenerate");
    }
    if (l0 > mu - gap / 2.0 + kTol || mu + gap / 2.0 > l1 + kTol) {
      throw invalid_argument(
          "hamiltonian: gap window (mu, gap) must separate the ground eigenvalue "
          "from the rest of the spectrum");
    }
  }
}

SpectralHamiltonian SpectralHamiltonian::from_dense(const Eigen::MatrixXcd& h) {
  if (h.rows() == 0 || h.rows() != h.cols()) {
    throw invalid_argument("from_dense: matrix must be square and nonempty");
  }
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff())) {
    throw invalid_argument("from_dense: matrix must be Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw invalid_argument("from_dense: eigendecomposition failed");
  }
  SpectralHamiltonian out;
  const Eigen::VectorXd evals = solver.eigenvalues();
  out.eigenvalues.assign(evals.data(), evals.data() + evals.size());
  out.basis = solver.eigenvectors();
  out.spectral_radius = std::max(std::abs(out.eigenvalues.front()), std::abs(out.eigenvalues.back()));
  if (out.eigenvalues.size() >= 2) {
    out.mu = 0.5 * (out.eigenvalues[0] + out.eigenvalues[1]);
    out.gap = out.eigenvalues[1] - out.eigenvalues[0];
  }
  out.validate();
  return out;
}

SpectralHamiltonian shift_spectrum(const SpectralHamiltonian& h, double offset) {
  SpectralHamiltonian out = h;
  for (double& lambda : out.eigenvalues) {
    lambda += offset;
  }
  if (!out.eigenvalues.empty() && out.eigenvalues.front() < -kTol) {
    throw invalid_argument("shift_spectrum: offset would produce a negative eigenvalue");
  }
  out.mu += offset;
  out.spectral_radius += offset;
  out.shift += offset;
  out.validate();
  return out;
}

SpectralHamiltonian equally_spaced_spectrum(double h_norm, double gap,
                                            int excited_count) {
  if (!(h_norm > 0.0) || !(gap > 0.0) || h_norm <= gap || excited_count < 1) {
    throw invalid_argument(
        "equally_spaced_spectrum: require h_norm > gap > 0 and at least one excited level");
  }
  SpectralHamiltonian h;
  h.eigenvalues.reserve(excited_count + 1);
  h.eigenvalues.push_back(0.0);
  for (int k = 0; k < excited_count; ++k) {
    const double frac =
        excited_count == 1 ? 0.0 : static_cast<double>(k) / (excited_count - 1);
    h.eigenvalues.push_back(gap + frac * (h_norm - gap));
  }
  h.spectral_radius = h_norm;
  h.mu = gap / 2.0;
  h.gap = gap;
  h.validate();
  return h;
}

void InitialState::validate(std::size_t dimension) const {
  if (static_cast<std::size_t>(amplitudes.size()) != dimension) {
    throw invalid_argument("initial state: amplitude count must match the spectrum dimension");
  }
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > 1e-12 * std::max(1.0, norm) + 1e-12) {
    throw invalid_argument("initial state: amplitudes must be normalized");
  }
  if (amplitudes.size() == 0 || std::abs(amplitudes[0]) <= 0.0) {
    throw invalid_argument("initial state: ground-state overlap must be positive");
  }
  if (std::abs(overlap - std::abs(amplitudes[0])) > 1e-12) {
    throw invalid_argument("initial state: stored overlap disagrees with alpha_0");
  }
}

InitialState InitialState::from_amplitudes(Eigen::VectorXcd alpha) {
  InitialState s;
  s.amplitudes = std::move(alpha);
  s.overlap = s.amplitudes.size() > 0 ? std::abs(s.amplitudes[0]) : 0.0;
  return s;
}

InitialState InitialState::uniform(std::size_t dimension) {
  if (dimension == 0) {
    throw invalid_argument("initial state: dimension must be positive");
  }
  Eigen::VectorXcd alpha =
      Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(dimension),
                                 1.0 / std::sqrt(static_cast<double>(dimension)));
  return from_amplitudes(std::move(alpha));
}

void FastForwardModel::validate() const {
  if (tau <= 0.0) {
    throw invalid_argument("fast-forward model: tau must be positive");
  }
  if (alpha < 0.0 || alpha > 1.0) {
    throw invalid_argument("fast-forward model: alpha must lie in [0, 1]");
  }
  if (delta < 0.0) {
    throw invalid_argument("fast-forward model: delta must be nonnegative");
  }
}

QueryCost query_cost(double t, const FastForwardModel& model, double h_norm) {
  model.validate();
  if (t <= 0.0) {
    throw invalid_argument("query_cost: evolution time must be positive");
  }
  QueryCost c;
  if (model.regime == FFRegime::tau_cutoff) {
    c.queries = static_cast<long long>(std::ceil(t / model.tau - 1e-12));
    if (c.queries < 1) c.queries = 1;
    c.gate_units = static_cast<double>(c.queries);
  } else {
    c.queries = 1;
    c.gate_units = std::pow(t * h_norm, model.alpha);
  }
  return c;
}

void QueryLedger::charge(const QueryCost& cost, double delta, long long repeat) {
  oracle_queries += repeat * cost.queries;
  gate_units += static_cast<double>(repeat) * cost.gate_units;
  accumulated_error = static_cast<double>(oracle_queries) * delta;
}

void QueryLedger::note_ancilla(long long count) {
  ancilla_qubits = std::max(ancilla_qubits, count);
}

std::vector<std::complex<double>> evolution_phases(const SpectralHamiltonian& h, double t) {
  h.validate();
  std::vector<std::complex<double>> out;
  out.reserve(h.eigenvalues.size());
  for (double lambda : h.eigenvalues) {
    out.push_back(std::exp(std::complex<double>(0.0, -lambda * t)));
  }
  return out;
}

}  // namespace mlqsp
