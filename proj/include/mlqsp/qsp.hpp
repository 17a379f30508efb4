#pragma once

#include <vector>

#include <Eigen/Core>

#include "mlqsp/errors.hpp"
#include "mlqsp/filters.hpp"

namespace mlqsp {

// Marker for which phase convention a PhaseFactorSet stores: the control-free
// QETU angles (written φ here) or the plain QSP angles (written ϕ), related by
// an affine shift of pi/4 at the two ends and pi/2 in the interior.
enum class PhaseConvention { qetu, qsp };

struct PhaseFactorSet {
  std::vector<double> qetu_phases;  // (φ₀, ..., φ_d), interpretation per `convention`
  int degree = 0;                   // even d; the vector holds d+1 entries
  PhaseConvention convention = PhaseConvention::qetu;
  double residual = 0.0;  // max node residual reported by the solver (0 for data)

  void validate() const;  // throws invalid_argument on violation
};

// One evaluation of the symmetric-QSP response at argument x = cos(tλ/2):
// g is the real upper-left target entry, h and q the companion values, with
// g² + h² + q²(1−x²) = 1.
struct Su2Response {
  double g_val = 0.0;
  double h_val = 0.0;
  double q_val = 0.0;
  double x = 0.0;
};

// Alternating product e^{iϕ₀Z} e^{iθX} e^{iϕ₁Z} ... with θ = arccos(x).
// A single-entry phase vector (d = 0) denotes the doubled end phase and yields
// e^{2iϕ₀Z}. Requires |x| ≤ 1.
Eigen::Matrix2cd qsp_unitary(const std::vector<double>& phases_qsp, double x);

// Raw QETU product e^{iφ₀X} Π_j [D_j e^{iφ_jX}] with the controlled-evolution
// segments D_j = diag(1, e^{+itλ}) for odd j and diag(1, e^{−itλ}) for even j.
// The global phase (−1)^{d/2} is *not* divided out here.
Eigen::Matrix2cd qetu_matrix(const std::vector<double>& qetu_phases, double t,
                             double lambda);

// Same product but with explicit signed segment angles a_j, i.e.
// D_j = diag(1, e^{i a_j}); the nominal angles are a_j = ±tλ. Used by the
// oracle-error injection to perturb individual segments.
Eigen::Matrix2cd qetu_matrix_with_segments(const std::vector<double>& qetu_phases,
                                           const std::vector<double>& segment_angles);

// Full SU(2) response of the QETU circuit at x = cos(tλ/2), with the global
// phase divided out so g_val is exactly the filter value g(x).
Su2Response qetu_response(const PhaseFactorSet& phases, double t, double lambda);

// Convenience scalar: the g value of a phase set at argument x ∈ [−1, 1],
// evaluated natively in the set's convention.
double response_g(const PhaseFactorSet& phases, double x);

// Affine shift between conventions: ϕ_j = φ_j − π/4 at the two ends (j = 0 and
// j = d) and ϕ_j = φ_j − π/2 in the interior, applied symmetrically so the
// mirror invariant is preserved; involutive to machine precision.
PhaseFactorSet convert_phases(const PhaseFactorSet& phases, PhaseConvention direction);

// The degree-20 reference phase set (QETU convention), shipped as data.
PhaseFactorSet golden_phase_table();

// Damped-Newton solve for symmetric phase factors reproducing an even target
// polynomial at the d/2+1 positive Chebyshev nodes. Returns a QSP-convention
// set with the converged residual recorded; throws solver_failure (carrying
// the best residual) if the iteration cap passes without convergence.
PhaseFactorSet solve_symmetric_phase_factors(const FilterPolynomial& target,
                                             double tol = 1e-12, int max_iter = 500);

// Chebyshev expansion of the polynomial induced by a phase set, with the
// achieved two-band error measured on the standard validation grids.
FilterPolynomial filter_from_phases(const PhaseFactorSet& phases);

}  // namespace mlqsp
