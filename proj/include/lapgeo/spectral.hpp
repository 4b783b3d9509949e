#pragma once
#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "lapgeo/geometry.hpp"
#include "lapgeo/immersion.hpp"
#include "lapgeo/tolerances.hpp"

namespace lapgeo {

struct SpectralComponent {
  int t = 0;          // frequency index
  double lambda = 0;  // (2 pi t / T)^2
  Eigen::VectorXd a, b;  // cosine / sine amplitudes
  double amplitude = 0;
};

struct SpectralDecomposition {
  double period = 0;
  Eigen::VectorXd mean;
  std::vector<SpectralComponent> components;  // every bin up to Nyquist
  std::vector<int> type_set;                  // indices above amp_tol
  int order_low = 0, order_high = 0;
  int k_type = 0;
  bool infinite = false;  // amplitudes persist near the Nyquist index
  int samples = 0, m = 0;

  const SpectralComponent& component(int t) const;
  /// Exact trigonometric samples of one component on the analysis grid.
  Eigen::MatrixXd synthesize(int t, int derivative = 0) const;
};

SpectralDecomposition decompose_closed_curve(const SampledImmersion& curve,
                                             const Tolerances& tol = {});

struct MinimalPolynomialFit {
  int degree = 0;
  Eigen::VectorXd coeffs;  // monic: t^k + c1 t^{k-1} + ... + ck
  double residual = 0;     // relative
  std::vector<std::complex<double>> roots;
  bool nonterminating = false;
  bool rank_warning = false;
};

MinimalPolynomialFit minimal_polynomial_fit(const SampledImmersion& curve, int k_max,
                                            const Tolerances& tol = {});

struct LinearFitAxb {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  double residual = 0;  // relative to |Delta x|
  bool linearly_independent = false;
};

LinearFitAxb linear_fit_Ax_b(const SampledImmersion& S, const Tolerances& tol = {});

struct ConjugateResult {
  SampledImmersion curve;
  double speed_deviation = 0;
  bool unit_speed = false;
};

/// Flips the sign of the higher-frequency component of a 2-type curve.
ConjugateResult conjugate_2type(const SpectralDecomposition& D, const Tolerances& tol = {});

/// Component samples for subspace/orthogonality analysis; derivative blocks
/// are per intrinsic axis.
struct ComponentSet {
  int m = 0, n_axes = 1;
  std::vector<double> lambda;
  std::vector<Eigen::MatrixXd> samples;
  std::vector<std::vector<Eigen::MatrixXd>> dsamples;
};

ComponentSet components_from_decomposition(const SpectralDecomposition& D);

struct OrthogonalityReport {
  bool linearly_independent = false, orthogonal = false;
  bool pointwise_orthogonal = false, strongly_pointwise_orthogonal = false;
  std::vector<int> subspace_dims;
  int span_dim = 0;
  double max_principal_cosine = 0;
  double pointwise_sup = 0, strongly_sup = 0;  // normalized
};

OrthogonalityReport orthogonality_report(const ComponentSet& C, const Tolerances& tol = {});

struct DualVerdict {
  bool dual = false;
  bool null_2type = false;
};

DualVerdict dual_2type_check(double lambda1, double lambda2);

struct TwoTypeInvariants {
  double alpha2 = 0;  // squared mean curvature
  double tau = 0;     // scalar curvature
  double h2 = 0;      // squared norm of the second fundamental form
};

/// Invariants of a mass-symmetric spherical 2-type hypersurface from its two
/// eigenvalues alone.
TwoTypeInvariants spherical_2type_invariants(double lambda_p, double lambda_q, int n);

}  // namespace lapgeo
