#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hs/measure.hpp"

namespace hs {

inline constexpr int kMaxModelDim = 64;

/// Real symmetric A (n <= 64) with a marked vector phi. `normalized` means
/// ||(A - iI)^{-1} phi|| = 1 to 1e-12.
class MatrixModel {
 public:
  MatrixModel(Eigen::MatrixXd a, Eigen::VectorXd phi);

  const Eigen::MatrixXd& a() const noexcept { return a_; }
  const Eigen::VectorXd& phi() const noexcept { return phi_; }
  Eigen::Index dim() const noexcept { return a_.rows(); }
  bool normalized() const noexcept { return normalized_; }

  /// u+ = (A - iI)^{-1} phi and u- = (A + iI)^{-1} phi.
  Eigen::VectorXcd u_plus() const;
  Eigen::VectorXcd u_minus() const;

 private:
  Eigen::MatrixXd a_;
  Eigen::VectorXd phi_;
  bool normalized_ = false;
};

/// Reproducible model with simple spectrum (gaps >= 1e-6) and every
/// eigenbasis overlap |<phi, e_k>| >= 1e-3. Throws SeedExhausted after 100
/// rejected draws.
MatrixModel random_model(std::uint64_t seed, int n);

/// (phi, alpha) -> (phi / s, alpha s^2) with s = ||(A - iI)^{-1} phi||;
/// the rank-one term alpha <phi, .> phi is unchanged.
std::pair<MatrixModel, double> normalize_pair(const MatrixModel& m, double alpha);

/// sum_k |<phi, e_k>|^2 delta_{lambda_k}.
Measure spectral_measure(const MatrixModel& m);

/// (1 + x^2) d<u+, E(x) u+>; requires a normalized model.
Measure mu_zero(const MatrixModel& m);

/// c = <phi, A (A^2 + I)^{-1} phi> = (<phi, u+> + <phi, u->) / 2.
double natural_c(const MatrixModel& m);

/// Eigenvalues of A + alpha phi phi^T by dense diagonalization, ascending.
std::vector<double> perturb_direct(const MatrixModel& m, double alpha);

/// Roots of 1 + alpha sum_k w_k / (lambda_k - y), by bracketed bisection.
std::vector<double> secular_roots(const MatrixModel& m, double alpha);

struct AdConsistency {
  double deviation = 0.0;     // Hausdorff distance, +inf on count mismatch
  double alpha_normalized = 0.0;
  double c = 0.0;
  double theta = 0.0;
  std::vector<double> ad;      // eigenvalues from the AD criterion
  std::vector<double> direct;  // eigenvalues from perturb_direct
  bool near_atom = false;      // any AD root flagged near an atom
};

/// AD route vs direct diagonalization for A + alpha phi phi^T.
AdConsistency ad_consistency(const MatrixModel& m, double alpha);
double ad_consistency_check(const MatrixModel& m, double alpha);

/// Max over both lists of the distance to the nearest element of the other;
/// +inf when the sizes differ.
double hausdorff_sorted(const std::vector<double>& a, const std::vector<double>& b);

/// y = x + c e^{i theta} u+ + c e^{-i theta} u-, <phi, x> = 0.
struct EigvecDecomposition {
  Eigen::VectorXcd x_part;
  std::complex<double> c;
  double theta = 0.0;
};

EigvecDecomposition decompose_eigenvector(const MatrixModel& m, double theta, double energy,
                                          const Eigen::VectorXcd& y);

struct Eigentriple {
  double theta = 0.0;
  double energy = 0.0;
  Eigen::VectorXcd y;
};

/// |-4 conj(c1) c2 sin(theta1 - theta2) - (E1 - E2) <y1, y2>|.
double pairing_residual(const MatrixModel& m, const Eigentriple& first, const Eigentriple& second);

/// Eigenpairs of A + alpha phi phi^T as triples labelled by
/// theta = Psi_c(alpha s^2) of the normalized model. Requires a normalized
/// model.
std::vector<Eigentriple> perturbed_eigentriples(const MatrixModel& m, double alpha);

/// Compression of (A, phi) to the Krylov space span{phi, A phi, ...}.
MatrixModel krylov_cyclic_reduce(const MatrixModel& m);

}  // namespace hs
