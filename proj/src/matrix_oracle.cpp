#include "hs/matrix_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "hs/ad_spectral.hpp"
#include "hs/error.hpp"
#include "hs/extension_params.hpp"

namespace hs {

namespace {

using cplx = std::complex<double>;

constexpr double kNormalizedTol = 1e-12;
constexpr double kMinGap = 1e-6;
constexpr double kMinOverlap = 1e-3;
constexpr int kMaxDraws = 100;
constexpr double kKrylovTol = 1e-10;

double uniform_pm1(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-52 - 1.0;
}

Eigen::VectorXcd resolvent_apply(const Eigen::MatrixXd& a, const Eigen::VectorXd& phi, cplx z) {
  Eigen::MatrixXcd shifted = a.cast<cplx>();
  shifted.diagonal().array() -= z;
  return shifted.partialPivLu().solve(phi.cast<cplx>());
}

void require_normalized(const MatrixModel& m, const char* who) {
  if (!m.normalized()) {
    throw Error(ErrorKind::NotNormalized,
                std::string(who) + " requires ||(A - iI)^{-1} phi|| = 1; call normalize_pair first");
  }
}

struct Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

Spectrum eigensystem(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  return {es.eigenvalues(), es.eigenvectors()};
}

// Root of the increasing function g on the open interval (lo, hi); g is never
// evaluated at the endpoints.
template <class G>
double bisect_open(G&& g, double lo, double hi) {
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

MatrixModel::MatrixModel(Eigen::MatrixXd a, Eigen::VectorXd phi) : a_(std::move(a)), phi_(std::move(phi)) {
  const Eigen::Index n = a_.rows();
  if (n < 1 || n > kMaxModelDim || a_.cols() != n || phi_.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "MatrixModel: A must be square n x n with 1 <= n <= 64 and phi of length n");
  }
  if (!a_.allFinite() || !phi_.allFinite()) throw Error(ErrorKind::InvalidArgument, "MatrixModel: non-finite entries");
  if ((a_ - a_.transpose()).norm() > 1e-12 * a_.norm()) {
    throw Error(ErrorKind::InvalidArgument, "MatrixModel: A is not self-adjoint");
  }
  if (phi_.norm() == 0.0) throw Error(ErrorKind::InvalidArgument, "MatrixModel: phi must be nonzero");
  normalized_ = std::abs(u_plus().norm() - 1.0) <= kNormalizedTol;
}

Eigen::VectorXcd MatrixModel::u_plus() const { return resolvent_apply(a_, phi_, cplx(0.0, 1.0)); }
Eigen::VectorXcd MatrixModel::u_minus() const { return resolvent_apply(a_, phi_, cplx(0.0, -1.0)); }

MatrixModel random_model(std::uint64_t seed, int n) {
  if (n < 2 || n > kMaxModelDim) {
    throw Error(ErrorKind::InvalidArgument, "random_model: need 2 <= n <= 64, got " + std::to_string(n));
  }
  std::mt19937_64 gen(seed);
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = uniform_pm1(gen);
    Eigen::MatrixXd a = 0.5 * (m + m.transpose());
    Eigen::VectorXd phi(n);
    for (int i = 0; i < n; ++i) phi(i) = uniform_pm1(gen);

    const Spectrum s = eigensystem(a);
    bool ok = phi.norm() > 0.0;
    for (int k = 0; ok && k + 1 < n; ++k) ok = s.values(k + 1) - s.values(k) >= kMinGap;
    const Eigen::VectorXd overlaps = s.vectors.transpose() * phi;
    ok = ok && overlaps.cwiseAbs().minCoeff() >= kMinOverlap;
    if (ok) return MatrixModel(std::move(a), std::move(phi));
  }
  throw Error(ErrorKind::SeedExhausted, "random_model: seed " + std::to_string(seed) +
                                            " produced no admissible model in 100 draws");
}

std::pair<MatrixModel, double> normalize_pair(const MatrixModel& m, double alpha) {
  const double s = m.u_plus().norm();
  MatrixModel out(m.a(), m.phi() / s);
  return {std::move(out), alpha * s * s};
}

Measure spectral_measure(const MatrixModel& m) {
  const Spectrum s = eigensystem(m.a());
  const Eigen::VectorXd overlaps = s.vectors.transpose() * m.phi();

  std::vector<Atom> atoms;
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    const double w = overlaps(k) * overlaps(k);
    if (!atoms.empty() && s.values(k) - atoms.back().x < merge_tolerance(atoms.back().x)) {
      atoms.back().w += w;  // repeated eigenvalue: one atom carrying the eigenspace projection
    } else {
      atoms.push_back({s.values(k), w});
    }
  }
  for (std::size_t k = 1; k < atoms.size(); ++k) {
    if (atoms[k].x - atoms[k - 1].x < merge_tolerance(atoms[k - 1].x)) {
      std::ostringstream os;
      os << "eigenvalues " << atoms[k - 1].x << " and " << atoms[k].x << " remain closer than the merge tolerance";
      throw Error(ErrorKind::DegenerateSpectrum, os.str());
    }
  }
  return Measure(std::move(atoms), {});
}

Measure mu_zero(const MatrixModel& m) {
  require_normalized(m, "mu_zero");
  // (1 + l^2) |<u+, e_k>|^2 = |<phi, e_k>|^2, so mu0 is the spectral measure of phi.
  return spectral_measure(m);
}

double natural_c(const MatrixModel& m) {
  require_normalized(m, "natural_c");
  const Eigen::VectorXcd phi = m.phi().cast<cplx>();
  const cplx c = 0.5 * (phi.dot(m.u_plus()) + phi.dot(m.u_minus()));
  return c.real();
}

std::vector<double> perturb_direct(const MatrixModel& m, double alpha) {
  if (!std::isfinite(alpha)) throw Error(ErrorKind::InvalidArgument, "perturb_direct: alpha must be finite");
  const Eigen::MatrixXd b = m.a() + alpha * m.phi() * m.phi().transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> secular_roots(const MatrixModel& m, double alpha) {
  if (alpha == 0.0 || !std::isfinite(alpha)) {
    throw Error(ErrorKind::InvalidArgument, "secular_roots: alpha must be finite and nonzero");
  }
  const Spectrum s = eigensystem(m.a());
  const Eigen::VectorXd overlaps = s.vectors.transpose() * m.phi();
  const Eigen::Index n = s.values.size();
  std::vector<double> lambda(s.values.data(), s.values.data() + n);
  std::vector<double> w(static_cast<std::size_t>(n));
  double mass = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    w[k] = overlaps(k) * overlaps(k);
    if (!(w[k] > 0.0)) throw Error(ErrorKind::InvalidArgument, "secular_roots: phi is not cyclic (zero weight)");
    mass += w[k];
  }
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (!(lambda[k + 1] > lambda[k])) throw Error(ErrorKind::DegenerateSpectrum, "secular_roots: repeated eigenvalue");
  }

  // g(y) = sum w / (lambda - y) + 1/alpha is increasing between poles.
  const double inv_alpha = 1.0 / alpha;
  auto g = [&](double y) {
    double sum = inv_alpha;
    for (std::size_t k = 0; k < lambda.size(); ++k) sum += w[k] / (lambda[k] - y);
    return sum;
  };

  std::vector<double> roots;
  roots.reserve(lambda.size());
  const double reach = std::abs(alpha) * mass;  // |shift| <= |alpha| ||phi||^2
  if (alpha < 0.0) roots.push_back(bisect_open(g, lambda.front() - reach, lambda.front()));
  for (std::size_t k = 0; k + 1 < lambda.size(); ++k) roots.push_back(bisect_open(g, lambda[k], lambda[k + 1]));
  if (alpha > 0.0) roots.push_back(bisect_open(g, lambda.back(), lambda.back() + reach));
  return roots;
}

double hausdorff_sorted(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return kInfinity;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

AdConsistency ad_consistency(const MatrixModel& m, double alpha) {
  if (alpha == 0.0) {
    throw Error(ErrorKind::SameExtension, "alpha = 0 is the unperturbed operator T_{pi/2}");
  }
  const auto [normalized, alpha_n] = normalize_pair(m, alpha);
  AdConsistency out;
  out.alpha_normalized = alpha_n;
  out.c = natural_c(normalized);
  out.theta = theta_from_coupling({alpha_n, out.c}).theta();

  const AdProblem problem{mu_zero(normalized), ExtensionParam(std::numbers::pi / 2)};
  const auto& atoms = problem.mu0.atoms();
  const double mass = problem.mu0.total_mass();
  const double reach = std::abs(alpha_n) * mass + 1.0;
  const Window window(atoms.front().x - reach, atoms.back().x + reach);

  for (const Eigenvalue& e : eigenvalues_for_extension(problem, ExtensionParam(out.theta), window)) {
    out.ad.push_back(e.y);
    out.near_atom = out.near_atom || e.near_atom;
  }
  out.direct = perturb_direct(m, alpha);
  out.deviation = hausdorff_sorted(out.ad, out.direct);
  return out;
}

double ad_consistency_check(const MatrixModel& m, double alpha) { return ad_consistency(m, alpha).deviation; }

EigvecDecomposition decompose_eigenvector(const MatrixModel& m, double theta, double /*energy*/,
                                          const Eigen::VectorXcd& y) {
  require_normalized(m, "decompose_eigenvector");
  const Eigen::VectorXcd phi = m.phi().cast<cplx>();
  const Eigen::VectorXcd up = m.u_plus();
  const Eigen::VectorXcd um = m.u_minus();
  const cplx phase = std::polar(1.0, -2.0 * theta);
  const cplx p_plus = phi.dot(up);
  const cplx p_minus = phi.dot(um);
  const cplx denom = p_plus + phase * p_minus;
  if (std::abs(denom) <= 1e-12 * (std::abs(p_plus) + std::abs(p_minus))) {
    throw Error(ErrorKind::DegenerateDenominator, "<phi, u+> + e^{-2i theta} <phi, u-> vanishes (theta = theta')");
  }
  const cplx a = phi.dot(y) / denom;
  EigvecDecomposition out;
  out.theta = theta;
  out.c = a * std::polar(1.0, -theta);
  out.x_part = y - a * up - a * phase * um;
  return out;
}

double pairing_residual(const MatrixModel& m, const Eigentriple& first, const Eigentriple& second) {
  const auto d1 = decompose_eigenvector(m, first.theta, first.energy, first.y);
  const auto d2 = decompose_eigenvector(m, second.theta, second.energy, second.y);
  const cplx lhs = -4.0 * std::conj(d1.c) * d2.c * std::sin(first.theta - second.theta);
  const cplx rhs = (first.energy - second.energy) * first.y.dot(second.y);
  return std::abs(lhs - rhs);
}

std::vector<Eigentriple> perturbed_eigentriples(const MatrixModel& m, double alpha) {
  require_normalized(m, "perturbed_eigentriples");
  const double theta = theta_from_coupling({alpha, natural_c(m)}).theta();
  const Spectrum s = eigensystem(m.a() + alpha * m.phi() * m.phi().transpose());
  std::vector<Eigentriple> out;
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    out.push_back({theta, s.values(k), s.vectors.col(k).cast<cplx>()});
  }
  return out;
}

MatrixModel krylov_cyclic_reduce(const MatrixModel& m) {
  const Eigen::Index n = m.dim();
  const double scale = std::max(1.0, m.a().norm());
  Eigen::MatrixXd q(n, n);
  q.col(0) = m.phi() / m.phi().norm();
  Eigen::Index k = 1;
  for (; k < n; ++k) {
    Eigen::VectorXd w = m.a() * q.col(k - 1);
    // Two passes of classical Gram-Schmidt keep Q orthonormal to rounding.
    for (int pass = 0; pass < 2; ++pass) w -= q.leftCols(k) * (q.leftCols(k).transpose() * w);
    const double beta = w.norm();
    if (beta <= kKrylovTol * scale) break;
    q.col(k) = w / beta;
  }
  const Eigen::MatrixXd basis = q.leftCols(k);
  Eigen::MatrixXd reduced = basis.transpose() * m.a() * basis;
  reduced = 0.5 * (reduced + reduced.transpose()).eval();
  return MatrixModel(std::move(reduced), basis.transpose() * m.phi());
}

}  // namespace hs
