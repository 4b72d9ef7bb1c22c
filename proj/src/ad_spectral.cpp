#include "hs/ad_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hs/error.hpp"
#include "hs/parallel.hpp"

namespace hs {

namespace {

constexpr double kSameExtensionTol = 1e-12;

// A connected component of supp(mu0). *_blowup records whether F tends to
// infinity when the component is approached from outside at that end
// (atom there, or density not vanishing at the endpoint).
struct SupportBlock {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_blowup = false;
  bool hi_blowup = false;
};

bool density_nonzero_at(const DensityPiece& p, double x) {
  double scale = 0.0;
  double pow_x = 1.0;
  for (double c : p.coeffs) {
    scale = std::max(scale, std::abs(c) * pow_x);
    pow_x *= std::max(1.0, std::abs(x));
  }
  return std::abs(p.density(x)) > 1e-13 * scale;
}

std::vector<SupportBlock> support_blocks(const Measure& m) {
  std::vector<SupportBlock> spans;
  for (const Atom& a : m.atoms()) spans.push_back({a.x, a.x, true, true});
  for (const DensityPiece& p : m.pieces()) {
    const bool zero = std::all_of(p.coeffs.begin(), p.coeffs.end(), [](double c) { return c == 0.0; });
    if (zero) continue;
    spans.push_back({p.a, p.b, density_nonzero_at(p, p.a), density_nonzero_at(p, p.b)});
  }
  std::sort(spans.begin(), spans.end(),
            [](const SupportBlock& l, const SupportBlock& r) { return l.lo < r.lo; });

  std::vector<SupportBlock> out;
  for (const SupportBlock& s : spans) {
    if (!out.empty() && s.lo <= out.back().hi) {
      SupportBlock& b = out.back();
      if (s.lo == b.lo) b.lo_blowup = b.lo_blowup || s.lo_blowup;
      if (s.hi > b.hi) {
        b.hi = s.hi;
        b.hi_blowup = s.hi_blowup;
      } else if (s.hi == b.hi) {
        b.hi_blowup = b.hi_blowup || s.hi_blowup;
      }
    } else {
      out.push_back(s);
    }
  }
  return out;
}

struct Gap {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_support = false;
  bool lo_blowup = false;
  bool hi_support = false;
  bool hi_blowup = false;
};

std::vector<Gap> gaps_in_window(const std::vector<SupportBlock>& blocks, const Window& w) {
  std::vector<Gap> gaps;
  double left = w.lo;
  bool left_support = false;
  bool left_blowup = false;
  for (const SupportBlock& b : blocks) {
    if (b.hi < w.lo) continue;
    if (b.lo > w.hi) break;
    if (b.lo > left) gaps.push_back({left, b.lo, left_support, left_blowup, true, b.lo_blowup});
    if (b.hi >= left) {
      left = b.hi;
      left_support = true;
      left_blowup = b.hi_blowup;
    }
  }
  if (left < w.hi) gaps.push_back({left, w.hi, left_support, left_blowup, false, false});
  return gaps;
}

double cot_target(double theta, double theta0) {
  const double d = theta - theta0;
  return std::cos(d) / std::sin(d);
}

void require_distinct(const AdProblem& p, const ExtensionParam& theta) {
  if (angle_distance_mod_pi(theta.theta(), p.theta0.theta()) <= kSameExtensionTol) {
    throw Error(ErrorKind::SameExtension,
                "the criterion covers theta != theta0; use base_extension_eigenvalues");
  }
}

std::pair<double, double> support_hull(const std::vector<SupportBlock>& blocks) {
  if (blocks.empty()) return {kInfinity, -kInfinity};
  return {blocks.front().lo, blocks.back().hi};
}

EigenHit make_hit(const Eigenvalue& e, const Measure& mu0, const AdConfig& cfg) {
  EigenHit hit;
  hit.y = e.y;
  hit.near_atom = e.near_atom;
  hit.cls = inverse_square_moment(mu0, e.y, cfg.classify);
  return hit;
}

}  // namespace

std::vector<Eigenvalue> eigenvalues_for_extension(const AdProblem& p, const ExtensionParam& theta,
                                                  const Window& w, const AdConfig& cfg) {
  require_distinct(p, theta);
  const double target = cot_target(theta.theta(), p.theta0.theta());
  const RealAxisEvaluator F(p.mu0);
  const auto blocks = support_blocks(p.mu0);

  std::vector<Eigenvalue> roots;
  for (const Gap& g : gaps_in_window(blocks, w)) {
    const double a = g.lo_support ? g.lo + merge_tolerance(g.lo) : g.lo;
    const double b = g.hi_support ? g.hi - merge_tolerance(g.hi) : g.hi;
    if (!(a < b)) continue;
    const double fa = F(a);
    const double fb = F(b);
    if (fa <= target && target <= fb) {
      // F is strictly increasing off the support.
      double lo = a;
      double hi = b;
      for (int it = 0; it < 400 && hi - lo > cfg.root_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (F(mid) < target ? lo : hi) = mid;
      }
      roots.push_back({0.5 * (lo + hi), false});
    } else if (target < fa && g.lo_support && g.lo_blowup) {
      roots.push_back({a, true});
    } else if (target > fb && g.hi_support && g.hi_blowup) {
      roots.push_back({b, true});
    }
  }
  return roots;
}

std::vector<double> base_extension_eigenvalues(const AdProblem& p, const Window& w) {
  std::vector<double> out;
  for (const Atom& a : p.mu0.atoms()) {
    if (w.contains(a.x)) out.push_back(a.x);
  }
  return out;
}

ExtensionParam extension_for_energy(const AdProblem& p, double y, const AdConfig& cfg) {
  const double f = boundary_value(p.mu0, y, cfg.classify);  // throws ForbiddenEnergy
  // arccot(f) in (0, pi), hence theta != theta0.
  return ExtensionParam::reduced(p.theta0.theta() + std::atan2(1.0, f));
}

ScanReport forbidden_energy_scan(const AdProblem& p, const Window& w, int grid_n,
                                 std::span<const double> thetas, const AdConfig& cfg) {
  if (grid_n < 2) throw Error(ErrorKind::InvalidArgument, "forbidden_energy_scan: grid_n must be >= 2");

  ScanReport report;
  report.kind = "energies";
  report.window = w;
  report.theta0 = p.theta0.theta();

  const double step = w.width() / (grid_n - 1);
  report.grid.resize(static_cast<std::size_t>(grid_n));
  parallel_for(report.grid.size(), cfg.threads, [&](std::size_t j) {
    const double y = j + 1 == report.grid.size() ? w.hi : w.lo + static_cast<double>(j) * step;
    report.grid[j] = {y, inverse_square_moment(p.mu0, y, cfg.classify)};
  });
  std::size_t divergent = 0;
  for (const GridPoint& g : report.grid) divergent += g.cls.convergent() ? 0 : 1;
  report.forbidden_fraction = static_cast<double>(divergent) / static_cast<double>(grid_n);

  std::vector<double> sorted(thetas.begin(), thetas.end());
  std::sort(sorted.begin(), sorted.end());
  report.eigen_hits.resize(sorted.size());
  parallel_for(sorted.size(), cfg.threads, [&](std::size_t i) {
    ExtensionHits& hits = report.eigen_hits[i];
    const ExtensionParam theta = ExtensionParam::reduced(sorted[i]);
    hits.theta = theta.theta();
    if (angle_distance_mod_pi(theta.theta(), p.theta0.theta()) <= kSameExtensionTol) {
      hits.status = "same_extension";
      return;
    }
    for (const Eigenvalue& e : eigenvalues_for_extension(p, theta, w, cfg)) {
      EigenHit hit = make_hit(e, p.mu0, cfg);
      const double idx = std::round((hit.y - w.lo) / step);
      const auto j = static_cast<std::size_t>(std::clamp(idx, 0.0, static_cast<double>(grid_n - 1)));
      hit.grid_convergent = report.grid[j].cls.convergent();
      hits.eigenvalues.push_back(std::move(hit));
    }
    hits.count_in_support = hits.eigenvalues.size();
  });

  for (const ExtensionHits& h : report.eigen_hits) {
    for (const EigenHit& hit : h.eigenvalues) {
      ++report.hit_count;
      report.all_hits_convergent = report.all_hits_convergent && hit.cls.convergent() && hit.grid_convergent;
    }
  }
  return report;
}

ScanReport coupling_sweep(const AdProblem& p, double c, std::span<const double> alphas,
                          const Window& w, const AdConfig& cfg) {
  if (std::abs(p.theta0.theta() - std::numbers::pi / 2) > kSameExtensionTol) {
    throw Error(ErrorKind::InvalidArgument, "coupling_sweep: theta0 must be pi/2 (the unperturbed operator)");
  }
  if (!std::isfinite(c)) throw Error(ErrorKind::InvalidArgument, "coupling_sweep: c must be finite");

  ScanReport report;
  report.kind = "couplings";
  report.window = w;
  report.theta0 = p.theta0.theta();
  report.c = c;

  std::vector<double> sorted(alphas.begin(), alphas.end());
  for (double a : sorted) {
    if (std::isnan(a)) throw Error(ErrorKind::InvalidArgument, "coupling_sweep: alpha is NaN");
  }
  std::sort(sorted.begin(), sorted.end());
  if (cfg.include_alpha_infinity) sorted.push_back(kInfinity);

  const auto [hull_lo, hull_hi] = support_hull(support_blocks(p.mu0));
  report.eigen_hits.resize(sorted.size());
  parallel_for(sorted.size(), cfg.threads, [&](std::size_t i) {
    ExtensionHits& hits = report.eigen_hits[i];
    const double alpha = sorted[i];
    hits.alpha = alpha;
    if (alpha == 0.0) {
      hits.theta = p.theta0.theta();
      hits.status = "same_extension";
      return;
    }
    ExtensionParam theta;
    if (std::isinf(alpha)) {
      hits.status = "alpha_infinity";
      theta = theta_from_v(v_from_gamma(gamma_from_coupling({alpha, c})));
    } else {
      theta = theta_from_coupling({alpha, c});
    }
    hits.theta = theta.theta();
    if (angle_distance_mod_pi(theta.theta(), p.theta0.theta()) <= kSameExtensionTol) {
      // |alpha| so small that Psi_c(alpha) rounds onto pi/2
      hits.status = "same_extension";
      return;
    }
    for (const Eigenvalue& e : eigenvalues_for_extension(p, theta, w, cfg)) {
      EigenHit hit = make_hit(e, p.mu0, cfg);
      if (hit.y >= hull_lo && hit.y <= hull_hi) ++hits.count_in_support;
      hits.eigenvalues.push_back(std::move(hit));
    }
  });

  for (const ExtensionHits& h : report.eigen_hits) {
    for (const EigenHit& hit : h.eigenvalues) {
      ++report.hit_count;
      report.all_hits_convergent = report.all_hits_convergent && hit.cls.convergent();
    }
    if (h.status == "ok" && h.count_in_support == 0) report.gamma_members.push_back(*h.alpha);
  }
  return report;
}

}  // namespace hs
