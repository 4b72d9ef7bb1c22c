#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hs/extension_params.hpp"
#include "hs/herglotz.hpp"
#include "hs/measure.hpp"

namespace hs {

/// Base extension T_{theta0} together with its measure
/// dmu0 = (1 + x^2) d<u+, E0(x) u+>.
struct AdProblem {
  Measure mu0;
  ExtensionParam theta0;
};

struct AdConfig {
  double root_tol = 1e-10;   // bisection stops once the bracket is this narrow
  ClassifyConfig classify;
  int threads = 1;
  bool include_alpha_infinity = false;  // coupling_sweep: add the alpha = inf extension
};

struct Eigenvalue {
  double y = 0.0;
  // Root lies inside the merge-tolerance neighbourhood of a support point
  // and is reported at the edge of that neighbourhood.
  bool near_atom = false;
};

/// Point spectrum of T_theta in w from the Aronszajn-Donoghue criterion
/// F_{mu0}(y + i0) = cot(theta - theta0), sorted ascending.
/// Throws SameExtension when theta == theta0.
std::vector<Eigenvalue> eigenvalues_for_extension(const AdProblem& p, const ExtensionParam& theta,
                                                  const Window& w, const AdConfig& cfg = {});

/// Eigenvalues of T_{theta0} itself: the atoms of mu0 inside w.
std::vector<double> base_extension_eigenvalues(const AdProblem& p, const Window& w);

/// The unique theta != theta0 having y as an eigenvalue.
/// Throws ForbiddenEnergy when y has divergent inverse square moment.
ExtensionParam extension_for_energy(const AdProblem& p, double y, const AdConfig& cfg = {});

struct GridPoint {
  double y = 0.0;
  EnergyClass cls;
};

struct EigenHit {
  double y = 0.0;
  bool near_atom = false;
  EnergyClass cls;             // classification at the eigenvalue itself
  bool grid_convergent = true;  // classification of the nearest grid point
};

struct ExtensionHits {
  double theta = 0.0;
  std::optional<double> alpha;  // set by coupling sweeps (may be +inf)
  std::string status = "ok";    // "ok" | "same_extension" | "alpha_infinity"
  std::vector<EigenHit> eigenvalues;
  std::size_t count_in_support = 0;  // eigenvalues inside hull(supp mu0) intersected with w
};

struct ScanReport {
  std::string kind;  // "energies" | "couplings"
  Window window;
  double theta0 = 0.0;
  std::optional<double> c;
  std::vector<GridPoint> grid;
  std::vector<ExtensionHits> eigen_hits;
  double forbidden_fraction = 0.0;
  bool all_hits_convergent = true;
  std::size_t hit_count = 0;
  // Coupling sweeps: alphas (finite, nonzero) with no eigenvalue in the
  // scanned support region.
  std::vector<double> gamma_members;
};

/// Classify grid_n equispaced energies of w and cross-check the point
/// spectra of the supplied extensions against the classification.
ScanReport forbidden_energy_scan(const AdProblem& p, const Window& w, int grid_n,
                                 std::span<const double> thetas, const AdConfig& cfg = {});

/// Point spectra of A_{alpha,c} = T_{Psi_c(alpha)} for each alpha. Requires
/// theta0 = pi/2. alpha = 0 is recorded with status "same_extension".
ScanReport coupling_sweep(const AdProblem& p, double c, std::span<const double> alphas,
                          const Window& w, const AdConfig& cfg = {});

}  // namespace hs
