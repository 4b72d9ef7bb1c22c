#include "hs/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hs/ad_spectral.hpp"
#include "hs/error.hpp"
#include "hs/extension_params.hpp"
#include "hs/herglotz.hpp"
#include "hs/io.hpp"
#include "hs/matrix_oracle.hpp"
#include "hs/measure.hpp"

namespace hs::cli {

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kOracleTolerance = 1e-8;

struct RunConfig {
  std::string measure_path;
  std::string window;
  int grid = 1001;
  std::string theta0 = "";
  std::string theta;
  std::string thetas;
  int theta_count = 0;
  std::string alpha;
  std::string c = "0";
  std::string alphas;
  std::string z;
  std::string y;
  std::string format = "json";
  double tol_root = 1e-10;
  double cap = 1e12;
  int parallel = 1;
  std::uint64_t seed = 1;
  int models = 1;
  int dim = 0;
  bool no_meta = false;
  bool base = false;
  bool alpha_inf = false;
};

double parse_number(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw Error(ErrorKind::InvalidArgument, std::string("cannot parse ") + what + " from '" + s + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, what));
  return out;
}

Window parse_window(const std::string& s) {
  const auto v = parse_list(s, "--window");
  if (v.size() != 2) throw Error(ErrorKind::InvalidArgument, "--window expects a,b");
  return Window(v[0], v[1]);
}

double required(const std::string& s, const char* flag) {
  if (s.empty()) throw Error(ErrorKind::InvalidArgument, std::string(flag) + " is required");
  return parse_number(s, flag);
}

double theta0_of(const RunConfig& cfg) {
  return cfg.theta0.empty() ? std::numbers::pi / 2 : parse_number(cfg.theta0, "--theta0");
}

AdConfig ad_config(const RunConfig& cfg) {
  AdConfig ad;
  ad.root_tol = cfg.tol_root;
  ad.classify.cap = cfg.cap;
  ad.threads = cfg.parallel;
  ad.include_alpha_infinity = cfg.alpha_inf;
  return ad;
}

Measure load_valid_measure(const RunConfig& cfg) {
  if (cfg.measure_path.empty()) throw Error(ErrorKind::InvalidArgument, "--measure is required");
  Measure m = load_measure(cfg.measure_path);
  const ValidationReport rep = validate(m);
  if (!rep.valid) throw Error(ErrorKind::InvalidArgument, "invalid measure: " + rep.issues.front());
  return m;
}

std::string complex_text(cplx v) {
  const std::string re = format_double(v.real());
  std::string im = format_double(v.imag());
  if (im[0] != '-') im = "+" + im;
  return re + im + "i";
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// Flat objects become a two-line CSV (header, values).
std::string flat_csv(const ojson& j) {
  std::string header;
  std::string row;
  for (const auto& [key, value] : j.items()) {
    if (value.is_structured()) continue;
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += key;
    row += value.is_string() ? value.get<std::string>() : dump_json(value);
  }
  return header + "\n" + row + "\n";
}

void emit(const RunConfig& cfg, const std::string& command, ojson body, std::ostream& out,
          const std::string& csv = {}) {
  if (cfg.format == "csv") {
    out << (csv.empty() ? flat_csv(body) : csv);
    return;
  }
  ojson doc;
  doc["command"] = command;
  for (auto& [key, value] : body.items()) doc[key] = value;
  if (!cfg.no_meta) doc["meta"] = {{"tool", "hs"}, {"version", kVersion}, {"generated_at", utc_now()}};
  out << dump_json(doc) << '\n';
}

int cmd_measure_validate(const RunConfig& cfg, std::ostream& out) {
  if (cfg.measure_path.empty()) throw Error(ErrorKind::InvalidArgument, "--measure is required");
  const Measure m = load_measure(cfg.measure_path);
  const ValidationReport rep = validate(m);
  ojson body;
  body["valid"] = rep.valid;
  body["issues"] = rep.issues;
  body["atoms"] = m.atoms().size();
  body["pieces"] = m.pieces().size();
  if (rep.valid) {
    body["integral_inv_one_plus_sq"] = rep.integral_inv_one_plus_sq;
    body["total_mass"] = m.total_mass();
  }
  emit(cfg, "measure validate", std::move(body), out);
  return rep.valid ? kOk : kValidation;
}

int cmd_herglotz_eval(const RunConfig& cfg, std::ostream& out) {
  const Measure m = load_valid_measure(cfg);
  const auto zv = parse_list(cfg.z, "--z");
  if (zv.size() != 2) throw Error(ErrorKind::InvalidArgument, "--z expects re,im");
  const HerglotzEval e = transform(m, cplx(zv[0], zv[1]));
  ojson body;
  body["z"] = {zv[0], zv[1]};
  body["re"] = e.value.real();
  body["im"] = e.value.imag();
  body["value"] = complex_text(e.value);
  emit(cfg, "herglotz eval", std::move(body), out);
  return kOk;
}

int cmd_herglotz_boundary(const RunConfig& cfg, std::ostream& out) {
  const Measure m = load_valid_measure(cfg);
  const double y = required(cfg.y, "--y");
  const AdConfig ad = ad_config(cfg);
  const EnergyClass cls = inverse_square_moment(m, y, ad.classify);
  const double bv = boundary_value(m, y, ad.classify);
  ojson body;
  body["y"] = y;
  body["boundary_value"] = bv;
  body["moment"] = cls.moment;
  emit(cfg, "herglotz boundary", std::move(body), out);
  return kOk;
}

int cmd_herglotz_classify(const RunConfig& cfg, std::ostream& out) {
  const Measure m = load_valid_measure(cfg);
  const double y = required(cfg.y, "--y");
  ojson body;
  body["y"] = y;
  const ojson cls = energy_class_to_json(inverse_square_moment(m, y, ad_config(cfg).classify));
  for (const auto& [key, value] : cls.items()) body[key] = value;
  emit(cfg, "herglotz classify", std::move(body), out);
  return kOk;
}

int cmd_spectrum_extension(const RunConfig& cfg, std::ostream& out) {
  const AdProblem p{load_valid_measure(cfg), ExtensionParam::reduced(theta0_of(cfg))};
  const Window w = parse_window(cfg.window);
  ojson body;
  body["theta0"] = p.theta0.theta();
  body["window"] = {w.lo, w.hi};
  ojson list = ojson::array();
  if (cfg.base) {
    body["base_extension"] = true;
    for (double y : base_extension_eigenvalues(p, w)) list.push_back({{"y", y}, {"near_atom", false}});
  } else {
    const ExtensionParam theta = ExtensionParam::reduced(required(cfg.theta, "--theta"));
    body["theta"] = theta.theta();
    for (const Eigenvalue& e : eigenvalues_for_extension(p, theta, w, ad_config(cfg))) {
      list.push_back({{"y", e.y}, {"near_atom", e.near_atom}});
    }
  }
  body["count"] = list.size();
  body["eigenvalues"] = std::move(list);
  emit(cfg, "spectrum extension", std::move(body), out);
  return kOk;
}

int cmd_spectrum_energy2theta(const RunConfig& cfg, std::ostream& out) {
  const AdProblem p{load_valid_measure(cfg), ExtensionParam::reduced(theta0_of(cfg))};
  const double y = required(cfg.y, "--y");
  const AdConfig ad = ad_config(cfg);
  const ExtensionParam theta = extension_for_energy(p, y, ad);
  ojson body;
  body["y"] = y;
  body["theta0"] = p.theta0.theta();
  body["theta"] = theta.theta();
  body["boundary_value"] = boundary_value(p.mu0, y, ad.classify);
  emit(cfg, "spectrum energy2theta", std::move(body), out);
  return kOk;
}

std::vector<double> sweep_thetas(const RunConfig& cfg, double theta0) {
  if (!cfg.thetas.empty()) return parse_list(cfg.thetas, "--thetas");
  // theta0 + k pi / (count + 1), k = 1..count: uniform and never theta0
  std::vector<double> out;
  for (int k = 1; k <= cfg.theta_count; ++k) {
    out.push_back(ExtensionParam::reduced(theta0 + k * std::numbers::pi / (cfg.theta_count + 1)).theta());
  }
  return out;
}

int cmd_scan_energies(const RunConfig& cfg, std::ostream& out) {
  const AdProblem p{load_valid_measure(cfg), ExtensionParam::reduced(theta0_of(cfg))};
  const Window w = parse_window(cfg.window);
  const auto thetas = sweep_thetas(cfg, p.theta0.theta());
  const ScanReport r = forbidden_energy_scan(p, w, cfg.grid, thetas, ad_config(cfg));
  emit(cfg, "scan energies", scan_to_json(r), out, scan_to_csv(r, cfg.cap));
  return kOk;
}

int cmd_scan_couplings(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.theta0.empty() && std::abs(theta0_of(cfg) - std::numbers::pi / 2) > 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "scan couplings works with theta0 = pi/2 (the unperturbed operator)");
  }
  const AdProblem p{load_valid_measure(cfg), ExtensionParam(std::numbers::pi / 2)};
  const Window w = parse_window(cfg.window);
  if (cfg.alphas.empty()) throw Error(ErrorKind::InvalidArgument, "--alphas is required");
  const auto alphas = parse_list(cfg.alphas, "--alphas");
  const ScanReport r = coupling_sweep(p, parse_number(cfg.c, "--c"), alphas, w, ad_config(cfg));
  emit(cfg, "scan couplings", scan_to_json(r), out, scan_to_csv(r, cfg.cap));
  return kOk;
}

int cmd_couple_map(const RunConfig& cfg, std::ostream& out) {
  const double c = parse_number(cfg.c, "--c");
  ojson body;
  body["c"] = c;
  if (!cfg.theta.empty()) {
    const ExtensionParam theta(parse_number(cfg.theta, "--theta"));
    const Coupling k = coupling_from_theta(theta, c);
    body["theta"] = theta.theta();
    body["alpha"] = k.alpha;
  } else {
    const Coupling k{required(cfg.alpha, "--alpha"), c};
    const GammaParam g = gamma_from_coupling(k);
    const UnimodularV v = v_from_gamma(g);
    const ExtensionParam theta = k.alpha_infinite() ? theta_from_v(v) : theta_from_coupling(k);
    body["alpha"] = k.alpha;
    body["gamma"] = g.gamma;
    body["v_re"] = v.value().real();
    body["v_im"] = v.value().imag();
    body["v"] = complex_text(v.value());
    body["theta"] = theta.theta();
    body["theta_via_chain"] = theta_from_v(v).theta();
  }
  body["theta_prime"] = excluded_angle(c);
  emit(cfg, "couple map", std::move(body), out);
  return kOk;
}

int cmd_oracle_verify(const RunConfig& cfg, std::ostream& out) {
  const auto alphas = parse_list(cfg.alphas.empty() ? "-10,-1,-0.1,0.1,1,10" : cfg.alphas, "--alphas");
  if (cfg.models < 1) throw Error(ErrorKind::InvalidArgument, "--models must be >= 1");

  ojson cases = ojson::array();
  double max_dev = 0.0;
  double max_secular = 0.0;
  std::string csv = "seed,n,alpha,deviation,secular_deviation,flags\n";
  for (int i = 0; i < cfg.models; ++i) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    const int n = cfg.dim > 0 ? cfg.dim : 2 + static_cast<int>(seed % 9);
    const MatrixModel m = random_model(seed, n);
    for (double alpha : alphas) {
      std::vector<std::string> flags;
      double dev = kInfinity;
      double sec = kInfinity;
      try {
        const AdConsistency r = ad_consistency(m, alpha);
        dev = r.deviation;
        if (r.near_atom) flags.emplace_back("near_atom");
        sec = hausdorff_sorted(secular_roots(m, alpha), r.direct);
      } catch (const Error& e) {
        flags.emplace_back(to_string(e.kind()));
      }
      max_dev = std::max(max_dev, dev);
      max_secular = std::max(max_secular, sec);
      cases.push_back({{"seed", seed}, {"n", n}, {"alpha", alpha}, {"deviation", dev},
                       {"secular_deviation", sec}, {"flags", flags}});
      std::string flag_text;
      for (const auto& f : flags) flag_text += (flag_text.empty() ? "" : ";") + f;
      csv += std::to_string(seed) + "," + std::to_string(n) + "," + format_double(alpha) + "," +
             format_double(dev) + "," + format_double(sec) + "," + flag_text + "\n";
    }
  }
  const bool pass = max_dev < kOracleTolerance;
  ojson body;
  body["schema"] = kOracleSchema;
  body["tolerance"] = kOracleTolerance;
  body["max_deviation"] = max_dev;
  body["max_secular_deviation"] = max_secular;
  body["pass"] = pass;
  body["cases"] = std::move(cases);
  emit(cfg, "oracle verify", std::move(body), out, csv);
  return pass ? kOk : kNumerical;
}

int default_parallelism() {
  if (const char* env = std::getenv("HS_NUM_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.parallel = default_parallelism();

  CLI::App app{"Rank-one singular perturbations: Herglotz transforms, Aronszajn-Donoghue spectra, matrix oracles", "hs"};
  app.require_subcommand(1);
  app.add_option("--measure", cfg.measure_path, "Measure JSON file");
  app.add_option("--window", cfg.window, "Search window a,b");
  app.add_option("--grid", cfg.grid, "Number of grid points")->check(CLI::PositiveNumber);
  app.add_option("--theta0", cfg.theta0, "Base extension angle (default pi/2)");
  app.add_option("--theta", cfg.theta, "Extension angle");
  app.add_option("--thetas", cfg.thetas, "Comma-separated extension angles");
  app.add_option("--theta-count", cfg.theta_count, "Uniform theta sweep size (excludes theta0)");
  app.add_option("--alpha", cfg.alpha, "Coupling constant (inf allowed)");
  app.add_option("--c", cfg.c, "Extension parameter c");
  app.add_option("--alphas", cfg.alphas, "Comma-separated coupling constants");
  app.add_option("--z", cfg.z, "Complex point re,im");
  app.add_option("--y", cfg.y, "Real energy");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol-root", cfg.tol_root, "Root bracket width")->check(CLI::PositiveNumber);
  app.add_option("--cap", cfg.cap, "Divergence cap for G_n")->check(CLI::PositiveNumber);
  app.add_option("--parallel", cfg.parallel, "Worker threads (default HS_NUM_THREADS or 1)")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "First random seed");
  app.add_option("--models", cfg.models, "Number of random models (oracle verify)");
  app.add_option("--dim", cfg.dim, "Model dimension (oracle verify; default cycles 2..10)");
  app.add_flag("--no-meta", cfg.no_meta, "Omit run metadata (timestamps) for byte-identical output");
  app.add_flag("--base", cfg.base, "spectrum extension: eigenvalues of T_theta0 (atoms of mu0)");
  app.add_flag("--alpha-inf", cfg.alpha_inf, "scan couplings: also scan the alpha = inf extension");

  std::string chosen;
  auto group = [&](const char* name, const char* help,
                   std::initializer_list<std::pair<const char*, const char*>> leaves) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    g->fallthrough();
    for (const auto& [leaf, leaf_help] : leaves) {
      CLI::App* l = g->add_subcommand(leaf, leaf_help);
      l->fallthrough();
      l->callback([&chosen, name, leaf = std::string(leaf)] { chosen = std::string(name) + " " + leaf; });
    }
  };
  group("measure", "Measure files", {{"validate", "Check a measure file"}});
  group("herglotz", "Herglotz transform",
        {{"eval", "F_mu(z)"}, {"boundary", "F_mu(y + i0)"}, {"classify", "Inverse square moment at y"}});
  group("spectrum", "Aronszajn-Donoghue criterion",
        {{"extension", "Eigenvalues of T_theta in a window"}, {"energy2theta", "Extension having y as eigenvalue"}});
  group("scan", "Grid scans", {{"energies", "Forbidden-energy scan"}, {"couplings", "Coupling sweep"}});
  group("couple", "Parameter maps", {{"map", "(alpha, c) -> gamma -> v -> theta, or theta -> alpha with --theta"}});
  group("oracle", "Matrix oracle", {{"verify", "AD criterion vs direct diagonalization"}});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kUsage;
  }

  try {
    if (chosen == "measure validate") return cmd_measure_validate(cfg, out);
    if (chosen == "herglotz eval") return cmd_herglotz_eval(cfg, out);
    if (chosen == "herglotz boundary") return cmd_herglotz_boundary(cfg, out);
    if (chosen == "herglotz classify") return cmd_herglotz_classify(cfg, out);
    if (chosen == "spectrum extension") return cmd_spectrum_extension(cfg, out);
    if (chosen == "spectrum energy2theta") return cmd_spectrum_energy2theta(cfg, out);
    if (chosen == "scan energies") return cmd_scan_energies(cfg, out);
    if (chosen == "scan couplings") return cmd_scan_couplings(cfg, out);
    if (chosen == "couple map") return cmd_couple_map(cfg, out);
    if (chosen == "oracle verify") return cmd_oracle_verify(cfg, out);
  } catch (const Error& e) {
    err << dump_json({{"error", to_string(e.kind())}, {"message", e.what()}}) << '\n';
    return is_numerical(e.kind()) ? kNumerical : kValidation;
  }
  err << app.help();
  return kUsage;
}

}  // namespace hs::cli
