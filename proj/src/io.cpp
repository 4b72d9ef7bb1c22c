#include "hs/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hs/error.hpp"

namespace hs {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump_into(const ojson& j, std::string& out) {
  switch (j.type()) {
    case ojson::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += ojson(key).dump();
        out += ':';
        dump_into(value, out);
      }
      out += '}';
      break;
    }
    case ojson::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ',';
        first = false;
        dump_into(value, out);
      }
      out += ']';
      break;
    }
    case ojson::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "\"" + format_double(v) + "\"";
      break;
    }
    default:
      out += j.dump();
  }
}

double number_field(const ojson& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_number()) {
    throw Error(ErrorKind::InvalidArgument, where + ": missing numeric field \"" + key + "\"");
  }
  return obj.at(key).get<double>();
}

}  // namespace

std::string dump_json(const ojson& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

ojson measure_to_json(const Measure& m) {
  ojson j;
  j["atoms"] = ojson::array();
  for (const Atom& a : m.atoms()) j["atoms"].push_back({{"x", a.x}, {"w", a.w}});
  j["ac"] = ojson::array();
  for (const DensityPiece& p : m.pieces()) {
    ojson coeffs = ojson::array();
    for (double c : p.coeffs) coeffs.push_back(c);
    j["ac"].push_back({{"a", p.a}, {"b", p.b}, {"coeffs", coeffs}});
  }
  return j;
}

Measure measure_from_json(const ojson& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidArgument, "measure: expected a JSON object");
  std::vector<Atom> atoms;
  std::vector<DensityPiece> pieces;
  if (j.contains("atoms")) {
    if (!j["atoms"].is_array()) throw Error(ErrorKind::InvalidArgument, "measure: \"atoms\" must be an array");
    for (std::size_t i = 0; i < j["atoms"].size(); ++i) {
      const std::string where = "atoms[" + std::to_string(i) + "]";
      atoms.push_back({number_field(j["atoms"][i], "x", where), number_field(j["atoms"][i], "w", where)});
    }
  }
  if (j.contains("ac")) {
    if (!j["ac"].is_array()) throw Error(ErrorKind::InvalidArgument, "measure: \"ac\" must be an array");
    for (std::size_t i = 0; i < j["ac"].size(); ++i) {
      const ojson& item = j["ac"][i];
      const std::string where = "ac[" + std::to_string(i) + "]";
      DensityPiece p;
      p.a = number_field(item, "a", where);
      p.b = number_field(item, "b", where);
      if (!item.contains("coeffs") || !item["coeffs"].is_array()) {
        throw Error(ErrorKind::InvalidArgument, where + ": missing \"coeffs\" array");
      }
      const ojson& coeffs = item["coeffs"];
      if (coeffs.empty() || coeffs.size() > 4) {
        throw Error(ErrorKind::InvalidArgument, where + ": densities must have 1 to 4 coefficients (degree <= 3)");
      }
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (!coeffs[k].is_number()) throw Error(ErrorKind::InvalidArgument, where + ": non-numeric coefficient");
        p.coeffs[k] = coeffs[k].get<double>();
      }
      pieces.push_back(p);
    }
  }
  return Measure(std::move(atoms), std::move(pieces));
}

Measure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open measure file " + path);
  ojson j;
  try {
    j = ojson::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidArgument, path + ": " + e.what());
  }
  return measure_from_json(j);
}

ojson energy_class_to_json(const EnergyClass& cls) {
  ojson j;
  j["class"] = cls.convergent() ? "convergent" : "divergent";
  if (cls.convergent()) j["moment"] = cls.moment;
  j["witness"] = {{"samples", cls.witness.samples},
                  {"last_n", cls.witness.last_n},
                  {"last_value", cls.witness.last_value},
                  {"growth_ratio", cls.witness.growth_ratio},
                  {"reason", cls.witness.reason}};
  return j;
}

ojson scan_to_json(const ScanReport& r) {
  ojson j;
  j["schema"] = kScanSchema;
  j["kind"] = r.kind;
  j["window"] = {r.window.lo, r.window.hi};
  j["theta0"] = r.theta0;
  if (r.c) j["c"] = *r.c;
  j["grid_n"] = r.grid.size();
  j["forbidden_fraction"] = r.forbidden_fraction;
  j["hit_count"] = r.hit_count;
  j["all_hits_convergent"] = r.all_hits_convergent;
  if (r.kind == "couplings") {
    j["gamma_members"] = ojson::array();
    for (double a : r.gamma_members) j["gamma_members"].push_back(a);
  }
  j["grid"] = ojson::array();
  for (const GridPoint& g : r.grid) {
    ojson row = {{"y", g.y}, {"class", g.cls.convergent() ? "convergent" : "divergent"}};
    if (g.cls.convergent()) {
      row["moment"] = g.cls.moment;
    } else {
      row["reason"] = g.cls.witness.reason;
    }
    j["grid"].push_back(std::move(row));
  }
  j["extensions"] = ojson::array();
  for (const ExtensionHits& h : r.eigen_hits) {
    ojson ext;
    ext["theta"] = h.theta;
    if (h.alpha) ext["alpha"] = *h.alpha;
    ext["status"] = h.status;
    ext["count_in_support"] = h.count_in_support;
    ext["eigenvalues"] = ojson::array();
    for (const EigenHit& e : h.eigenvalues) {
      ojson row = {{"y", e.y}, {"near_atom", e.near_atom}, {"class", e.cls.convergent() ? "convergent" : "divergent"}};
      if (e.cls.convergent()) row["moment"] = e.cls.moment;
      ext["eigenvalues"].push_back(std::move(row));
    }
    j["extensions"].push_back(std::move(ext));
  }
  return j;
}

std::string scan_to_csv(const ScanReport& r, double cap) {
  std::ostringstream os;
  os << "y,class,I_or_cap,theta,alpha,near_atom\n";
  auto cls_cols = [&](const EnergyClass& c) {
    os << (c.convergent() ? "convergent" : "divergent") << ',' << format_double(c.convergent() ? c.moment : cap);
  };
  for (const GridPoint& g : r.grid) {
    os << format_double(g.y) << ',';
    cls_cols(g.cls);
    os << ",,,\n";
  }
  for (const ExtensionHits& h : r.eigen_hits) {
    for (const EigenHit& e : h.eigenvalues) {
      os << format_double(e.y) << ',';
      cls_cols(e.cls);
      os << ',' << format_double(h.theta) << ',' << (h.alpha ? format_double(*h.alpha) : "") << ','
         << (e.near_atom ? 1 : 0) << '\n';
    }
  }
  return os.str();
}

}  // namespace hs
