#pragma once

#include <string>

#include <json.hpp>

#include "hs/ad_spectral.hpp"
#include "hs/measure.hpp"

namespace hs {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kScanSchema = "ad-scan/1";
inline constexpr const char* kOracleSchema = "oracle-suite/1";

/// %.17g, with -0 printed as 0 and non-finite values as inf / -inf / nan.
std::string format_double(double v);

/// Compact JSON with every floating point number written by format_double.
/// Non-finite numbers become the strings "inf", "-inf", "nan".
std::string dump_json(const ojson& j);

/// {"atoms":[{"x":..,"w":..}],"ac":[{"a":..,"b":..,"coeffs":[c0,c1,c2,c3]}]}
ojson measure_to_json(const Measure& m);

/// Throws InvalidArgument on schema violations (missing fields, more than
/// four coefficients, non-numeric values).
Measure measure_from_json(const ojson& j);
Measure load_measure(const std::string& path);

ojson energy_class_to_json(const EnergyClass& cls);
ojson scan_to_json(const ScanReport& r);

/// y,class,I_or_cap,theta,alpha,near_atom
/// Grid rows first (theta/alpha/near_atom empty), then one row per
/// eigenvalue of each extension.
std::string scan_to_csv(const ScanReport& r, double cap);

}  // namespace hs
