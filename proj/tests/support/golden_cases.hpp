#pragma once

// Closed-form CLI fixtures. Each expected output lives in
// fixtures/golden/<name>.json and was checked by hand:
//   delta0:      F(i) = i, I(1) = 1, F(1 + i0) = -1, theta = pi/4 -> y = 1
//   two_atom:    F(2i) = 2i/5, F(0 + i0) = 0, theta = 0 -> y = 0
//   uniform01:   \int dmu / (1 + x^2) = pi/4, Im F(1/2 + i) = g_1(1/2) = 2 arctan(1/2)
//   five_delta2: mu0 of A = [2], phi = [sqrt 5]; c = 2, alpha = 1/2 -> y = 9/2
//   couple map:  (1/2, 2) -> gamma = -4, theta = arctan 4; (1, 0) -> v = -i

#include <string>
#include <vector>

namespace hs::test {

struct GoldenCase {
  std::string name;
  std::vector<std::string> args;  // "@" prefixes a path under fixtures/measures
};

inline const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases{
      {"delta0_eval", {"herglotz", "eval", "--measure", "@delta0.json", "--z", "0,1"}},
      {"delta0_classify", {"herglotz", "classify", "--measure", "@delta0.json", "--y", "1"}},
      {"delta0_boundary", {"herglotz", "boundary", "--measure", "@delta0.json", "--y", "1"}},
      {"delta0_extension",
       {"spectrum", "extension", "--measure", "@delta0.json", "--theta", "0.78539816339744828", "--window",
        "0.5,1.5"}},
      {"two_atom_eval", {"herglotz", "eval", "--measure", "@two_atom.json", "--z", "0,2"}},
      {"two_atom_boundary", {"herglotz", "boundary", "--measure", "@two_atom.json", "--y", "0"}},
      {"two_atom_extension",
       {"spectrum", "extension", "--measure", "@two_atom.json", "--theta", "0", "--window", "-0.5,0.5"}},
      {"uniform01_validate", {"measure", "validate", "--measure", "@uniform01.json"}},
      {"uniform01_eval", {"herglotz", "eval", "--measure", "@uniform01.json", "--z", "0.5,1"}},
      {"five_delta2_coupling",
       {"scan", "couplings", "--measure", "@five_delta2.json", "--c", "2", "--alphas", "0.5", "--window", "0,10"}},
      {"couple_map_half_two", {"couple", "map", "--alpha", "0.5", "--c", "2"}},
      {"couple_map_one_zero", {"couple", "map", "--alpha", "1", "--c", "0"}},
  };
  return cases;
}

/// Expands "@file" arguments and appends --no-meta.
inline std::vector<std::string> golden_argv(const GoldenCase& c, const std::string& fixture_dir) {
  std::vector<std::string> out;
  for (const auto& a : c.args) out.push_back(a.starts_with("@") ? fixture_dir + "/measures/" + a.substr(1) : a);
  out.emplace_back("--no-meta");
  return out;
}

}  // namespace hs::test
