#pragma once

#include "phaseportrait.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace toda {

// One run's worth of settings. lambda/n are given in the user-facing
// parametrization (type A: diagonal entries summing to zero; B2: the pair
// (a, b) of diag(a, b, 0, -b, -a)); empty means use the built-in defaults.
struct RunConfig {
  AlgebraType type = AlgebraType::A;
  int rank = 2;
  std::vector<double> lambda_data;
  std::vector<double> n_data;
  uint64_t seed = 2026;
  double t_max = 200.0;
  OrderKind order = OrderKind::Strong;
  int shots_per_node = 64;
  int max_pairs_per_gap = 10;
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
};

std::vector<double> default_lambda_data(AlgebraType type, int rank);
std::vector<double> default_n_data(AlgebraType type, int rank);

// Throws ConfigError on unknown keys or malformed values.
RunConfig config_from_json(const nlohmann::json& j);

// Everything a command needs, built once per configuration. Construction
// validates genericity: Lambda and N regular, and the critical values
// killing_form(Ad_w Lambda, N) pairwise distinct.
struct Lab {
  RunConfig cfg;
  RootSystem rs;
  WeylGroup wg;
  Realization g;
  BruhatPoset strong;
  BruhatPoset weak_left;
  BruhatPoset weak_right;
  TodaSpec spec;
};

Lab build_lab(const RunConfig& cfg);

// Resolved-settings echo embedded in every document.
nlohmann::json config_echo(const Lab& lab);

nlohmann::json roots_doc(const Lab& lab);
nlohmann::json weyl_doc(const Lab& lab);
nlohmann::json bruhat_doc(const Lab& lab, OrderKind kind);

// kind is "lax" or "group"; the start is a seeded random point of the
// isospectral manifold (resp. of the compact group).
struct FlowRun {
  std::string csv;
  nlohmann::json diag;
};
FlowRun run_flow(const Lab& lab, const std::string& kind);

nlohmann::json curves_doc(const Lab& lab);
nlohmann::json linearize_doc(const Lab& lab);
nlohmann::json connectivity_doc(const Lab& lab);

// Full invariant battery: linearization, covers, curves, reachability
// versus the strong order, weak-order containment, incomparable
// separation, and covariance of the labeled graph under replacing Lambda
// by Ad_{w0} Lambda. doc["all_passed"] reports the verdict.
nlohmann::json verify_doc(const Lab& lab);

std::string format_double(double x);  // shortest round-trip, "%.17g"

}  // namespace toda
