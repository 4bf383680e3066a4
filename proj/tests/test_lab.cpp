#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "errors.hpp"
#include "lab.hpp"

#include <set>

using namespace toda;
using nlohmann::json;

TEST_CASE("default Cartan data is frozen and generic") {
  CHECK(default_lambda_data(AlgebraType::A, 2) ==
        std::vector<double>({1.0, 0.0, -1.0}));
  CHECK(default_lambda_data(AlgebraType::A, 3) ==
        std::vector<double>({1.5, 0.5, -0.5, -1.5}));
  CHECK(default_lambda_data(AlgebraType::B, 2) ==
        std::vector<double>({2.0, 1.0}));
  CHECK(default_n_data(AlgebraType::A, 1) == std::vector<double>({1.0, -1.0}));
  CHECK(default_n_data(AlgebraType::A, 2) ==
        std::vector<double>({6.0, 3.0, -9.0}));
  CHECK(default_n_data(AlgebraType::A, 3) ==
        std::vector<double>({38.0, 34.0, 14.0, -86.0}));
  CHECK(default_n_data(AlgebraType::A, 4) ==
        std::vector<double>({310.0, 305.0, 275.0, 95.0, -985.0}));
  CHECK(default_n_data(AlgebraType::B, 2) == std::vector<double>({4.0, 1.0}));

  // genericity must hold for every supported algebra, A4 included
  for (auto [type, rank] :
       {std::pair{AlgebraType::A, 1}, std::pair{AlgebraType::A, 2},
        std::pair{AlgebraType::A, 3}, std::pair{AlgebraType::A, 4},
        std::pair{AlgebraType::B, 2}}) {
    RunConfig cfg;
    cfg.type = type;
    cfg.rank = rank;
    Lab lab = build_lab(cfg);
    std::set<double> crit;
    for (const auto& el : lab.wg.elements) {
      Eigen::VectorXd cw =
          el.coweight_action.cast<double>() * lab.spec.lambda_coords;
      crit.insert(killing_form(lab.g, lab.g.cartan_element(cw), lab.spec.N));
    }
    CHECK(static_cast<int>(crit.size()) == lab.wg.size());
  }
}

TEST_CASE("config parsing: defaults, overrides, rejection") {
  RunConfig def = config_from_json(json::object());
  CHECK(def.type == AlgebraType::A);
  CHECK(def.rank == 2);
  CHECK(def.seed == 2026);
  CHECK(def.order == OrderKind::Strong);

  RunConfig cfg = config_from_json(json::parse(
      R"({"type":"B","rank":2,"seed":7,"t_max":55.0,"order":"weak-left",
          "lambda":[3.0,1.0],"n":[5.0,2.0],"shots_per_node":4})"));
  CHECK(cfg.type == AlgebraType::B);
  CHECK(cfg.seed == 7);
  CHECK(cfg.t_max == 55.0);
  CHECK(cfg.order == OrderKind::WeakLeft);
  CHECK(cfg.lambda_data == std::vector<double>({3.0, 1.0}));
  CHECK(cfg.shots_per_node == 4);

  CHECK_THROWS_AS(config_from_json(json::parse(R"({"tmax":3})")),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"type":"AB"})")),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"rank":"two"})")),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"t_max":-1.0})")),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"([1,2])")), ConfigError);
}

TEST_CASE("build_lab validates regularity and critical-value separation") {
  RunConfig degenerate;
  degenerate.lambda_data = {1.0, 1.0, -2.0};  // alpha_1 vanishes
  CHECK_THROWS_AS(build_lab(degenerate), ConfigError);

  RunConfig colliding;
  colliding.n_data = {1.0, 0.0, -1.0};  // N parallel to Lambda: w and w^-1
                                        // share a critical value
  CHECK_THROWS_AS(build_lab(colliding), ConfigError);

  RunConfig bad_n;
  bad_n.n_data = {1.0, 1.0, -2.0};  // non-regular N
  CHECK_THROWS_AS(build_lab(bad_n), ConfigError);
}

TEST_CASE("documents embed the resolved config and frozen counts") {
  RunConfig cfg;
  Lab lab = build_lab(cfg);

  json roots = roots_doc(lab);
  CHECK(roots["command"] == "roots");
  CHECK(roots["algebra"] == "A2");
  CHECK(roots["n_positive"] == 3);
  CHECK(roots["roots"].size() == 6);
  CHECK(roots["config"]["lambda"] == json::array({1.0, 0.0, -1.0}));
  CHECK(roots["config"]["n"] == json::array({6.0, 3.0, -9.0}));

  json weyl = weyl_doc(lab);
  CHECK(weyl["size"] == 6);
  CHECK(weyl["elements"].size() == 6);
  CHECK(weyl["elements"][0]["length"] == 0);
  CHECK(weyl["reflections"].size() == 3);

  json strong = bruhat_doc(lab, OrderKind::Strong);
  CHECK(strong["kind"] == "strong");
  CHECK(strong["n_covers"] == 8);
  CHECK(strong["n_strict_pairs"] == 13);
  json weak = bruhat_doc(lab, OrderKind::WeakLeft);
  CHECK(weak["n_covers"] == 6);
  CHECK(weak["n_strict_pairs"] == 11);
}

TEST_CASE("flow runs are deterministic and conserve what they must") {
  RunConfig cfg;
  cfg.t_max = 40.0;
  Lab lab = build_lab(cfg);

  FlowRun lax1 = run_flow(lab, "lax");
  FlowRun lax2 = run_flow(lab, "lax");
  CHECK(lax1.csv == lax2.csv);
  CHECK(lax1.diag.dump() == lax2.diag.dump());
  CHECK(lax1.csv.substr(0, 12) == "t,L_1_1,L_1_");
  CHECK(lax1.diag["spectral_drift"].get<double>() < 1e-8);
  CHECK(lax1.diag["kind"] == "lax");
  CHECK(lax1.diag["initial_spectrum"].size() == 3);

  FlowRun grp = run_flow(lab, "group");
  CHECK(grp.diag["potential_monotone_decreasing"].get<bool>());
  CHECK(grp.diag["max_ortho_drift"].get<double>() < 1e-9);
  CHECK(grp.csv.find(",potential") != std::string::npos);

  // a different seed moves the trajectory
  RunConfig other = cfg;
  other.seed = 99;
  FlowRun lax3 = run_flow(build_lab(other), "lax");
  CHECK(lax1.csv != lax3.csv);

  CHECK_THROWS_AS(run_flow(lab, "both"), ConfigError);
}

TEST_CASE("curve and linearization documents hit their tolerances") {
  RunConfig cfg;
  Lab lab = build_lab(cfg);

  json curves = curves_doc(lab);
  CHECK(curves["curves"].size() == 6 * 3);  // every (w, positive root) pair
  CHECK(curves["max_off_residual"].get<double>() < 1e-8);
  CHECK(curves["max_subspace_residual"].get<double>() < 1e-8);
  CHECK(curves["max_landing_coset_gap"].get<double>() < 1e-8);
  CHECK(curves["max_landing_point_gap"].get<double>() < 1e-8);

  json lin = linearize_doc(lab);
  CHECK(lin["fixed_points"].size() == 6);
  CHECK(lin["max_abs_error"].get<double>() < 1e-7);
  for (const auto& fp : lin["fixed_points"])
    CHECK(fp["unstable_dim"] == fp["length"]);
}

TEST_CASE("verify battery passes on A1") {
  RunConfig cfg;
  cfg.type = AlgebraType::A;
  cfg.rank = 1;
  cfg.shots_per_node = 8;
  Lab lab = build_lab(cfg);
  json doc = verify_doc(lab);
  CHECK(doc["all_passed"].get<bool>());
  REQUIRE(doc["checks"].size() == 10);
  for (const auto& check : doc["checks"])
    CHECK_MESSAGE(check["passed"].get<bool>(),
                  check["name"].get<std::string>());
  CHECK(doc["connectivity"]["reachability_matches_strong"].get<bool>());
}

TEST_CASE("format_double round-trips the full mantissa") {
  for (double x : {0.1, 1.0 / 3.0, 1e-17, -2.5e300}) {
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(1.0) == "1");
}
