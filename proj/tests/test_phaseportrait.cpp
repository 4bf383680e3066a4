#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "errors.hpp"
#include "phaseportrait.hpp"

#include <algorithm>
#include <set>

using namespace toda;

namespace {

struct Setup {
  RootSystem rs;
  WeylGroup wg;
  Realization g;
  TodaSpec spec;
};

Setup make_setup(AlgebraType type, int rank, std::vector<double> lam,
                 std::vector<double> n_data) {
  Setup s;
  s.rs = build_root_system(type, rank);
  s.wg = enumerate_weyl(s.rs);
  s.g = realize(s.rs);
  s.spec.lambda_coords = coweight_coords_from_data(s.g, lam);
  s.spec.n_coords = coweight_coords_from_data(s.g, n_data);
  s.spec.Lambda = s.g.cartan_element(s.spec.lambda_coords);
  s.spec.N = s.g.cartan_element(s.spec.n_coords);
  return s;
}

Setup a2_setup() {
  return make_setup(AlgebraType::A, 2, {1.0, 0.0, -1.0}, {6.0, 3.0, -9.0});
}

}  // namespace

TEST_CASE("A2 fixed points carry the Weyl orbit and its Morse indices") {
  Setup s = a2_setup();
  auto fps = fixed_points(s.g, s.wg, s.spec);
  REQUIRE(fps.size() == 6);

  std::multiset<int> dims;
  std::set<double> potentials;
  for (const auto& fp : fps) {
    dims.insert(fp.unstable_dim);
    potentials.insert(fp.potential);
    CHECK((fp.Lambda_w - s.g.cartan_element(fp.coords)).norm() < 1e-12);
    CHECK((fp.Lambda_w -
           adjoint(weyl_representative(s.g, s.wg, fp.raw_w).m, s.spec.Lambda))
              .norm() < 1e-9);
    for (int k : fp.unstable_roots)
      CHECK(s.g.root_value(k, fp.coords) > 0.0);
    CHECK(static_cast<int>(fp.unstable_roots.size()) == fp.unstable_dim);
  }
  CHECK(dims == std::multiset<int>({0, 1, 1, 2, 2, 3}));
  CHECK(potentials.size() == 6);  // pairwise distinct critical values
  // identity raw element sits at Lambda itself
  CHECK((fps[0].coords - s.spec.lambda_coords).norm() < 1e-12);
}

TEST_CASE("labeling realizes Bruhat length as unstable dimension") {
  for (Setup s : {a2_setup(), make_setup(AlgebraType::B, 2, {2.0, 1.0},
                                         {4.0, 1.0})}) {
    auto fps = fixed_points(s.g, s.wg, s.spec);
    label_by_length(s.wg, fps);
    std::set<int> labels;
    for (const auto& fp : fps) {
      labels.insert(fp.label_w);
      CHECK(fp.unstable_dim == s.wg.elements[fp.label_w].length);
      if (fp.label_w == s.wg.identity_id) CHECK(fp.unstable_dim == 0);
      if (fp.label_w == s.wg.longest_id)
        CHECK(fp.unstable_dim == s.rs.n_positive);
    }
    CHECK(static_cast<int>(labels.size()) == s.wg.size());
  }
}

TEST_CASE("non-regular Lambda is rejected") {
  Setup s = make_setup(AlgebraType::A, 2, {1.0, 0.0, -1.0}, {6.0, 3.0, -9.0});
  s.spec.lambda_coords = coweight_coords_from_data(s.g, {1.0, 1.0, -2.0});
  s.spec.Lambda = s.g.cartan_element(s.spec.lambda_coords);
  CHECK_THROWS_AS(fixed_points(s.g, s.wg, s.spec), ConfigError);
}

TEST_CASE("linearization is diagonal with the predicted eigenvalues") {
  Setup s = a2_setup();
  auto fps = fixed_points(s.g, s.wg, s.spec);
  for (const auto& fp : fps) {
    LinearizationCheck check = linearization_check(s.g, s.spec, fp);
    CHECK(check.max_abs_error < 1e-7);
    CHECK(check.max_cross_talk < 1e-7);
    REQUIRE(check.rows.size() == 3);
    for (const auto& row : check.rows)
      CHECK(row.predicted ==
            doctest::Approx(s.g.root_value(row.root_idx, fp.coords)));
  }
}

TEST_CASE("a generic trajectory is classified at the sink") {
  Setup s = a2_setup();
  s.spec.t_max = 200.0;
  auto fps = fixed_points(s.g, s.wg, s.spec);
  label_by_length(s.wg, fps);
  std::vector<Eigen::MatrixXd> states;
  for (const auto& fp : fps) states.push_back(fp.Lambda_w);

  Rng rng(53);
  Eigen::MatrixXd q = rng.special_orthogonal(3);
  LaxIntegrationParams params;
  params.fixed_points = &states;
  LaxTrajectory traj =
      integrate_lax(s.g, s.spec, adjoint(q, s.spec.Lambda), params);
  LimitClass lim = classify_limit(fps, s.spec, traj);
  REQUIRE(lim.fp_raw >= 0);
  CHECK(lim.dist < s.spec.fp_capture_dist);
  CHECK(fps[lim.fp_raw].unstable_dim == 0);  // the sink attracts
  CHECK(lim.second_dist > 10 * s.spec.fp_capture_dist);
}

TEST_CASE("generic shots only find edges pointing down the strong order") {
  Setup s = a2_setup();
  auto strong = bruhat_poset(s.wg, OrderKind::Strong);
  auto fps = fixed_points(s.g, s.wg, s.spec);
  label_by_length(s.wg, fps);
  Rng rng(59);
  ShotEnsemble ens = generic_shots(s.g, s.wg, s.spec, fps, rng, 8);
  CHECK(ens.n_trajectories == 2 * 8 * (6 - 1));  // sink has no unstable dirs,
                                                 // source no stable ones
  CHECK(ens.n_unresolved == 0);
  CHECK(!ens.edges.empty());
  for (const auto& e : ens.edges) {
    CHECK(e.evidence == "shot");
    CHECK(strong.less(e.dst_label, e.src_label));
    CHECK(e.approach < 1e-5);
  }
}

TEST_CASE("pair feasibility matches the certifiable-mode table") {
  Setup s = a2_setup();
  // every A2 pair is feasible: length 0/1 lower ends or top/co-top uppers
  auto strong = bruhat_poset(s.wg, OrderKind::Strong);
  for (auto [a, b] : strong.strict_pairs())
    CHECK(pair_feasible(s.wg, a, b));

  // A3 has saddle-to-saddle pairs no single bisection can certify
  auto wg3 = enumerate_weyl(build_root_system(AlgebraType::A, 3));
  auto strong3 = bruhat_poset(wg3, OrderKind::Strong);
  bool found_infeasible = false;
  for (auto [a, b] : strong3.strict_pairs())
    if (wg3.elements[a].length == 2 && wg3.elements[b].length == 4 &&
        !pair_feasible(wg3, a, b))
      found_infeasible = true;
  CHECK(found_infeasible);
}

TEST_CASE("plain shooting certifies the A2 bottom-to-top pair") {
  Setup s = a2_setup();
  auto fps = fixed_points(s.g, s.wg, s.spec);
  label_by_length(s.wg, fps);
  Rng rng(61);
  PairWitness w = certify_pair(s.g, s.wg, s.spec, fps, s.wg.identity_id,
                               s.wg.longest_id, rng);
  CHECK(w.succeeded);
  CHECK(w.mode == "forward-plain");
  CHECK(w.approach < 1e-5);
}

TEST_CASE("bisection certifies a B2 saddle-to-saddle pair") {
  Setup s = make_setup(AlgebraType::B, 2, {2.0, 1.0}, {4.0, 1.0});
  auto strong = bruhat_poset(s.wg, OrderKind::Strong);
  auto fps = fixed_points(s.g, s.wg, s.spec);
  label_by_length(s.wg, fps);
  int lower = -1, upper = -1;
  for (auto [a, b] : strong.strict_pairs())
    if (s.wg.elements[a].length == 1 && s.wg.elements[b].length == 3 &&
        lower < 0) {
      lower = a;
      upper = b;
    }
  REQUIRE(lower >= 0);
  Rng rng(67);
  PairWitness w = certify_pair(s.g, s.wg, s.spec, fps, lower, upper, rng);
  CHECK(w.mode == "forward-bisect");
  CHECK(w.succeeded);
  CHECK(w.approach < 1e-5);
  CHECK(w.iterations > 0);
}

TEST_CASE("A1 connectivity graph is the two-point portrait") {
  Setup s = make_setup(AlgebraType::A, 1, {0.5, -0.5}, {1.0, -1.0});
  auto strong = bruhat_poset(s.wg, OrderKind::Strong);
  auto wl = bruhat_poset(s.wg, OrderKind::WeakLeft);
  auto wr = bruhat_poset(s.wg, OrderKind::WeakRight);
  ConnectivityOptions opts;
  opts.shots_per_node = 8;
  ConnectivityGraph graph =
      connectivity_graph(s.g, s.wg, strong, wl, wr, s.spec, opts);
  CHECK(graph.fps.size() == 2);
  REQUIRE(graph.covers.size() == 1);
  CHECK(graph.covers[0].offsets_consistent);
  CHECK(graph.covers[0].oriented_ok);
  CHECK(graph.all_covers_connected);
  CHECK(graph.reachability_matches_strong);
  CHECK(graph.violations.empty());
  CHECK(graph.incomparable.empty());
  REQUIRE(graph.pairs.size() == 1);
  CHECK(graph.pairs[0].how == "gamma");
}

TEST_CASE("A2 connectivity graph reproduces the strong order exactly") {
  Setup s = a2_setup();
  auto strong = bruhat_poset(s.wg, OrderKind::Strong);
  auto wl = bruhat_poset(s.wg, OrderKind::WeakLeft);
  auto wr = bruhat_poset(s.wg, OrderKind::WeakRight);
  ConnectivityOptions opts;
  opts.shots_per_node = 16;
  ConnectivityGraph graph =
      connectivity_graph(s.g, s.wg, strong, wl, wr, s.spec, opts);

  CHECK(graph.reachability_matches_strong);
  CHECK(graph.all_covers_connected);
  CHECK(graph.violations.empty());
  CHECK(graph.weak_left_strictly_inside);
  CHECK(graph.weak_right_strictly_inside);
  CHECK(graph.covers.size() == 8);
  CHECK(graph.pairs.size() == 13);
  for (const auto& p : graph.pairs) {
    CHECK(p.how != "missing");
    CHECK(p.how != "transitive");  // exhaustive certification at this size
    CHECK(p.approach < 1e-5);
    CHECK(p.is_cover == (p.gap == 1));
  }
  CHECK(graph.incomparable.size() == 2);
  CHECK(graph.min_incomparable_approach > 1e-2);
  CHECK(graph.n_unresolved == 0);
}

TEST_CASE("connectivity graphs are reproducible for a fixed seed") {
  Setup s = make_setup(AlgebraType::A, 1, {0.5, -0.5}, {1.0, -1.0});
  auto strong = bruhat_poset(s.wg, OrderKind::Strong);
  auto wl = bruhat_poset(s.wg, OrderKind::WeakLeft);
  auto wr = bruhat_poset(s.wg, OrderKind::WeakRight);
  ConnectivityOptions opts;
  opts.shots_per_node = 4;
  ConnectivityGraph g1 =
      connectivity_graph(s.g, s.wg, strong, wl, wr, s.spec, opts);
  ConnectivityGraph g2 =
      connectivity_graph(s.g, s.wg, strong, wl, wr, s.spec, opts);
  REQUIRE(g1.edges.size() == g2.edges.size());
  for (size_t i = 0; i < g1.edges.size(); ++i) {
    CHECK(g1.edges[i].src_label == g2.edges[i].src_label);
    CHECK(g1.edges[i].dst_label == g2.edges[i].dst_label);
    CHECK(g1.edges[i].evidence == g2.edges[i].evidence);
    CHECK(g1.edges[i].approach == g2.edges[i].approach);  // bitwise
  }
  CHECK(g1.n_trajectories == g2.n_trajectories);
}
