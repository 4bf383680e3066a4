#include "lab.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

namespace toda {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<double> default_lambda_data(AlgebraType type, int rank) {
  if (type == AlgebraType::A) {
    int n = rank + 1;
    std::vector<double> data(n);
    for (int k = 1; k <= n; ++k) data[k - 1] = 0.5 * (n + 1) - k;
    return data;
  }
  if (type == AlgebraType::B && rank == 2) return {2.0, 1.0};
  throw ConfigError("no default Lambda for this algebra");
}

// Geometric gaps base (n+1), sorted descending so N is dominant (the
// potential decreases along the flow exactly when every positive root is
// positive on N). The partial sums sum_k k * base^{g(k)} over bijections g
// are base-(n+1) numbers with digits 1..n, so no two assignments collide
// and the Morse critical values come out pairwise distinct for the evenly
// spaced default Lambda. Uniform gaps here (or the tempting choice
// N = c * Lambda) produce exact collisions.
std::vector<double> default_n_data(AlgebraType type, int rank) {
  if (type == AlgebraType::A) {
    int n = rank + 1;
    std::vector<double> data(n);
    double mean = 0.0;
    for (int k = 0; k < n; ++k) {
      data[k] = -std::pow(n + 1, k);
      mean += data[k] / n;
    }
    for (double& d : data) d -= mean;
    return data;
  }
  if (type == AlgebraType::B && rank == 2) return {4.0, 1.0};
  throw ConfigError("no default N for this algebra");
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {
      "type",   "rank",           "lambda",            "n",
      "seed",   "t_max",          "order",             "shots_per_node",
      "max_pairs_per_gap", "abs_tol", "rel_tol"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw ConfigError("unknown config key: " + it.key());

  RunConfig cfg;
  try {
    if (j.contains("type")) {
      std::string s = j.at("type").get<std::string>();
      if (s.size() != 1) throw ConfigError("type must be a single letter");
      cfg.type = algebra_type_from_letter(s[0]);
    }
    if (j.contains("rank")) cfg.rank = j.at("rank").get<int>();
    if (j.contains("lambda"))
      cfg.lambda_data = j.at("lambda").get<std::vector<double>>();
    if (j.contains("n")) cfg.n_data = j.at("n").get<std::vector<double>>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
    if (j.contains("t_max")) cfg.t_max = j.at("t_max").get<double>();
    if (j.contains("order"))
      cfg.order = order_kind_from_name(j.at("order").get<std::string>());
    if (j.contains("shots_per_node"))
      cfg.shots_per_node = j.at("shots_per_node").get<int>();
    if (j.contains("max_pairs_per_gap"))
      cfg.max_pairs_per_gap = j.at("max_pairs_per_gap").get<int>();
    if (j.contains("abs_tol")) cfg.abs_tol = j.at("abs_tol").get<double>();
    if (j.contains("rel_tol")) cfg.rel_tol = j.at("rel_tol").get<double>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config value: ") + e.what());
  }

  if (cfg.t_max <= 0.0) throw ConfigError("t_max must be positive");
  if (cfg.shots_per_node < 1)
    throw ConfigError("shots_per_node must be at least 1");
  if (cfg.max_pairs_per_gap < 1)
    throw ConfigError("max_pairs_per_gap must be at least 1");
  if (cfg.abs_tol <= 0.0 || cfg.rel_tol <= 0.0)
    throw ConfigError("tolerances must be positive");
  return cfg;
}

Lab build_lab(const RunConfig& cfg_in) {
  Lab lab;
  lab.cfg = cfg_in;
  lab.rs = build_root_system(lab.cfg.type, lab.cfg.rank);
  lab.wg = enumerate_weyl(lab.rs);
  lab.strong = bruhat_poset(lab.wg, OrderKind::Strong);
  lab.weak_left = bruhat_poset(lab.wg, OrderKind::WeakLeft);
  lab.weak_right = bruhat_poset(lab.wg, OrderKind::WeakRight);
  lab.g = realize(lab.rs);

  if (lab.cfg.lambda_data.empty())
    lab.cfg.lambda_data = default_lambda_data(lab.cfg.type, lab.cfg.rank);
  if (lab.cfg.n_data.empty())
    lab.cfg.n_data = default_n_data(lab.cfg.type, lab.cfg.rank);

  TodaSpec& spec = lab.spec;
  spec.lambda_coords = coweight_coords_from_data(lab.g, lab.cfg.lambda_data);
  spec.n_coords = coweight_coords_from_data(lab.g, lab.cfg.n_data);
  spec.Lambda = lab.g.cartan_element(spec.lambda_coords);
  spec.N = lab.g.cartan_element(spec.n_coords);
  spec.t_max = lab.cfg.t_max;
  spec.abs_tol = lab.cfg.abs_tol;
  spec.rel_tol = lab.cfg.rel_tol;

  for (int k = 0; k < lab.rs.n_positive; ++k) {
    if (std::abs(lab.g.root_value(k, spec.lambda_coords)) < 1e-9)
      throw ConfigError("Lambda is not regular: " + lab.rs.root_name(k) +
                        " vanishes on it");
    if (std::abs(lab.g.root_value(k, spec.n_coords)) < 1e-9)
      throw ConfigError("N is not regular: " + lab.rs.root_name(k) +
                        " vanishes on it");
  }

  std::vector<double> crit;
  for (const auto& el : lab.wg.elements) {
    Eigen::VectorXd cw = el.coweight_action.cast<double>() *
                         spec.lambda_coords;
    crit.push_back(killing_form(lab.g, lab.g.cartan_element(cw), spec.N));
  }
  std::vector<double> sorted = crit;
  std::sort(sorted.begin(), sorted.end());
  double scale = 1.0 + std::abs(sorted.back());
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] - sorted[i - 1] < 1e-9 * scale)
      throw ConfigError(
          "critical values of the potential are not pairwise distinct; "
          "choose a more generic N");
  return lab;
}

json config_echo(const Lab& lab) {
  const RunConfig& c = lab.cfg;
  json j;
  j["type"] = std::string(1, algebra_type_letter(c.type));
  j["rank"] = c.rank;
  j["lambda"] = c.lambda_data;
  j["n"] = c.n_data;
  j["seed"] = c.seed;
  j["t_max"] = c.t_max;
  j["order"] = order_kind_name(c.order);
  j["shots_per_node"] = c.shots_per_node;
  j["max_pairs_per_gap"] = c.max_pairs_per_gap;
  j["abs_tol"] = c.abs_tol;
  j["rel_tol"] = c.rel_tol;
  return j;
}

// Shared document head: what ran, on which algebra, with which settings.
json doc_head(const Lab& lab, const char* command) {
  json doc;
  doc["command"] = command;
  doc["algebra"] = std::string(1, algebra_type_letter(lab.rs.type)) +
                   std::to_string(lab.rs.rank);
  doc["config"] = config_echo(lab);
  return doc;
}

namespace {

json vecxi_to_json(const Eigen::VectorXi& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json vecxd_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json word_to_json(const std::vector<int>& word) {
  json a = json::array();
  for (int s : word) a.push_back(s + 1);  // 1-based letters, matching "a1"
  return a;
}

json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

json roots_doc(const Lab& lab) {
  const RootSystem& rs = lab.rs;
  json doc = doc_head(lab, "roots");
  json cartan = json::array();
  for (int i = 0; i < rs.rank; ++i) {
    json row = json::array();
    for (int j = 0; j < rs.rank; ++j) row.push_back(rs.cartan(i, j));
    cartan.push_back(row);
  }
  doc["cartan"] = cartan;
  json gram = json::array();
  for (int i = 0; i < rs.rank; ++i) {
    json row = json::array();
    for (int j = 0; j < rs.rank; ++j) row.push_back(rs.gram(i, j));
    gram.push_back(row);
  }
  doc["gram"] = gram;
  doc["n_positive"] = rs.n_positive;
  json roots = json::array();
  for (int k = 0; k < rs.root_count(); ++k) {
    json r;
    r["index"] = k;
    r["coords"] = vecxi_to_json(rs.roots[k]);
    r["name"] = rs.root_name(k);
    r["positive"] = rs.is_positive(k);
    r["height"] = rs.roots[k].sum();
    r["norm2"] = rs.norm2(k);
    r["coroot"] = vecxi_to_json(rs.coroot_coords(k));
    roots.push_back(r);
  }
  doc["roots"] = roots;
  return doc;
}

json weyl_doc(const Lab& lab) {
  const WeylGroup& wg = lab.wg;
  json doc = doc_head(lab, "weyl");
  doc["size"] = wg.size();
  doc["identity"] = wg.identity_id;
  doc["longest"] = wg.longest_id;
  json els = json::array();
  for (const auto& el : wg.elements) {
    json e;
    e["id"] = el.id;
    e["word"] = word_to_json(el.word);
    e["length"] = el.length;
    els.push_back(e);
  }
  doc["elements"] = els;
  json refl = json::array();
  for (int k = 0; k < lab.rs.n_positive; ++k) {
    json r;
    r["root_index"] = k;
    r["root"] = lab.rs.root_name(k);
    r["element"] = wg.reflection_by_root[k];
    refl.push_back(r);
  }
  doc["reflections"] = refl;
  return doc;
}

json bruhat_doc(const Lab& lab, OrderKind kind) {
  const BruhatPoset& poset = kind == OrderKind::Strong ? lab.strong
                             : kind == OrderKind::WeakLeft
                                 ? lab.weak_left
                                 : lab.weak_right;
  json doc = doc_head(lab, "bruhat");
  doc["kind"] = order_kind_name(kind);
  json covers = json::array();
  for (const auto& c : poset.covers)
    covers.push_back(json::array({c.first, c.second}));
  doc["covers"] = covers;
  doc["n_covers"] = poset.covers.size();
  auto strict = poset.strict_pairs();
  json pairs = json::array();
  for (const auto& p : strict)
    pairs.push_back(json::array({p.first, p.second}));
  doc["strict_pairs"] = pairs;
  doc["n_strict_pairs"] = strict.size();
  return doc;
}

namespace {

Eigen::MatrixXd random_compact_element(const Lab& lab, Rng& rng) {
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(lab.g.n, lab.g.n);
  for (int i = 0; i < lab.rs.n_positive; ++i)
    k += rng.gaussian() * (lab.g.root_vector(i) -
                           lab.g.root_vector(lab.rs.negate(i)));
  return exp_matrix(k);
}

}  // namespace

FlowRun run_flow(const Lab& lab, const std::string& kind) {
  Rng rng(lab.cfg.seed);
  Eigen::MatrixXd q = random_compact_element(lab, rng);
  FlowRun out;
  std::ostringstream csv;
  const int n = lab.g.n;

  if (kind == "lax") {
    Eigen::MatrixXd L0 = q * lab.spec.Lambda * q.transpose();
    LaxIntegrationParams params;
    params.store_samples = true;
    LaxTrajectory traj = integrate_lax(lab.g, lab.spec, L0, params);

    csv << "t";
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) csv << ",L_" << i << "_" << j;
    csv << "\n";
    for (size_t s = 0; s < traj.times.size(); ++s) {
      csv << format_double(traj.times[s]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          csv << "," << format_double(traj.states[s](i, j));
      csv << "\n";
    }

    json diag = doc_head(lab, "flow");
    diag["kind"] = "lax";
    diag["status"] = flow_status_name(traj.status);
    diag["final_time"] = traj.final_time;
    diag["final_rhs_norm"] = traj.final_rhs_norm;
    diag["n_steps"] = traj.n_steps;
    diag["n_rejected"] = traj.n_rejected;
    diag["n_samples"] = traj.times.size();
    diag["spectral_drift"] = traj.spectral_drift;
    diag["max_resym_correction"] = traj.max_resym_correction;
    diag["initial_spectrum"] = vecxd_to_json(traj.initial_spectrum);
    out.diag = diag;
  } else if (kind == "group") {
    GroupTrajectory traj = integrate_group(lab.g, lab.spec, KElement{q});

    csv << "t";
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) csv << ",psi_" << i << "_" << j;
    csv << ",potential\n";
    for (size_t s = 0; s < traj.times.size(); ++s) {
      csv << format_double(traj.times[s]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          csv << "," << format_double(traj.states[s](i, j));
      csv << "," << format_double(traj.potential[s]) << "\n";
    }

    double scale = 1.0;
    bool monotone = true;
    for (double p : traj.potential) scale = std::max(scale, std::abs(p));
    for (size_t s = 1; s < traj.potential.size(); ++s)
      if (traj.potential[s] > traj.potential[s - 1] + 1e-10 * scale)
        monotone = false;

    json diag = doc_head(lab, "flow");
    diag["kind"] = "group";
    diag["status"] = flow_status_name(traj.status);
    diag["final_time"] = traj.final_time;
    diag["final_rhs_norm"] = traj.final_rhs_norm;
    diag["n_steps"] = traj.n_steps;
    diag["n_samples"] = traj.times.size();
    diag["max_ortho_drift"] = traj.max_ortho_drift;
    diag["max_retraction"] = traj.max_retraction;
    diag["potential_monotone_decreasing"] = monotone;
    out.diag = diag;
  } else {
    throw ConfigError("flow kind must be \"lax\" or \"group\"");
  }
  out.csv = csv.str();
  return out;
}

namespace {

std::vector<double> half_turn_grid(int n_points) {
  std::vector<double> grid;
  for (int i = 0; i < n_points; ++i)
    grid.push_back(std::numbers::pi * (-0.5 + double(i) / (n_points - 1)));
  return grid;
}

}  // namespace

json curves_doc(const Lab& lab) {
  auto fps = fixed_points(lab.g, lab.wg, lab.spec);
  int shift = label_by_length(lab.wg, fps);
  std::vector<int> raw_of(fps.size());
  for (const auto& fp : fps) raw_of[fp.label_w] = fp.raw_w;

  json doc = doc_head(lab, "curve-check");
  doc["labeling_shift"] = shift;

  auto grid = half_turn_grid(50);
  double max_off = 0.0, max_sub = 0.0, max_coset = 0.0, max_point = 0.0;
  json curves = json::array();
  for (int label = 0; label < lab.wg.size(); ++label) {
    for (int root = 0; root < lab.rs.n_positive; ++root) {
      CurveCheckResult r = invariant_curve_check(lab.g, lab.wg, lab.spec,
                                                 raw_of[label], root, grid);
      int sigma = lab.wg.reflection_by_root[root];
      json c;
      c["w_label"] = label;
      c["w_raw"] = raw_of[label];
      c["root_index"] = root;
      c["root"] = lab.rs.root_name(root);
      c["landing_label"] =
          lab.wg.mul(lab.wg.mul(sigma, raw_of[label]), shift);
      c["n_points"] = grid.size();
      c["max_off_residual"] = r.max_off_residual;
      c["max_subspace_residual"] = r.max_subspace_residual;
      c["landing_coset_gap"] = r.landing_coset_gap;
      c["landing_point_gap"] = r.landing_point_gap;
      curves.push_back(c);
      max_off = std::max(max_off, r.max_off_residual);
      max_sub = std::max(max_sub, r.max_subspace_residual);
      max_coset = std::max(max_coset, r.landing_coset_gap);
      max_point = std::max(max_point, r.landing_point_gap);
    }
  }
  doc["curves"] = curves;
  doc["max_off_residual"] = max_off;
  doc["max_subspace_residual"] = max_sub;
  doc["max_landing_coset_gap"] = max_coset;
  doc["max_landing_point_gap"] = max_point;
  return doc;
}

json linearize_doc(const Lab& lab) {
  auto fps = fixed_points(lab.g, lab.wg, lab.spec);
  int shift = label_by_length(lab.wg, fps);

  json doc = doc_head(lab, "linearize");
  doc["labeling_shift"] = shift;

  double max_err = 0.0, max_cross = 0.0;
  json points = json::array();
  for (const auto& fp : fps) {
    LinearizationCheck check = linearization_check(lab.g, lab.spec, fp);
    json p;
    p["raw"] = fp.raw_w;
    p["label"] = fp.label_w;
    p["length"] = lab.wg.elements[fp.label_w].length;
    p["unstable_dim"] = fp.unstable_dim;
    p["coords"] = vecxd_to_json(fp.coords);
    p["potential"] = fp.potential;
    json rows = json::array();
    for (const auto& row : check.rows) {
      json r;
      r["root"] = lab.rs.root_name(row.root_idx);
      r["root_index"] = row.root_idx;
      r["predicted"] = row.predicted;
      r["fd_eigenvalue"] = row.fd_eigenvalue;
      r["cross_talk"] = row.cross_talk;
      rows.push_back(r);
    }
    p["rows"] = rows;
    p["max_abs_error"] = check.max_abs_error;
    p["max_cross_talk"] = check.max_cross_talk;
    points.push_back(p);
    max_err = std::max(max_err, check.max_abs_error);
    max_cross = std::max(max_cross, check.max_cross_talk);
  }
  doc["fixed_points"] = points;
  doc["max_abs_error"] = max_err;
  doc["max_cross_talk"] = max_cross;
  return doc;
}

namespace {

json graph_to_json(const Lab& lab, const ConnectivityGraph& graph) {
  json doc;
  doc["labeling_shift"] = graph.label_shift;
  json fps = json::array();
  for (const auto& fp : graph.fps) {
    json f;
    f["raw"] = fp.raw_w;
    f["label"] = fp.label_w;
    f["length"] = lab.wg.elements[fp.label_w].length;
    f["unstable_dim"] = fp.unstable_dim;
    f["coords"] = vecxd_to_json(fp.coords);
    f["potential"] = fp.potential;
    fps.push_back(f);
  }
  doc["fixed_points"] = fps;

  json covers = json::array();
  for (const auto& c : graph.covers) {
    json cc;
    cc["src"] = c.src_label;
    cc["dst"] = c.dst_label;
    cc["root_index"] = c.root_idx;
    cc["root"] = lab.rs.root_name(c.root_idx);
    cc["offsets_consistent"] = c.offsets_consistent;
    cc["oriented_ok"] = c.oriented_ok;
    cc["fwd_dist"] = c.fwd_dist;
    cc["bwd_dist"] = c.bwd_dist;
    cc["max_off_residual"] = c.curve.max_off_residual;
    cc["max_subspace_residual"] = c.curve.max_subspace_residual;
    cc["landing_coset_gap"] = c.curve.landing_coset_gap;
    cc["landing_point_gap"] = c.curve.landing_point_gap;
    covers.push_back(cc);
  }
  doc["covers"] = covers;

  auto edges_to_json = [](const std::vector<EdgeWitness>& edges) {
    json arr = json::array();
    for (const auto& e : edges) {
      json ee;
      ee["src"] = e.src_label;
      ee["dst"] = e.dst_label;
      ee["evidence"] = e.evidence;
      ee["approach"] = e.approach;
      ee["rhs_at_approach"] = e.rhs_at_approach;
      if (e.bisection_iters > 0) ee["iterations"] = e.bisection_iters;
      arr.push_back(ee);
    }
    return arr;
  };
  doc["edges"] = edges_to_json(graph.edges);
  doc["violations"] = edges_to_json(graph.violations);

  json witnesses = json::array();
  for (const auto& w : graph.pair_witnesses) {
    json ww;
    ww["lower"] = w.lower_label;
    ww["upper"] = w.upper_label;
    ww["mode"] = w.mode;
    ww["succeeded"] = w.succeeded;
    ww["approach"] = w.approach;
    ww["rhs_at_approach"] = w.rhs_at_approach;
    ww["iterations"] = w.iterations;
    witnesses.push_back(ww);
  }
  doc["pair_witnesses"] = witnesses;

  json pairs = json::array();
  for (const auto& p : graph.pairs) {
    json pp;
    pp["lower"] = p.lower_label;
    pp["upper"] = p.upper_label;
    pp["gap"] = p.gap;
    pp["cover"] = p.is_cover;
    pp["how"] = p.how;
    pp["approach"] = p.approach;
    pairs.push_back(pp);
  }
  doc["pairs"] = pairs;

  json inc = json::array();
  for (const auto& p : graph.incomparable) {
    json pp;
    pp["a"] = p.a_label;
    pp["b"] = p.b_label;
    pp["min_approach"] = finite_or_null(p.min_approach);
    inc.push_back(pp);
  }
  doc["incomparable"] = inc;
  doc["min_incomparable_approach"] =
      finite_or_null(graph.min_incomparable_approach);

  doc["reachability_matches_strong"] = graph.reachability_matches_strong;
  doc["all_covers_connected"] = graph.all_covers_connected;
  doc["weak_left_strictly_inside"] = graph.weak_left_strictly_inside;
  doc["weak_right_strictly_inside"] = graph.weak_right_strictly_inside;
  doc["n_trajectories"] = graph.n_trajectories;
  doc["n_unresolved"] = graph.n_unresolved;
  return doc;
}

ConnectivityOptions options_from(const RunConfig& cfg) {
  ConnectivityOptions opts;
  opts.seed = cfg.seed;
  opts.shots_per_node = cfg.shots_per_node;
  opts.max_pairs_per_gap = cfg.max_pairs_per_gap;
  return opts;
}

}  // namespace

json connectivity_doc(const Lab& lab) {
  ConnectivityGraph graph =
      connectivity_graph(lab.g, lab.wg, lab.strong, lab.weak_left,
                         lab.weak_right, lab.spec, options_from(lab.cfg));
  json doc = graph_to_json(lab, graph);
  doc.update(doc_head(lab, "connectivity"));
  return doc;
}

namespace {

json cover_signature(const ConnectivityGraph& g) {
  json arr = json::array();
  for (const auto& c : g.covers)
    arr.push_back(json::array({c.src_label, c.dst_label, c.root_idx,
                               c.offsets_consistent, c.oriented_ok}));
  return arr;
}

json edge_signature(const ConnectivityGraph& g) {
  json arr = json::array();
  for (const auto& e : g.edges)
    arr.push_back(json::array({e.src_label, e.dst_label, e.evidence}));
  return arr;
}

}  // namespace

json verify_doc(const Lab& lab) {
  json doc = doc_head(lab, "verify");

  ConnectivityOptions opts = options_from(lab.cfg);
  ConnectivityGraph graph =
      connectivity_graph(lab.g, lab.wg, lab.strong, lab.weak_left,
                         lab.weak_right, lab.spec, opts);
  doc["connectivity"] = graph_to_json(lab, graph);

  json checks = json::array();
  bool all = true;
  auto add = [&](const std::string& name, bool passed, json detail) {
    detail["name"] = name;
    detail["passed"] = passed;
    checks.push_back(detail);
    all = all && passed;
  };

  {
    bool ok = true;
    for (const auto& fp : graph.fps)
      ok = ok && fp.unstable_dim == lab.wg.elements[fp.label_w].length;
    add("labels_realize_lengths", ok,
        {{"n_fixed_points", graph.fps.size()}});
  }

  {
    double max_err = 0.0, max_cross = 0.0;
    for (const auto& fp : graph.fps) {
      LinearizationCheck check = linearization_check(lab.g, lab.spec, fp);
      max_err = std::max(max_err, check.max_abs_error);
      max_cross = std::max(max_cross, check.max_cross_talk);
    }
    add("linearization_diagonal", max_err < 1e-7,
        {{"max_abs_error", max_err},
         {"max_cross_talk", max_cross},
         {"tolerance", 1e-7}});
  }

  {
    double max_off = 0.0, max_sub = 0.0, max_land = 0.0;
    for (const auto& c : graph.covers) {
      max_off = std::max(max_off, c.curve.max_off_residual);
      max_sub = std::max(max_sub, c.curve.max_subspace_residual);
      max_land = std::max(
          max_land,
          std::max(c.curve.landing_coset_gap, c.curve.landing_point_gap));
    }
    add("cover_curves_exact", max_off < 1e-8 && max_sub < 1e-8,
        {{"max_off_residual", max_off},
         {"max_subspace_residual", max_sub},
         {"tolerance", 1e-8}});
    add("cover_curves_land_on_next_chamber", max_land < 1e-8,
        {{"max_landing_gap", max_land}, {"tolerance", 1e-8}});
  }

  add("all_covers_connected", graph.all_covers_connected,
      {{"n_covers", graph.covers.size()}});
  add("no_order_violations", graph.violations.empty(),
      {{"n_violations", graph.violations.size()}});
  add("reachability_equals_strong_order", graph.reachability_matches_strong,
      {{"n_edges", graph.edges.size()},
       {"n_unresolved", graph.n_unresolved}});

  {
    auto wl = lab.weak_left.strict_pairs();
    auto wr = lab.weak_right.strict_pairs();
    auto st = lab.strong.strict_pairs();
    bool wl_sub = std::includes(st.begin(), st.end(), wl.begin(), wl.end());
    bool wr_sub = std::includes(st.begin(), st.end(), wr.begin(), wr.end());
    bool wl_ok = wl.size() == st.size() ? graph.reachability_matches_strong
                                        : graph.weak_left_strictly_inside;
    bool wr_ok = wr.size() == st.size() ? graph.reachability_matches_strong
                                        : graph.weak_right_strictly_inside;
    add("weak_orders_inside_reachability", wl_sub && wr_sub && wl_ok && wr_ok,
        {{"weak_left_pairs", wl.size()},
         {"weak_right_pairs", wr.size()},
         {"strong_pairs", st.size()}});
  }

  add("incomparable_pairs_separated",
      !std::isfinite(graph.min_incomparable_approach) ||
          graph.min_incomparable_approach > 1e-2,
      {{"n_incomparable", graph.incomparable.size()},
       {"min_approach", finite_or_null(graph.min_incomparable_approach)},
       {"threshold", 1e-2}});

  {
    // Replace Lambda by its image under the longest element and rerun the
    // whole construction. The labeled portrait must come out identical.
    TodaSpec spec2 = lab.spec;
    spec2.lambda_coords =
        lab.wg.elements[lab.wg.longest_id].coweight_action.cast<double>() *
        lab.spec.lambda_coords;
    spec2.Lambda = lab.g.cartan_element(spec2.lambda_coords);
    ConnectivityGraph graph2 =
        connectivity_graph(lab.g, lab.wg, lab.strong, lab.weak_left,
                           lab.weak_right, spec2, opts);

    bool states_match = graph2.fps.size() == graph.fps.size();
    if (states_match) {
      std::vector<Eigen::VectorXd> by_label(graph.fps.size()),
          by_label2(graph.fps.size());
      for (const auto& fp : graph.fps) by_label[fp.label_w] = fp.coords;
      for (const auto& fp : graph2.fps) by_label2[fp.label_w] = fp.coords;
      for (size_t i = 0; i < by_label.size(); ++i)
        states_match =
            states_match && (by_label[i] - by_label2[i]).norm() < 1e-9;
    }
    bool covers_match = cover_signature(graph) == cover_signature(graph2);
    bool edges_match = edge_signature(graph) == edge_signature(graph2);
    bool flags_match =
        graph.reachability_matches_strong ==
            graph2.reachability_matches_strong &&
        graph.all_covers_connected == graph2.all_covers_connected &&
        graph.weak_left_strictly_inside == graph2.weak_left_strictly_inside &&
        graph.weak_right_strictly_inside == graph2.weak_right_strictly_inside;
    add("portrait_covariant_under_chamber_shift",
        states_match && covers_match && edges_match && flags_match,
        {{"states_match", states_match},
         {"covers_match", covers_match},
         {"edges_match", edges_match},
         {"flags_match", flags_match},
         {"shift_label_offset", graph2.label_shift}});
  }

  doc["checks"] = checks;
  doc["all_passed"] = all;
  return doc;
}

}  // namespace toda
