#include "phaseportrait.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace toda {

namespace {

constexpr double kShotOffset = 1e-6;   // launch distance for generic shots
constexpr double kCurveOffset = 1e-4;  // launch distance along gamma curves
constexpr double kVisitTol = 1e-5;     // near-passage certificate distance
constexpr double kBisectApproach = 1e-6;
constexpr double kBisectSlowRhs = 1e-4;
constexpr double kPortraitTMax = 400.0;
constexpr int kMaxBisectIters = 200;
constexpr int kMaxPlainDraws = 64;
constexpr int kSideSampleRounds = 4;
constexpr int kMaxBracketTries = 4;

double inf() { return std::numeric_limits<double>::infinity(); }

// Unit Frobenius-norm perturbation in the listed (e_alpha + e_{-alpha})
// planes, the directions in which the linearization at a Cartan state acts
// diagonally.
Eigen::MatrixXd pair_direction(const Realization& g,
                               const std::vector<int>& roots,
                               const Eigen::VectorXd& coeffs) {
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(g.n, g.n);
  for (size_t j = 0; j < roots.size(); ++j) {
    int k = roots[j];
    V += coeffs(static_cast<int>(j)) *
         (g.root_vector(k) + g.root_vector(g.rs.negate(k)));
  }
  return V / V.norm();
}

std::vector<int> stable_roots(const RootSystem& rs, const FixedPointInfo& fp) {
  std::vector<int> out;
  for (int k = 0; k < rs.n_positive; ++k)
    if (!std::binary_search(fp.unstable_roots.begin(),
                            fp.unstable_roots.end(), k))
      out.push_back(k);
  return out;
}

std::vector<Eigen::MatrixXd> fp_states(
    const std::vector<FixedPointInfo>& fps) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(fps.size());
  for (const auto& fp : fps) out.push_back(fp.Lambda_w);
  return out;
}

// Geodesic point at fraction f of the way from a to b on the unit sphere.
Eigen::VectorXd slerp_frac(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                           double f) {
  double cosang = std::clamp(a.dot(b), -1.0, 1.0);
  double th = std::acos(cosang);
  if (std::sin(th) < 1e-8) return a;  // coincident or antipodal
  Eigen::VectorXd m =
      (std::sin((1.0 - f) * th) * a + std::sin(f * th) * b) / std::sin(th);
  return m / m.norm();
}

// Midpoint on the unit sphere; falls back to a perpendicular direction when
// the endpoints are (numerically) antipodal.
Eigen::VectorXd slerp_mid(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd m = a + b;
  double n = m.norm();
  if (n < 1e-12) {
    int j = 0;
    a.cwiseAbs().minCoeff(&j);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(a.size());
    e(j) = 1.0;
    m = e - a.dot(e) * a;
    n = m.norm();
  }
  return m / n;
}

}  // namespace

std::vector<FixedPointInfo> fixed_points(const Realization& g,
                                         const WeylGroup& wg,
                                         const TodaSpec& spec) {
  std::vector<FixedPointInfo> out;
  out.reserve(wg.size());
  for (const auto& el : wg.elements) {
    FixedPointInfo fp;
    fp.raw_w = el.id;
    fp.coords = el.coweight_action.cast<double>() * spec.lambda_coords;
    fp.Lambda_w = g.cartan_element(fp.coords);
    for (int k = 0; k < g.rs.n_positive; ++k) {
      double v = g.root_value(k, fp.coords);
      if (std::abs(v) < 1e-9)
        throw ConfigError("Lambda is not regular: " + g.rs.root_name(k) +
                          " vanishes on Ad_w Lambda");
      if (v > 0.0) fp.unstable_roots.push_back(k);
    }
    fp.unstable_dim = static_cast<int>(fp.unstable_roots.size());
    fp.potential = killing_form(g, fp.Lambda_w, spec.N);
    out.push_back(std::move(fp));
  }
  return out;
}

int label_by_length(const WeylGroup& wg, std::vector<FixedPointInfo>& fps) {
  int sink = -1;
  for (const auto& fp : fps) {
    if (fp.unstable_dim != 0) continue;
    if (sink >= 0)
      throw InvariantError("two fully stable fixed points; Lambda degenerate");
    sink = fp.raw_w;
  }
  if (sink < 0) throw InvariantError("no fully stable fixed point found");

  int u = wg.inverse(sink);
  for (auto& fp : fps) {
    fp.label_w = wg.mul(fp.raw_w, u);
    int l = wg.elements[fp.label_w].length;
    if (fp.unstable_dim != l) {
      std::ostringstream msg;
      msg << "unstable dimension " << fp.unstable_dim << " at element "
          << fp.raw_w << " does not equal the Bruhat length " << l
          << " of its label";
      throw InvariantError(msg.str());
    }
  }
  return u;
}

LimitClass classify_limit(const std::vector<FixedPointInfo>& fps,
                          const TodaSpec& spec, const LaxTrajectory& traj) {
  LimitClass lc;
  lc.rhs_norm = traj.final_rhs_norm;
  lc.dist = inf();
  lc.second_dist = inf();
  if (traj.status != FlowStatus::Converged) return lc;

  int arg = -1;
  for (const auto& fp : fps) {
    double d = (traj.final_state - fp.Lambda_w).norm();
    if (d < lc.dist) {
      lc.second_dist = lc.dist;
      lc.dist = d;
      arg = fp.raw_w;
    } else {
      lc.second_dist = std::min(lc.second_dist, d);
    }
  }
  if (lc.dist > spec.fp_capture_dist)
    throw InvariantError(
        "integration stalled at distance " + std::to_string(lc.dist) +
        " from the nearest fixed point");
  if (lc.second_dist < 10.0 * spec.fp_capture_dist)
    throw InvariantError("ambiguous capture: two fixed points nearly equal");
  lc.fp_raw = arg;
  return lc;
}

LinearizationCheck linearization_check(const Realization& g,
                                       const TodaSpec& spec,
                                       const FixedPointInfo& fp,
                                       double fd_step) {
  (void)spec;
  LinearizationCheck out;
  out.raw_w = fp.raw_w;
  for (int k = 0; k < g.rs.n_positive; ++k) {
    Eigen::MatrixXd V = g.root_vector(k) + g.root_vector(g.rs.negate(k));
    V /= V.norm();
    Eigen::MatrixXd D = (lax_rhs(g, fp.Lambda_w + fd_step * V) -
                         lax_rhs(g, fp.Lambda_w - fd_step * V)) /
                        (2.0 * fd_step);
    LinearizationRow row;
    row.root_idx = k;
    row.fd_eigenvalue = D.cwiseProduct(V).sum();
    row.predicted = g.root_value(k, fp.coords);
    row.cross_talk = (D - row.fd_eigenvalue * V).norm();
    out.max_abs_error = std::max(out.max_abs_error,
                                 std::abs(row.fd_eigenvalue - row.predicted));
    out.max_cross_talk = std::max(out.max_cross_talk, row.cross_talk);
    out.rows.push_back(row);
  }
  return out;
}

ShotEnsemble generic_shots(const Realization& g, const WeylGroup& wg,
                           const TodaSpec& spec,
                           const std::vector<FixedPointInfo>& fps,
                           Rng& rng, int shots_per_node) {
  (void)wg;
  const int n = static_cast<int>(fps.size());
  ShotEnsemble out;
  out.fwd_min_approach = Eigen::MatrixXd::Constant(n, n, inf());
  out.bwd_min_approach = Eigen::MatrixXd::Constant(n, n, inf());
  auto states = fp_states(fps);

  LaxIntegrationParams params;
  params.fixed_points = &states;
  params.track_approaches = true;
  params.t_max = kPortraitTMax;

  std::map<std::pair<int, int>, EdgeWitness> best;
  for (int i = 0; i < n; ++i) {
    const auto& fp = fps[i];
    std::vector<int> stable = stable_roots(g.rs, fp);
    for (int sense = 0; sense < 2; ++sense) {
      const std::vector<int>& dirs = sense == 0 ? fp.unstable_roots : stable;
      if (dirs.empty()) continue;
      params.time_sign = sense == 0 ? 1 : -1;
      for (int s = 0; s < shots_per_node; ++s) {
        Eigen::VectorXd c = rng.unit_vector(static_cast<int>(dirs.size()));
        Eigen::MatrixXd V = pair_direction(g, dirs, c);
        LaxTrajectory traj =
            integrate_lax(g, spec, fp.Lambda_w + kShotOffset * V, params);
        ++out.n_trajectories;

        Eigen::MatrixXd& am =
            sense == 0 ? out.fwd_min_approach : out.bwd_min_approach;
        for (int j = 0; j < n; ++j)
          am(i, j) = std::min(am(i, j), traj.closest_approach[j]);

        LimitClass lc = classify_limit(fps, spec, traj);
        if (lc.fp_raw < 0) {
          ++out.n_unresolved;
          continue;
        }
        if (lc.fp_raw == i)
          throw InvariantError("shot settled back at its launch point");

        EdgeWitness e;
        e.evidence = "shot";
        e.approach = std::max(kShotOffset, lc.dist);
        e.rhs_at_approach = traj.final_rhs_norm;
        if (sense == 0) {
          e.src_label = fps[i].label_w;
          e.dst_label = fps[lc.fp_raw].label_w;
        } else {
          e.src_label = fps[lc.fp_raw].label_w;
          e.dst_label = fps[i].label_w;
        }
        auto key = std::make_pair(e.src_label, e.dst_label);
        auto it = best.find(key);
        if (it == best.end() || e.approach < it->second.approach)
          best[key] = e;
      }
    }
  }
  for (const auto& kv : best) out.edges.push_back(kv.second);
  return out;
}

bool pair_feasible(const WeylGroup& wg, int lower_label, int upper_label) {
  int la = wg.elements[lower_label].length;
  int lb = wg.elements[upper_label].length;
  return la <= 1 || lb >= wg.rs.n_positive - 1;
}

namespace {

struct SideProbe {
  Eigen::VectorXd c;
  double approach = 0.0;
  double rhs = 0.0;
  double side = 0.0;
};

}  // namespace

PairWitness certify_pair(const Realization& g, const WeylGroup& wg,
                         const TodaSpec& spec,
                         const std::vector<FixedPointInfo>& fps,
                         int lower_label, int upper_label, Rng& rng) {
  PairWitness w;
  w.lower_label = lower_label;
  w.upper_label = upper_label;

  std::vector<int> raw_of(fps.size(), -1);
  for (const auto& fp : fps) raw_of[fp.label_w] = fp.raw_w;
  const int ra = raw_of[lower_label];
  const int rb = raw_of[upper_label];
  const int la = wg.elements[lower_label].length;
  const int lb = wg.elements[upper_label].length;
  const int npos = g.rs.n_positive;

  auto states = fp_states(fps);
  LaxIntegrationParams params;
  params.fixed_points = &states;
  params.track_approaches = true;
  params.t_max = kPortraitTMax;

  int start = -1, target = -1;
  bool bisect = false;
  if (la == 0) {
    w.mode = "forward-plain";
    start = rb;
    target = ra;
    params.time_sign = 1;
  } else if (lb == npos) {
    w.mode = "backward-plain";
    start = ra;
    target = rb;
    params.time_sign = -1;
  } else if (la == 1) {
    w.mode = "forward-bisect";
    start = rb;
    target = ra;
    params.time_sign = 1;
    bisect = true;
  } else if (lb == npos - 1) {
    w.mode = "backward-bisect";
    start = ra;
    target = rb;
    params.time_sign = -1;
    bisect = true;
  } else {
    w.mode = "infeasible";
    return w;
  }

  const std::vector<int> launch_dirs =
      params.time_sign > 0 ? fps[start].unstable_roots
                           : stable_roots(g.rs, fps[start]);
  if (launch_dirs.empty())
    throw InvariantError("no launch directions for pair certificate");
  const int m = static_cast<int>(launch_dirs.size());

  if (!bisect) {
    // Target is the true attractor of this time sense; generic shots land
    // on it, so a handful of draws suffices.
    for (int d = 0; d < kMaxPlainDraws; ++d) {
      Eigen::VectorXd c = rng.unit_vector(m);
      Eigen::MatrixXd V = pair_direction(g, launch_dirs, c);
      LaxTrajectory traj =
          integrate_lax(g, spec, fps[start].Lambda_w + kShotOffset * V,
                        params);
      ++w.iterations;
      LimitClass lc = classify_limit(fps, spec, traj);
      if (lc.fp_raw == target) {
        w.succeeded = true;
        w.approach = std::max(kShotOffset, lc.dist);
        w.rhs_at_approach = traj.final_rhs_norm;
        break;
      }
    }
    return w;
  }

  // Bisection. The target has exactly one root plane pointing out of it in
  // this time sense; the projection onto that plane at closest approach is
  // the side of the miss, and the pair's stable set separates the launch
  // sphere along a sign change of that side. The side only measures exit
  // geometry for trajectories that actually visit the saddle (otherwise the
  // closest approach degenerates to the launch point and the sign reflects
  // the launch direction itself), so endpoints are gated on a visit and a
  // non-visiting midpoint triggers arc subdivision instead of a sign update.
  std::vector<int> exit_roots;
  for (int k = 0; k < npos; ++k) {
    double v = g.root_value(k, fps[target].coords) * params.time_sign;
    if (v > 0.0) exit_roots.push_back(k);
  }
  if (exit_roots.size() != 1)
    throw InvariantError("pair certificate target has no 1-dim exit");
  Eigen::VectorXd one = Eigen::VectorXd::Ones(1);
  Eigen::MatrixXd vdir = pair_direction(g, exit_roots, one);

  double min_sep = inf();
  for (size_t i = 0; i < states.size(); ++i)
    for (size_t j = i + 1; j < states.size(); ++j)
      min_sep = std::min(min_sep, (states[i] - states[j]).norm());
  const double visit_gate = 0.25 * min_sep;

  auto probe = [&](const Eigen::VectorXd& c) {
    Eigen::MatrixXd V = pair_direction(g, launch_dirs, c);
    LaxTrajectory traj =
        integrate_lax(g, spec, fps[start].Lambda_w + kShotOffset * V, params);
    ++w.iterations;
    SideProbe p;
    p.c = c;
    p.approach = traj.closest_approach[target];
    p.rhs = traj.rhs_at_approach[target];
    p.side = traj.state_at_approach[target].size() > 0
                 ? (traj.state_at_approach[target] - states[target])
                       .cwiseProduct(vdir)
                       .sum()
                 : 0.0;
    return p;
  };
  auto good = [&](const SideProbe& p) {
    return p.approach < kBisectApproach && p.rhs < kBisectSlowRhs;
  };
  auto visited = [&](const SideProbe& p) { return p.approach < visit_gate; };
  auto succeed = [&](const SideProbe& p) {
    w.succeeded = true;
    w.approach = std::max(kShotOffset, p.approach);
    w.rhs_at_approach = p.rhs;
  };

  std::vector<SideProbe> plus_pool, minus_pool;
  const int per_round = std::max(2 * m + 6, 12);
  for (int round = 0; round < kSideSampleRounds; ++round) {
    for (int s = 0; s < per_round; ++s) {
      SideProbe p = probe(rng.unit_vector(m));
      if (good(p)) {
        succeed(p);
        return w;
      }
      if (visited(p)) (p.side >= 0.0 ? plus_pool : minus_pool).push_back(p);
    }
    if (!plus_pool.empty() && !minus_pool.empty()) break;
  }
  if (plus_pool.empty() || minus_pool.empty()) return w;  // no bracket found

  // Candidate brackets, shortest arcs first: the sign function breaks at
  // fold curves between the endpoints, and short arcs dodge them.
  std::vector<std::pair<size_t, size_t>> cand;
  for (size_t i = 0; i < plus_pool.size(); ++i)
    for (size_t j = 0; j < minus_pool.size(); ++j) cand.emplace_back(i, j);
  std::sort(cand.begin(), cand.end(), [&](const auto& x, const auto& y) {
    return plus_pool[x.first].c.dot(minus_pool[x.second].c) >
           plus_pool[y.first].c.dot(minus_pool[y.second].c);
  });
  if (cand.size() > static_cast<size_t>(kMaxBracketTries))
    cand.resize(kMaxBracketTries);

  int budget = kMaxBisectIters;
  for (const auto& [pi, mi] : cand) {
    SideProbe plus = plus_pool[pi];
    SideProbe minus = minus_pool[mi];
    bool give_up = false;
    while (budget > 0 && !give_up) {
      SideProbe p = probe(slerp_mid(plus.c, minus.c));
      --budget;
      if (good(p)) {
        succeed(p);
        return w;
      }
      if (visited(p)) {
        (p.side >= 0.0 ? plus : minus) = p;
        continue;
      }
      // Fold inside the arc. Subdivide it and re-bracket on an adjacent
      // visiting pair with a sign change, deepest visits first.
      const int kTicks = 9;
      std::vector<SideProbe> line = {plus};
      for (int t = 1; t <= kTicks && budget > 0; ++t) {
        line.push_back(probe(slerp_frac(plus.c, minus.c,
                                        t / static_cast<double>(kTicks + 1))));
        --budget;
        if (good(line.back())) {
          succeed(line.back());
          return w;
        }
      }
      line.push_back(minus);
      give_up = true;
      double best_depth = inf();
      for (size_t t = 0; t + 1 < line.size(); ++t) {
        const SideProbe& u = line[t];
        const SideProbe& v = line[t + 1];
        if (!visited(u) || !visited(v)) continue;
        if ((u.side >= 0.0) == (v.side >= 0.0)) continue;
        double depth = u.approach + v.approach;
        if (depth < best_depth) {
          best_depth = depth;
          plus = u.side >= 0.0 ? u : v;
          minus = u.side >= 0.0 ? v : u;
          give_up = false;
        }
      }
    }
    if (w.succeeded || budget <= 0) break;
  }
  return w;
}

ConnectivityGraph connectivity_graph(const Realization& g,
                                     const WeylGroup& wg,
                                     const BruhatPoset& strong,
                                     const BruhatPoset& weak_left,
                                     const BruhatPoset& weak_right,
                                     const TodaSpec& spec,
                                     const ConnectivityOptions& opts) {
  if (strong.kind != OrderKind::Strong)
    throw ConfigError("connectivity compares against the strong order");

  ConnectivityGraph out;
  out.fps = fixed_points(g, wg, spec);
  out.label_shift = label_by_length(wg, out.fps);
  const int n = wg.size();
  auto states = fp_states(out.fps);
  std::vector<int> raw_of(n, -1);
  for (const auto& fp : out.fps) raw_of[fp.label_w] = fp.raw_w;

  Rng rng(opts.seed);

  std::map<std::pair<int, int>, EdgeWitness> best;
  auto rank = [](const std::string& ev) {
    return ev == "gamma" ? 0 : ev == "shot" ? 1 : 2;
  };
  auto offer = [&](const EdgeWitness& e) {
    auto key = std::make_pair(e.src_label, e.dst_label);
    auto it = best.find(key);
    if (it == best.end() || rank(e.evidence) < rank(it->second.evidence) ||
        (rank(e.evidence) == rank(it->second.evidence) &&
         e.approach < it->second.approach))
      best[key] = e;
  };

  // Every strong cover carries a gamma curve; integrate small offsets along
  // it in both time senses to observe the flow direction.
  out.all_covers_connected = true;
  std::vector<double> grid;
  for (int i = 0; i < 50; ++i)
    grid.push_back(std::numbers::pi / 2.0 * i / 49.0);

  for (const auto& cover : strong.covers) {
    const int a = cover.first, b = cover.second;
    const int t = wg.mul(a, wg.inverse(b));
    const int root = wg.reflection_root(t);
    if (root < 0)
      throw InvariantError("strong cover is not reflection-related");
    const int ra = raw_of[a], rb = raw_of[b];

    CoverConnection cc;
    cc.src_label = b;
    cc.dst_label = a;
    cc.root_idx = root;
    cc.curve = invariant_curve_check(g, wg, spec, rb, root, grid);

    std::vector<Eigen::MatrixXd> ends = {states[ra], states[rb]};
    LaxIntegrationParams params;
    params.fixed_points = &ends;
    params.track_approaches = true;
    params.t_max = kPortraitTMax;
    params.stop_on_visit = kVisitTol;

    Eigen::MatrixXd gen =
        g.root_vector(root) - g.root_vector(g.rs.negate(root));
    int fwd_end[2] = {-1, -1}, bwd_end[2] = {-1, -1};
    double fwd_d[2] = {0, 0}, bwd_d[2] = {0, 0};
    double worst_rhs = 0.0;
    for (int o = 0; o < 2; ++o) {
      double delta = o == 0 ? kCurveOffset : -kCurveOffset;
      Eigen::MatrixXd L0 = adjoint(exp_matrix(gen, delta), states[rb]);
      for (int sense = 0; sense < 2; ++sense) {
        params.time_sign = sense == 0 ? 1 : -1;
        LaxTrajectory traj = integrate_lax(g, spec, L0, params);
        double d0 = (traj.final_state - ends[0]).norm();
        double d1 = (traj.final_state - ends[1]).norm();
        if (traj.status != FlowStatus::Converged ||
            std::min(d0, d1) > kVisitTol)
          throw NumericalError("gamma-curve offset for cover (" +
                               std::to_string(a) + ", " + std::to_string(b) +
                               ") reached neither endpoint");
        int hit = d0 <= d1 ? ra : rb;
        (sense == 0 ? fwd_end : bwd_end)[o] = hit;
        (sense == 0 ? fwd_d : bwd_d)[o] = std::min(d0, d1);
        worst_rhs = std::max(worst_rhs, traj.final_rhs_norm);
      }
    }
    cc.offsets_consistent = fwd_end[0] == fwd_end[1] &&
                            bwd_end[0] == bwd_end[1] &&
                            fwd_end[0] != bwd_end[0];
    cc.fwd_dist = std::max(fwd_d[0], fwd_d[1]);
    cc.bwd_dist = std::max(bwd_d[0], bwd_d[1]);
    if (cc.offsets_consistent) {
      cc.src_label = out.fps[bwd_end[0]].label_w;
      cc.dst_label = out.fps[fwd_end[0]].label_w;
      cc.oriented_ok = cc.src_label == b && cc.dst_label == a;
      EdgeWitness e;
      e.src_label = cc.src_label;
      e.dst_label = cc.dst_label;
      e.evidence = "gamma";
      e.approach = std::max(cc.fwd_dist, cc.bwd_dist);
      e.rhs_at_approach = worst_rhs;
      offer(e);
    }
    if (!cc.offsets_consistent || !cc.oriented_ok)
      out.all_covers_connected = false;
    out.covers.push_back(cc);
    out.n_trajectories += 4;
  }

  ShotEnsemble ens =
      generic_shots(g, wg, spec, out.fps, rng, opts.shots_per_node);
  out.n_trajectories += ens.n_trajectories;
  out.n_unresolved += ens.n_unresolved;
  for (const auto& e : ens.edges) offer(e);

  // Targeted certificates for strict non-cover pairs. Exhaust them when the
  // group is small and every pair is certifiable; otherwise sample per
  // length gap among the certifiable ones.
  std::set<std::pair<int, int>> cover_set(strong.covers.begin(),
                                          strong.covers.end());
  std::vector<std::pair<int, int>> noncover, feasible;
  for (const auto& pr : strong.strict_pairs())
    if (!cover_set.count(pr)) {
      noncover.push_back(pr);
      if (pair_feasible(wg, pr.first, pr.second)) feasible.push_back(pr);
    }

  std::vector<std::pair<int, int>> chosen;
  if (feasible.size() == noncover.size() &&
      static_cast<int>(noncover.size()) <= opts.exhaustive_limit) {
    chosen = noncover;
  } else {
    std::map<int, std::vector<std::pair<int, int>>> by_gap;
    for (const auto& pr : feasible)
      by_gap[wg.elements[pr.second].length - wg.elements[pr.first].length]
          .push_back(pr);
    for (auto& kv : by_gap) {
      auto& list = kv.second;
      if (static_cast<int>(list.size()) <= opts.max_pairs_per_gap) {
        chosen.insert(chosen.end(), list.begin(), list.end());
      } else {
        std::vector<size_t> idx(list.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        for (int i = 0; i < opts.max_pairs_per_gap; ++i) {
          size_t j =
              i + static_cast<size_t>(rng.uniform() * (idx.size() - i));
          std::swap(idx[i], idx[j]);
          chosen.push_back(list[idx[i]]);
        }
      }
    }
    std::sort(chosen.begin(), chosen.end());
  }

  for (const auto& pr : chosen) {
    PairWitness pw =
        certify_pair(g, wg, spec, out.fps, pr.first, pr.second, rng);
    out.n_trajectories += pw.iterations;
    if (pw.succeeded) {
      EdgeWitness e;
      e.src_label = pr.second;
      e.dst_label = pr.first;
      e.evidence =
          pw.mode.find("bisect") != std::string::npos ? "bisection" : "shot";
      e.approach = pw.approach;
      e.rhs_at_approach = pw.rhs_at_approach;
      e.bisection_iters = pw.iterations;
      offer(e);
    }
    out.pair_witnesses.push_back(pw);
  }

  for (const auto& kv : best) out.edges.push_back(kv.second);
  for (const auto& e : out.edges)
    if (!strong.less(e.dst_label, e.src_label)) out.violations.push_back(e);

  // Reachability closure over the observed edges, compared to the order.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const auto& e : out.edges) reach[e.src_label][e.dst_label] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (int j = 0; j < n; ++j)
        if (reach[k][j]) reach[i][j] = true;
    }
  std::vector<std::pair<int, int>> reached;
  for (int s = 0; s < n; ++s)
    for (int d = 0; d < n; ++d)
      if (reach[s][d]) reached.emplace_back(d, s);
  std::sort(reached.begin(), reached.end());
  auto strict = strong.strict_pairs();
  out.reachability_matches_strong = reached == strict;

  for (const auto& pr : strict) {
    PairCheck pc;
    pc.lower_label = pr.first;
    pc.upper_label = pr.second;
    pc.gap = wg.elements[pr.second].length - wg.elements[pr.first].length;
    pc.is_cover = cover_set.count(pr) > 0;
    auto it = best.find({pr.second, pr.first});
    if (it != best.end()) {
      pc.how = it->second.evidence;
      pc.approach = it->second.approach;
    } else if (reach[pr.second][pr.first]) {
      pc.how = "transitive";
    } else {
      pc.how = "missing";
    }
    out.pairs.push_back(pc);
  }

  std::set<std::pair<int, int>> rset(reached.begin(), reached.end());
  auto weak_inside = [&](const BruhatPoset& wk) {
    auto wp = wk.strict_pairs();
    for (const auto& pr : wp)
      if (!rset.count(pr)) return false;
    return wp.size() < rset.size();
  };
  out.weak_left_strictly_inside = weak_inside(weak_left);
  out.weak_right_strictly_inside = weak_inside(weak_right);

  out.min_incomparable_approach = inf();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (strong.leq(x, y) || strong.leq(y, x)) continue;
      int rx = raw_of[x], ry = raw_of[y];
      IncomparableProbe probe;
      probe.a_label = x;
      probe.b_label = y;
      probe.min_approach = std::min(
          std::min(ens.fwd_min_approach(rx, ry), ens.fwd_min_approach(ry, rx)),
          std::min(ens.bwd_min_approach(rx, ry),
                   ens.bwd_min_approach(ry, rx)));
      out.incomparable.push_back(probe);
      out.min_incomparable_approach =
          std::min(out.min_incomparable_approach, probe.min_approach);
    }
  return out;
}

}  // namespace toda
