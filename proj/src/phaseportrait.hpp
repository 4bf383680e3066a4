#pragma once

#include "rng.hpp"
#include "todaflow.hpp"

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace toda {

// One critical point of the flow: the Cartan state Lambda_w = Ad_w Lambda
// together with its linearization data. raw_w indexes the Weyl element used
// to build the state; label_w is assigned afterwards by label_by_length so
// that unstable_dim equals the Bruhat length of the label.
struct FixedPointInfo {
  int raw_w = 0;
  int label_w = -1;
  Eigen::VectorXd coords;  // coweight coordinates of Lambda_w
  Eigen::MatrixXd Lambda_w;
  std::vector<int> unstable_roots;  // positive roots with alpha(Lambda_w) > 0
  int unstable_dim = 0;
  double potential = 0.0;  // killing_form(Lambda_w, N)
};

// One fixed point per Weyl element, indexed by raw element id. Throws
// ConfigError when Lambda is not regular.
std::vector<FixedPointInfo> fixed_points(const Realization& g,
                                         const WeylGroup& wg,
                                         const TodaSpec& spec);

// Fills in label_w = raw_w * u where u is the inverse of the raw sink, and
// checks unstable_dim(p_w) == length(label) for every w. The check failing
// would mean the flow's Morse indices do not realize Bruhat lengths at all;
// that is an InvariantError, not something to patch around.
// Returns u.
int label_by_length(const WeylGroup& wg, std::vector<FixedPointInfo>& fps);

// Where a trajectory ended up: raw fixed-point index, or -1 when the run
// did not settle. dist is to the claimed fixed point; second_dist guards
// against ambiguous captures.
struct LimitClass {
  int fp_raw = -1;
  double dist = 0.0;
  double second_dist = 0.0;
  double rhs_norm = 0.0;
};

LimitClass classify_limit(const std::vector<FixedPointInfo>& fps,
                          const TodaSpec& spec, const LaxTrajectory& traj);

// Finite-difference check of the linearization at a fixed point: the rhs
// restricted to the plane of (e_alpha + e_{-alpha}) must act diagonally
// with eigenvalue alpha(Lambda_w). The rhs is quadratic, so the centered
// difference is exact up to rounding.
struct LinearizationRow {
  int root_idx = 0;
  double fd_eigenvalue = 0.0;
  double predicted = 0.0;
  double cross_talk = 0.0;  // residual off the alpha-plane
};

struct LinearizationCheck {
  int raw_w = 0;
  std::vector<LinearizationRow> rows;
  double max_abs_error = 0.0;
  double max_cross_talk = 0.0;
};

LinearizationCheck linearization_check(const Realization& g,
                                       const TodaSpec& spec,
                                       const FixedPointInfo& fp,
                                       double fd_step = 1e-5);

// A directed heteroclinic witness in label coordinates: the trajectory runs
// from src (t -> -infinity) to dst (t -> +infinity).
struct EdgeWitness {
  int src_label = 0;
  int dst_label = 0;
  std::string evidence;  // "gamma", "shot", or "bisection"
  double approach = 0.0;  // distance to dst at the certifying moment
  double rhs_at_approach = 0.0;
  int bisection_iters = 0;
};

// gamma-curve verdict for one strong cover (dst_label <. src_label):
// the invariant-curve residuals plus the classification of the two offset
// trajectories launched from the curve.
struct CoverConnection {
  int src_label = 0;
  int dst_label = 0;
  int root_idx = 0;  // positive root of the connecting reflection
  CurveCheckResult curve;
  double fwd_dist = 0.0;  // capture distance of the t -> +inf endpoint
  double bwd_dist = 0.0;
  bool offsets_consistent = false;  // both offsets classify identically
  bool oriented_ok = false;         // src is the longer label
};

// Ensemble of seeded shots out of every fixed point: forward along unstable
// directions, backward (reversed flow) along stable ones. approach matrices
// are raw-indexed; fwd_min_approach(i, j) is the closest any forward shot
// launched at i came to fixed point j.
struct ShotEnsemble {
  std::vector<EdgeWitness> edges;
  Eigen::MatrixXd fwd_min_approach;
  Eigen::MatrixXd bwd_min_approach;
  int n_trajectories = 0;
  int n_unresolved = 0;
};

ShotEnsemble generic_shots(const Realization& g, const WeylGroup& wg,
                           const TodaSpec& spec,
                           const std::vector<FixedPointInfo>& fps,
                           Rng& rng, int shots_per_node);

// Shooting certificate for one strict non-cover pair. Plain shots settle
// pairs whose lower end is the sink (forward) or whose upper end is the
// source (backward); otherwise the transverse miss at the target saddle is
// a one-dimensional sign and bisection drives it to zero. Only targets with
// a one-dimensional exit in the integration's time sense are certifiable
// this way; feasible() reports that.
struct PairWitness {
  int lower_label = 0;
  int upper_label = 0;
  std::string mode;  // "forward-plain", "backward-plain",
                     // "forward-bisect", "backward-bisect"
  bool succeeded = false;
  double approach = 0.0;
  double rhs_at_approach = 0.0;
  int iterations = 0;
};

bool pair_feasible(const WeylGroup& wg, int lower_label, int upper_label);

PairWitness certify_pair(const Realization& g, const WeylGroup& wg,
                         const TodaSpec& spec,
                         const std::vector<FixedPointInfo>& fps,
                         int lower_label, int upper_label, Rng& rng);

// Reachability versus Bruhat order, assembled from gamma-curve covers,
// generic shots, and targeted pair certificates.
struct PairCheck {
  int lower_label = 0;
  int upper_label = 0;
  int gap = 0;  // length difference
  bool is_cover = false;
  std::string how;  // "gamma", "shot", "bisection", "transitive", "missing"
  double approach = 0.0;
};

struct IncomparableProbe {
  int a_label = 0;
  int b_label = 0;
  double min_approach = 0.0;  // over every probe in either direction
};

struct ConnectivityOptions {
  uint64_t seed = 2026;
  int shots_per_node = 64;
  int max_pairs_per_gap = 10;  // sampling cap for non-cover pairs
  int exhaustive_limit = 24;   // certify all non-cover pairs when feasible
                               // and at most this many
};

struct ConnectivityGraph {
  std::vector<FixedPointInfo> fps;  // raw order, labels filled in
  int label_shift = 0;              // the u of label_by_length
  std::vector<CoverConnection> covers;
  std::vector<EdgeWitness> edges;  // deduped by (src, dst), sorted
  std::vector<PairWitness> pair_witnesses;
  std::vector<PairCheck> pairs;  // every strict pair of the strong order
  std::vector<EdgeWitness> violations;  // observed edges not downward in
                                        // the strong order
  bool reachability_matches_strong = false;
  bool all_covers_connected = false;
  bool weak_left_strictly_inside = false;
  bool weak_right_strictly_inside = false;
  std::vector<IncomparableProbe> incomparable;
  double min_incomparable_approach = 0.0;
  int n_trajectories = 0;
  int n_unresolved = 0;
};

ConnectivityGraph connectivity_graph(const Realization& g,
                                     const WeylGroup& wg,
                                     const BruhatPoset& strong,
                                     const BruhatPoset& weak_left,
                                     const BruhatPoset& weak_right,
                                     const TodaSpec& spec,
                                     const ConnectivityOptions& opts);

}  // namespace toda
