#pragma once

#include "integrate.hpp"
#include "liealg.hpp"

#include <optional>
#include <vector>

namespace toda {

// Flow configuration: the spectral Cartan element Lambda, the potential
// Cartan element N, and integration controls. Both Cartan elements must be
// regular; lab construction additionally checks that the Morse critical
// values killing_form(Ad_w Lambda, N) are pairwise distinct.
struct TodaSpec {
  Eigen::VectorXd lambda_coords;
  Eigen::VectorXd n_coords;
  Eigen::MatrixXd Lambda;
  Eigen::MatrixXd N;

  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  double t_max = 200.0;
  double h_max = 0.1;
  long max_steps = 2000000;
  double stall_threshold = 1e-13;
  double fp_capture_dist = 1e-6;
  double drift_tol = 1e-8;
};

// M(L) = sum over positive roots of a_alpha (e_alpha - e_{-alpha}), the
// antisymmetric projection of L's root part. For type A this coincides with
// (strictly upper part) - (strictly lower part); the identity is kept as a
// cross-check in the test suite rather than as the implementation.
Eigen::MatrixXd toda_projector(const Realization& g, const Eigen::MatrixXd& L);

// [L, M(L)].
Eigen::MatrixXd lax_rhs(const Realization& g, const Eigen::MatrixXd& L);

// -M(Ad_psi Lambda) psi, the flow on the compact group whose Ad-image
// solves the Lax equation.
Eigen::MatrixXd group_rhs(const Realization& g, const TodaSpec& spec,
                          const KElement& psi);

// killing_form(Ad_psi Lambda, N); strictly decreasing along trajectories.
double morse_potential(const Realization& g, const TodaSpec& spec,
                       const KElement& psi);
// Same potential evaluated directly on a Lax state.
double morse_of_lax(const Realization& g, const TodaSpec& spec,
                    const Eigen::MatrixXd& L);

struct LaxIntegrationParams {
  bool store_samples = false;
  int time_sign = 1;  // -1 integrates the reversed flow
  // When given, stalling only counts as convergence within fp_capture_dist
  // of one of these states; near anything else the integrator keeps going.
  const std::vector<Eigen::MatrixXd>* fixed_points = nullptr;
  bool track_approaches = false;
  std::optional<double> t_max;  // overrides spec.t_max
  // Stop as soon as the state comes within this distance of any tracked
  // fixed point. A trajectory heading into a saddle can never stall there
  // numerically (roundoff seeds the unstable directions and eventually
  // ejects it), so runs whose expected limit is a saddle certify the
  // endpoint by near passage instead.
  std::optional<double> stop_on_visit;
};

struct LaxTrajectory {
  FlowStatus status = FlowStatus::ReachedTMax;
  Eigen::MatrixXd initial;
  Eigen::MatrixXd final_state;
  double final_time = 0.0;
  double final_rhs_norm = 0.0;
  long n_steps = 0;
  long n_rejected = 0;
  double spectral_drift = 0.0;          // vs the initial spectrum
  double max_resym_correction = 0.0;
  Eigen::VectorXd initial_spectrum;     // sorted ascending
  std::vector<double> times;            // when store_samples
  std::vector<Eigen::MatrixXd> states;
  // Per tracked fixed point: closest approach, the rhs norm there, and the
  // state realizing it (used for which-side bookkeeping in shooting).
  std::vector<double> closest_approach;
  std::vector<double> rhs_at_approach;
  std::vector<Eigen::MatrixXd> state_at_approach;
};

// Integrates dL/dt = [L, M(L)] with re-symmetrization after every accepted
// step. L0 must be symmetric and inside the algebra.
LaxTrajectory integrate_lax(const Realization& g, const TodaSpec& spec,
                            const Eigen::MatrixXd& L0,
                            const LaxIntegrationParams& params = {});

struct GroupTrajectory {
  FlowStatus status = FlowStatus::ReachedTMax;
  KElement final_state;
  double final_time = 0.0;
  double final_rhs_norm = 0.0;
  long n_steps = 0;
  double max_ortho_drift = 0.0;   // ||psi^T psi - I|| before retraction
  double max_retraction = 0.0;
  std::vector<double> times;
  std::vector<Eigen::MatrixXd> states;
  std::vector<double> potential;  // Morse potential at each sample
};

// Integrates dpsi/dt = -M(Ad_psi Lambda) psi with polar retraction onto the
// orthogonal group after every accepted step. Samples are always stored.
GroupTrajectory integrate_group(const Realization& g, const TodaSpec& spec,
                                const KElement& psi0,
                                std::optional<double> t_max = {});

struct CurvePoint {
  double t = 0.0;
  double off_residual = 0.0;       // ||M(L) - k (e - e^T)|| on the curve
  double subspace_residual = 0.0;  // L components outside span{h, e + e^T}
  double k_coeff = 0.0;
};

struct CurveCheckResult {
  int w = 0;
  int root_idx = 0;
  std::vector<CurvePoint> points;
  double max_off_residual = 0.0;
  double max_subspace_residual = 0.0;
  // gamma(pi/2) against the representative of sigma_alpha * w: distance to
  // the sign-diagonal coset, and the fixed-point mismatch of Ad Lambda.
  double landing_coset_gap = 0.0;
  double landing_point_gap = 0.0;
};

// Checks that t -> exp(t(e_alpha - e_{-alpha})) psi_w stays inside the
// rank-one invariant family: Ad Lambda remains in span{h, e_alpha+e_{-alpha}}
// and the projector field is tangent to the curve.
CurveCheckResult invariant_curve_check(const Realization& g,
                                       const WeylGroup& wg,
                                       const TodaSpec& spec, int w,
                                       int root_idx,
                                       const std::vector<double>& t_grid);

// Eigenvalues sorted ascending (symmetric input).
Eigen::VectorXd spectrum_of(const Eigen::MatrixXd& L);

}  // namespace toda
