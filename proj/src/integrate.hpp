#pragma once

#include <Eigen/Core>

#include <functional>
#include <vector>

namespace toda {

enum class FlowStatus {
  ReachedTMax,   // integrated the full span without stalling
  Converged,     // stop predicate fired (stalled at an equilibrium)
  StepUnderflow, // error control pushed the step below the floor
  StepBudget,    // max_steps exhausted
};

const char* flow_status_name(FlowStatus s);

struct IntegratorOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  double t_max = 50.0;
  double h_init = 1e-3;
  double h_min = 1e-13;
  double h_max = 0.1;
  long max_steps = 2000000;
  bool store_samples = false;
};

struct OdeResult {
  FlowStatus status = FlowStatus::ReachedTMax;
  double final_time = 0.0;
  Eigen::VectorXd final_state;
  long n_steps = 0;
  long n_rejected = 0;
  double max_projection_correction = 0.0;
  std::vector<double> times;             // filled when store_samples
  std::vector<Eigen::VectorXd> states;
};

using RhsFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
// In-place constraint retraction applied after every accepted step; returns
// the correction magnitude.
using ProjectFn = std::function<double(Eigen::VectorXd&)>;
// Called after every accepted (and projected) step with the fresh rhs norm;
// return true to stop with status Converged.
using StopFn = std::function<bool(double t, const Eigen::VectorXd&, double rhs_norm)>;
using ObserverFn = std::function<void(double t, const Eigen::VectorXd&)>;

// Dormand-Prince 5(4) embedded pair with standard PI-free step control.
// The first stage is recomputed after projection instead of reusing the
// FSAL stage, so the retraction never desynchronizes the error estimate.
OdeResult integrate_adaptive(const RhsFn& rhs, const Eigen::VectorXd& y0,
                             const IntegratorOptions& opts,
                             const ProjectFn& project = nullptr,
                             const StopFn& stop = nullptr,
                             const ObserverFn& observer = nullptr);

}  // namespace toda
