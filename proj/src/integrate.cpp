#include "integrate.hpp"

#include <algorithm>
#include <cmath>

namespace toda {

const char* flow_status_name(FlowStatus s) {
  switch (s) {
    case FlowStatus::ReachedTMax: return "reached-t-max";
    case FlowStatus::Converged: return "converged";
    case FlowStatus::StepUnderflow: return "step-underflow";
    case FlowStatus::StepBudget: return "step-budget";
  }
  return "?";
}

namespace {

// Dormand-Prince coefficients.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                 a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 5th-order minus embedded 4th-order weights (error estimator).
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                 e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                 e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace

OdeResult integrate_adaptive(const RhsFn& rhs, const Eigen::VectorXd& y0,
                             const IntegratorOptions& opts,
                             const ProjectFn& project, const StopFn& stop,
                             const ObserverFn& observer) {
  OdeResult out;
  Eigen::VectorXd y = y0;
  double t = 0.0;

  if (project) out.max_projection_correction = project(y);
  Eigen::VectorXd k1 = rhs(y);
  if (opts.store_samples) {
    out.times.push_back(t);
    out.states.push_back(y);
  }
  if (observer) observer(t, y);
  if (stop && stop(t, y, k1.norm())) {
    out.status = FlowStatus::Converged;
    out.final_time = t;
    out.final_state = y;
    return out;
  }

  double h = std::min(opts.h_init, opts.h_max);
  Eigen::VectorXd k2, k3, k4, k5, k6, k7, y5, err;

  out.status = FlowStatus::StepBudget;
  while (out.n_steps < opts.max_steps) {
    if (t >= opts.t_max) {
      out.status = FlowStatus::ReachedTMax;
      break;
    }
    h = std::min(h, opts.t_max - t);

    k2 = rhs(y + h * (a21 * k1));
    k3 = rhs(y + h * (a31 * k1 + a32 * k2));
    k4 = rhs(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    k5 = rhs(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    k6 = rhs(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    k7 = rhs(y5);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double scale = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      double tol = opts.abs_tol +
                   opts.rel_tol * std::max(std::abs(y(i)), std::abs(y5(i)));
      scale += std::pow(err(i) / tol, 2);
    }
    double errnorm = std::sqrt(scale / static_cast<double>(y.size()));

    if (errnorm <= 1.0) {
      t += h;
      y = y5;
      ++out.n_steps;
      if (project) {
        double corr = project(y);
        out.max_projection_correction =
            std::max(out.max_projection_correction, corr);
      }
      k1 = rhs(y);  // also serves as the stall probe
      if (opts.store_samples) {
        out.times.push_back(t);
        out.states.push_back(y);
      }
      if (observer) observer(t, y);
      if (stop && stop(t, y, k1.norm())) {
        out.status = FlowStatus::Converged;
        break;
      }
    } else {
      ++out.n_rejected;
    }

    double fac = 0.9 * std::pow(std::max(errnorm, 1e-10), -0.2);
    h *= std::clamp(fac, 0.2, 5.0);
    h = std::min(h, opts.h_max);
    if (h < opts.h_min) {
      out.status = FlowStatus::StepUnderflow;
      break;
    }
  }
  out.final_time = t;
  out.final_state = y;
  return out;
}

}  // namespace toda
