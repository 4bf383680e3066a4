#include "todaflow.hpp"

#include "errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <numbers>

namespace toda {

Eigen::VectorXd spectrum_of(const Eigen::MatrixXd& L) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

namespace {

Eigen::MatrixXd projector_from_coeffs(const Realization& g,
                                      const Eigen::VectorXd& c) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(g.n, g.n);
  for (int k = 0; k < g.rs.n_positive; ++k) {
    int up = g.root_slot(k);
    int dn = g.root_slot(g.rs.negate(k));
    double a = 0.5 * (c(up) + c(dn));  // equal for L in p
    M += a * (g.basis[up] - g.basis[dn]);
  }
  return M;
}

}  // namespace

Eigen::MatrixXd toda_projector(const Realization& g, const Eigen::MatrixXd& L) {
  return projector_from_coeffs(g, g.expand(L));
}

Eigen::MatrixXd lax_rhs(const Realization& g, const Eigen::MatrixXd& L) {
  return commutator(L, toda_projector(g, L));
}

Eigen::MatrixXd group_rhs(const Realization& g, const TodaSpec& spec,
                          const KElement& psi) {
  // Runge-Kutta stage values sit O(h^2) off the orthogonal group, pushing
  // Ad_psi Lambda slightly out of the algebra. Expanding least-squares
  // (residual requested, then dropped) extends the field smoothly off the
  // manifold; on it the projection is the identity.
  Eigen::MatrixXd L = psi.m * spec.Lambda * psi.m.transpose();
  double residual = 0.0;
  Eigen::VectorXd c = g.expand(0.5 * (L + L.transpose()), &residual);
  return -projector_from_coeffs(g, c) * psi.m;
}

double morse_of_lax(const Realization& g, const TodaSpec& spec,
                    const Eigen::MatrixXd& L) {
  return killing_form(g, L, spec.N);
}

double morse_potential(const Realization& g, const TodaSpec& spec,
                       const KElement& psi) {
  return morse_of_lax(g, spec, psi.m * spec.Lambda * psi.m.transpose());
}

namespace {

Eigen::VectorXd vec(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

Eigen::MatrixXd unvec(const Eigen::VectorXd& v, int n) {
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), n, n);
}

void validate_lax_state(const Realization& g, const Eigen::MatrixXd& L0) {
  if (L0.rows() != g.n || L0.cols() != g.n)
    throw ConfigError("initial state has wrong dimensions");
  double asym = (L0 - L0.transpose()).norm();
  if (asym > 1e-9 * std::max(1.0, L0.norm()))
    throw ConfigError("initial Lax state is not symmetric (residual " +
                      std::to_string(asym) + ")");
  g.expand(L0);  // throws when outside the algebra
}

}  // namespace

LaxTrajectory integrate_lax(const Realization& g, const TodaSpec& spec,
                            const Eigen::MatrixXd& L0,
                            const LaxIntegrationParams& params) {
  validate_lax_state(g, L0);
  const int n = g.n;
  const double sign = params.time_sign >= 0 ? 1.0 : -1.0;

  LaxTrajectory traj;
  traj.initial = L0;
  traj.initial_spectrum = spectrum_of(L0);

  const std::vector<Eigen::MatrixXd>* fps = params.fixed_points;
  if (params.track_approaches && fps) {
    traj.closest_approach.assign(fps->size(),
                                 std::numeric_limits<double>::infinity());
    traj.rhs_at_approach.assign(fps->size(),
                                std::numeric_limits<double>::infinity());
    traj.state_at_approach.assign(fps->size(), Eigen::MatrixXd());
  }

  IntegratorOptions opts;
  opts.abs_tol = spec.abs_tol;
  opts.rel_tol = spec.rel_tol;
  opts.t_max = params.t_max.value_or(spec.t_max);
  opts.h_max = spec.h_max;
  opts.max_steps = spec.max_steps;
  opts.store_samples = params.store_samples;

  auto rhs = [&](const Eigen::VectorXd& y) {
    return vec(Eigen::MatrixXd(sign * lax_rhs(g, unvec(y, n))));
  };
  auto project = [&](Eigen::VectorXd& y) {
    Eigen::MatrixXd L = unvec(y, n);
    Eigen::MatrixXd S = 0.5 * (L + L.transpose());
    double corr = (S - L).norm();
    y = vec(S);
    return corr;
  };
  auto observer = [&](double, const Eigen::VectorXd& y) {
    Eigen::MatrixXd L = unvec(y, n);
    double drift =
        (spectrum_of(L) - traj.initial_spectrum).cwiseAbs().maxCoeff();
    traj.spectral_drift = std::max(traj.spectral_drift, drift);
    if (!traj.closest_approach.empty()) {
      for (size_t i = 0; i < fps->size(); ++i) {
        double d = (L - (*fps)[i]).norm();
        if (d < traj.closest_approach[i]) {
          traj.closest_approach[i] = d;
          traj.rhs_at_approach[i] = lax_rhs(g, L).norm();
          traj.state_at_approach[i] = L;
        }
      }
    }
  };
  auto stop = [&](double, const Eigen::VectorXd& y, double rhs_norm) {
    traj.final_rhs_norm = rhs_norm;
    if (params.stop_on_visit && fps) {
      Eigen::MatrixXd L = unvec(y, n);
      for (const auto& fp : *fps)
        if ((L - fp).norm() < *params.stop_on_visit) return true;
    }
    if (rhs_norm >= spec.stall_threshold) return false;
    if (!fps) return true;
    Eigen::MatrixXd L = unvec(y, n);
    for (const auto& fp : *fps)
      if ((L - fp).norm() < spec.fp_capture_dist) return true;
    return false;  // stalled near a saddle passage; keep going
  };

  OdeResult r = integrate_adaptive(rhs, vec(L0), opts, project, stop, observer);
  traj.status = r.status;
  traj.final_time = r.final_time;
  traj.final_state = unvec(r.final_state, n);
  traj.n_steps = r.n_steps;
  traj.n_rejected = r.n_rejected;
  traj.max_resym_correction = r.max_projection_correction;
  traj.times = std::move(r.times);
  traj.states.reserve(r.states.size());
  for (const auto& y : r.states) traj.states.push_back(unvec(y, n));
  return traj;
}

GroupTrajectory integrate_group(const Realization& g, const TodaSpec& spec,
                                const KElement& psi0,
                                std::optional<double> t_max) {
  const int n = g.n;
  if ((psi0.m.transpose() * psi0.m - Eigen::MatrixXd::Identity(n, n)).norm() >
      1e-9)
    throw ConfigError("initial group state is not orthogonal");

  GroupTrajectory traj;
  IntegratorOptions opts;
  opts.abs_tol = spec.abs_tol;
  opts.rel_tol = spec.rel_tol;
  opts.t_max = t_max.value_or(spec.t_max);
  opts.h_max = spec.h_max;
  opts.max_steps = spec.max_steps;
  opts.store_samples = true;

  auto rhs = [&](const Eigen::VectorXd& y) {
    return vec(group_rhs(g, spec, KElement{unvec(y, n)}));
  };
  auto project = [&](Eigen::VectorXd& y) {
    Eigen::MatrixXd psi = unvec(y, n);
    double drift =
        (psi.transpose() * psi - Eigen::MatrixXd::Identity(n, n)).norm();
    traj.max_ortho_drift = std::max(traj.max_ortho_drift, drift);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        psi, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::MatrixXd polar = svd.matrixU() * svd.matrixV().transpose();
    double corr = (polar - psi).norm();
    y = vec(polar);
    return corr;
  };
  auto stop = [&](double, const Eigen::VectorXd&, double rhs_norm) {
    traj.final_rhs_norm = rhs_norm;
    return rhs_norm < spec.stall_threshold;
  };

  OdeResult r = integrate_adaptive(rhs, vec(psi0.m), opts, project, stop);
  traj.status = r.status;
  traj.final_time = r.final_time;
  traj.final_state = KElement{unvec(r.final_state, n)};
  traj.n_steps = r.n_steps;
  traj.max_retraction = r.max_projection_correction;
  traj.times = std::move(r.times);
  traj.states.reserve(r.states.size());
  for (const auto& y : r.states) {
    traj.states.push_back(unvec(y, n));
    traj.potential.push_back(
        morse_potential(g, spec, KElement{traj.states.back()}));
  }
  return traj;
}

CurveCheckResult invariant_curve_check(const Realization& g,
                                       const WeylGroup& wg,
                                       const TodaSpec& spec, int w,
                                       int root_idx,
                                       const std::vector<double>& t_grid) {
  if (!g.rs.is_positive(root_idx))
    throw ConfigError("invariant curves are indexed by positive roots");

  CurveCheckResult res;
  res.w = w;
  res.root_idx = root_idx;

  const Eigen::MatrixXd& e = g.root_vector(root_idx);
  Eigen::MatrixXd f = g.root_vector(g.rs.negate(root_idx));
  Eigen::MatrixXd gen = e - f;
  KElement psi_w = weyl_representative(g, wg, w);
  const int up = g.root_slot(root_idx);
  const int dn = g.root_slot(g.rs.negate(root_idx));

  for (double t : t_grid) {
    Eigen::MatrixXd gamma = exp_matrix(gen, t) * psi_w.m;
    Eigen::MatrixXd L = gamma * spec.Lambda * gamma.transpose();
    Eigen::VectorXd cl = g.expand(L);

    CurvePoint pt;
    pt.t = t;
    double sub2 = 0.0;
    for (int k = 0; k < g.rs.root_count(); ++k) {
      int slot = g.root_slot(k);
      if (slot == up || slot == dn) continue;
      sub2 += cl(slot) * cl(slot);
    }
    sub2 += std::pow(cl(up) - cl(dn), 2);  // p-membership of the pair
    pt.subspace_residual = std::sqrt(sub2);

    Eigen::MatrixXd M = toda_projector(g, L);
    Eigen::VectorXd cm = g.expand(M);
    pt.k_coeff = 0.5 * (cm(up) - cm(dn));
    pt.off_residual = (M - pt.k_coeff * gen).norm();

    res.max_off_residual = std::max(res.max_off_residual, pt.off_residual);
    res.max_subspace_residual =
        std::max(res.max_subspace_residual, pt.subspace_residual);
    res.points.push_back(pt);
  }

  // Landing at the quarter turn: gamma(pi/2) represents sigma_alpha * w, so
  // it must differ from that element's representative by a +-1 diagonal.
  int sigma = wg.reflection_by_root[root_idx];
  int target = wg.mul(sigma, w);
  KElement psi_t = weyl_representative(g, wg, target);
  Eigen::MatrixXd landing =
      exp_matrix(gen, std::numbers::pi / 2.0) * psi_w.m;
  Eigen::MatrixXd D = landing * psi_t.m.transpose();  // inverse of orthogonal
  double gap = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      double want = (i == j) ? (D(i, i) >= 0 ? 1.0 : -1.0) : 0.0;
      gap = std::max(gap, std::abs(D(i, j) - want));
    }
  res.landing_coset_gap = gap;
  res.landing_point_gap =
      (landing * spec.Lambda * landing.transpose() -
       psi_t.m * spec.Lambda * psi_t.m.transpose())
          .norm();
  return res;
}

}  // namespace toda
