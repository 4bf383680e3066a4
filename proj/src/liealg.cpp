#include "liealg.hpp"

#include "errors.hpp"

#include <cmath>
#include <numbers>

namespace toda {

Eigen::MatrixXd commutator(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a * b - b * a;
}

Eigen::MatrixXd exp_matrix(const Eigen::MatrixXd& X, double t) {
  const int n = static_cast<int>(X.rows());
  Eigen::MatrixXd A = t * X;
  double norm = A.cwiseAbs().rowwise().sum().maxCoeff();  // induced inf-norm
  int s = 0;
  if (norm > 0.5) {
    s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    A /= std::pow(2.0, s);
  }
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = (term * A) / static_cast<double>(k);
    result += term;
    if (term.norm() <= 1e-17 * result.norm()) break;
  }
  for (int k = 0; k < s; ++k) result = result * result;
  return result;
}

Eigen::MatrixXd adjoint(const Eigen::MatrixXd& g, const Eigen::MatrixXd& X) {
  return g * X * g.inverse();
}

namespace {

Eigen::MatrixXd unit(int n, int i, int j) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

// E_ij - E_{n+1-j, n+1-i} (0-based), antisymmetric about the antidiagonal.
Eigen::MatrixXd so_unit(int n, int i, int j) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m(i, j) += 1.0;
  m(n - 1 - j, n - 1 - i) -= 1.0;
  return m;
}

}  // namespace

Eigen::MatrixXd Realization::cartan_element(const Eigen::VectorXd& coords) const {
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < rs.rank; ++i) H += coords(i) * basis[i];
  return H;
}

double Realization::root_value(int root_idx, const Eigen::VectorXd& coords) const {
  // alpha(sum x_i h_i) = sum_i x_i <alpha, alpha_i^vee>
  double v = 0;
  for (int i = 0; i < rs.rank; ++i) {
    double p = 0;
    for (int j = 0; j < rs.rank; ++j)
      p += rs.cartan(i, j) * rs.roots[root_idx](j);
    v += coords(i) * p;
  }
  return v;
}

Eigen::VectorXd Realization::expand(const Eigen::MatrixXd& X,
                                    double* residual) const {
  Eigen::VectorXd pairings(dim);
  for (int b = 0; b < dim; ++b) pairings(b) = (X * basis[b]).trace();
  Eigen::VectorXd c = gram_lu_.solve(pairings);
  Eigen::MatrixXd rec = Eigen::MatrixXd::Zero(n, n);
  for (int b = 0; b < dim; ++b) rec += c(b) * basis[b];
  double res = (X - rec).norm();
  if (residual) {
    *residual = res;
  } else if (res > 1e-10 * std::max(1.0, X.norm())) {
    throw NumericalError("matrix is not in the algebra (expansion residual " +
                         std::to_string(res) + ")");
  }
  return c;
}

Eigen::MatrixXd Realization::ad_matrix(const Eigen::MatrixXd& X) const {
  Eigen::MatrixXd m(dim, dim);
  for (int b = 0; b < dim; ++b)
    m.col(b) = expand(commutator(X, basis[b]));
  return m;
}

Realization realize(const RootSystem& rs) {
  Realization g;
  g.rs = rs;
  g.dim = rs.rank + rs.root_count();

  if (rs.type == AlgebraType::A) {
    g.n = rs.rank + 1;
    for (int i = 0; i < rs.rank; ++i)
      g.basis.push_back(unit(g.n, i, i) - unit(g.n, i + 1, i + 1));
    for (int k = 0; k < rs.root_count(); ++k) {
      const Eigen::VectorXi& c = rs.roots[k];
      if (!rs.is_positive(k)) {
        g.basis.push_back(g.basis[rs.rank + rs.negate(k)].transpose());
        continue;
      }
      // Positive roots of sl(n) are consecutive sums alpha_i..alpha_{j-1}.
      int lo = -1, hi = -1;
      for (int j = 0; j < rs.rank; ++j) {
        if (c(j) == 0) continue;
        if (lo < 0) lo = j;
        hi = j;
      }
      g.basis.push_back(unit(g.n, lo, hi + 1));
    }
  } else if (rs.type == AlgebraType::B) {
    g.n = 5;
    // Split so(5): antisymmetric about the antidiagonal, Cartan generators
    // are the simple coroots diag(1,-1,0,1,-1) and diag(0,2,0,-2,0).
    g.basis.push_back(so_unit(5, 0, 0) - so_unit(5, 1, 1));
    g.basis.push_back(2.0 * so_unit(5, 1, 1));
    const double rt2 = std::numbers::sqrt2;
    // Root vectors by coordinate pattern; short roots carry sqrt(2) so that
    // every [e, e^T] equals the coroot exactly.
    for (int k = 0; k < rs.root_count(); ++k) {
      const Eigen::VectorXi& c = rs.roots[k];
      if (!rs.is_positive(k)) {
        g.basis.push_back(g.basis[rs.rank + rs.negate(k)].transpose());
        continue;
      }
      Eigen::MatrixXd e;
      if (c(0) == 1 && c(1) == 0) e = so_unit(5, 0, 1);            // e1 - e2
      else if (c(0) == 0 && c(1) == 1) e = rt2 * so_unit(5, 1, 2); // e2
      else if (c(0) == 1 && c(1) == 1) e = rt2 * so_unit(5, 0, 2); // e1
      else if (c(0) == 1 && c(1) == 2) e = so_unit(5, 0, 3);       // e1 + e2
      else throw InvariantError("unexpected B2 root");
      g.basis.push_back(e);
    }
  } else {
    throw ConfigError("no realization for this algebra type");
  }

  g.gram.resize(g.dim, g.dim);
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b)
      g.gram(a, b) = (g.basis[a] * g.basis[b]).trace();
  Eigen::FullPivLU<Eigen::MatrixXd> full(g.gram);
  if (!full.isInvertible())
    throw InvariantError("degenerate trace form on the realization basis");
  g.gram_lu_ = Eigen::PartialPivLU<Eigen::MatrixXd>(g.gram);

  for (int b = 0; b < g.dim; ++b) g.ad.push_back(g.ad_matrix(g.basis[b]));
  g.killing.resize(g.dim, g.dim);
  for (int a = 0; a < g.dim; ++a)
    for (int b = a; b < g.dim; ++b)
      g.killing(a, b) = g.killing(b, a) = (g.ad[a] * g.ad[b]).trace();

  return g;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> cartan_split(
    const Realization& g, const Eigen::MatrixXd& X) {
  Eigen::VectorXd c = g.expand(X);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(g.n, g.n);
  for (int i = 0; i < g.rs.rank; ++i) H += c(i) * g.basis[i];
  return {H, X - H};
}

double killing_form(const Realization& g, const Eigen::MatrixXd& X,
                    const Eigen::MatrixXd& Y) {
  Eigen::VectorXd cx = g.expand(X);
  Eigen::VectorXd cy = g.expand(Y);
  return cx.dot(g.killing * cy);
}

KElement weyl_representative(const Realization& g, const WeylGroup& wg,
                             int elem) {
  const double quarter_turn = std::numbers::pi / 2.0;
  Eigen::MatrixXd psi = Eigen::MatrixXd::Identity(g.n, g.n);
  for (int i : wg.elements[elem].word) {
    int idx = g.rs.simple_root_index(i);
    const Eigen::MatrixXd& e = g.root_vector(idx);
    psi = psi * exp_matrix(e - e.transpose(), quarter_turn);
  }

  // Ad_psi must send each h_i to the realization of w(alpha_i^vee).
  const Eigen::MatrixXi& cw = wg.elements[elem].coweight_action;
  for (int i = 0; i < g.rs.rank; ++i) {
    Eigen::MatrixXd img = psi * g.basis[i] * psi.transpose();
    Eigen::MatrixXd expect = g.cartan_element(cw.col(i).cast<double>());
    if ((img - expect).norm() > 1e-10)
      throw InvariantError("Weyl representative does not act as the element");
  }
  return KElement{psi};
}

Eigen::VectorXd coweight_coords_from_data(const Realization& g,
                                          const std::vector<double>& data) {
  if (g.rs.type == AlgebraType::A) {
    if (static_cast<int>(data.size()) != g.n)
      throw ConfigError("type A Cartan data needs " + std::to_string(g.n) +
                        " diagonal entries, got " + std::to_string(data.size()));
    double sum = 0;
    for (double d : data) sum += d;
    if (std::abs(sum) > 1e-9)
      throw ConfigError("type A Cartan data must be trace-free (sum = " +
                        std::to_string(sum) + ")");
    Eigen::VectorXd coords(g.rs.rank);
    double partial = 0;
    for (int i = 0; i < g.rs.rank; ++i) {
      partial += data[i];
      coords(i) = partial;
    }
    return coords;
  }
  if (g.rs.type == AlgebraType::B) {
    if (data.size() != 2)
      throw ConfigError("type B2 Cartan data needs 2 entries (a, b) for "
                        "diag(a, b, 0, -b, -a)");
    Eigen::VectorXd coords(2);
    coords << data[0], (data[0] + data[1]) / 2.0;
    return coords;
  }
  throw ConfigError("no Cartan data convention for this algebra type");
}

std::vector<double> data_from_coweight_coords(const Realization& g,
                                              const Eigen::VectorXd& coords) {
  Eigen::MatrixXd H = g.cartan_element(coords);
  if (g.rs.type == AlgebraType::A) {
    std::vector<double> data(g.n);
    for (int i = 0; i < g.n; ++i) data[i] = H(i, i);
    return data;
  }
  if (g.rs.type == AlgebraType::B) return {H(0, 0), H(1, 1)};
  throw ConfigError("no Cartan data convention for this algebra type");
}

}  // namespace toda
