#pragma once

#include "rootsys.hpp"

#include <Eigen/Dense>

#include <vector>

namespace toda {

Eigen::MatrixXd commutator(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// exp(t X) by scaling and squaring with a machine-precision Taylor tail.
Eigen::MatrixXd exp_matrix(const Eigen::MatrixXd& X, double t = 1.0);

// g X g^-1.
Eigen::MatrixXd adjoint(const Eigen::MatrixXd& g, const Eigen::MatrixXd& X);

// Element of the maximal compact subgroup (orthogonal, det +1).
struct KElement {
  Eigen::MatrixXd m;
};

// Matrix realization of the split real form for a root system.
//
// Basis order: Cartan generators h_1..h_r (the simple coroots), then one
// root vector per entry of rs.roots. The realization is transpose-stable
// with e_alpha^T = e_{-alpha}, so p = symmetric and k = antisymmetric
// matrices in the algebra, and every root triple is sl2-normalized:
// [e_alpha, e_{-alpha}] = alpha^vee and [alpha^vee, e_alpha] = 2 e_alpha.
struct Realization {
  RootSystem rs;
  int n = 0;    // matrix size
  int dim = 0;  // rank + number of roots

  std::vector<Eigen::MatrixXd> basis;
  Eigen::MatrixXd gram;        // trace-form Gram matrix of the basis
  Eigen::MatrixXd killing;     // Killing-form Gram matrix, via ad traces
  std::vector<Eigen::MatrixXd> ad;  // adjoint matrix of each basis element

  int root_slot(int root_idx) const { return rs.rank + root_idx; }
  const Eigen::MatrixXd& root_vector(int root_idx) const {
    return basis[root_slot(root_idx)];
  }
  const Eigen::MatrixXd& cartan_generator(int i) const { return basis[i]; }

  // sum_i coords(i) h_i.
  Eigen::MatrixXd cartan_element(const Eigen::VectorXd& coords) const;
  // alpha(H) for H given in coweight coordinates.
  double root_value(int root_idx, const Eigen::VectorXd& coords) const;

  // Coordinates in the basis; throws NumericalError when the reconstruction
  // residual exceeds tolerance (X outside the algebra). The residual can be
  // inspected instead by passing a non-null pointer.
  Eigen::VectorXd expand(const Eigen::MatrixXd& X,
                         double* residual = nullptr) const;

  Eigen::MatrixXd ad_matrix(const Eigen::MatrixXd& X) const;

 private:
  Eigen::PartialPivLU<Eigen::MatrixXd> gram_lu_;
  friend Realization realize(const RootSystem& rs);
};

Realization realize(const RootSystem& rs);

// X = H + sum over roots; returns (Cartan part, root part).
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> cartan_split(
    const Realization& g, const Eigen::MatrixXd& X);

// Trace of ad(X) ad(Y), computed through the precomputed basis ad matrices.
double killing_form(const Realization& g, const Eigen::MatrixXd& X,
                    const Eigen::MatrixXd& Y);

// Product over a reduced word of exp((pi/2)(e_alpha - e_{-alpha})).
// Lands in K, normalizes the Cartan subalgebra and induces w's coweight
// action on it (verified internally to 1e-10).
KElement weyl_representative(const Realization& g, const WeylGroup& wg,
                             int elem);

// Conversion between user-facing Cartan data and coweight coordinates.
// Type A: data = n diagonal entries summing to zero. Type B2: data = (a, b)
// for diag(a, b, 0, -b, -a).
Eigen::VectorXd coweight_coords_from_data(const Realization& g,
                                          const std::vector<double>& data);
std::vector<double> data_from_coweight_coords(const Realization& g,
                                              const Eigen::VectorXd& coords);

}  // namespace toda
