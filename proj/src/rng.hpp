#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace toda {

// Seeded generator with hand-rolled deviates. std::mt19937_64 output is
// pinned by the standard; the distributions here avoid the unpinned
// std::*_distribution implementations so identical seeds give identical
// streams everywhere, which the byte-reproducibility contract needs.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Eigen::VectorXd unit_vector(int k) {
    Eigen::VectorXd v(k);
    do {
      for (int i = 0; i < k; ++i) v(i) = gaussian();
    } while (v.norm() < 1e-8);
    return v / v.norm();
  }

  // Haar-ish rotation: QR of a Gaussian matrix, R-sign fixed, det forced +1.
  Eigen::MatrixXd special_orthogonal(int n) {
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
      if (r(j, j) < 0) q.col(j) = -q.col(j);
    if (q.determinant() < 0) q.col(n - 1) = -q.col(n - 1);
    return q;
  }

  uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace toda
