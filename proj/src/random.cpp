#include "biham/random.hpp"

#include <cmath>

namespace biham {

ComplexMatrix Sampler::matrix(std::size_t n, double scale) {
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = complex_in_box(scale);
  return m;
}

ComplexMatrix Sampler::near_identity(std::size_t n, double radius) {
  ComplexMatrix e = matrix(n, 1.0);
  const double norm = e.norm();
  const double target = radius * uniform(0.25, 1.0);
  return identity(n) + e * (target / norm);
}

ComplexMatrix Sampler::hermitian(std::size_t n, double scale) {
  const ComplexMatrix a = matrix(n, scale);
  return 0.5 * (a + a.adjoint());
}

ComplexMatrix Sampler::regular_diagonal(std::size_t n, double min_gap) {
  for (;;) {
    Eigen::VectorXcd d(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      const double rho = uniform(0.5, 2.0);
      const double theta = uniform(-M_PI, M_PI);
      d(i) = std::polar(rho, theta);
    }
    bool ok = true;
    for (Eigen::Index i = 0; i < d.size() && ok; ++i)
      for (Eigen::Index j = i + 1; j < d.size(); ++j)
        if (std::abs(d(i) - d(j)) < min_gap) ok = false;
    if (ok) return diagonal_matrix(d);
  }
}

Eigen::VectorXd Sampler::separated_reals(std::size_t n, double span, double min_gap) {
  for (;;) {
    Eigen::VectorXd q(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < q.size(); ++i) q(i) = uniform(-span, span);
    bool ok = true;
    for (Eigen::Index i = 0; i < q.size() && ok; ++i)
      for (Eigen::Index j = i + 1; j < q.size(); ++j)
        if (std::abs(q(i) - q(j)) < min_gap) ok = false;
    if (ok) return q;
  }
}

}  // namespace biham
