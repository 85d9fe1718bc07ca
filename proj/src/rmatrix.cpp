#include "biham/rmatrix.hpp"

#include <sstream>

namespace biham {

ComplexMatrix r_const(const ComplexMatrix& X) {
  require_square(X);
  return 0.5 * (strict_upper_part(X) - strict_lower_part(X));
}

ComplexMatrix r_plus(const ComplexMatrix& X) { return r_const(X) + 0.5 * X; }

ComplexMatrix r_minus(const ComplexMatrix& X) { return r_const(X) - 0.5 * X; }

DynamicalR::DynamicalR(const ComplexMatrix& Q, double tol_reg) : Q_(Q) {
  require_square(Q);
  if (!is_diagonal(Q)) throw NotRegular("DynamicalR: Q must be diagonal");
  const Eigen::Index n = Q.rows();
  for (Eigen::Index k = 0; k < n; ++k)
    if (Q(k, k) == 0.0) throw NotInvertible("DynamicalR: Q has a zero diagonal entry");
  const double gap = min_diagonal_gap(Q);
  if (gap < tol_reg) {
    std::ostringstream os;
    os << "DynamicalR: diagonal gap " << gap << " below tol_reg " << tol_reg;
    throw NotRegular(os.str());
  }
  multipliers_ = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = k + 1; l < n; ++l) {
      // (Q_k/Q_l + 1) / (Q_k/Q_l - 1) == (Q_k + Q_l) / (Q_k - Q_l)
      const Complex m = 0.5 * (Q(k, k) + Q(l, l)) / (Q(k, k) - Q(l, l));
      multipliers_(k, l) = m;
      multipliers_(l, k) = -m;
    }
  }
}

ComplexMatrix DynamicalR::apply(const ComplexMatrix& X) const {
  require_same_size(X, multipliers_);
  return multipliers_.cwiseProduct(X);
}

ComplexMatrix DynamicalR::bracket(const ComplexMatrix& X, const ComplexMatrix& Y) const {
  return commutator(apply(X), Y) + commutator(X, apply(Y));
}

ComplexMatrix dyn_R(const ComplexMatrix& Q, const ComplexMatrix& X) { return DynamicalR(Q).apply(X); }

ComplexMatrix r_bracket(const ComplexMatrix& Q, const ComplexMatrix& X, const ComplexMatrix& Y) {
  return DynamicalR(Q).bracket(X, Y);
}

Complex coth_multiplier(Complex qk, Complex ql) {
  const Complex x = 0.5 * (qk - ql);
  return 0.5 * std::cosh(x) / std::sinh(x);
}

}  // namespace biham
