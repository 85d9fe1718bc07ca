#pragma once

#include "biham/linalg.hpp"

namespace biham {

/// r(X) = (X_> - X_<) / 2
ComplexMatrix r_const(const ComplexMatrix& X);
/// r(X) + X/2
ComplexMatrix r_plus(const ComplexMatrix& X);
/// r(X) - X/2
ComplexMatrix r_minus(const ComplexMatrix& X);

/// The dynamical r-matrix R(Q) for a regular diagonal Q, stored as its
/// off-diagonal multiplier table m_kl = (Q_k/Q_l + 1) / (2 (Q_k/Q_l - 1)).
/// R(Q) acts entrywise on off-diagonal entries and annihilates the diagonal.
class DynamicalR {
 public:
  explicit DynamicalR(const ComplexMatrix& Q, double tol_reg = kDefaultTolReg);

  std::size_t size() const { return static_cast<std::size_t>(multipliers_.rows()); }
  const ComplexMatrix& Q() const { return Q_; }
  /// m_kl for k != l; zero on the diagonal.
  const ComplexMatrix& multipliers() const { return multipliers_; }

  ComplexMatrix apply(const ComplexMatrix& X) const;
  ComplexMatrix operator()(const ComplexMatrix& X) const { return apply(X); }

  /// [R X, Y] + [X, R Y]
  ComplexMatrix bracket(const ComplexMatrix& X, const ComplexMatrix& Y) const;

 private:
  ComplexMatrix Q_;
  ComplexMatrix multipliers_;
};

ComplexMatrix dyn_R(const ComplexMatrix& Q, const ComplexMatrix& X);
ComplexMatrix r_bracket(const ComplexMatrix& Q, const ComplexMatrix& X, const ComplexMatrix& Y);

/// coth(x/2)/2 form of the multiplier, for Q = exp(q). Used as a cross-check.
Complex coth_multiplier(Complex qk, Complex ql);

}  // namespace biham
