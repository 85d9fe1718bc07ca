#pragma once

#include "biham/brackets.hpp"
#include "biham/observables.hpp"
#include "biham/rmatrix.hpp"

namespace biham {

/// A point (Q, L) with Q invertible, diagonal and regular.
struct ReducedPoint {
  ComplexMatrix Q;
  ComplexMatrix L;

  std::size_t n() const { return static_cast<std::size_t>(Q.rows()); }
  PhasePoint as_phase_point() const { return {Q, L}; }
};

/// Validates diagonal Q, pairwise gaps > tol_reg and |Q_i| > 1e-12.
ReducedPoint make_reduced_point(ComplexMatrix Q, ComplexMatrix L, double tol_reg = kDefaultTolReg);

struct ReducedDerivatives {
  ComplexMatrix nabla1;  ///< diagonal
  ComplexMatrix d2;
  ComplexMatrix nabla2;   ///< L d2
  ComplexMatrix nabla2p;  ///< d2 L
};

struct Projection {
  ReducedPoint point;
  ComplexMatrix eta;  ///< point = (eta g eta^-1, eta L eta^-1)
};

/// Conjugates (g, L) so that g becomes diagonal with ascending (Re, Im) eigenvalues.
Projection project(const PhasePoint& p, double tol_reg = kDefaultTolReg);

/// Restriction of a conjugation-invariant observable to diagonal regular Q.
class ReducedObservable {
 public:
  explicit ReducedObservable(Observable F);

  const Observable& source() const { return F_; }
  Complex evaluate(const ReducedPoint& rp) const;
  ReducedDerivatives derivatives(const ReducedPoint& rp) const;

 private:
  Observable F_;
};

/// Throws InvarianceViolated if F is not structurally invariant.
ReducedObservable restrict_observable(const Observable& F);

Complex reduced_pb1(const ReducedObservable& f, const ReducedObservable& h, const ReducedPoint& rp);
Complex reduced_pb2(const ReducedObservable& f, const ReducedObservable& h, const ReducedPoint& rp);

struct DiagonalGradientResiduals {
  double diag_commutator;    ///< || ([L, d2 f])_0 ||
  double gradient_relation;  ///< || nabla1 F - nabla1 f + (R(Q) + 1/2)[L, d2 f] ||
};

DiagonalGradientResiduals diagonal_gradient_residuals(const Observable& F, const ReducedPoint& rp);

struct ReducedVectorField {
  ComplexMatrix Qdot;
  ComplexMatrix Ldot;
};

/// Qdot = (L^m)_0 Q, Ldot = [R(Q) L^m, L]; shared by the m-th flow of the
/// second bracket and the (m+1)-th flow of the first. The vector field is
/// defined up to tangents of the diagonal gauge orbits; this is the
/// representative with no gauge component.
ReducedVectorField reduced_vf(int m, const ReducedPoint& rp, double tol_reg = kDefaultTolReg);

/// <nabla1 f, (L^m)_0> + <d2 f, [R(Q) L^m, L]>
Complex reduced_flow_derivative(const ReducedObservable& f, int m, const ReducedPoint& rp);

}  // namespace biham
