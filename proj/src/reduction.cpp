#include "biham/reduction.hpp"

#include <sstream>
#include <stdexcept>

namespace biham {

ReducedPoint make_reduced_point(ComplexMatrix Q, ComplexMatrix L, double tol_reg) {
  require_same_size(Q, L);
  if (Q.rows() < 2) throw SizeMismatch("reduced point requires n >= 2");
  if (!is_diagonal(Q)) throw NotRegular("reduced point: Q must be diagonal");
  for (Eigen::Index i = 0; i < Q.rows(); ++i)
    if (std::abs(Q(i, i)) <= 1e-12) throw NotInvertible("reduced point: Q has a vanishing entry");
  const double gap = min_diagonal_gap(Q);
  if (gap <= tol_reg) {
    std::ostringstream os;
    os << "reduced point: diagonal gap " << gap << " <= tol_reg " << tol_reg;
    throw NotRegular(os.str());
  }
  return {std::move(Q), std::move(L)};
}

Projection project(const PhasePoint& p, double tol_reg) {
  const Diagonalization d = diagonalize_regular(p.g, tol_reg);
  ComplexMatrix L = d.eta * p.L * d.eta.inverse();
  return {make_reduced_point(d.Q, std::move(L), tol_reg), d.eta};
}

ReducedObservable::ReducedObservable(Observable F) : F_(std::move(F)) {
  if (!F_.is_invariant()) throw InvarianceViolated("restriction requires an invariant observable: " + F_.to_string());
}

Complex ReducedObservable::evaluate(const ReducedPoint& rp) const { return F_.evaluate(rp.as_phase_point()); }

ReducedDerivatives ReducedObservable::derivatives(const ReducedPoint& rp) const {
  const DerivativeBundle b = F_.derivatives(rp.as_phase_point());
  return {diagonal_part(b.nabla1), b.d2, b.nabla2, b.nabla2p};
}

ReducedObservable restrict_observable(const Observable& F) { return ReducedObservable(F); }

Complex reduced_pb1(const ReducedObservable& f, const ReducedObservable& h, const ReducedPoint& rp) {
  const DynamicalR R(rp.Q);
  const ReducedDerivatives df = f.derivatives(rp);
  const ReducedDerivatives dh = h.derivatives(rp);
  return trace_pairing(df.nabla1, dh.d2) - trace_pairing(dh.nabla1, df.d2) +
         trace_pairing(rp.L, R.bracket(df.d2, dh.d2));
}

Complex reduced_pb2(const ReducedObservable& f, const ReducedObservable& h, const ReducedPoint& rp) {
  const DynamicalR R(rp.Q);
  const ReducedDerivatives df = f.derivatives(rp);
  const ReducedDerivatives dh = h.derivatives(rp);
  return 0.5 * trace_pairing(df.nabla1, dh.nabla2 + dh.nabla2p) -
         0.5 * trace_pairing(dh.nabla1, df.nabla2 + df.nabla2p) + trace_pairing(df.nabla2, R(dh.nabla2)) -
         trace_pairing(df.nabla2p, R(dh.nabla2p));
}

DiagonalGradientResiduals diagonal_gradient_residuals(const Observable& F, const ReducedPoint& rp) {
  const ReducedObservable f(F);
  const DynamicalR R(rp.Q);
  const DerivativeBundle full = F.derivatives(rp.as_phase_point());
  const ReducedDerivatives red = f.derivatives(rp);
  const ComplexMatrix c = commutator(rp.L, red.d2);
  const double res14 = diagonal_part(c).norm();
  const double res15 = (full.nabla1 - red.nabla1 + R(c) + 0.5 * c).norm();
  return {res14, res15};
}

namespace {

ComplexMatrix matrix_power(const ComplexMatrix& L, int m) {
  ComplexMatrix out = identity(static_cast<std::size_t>(L.rows()));
  for (int k = 0; k < m; ++k) out = out * L;
  return out;
}

}  // namespace

ReducedVectorField reduced_vf(int m, const ReducedPoint& rp, double tol_reg) {
  if (m < 1) throw std::invalid_argument("reduced_vf: m must be >= 1");
  const DynamicalR R(rp.Q, tol_reg);
  const ComplexMatrix Lm = matrix_power(rp.L, m);
  return {diagonal_part(Lm) * rp.Q, commutator(R(Lm), rp.L)};
}

Complex reduced_flow_derivative(const ReducedObservable& f, int m, const ReducedPoint& rp) {
  const DynamicalR R(rp.Q);
  const ReducedDerivatives df = f.derivatives(rp);
  const ComplexMatrix Lm = matrix_power(rp.L, m);
  return trace_pairing(df.nabla1, diagonal_part(Lm)) + trace_pairing(df.d2, commutator(R(Lm), rp.L));
}

}  // namespace biham
