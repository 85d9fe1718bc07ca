#include "biham/realforms.hpp"

#include <algorithm>
#include <stdexcept>

namespace biham::realforms {

namespace {

void check_real_slice_inputs(const Eigen::VectorXd& q, const ComplexMatrix& L) {
  require_square(L);
  if (q.size() != L.rows()) throw SizeMismatch("slice point: q and L sizes differ");
  if ((L - L.adjoint()).cwiseAbs().maxCoeff() > 1e-14 * std::max(1.0, L.cwiseAbs().maxCoeff()))
    throw SymmetryViolated("slice point: L must be Hermitian");
}

double scale_of(const ComplexMatrix& X) { return std::max(1.0, X.cwiseAbs().maxCoeff()); }

bool real_diagonal(const ComplexMatrix& X, double tol) {
  return is_diagonal(X, tol) && X.diagonal().imag().cwiseAbs().maxCoeff() <= tol;
}

void require_pb_index(int i) {
  if (i != 1 && i != 2) throw std::invalid_argument("bracket index must be 1 or 2");
}

double re_pair(const ComplexMatrix& X, const ComplexMatrix& Y) { return trace_pairing(X, Y).real(); }
double im_pair(const ComplexMatrix& X, const ComplexMatrix& Y) { return trace_pairing(X, Y).imag(); }

}  // namespace

ReducedPoint HyperbolicPoint::reduced() const {
  return make_reduced_point(diagonal_matrix(q.cast<Complex>().array().exp().matrix()), L);
}

ReducedPoint TrigPoint::reduced() const {
  return make_reduced_point(diagonal_matrix((Complex(0.0, 1.0) * q.cast<Complex>()).array().exp().matrix()), L);
}

HyperbolicPoint make_hyperbolic_point(Eigen::VectorXd q, ComplexMatrix L) {
  check_real_slice_inputs(q, L);
  HyperbolicPoint hp{std::move(q), std::move(L)};
  (void)hp.reduced();
  return hp;
}

TrigPoint make_trig_point(Eigen::VectorXd q, ComplexMatrix L) {
  check_real_slice_inputs(q, L);
  TrigPoint tp{std::move(q), std::move(L)};
  (void)tp.reduced();
  return tp;
}

RealDerivatives hyperbolic_derivatives(const ReducedObservable& f, const HyperbolicPoint& hp) {
  const ReducedDerivatives d = f.derivatives(hp.reduced());
  const double tol = 1e-10 * std::max(scale_of(d.nabla1), scale_of(d.d2));
  if (!real_diagonal(d.nabla1, tol)) throw SymmetryViolated("hyperbolic slice: nabla1 is not real diagonal");
  if ((d.d2 - d.d2.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw SymmetryViolated("hyperbolic slice: d2 is not Hermitian");
  const Complex i(0.0, 1.0);
  return {d.nabla1, d.d2, i * d.nabla1, i * d.d2};
}

RealDerivatives trig_derivatives(const ReducedObservable& f, const TrigPoint& tp) {
  const ReducedDerivatives d = f.derivatives(tp.reduced());
  const Complex i(0.0, 1.0);
  const ComplexMatrix D1 = i * d.nabla1;
  const ComplexMatrix D2 = i * d.d2;
  const double tol = 1e-10 * std::max(scale_of(D1), scale_of(D2));
  if (!real_diagonal(D1, tol)) throw SymmetryViolated("trigonometric slice: D1 is not real diagonal");
  if ((D2 + D2.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw SymmetryViolated("trigonometric slice: D2 is not anti-Hermitian");
  return {d.nabla1, d.d2, D1, D2};
}

Complex hyp_pb(int i, const ReducedObservable& f, const ReducedObservable& h, const HyperbolicPoint& hp) {
  require_pb_index(i);
  (void)hyperbolic_derivatives(f, hp);
  (void)hyperbolic_derivatives(h, hp);
  const ReducedPoint rp = hp.reduced();
  return i == 1 ? reduced_pb1(f, h, rp) : reduced_pb2(f, h, rp);
}

Complex trig_pb(int i, const ReducedObservable& f, const ReducedObservable& h, const TrigPoint& tp) {
  require_pb_index(i);
  (void)trig_derivatives(f, tp);
  (void)trig_derivatives(h, tp);
  const ReducedPoint rp = tp.reduced();
  return i == 1 ? reduced_pb1(f, h, rp) : reduced_pb2(f, h, rp);
}

double hyp_pb_real_formula(int i, const ReducedObservable& f, const ReducedObservable& h, const HyperbolicPoint& hp) {
  require_pb_index(i);
  const RealDerivatives df = hyperbolic_derivatives(f, hp);
  const RealDerivatives dh = hyperbolic_derivatives(h, hp);
  const ReducedPoint rp = hp.reduced();
  const DynamicalR R(rp.Q);
  if (i == 1) {
    return re_pair(df.nabla1, dh.d2) - re_pair(dh.nabla1, df.d2) + re_pair(rp.L, R.bracket(df.d2, dh.d2));
  }
  const ComplexMatrix n2f = rp.L * df.d2;
  const ComplexMatrix n2h = rp.L * dh.d2;
  return re_pair(df.nabla1, n2h) - re_pair(dh.nabla1, n2f) + 2.0 * re_pair(n2f, R(n2h));
}

Complex trig_pb_imag_formula(int i, const ReducedObservable& f, const ReducedObservable& h, const TrigPoint& tp) {
  require_pb_index(i);
  const RealDerivatives df = trig_derivatives(f, tp);
  const RealDerivatives dh = trig_derivatives(h, tp);
  const ReducedPoint rp = tp.reduced();
  const DynamicalR R(rp.Q);
  const Complex minus_i(0.0, -1.0);
  if (i == 1) {
    return minus_i * (im_pair(df.D1, dh.D2) - im_pair(dh.D1, df.D2) + im_pair(rp.L, R.bracket(df.D2, dh.D2)));
  }
  const ComplexMatrix LD2f = rp.L * df.D2;
  const ComplexMatrix LD2h = rp.L * dh.D2;
  return minus_i * (im_pair(df.D1, LD2h) - im_pair(dh.D1, LD2f) + 2.0 * im_pair(LD2f, R(LD2h)));
}

double conjugation_identity_check(Slice slice, const ComplexMatrix& Q, const ComplexMatrix& X) {
  const DynamicalR R(Q);
  const ComplexMatrix lhs = R(X.adjoint());
  const ComplexMatrix rhs = R(X).adjoint();
  return slice == Slice::Hyperbolic ? (lhs + rhs).norm() : (lhs - rhs).norm();
}

Observable real_trace_word(std::string_view word, Slice slice) {
  Word w = parse_word(word);
  Word conj(w.rbegin(), w.rend());
  if (slice == Slice::Trigonometric) {
    for (Letter& l : conj) {
      if (l == Letter::G) l = Letter::GInv;
      else if (l == Letter::GInv) l = Letter::G;
    }
  }
  return Observable::trace_word(std::move(w), 0.5) + Observable::trace_word(std::move(conj), 0.5);
}

}  // namespace biham::realforms
