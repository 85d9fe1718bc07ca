#pragma once

#include <string_view>

#include "biham/reduction.hpp"

namespace biham::realforms {

enum class Slice { Hyperbolic, Trigonometric };

/// Q = exp(q) with real q, L Hermitian.
struct HyperbolicPoint {
  Eigen::VectorXd q;
  ComplexMatrix L;
  ReducedPoint reduced() const;
};

/// Q = exp(i q) with real q, L Hermitian.
struct TrigPoint {
  Eigen::VectorXd q;
  ComplexMatrix L;
  ReducedPoint reduced() const;
};

HyperbolicPoint make_hyperbolic_point(Eigen::VectorXd q, ComplexMatrix L);
TrigPoint make_trig_point(Eigen::VectorXd q, ComplexMatrix L);

/// Derivatives of a real function on a slice.
/// Hyperbolic: nabla1 real diagonal, d2 Hermitian.
/// Trigonometric: D1 real diagonal, D2 anti-Hermitian, with nabla1 = -i D1, d2 = -i D2.
struct RealDerivatives {
  ComplexMatrix nabla1;
  ComplexMatrix d2;
  ComplexMatrix D1;
  ComplexMatrix D2;
};

/// Throws SymmetryViolated if the symmetry classes fail to 1e-10 (relative).
RealDerivatives hyperbolic_derivatives(const ReducedObservable& f, const HyperbolicPoint& hp);
RealDerivatives trig_derivatives(const ReducedObservable& f, const TrigPoint& tp);

/// Holomorphic reduced bracket i in {1, 2} at a hyperbolic slice point,
/// after asserting the symmetry classes of both derivative sets. Real up to roundoff.
Complex hyp_pb(int i, const ReducedObservable& f, const ReducedObservable& h, const HyperbolicPoint& hp);

/// Same on the trigonometric slice. Purely imaginary up to roundoff.
Complex trig_pb(int i, const ReducedObservable& f, const ReducedObservable& h, const TrigPoint& tp);

/// Real-form bracket written with <X,Y>_R = Re tr(XY) and slice derivatives.
double hyp_pb_real_formula(int i, const ReducedObservable& f, const ReducedObservable& h, const HyperbolicPoint& hp);

/// Imaginary-form bracket: -i (...) with <X,Y>_I = Im tr(XY) and D1, D2.
Complex trig_pb_imag_formula(int i, const ReducedObservable& f, const ReducedObservable& h, const TrigPoint& tp);

/// Hyperbolic: || R(X^dag) + (R X)^dag ||; trigonometric: || R(X^dag) - (R X)^dag ||.
double conjugation_identity_check(Slice slice, const ComplexMatrix& Q, const ComplexMatrix& X);

/// (tr(w) + tr(w*)) / 2 where w* is the word whose trace is the complex
/// conjugate of tr(w) on the slice: reversal (hyperbolic) or reversal with
/// g <-> g^-1 (trigonometric). The result is real-valued on the slice.
Observable real_trace_word(std::string_view word, Slice slice);

}  // namespace biham::realforms
