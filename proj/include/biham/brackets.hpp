#pragma once

#include <variant>

#include "biham/bracket_formulas.hpp"
#include "biham/observables.hpp"
#include "biham/rmatrix.hpp"

namespace biham {

/// Canonical cotangent bracket.
Complex pb1(const Observable& F, const Observable& H, const PhasePoint& p);
Complex pb1(const DerivativeBundle& F, const DerivativeBundle& H, const ComplexMatrix& L);

/// Second bracket, full r-matrix formula.
Complex pb2(const Observable& F, const Observable& H, const PhasePoint& p);
Complex pb2(const DerivativeBundle& F, const DerivativeBundle& H);

/// Second bracket specialised to conjugation-invariant functions (r drops out).
/// With check_invariance set, both inputs are tested numerically first and
/// InvarianceViolated is thrown if either fails.
Complex pb2_invariant(const Observable& F, const Observable& H, const PhasePoint& p,
                      bool check_invariance = false);
Complex pb2_invariant(const DerivativeBundle& F, const DerivativeBundle& H);

/// W[{F,H}_2] - {W[F],H}_2 - {F,W[H]}_2 for W the generator of L -> L + z 1.
/// W[F] uses the analytic slot rule; W[{F,H}_2] is a contour derivative along
/// the W orbit, exact for the polynomial dependence on L of the built-in family.
Complex lie_derivative_bracket(const Observable& F, const Observable& H, const PhasePoint& p);

/// x * pb1 + y * pb2
Complex pencil(Complex x, Complex y, const Observable& F, const Observable& H, const PhasePoint& p);

struct PB1 {};
struct PB2 {};
struct PB2Invariant {};
struct Pencil {
  Complex x;
  Complex y;
};
struct LieDerivativeW {};
using BracketKind = std::variant<PB1, PB2, PB2Invariant, Pencil, LieDerivativeW>;

Complex bracket(const BracketKind& kind, const Observable& F, const Observable& H, const PhasePoint& p);

}  // namespace biham
