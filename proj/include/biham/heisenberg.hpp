#pragma once

#include <array>
#include <functional>

#include "biham/observables.hpp"
#include "biham/rmatrix.hpp"

namespace biham::heisenberg {

/// Element (X1, X2) of gl(n) + gl(n).
struct DoubleVector {
  ComplexMatrix first;
  ComplexMatrix second;

  DoubleVector operator+(const DoubleVector& o) const { return {first + o.first, second + o.second}; }
  DoubleVector operator-(const DoubleVector& o) const { return {first - o.first, second - o.second}; }
  friend DoubleVector operator*(Complex c, const DoubleVector& v) { return {c * v.first, c * v.second}; }
  double norm() const;
};

/// Element (g1, g2) of G x G.
struct DoubleElement {
  ComplexMatrix g1;
  ComplexMatrix g2;
};

/// The G* part (g_> g_0, (g_0 g_<)^-1) stored through its triangular factors.
struct StarFactors {
  ComplexMatrix upper;  ///< g_>, upper unipotent
  ComplexMatrix diag;   ///< g_0, invertible diagonal
  ComplexMatrix lower;  ///< g_<, lower unipotent

  ComplexMatrix gplus() const { return upper * diag; }
  ComplexMatrix gminus() const { return (diag * lower).inverse(); }
  /// g_> g_0^2 g_<
  ComplexMatrix L() const { return upper * diag * diag * lower; }
};

/// (g_delta, g_*) with g_delta = (g, g).
struct DeltaStarFactors {
  ComplexMatrix g;
  StarFactors star;
};

/// <X1, Y1> - <X2, Y2>
Complex pairing2(const DoubleVector& V, const DoubleVector& W);

/// Components along the diagonal subalgebra {(X, X)} and along {(r_+ X, r_- X)}.
DoubleVector project_delta(const DoubleVector& V);
DoubleVector project_star(const DoubleVector& V);
/// (P_delta - P_star) / 2
DoubleVector R_double(const DoubleVector& V);

/// (r_+ X, r_- X)
DoubleVector star_vector(const ComplexMatrix& X);

/// Principal square root of an invertible diagonal matrix; BranchCut on the negative real axis.
ComplexMatrix principal_sqrt_diagonal(const ComplexMatrix& D);

/// Right factors of (g1, g2) = g_{delta L} g_{*R}^-1 = g_{*L} g_{delta R}^-1:
/// g_{*R} comes from the first factorization (g1^-1 g2 = g_> g_0^2 g_<) and the
/// element g of g_{delta R} = (g, g) from the second (g1 g2^-1 = k_> k_0^2 k_<,
/// g = g1^-1 k_> k_0).
DeltaStarFactors factorize(const DoubleElement& d);

/// Inverse of factorize.
DoubleElement recompose(const DeltaStarFactors& f);

/// (g, g_> g_0^2 g_<)
PhasePoint to_cotangent(const DeltaStarFactors& f);

/// Holomorphic function on G x G.
using DoubleFunction = std::function<Complex(const DoubleElement&)>;

/// F o to_cotangent o factorize
DoubleFunction pullback(const Observable& F);

/// Left derivative (derivative under (e^{zX1} g1, e^{zX2} g2)) or right
/// derivative ((g1 e^{zX1}, g2 e^{zX2})) by central differences.
DoubleVector fd_double_derivative(const DoubleFunction& F, const DoubleElement& d, bool right, double h);

/// <DF, R DH>_2 +/- <D'F, R D'H>_2 with finite-difference derivatives.
Complex pb_double(int sign, const DoubleFunction& F, const DoubleFunction& H, const DoubleElement& d,
                  double h = 1e-5);

/// The plus bracket transferred to G^delta x G^* and then to G x gl, evaluated by
/// substituting the analytic derivative identities into the transferred formula.
Complex transferred_pb_plus(const Observable& F, const Observable& H, const DeltaStarFactors& f);

/// Residuals of the four derivative identities relating D_1, D_1', D_2, D_2'
/// (finite differences on G^delta x G^*) to the analytic bundle at (g, L):
/// {D_1, D_1', D_2, P_star(g_* D_2' g_*^-1)}.
std::array<double, 4> double_derivative_residuals(const Observable& F, const DeltaStarFactors& f, double h = 1e-5);

}  // namespace biham::heisenberg
