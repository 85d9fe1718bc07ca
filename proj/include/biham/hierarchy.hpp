#pragma once

#include <vector>

#include "biham/observables.hpp"
#include "biham/reduction.hpp"

namespace biham {

/// Sign of the spin-interaction term when tr(L^2)/2 is written in canonical
/// variables: tr(L^2)/2 = sum p_j^2 / 2 + s/8 sum_{k!=l} phi_kl phi_lk / sinh^2((q_k - q_l)/2).
/// Fixed by direct numerical comparison against tr(L^2)/2 on random points:
/// (m + 1/2)(1/2 - m) = -1/(4 sinh^2) for m = coth/2, so s = -1.
inline constexpr int kSutherlandPotentialSign = -1;

/// tr(L^m) / m
Complex free_hamiltonian(int m, const ComplexMatrix& L);

/// (exp(z L^m) g, L)
PhasePoint exact_flow(const PhasePoint& p, int m, Complex z);

struct TrajectorySample {
  Complex z;
  ReducedPoint point;
  std::vector<Complex> invariants;  ///< tr(L^k), k = 1..n
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
};

/// tr(L^k) for k = 1..n
std::vector<Complex> spectral_invariants(const ComplexMatrix& L);

/// Fixed-step classical RK4 along the ray [0, z_end] for Qdot = (L^m)_0 Q,
/// Ldot = [R(Q) L^m, L]. Q is advanced through the diagonal logarithm
/// (Q = Q_k exp(u) within a step), which is exact for diagonal L. Throws NotRegular (message carries z) if a stage
/// leaves the regular set.
Trajectory integrate_reduced(const ReducedPoint& start, int m, Complex z_end, int steps,
                             double tol_reg = kDefaultTolReg);

/// Final point only; same scheme as integrate_reduced.
ReducedPoint flow_reduced(const ReducedPoint& start, int m, Complex z_end, int steps,
                          double tol_reg = kDefaultTolReg);

struct CanonicalSutherlandPoint {
  Eigen::VectorXcd q;
  Eigen::VectorXcd p;
  ComplexMatrix phi;  ///< zero diagonal
};

/// Q = exp(q), L = p + (R(Q) + 1/2)(phi)
ReducedPoint sutherland_embed(const CanonicalSutherlandPoint& c, double tol_reg = kDefaultTolReg);

/// tr(L(c)^2) / 2
Complex sutherland_hamiltonian(const CanonicalSutherlandPoint& c);

/// sum p^2/2 + s/8 sum_{k!=l} phi_kl phi_lk / sinh^2((q_k - q_l)/2), s = kSutherlandPotentialSign.
Complex sutherland_closed_form(const CanonicalSutherlandPoint& c, int sign = kSutherlandPotentialSign);

/// max over obs of |f(Phi_m1^z Phi_m2^z p) - f(Phi_m2^z Phi_m1^z p)|, flows integrated with `steps` steps each.
double flow_commutation(const ReducedPoint& start, int m1, int m2, Complex z,
                        const std::vector<Observable>& observables, int steps = 2000,
                        double tol_reg = kDefaultTolReg);

}  // namespace biham
