#include "biham/brackets.hpp"

#include <cmath>
#include <stdexcept>

#include "biham/contour.hpp"

namespace biham {

Complex pb1(const DerivativeBundle& F, const DerivativeBundle& H, const ComplexMatrix& L) {
  return pb1_formula(F, H, L);
}

Complex pb1(const Observable& F, const Observable& H, const PhasePoint& p) {
  return pb1(F.derivatives(p), H.derivatives(p), p.L);
}

Complex pb2(const DerivativeBundle& F, const DerivativeBundle& H) { return pb2_formula(F, H); }

Complex pb2(const Observable& F, const Observable& H, const PhasePoint& p) {
  return pb2(F.derivatives(p), H.derivatives(p));
}

Complex pb2_invariant(const DerivativeBundle& F, const DerivativeBundle& H) {
  return 0.5 * (trace_pairing(F.nabla1, H.nabla2 + H.nabla2p) - trace_pairing(H.nabla1, F.nabla2 + F.nabla2p) +
                trace_pairing(F.nabla2, H.nabla2p) - trace_pairing(H.nabla2, F.nabla2p));
}

Complex pb2_invariant(const Observable& F, const Observable& H, const PhasePoint& p, bool check) {
  if (check) {
    const double scale = 1.0 + std::abs(F.evaluate(p)) + std::abs(H.evaluate(p));
    if (check_invariance(F, p, 4, 0xF1) > 1e-8 * scale || check_invariance(H, p, 4, 0xF2) > 1e-8 * scale)
      throw InvarianceViolated("pb2_invariant called with a non-invariant observable");
  }
  return pb2_invariant(F.derivatives(p), H.derivatives(p));
}

Complex lie_derivative_bracket(const Observable& F, const Observable& H, const PhasePoint& p) {
  if (!F.is_analytic() || !H.is_analytic())
    throw std::logic_error("lie_derivative_bracket needs analytic observables");
  const ComplexMatrix unit = identity(p.n());
  const auto along_orbit = [&](Complex z) { return pb2(F, H, PhasePoint{p.g, p.L + z * unit}); };
  const double radius = 0.5 * std::max(1.0, p.L.norm());
  const Complex w_of_bracket = contour_derivative(along_orbit, 0.0, radius);
  return w_of_bracket - pb2(F.w_derivative(), H, p) - pb2(F, H.w_derivative(), p);
}

Complex pencil(Complex x, Complex y, const Observable& F, const Observable& H, const PhasePoint& p) {
  const DerivativeBundle bF = F.derivatives(p);
  const DerivativeBundle bH = H.derivatives(p);
  return x * pb1(bF, bH, p.L) + y * pb2(bF, bH);
}

Complex bracket(const BracketKind& kind, const Observable& F, const Observable& H, const PhasePoint& p) {
  return std::visit(
      [&](const auto& k) -> Complex {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, PB1>) return pb1(F, H, p);
        else if constexpr (std::is_same_v<T, PB2>) return pb2(F, H, p);
        else if constexpr (std::is_same_v<T, PB2Invariant>) return pb2_invariant(F, H, p);
        else if constexpr (std::is_same_v<T, Pencil>) return pencil(k.x, k.y, F, H, p);
        else return lie_derivative_bracket(F, H, p);
      },
      kind);
}

}  // namespace biham
