#pragma once

// The two unreduced brackets written once over any matrix type M for which
// trace_pairing, commutator, r_const, r_plus, r_minus and the ring operators
// are available. Instantiated with ComplexMatrix for numerics and with
// PolyMatrix for exact symbolic expansion.

#include "biham/observables.hpp"
#include "biham/rmatrix.hpp"

namespace biham {

template <class M>
auto pb1_formula(const BasicBundle<M>& F, const BasicBundle<M>& H, const M& L) {
  return trace_pairing(F.nabla1, H.d2) - trace_pairing(H.nabla1, F.d2) +
         trace_pairing(L, commutator(F.d2, H.d2));
}

/// r_+ nabla2' - r_- nabla2
template <class M>
M twisted_l_derivative(const BasicBundle<M>& F) {
  return r_plus(F.nabla2p) - r_minus(F.nabla2);
}

template <class M>
auto pb2_formula(const BasicBundle<M>& F, const BasicBundle<M>& H) {
  const M yF = twisted_l_derivative(F);
  const M yH = twisted_l_derivative(H);
  const M dF = F.nabla2 - F.nabla2p;
  return trace_pairing(r_const(F.nabla1), H.nabla1) - trace_pairing(r_const(F.nabla1p), H.nabla1p) +
         trace_pairing(dF, yH) + trace_pairing(F.nabla1, yH) - trace_pairing(H.nabla1, yF);
}

}  // namespace biham
