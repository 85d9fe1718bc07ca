#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "biham/linalg.hpp"

namespace biham {

/// A point (g, L) of G x gl(n, C).
struct PhasePoint {
  ComplexMatrix g;
  ComplexMatrix L;

  std::size_t n() const { return static_cast<std::size_t>(g.rows()); }
};

/// Validates sizes, n >= 2 and |det g| > 1e-12.
PhasePoint make_phase_point(ComplexMatrix g, ComplexMatrix L);

/// Values of the Lie-algebra valued derivatives of a function at one point.
/// nabla2 = L d2 and nabla2p = d2 L are filled in at construction.
template <class M>
struct BasicBundle {
  M nabla1;
  M nabla1p;
  M d2;
  M nabla2;
  M nabla2p;
};

using DerivativeBundle = BasicBundle<ComplexMatrix>;

DerivativeBundle make_bundle(ComplexMatrix nabla1, ComplexMatrix nabla1p, ComplexMatrix d2,
                             const ComplexMatrix& L);

enum class Letter : char { G = 'g', GInv = 'G', L = 'l' };
using Word = std::vector<Letter>;

/// "glGl" -> {G, L, GInv, L}; throws std::invalid_argument on other characters.
Word parse_word(std::string_view text);
std::string word_to_string(const Word& word);

/// Functions on phase space: coordinates, trace words, constants, and their
/// sums and products, all with exact analytic derivatives. Opaque closures are
/// allowed too, but only support evaluation and finite differences.
class Observable {
 public:
  struct Node;

  static Observable constant(Complex value);
  /// g_ij, 0-based indices.
  static Observable g_entry(std::size_t i, std::size_t j);
  /// L_kl = <e_lk, L>, 0-based indices.
  static Observable l_entry(std::size_t k, std::size_t l);
  static Observable trace_word(Word word, Complex coefficient = 1.0);
  static Observable trace_word(std::string_view word, Complex coefficient = 1.0);
  static Observable closure(std::function<Complex(const PhasePoint&)> fn, std::string name,
                            bool invariant);

  Complex evaluate(const PhasePoint& p) const;
  /// Throws std::logic_error for observables containing closures.
  DerivativeBundle derivatives(const PhasePoint& p) const;
  /// Derivative along the vector field (g, L) -> (g, L + z 1).
  Observable w_derivative() const;

  /// Structural invariance under simultaneous conjugation of g and L.
  bool is_invariant() const;
  bool is_analytic() const;
  std::string to_string() const;

  friend Observable operator+(const Observable& a, const Observable& b);
  friend Observable operator-(const Observable& a, const Observable& b);
  friend Observable operator*(const Observable& a, const Observable& b);
  friend Observable operator*(Complex c, const Observable& a);

 private:
  friend struct ObservableAccess;
  explicit Observable(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// H_m = tr(L^m) / m as an observable.
Observable free_hamiltonian_observable(int m);

/// Trace words used across the test suites.
const std::vector<std::string>& builtin_invariant_words();
/// The invariant words plus linear combinations and products of them.
std::vector<Observable> builtin_invariants();
/// Coordinates g_ij, L_kl, the invariants, and mixed products.
std::vector<Observable> builtin_observables(std::size_t n);

Complex evaluate(const Observable& F, const PhasePoint& p);
DerivativeBundle analytic_derivatives(const Observable& F, const PhasePoint& p);

/// 1e-5 * (1 + max(||g||_F, ||L||_F)).
double default_fd_step(const PhasePoint& p);

/// Central differences along all elementary directions; works for any observable.
DerivativeBundle fd_derivatives(const Observable& F, const PhasePoint& p, double h);

/// max |F(eta g eta^-1, eta L eta^-1) - F(g, L)| over random eta near 1.
double check_invariance(const Observable& F, const PhasePoint& p, int trials, std::uint64_t seed);

/// || nabla1p - (nabla1 + nabla2 - nabla2p) ||_F
double invariant_identity_check(const Observable& F, const PhasePoint& p);

/// Frobenius distance between two bundles (all five components).
double bundle_distance(const DerivativeBundle& a, const DerivativeBundle& b);
double bundle_norm(const DerivativeBundle& a);

}  // namespace biham
