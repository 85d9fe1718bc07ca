#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "biham/exact.hpp"

namespace biham {

/// Sparse multivariate polynomial with Gaussian-rational coefficients.
/// Variables are plain indices; a monomial is a sorted list of (variable, exponent).
class Poly {
 public:
  using Var = std::uint32_t;
  using Monomial = std::vector<std::pair<Var, std::uint32_t>>;
  using Terms = std::map<Monomial, GaussRational>;

  Poly() = default;
  Poly(long c) : Poly(GaussRational(c)) {}
  Poly(const GaussRational& c);
  static Poly var(Var v);
  static Poly monomial(Monomial m, GaussRational c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::uint32_t degree() const;
  /// Variables occurring in some term, ascending.
  std::vector<Var> variables() const;

  Poly derivative(Var v) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const;
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const GaussRational& c, const Poly& p);
  friend bool operator==(const Poly& a, const Poly& b);

  GaussRational evaluate(const std::vector<GaussRational>& values) const;
  std::complex<double> evaluate(const std::vector<std::complex<double>>& values) const;

  std::string to_string(const std::function<std::string(Var)>& name) const;

 private:
  void add_term(const Monomial& m, const GaussRational& c);
  Terms terms_;
};

/// Square matrix with Poly entries, exposing the operations used by the bracket formulas.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  explicit PolyMatrix(std::size_t n) : n_(n), entries_(n * n) {}
  static PolyMatrix elementary(std::size_t n, std::size_t i, std::size_t j);

  std::size_t size() const { return n_; }
  Poly& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  PolyMatrix& operator+=(const PolyMatrix& o);
  PolyMatrix& operator-=(const PolyMatrix& o);
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const GaussRational& c, const PolyMatrix& a);

 private:
  std::size_t n_ = 0;
  std::vector<Poly> entries_;
};

Poly trace_pairing(const PolyMatrix& X, const PolyMatrix& Y);
PolyMatrix commutator(const PolyMatrix& X, const PolyMatrix& Y);
PolyMatrix r_const(const PolyMatrix& X);
PolyMatrix r_plus(const PolyMatrix& X);
PolyMatrix r_minus(const PolyMatrix& X);

}  // namespace biham
