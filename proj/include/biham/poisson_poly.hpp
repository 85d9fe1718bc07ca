#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "biham/observables.hpp"
#include "biham/poly.hpp"

namespace biham::poisson {

enum class GenKind { G, L };

/// Coordinate function g_ij or L_ij (0-based indices).
struct Generator {
  GenKind kind;
  std::size_t i;
  std::size_t j;

  /// "g12", "L21" with 1-based indices.
  std::string name() const;
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Variable numbering: g_ij -> i n + j, L_ij -> n^2 + i n + j, then the pencil parameters x, y.
class Variables {
 public:
  explicit Variables(std::size_t n);
  std::size_t n() const { return n_; }
  std::size_t generator_count() const { return 2 * n_ * n_; }
  Poly::Var index(const Generator& a) const;
  Generator generator(Poly::Var v) const;
  bool is_generator(Poly::Var v) const { return v < generator_count(); }
  Poly::Var x() const { return static_cast<Poly::Var>(generator_count()); }
  Poly::Var y() const { return static_cast<Poly::Var>(generator_count() + 1); }
  std::string name(Poly::Var v) const;
  std::vector<Generator> generators() const;

 private:
  std::size_t n_;
};

enum class BracketChoice { PB1, PB2, Pencil };
std::string to_string(BracketChoice c);

/// Closed-form generator brackets; the pencil entry is x T1 + y T2 with symbolic x, y.
Poly gen_bracket(BracketChoice kind, const Generator& a, const Generator& b, std::size_t n);

class StructureTable {
 public:
  StructureTable(std::size_t n, BracketChoice kind);
  const Variables& variables() const { return vars_; }
  BracketChoice kind() const { return kind_; }
  const Poly& operator()(Poly::Var a, Poly::Var b) const;
  /// Overwrites {a, b} with value and {b, a} with -value.
  void set(Poly::Var a, Poly::Var b, const Poly& value);

 private:
  Variables vars_;
  BracketChoice kind_;
  std::vector<Poly> entries_;
};

/// Leibniz extension: sum over generators u, v of dP/du dQ/dv {u, v}.
Poly poly_bracket(const StructureTable& table, const Poly& P, const Poly& Q);

Poly jacobi_residual(const StructureTable& table, const Generator& a, const Generator& b, const Generator& c);

/// W = sum_k d/dL_kk
Poly w_derivation(const Variables& vars, const Poly& P);

/// W[{a,b}_2] - {W a, b}_2 - {a, W b}_2 - {a, b}_1
Poly w_identity_residual(const StructureTable& pb1, const StructureTable& pb2, const Generator& a,
                         const Generator& b);

/// Generator bracket obtained by expanding the invariant-free bracket formulas over
/// polynomial matrices g = (g_ij), L = (L_ij); independent of the closed-form table.
Poly symbolic_bracket(BracketChoice kind, const Generator& a, const Generator& b, std::size_t n);

/// Coordinate observable for a generator.
Observable generator_observable(const Generator& a);

/// Variable values (g entries, L entries, then x, y) for evaluation.
std::vector<std::complex<double>> point_values(const PhasePoint& p, std::complex<double> x = 0.0,
                                               std::complex<double> y = 0.0);

struct TripleResult {
  Generator a;
  Generator b;
  Generator c;
  Poly residual;
};

struct JacobiReport {
  BracketChoice kind;
  std::size_t n = 0;
  std::size_t triples = 0;
  std::size_t nonzero = 0;
  std::optional<std::uint64_t> subset_seed;
  std::vector<TripleResult> results;  ///< in sweep order
};

/// All ordered generator triples, or a seeded random subset of `subset` triples.
JacobiReport jacobi_sweep(std::size_t n, BracketChoice kind, unsigned threads = 0,
                          std::optional<std::size_t> subset = std::nullopt, std::uint64_t seed = 0);

/// One line per triple: "KIND a b c ZERO" or "KIND a b c <polynomial>".
void write_certificate(std::ostream& os, const JacobiReport& report);

}  // namespace biham::poisson
