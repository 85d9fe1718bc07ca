#include "biham/poisson_poly.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "biham/bracket_formulas.hpp"
#include "biham/random.hpp"

namespace biham::poisson {

std::string Generator::name() const {
  return std::string(kind == GenKind::G ? "g" : "L") + std::to_string(i + 1) + std::to_string(j + 1);
}

Variables::Variables(std::size_t n) : n_(n) {
  if (n < 2) throw std::invalid_argument("poisson-poly requires n >= 2");
}

Poly::Var Variables::index(const Generator& a) const {
  if (a.i >= n_ || a.j >= n_) throw std::out_of_range("generator index out of range");
  return static_cast<Poly::Var>((a.kind == GenKind::G ? 0 : n_ * n_) + a.i * n_ + a.j);
}

Generator Variables::generator(Poly::Var v) const {
  if (!is_generator(v)) throw std::out_of_range("not a generator variable");
  const std::size_t nn = n_ * n_;
  const GenKind k = v < nn ? GenKind::G : GenKind::L;
  const std::size_t r = v % nn;
  return {k, r / n_, r % n_};
}

std::string Variables::name(Poly::Var v) const {
  if (v == x()) return "x";
  if (v == y()) return "y";
  return generator(v).name();
}

std::vector<Generator> Variables::generators() const {
  std::vector<Generator> out;
  for (Poly::Var v = 0; v < generator_count(); ++v) out.push_back(generator(v));
  return out;
}

std::string to_string(BracketChoice c) {
  switch (c) {
    case BracketChoice::PB1: return "PB1";
    case BracketChoice::PB2: return "PB2";
    case BracketChoice::Pencil: return "PENCIL";
  }
  return "?";
}

namespace {

long sgn(long v) { return (v > 0) - (v < 0); }
long delta(std::size_t a, std::size_t b) { return a == b ? 1 : 0; }

Poly gvar(const Variables& V, std::size_t i, std::size_t j) { return Poly::var(V.index({GenKind::G, i, j})); }
Poly lvar(const Variables& V, std::size_t i, std::size_t j) { return Poly::var(V.index({GenKind::L, i, j})); }

const GaussRational kHalf = GaussRational::fraction(1, 2);

Poly pb1_closed(const Variables& V, const Generator& a, const Generator& b) {
  if (a.kind == GenKind::G && b.kind == GenKind::G) return Poly();
  if (a.kind == GenKind::L && b.kind == GenKind::G) return -pb1_closed(V, b, a);
  const auto [i, j] = std::pair{a.i, a.j};
  const auto [k, l] = std::pair{b.i, b.j};
  if (a.kind == GenKind::G) return GaussRational(delta(i, l)) * gvar(V, k, j);
  return GaussRational(delta(i, l)) * lvar(V, k, j) - GaussRational(delta(j, k)) * lvar(V, i, l);
}

Poly pb2_closed(const Variables& V, const Generator& a, const Generator& b) {
  const std::size_t n = V.n();
  if (a.kind == GenKind::L && b.kind == GenKind::G) return -pb2_closed(V, b, a);
  const auto [i, j] = std::pair{a.i, a.j};
  const auto [k, l] = std::pair{b.i, b.j};
  const long si = static_cast<long>(i), sj = static_cast<long>(j), sk = static_cast<long>(k),
             sl = static_cast<long>(l);
  if (a.kind == GenKind::G && b.kind == GenKind::G)
    return kHalf * GaussRational(sgn(si - sk) - sgn(sl - sj)) * (gvar(V, k, j) * gvar(V, i, l));
  if (a.kind == GenKind::G) {
    Poly out = kHalf * GaussRational(delta(i, k) + delta(i, l)) * (gvar(V, i, j) * lvar(V, k, l));
    if (i > k) out += gvar(V, k, j) * lvar(V, i, l);
    if (i == l)
      for (std::size_t r = i + 1; r < n; ++r) out += lvar(V, k, r) * gvar(V, r, j);
    return out;
  }
  Poly out = kHalf * GaussRational(sgn(si - sk) + sgn(sl - sj)) * (lvar(V, i, l) * lvar(V, k, j));
  out += kHalf * GaussRational(delta(i, l) - delta(j, k)) * (lvar(V, i, j) * lvar(V, k, l));
  if (i == l)
    for (std::size_t r = i + 1; r < n; ++r) out += lvar(V, k, r) * lvar(V, r, j);
  if (j == k)
    for (std::size_t r = k + 1; r < n; ++r) out -= lvar(V, i, r) * lvar(V, r, l);
  return out;
}

}  // namespace

Poly gen_bracket(BracketChoice kind, const Generator& a, const Generator& b, std::size_t n) {
  const Variables V(n);
  switch (kind) {
    case BracketChoice::PB1: return pb1_closed(V, a, b);
    case BracketChoice::PB2: return pb2_closed(V, a, b);
    case BracketChoice::Pencil:
      return Poly::var(V.x()) * pb1_closed(V, a, b) + Poly::var(V.y()) * pb2_closed(V, a, b);
  }
  return Poly();
}

StructureTable::StructureTable(std::size_t n, BracketChoice kind) : vars_(n), kind_(kind) {
  const std::size_t m = vars_.generator_count();
  entries_.resize(m * m);
  for (Poly::Var a = 0; a < m; ++a)
    for (Poly::Var b = 0; b < m; ++b)
      entries_[a * m + b] = gen_bracket(kind, vars_.generator(a), vars_.generator(b), n);
}

const Poly& StructureTable::operator()(Poly::Var a, Poly::Var b) const {
  const std::size_t m = vars_.generator_count();
  if (a >= m || b >= m) throw std::out_of_range("structure table index");
  return entries_[a * m + b];
}

void StructureTable::set(Poly::Var a, Poly::Var b, const Poly& value) {
  const std::size_t m = vars_.generator_count();
  if (a >= m || b >= m) throw std::out_of_range("structure table index");
  entries_[a * m + b] = value;
  entries_[b * m + a] = -value;
}

Poly poly_bracket(const StructureTable& table, const Poly& P, const Poly& Q) {
  const Variables& V = table.variables();
  std::vector<std::pair<Poly::Var, Poly>> dQ;
  for (Poly::Var v : Q.variables())
    if (V.is_generator(v)) dQ.emplace_back(v, Q.derivative(v));
  Poly out;
  for (Poly::Var u : P.variables()) {
    if (!V.is_generator(u)) continue;
    const Poly dP = P.derivative(u);
    for (const auto& [v, dq] : dQ) {
      const Poly& t = table(u, v);
      if (!t.is_zero()) out += dP * dq * t;
    }
  }
  return out;
}

Poly jacobi_residual(const StructureTable& table, const Generator& a, const Generator& b, const Generator& c) {
  const Variables& V = table.variables();
  const Poly A = Poly::var(V.index(a)), B = Poly::var(V.index(b)), C = Poly::var(V.index(c));
  const auto& T = table;
  return poly_bracket(T, A, T(V.index(b), V.index(c))) + poly_bracket(T, B, T(V.index(c), V.index(a))) +
         poly_bracket(T, C, T(V.index(a), V.index(b)));
}

Poly w_derivation(const Variables& vars, const Poly& P) {
  Poly out;
  for (std::size_t k = 0; k < vars.n(); ++k) out += P.derivative(vars.index({GenKind::L, k, k}));
  return out;
}

Poly w_identity_residual(const StructureTable& pb1, const StructureTable& pb2, const Generator& a,
                         const Generator& b) {
  if (pb1.kind() != BracketChoice::PB1 || pb2.kind() != BracketChoice::PB2)
    throw std::invalid_argument("w_identity_residual expects the PB1 and PB2 tables");
  const Variables& V = pb2.variables();
  const Poly A = Poly::var(V.index(a)), B = Poly::var(V.index(b));
  return w_derivation(V, pb2(V.index(a), V.index(b))) - poly_bracket(pb2, w_derivation(V, A), B) -
         poly_bracket(pb2, A, w_derivation(V, B)) - pb1(V.index(a), V.index(b));
}

namespace {

struct SymbolicPoint {
  PolyMatrix g;
  PolyMatrix L;
};

SymbolicPoint symbolic_point(const Variables& V) {
  const std::size_t n = V.n();
  SymbolicPoint s{PolyMatrix(n), PolyMatrix(n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      s.g(i, j) = gvar(V, i, j);
      s.L(i, j) = lvar(V, i, j);
    }
  return s;
}

BasicBundle<PolyMatrix> symbolic_bundle(const Generator& a, const SymbolicPoint& s) {
  const std::size_t n = s.g.size();
  const PolyMatrix zero(n);
  if (a.kind == GenKind::G) {
    const PolyMatrix E = PolyMatrix::elementary(n, a.j, a.i);
    return {s.g * E, E * s.g, zero, zero, zero};
  }
  const PolyMatrix E = PolyMatrix::elementary(n, a.j, a.i);
  return {zero, zero, E, s.L * E, E * s.L};
}

}  // namespace

Poly symbolic_bracket(BracketChoice kind, const Generator& a, const Generator& b, std::size_t n) {
  const Variables V(n);
  const SymbolicPoint s = symbolic_point(V);
  const auto Fa = symbolic_bundle(a, s);
  const auto Fb = symbolic_bundle(b, s);
  const Poly p1 = pb1_formula(Fa, Fb, s.L);
  switch (kind) {
    case BracketChoice::PB1: return p1;
    case BracketChoice::PB2: return pb2_formula(Fa, Fb);
    case BracketChoice::Pencil: return Poly::var(V.x()) * p1 + Poly::var(V.y()) * pb2_formula(Fa, Fb);
  }
  return Poly();
}

Observable generator_observable(const Generator& a) {
  return a.kind == GenKind::G ? Observable::g_entry(a.i, a.j) : Observable::l_entry(a.i, a.j);
}

std::vector<std::complex<double>> point_values(const PhasePoint& p, std::complex<double> x,
                                               std::complex<double> y) {
  const Variables V(p.n());
  std::vector<std::complex<double>> out(V.generator_count() + 2);
  for (std::size_t i = 0; i < V.n(); ++i)
    for (std::size_t j = 0; j < V.n(); ++j) {
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      out[V.index({GenKind::G, i, j})] = p.g(ii, jj);
      out[V.index({GenKind::L, i, j})] = p.L(ii, jj);
    }
  out[V.x()] = x;
  out[V.y()] = y;
  return out;
}

JacobiReport jacobi_sweep(std::size_t n, BracketChoice kind, unsigned threads, std::optional<std::size_t> subset,
                          std::uint64_t seed) {
  const StructureTable table(n, kind);
  const std::size_t m = table.variables().generator_count();
  std::vector<std::array<Poly::Var, 3>> triples;
  if (subset) {
    Sampler s(seed, 0x6a61636f6269ULL);
    for (std::size_t t = 0; t < *subset; ++t) {
      std::array<Poly::Var, 3> tr{};
      for (auto& v : tr) v = static_cast<Poly::Var>(s.next() % m);
      triples.push_back(tr);
    }
  } else {
    for (Poly::Var a = 0; a < m; ++a)
      for (Poly::Var b = 0; b < m; ++b)
        for (Poly::Var c = 0; c < m; ++c) triples.push_back({a, b, c});
  }

  JacobiReport report{kind, n, triples.size(), 0, subset ? std::optional<std::uint64_t>(seed) : std::nullopt, {}};
  report.results.resize(triples.size());
  const Variables& V = table.variables();
  const auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t t = begin; t < triples.size(); t += step) {
      const Generator a = V.generator(triples[t][0]), b = V.generator(triples[t][1]), c = V.generator(triples[t][2]);
      report.results[t] = {a, b, c, jacobi_residual(table, a, b, c)};
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w, threads);
  work(0, threads);
  for (auto& th : pool) th.join();
  for (const auto& r : report.results)
    if (!r.residual.is_zero()) ++report.nonzero;
  return report;
}

void write_certificate(std::ostream& os, const JacobiReport& report) {
  const Variables V(report.n);
  const auto namer = [&](Poly::Var v) { return V.name(v); };
  for (const auto& r : report.results) {
    os << to_string(report.kind) << ' ' << r.a.name() << ' ' << r.b.name() << ' ' << r.c.name() << ' '
       << (r.residual.is_zero() ? std::string("ZERO") : r.residual.to_string(namer)) << '\n';
  }
}

}  // namespace biham::poisson
