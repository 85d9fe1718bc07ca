#include "biham/observables.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <optional>
#include <variant>

#include "biham/random.hpp"

namespace biham {

PhasePoint make_phase_point(ComplexMatrix g, ComplexMatrix L) {
  require_same_size(g, L);
  if (g.rows() < 2) throw SizeMismatch("phase point requires n >= 2");
  if (!all_finite(g) || !all_finite(L)) throw DomainError("phase point has non-finite entries");
  if (std::abs(g.determinant()) <= 1e-12) throw NotInvertible("phase point: |det g| <= 1e-12");
  return {std::move(g), std::move(L)};
}

DerivativeBundle make_bundle(ComplexMatrix nabla1, ComplexMatrix nabla1p, ComplexMatrix d2,
                             const ComplexMatrix& L) {
  ComplexMatrix n2 = L * d2;
  ComplexMatrix n2p = d2 * L;
  return {std::move(nabla1), std::move(nabla1p), std::move(d2), std::move(n2), std::move(n2p)};
}

Word parse_word(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'g': w.push_back(Letter::G); break;
      case 'G': w.push_back(Letter::GInv); break;
      case 'l': w.push_back(Letter::L); break;
      default: throw std::invalid_argument(std::string("trace word: unexpected letter '") + c + "'");
    }
  }
  return w;
}

std::string word_to_string(const Word& word) {
  std::string s;
  for (Letter l : word) s.push_back(static_cast<char>(l));
  return s;
}

namespace {

struct ConstantNode {
  Complex value;
};
/// c * tr(1) = c * n, the one constant whose value depends on the point size.
struct DimensionNode {
  Complex coefficient;
};
struct GEntryNode {
  std::size_t i, j;
};
struct LEntryNode {
  std::size_t k, l;
};
struct TraceWordNode {
  Word word;
  Complex coefficient;
};
struct SumNode {
  std::vector<std::pair<Complex, Observable>> terms;
};
struct ProductNode {
  std::vector<Observable> factors;
};
struct ClosureNode {
  std::function<Complex(const PhasePoint&)> fn;
  std::string name;
  bool invariant;
};

/// Point data shared by all nodes of one evaluation; g^-1 is computed on demand.
class PointCache {
 public:
  explicit PointCache(const PhasePoint& p) : p_(p) {}
  const PhasePoint& point() const { return p_; }
  const ComplexMatrix& ginv() const {
    if (!ginv_) {
      if (std::abs(p_.g.determinant()) <= 1e-12) throw NotInvertible("observable needs g^-1 of a singular g");
      ginv_ = p_.g.inverse();
    }
    return *ginv_;
  }
  const ComplexMatrix& letter(Letter l) const {
    switch (l) {
      case Letter::G: return p_.g;
      case Letter::GInv: return ginv();
      case Letter::L: return p_.L;
    }
    return p_.L;
  }

 private:
  const PhasePoint& p_;
  mutable std::optional<ComplexMatrix> ginv_;
};

void check_index(std::size_t i, std::size_t j, std::size_t n) {
  if (i >= n || j >= n) throw std::out_of_range("observable index out of range for this point");
}

}  // namespace

struct Observable::Node {
  std::variant<ConstantNode, DimensionNode, GEntryNode, LEntryNode, TraceWordNode, SumNode, ProductNode, ClosureNode> data;
};

namespace {

using NodePtr = std::shared_ptr<const Observable::Node>;

Complex eval_node(const Observable::Node& node, const PointCache& pc);
struct Deriv {
  ComplexMatrix nabla1, nabla1p, d2;
};
Deriv deriv_node(const Observable::Node& node, const PointCache& pc);

}  // namespace

// Observable internals need the private node pointer; route through a helper.
struct ObservableAccess {
  static const Observable::Node& node(const Observable& o) { return *o.node_; }
  static Observable make(Observable::Node node) {
    return Observable(std::make_shared<const Observable::Node>(std::move(node)));
  }
};

namespace {

Complex eval_node(const Observable::Node& node, const PointCache& pc) {
  const PhasePoint& p = pc.point();
  return std::visit(
      [&](const auto& d) -> Complex {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ConstantNode>) {
          return d.value;
        } else if constexpr (std::is_same_v<T, DimensionNode>) {
          return d.coefficient * static_cast<double>(p.n());
        } else if constexpr (std::is_same_v<T, GEntryNode>) {
          check_index(d.i, d.j, p.n());
          return p.g(static_cast<Eigen::Index>(d.i), static_cast<Eigen::Index>(d.j));
        } else if constexpr (std::is_same_v<T, LEntryNode>) {
          check_index(d.k, d.l, p.n());
          return p.L(static_cast<Eigen::Index>(d.k), static_cast<Eigen::Index>(d.l));
        } else if constexpr (std::is_same_v<T, TraceWordNode>) {
          ComplexMatrix prod = identity(p.n());
          for (Letter l : d.word) prod = prod * pc.letter(l);
          return d.coefficient * prod.trace();
        } else if constexpr (std::is_same_v<T, SumNode>) {
          Complex s = 0.0;
          for (const auto& [c, o] : d.terms) s += c * eval_node(ObservableAccess::node(o), pc);
          return s;
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          Complex s = 1.0;
          for (const auto& o : d.factors) s *= eval_node(ObservableAccess::node(o), pc);
          return s;
        } else {
          return d.fn(p);
        }
      },
      node.data);
}

Deriv deriv_node(const Observable::Node& node, const PointCache& pc) {
  const PhasePoint& p = pc.point();
  const std::size_t n = p.n();
  return std::visit(
      [&](const auto& d) -> Deriv {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ConstantNode> || std::is_same_v<T, DimensionNode>) {
          return {zeros(n), zeros(n), zeros(n)};
        } else if constexpr (std::is_same_v<T, GEntryNode>) {
          check_index(d.i, d.j, n);
          const ComplexMatrix e = elementary(n, d.j, d.i);
          return {p.g * e, e * p.g, zeros(n)};
        } else if constexpr (std::is_same_v<T, LEntryNode>) {
          check_index(d.k, d.l, n);
          return {zeros(n), zeros(n), elementary(n, d.l, d.k)};
        } else if constexpr (std::is_same_v<T, TraceWordNode>) {
          // With M_1...M_k the letters, P_s = M_{s+1}...M_k M_1...M_{s-1} is the
          // cyclic remainder of slot s; each slot contributes through P_s.
          const std::size_t k = d.word.size();
          std::vector<ComplexMatrix> prefix(k + 1), suffix(k + 1);
          prefix[0] = identity(n);
          for (std::size_t s = 0; s < k; ++s) prefix[s + 1] = prefix[s] * pc.letter(d.word[s]);
          suffix[k] = identity(n);
          for (std::size_t s = k; s-- > 0;) suffix[s] = pc.letter(d.word[s]) * suffix[s + 1];
          Deriv out{zeros(n), zeros(n), zeros(n)};
          for (std::size_t s = 0; s < k; ++s) {
            const ComplexMatrix rest = suffix[s + 1] * prefix[s];
            switch (d.word[s]) {
              case Letter::L: out.d2 += rest; break;
              case Letter::G:
                out.nabla1 += p.g * rest;
                out.nabla1p += rest * p.g;
                break;
              case Letter::GInv:
                out.nabla1 -= rest * pc.ginv();
                out.nabla1p -= pc.ginv() * rest;
                break;
            }
          }
          out.nabla1 *= d.coefficient;
          out.nabla1p *= d.coefficient;
          out.d2 *= d.coefficient;
          return out;
        } else if constexpr (std::is_same_v<T, SumNode>) {
          Deriv out{zeros(n), zeros(n), zeros(n)};
          for (const auto& [c, o] : d.terms) {
            const Deriv t = deriv_node(ObservableAccess::node(o), pc);
            out.nabla1 += c * t.nabla1;
            out.nabla1p += c * t.nabla1p;
            out.d2 += c * t.d2;
          }
          return out;
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          const std::size_t m = d.factors.size();
          std::vector<Complex> values(m);
          for (std::size_t i = 0; i < m; ++i) values[i] = eval_node(ObservableAccess::node(d.factors[i]), pc);
          Deriv out{zeros(n), zeros(n), zeros(n)};
          for (std::size_t i = 0; i < m; ++i) {
            Complex others = 1.0;
            for (std::size_t j = 0; j < m; ++j)
              if (j != i) others *= values[j];
            if (others == 0.0) continue;
            const Deriv t = deriv_node(ObservableAccess::node(d.factors[i]), pc);
            out.nabla1 += others * t.nabla1;
            out.nabla1p += others * t.nabla1p;
            out.d2 += others * t.d2;
          }
          return out;
        } else {
          throw std::logic_error("analytic derivatives are not available for closure observable '" + d.name +
                                 "'; use fd_derivatives");
        }
      },
      node.data);
}

}  // namespace

Observable Observable::constant(Complex value) { return ObservableAccess::make({ConstantNode{value}}); }

Observable Observable::g_entry(std::size_t i, std::size_t j) { return ObservableAccess::make({GEntryNode{i, j}}); }

Observable Observable::l_entry(std::size_t k, std::size_t l) { return ObservableAccess::make({LEntryNode{k, l}}); }

Observable Observable::trace_word(Word word, Complex coefficient) {
  if (word.empty()) throw std::invalid_argument("trace word must be nonempty");
  return ObservableAccess::make({TraceWordNode{std::move(word), coefficient}});
}

Observable Observable::trace_word(std::string_view word, Complex coefficient) {
  return trace_word(parse_word(word), coefficient);
}

Observable Observable::closure(std::function<Complex(const PhasePoint&)> fn, std::string name, bool invariant) {
  return ObservableAccess::make({ClosureNode{std::move(fn), std::move(name), invariant}});
}

Complex Observable::evaluate(const PhasePoint& p) const {
  PointCache pc(p);
  return eval_node(*node_, pc);
}

DerivativeBundle Observable::derivatives(const PhasePoint& p) const {
  PointCache pc(p);
  Deriv d = deriv_node(*node_, pc);
  return make_bundle(std::move(d.nabla1), std::move(d.nabla1p), std::move(d.d2), p.L);
}

Observable Observable::w_derivative() const {
  return std::visit(
      [&](const auto& d) -> Observable {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ConstantNode> || std::is_same_v<T, DimensionNode> ||
                      std::is_same_v<T, GEntryNode>) {
          return constant(0.0);
        } else if constexpr (std::is_same_v<T, LEntryNode>) {
          return constant(d.k == d.l ? 1.0 : 0.0);
        } else if constexpr (std::is_same_v<T, TraceWordNode>) {
          // Replacing one L slot by the unit matrix deletes that letter.
          std::vector<std::pair<Complex, Observable>> terms;
          Complex constant_part = 0.0;
          bool has_constant = false;
          for (std::size_t s = 0; s < d.word.size(); ++s) {
            if (d.word[s] != Letter::L) continue;
            Word rest = d.word;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(s));
            if (rest.empty()) {
              // tr(1) depends on n, which is only known at evaluation time.
              has_constant = true;
              constant_part += d.coefficient;
            } else {
              terms.emplace_back(d.coefficient, trace_word(std::move(rest)));
            }
          }
          if (has_constant) terms.emplace_back(1.0, ObservableAccess::make({DimensionNode{constant_part}}));
          if (terms.empty()) return constant(0.0);
          return ObservableAccess::make({SumNode{std::move(terms)}});
        } else if constexpr (std::is_same_v<T, SumNode>) {
          std::vector<std::pair<Complex, Observable>> terms;
          for (const auto& [c, o] : d.terms) terms.emplace_back(c, o.w_derivative());
          return ObservableAccess::make({SumNode{std::move(terms)}});
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          std::vector<std::pair<Complex, Observable>> terms;
          for (std::size_t i = 0; i < d.factors.size(); ++i) {
            std::vector<Observable> f = d.factors;
            f[i] = d.factors[i].w_derivative();
            terms.emplace_back(1.0, ObservableAccess::make({ProductNode{std::move(f)}}));
          }
          return ObservableAccess::make({SumNode{std::move(terms)}});
        } else {
          throw std::logic_error("w_derivative is not available for closure observable '" + d.name + "'");
        }
      },
      node_->data);
}

bool Observable::is_invariant() const {
  return std::visit(
      [](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ConstantNode> || std::is_same_v<T, DimensionNode> ||
                      std::is_same_v<T, TraceWordNode>) {
          return true;
        } else if constexpr (std::is_same_v<T, GEntryNode> || std::is_same_v<T, LEntryNode>) {
          return false;
        } else if constexpr (std::is_same_v<T, SumNode>) {
          for (const auto& [c, o] : d.terms)
            if (c != 0.0 && !o.is_invariant()) return false;
          return true;
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          for (const auto& o : d.factors)
            if (!o.is_invariant()) return false;
          return true;
        } else {
          return d.invariant;
        }
      },
      node_->data);
}

bool Observable::is_analytic() const {
  return std::visit(
      [](const auto& d) -> bool {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, SumNode>) {
          for (const auto& [c, o] : d.terms)
            if (!o.is_analytic()) return false;
          return true;
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          for (const auto& o : d.factors)
            if (!o.is_analytic()) return false;
          return true;
        } else {
          return !std::is_same_v<T, ClosureNode>;
        }
      },
      node_->data);
}

std::string Observable::to_string() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ConstantNode>) {
          os << d.value;
        } else if constexpr (std::is_same_v<T, DimensionNode>) {
          os << d.coefficient << "*tr(1)";
        } else if constexpr (std::is_same_v<T, GEntryNode>) {
          os << "g(" << d.i + 1 << "," << d.j + 1 << ")";
        } else if constexpr (std::is_same_v<T, LEntryNode>) {
          os << "L(" << d.k + 1 << "," << d.l + 1 << ")";
        } else if constexpr (std::is_same_v<T, TraceWordNode>) {
          if (d.coefficient != 1.0) os << d.coefficient << "*";
          os << "tr(" << word_to_string(d.word) << ")";
        } else if constexpr (std::is_same_v<T, SumNode>) {
          os << "(";
          for (std::size_t i = 0; i < d.terms.size(); ++i) {
            if (i) os << " + ";
            if (d.terms[i].first != 1.0) os << d.terms[i].first << "*";
            os << d.terms[i].second.to_string();
          }
          os << ")";
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          for (std::size_t i = 0; i < d.factors.size(); ++i) {
            if (i) os << "*";
            os << d.factors[i].to_string();
          }
        } else {
          os << d.name;
        }
      },
      node_->data);
  return os.str();
}

Observable operator+(const Observable& a, const Observable& b) {
  return ObservableAccess::make({SumNode{{{1.0, a}, {1.0, b}}}});
}

Observable operator-(const Observable& a, const Observable& b) {
  return ObservableAccess::make({SumNode{{{1.0, a}, {-1.0, b}}}});
}

Observable operator*(const Observable& a, const Observable& b) {
  return ObservableAccess::make({ProductNode{{a, b}}});
}

Observable operator*(Complex c, const Observable& a) { return ObservableAccess::make({SumNode{{{c, a}}}}); }

Observable free_hamiltonian_observable(int m) {
  if (m < 1) throw std::invalid_argument("free Hamiltonian index must be >= 1");
  return Observable::trace_word(Word(static_cast<std::size_t>(m), Letter::L), 1.0 / m);
}

const std::vector<std::string>& builtin_invariant_words() {
  static const std::vector<std::string> words{"l", "ll", "lll", "g", "G", "gl", "gll", "Gl", "glGl", "ggl", "glgl", "gGl"};
  return words;
}

std::vector<Observable> builtin_invariants() {
  std::vector<Observable> out;
  for (const auto& w : builtin_invariant_words()) out.push_back(Observable::trace_word(w));
  out.push_back(Complex(0.5, -1.0) * Observable::trace_word("gl") + Observable::trace_word("lll", 0.25));
  out.push_back(Observable::trace_word("g") * Observable::trace_word("ll"));
  out.push_back(Observable::trace_word("Gl") * Observable::trace_word("gl") - Observable::trace_word("l"));
  return out;
}

std::vector<Observable> builtin_observables(std::size_t n) {
  std::vector<Observable> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.push_back(Observable::g_entry(i, j));
      out.push_back(Observable::l_entry(i, j));
    }
  }
  for (auto& F : builtin_invariants()) out.push_back(std::move(F));
  out.push_back(Observable::g_entry(0, 1) * Observable::l_entry(1, 0));
  out.push_back(Observable::g_entry(1, 1) * Observable::trace_word("gl") + Observable::l_entry(0, 0));
  return out;
}

Complex evaluate(const Observable& F, const PhasePoint& p) { return F.evaluate(p); }

DerivativeBundle analytic_derivatives(const Observable& F, const PhasePoint& p) { return F.derivatives(p); }

double default_fd_step(const PhasePoint& p) { return 1e-5 * (1.0 + std::max(p.g.norm(), p.L.norm())); }

DerivativeBundle fd_derivatives(const Observable& F, const PhasePoint& p, double h) {
  if (!(h > 0.0 && h <= 1e-2)) throw std::invalid_argument("fd step must lie in (0, 1e-2]");
  const std::size_t n = p.n();
  ComplexMatrix n1 = zeros(n), n1p = zeros(n), d2 = zeros(n);
  const auto val = [&](const ComplexMatrix& g, const ComplexMatrix& L) { return F.evaluate(PhasePoint{g, L}); };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const ComplexMatrix T = elementary(n, a, b);
      const ComplexMatrix ep = mat_exp(h * T);
      const ComplexMatrix em = mat_exp(-h * T);
      // <D, e_ab> = D_ba
      const auto ia = static_cast<Eigen::Index>(a), ib = static_cast<Eigen::Index>(b);
      n1(ib, ia) = (val(ep * p.g, p.L) - val(em * p.g, p.L)) / (2.0 * h);
      n1p(ib, ia) = (val(p.g * ep, p.L) - val(p.g * em, p.L)) / (2.0 * h);
      d2(ib, ia) = (val(p.g, p.L + h * T) - val(p.g, p.L - h * T)) / (2.0 * h);
    }
  }
  return make_bundle(std::move(n1), std::move(n1p), std::move(d2), p.L);
}

double check_invariance(const Observable& F, const PhasePoint& p, int trials, std::uint64_t seed) {
  const Complex base = F.evaluate(p);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Sampler s(seed, static_cast<std::uint64_t>(t));
    const ComplexMatrix eta = s.near_identity(p.n(), 0.5);
    const ComplexMatrix etainv = eta.inverse();
    const PhasePoint q{eta * p.g * etainv, eta * p.L * etainv};
    worst = std::max(worst, std::abs(F.evaluate(q) - base));
  }
  return worst;
}

double invariant_identity_check(const Observable& F, const PhasePoint& p) {
  const DerivativeBundle b = F.derivatives(p);
  return (b.nabla1p - (b.nabla1 + b.nabla2 - b.nabla2p)).norm();
}

double bundle_distance(const DerivativeBundle& a, const DerivativeBundle& b) {
  return std::sqrt((a.nabla1 - b.nabla1).squaredNorm() + (a.nabla1p - b.nabla1p).squaredNorm() +
                   (a.d2 - b.d2).squaredNorm() + (a.nabla2 - b.nabla2).squaredNorm() +
                   (a.nabla2p - b.nabla2p).squaredNorm());
}

double bundle_norm(const DerivativeBundle& a) {
  return std::sqrt(a.nabla1.squaredNorm() + a.nabla1p.squaredNorm() + a.d2.squaredNorm() +
                   a.nabla2.squaredNorm() + a.nabla2p.squaredNorm());
}

}  // namespace biham
