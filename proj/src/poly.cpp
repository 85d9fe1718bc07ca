#include "biham/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace biham {

Poly::Poly(const GaussRational& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Poly Poly::var(Var v) { return monomial({{v, 1}}, GaussRational(1)); }

Poly Poly::monomial(Monomial m, GaussRational c) {
  std::sort(m.begin(), m.end());
  Monomial merged;
  for (const auto& [v, e] : m) {
    if (e == 0) continue;
    if (!merged.empty() && merged.back().first == v)
      merged.back().second += e;
    else
      merged.emplace_back(v, e);
  }
  Poly p;
  p.add_term(merged, c);
  return p;
}

std::uint32_t Poly::degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) {
    std::uint32_t s = 0;
    for (const auto& ve : m) s += ve.second;
    d = std::max(d, s);
  }
  return d;
}

std::vector<Poly::Var> Poly::variables() const {
  std::vector<Var> out;
  for (const auto& [m, c] : terms_)
    for (const auto& ve : m) out.push_back(ve.first);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void Poly::add_term(const Monomial& m, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Poly Poly::derivative(Var v) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    auto it = std::find_if(m.begin(), m.end(), [v](const auto& ve) { return ve.first == v; });
    if (it == m.end()) continue;
    Monomial dm = m;
    auto& e = dm[static_cast<std::size_t>(it - m.begin())];
    const long k = e.second;
    if (--e.second == 0) dm.erase(dm.begin() + (it - m.begin()));
    out.add_term(dm, c * GaussRational(k));
  }
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator-() const {
  Poly out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

namespace {

Poly::Monomial multiply(const Poly::Monomial& a, const Poly::Monomial& b) {
  Poly::Monomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin(), j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
  return out;
}

Poly operator*(const GaussRational& c, const Poly& p) {
  Poly out;
  if (c.is_zero()) return out;
  for (const auto& [m, k] : p.terms_) out.terms_.emplace(m, c * k);
  return out;
}

bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

GaussRational Poly::evaluate(const std::vector<GaussRational>& values) const {
  GaussRational sum;
  for (const auto& [m, c] : terms_) {
    GaussRational t = c;
    for (const auto& [v, e] : m) {
      if (v >= values.size()) throw std::out_of_range("Poly::evaluate: missing variable value");
      for (std::uint32_t k = 0; k < e; ++k) t *= values[v];
    }
    sum += t;
  }
  return sum;
}

std::complex<double> Poly::evaluate(const std::vector<std::complex<double>>& values) const {
  std::complex<double> sum = 0.0;
  for (const auto& [m, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (const auto& [v, e] : m) {
      if (v >= values.size()) throw std::out_of_range("Poly::evaluate: missing variable value");
      for (std::uint32_t k = 0; k < e; ++k) t *= values[v];
    }
    sum += t;
  }
  return sum;
}

std::string Poly::to_string(const std::function<std::string(Var)>& name) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.to_string();
    for (const auto& [v, e] : m) {
      os << "*" << name(v);
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

PolyMatrix PolyMatrix::elementary(std::size_t n, std::size_t i, std::size_t j) {
  PolyMatrix E(n);
  E(i, j) = Poly(1);
  return E;
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o) {
  if (o.n_ != n_) throw std::invalid_argument("PolyMatrix size mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& o) {
  if (o.n_ != n_) throw std::invalid_argument("PolyMatrix size mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("PolyMatrix size mismatch");
  PolyMatrix out(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t k = 0; k < a.n_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < a.n_; ++j)
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

PolyMatrix operator*(const GaussRational& c, const PolyMatrix& a) {
  PolyMatrix out(a.n_);
  for (std::size_t k = 0; k < a.entries_.size(); ++k) out.entries_[k] = c * a.entries_[k];
  return out;
}

Poly trace_pairing(const PolyMatrix& X, const PolyMatrix& Y) {
  if (X.size() != Y.size()) throw std::invalid_argument("PolyMatrix size mismatch");
  Poly out;
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = 0; j < X.size(); ++j)
      if (!X(i, j).is_zero() && !Y(j, i).is_zero()) out += X(i, j) * Y(j, i);
  return out;
}

PolyMatrix commutator(const PolyMatrix& X, const PolyMatrix& Y) { return X * Y - Y * X; }

namespace {

// upper_coef * X_> + diag_coef * X_0 + lower_coef * X_<
PolyMatrix triangular_combination(const PolyMatrix& X, const GaussRational& upper, const GaussRational& diag,
                                  const GaussRational& lower) {
  PolyMatrix out(X.size());
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = 0; j < X.size(); ++j) {
      const GaussRational& c = i < j ? upper : (i == j ? diag : lower);
      out(i, j) = c * X(i, j);
    }
  return out;
}

const GaussRational kHalf = GaussRational::fraction(1, 2);

}  // namespace

PolyMatrix r_const(const PolyMatrix& X) { return triangular_combination(X, kHalf, 0, -kHalf); }
PolyMatrix r_plus(const PolyMatrix& X) { return triangular_combination(X, 1, kHalf, 0); }
PolyMatrix r_minus(const PolyMatrix& X) { return triangular_combination(X, 0, -kHalf, -1); }

}  // namespace biham
