#include <doctest.h>

#include <sstream>

#include "biham/brackets.hpp"
#include "biham/poisson_poly.hpp"
#include "support.hpp"

using namespace biham;
using namespace biham::poisson;

namespace {
Generator g(std::size_t i, std::size_t j) { return {GenKind::G, i, j}; }
Generator L(std::size_t i, std::size_t j) { return {GenKind::L, i, j}; }
Poly v(const Variables& V, const Generator& a) { return Poly::var(V.index(a)); }
const GaussRational half = GaussRational::fraction(1, 2);
}  // namespace

TEST_CASE("variable numbering") {
  const Variables V(3);
  CHECK(V.index(g(1, 2)) == 5);
  CHECK(V.index(L(0, 1)) == 10);
  CHECK(V.x() == 18);
  CHECK(V.y() == 19);
  CHECK(V.generator(14) == L(1, 2));
  CHECK(V.name(V.index(g(0, 1))) == "g12");
  CHECK(V.name(V.index(L(1, 0))) == "L21");
  CHECK(V.name(V.x()) == "x");
  CHECK(V.generators().size() == 18);
}

TEST_CASE("generator bracket examples") {
  const Variables V(2);
  CHECK(gen_bracket(BracketChoice::PB2, g(0, 0), g(1, 1), 2) == -(v(V, g(1, 0)) * v(V, g(0, 1))));
  CHECK(gen_bracket(BracketChoice::PB2, g(1, 0), L(0, 1), 2) ==
        half * v(V, g(1, 0)) * v(V, L(0, 1)) + v(V, g(0, 0)) * v(V, L(1, 1)));
  CHECK(gen_bracket(BracketChoice::PB2, L(0, 1), L(1, 0), 2) ==
        v(V, L(1, 1)) * v(V, L(1, 1)) - v(V, L(0, 0)) * v(V, L(1, 1)));
  CHECK(gen_bracket(BracketChoice::PB1, g(0, 1), L(1, 0), 2) == v(V, g(1, 1)));
  CHECK(gen_bracket(BracketChoice::PB1, g(0, 1), g(1, 0), 2).is_zero());
  CHECK(gen_bracket(BracketChoice::PB1, L(0, 1), L(1, 0), 2) == v(V, L(1, 1)) - v(V, L(0, 0)));
  const Poly pencil = gen_bracket(BracketChoice::Pencil, L(0, 1), L(1, 0), 2);
  CHECK(pencil == Poly::var(V.x()) * gen_bracket(BracketChoice::PB1, L(0, 1), L(1, 0), 2) +
                      Poly::var(V.y()) * gen_bracket(BracketChoice::PB2, L(0, 1), L(1, 0), 2));
}

TEST_CASE("Leibniz extension examples") {
  const StructureTable T(2, BracketChoice::PB2);
  const Variables& V = T.variables();
  const Poly trg = v(V, g(0, 0)) + v(V, g(1, 1)), trl = v(V, L(0, 0)) + v(V, L(1, 1));
  Poly trgl;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) trgl += v(V, g(i, j)) * v(V, L(j, i));
  CHECK(poly_bracket(T, trg, trl) == trgl);
  CHECK(poly_bracket(T, trl, trl * trl).is_zero());
  CHECK(poly_bracket(T, Poly(5), trg).is_zero());
  const StructureTable T1(2, BracketChoice::PB1);
  CHECK(poly_bracket(T1, trl, v(V, g(0, 1))) == -v(V, g(0, 1)));
}

TEST_CASE("closed-form table matches the symbolic expansion") {
  for (std::size_t n : {2u, 3u}) {
    const Variables V(n);
    for (const auto& a : V.generators())
      for (const auto& b : V.generators()) {
        CHECK(gen_bracket(BracketChoice::PB1, a, b, n) == symbolic_bracket(BracketChoice::PB1, a, b, n));
        CHECK(gen_bracket(BracketChoice::PB2, a, b, n) == symbolic_bracket(BracketChoice::PB2, a, b, n));
        CHECK(gen_bracket(BracketChoice::PB2, a, b, n) == -gen_bracket(BracketChoice::PB2, b, a, n));
      }
  }
}

TEST_CASE("table evaluated at points matches the numerical bracket") {
  Sampler s(40);
  for (int t = 0; t < 5; ++t) {
    const PhasePoint p = testing::random_point(s, 3);
    const auto vals = point_values(p);
    const Variables V(3);
    for (const auto& a : V.generators())
      for (const auto& b : V.generators()) {
        const Complex e1 = gen_bracket(BracketChoice::PB1, a, b, 3).evaluate(vals);
        const Complex e2 = gen_bracket(BracketChoice::PB2, a, b, 3).evaluate(vals);
        CHECK(std::abs(e1 - pb1(generator_observable(a), generator_observable(b), p)) < 1e-12);
        CHECK(std::abs(e2 - pb2(generator_observable(a), generator_observable(b), p)) < 1e-12);
      }
  }
}

TEST_CASE("Jacobi identity holds exactly for n = 2") {
  for (BracketChoice kind : {BracketChoice::PB1, BracketChoice::PB2, BracketChoice::Pencil}) {
    const JacobiReport r = jacobi_sweep(2, kind, 2);
    CHECK(r.triples == 512);
    CHECK(r.nonzero == 0);
  }
}

TEST_CASE("Jacobi subset sweep is reproducible") {
  const JacobiReport a = jacobi_sweep(3, BracketChoice::PB2, 2, 50, 7);
  const JacobiReport b = jacobi_sweep(3, BracketChoice::PB2, 4, 50, 7);
  REQUIRE(a.triples == 50);
  CHECK(a.nonzero == 0);
  CHECK(a.subset_seed == std::optional<std::uint64_t>(7));
  for (std::size_t k = 0; k < a.results.size(); ++k) {
    CHECK(a.results[k].a == b.results[k].a);
    CHECK(a.results[k].c == b.results[k].c);
  }
}

TEST_CASE("a perturbed structure table violates Jacobi") {
  StructureTable T(2, BracketChoice::PB2);
  const Variables& V = T.variables();
  const Poly::Var a = V.index(g(0, 0)), b = V.index(g(1, 1));
  T.set(a, b, T(a, b) + v(V, L(0, 1)));
  CHECK(T(b, a) == -T(a, b));
  bool found = false;
  for (const auto& x : V.generators())
    for (const auto& y : V.generators())
      for (const auto& z : V.generators())
        if (!jacobi_residual(T, x, y, z).is_zero()) found = true;
  CHECK(found);
}

TEST_CASE("W identity") {
  for (std::size_t n : {2u, 3u}) {
    const StructureTable T1(n, BracketChoice::PB1), T2(n, BracketChoice::PB2);
    for (const auto& a : T1.variables().generators())
      for (const auto& b : T1.variables().generators()) CHECK(w_identity_residual(T1, T2, a, b).is_zero());
  }
  const Variables V(2);
  CHECK(w_derivation(V, v(V, L(0, 0)) * v(V, L(1, 1))) == v(V, L(0, 0)) + v(V, L(1, 1)));
  CHECK(w_derivation(V, v(V, L(0, 1))).is_zero());
}

TEST_CASE("certificate format") {
  const JacobiReport r = jacobi_sweep(2, BracketChoice::PB1, 1, 3, 1);
  std::ostringstream os;
  write_certificate(os, r);
  std::istringstream in(os.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    CHECK(line.rfind("PB1 ", 0) == 0);
    CHECK(line.size() > 5);
    CHECK(line.substr(line.size() - 4) == "ZERO");
  }
  CHECK(lines == 3);
}
