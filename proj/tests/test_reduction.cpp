#include <doctest.h>

#include "biham/reduction.hpp"
#include "support.hpp"

using namespace biham;
using testing::dist;
using testing::mat;

namespace {
ReducedPoint random_reduced(Sampler& s, std::size_t n) {
  return make_reduced_point(s.regular_diagonal(n), s.matrix(n));
}
}  // namespace

TEST_CASE("reduced point validation") {
  CHECK_THROWS_AS(make_reduced_point(identity(2), zeros(2)), NotRegular);
  CHECK_THROWS(make_reduced_point(mat({{1, 1}, {0, 2}}), zeros(2)));
  CHECK_THROWS(make_reduced_point(mat({{0, 0}, {0, 2}}), zeros(2)));
  CHECK_NOTHROW(make_reduced_point(mat({{1, 0}, {0, 2}}), zeros(2)));
}

TEST_CASE("projection examples") {
  const ComplexMatrix L = mat({{1, 2}, {3, 4}});
  const Projection a = project({mat({{1, 0}, {0, 2}}), L});
  CHECK(dist(a.eta, identity(2)) < 1e-14);
  CHECK(dist(a.point.L, L) < 1e-14);

  const Projection b = project({mat({{2, 0}, {0, 1}}), L});
  CHECK(dist(b.point.Q, mat({{1, 0}, {0, 2}})) < 1e-14);
  CHECK(dist(b.point.L, mat({{4, 3}, {2, 1}})) < 1e-14);

  CHECK_THROWS_AS(project({identity(2), L}), NotRegular);
}

TEST_CASE("projection conjugates consistently") {
  Sampler s(50);
  for (int t = 0; t < 20; ++t) {
    const PhasePoint p = testing::random_point(s, 3);
    const Projection pr = project(p);
    const ComplexMatrix ei = pr.eta.inverse();
    CHECK(dist(pr.point.Q, pr.eta * p.g * ei) < 1e-10);
    CHECK(dist(pr.point.L, pr.eta * p.L * ei) < 1e-10);
    CHECK(is_diagonal(pr.point.Q, 1e-10));
  }
}

TEST_CASE("restriction examples") {
  const ReducedPoint rp = make_reduced_point(mat({{1, 0}, {0, 3}}), mat({{1, 2}, {3, 4}}));
  const ReducedDerivatives l3 = restrict_observable(Observable::trace_word("lll", 1.0 / 3)).derivatives(rp);
  CHECK(l3.nabla1.isZero(0));
  CHECK(dist(l3.d2, rp.L * rp.L) < 1e-13);

  const ReducedObservable trg = restrict_observable(Observable::trace_word("g"));
  CHECK(trg.evaluate(rp) == Complex(4.0));
  CHECK(dist(trg.derivatives(rp).nabla1, rp.Q) < 1e-15);

  const ReducedObservable w = restrict_observable(Observable::trace_word("glGl"));
  CHECK(std::abs(w.evaluate(rp) - (rp.Q * rp.L * rp.Q.inverse() * rp.L).trace()) < 1e-13);

  CHECK_THROWS_AS(restrict_observable(Observable::g_entry(0, 1)), InvarianceViolated);
}

TEST_CASE("reduced bracket examples") {
  Sampler s(51);
  const ReducedPoint rp = random_reduced(s, 3);
  const ReducedObservable trl = restrict_observable(Observable::trace_word("l"));
  const ReducedObservable h2 = restrict_observable(free_hamiltonian_observable(2));
  const ReducedObservable trg = restrict_observable(Observable::trace_word("g"));
  const ReducedObservable w = restrict_observable(Observable::trace_word("glGl"));
  CHECK(std::abs(reduced_pb1(trl, h2, rp)) < 1e-14);
  CHECK(std::abs(reduced_pb2(trl, h2, rp)) < 1e-14);
  CHECK(std::abs(reduced_pb1(w, w, rp)) < 1e-12);
  CHECK(std::abs(reduced_pb2(w, w, rp)) < 1e-12);
  CHECK(std::abs(reduced_pb1(trg, trl, rp) - rp.Q.trace()) < 1e-13);
  CHECK(std::abs(reduced_pb2(trg, trl, rp) - (rp.Q * rp.L).trace()) < 1e-13);
}

TEST_CASE("reduced brackets agree with the unreduced brackets on invariants") {
  Sampler s(52);
  const auto inv = builtin_invariants();
  for (int t = 0; t < 10; ++t) {
    const PhasePoint p = testing::random_point(s, 3);
    const ReducedPoint rp = project(p).point;
    for (std::size_t a = 0; a < inv.size(); a += 2)
      for (std::size_t b = 1; b < inv.size(); b += 3) {
        const ReducedObservable f = restrict_observable(inv[a]), h = restrict_observable(inv[b]);
        const Complex e1 = pb1(inv[a], inv[b], p), e2 = pb2(inv[a], inv[b], p);
        CHECK(std::abs(reduced_pb1(f, h, rp) - e1) < 1e-8 * (1.0 + std::abs(e1)));
        CHECK(std::abs(reduced_pb2(f, h, rp) - e2) < 1e-8 * (1.0 + std::abs(e2)));
      }
  }
}

TEST_CASE("gradient relations on the diagonal") {
  Sampler s(53);
  const ReducedPoint rp = random_reduced(s, 3);
  const DiagonalGradientResiduals a = diagonal_gradient_residuals(Observable::trace_word("llll"), rp);
  CHECK(a.diag_commutator < 1e-14);
  CHECK(a.gradient_relation < 1e-14);
  for (const char* w : {"gl", "glGl", "ggl", "gGl"}) {
    const DiagonalGradientResiduals r = diagonal_gradient_residuals(Observable::trace_word(w), rp);
    CHECK(r.diag_commutator < 1e-10);
    CHECK(r.gradient_relation < 1e-10);
  }
}

TEST_CASE("reduced vector field examples") {
  const ReducedPoint rp = make_reduced_point(mat({{2, 0}, {0, 1}}), mat({{0, 1}, {1, 0}}));
  const ReducedVectorField v = reduced_vf(1, rp);
  CHECK(v.Qdot.norm() < 1e-15);
  CHECK(dist(v.Ldot, mat({{3, 0}, {0, -3}})) < 1e-14);

  const ReducedPoint d = make_reduced_point(mat({{2, 0}, {0, 1}}), mat({{Complex(1, 1), 0}, {0, -2}}));
  for (int m = 1; m <= 3; ++m) {
    const ReducedVectorField w = reduced_vf(m, d);
    ComplexMatrix Lm = identity(2);
    for (int k = 0; k < m; ++k) Lm = Lm * d.L;
    CHECK(dist(w.Qdot, Lm * d.Q) < 1e-14);
    CHECK(w.Ldot.isZero(0));
  }
  const ReducedPoint e = make_reduced_point(mat({{2, 0}, {0, 1}}), identity(2));
  CHECK(dist(reduced_vf(2, e).Qdot, e.Q) < 1e-15);
  CHECK(reduced_vf(2, e).Ldot.isZero(0));
}

TEST_CASE("flow derivative is shared by consecutive Hamiltonians") {
  Sampler s(54);
  const auto inv = builtin_invariants();
  for (int t = 0; t < 5; ++t) {
    const PhasePoint p = testing::random_point(s, 3);
    const ReducedPoint rp = project(p).point;
    for (const Observable& F : inv)
      for (int m = 1; m <= 3; ++m) {
        const ReducedObservable f = restrict_observable(F);
        const Complex v = reduced_flow_derivative(f, m, rp);
        const Complex b2 = reduced_pb2(f, restrict_observable(free_hamiltonian_observable(m)), rp);
        const Complex b1 = reduced_pb1(f, restrict_observable(free_hamiltonian_observable(m + 1)), rp);
        CHECK(std::abs(v - b2) < 1e-8 * (1.0 + std::abs(v)));
        CHECK(std::abs(v - b1) < 1e-8 * (1.0 + std::abs(v)));
      }
  }
}

TEST_CASE("gauge invariance of reduced functions") {
  Sampler s(55);
  const ReducedPoint rp = random_reduced(s, 3);
  Eigen::VectorXcd d(3);
  d << Complex(1.5, 0.2), Complex(-0.7, 1), Complex(0.3, -2);
  const ComplexMatrix T = diagonal_matrix(d);
  const ReducedPoint gp = make_reduced_point(rp.Q, T * rp.L * T.inverse());
  for (const Observable& F : builtin_invariants()) {
    const ReducedObservable f = restrict_observable(F);
    CHECK(std::abs(f.evaluate(gp) - f.evaluate(rp)) < 1e-10 * (1.0 + std::abs(f.evaluate(rp))));
  }
}
