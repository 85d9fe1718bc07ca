#include <doctest.h>

#include "biham/realforms.hpp"
#include "support.hpp"

using namespace biham;
using namespace biham::realforms;
using testing::mat;

namespace {
HyperbolicPoint random_hyp(Sampler& s, std::size_t n) {
  return make_hyperbolic_point(s.separated_reals(n, 1.5, 0.3), s.hermitian(n));
}
TrigPoint random_trig(Sampler& s, std::size_t n) {
  return make_trig_point(s.separated_reals(n, 1.2, 0.3), s.hermitian(n));
}
std::vector<ReducedObservable> real_family(Slice slice) {
  std::vector<ReducedObservable> out;
  for (const char* w : {"l", "ll", "gl", "gll", "glGl", "Gl", "ggl"})
    out.push_back(restrict_observable(real_trace_word(w, slice)));
  return out;
}
}  // namespace

TEST_CASE("slice point validation") {
  const Eigen::VectorXd q = (Eigen::VectorXd(2) << 0.0, 1.0).finished();
  CHECK_THROWS(make_hyperbolic_point(q, mat({{0, 1}, {0, 0}})));
  CHECK_THROWS(make_trig_point(q, mat({{0, 1}, {0, 0}})));
  CHECK_THROWS(make_hyperbolic_point((Eigen::VectorXd(2) << 1.0, 1.0).finished(), identity(2)));
  const TrigPoint t = make_trig_point(q, identity(2));
  CHECK(std::abs(t.reduced().Q(1, 1) - std::exp(Complex(0, 1))) < 1e-15);
}

TEST_CASE("conjugation identities of the dynamical r-matrix") {
  const ComplexMatrix Qh = mat({{std::exp(1.0), 0}, {0, 1}});
  const ComplexMatrix Qt = mat({{std::exp(Complex(0, 1)), 0}, {0, 1}});
  CHECK(conjugation_identity_check(Slice::Hyperbolic, Qh, elementary(2, 0, 1)) < 1e-15);
  CHECK(conjugation_identity_check(Slice::Trigonometric, Qt, elementary(2, 0, 1)) < 1e-15);
  CHECK(conjugation_identity_check(Slice::Hyperbolic, Qh, mat({{1, 0}, {0, 2}})) == 0.0);
  CHECK(conjugation_identity_check(Slice::Trigonometric, Qt, mat({{1, 0}, {0, 2}})) == 0.0);
  Sampler s(70);
  for (int t = 0; t < 20; ++t) {
    const HyperbolicPoint hp = random_hyp(s, 3);
    const TrigPoint tp = random_trig(s, 3);
    const ComplexMatrix X = s.matrix(3);
    CHECK(conjugation_identity_check(Slice::Hyperbolic, hp.reduced().Q, X) < 1e-12);
    CHECK(conjugation_identity_check(Slice::Trigonometric, tp.reduced().Q, X) < 1e-12);
  }
}

TEST_CASE("real trace words are real on their slice") {
  Sampler s(71);
  const HyperbolicPoint hp = random_hyp(s, 3);
  const TrigPoint tp = random_trig(s, 3);
  for (const char* w : {"gl", "glGl", "ggl", "gGll"}) {
    CHECK(std::abs(real_trace_word(w, Slice::Hyperbolic).evaluate(hp.reduced().as_phase_point()).imag()) < 1e-12);
    CHECK(std::abs(real_trace_word(w, Slice::Trigonometric).evaluate(tp.reduced().as_phase_point()).imag()) <
          1e-12);
  }
  CHECK(std::abs(Observable::trace_word("gl").evaluate(tp.reduced().as_phase_point()).imag()) > 1e-6);
}

TEST_CASE("hyperbolic brackets are real and match the real formula") {
  Sampler s(72);
  const auto fam = real_family(Slice::Hyperbolic);
  for (int t = 0; t < 5; ++t) {
    const HyperbolicPoint hp = random_hyp(s, 3);
    for (const auto& f : fam)
      for (const auto& h : fam)
        for (int i = 1; i <= 2; ++i) {
          const Complex v = hyp_pb(i, f, h, hp);
          CHECK(std::abs(v.imag()) < 1e-10 * (1.0 + std::abs(v)));
          CHECK(std::abs(v.real() - hyp_pb_real_formula(i, f, h, hp)) < 1e-10 * (1.0 + std::abs(v)));
        }
    CHECK(std::abs(hyp_pb(2, fam[0], fam[1], hp)) < 1e-12);
  }
}

TEST_CASE("trigonometric brackets are imaginary and match the imaginary formula") {
  Sampler s(73);
  const auto fam = real_family(Slice::Trigonometric);
  for (int t = 0; t < 5; ++t) {
    const TrigPoint tp = random_trig(s, 3);
    for (const auto& f : fam)
      for (const auto& h : fam)
        for (int i = 1; i <= 2; ++i) {
          const Complex v = trig_pb(i, f, h, tp);
          CHECK(std::abs(v.real()) < 1e-10 * (1.0 + std::abs(v)));
          CHECK(std::abs(v - trig_pb_imag_formula(i, f, h, tp)) < 1e-10 * (1.0 + std::abs(v)));
        }
    CHECK(std::abs(trig_pb(1, fam[3], fam[3], tp)) < 1e-12);
  }
}

TEST_CASE("slice derivatives have the right symmetry") {
  Sampler s(74);
  const HyperbolicPoint hp = random_hyp(s, 3);
  const RealDerivatives d = hyperbolic_derivatives(restrict_observable(real_trace_word("glGl", Slice::Hyperbolic)), hp);
  CHECK((d.d2 - d.d2.adjoint()).norm() < 1e-12);
  CHECK(d.nabla1.imag().norm() < 1e-12);
  const TrigPoint tp = random_trig(s, 3);
  const RealDerivatives e = trig_derivatives(restrict_observable(real_trace_word("glGl", Slice::Trigonometric)), tp);
  CHECK((e.D2 + e.D2.adjoint()).norm() < 1e-12);
  CHECK(e.D1.imag().norm() < 1e-12);
}

TEST_CASE("non-real functions are rejected") {
  Sampler s(75);
  const TrigPoint tp = random_trig(s, 3);
  CHECK_THROWS_AS(trig_derivatives(restrict_observable(Observable::trace_word("gl")), tp), SymmetryViolated);
  const HyperbolicPoint hp = random_hyp(s, 3);
  CHECK_THROWS_AS(
      hyperbolic_derivatives(restrict_observable(Observable::trace_word("gl", Complex(0, 1))), hp), SymmetryViolated);
}
