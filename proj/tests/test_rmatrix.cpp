#include <doctest.h>

#include "biham/rmatrix.hpp"
#include "support.hpp"

using namespace biham;
using testing::dist;
using testing::mat;

TEST_CASE("constant r-matrix examples") {
  CHECK(dist(r_const(mat({{1, 2}, {3, 4}})), mat({{0, 1}, {-1.5, 0}})) == 0.0);
  CHECK(r_const(mat({{5, 0}, {0, 6}})).isZero(0));
  CHECK(r_const(elementary(2, 0, 1)) == 0.5 * elementary(2, 0, 1));
  CHECK(r_plus(elementary(2, 0, 1)) == elementary(2, 0, 1));
  CHECK(r_minus(elementary(2, 0, 1)).isZero(0));
  CHECK(r_plus(elementary(2, 1, 0)).isZero(0));
}

TEST_CASE("r_plus - r_minus is the identity and r is antisymmetric") {
  Sampler s(10);
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix X = s.matrix(4), Y = s.matrix(4);
    CHECK(dist(r_plus(X) - r_minus(X), X) < 1e-15);
    CHECK(std::abs(trace_pairing(r_const(X), Y) + trace_pairing(X, r_const(Y))) < 1e-13);
  }
}

TEST_CASE("dynamical r-matrix examples") {
  const ComplexMatrix Q = mat({{2, 0}, {0, 1}});
  CHECK(dist(dyn_R(Q, elementary(2, 0, 1)), 1.5 * elementary(2, 0, 1)) < 1e-15);
  CHECK(dist(dyn_R(Q, elementary(2, 1, 0)), -1.5 * elementary(2, 1, 0)) < 1e-15);
  CHECK(dyn_R(Q, mat({{3, 0}, {0, 4}})).isZero(0));
  CHECK_THROWS_AS(DynamicalR(mat({{1, 0}, {0, 1}})), NotRegular);
  CHECK_THROWS(DynamicalR(mat({{1, 1}, {0, 2}})));
}

TEST_CASE("dynamical r-matrix properties") {
  Sampler s(11);
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix Q = s.regular_diagonal(3);
    const DynamicalR R(Q);
    const ComplexMatrix X = s.matrix(3), Y = s.matrix(3);
    CHECK(std::abs(trace_pairing(R(X), Y) + trace_pairing(X, R(Y))) < 1e-12 * (1.0 + X.norm() * Y.norm() * 10));
    for (Eigen::Index k = 0; k < 3; ++k)
      for (Eigen::Index l = 0; l < 3; ++l) CHECK(std::abs(R.multipliers()(k, l) + R.multipliers()(l, k)) < 1e-14);
  }
}

TEST_CASE("rational and coth multipliers agree") {
  Sampler s(12);
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXcd q(3);
    const Eigen::VectorXd re = s.separated_reals(3, 2.0, 0.3);
    for (Eigen::Index i = 0; i < 3; ++i) q(i) = Complex(re(i), s.uniform(-1.0, 1.0));
    const DynamicalR R(diagonal_matrix(q.array().exp().matrix()));
    for (Eigen::Index k = 0; k < 3; ++k)
      for (Eigen::Index l = 0; l < 3; ++l)
        if (k != l) CHECK(std::abs(R.multipliers()(k, l) - coth_multiplier(q(k), q(l))) < 1e-12);
  }
}

TEST_CASE("R-bracket examples") {
  const ComplexMatrix Q = mat({{2, 0}, {0, 1}});
  CHECK(r_bracket(Q, elementary(2, 0, 1), elementary(2, 1, 0)).norm() < 1e-15);
  const ComplexMatrix X = mat({{1, 2}, {Complex(0, 1), -1}});
  const ComplexMatrix Y = mat({{0, 1}, {3, Complex(2, -1)}});
  CHECK(r_bracket(Q, X, X).norm() < 1e-15);
  CHECK(dist(r_bracket(Q, X, Y), commutator(dyn_R(Q, X), Y) + commutator(X, dyn_R(Q, Y))) < 1e-14);
  CHECK(dist(r_bracket(Q, X, Y), -r_bracket(Q, Y, X)) < 1e-14);
  CHECK(r_bracket(Q, mat({{1, 0}, {0, 2}}), mat({{3, 0}, {0, 5}})).isZero(0));
}
