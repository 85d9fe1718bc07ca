#pragma once

#include <initializer_list>

#include "biham/linalg.hpp"
#include "biham/observables.hpp"
#include "biham/random.hpp"

namespace testing {

using biham::Complex;
using biham::ComplexMatrix;

inline ComplexMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const auto& v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline double dist(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).norm(); }

inline biham::PhasePoint random_point(biham::Sampler& s, std::size_t n) {
  return {s.near_identity(n, 0.9), s.matrix(n, 1.0)};
}

}  // namespace testing
