#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <utility>

#include "biham/errors.hpp"

namespace biham {

using Complex = std::complex<double>;
/// Dense n x n complex matrix; carrier for g, L, Q and Lie algebra elements.
using ComplexMatrix = Eigen::MatrixXcd;

/// Default absolute eigenvalue gap below which a matrix is treated as non-regular.
inline constexpr double kDefaultTolReg = 1e-8;

ComplexMatrix identity(std::size_t n);
ComplexMatrix zeros(std::size_t n);
/// Elementary matrix e_ij (0-based indices).
ComplexMatrix elementary(std::size_t n, std::size_t i, std::size_t j);
ComplexMatrix diagonal_matrix(const Eigen::VectorXcd& d);

void require_square(const ComplexMatrix& X);
void require_same_size(const ComplexMatrix& X, const ComplexMatrix& Y);

/// tr(XY).
Complex trace_pairing(const ComplexMatrix& X, const ComplexMatrix& Y);
ComplexMatrix commutator(const ComplexMatrix& X, const ComplexMatrix& Y);

struct TriangularSplit {
  ComplexMatrix strict_upper;
  ComplexMatrix diagonal;
  ComplexMatrix strict_lower;

  /// X_< + X_>
  ComplexMatrix off_diagonal() const { return strict_upper + strict_lower; }
};

TriangularSplit split(const ComplexMatrix& X);
ComplexMatrix strict_upper_part(const ComplexMatrix& X);
ComplexMatrix strict_lower_part(const ComplexMatrix& X);
ComplexMatrix diagonal_part(const ComplexMatrix& X);
ComplexMatrix off_diagonal_part(const ComplexMatrix& X);

bool is_diagonal(const ComplexMatrix& X, double tol = 0.0);

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
/// Throws Overflow if the result would not be finite.
ComplexMatrix mat_exp(const ComplexMatrix& X);

enum class GaussOrder {
  UpperDiagLower,  ///< A = U * D * Lo
  LowerDiagUpper,  ///< A = Lo * D * U
};

struct GaussFactors {
  ComplexMatrix upper_unipotent;
  ComplexMatrix diagonal;
  ComplexMatrix lower_unipotent;
  GaussOrder order;

  ComplexMatrix recompose() const;
};

/// Gauss factorization without pivoting. Throws SingularMinor when a pivot
/// falls below 1e-12 * ||A||.
GaussFactors gauss_decompose(const ComplexMatrix& A, GaussOrder order);

struct Diagonalization {
  ComplexMatrix eta;  ///< eta * g * eta^{-1} == Q
  ComplexMatrix Q;    ///< diagonal, entries ascending by (Re, Im)
};

/// Diagonalizes a regular invertible matrix. Eigenvalues are sorted ascending in
/// lexicographic (Re, Im) order; each eigenvector column is scaled so that its
/// first entry of maximal modulus equals 1.
Diagonalization diagonalize_regular(const ComplexMatrix& g, double tol_reg = kDefaultTolReg);

/// Smallest pairwise distance between diagonal entries.
double min_diagonal_gap(const ComplexMatrix& Q);

/// Entrywise finite check.
bool all_finite(const ComplexMatrix& X);

}  // namespace biham
