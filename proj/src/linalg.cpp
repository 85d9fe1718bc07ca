#include "biham/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

namespace biham {

ComplexMatrix identity(std::size_t n) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

ComplexMatrix zeros(std::size_t n) {
  return ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

ComplexMatrix elementary(std::size_t n, std::size_t i, std::size_t j) {
  ComplexMatrix e = zeros(n);
  e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  return e;
}

ComplexMatrix diagonal_matrix(const Eigen::VectorXcd& d) {
  ComplexMatrix m = ComplexMatrix::Zero(d.size(), d.size());
  m.diagonal() = d;
  return m;
}

void require_square(const ComplexMatrix& X) {
  if (X.rows() != X.cols() || X.rows() == 0) {
    std::ostringstream os;
    os << "expected a nonempty square matrix, got " << X.rows() << "x" << X.cols();
    throw SizeMismatch(os.str());
  }
}

void require_same_size(const ComplexMatrix& X, const ComplexMatrix& Y) {
  require_square(X);
  require_square(Y);
  if (X.rows() != Y.rows()) {
    std::ostringstream os;
    os << "matrix size mismatch: " << X.rows() << " vs " << Y.rows();
    throw SizeMismatch(os.str());
  }
}

Complex trace_pairing(const ComplexMatrix& X, const ComplexMatrix& Y) {
  require_same_size(X, Y);
  // tr(XY) = sum_ij X_ij Y_ji without forming the product.
  return (X.array() * Y.transpose().array()).sum();
}

ComplexMatrix commutator(const ComplexMatrix& X, const ComplexMatrix& Y) {
  require_same_size(X, Y);
  return X * Y - Y * X;
}

ComplexMatrix strict_upper_part(const ComplexMatrix& X) {
  ComplexMatrix out = ComplexMatrix::Zero(X.rows(), X.cols());
  out.triangularView<Eigen::StrictlyUpper>() = X;
  return out;
}

ComplexMatrix strict_lower_part(const ComplexMatrix& X) {
  ComplexMatrix out = ComplexMatrix::Zero(X.rows(), X.cols());
  out.triangularView<Eigen::StrictlyLower>() = X;
  return out;
}

ComplexMatrix diagonal_part(const ComplexMatrix& X) {
  ComplexMatrix out = ComplexMatrix::Zero(X.rows(), X.cols());
  out.diagonal() = X.diagonal();
  return out;
}

ComplexMatrix off_diagonal_part(const ComplexMatrix& X) {
  ComplexMatrix out = X;
  out.diagonal().setZero();
  return out;
}

TriangularSplit split(const ComplexMatrix& X) {
  require_square(X);
  return {strict_upper_part(X), diagonal_part(X), strict_lower_part(X)};
}

bool is_diagonal(const ComplexMatrix& X, double tol) {
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j)
      if (i != j && std::abs(X(i, j)) > tol) return false;
  return true;
}

bool all_finite(const ComplexMatrix& X) {
  for (Eigen::Index i = 0; i < X.size(); ++i) {
    const Complex z = X.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexMatrix mat_exp(const ComplexMatrix& X) {
  require_square(X);
  if (!all_finite(X)) throw Overflow("mat_exp: non-finite input");
  const Eigen::Index n = X.rows();
  // induced 1-norm
  const double norm = X.cwiseAbs().colwise().sum().maxCoeff();
  if (norm > 700.0) throw Overflow("mat_exp: norm too large for double precision");

  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const ComplexMatrix Y = X / std::ldexp(1.0, squarings);

  ComplexMatrix result = ComplexMatrix::Identity(n, n);
  ComplexMatrix term = ComplexMatrix::Identity(n, n);
  // ||Y|| <= 0.5, so 0.5^k / k! drops below 1e-20 before k = 20.
  for (int k = 1; k <= 24; ++k) {
    term = (term * Y) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() == 0.0) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  if (!all_finite(result)) throw Overflow("mat_exp: result overflowed");
  return result;
}

namespace {

ComplexMatrix reversal(Eigen::Index n) {
  ComplexMatrix J = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) J(i, n - 1 - i) = 1.0;
  return J;
}

/// A = Lo * D * U (Doolittle, no pivoting).
GaussFactors lower_diag_upper(const ComplexMatrix& A, double pivot_tol) {
  const Eigen::Index n = A.rows();
  ComplexMatrix W = A;
  ComplexMatrix Lo = ComplexMatrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex pivot = W(k, k);
    if (std::abs(pivot) < pivot_tol) {
      std::ostringstream os;
      os << "gauss_decompose: pivot " << k << " has modulus " << std::abs(pivot)
         << " below " << pivot_tol;
      throw SingularMinor(os.str());
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Complex f = W(i, k) / pivot;
      Lo(i, k) = f;
      W.row(i) -= f * W.row(k);
      W(i, k) = 0.0;
    }
  }
  ComplexMatrix D = ComplexMatrix::Zero(n, n);
  D.diagonal() = W.diagonal();
  ComplexMatrix U = W;
  for (Eigen::Index i = 0; i < n; ++i) {
    U.row(i) /= W(i, i);
    U(i, i) = 1.0;
  }
  return {U, D, Lo, GaussOrder::LowerDiagUpper};
}

}  // namespace

ComplexMatrix GaussFactors::recompose() const {
  if (order == GaussOrder::UpperDiagLower) return upper_unipotent * diagonal * lower_unipotent;
  return lower_unipotent * diagonal * upper_unipotent;
}

GaussFactors gauss_decompose(const ComplexMatrix& A, GaussOrder order) {
  require_square(A);
  const double scale = A.cwiseAbs().maxCoeff();
  const double pivot_tol = 1e-12 * scale;
  if (scale == 0.0) throw SingularMinor("gauss_decompose: zero matrix");
  if (order == GaussOrder::LowerDiagUpper) return lower_diag_upper(A, pivot_tol);

  // Conjugating by the reversal permutation swaps upper and lower triangles,
  // so U D Lo of A is the reversed Lo' D' U' of J A J.
  const ComplexMatrix J = reversal(A.rows());
  const GaussFactors r = lower_diag_upper(J * A * J, pivot_tol);
  return {J * r.lower_unipotent * J, J * r.diagonal * J, J * r.upper_unipotent * J,
          GaussOrder::UpperDiagLower};
}

double min_diagonal_gap(const ComplexMatrix& Q) {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < Q.rows(); ++i)
    for (Eigen::Index j = i + 1; j < Q.rows(); ++j) gap = std::min(gap, std::abs(Q(i, i) - Q(j, j)));
  return gap;
}

Diagonalization diagonalize_regular(const ComplexMatrix& g, double tol_reg) {
  require_square(g);
  if (!all_finite(g)) throw NotInvertible("diagonalize_regular: non-finite input");
  const Eigen::Index n = g.rows();

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(g, true);
  if (solver.info() != Eigen::Success) throw NotRegular("diagonalize_regular: eigensolver failed");
  const Eigen::VectorXcd& lambda = solver.eigenvalues();
  const ComplexMatrix& V = solver.eigenvectors();

  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(lambda(i)) <= 1e-12 * scale) throw NotInvertible("diagonalize_regular: singular matrix");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (lambda(a).real() != lambda(b).real()) return lambda(a).real() < lambda(b).real();
    return lambda(a).imag() < lambda(b).imag();
  });

  ComplexMatrix Vs(n, n);
  Eigen::VectorXcd sorted(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    sorted(k) = lambda(src);
    Eigen::VectorXcd col = V.col(src);
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(col(i)) > best) {
        best = std::abs(col(i));
        pivot = i;
      }
    }
    col /= col(pivot);
    col(pivot) = 1.0;
    Vs.col(k) = col;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(sorted(i) - sorted(j)) < tol_reg) {
        std::ostringstream os;
        os << "diagonalize_regular: eigenvalue gap " << std::abs(sorted(i) - sorted(j))
           << " below tol_reg " << tol_reg;
        throw NotRegular(os.str());
      }
    }
  }
  return {Vs.inverse(), diagonal_matrix(sorted)};
}

}  // namespace biham
