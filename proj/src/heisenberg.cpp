#include "biham/heisenberg.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace biham::heisenberg {

double DoubleVector::norm() const { return std::sqrt(first.squaredNorm() + second.squaredNorm()); }

Complex pairing2(const DoubleVector& V, const DoubleVector& W) {
  return trace_pairing(V.first, W.first) - trace_pairing(V.second, W.second);
}

DoubleVector star_vector(const ComplexMatrix& X) { return {r_plus(X), r_minus(X)}; }

// (X1, X2) = (Y, Y) + (r_+ Z, r_- Z) with Z = X1 - X2 and Y = X2 - r_- Z.
DoubleVector project_delta(const DoubleVector& V) {
  const ComplexMatrix Y = V.second - r_minus(V.first - V.second);
  return {Y, Y};
}

DoubleVector project_star(const DoubleVector& V) { return star_vector(V.first - V.second); }

DoubleVector R_double(const DoubleVector& V) { return 0.5 * (project_delta(V) - project_star(V)); }

ComplexMatrix principal_sqrt_diagonal(const ComplexMatrix& D) {
  ComplexMatrix out = zeros(static_cast<std::size_t>(D.rows()));
  for (Eigen::Index i = 0; i < D.rows(); ++i) {
    const Complex d = D(i, i);
    if (d.real() < 0.0 && std::abs(d.imag()) <= 1e-10 * std::abs(d)) {
      std::ostringstream os;
      os << "principal square root requested on the negative real axis: " << d;
      throw BranchCut(os.str());
    }
    out(i, i) = std::sqrt(d);
  }
  return out;
}

namespace {

StarFactors star_from(const ComplexMatrix& A) {
  const GaussFactors f = gauss_decompose(A, GaussOrder::UpperDiagLower);
  return {f.upper_unipotent, principal_sqrt_diagonal(f.diagonal), f.lower_unipotent};
}

}  // namespace

DeltaStarFactors factorize(const DoubleElement& d) {
  require_same_size(d.g1, d.g2);
  const ComplexMatrix g1inv = d.g1.inverse();
  StarFactors right = star_from(g1inv * d.g2);
  const StarFactors left = star_from(d.g1 * d.g2.inverse());
  return {g1inv * left.gplus(), std::move(right)};
}

DoubleElement recompose(const DeltaStarFactors& f) {
  // With k_+ = k_> k_0 and k_- = (k_0 k_<)^-1 the left G^* factor, one has
  // k_-^-1 k_+ = g^-1 g_- g_+^-1 g, whose lower-diag-upper factors are
  // (k_0 k_< k_0^-1, k_0^2, k_0^-1 k_> k_0).
  const ComplexMatrix ginv = f.g.inverse();
  const ComplexMatrix M = ginv * f.star.gminus() * f.star.gplus().inverse() * f.g;
  const GaussFactors lu = gauss_decompose(M, GaussOrder::LowerDiagUpper);
  const ComplexMatrix k0 = principal_sqrt_diagonal(lu.diagonal);
  const ComplexMatrix k0inv = k0.inverse();
  const ComplexMatrix k_lower = k0inv * lu.lower_unipotent * k0;
  const ComplexMatrix k_upper = k0 * lu.upper_unipotent * k0inv;
  const ComplexMatrix k_plus = k_upper * k0;
  const ComplexMatrix k_minus = (k0 * k_lower).inverse();
  return {k_plus * ginv, k_minus * ginv};
}

PhasePoint to_cotangent(const DeltaStarFactors& f) { return {f.g, f.star.L()}; }

DoubleFunction pullback(const Observable& F) {
  return [F](const DoubleElement& d) { return F.evaluate(to_cotangent(factorize(d))); };
}

DoubleVector fd_double_derivative(const DoubleFunction& F, const DoubleElement& d, bool right, double h) {
  const std::size_t n = static_cast<std::size_t>(d.g1.rows());
  DoubleVector out{zeros(n), zeros(n)};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const ComplexMatrix T = elementary(n, a, b);
      const ComplexMatrix ep = mat_exp(h * T);
      const ComplexMatrix em = mat_exp(-h * T);
      const auto act = [&](const ComplexMatrix& e, const ComplexMatrix& g) { return right ? ComplexMatrix(g * e) : ComplexMatrix(e * g); };
      const Complex c1 = (F({act(ep, d.g1), d.g2}) - F({act(em, d.g1), d.g2})) / (2.0 * h);
      const Complex c2 = (F({d.g1, act(ep, d.g2)}) - F({d.g1, act(em, d.g2)})) / (2.0 * h);
      // <(e_ab, 0), (A, B)>_2 = A_ba and <(0, e_ab), (A, B)>_2 = -B_ba
      const auto ia = static_cast<Eigen::Index>(a), ib = static_cast<Eigen::Index>(b);
      out.first(ib, ia) = c1;
      out.second(ib, ia) = -c2;
    }
  }
  return out;
}

Complex pb_double(int sign, const DoubleFunction& F, const DoubleFunction& H, const DoubleElement& d, double h) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("pb_double: sign must be +1 or -1");
  const DoubleVector DF = fd_double_derivative(F, d, false, h);
  const DoubleVector DH = fd_double_derivative(H, d, false, h);
  const DoubleVector DpF = fd_double_derivative(F, d, true, h);
  const DoubleVector DpH = fd_double_derivative(H, d, true, h);
  return pairing2(DF, R_double(DH)) + static_cast<double>(sign) * pairing2(DpF, R_double(DpH));
}

namespace {

struct TransferredDerivatives {
  DoubleVector D1;       ///< (r_+ nabla1, r_- nabla1)
  DoubleVector D1p;      ///< (r_+ nabla1', r_- nabla1')
  DoubleVector D2;       ///< (Y, Y), Y = r_+ nabla2' - r_- nabla2
  DoubleVector D2p_conj; ///< P_star of g_* D_2' g_*^-1, i.e. P_star(nabla2, nabla2')
};

TransferredDerivatives transferred(const DerivativeBundle& b) {
  const ComplexMatrix Y = r_plus(b.nabla2p) - r_minus(b.nabla2);
  return {star_vector(b.nabla1), star_vector(b.nabla1p), {Y, Y}, project_star({b.nabla2, b.nabla2p})};
}

DoubleVector conjugate(const ComplexMatrix& a, const DoubleVector& V, const ComplexMatrix& b) {
  return {a * V.first * a.inverse(), b * V.second * b.inverse()};
}

}  // namespace

Complex transferred_pb_plus(const Observable& F, const Observable& H, const DeltaStarFactors& f) {
  const PhasePoint p = to_cotangent(f);
  const TransferredDerivatives tF = transferred(F.derivatives(p));
  const TransferredDerivatives tH = transferred(H.derivatives(p));
  // D_2 H lies in the isotropic diagonal subalgebra, so only the star component
  // of g_* D_2' F g_*^-1 contributes to the first pairing.
  return pairing2(tF.D2p_conj, tH.D2) - pairing2(conjugate(f.g, tF.D1p, f.g), tH.D1) + pairing2(tF.D1, tH.D2) -
         pairing2(tH.D1, tF.D2);
}

std::array<double, 4> double_derivative_residuals(const Observable& F, const DeltaStarFactors& f, double h) {
  const std::size_t n = static_cast<std::size_t>(f.g.rows());
  const ComplexMatrix gplus = f.star.gplus();
  const ComplexMatrix gminus = f.star.gminus();
  const ComplexMatrix gminus_inv = gminus.inverse();
  // F on G^delta x G^* as a function of (g, g_+, g_-), with L = g_+ g_-^-1.
  const auto value = [&](const ComplexMatrix& g, const ComplexMatrix& gp, const ComplexMatrix& gm) {
    return F.evaluate(PhasePoint{g, gp * gm.inverse()});
  };

  ComplexMatrix Y1 = zeros(n), Y1p = zeros(n), Y2 = zeros(n), Y2p = zeros(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const ComplexMatrix X = elementary(n, a, b);
      const auto ia = static_cast<Eigen::Index>(a), ib = static_cast<Eigen::Index>(b);
      const auto central = [&](auto&& fn) { return (fn(h) - fn(-h)) / (2.0 * h); };
      // Pairing with (X, X) resp. (r_+ X, r_- X) reduces to <Y, X> = Y_ba.
      Y1(ib, ia) = central([&](double t) { return value(mat_exp(t * X) * f.g, gplus, gminus); });
      Y1p(ib, ia) = central([&](double t) { return value(f.g * mat_exp(t * X), gplus, gminus); });
      Y2(ib, ia) = central([&](double t) {
        return value(f.g, mat_exp(t * r_plus(X)) * gplus, mat_exp(t * r_minus(X)) * gminus);
      });
      Y2p(ib, ia) = central([&](double t) {
        return value(f.g, gplus * mat_exp(t * r_plus(X)), gminus * mat_exp(t * r_minus(X)));
      });
    }
  }

  const DerivativeBundle bundle = F.derivatives(to_cotangent(f));
  const TransferredDerivatives t = transferred(bundle);
  const DoubleVector fd_D1 = star_vector(Y1);
  const DoubleVector fd_D1p = star_vector(Y1p);
  const DoubleVector fd_D2{Y2, Y2};
  const DoubleVector fd_D2p_conj = project_star({gplus * Y2p * gplus.inverse(), gminus * Y2p * gminus_inv});
  return {(fd_D1 - t.D1).norm(), (fd_D1p - t.D1p).norm(), (fd_D2 - t.D2).norm(),
          (fd_D2p_conj - t.D2p_conj).norm()};
}

}  // namespace biham::heisenberg
