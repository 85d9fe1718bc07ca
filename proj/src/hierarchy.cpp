#include "biham/hierarchy.hpp"

#include <sstream>
#include <stdexcept>

namespace biham {

namespace {

ComplexMatrix power(const ComplexMatrix& L, int m) {
  ComplexMatrix out = identity(static_cast<std::size_t>(L.rows()));
  for (int k = 0; k < m; ++k) out = out * L;
  return out;
}

struct State {
  Eigen::VectorXcd Q;
  ComplexMatrix L;
};

/// Within a step Q = Q_k exp(u) with u diagonal, so u' = (L^m)_0 and the Q part
/// is exact whenever (L^m)_0 is constant.
struct Stage {
  Eigen::VectorXcd u;
  ComplexMatrix L;
};

Stage rhs(const Eigen::VectorXcd& Qk, const Stage& s, int m, double tol_reg) {
  const DynamicalR R(diagonal_matrix(Qk.cwiseProduct(s.u.array().exp().matrix())), tol_reg);
  const ComplexMatrix Lm = power(s.L, m);
  return {Lm.diagonal(), commutator(R(Lm), s.L)};
}

Stage axpy(const Stage& s, Complex a, const Stage& k) { return {s.u + a * k.u, s.L + a * k.L}; }

State rk4_step(const State& s, int m, Complex dz, double tol_reg) {
  const Stage s0{Eigen::VectorXcd::Zero(s.Q.size()), s.L};
  const Stage k1 = rhs(s.Q, s0, m, tol_reg);
  const Stage k2 = rhs(s.Q, axpy(s0, 0.5 * dz, k1), m, tol_reg);
  const Stage k3 = rhs(s.Q, axpy(s0, 0.5 * dz, k2), m, tol_reg);
  const Stage k4 = rhs(s.Q, axpy(s0, dz, k3), m, tol_reg);
  const Eigen::VectorXcd u = (dz / 6.0) * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
  return {s.Q.cwiseProduct(u.array().exp().matrix()), s.L + (dz / 6.0) * (k1.L + 2.0 * k2.L + 2.0 * k3.L + k4.L)};
}

template <class OnSample>
State run(const ReducedPoint& start, int m, Complex z_end, int steps, double tol_reg, OnSample&& on_sample) {
  if (m < 1) throw std::invalid_argument("flow index m must be >= 1");
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  const Complex dz = z_end / static_cast<double>(steps);
  State s{start.Q.diagonal(), start.L};
  on_sample(Complex(0.0), s);
  for (int k = 0; k < steps; ++k) {
    const Complex z = dz * static_cast<double>(k + 1);
    try {
      s = rk4_step(s, m, dz, tol_reg);
      // the endpoint itself must be regular too
      (void)make_reduced_point(diagonal_matrix(s.Q), s.L, tol_reg);
    } catch (const NotRegular& e) {
      std::ostringstream os;
      os << "integrate_reduced: eigenvalue collision near z = (" << z.real() << "," << z.imag() << "): " << e.what();
      throw NotRegular(os.str());
    }
    on_sample(z, s);
  }
  return s;
}

}  // namespace

Complex free_hamiltonian(int m, const ComplexMatrix& L) {
  if (m < 1) throw std::invalid_argument("free Hamiltonian index must be >= 1");
  return power(L, m).trace() / static_cast<double>(m);
}

PhasePoint exact_flow(const PhasePoint& p, int m, Complex z) {
  if (m < 1) throw std::invalid_argument("flow index m must be >= 1");
  return {mat_exp(z * power(p.L, m)) * p.g, p.L};
}

std::vector<Complex> spectral_invariants(const ComplexMatrix& L) {
  std::vector<Complex> out;
  ComplexMatrix P = L;
  for (Eigen::Index k = 1; k <= L.rows(); ++k) {
    out.push_back(P.trace());
    P = P * L;
  }
  return out;
}

Trajectory integrate_reduced(const ReducedPoint& start, int m, Complex z_end, int steps, double tol_reg) {
  Trajectory t;
  t.samples.reserve(static_cast<std::size_t>(steps) + 1);
  run(start, m, z_end, steps, tol_reg, [&](Complex z, const State& s) {
    t.samples.push_back({z, ReducedPoint{diagonal_matrix(s.Q), s.L}, spectral_invariants(s.L)});
  });
  return t;
}

ReducedPoint flow_reduced(const ReducedPoint& start, int m, Complex z_end, int steps, double tol_reg) {
  const State s = run(start, m, z_end, steps, tol_reg, [](Complex, const State&) {});
  return {diagonal_matrix(s.Q), s.L};
}

ReducedPoint sutherland_embed(const CanonicalSutherlandPoint& c, double tol_reg) {
  const Eigen::Index n = c.q.size();
  if (c.p.size() != n || c.phi.rows() != n || c.phi.cols() != n)
    throw SizeMismatch("sutherland point: inconsistent sizes");
  for (Eigen::Index i = 0; i < n; ++i)
    if (c.phi(i, i) != 0.0) throw std::invalid_argument("sutherland point: phi must have zero diagonal");
  const ComplexMatrix Q = diagonal_matrix(c.q.array().exp().matrix());
  const DynamicalR R(Q, tol_reg);
  ComplexMatrix L = diagonal_matrix(c.p) + R(c.phi) + 0.5 * c.phi;
  return make_reduced_point(Q, std::move(L), tol_reg);
}

Complex sutherland_hamiltonian(const CanonicalSutherlandPoint& c) {
  const ReducedPoint rp = sutherland_embed(c);
  return 0.5 * (rp.L * rp.L).trace();
}

Complex sutherland_closed_form(const CanonicalSutherlandPoint& c, int sign) {
  Complex kinetic = 0.5 * c.p.array().square().sum();
  Complex potential = 0.0;
  const Eigen::Index n = c.q.size();
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      if (k == l) continue;
      const Complex s = std::sinh(0.5 * (c.q(k) - c.q(l)));
      potential += c.phi(k, l) * c.phi(l, k) / (s * s);
    }
  }
  return kinetic + static_cast<double>(sign) / 8.0 * potential;
}

double flow_commutation(const ReducedPoint& start, int m1, int m2, Complex z,
                        const std::vector<Observable>& observables, int steps, double tol_reg) {
  const ReducedPoint a = flow_reduced(flow_reduced(start, m2, z, steps, tol_reg), m1, z, steps, tol_reg);
  const ReducedPoint b = flow_reduced(flow_reduced(start, m1, z, steps, tol_reg), m2, z, steps, tol_reg);
  double worst = 0.0;
  for (const Observable& f : observables) {
    if (!f.is_invariant()) throw InvarianceViolated("flow_commutation compares invariant observables only");
    worst = std::max(worst, std::abs(f.evaluate(a.as_phase_point()) - f.evaluate(b.as_phase_point())));
  }
  return worst;
}

}  // namespace biham
