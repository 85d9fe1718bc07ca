#include "biham/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

#include "biham/brackets.hpp"
#include "biham/contour.hpp"
#include "biham/heisenberg.hpp"
#include "biham/hierarchy.hpp"
#include "biham/poisson_poly.hpp"
#include "biham/random.hpp"
#include "biham/realforms.hpp"
#include "biham/reduction.hpp"

namespace biham::verify {

void validate(const Config& c) {
  if (c.n < 2) throw std::invalid_argument("n must be >= 2");
  if (c.n > 8) throw std::invalid_argument("n must be <= 8");
  if (c.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (c.tol && !(*c.tol > 0.0 && *c.tol < 1.0)) throw std::invalid_argument("tol must lie in (0, 1)");
  if (!(c.tol_reg > 0.0 && c.tol_reg < 1.0)) throw std::invalid_argument("tol-reg must lie in (0, 1)");
  if (c.fd_step && !(*c.fd_step > 0.0 && *c.fd_step <= 1e-2)) throw std::invalid_argument("fd-step must lie in (0, 1e-2]");
  if (!(c.radius > 0.0 && c.radius < 1.0)) throw std::invalid_argument("radius must lie in (0, 1)");
  if (c.steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (c.slice != "hyp" && c.slice != "trig" && c.slice != "both")
    throw std::invalid_argument("slice must be hyp, trig or both");
  const auto& names = suite_names();
  if (c.suite != "all" && std::find(names.begin(), names.end(), c.suite) == names.end())
    throw std::invalid_argument("unknown suite: " + c.suite);
}

bool Report::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.pass; });
}

namespace {

using TrialValues = std::map<std::string, double>;

void put(TrialValues& v, const std::string& tag, double value) {
  if (std::isnan(value)) value = std::numeric_limits<double>::infinity();
  auto [it, inserted] = v.emplace(tag, value);
  if (!inserted) it->second = std::max(it->second, value);
}

double rel(Complex a, Complex b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

class Collector {
 public:
  explicit Collector(const Config& c) : config_(c) {}

  void define(const std::string& tag, const std::string& identity, double tol, bool exact = false) {
    Entry e;
    e.tag = tag;
    e.identity = identity;
    e.exact = exact;
    e.tolerance = (!exact && config_.tol) ? *config_.tol : tol;
    entries_.emplace(tag, e);
  }

  void absorb(const std::vector<TrialValues>& trials) {
    for (const auto& tv : trials) {
      for (const auto& [tag, value] : tv) {
        auto it = entries_.find(tag);
        if (it == entries_.end()) {
          define(tag, "domain error raised while sampling", 0.0, true);
          it = entries_.find(tag);
        }
        it->second.max_residual = std::max(it->second.max_residual, value);
        ++it->second.trials;
      }
    }
  }

  void set(const std::string& tag, double residual, long trials) {
    Entry& e = entries_.at(tag);
    e.max_residual = residual;
    e.trials = trials;
  }

  std::vector<Entry> finish() const {
    std::vector<Entry> out;
    for (auto [tag, e] : entries_) {
      e.pass = e.exact ? e.max_residual == 0.0 : e.max_residual <= e.tolerance;
      out.push_back(e);
    }
    return out;
  }

 private:
  const Config& config_;
  std::map<std::string, Entry> entries_;
};

/// Runs fn(t) for t in [0, count) on a worker pool; slot t holds trial t.
std::vector<TrialValues> run_trials(const Config& c, int count, const std::string& suite,
                                    const std::function<TrialValues(int)>& fn) {
  std::vector<TrialValues> out(static_cast<std::size_t>(count));
  unsigned threads = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(count));
  const auto work = [&](unsigned begin) {
    for (int t = static_cast<int>(begin); t < count; t += static_cast<int>(threads)) {
      try {
        out[static_cast<std::size_t>(t)] = fn(t);
      } catch (const std::exception&) {
        out[static_cast<std::size_t>(t)] = {{suite + ":errors", 1.0}};
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& th : pool) th.join();
  return out;
}

Sampler trial_sampler(const Config& c, std::uint64_t suite_stream, int t) {
  return Sampler(derive_seed(c.seed, suite_stream), static_cast<std::uint64_t>(t));
}

PhasePoint random_phase_point(Sampler& s, std::size_t n) { return {s.near_identity(n, 0.9), s.matrix(n, 1.0)}; }

ReducedPoint random_reduced_point(Sampler& s, std::size_t n, double tol_reg, double scale = 1.0) {
  return make_reduced_point(s.regular_diagonal(n, 0.3), s.matrix(n, scale), tol_reg);
}

double bundle_rel(const DerivativeBundle& a, const DerivativeBundle& b) {
  return bundle_distance(a, b) / (1.0 + bundle_norm(b));
}

// ---------------------------------------------------------------------------

void suite_jacobi(const Config& c, Collector& col) {
  using namespace poisson;
  col.define("E8:jacobi", "Jacobi residual polynomials of the first bracket, all generator triples", 0.0, true);
  col.define("E9:jacobi", "Jacobi residual polynomials of the second bracket, all generator triples", 0.0, true);
  col.define("pencil:jacobi", "Jacobi residual polynomials of x PB1 + y PB2 with symbolic x, y", 0.0, true);
  col.define("E11:W", "W[{a,b}_2] - {W a,b}_2 - {a,W b}_2 - {a,b}_1 over all generator pairs", 0.0, true);
  col.define("ref2-R7:table", "closed-form generator brackets versus symbolic expansion of the bracket formulas", 0.0,
             true);
  col.define("table:antisymmetry", "{a,b} + {b,a} over all generator pairs, both brackets", 0.0, true);
  col.define("ref2-R7:numeric", "closed-form generator brackets versus pb1/pb2 at random points (relative)", 1e-12);

  std::ofstream cert;
  if (c.certificate) {
    cert.open(*c.certificate);
    if (!cert) throw std::invalid_argument("cannot open certificate file: " + *c.certificate);
  }
  const std::array<std::pair<BracketChoice, const char*>, 3> kinds{
      {{BracketChoice::PB1, "E8:jacobi"}, {BracketChoice::PB2, "E9:jacobi"}, {BracketChoice::Pencil, "pencil:jacobi"}}};
  for (const auto& [kind, tag] : kinds) {
    const JacobiReport r = jacobi_sweep(c.n, kind, c.threads);
    col.set(tag, static_cast<double>(r.nonzero), static_cast<long>(r.triples));
    if (cert) write_certificate(cert, r);
  }

  const StructureTable t1(c.n, BracketChoice::PB1), t2(c.n, BracketChoice::PB2);
  const Variables V(c.n);
  const auto gens = V.generators();
  long w_bad = 0, table_bad = 0, anti_bad = 0, pairs = 0;
  for (const auto& a : gens) {
    for (const auto& b : gens) {
      ++pairs;
      if (!w_identity_residual(t1, t2, a, b).is_zero()) ++w_bad;
      const auto ia = V.index(a), ib = V.index(b);
      for (const StructureTable* t : {&t1, &t2}) {
        if (!(t->operator()(ia, ib) + t->operator()(ib, ia)).is_zero()) ++anti_bad;
        if (!(t->operator()(ia, ib) == symbolic_bracket(t->kind(), a, b, c.n))) ++table_bad;
      }
    }
  }
  col.set("E11:W", static_cast<double>(w_bad), pairs);
  col.set("ref2-R7:table", static_cast<double>(table_bad), 2 * pairs);
  col.set("table:antisymmetry", static_cast<double>(anti_bad), 2 * pairs);

  col.absorb(run_trials(c, std::min(c.trials, 20), "jacobi", [&](int t) {
    Sampler s = trial_sampler(c, 1, t);
    const PhasePoint p = random_phase_point(s, c.n);
    const auto values = point_values(p);
    TrialValues v;
    for (const auto& a : gens)
      for (const auto& b : gens) {
        const Observable A = generator_observable(a), B = generator_observable(b);
        put(v, "ref2-R7:numeric", rel(t1(V.index(a), V.index(b)).evaluate(values), pb1(A, B, p)));
        put(v, "ref2-R7:numeric", rel(t2(V.index(a), V.index(b)).evaluate(values), pb2(A, B, p)));
      }
    return v;
  }));
}

// ---------------------------------------------------------------------------

void suite_brackets(const Config& c, Collector& col) {
  col.define("E8:antisymmetry", "pb1(F,H) + pb1(H,F) relative to 1 + |dF||dH|(1 + |L|)", 1e-12);
  col.define("E9:antisymmetry", "pb2(F,H) + pb2(H,F) relative to 1 + |dF||dH|(1 + |L|)", 1e-12);
  col.define("Leibniz", "pb_i(FG,H) - F pb_i(G,H) - G pb_i(F,H) (relative)", 1e-10);
  col.define("F1+3", "pb2 versus the invariant form on invariant pairs (relative)", 1e-10);
  col.define("E15", "pb2(F,H_m) - pb1(F,H_{m+1}), m = 1..4 (relative)", 1e-10);
  col.define("E11", "W-derivative bracket versus pb1 on coordinate pairs (relative)", 1e-10);
  col.define("E5:fd", "analytic versus central-difference derivative bundles (relative)", 1e-8);
  col.define("E6", "nabla1' - g^-1 nabla1 g (relative)", 1e-12);
  col.define("F1+2", "nabla1' - (nabla1 + nabla2 - nabla2') for invariants (relative)", 1e-10);
  col.define("equivar", "derivatives of invariants at the conjugated point versus conjugated derivatives (relative)",
             1e-9);
  col.define("act1", "invariant observables under simultaneous conjugation (relative)", 1e-10);

  const std::vector<Observable> obs = builtin_observables(c.n);
  const std::vector<Observable> inv = builtin_invariants();
  std::vector<Observable> coords;
  for (std::size_t i = 0; i < c.n; ++i)
    for (std::size_t j = 0; j < c.n; ++j) {
      coords.push_back(Observable::g_entry(i, j));
      coords.push_back(Observable::l_entry(i, j));
    }
  std::vector<Observable> ham;
  for (int m = 1; m <= 5; ++m) ham.push_back(free_hamiltonian_observable(m));

  col.absorb(run_trials(c, c.trials, "brackets", [&](int t) {
    Sampler s = trial_sampler(c, 2, t);
    const PhasePoint p = random_phase_point(s, c.n);
    TrialValues v;
    std::vector<DerivativeBundle> bundles;
    for (const auto& F : obs) bundles.push_back(F.derivatives(p));
    for (std::size_t a = 0; a < obs.size(); ++a)
      for (std::size_t b = a; b < obs.size(); ++b) {
        const double scale = 1.0 + bundle_norm(bundles[a]) * bundle_norm(bundles[b]) * (1.0 + p.L.norm());
        put(v, "E8:antisymmetry", std::abs(pb1(obs[a], obs[b], p) + pb1(obs[b], obs[a], p)) / scale);
        put(v, "E9:antisymmetry", std::abs(pb2(obs[a], obs[b], p) + pb2(obs[b], obs[a], p)) / scale);
      }
    for (int k = 0; k < 6; ++k) {
      const Observable& F = obs[s.next() % obs.size()];
      const Observable& G = obs[s.next() % obs.size()];
      const Observable& H = obs[s.next() % obs.size()];
      const Complex f = F.evaluate(p), g = G.evaluate(p);
      put(v, "Leibniz", rel(f * pb1(G, H, p) + g * pb1(F, H, p), pb1(F * G, H, p)));
      put(v, "Leibniz", rel(f * pb2(G, H, p) + g * pb2(F, H, p), pb2(F * G, H, p)));
    }
    for (const auto& F : inv)
      for (const auto& H : inv) put(v, "F1+3", rel(pb2_invariant(F, H, p), pb2(F, H, p)));
    for (const auto& F : obs)
      for (int m = 1; m <= 4; ++m) {
        const Complex b1 = pb1(F, ham[static_cast<std::size_t>(m)], p);
        put(v, "E15", rel(pb2(F, ham[static_cast<std::size_t>(m - 1)], p), b1));
      }
    if (t < 10)
      for (const auto& F : coords)
        for (const auto& H : coords) put(v, "E11", rel(lie_derivative_bracket(F, H, p), pb1(F, H, p)));
    const double h = c.fd_step ? *c.fd_step : default_fd_step(p);
    const ComplexMatrix ginv = p.g.inverse();
    for (const auto& F : obs) {
      const DerivativeBundle an = F.derivatives(p);
      put(v, "E5:fd", bundle_rel(fd_derivatives(F, p, h), an));
      put(v, "E6", (an.nabla1p - ginv * an.nabla1 * p.g).norm() / (1.0 + an.nabla1.norm()));
    }
    const ComplexMatrix eta = s.near_identity(c.n, 0.5);
    const ComplexMatrix eta_inv = eta.inverse();
    const PhasePoint q{eta * p.g * eta_inv, eta * p.L * eta_inv};
    for (const auto& F : inv) {
      const DerivativeBundle an = F.derivatives(p);
      put(v, "F1+2", invariant_identity_check(F, p) / (1.0 + bundle_norm(an)));
      const DerivativeBundle moved = F.derivatives(q);
      const double dev = (moved.nabla1 - eta * an.nabla1 * eta_inv).norm() +
                         (moved.nabla1p - eta * an.nabla1p * eta_inv).norm() +
                         (moved.d2 - eta * an.d2 * eta_inv).norm();
      put(v, "equivar", dev / (1.0 + bundle_norm(an)));
      put(v, "act1", check_invariance(F, p, 3, derive_seed(c.seed, 1000 + static_cast<std::uint64_t>(t))) /
                         (1.0 + std::abs(F.evaluate(p))));
    }
    return v;
  }));
}

// ---------------------------------------------------------------------------

ComplexMatrix random_regular_group_element(Sampler& s, std::size_t n) {
  const ComplexMatrix V = s.near_identity(n, 0.5);
  return V * s.regular_diagonal(n, 0.3) * V.inverse();
}

void suite_reduction(const Config& c, Collector& col) {
  col.define("red1", "pb1 at (Q,L) versus the reduced first bracket (relative)", 1e-10);
  col.define("red2", "pb2 at (Q,L) versus the reduced second bracket (relative)", 1e-10);
  col.define("F9:projected", "pb_i at a regular point versus reduced_pb_i at its projection (relative)", 1e-10);
  col.define("recon", "invariant values at a point versus at its projection (relative)", 1e-10);
  col.define("F14", "diagonal part of [L, d2 f] (relative)", 1e-12);
  col.define("F15", "nabla1 F - nabla1 f + (R(Q) + 1/2)[L, d2 f]", 1e-10);
  col.define("F25", "reduced_pb1(f,h_{m+1}), reduced_pb2(f,h_m) and the reduced flow derivative (relative)", 1e-10);
  col.define("gauge", "reduced brackets under diagonal conjugation of L (relative)", 1e-10);

  std::vector<ReducedObservable> inv;
  for (const auto& F : builtin_invariants()) inv.push_back(restrict_observable(F));
  std::vector<ReducedObservable> ham;
  for (int m = 1; m <= 4; ++m) ham.push_back(restrict_observable(free_hamiltonian_observable(m)));

  col.absorb(run_trials(c, c.trials, "reduction", [&](int t) {
    Sampler s = trial_sampler(c, 3, t);
    const ReducedPoint rp = random_reduced_point(s, c.n, c.tol_reg);
    const PhasePoint p = rp.as_phase_point();
    Eigen::VectorXcd dvec(static_cast<Eigen::Index>(c.n));
    for (Eigen::Index i = 0; i < dvec.size(); ++i) dvec(i) = std::polar(s.uniform(0.5, 2.0), s.uniform(-3.0, 3.0));
    const ComplexMatrix D = diagonal_matrix(dvec);
    const ReducedPoint gauged = make_reduced_point(rp.Q, D * rp.L * D.inverse(), c.tol_reg);
    const PhasePoint x{random_regular_group_element(s, c.n), s.matrix(c.n, 1.0)};
    const Projection pr = project(x, c.tol_reg);
    TrialValues v;
    for (const auto& f : inv) {
      for (const auto& h : inv) {
        const Complex r1 = reduced_pb1(f, h, rp), r2 = reduced_pb2(f, h, rp);
        put(v, "red1", rel(r1, pb1(f.source(), h.source(), p)));
        put(v, "red2", rel(r2, pb2(f.source(), h.source(), p)));
        put(v, "gauge", rel(reduced_pb1(f, h, gauged), r1));
        put(v, "gauge", rel(reduced_pb2(f, h, gauged), r2));
        put(v, "F9:projected", rel(reduced_pb1(f, h, pr.point), pb1(f.source(), h.source(), x)));
        put(v, "F9:projected", rel(reduced_pb2(f, h, pr.point), pb2(f.source(), h.source(), x)));
      }
      put(v, "recon", rel(f.evaluate(pr.point), f.source().evaluate(x)));
      const DiagonalGradientResiduals l = diagonal_gradient_residuals(f.source(), rp);
      const ReducedDerivatives d = f.derivatives(rp);
      put(v, "F14", l.diag_commutator / (1.0 + rp.L.norm() * d.d2.norm()));
      put(v, "F15", l.gradient_relation);
      for (int m = 1; m <= 3; ++m) {
        const Complex direct = reduced_flow_derivative(f, m, rp);
        put(v, "F25", rel(reduced_pb1(f, ham[static_cast<std::size_t>(m)], rp), direct));
        put(v, "F25", rel(reduced_pb2(f, ham[static_cast<std::size_t>(m - 1)], rp), direct));
      }
    }
    return v;
  }));
}

// ---------------------------------------------------------------------------

std::vector<Observable> words_up_to(std::size_t len) {
  std::vector<Observable> out;
  std::vector<std::string> layer{""};
  for (std::size_t k = 1; k <= len; ++k) {
    std::vector<std::string> next;
    for (const auto& w : layer)
      for (char ch : std::string("gGl")) next.push_back(w + ch);
    for (const auto& w : next) out.push_back(Observable::trace_word(w));
    layer = std::move(next);
  }
  return out;
}

double eigen_drift(const ComplexMatrix& A, const ComplexMatrix& B) {
  const Eigen::VectorXcd a = Eigen::ComplexEigenSolver<ComplexMatrix>(A, false).eigenvalues();
  const Eigen::VectorXcd b = Eigen::ComplexEigenSolver<ComplexMatrix>(B, false).eigenvalues();
  double worst = 0.0;
  for (const auto* pair : {&a, &b}) {
    const Eigen::VectorXcd& x = *pair;
    const Eigen::VectorXcd& y = pair == &a ? b : a;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < y.size(); ++j) best = std::min(best, std::abs(x(i) - y(j)));
      worst = std::max(worst, best);
    }
  }
  return worst;
}

CanonicalSutherlandPoint random_canonical(Sampler& s, std::size_t n) {
  const Eigen::VectorXd re = s.separated_reals(n, 2.0, 0.4);
  CanonicalSutherlandPoint c{Eigen::VectorXcd(static_cast<Eigen::Index>(n)),
                             Eigen::VectorXcd(static_cast<Eigen::Index>(n)), s.matrix(n, 1.0)};
  for (Eigen::Index i = 0; i < c.q.size(); ++i) {
    c.q(i) = Complex(re(i), s.uniform(-0.5, 0.5));
    c.p(i) = s.complex_in_box(1.0);
    c.phi(i, i) = 0.0;
  }
  return c;
}

void suite_hierarchy(const Config& c, Collector& col) {
  col.define("E17:L", "L along the exact flow minus L at z = 0", 0.0, true);
  col.define("E17:group", "exact flow at z1 + z2 versus composition (relative)", 1e-10);
  col.define("E13", "d/dz of invariants along the exact flow versus pb2(F,H_m) and pb1(F,H_{m+1}) (relative)", 1e-8);
  col.define("F26:projection", "reduced integration versus projected exact flow, trace words of length <= 4 (relative)",
             1e-6);
  col.define("isospectral", "eigenvalue drift of L along the reduced flow", 1e-8);
  col.define("commute", "flow commutation of Phi_1 and Phi_2 on tr(QL), tr(Q)", 1e-6);
  col.define("commute:spectral", "flow commutation of Phi_1 and Phi_2 on tr(L^k)", 1e-10);
  col.define("I7", "tr(L^2)/2 versus the closed spin Sutherland form with the frozen sign (relative)", 1e-12);
  col.define("I7:sign", "numerically preferred potential sign differs from the frozen constant", 0.0, true);

  const std::vector<Observable> inv = builtin_invariants();
  const std::vector<Observable> words = words_up_to(4);
  std::vector<Observable> ham;
  for (int m = 1; m <= 5; ++m) ham.push_back(free_hamiltonian_observable(m));
  const std::vector<Observable> mixed{Observable::trace_word("gl"), Observable::trace_word("g")};
  std::vector<Observable> spectral;
  for (std::size_t k = 1; k <= c.n; ++k) spectral.push_back(Observable::trace_word(std::string(k, 'l')));
  const int trajectories = std::max(1, c.trials / 10);

  col.absorb(run_trials(c, c.trials, "hierarchy", [&](int t) {
    Sampler s = trial_sampler(c, 4, t);
    TrialValues v;
    const PhasePoint p = random_phase_point(s, c.n);
    const int m = 1 + static_cast<int>(s.next() % 4);
    const Complex z1 = s.complex_in_box(0.3), z2 = s.complex_in_box(0.3);
    const PhasePoint a = exact_flow(p, m, z1 + z2);
    const PhasePoint b = exact_flow(exact_flow(p, m, z1), m, z2);
    put(v, "E17:group", (a.g - b.g).norm() / (1.0 + a.g.norm()));
    put(v, "E17:L", (a.L - p.L).norm() + (b.L - p.L).norm());
    for (const auto& F : inv) {
      const Complex d = contour_derivative([&](Complex z) { return F.evaluate(exact_flow(p, m, z)); }, z1, 0.1);
      const PhasePoint at = exact_flow(p, m, z1);
      put(v, "E13", rel(pb2(F, ham[static_cast<std::size_t>(m - 1)], at), d));
      put(v, "E13", rel(pb1(F, ham[static_cast<std::size_t>(m)], at), d));
    }
    const CanonicalSutherlandPoint cp = random_canonical(s, c.n);
    const Complex value = sutherland_hamiltonian(cp);
    put(v, "I7", rel(sutherland_closed_form(cp, kSutherlandPotentialSign), value));
    const int preferred = rel(sutherland_closed_form(cp, -1), value) < rel(sutherland_closed_form(cp, 1), value) ? -1 : 1;
    put(v, "I7:sign", preferred == kSutherlandPotentialSign ? 0.0 : 1.0);

    if (t < trajectories) {
      const ReducedPoint rp = make_reduced_point(s.regular_diagonal(c.n, 0.5), s.matrix(c.n, 0.5), c.tol_reg);
      const int mm = 1 + t % 2;
      const Complex z_end = t % 4 < 2 ? Complex(0.5, 0.0) : std::polar(0.5, 0.25 * M_PI);
      const Trajectory tr = integrate_reduced(rp, mm, z_end, c.steps, c.tol_reg);
      const std::size_t stride = std::max<std::size_t>(1, tr.samples.size() / 10);
      for (std::size_t k = 0; k < tr.samples.size(); k += stride) {
        const TrajectorySample& smp = tr.samples[k];
        const Projection pr = project(exact_flow(rp.as_phase_point(), mm, smp.z), c.tol_reg);
        for (const auto& w : words)
          put(v, "F26:projection", rel(w.evaluate(smp.point.as_phase_point()), w.evaluate(pr.point.as_phase_point())));
        put(v, "isospectral", eigen_drift(smp.point.L, rp.L));
      }
      put(v, "commute", flow_commutation(rp, 1, 2, 0.2, mixed, c.steps, c.tol_reg));
      put(v, "commute:spectral", flow_commutation(rp, 1, 2, 0.2, spectral, c.steps, c.tol_reg));
    }
    return v;
  }));
}

// ---------------------------------------------------------------------------

void suite_realforms(const Config& c, Collector& col) {
  using namespace realforms;
  const bool hyp = c.slice != "trig", trig = c.slice != "hyp";
  const std::vector<std::string> words{"l", "ll", "lll", "gl", "gll", "Gl", "glGl", "ggl"};
  std::vector<ReducedObservable> fh, ft;
  for (const auto& w : words) {
    fh.push_back(restrict_observable(real_trace_word(w, Slice::Hyperbolic)));
    ft.push_back(restrict_observable(real_trace_word(w, Slice::Trigonometric)));
  }
  if (hyp) {
    col.define("R3", "symmetry classes of hyperbolic slice derivatives (relative)", 1e-12);
    col.define("R5-R6:Im", "imaginary part of hyperbolic brackets (relative)", 1e-12);
    col.define("R5-R6:formula", "real-form bracket formula versus the reduced bracket (relative)", 1e-12);
    col.define("R8", "R(Q) X^dag + (R(Q) X)^dag on the hyperbolic slice", 1e-12);
    col.define("R1:closure", "Hermiticity of L along reduced flows with real z", 1e-10);
  }
  if (trig) {
    col.define("R20", "symmetry classes of trigonometric slice derivatives (relative)", 1e-12);
    col.define("R23-R24:Re", "real part of trigonometric brackets (relative)", 1e-12);
    col.define("R23-R24:formula", "imaginary-form bracket formula versus the reduced bracket (relative)", 1e-12);
    col.define("R22", "R(Q) X^dag - (R(Q) X)^dag on the trigonometric slice", 1e-12);
    col.define("R18:closure", "Hermiticity of L along reduced flows with imaginary z", 1e-10);
  }
  const int trajectories = std::max(1, c.trials / 10);

  col.absorb(run_trials(c, c.trials, "realforms", [&](int t) {
    Sampler s = trial_sampler(c, 5, t);
    const Eigen::VectorXd q = s.separated_reals(c.n, 1.5, 0.3);
    const ComplexMatrix H = s.hermitian(c.n, 1.0);
    const ComplexMatrix X = s.matrix(c.n, 1.0);
    TrialValues v;
    const auto symmetry = [](const ComplexMatrix& diag_real, const ComplexMatrix& herm, double sign) {
      const double a = diag_real.imag().norm() + off_diagonal_part(diag_real).norm();
      const double b = (herm - sign * herm.adjoint()).norm();
      return (a + b) / (1.0 + diag_real.norm() + herm.norm());
    };
    if (hyp) {
      const HyperbolicPoint hp = make_hyperbolic_point(q, H);
      const ReducedPoint rp = hp.reduced();
      for (const auto& f : fh) {
        const RealDerivatives d = hyperbolic_derivatives(f, hp);
        put(v, "R3", symmetry(d.nabla1, d.d2, 1.0));
      }
      for (int i = 1; i <= 2; ++i)
        for (const auto& f : fh)
          for (const auto& h : fh) {
            const Complex val = hyp_pb(i, f, h, hp);
            const Complex red = i == 1 ? reduced_pb1(f, h, rp) : reduced_pb2(f, h, rp);
            put(v, "R5-R6:Im", std::abs(val.imag()) / (1.0 + std::abs(val)));
            put(v, "R5-R6:formula", rel(hyp_pb_real_formula(i, f, h, hp), red));
          }
      put(v, "R8", conjugation_identity_check(Slice::Hyperbolic, rp.Q, X) / (1.0 + X.norm()));
      if (t < trajectories) {
        const Trajectory tr = integrate_reduced(rp, 1 + t % 2, 0.3, c.steps, c.tol_reg);
        for (const auto& smp : tr.samples) put(v, "R1:closure", (smp.point.L - smp.point.L.adjoint()).norm());
      }
    }
    if (trig) {
      const TrigPoint tp = make_trig_point(q, H);
      const ReducedPoint rp = tp.reduced();
      for (const auto& f : ft) {
        const RealDerivatives d = trig_derivatives(f, tp);
        put(v, "R20", symmetry(d.D1, d.D2, -1.0));
      }
      for (int i = 1; i <= 2; ++i)
        for (const auto& f : ft)
          for (const auto& h : ft) {
            const Complex val = trig_pb(i, f, h, tp);
            const Complex red = i == 1 ? reduced_pb1(f, h, rp) : reduced_pb2(f, h, rp);
            put(v, "R23-R24:Re", std::abs(val.real()) / (1.0 + std::abs(val)));
            put(v, "R23-R24:formula", rel(trig_pb_imag_formula(i, f, h, tp), red));
          }
      put(v, "R22", conjugation_identity_check(Slice::Trigonometric, rp.Q, X) / (1.0 + X.norm()));
      if (t < trajectories) {
        const Trajectory tr = integrate_reduced(rp, 1 + t % 2, Complex(0.0, 0.3), c.steps, c.tol_reg);
        for (const auto& smp : tr.samples) put(v, "R18:closure", (smp.point.L - smp.point.L.adjoint()).norm());
      }
    }
    return v;
  }));
}

// ---------------------------------------------------------------------------

void suite_heisenberg(const Config& c, Collector& col) {
  using namespace heisenberg;
  col.define("G2-G3:isotropy", "pairing on diagonal-type and star-type vectors (relative)", 1e-12);
  col.define("G2-G3:decomposition", "P_delta + P_star - id on random double vectors (relative)", 1e-15);
  col.define("G8-G9:roundtrip", "factorize / recompose round trips in both directions", 1e-10);
  col.define("+PB1", "transferred plus bracket versus pb2 at the mapped point (relative)", 1e-10);
  col.define("PBpm", "finite-difference plus bracket of pullbacks versus pb2 (relative)", 1e-5);
  col.define("G13", "left G^delta derivative identity", 1e-6);
  col.define("G13*", "right G^delta derivative identity", 1e-6);
  col.define("G14", "left G^* derivative identity", 1e-6);
  col.define("G15", "right G^* derivative identity after the star projection", 1e-6);

  const std::vector<Observable> obs = builtin_observables(c.n);
  const double h = c.fd_step ? *c.fd_step : 1e-5;

  col.absorb(run_trials(c, c.trials, "heisenberg", [&](int t) {
    Sampler s = trial_sampler(c, 6, t);
    TrialValues v;
    const ComplexMatrix X = s.matrix(c.n, 1.0), Y = s.matrix(c.n, 1.0);
    const double xy = 1.0 + X.norm() * Y.norm();
    put(v, "G2-G3:isotropy", std::abs(pairing2({X, X}, {Y, Y})) / xy);
    put(v, "G2-G3:isotropy", std::abs(pairing2(star_vector(X), star_vector(Y))) / xy);
    const DoubleVector V{X, Y};
    const DoubleVector back = project_delta(V) + project_star(V);
    put(v, "G2-G3:decomposition", (back - V).norm() / V.norm());

    const DoubleElement d{s.near_identity(c.n, c.radius), s.near_identity(c.n, c.radius)};
    const DeltaStarFactors f = factorize(d);
    const DoubleElement r = recompose(f);
    double rt = (r.g1 - d.g1).norm() + (r.g2 - d.g2).norm();
    StarFactors star{identity(c.n) + strict_upper_part(s.matrix(c.n, c.radius)),
                     identity(c.n) + diagonal_part(s.matrix(c.n, c.radius)),
                     identity(c.n) + strict_lower_part(s.matrix(c.n, c.radius))};
    const DeltaStarFactors e{s.near_identity(c.n, c.radius), star};
    const DeltaStarFactors e2 = factorize(recompose(e));
    rt = std::max(rt, (e2.g - e.g).norm() + (e2.star.upper - star.upper).norm() + (e2.star.diag - star.diag).norm() +
                          (e2.star.lower - star.lower).norm());
    put(v, "G8-G9:roundtrip", rt);

    const PhasePoint p = to_cotangent(f);
    for (std::size_t a = 0; a < obs.size(); ++a)
      for (std::size_t b = a + 1; b < obs.size(); ++b)
        put(v, "+PB1", rel(transferred_pb_plus(obs[a], obs[b], f), pb2(obs[a], obs[b], p)));
    for (int k = 0; k < 3; ++k) {
      const Observable& F = obs[s.next() % obs.size()];
      const Observable& H = obs[s.next() % obs.size()];
      put(v, "PBpm", rel(pb_double(1, pullback(F), pullback(H), d, h), pb2(F, H, p)));
    }
    for (const auto& F : obs) {
      const auto res = double_derivative_residuals(F, f, h);
      put(v, "G13", res[0]);
      put(v, "G13*", res[1]);
      put(v, "G14", res[2]);
      put(v, "G15", res[3]);
    }
    return v;
  }));
}

}  // namespace

Report run(const Config& c) {
  validate(c);
  Collector col(c);
  const auto selected = [&](const std::string& s) { return c.suite == "all" || c.suite == s; };
  if (selected("jacobi")) suite_jacobi(c, col);
  if (selected("brackets")) suite_brackets(c, col);
  if (selected("reduction")) suite_reduction(c, col);
  if (selected("hierarchy")) suite_hierarchy(c, col);
  if (selected("realforms")) suite_realforms(c, col);
  if (selected("heisenberg")) suite_heisenberg(c, col);
  return {c, col.finish()};
}

nlohmann::ordered_json to_json(const Report& r) {
  using nlohmann::ordered_json;
  const Config& c = r.config;
  ordered_json params;
  params["tol_reg"] = c.tol_reg;
  params["tol_override"] = c.tol ? ordered_json(*c.tol) : ordered_json(nullptr);
  params["fd_step"] = c.fd_step ? ordered_json(*c.fd_step) : ordered_json("default");
  params["steps"] = c.steps;
  params["radius"] = c.radius;
  params["slice"] = c.slice;
  ordered_json entries = ordered_json::array();
  for (const Entry& e : r.entries) {
    ordered_json j;
    j["tag"] = e.tag;
    j["identity"] = e.identity;
    if (std::isfinite(e.max_residual))
      j["max_residual"] = e.max_residual;
    else
      j["max_residual"] = "inf";
    j["tolerance"] = e.tolerance;
    j["exact"] = e.exact;
    j["trials"] = e.trials;
    j["pass"] = e.pass;
    entries.push_back(std::move(j));
  }
  ordered_json out;
  out["suite"] = c.suite;
  out["n"] = c.n;
  out["seed"] = c.seed;
  out["trials"] = c.trials;
  out["parameters"] = std::move(params);
  out["pass"] = r.pass();
  out["entries"] = std::move(entries);
  return out;
}

std::string dump(const Report& r) { return to_json(r).dump(2) + "\n"; }

}  // namespace biham::verify
