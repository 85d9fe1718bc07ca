// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "biham/hierarchy.hpp"
#include "biham/verify.hpp"

using biham::verify::Config;
using biham::verify::Entry;
using biham::verify::Report;

namespace {

struct Run {
  Report report;
  double seconds;
};

std::map<std::pair<std::string, std::size_t>, Run> cache;

const Run& suite(const std::string& name, std::size_t n) {
  auto it = cache.find({name, n});
  if (it != cache.end()) return it->second;
  Config c;
  c.n = n;
  c.suite = name;
  const auto t0 = std::chrono::steady_clock::now();
  Report r = biham::verify::run(c);
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cache.emplace(std::make_pair(name, n), Run{std::move(r), dt}).first->second;
}

/// Collects the outcome of one criterion.
class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  void fail(const std::string& why) {
    ok_ = false;
    notes_.push_back(why);
  }

  void expect(bool cond, const std::string& why) {
    ++checked_;
    note(cond, why);
  }

  /// Entry `tag` of suite `name` at size n passes with tolerance <= tol and at least min_trials samples.
  void entry(const std::string& name, std::size_t n, const std::string& tag, double tol, long min_trials) {
    const Report& r = suite(name, n).report;
    for (const Entry& e : r.entries) {
      if (e.tag != tag) continue;
      std::ostringstream where;
      where << tag << " n=" << n;
      note(e.tolerance <= tol, where.str() + " tolerance looser than required");
      note(e.trials >= min_trials, where.str() + " too few trials");
      note(e.max_residual <= tol && e.pass, where.str() + " residual " + std::to_string(e.max_residual));
      worst_ = std::max(worst_, tol > 0 ? e.max_residual / tol : e.max_residual);
      ++checked_;
      return;
    }
    fail(tag + " missing for n=" + std::to_string(n));
  }

  bool report() const {
    std::cout << (ok_ ? "PASS" : "FAIL") << " criterion " << id_ << ": " << title_ << " (" << checked_
              << " checks, worst residual/tolerance " << worst_ << ")";
    for (const auto& n : notes_) std::cout << "; " << n;
    std::cout << '\n';
    return ok_;
  }

 private:
  void note(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }

  int id_;
  std::string title_;
  bool ok_ = true;
  double worst_ = 0.0;
  int checked_ = 0;
  std::vector<std::string> notes_;
};

std::string capture(const std::string& cmd, int& status) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return {};
  }
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t k = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), k);
  const int st = pclose(pipe);
  status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

}  // namespace

int main() {
  static_assert(biham::kSutherlandPotentialSign == -1);
  bool all = true;

  {
    Criterion c(1, "Jacobi certificates for PB1, PB2 and the pencil, n = 2, 3, all triples");
    for (std::size_t n : {2u, 3u}) {
      const long triples = static_cast<long>(8 * n * n * n * n * n * n);
      for (const char* tag : {"E8:jacobi", "E9:jacobi", "pencil:jacobi"}) c.entry("jacobi", n, tag, 0.0, triples);
    }
    c.expect(suite("jacobi", 2).seconds < 120.0, "n=2 sweep slower than 2 min");
    c.expect(suite("jacobi", 3).seconds < 1800.0, "n=3 sweep slower than 30 min");
    all &= c.report();
  }
  {
    Criterion c(2, "Lie-derivative identity, all generator pairs, n = 2, 3");
    for (std::size_t n : {2u, 3u}) c.entry("jacobi", n, "E11:W", 0.0, static_cast<long>(4 * n * n * n * n));
    all &= c.report();
  }
  {
    Criterion c(3, "bi-Hamiltonian recursion, 100 points, n = 2, 3, 4");
    for (std::size_t n : {2u, 3u, 4u}) c.entry("brackets", n, "E15", 1e-10, 100);
    all &= c.report();
  }
  {
    Criterion c(4, "exact flow: L constant, invariant derivatives, group property");
    for (std::size_t n : {2u, 3u, 4u}) {
      c.entry("hierarchy", n, "E17:L", 0.0, 100);
      c.entry("hierarchy", n, "E13", 1e-8, 100);
      c.entry("hierarchy", n, "E17:group", 1e-10, 100);
    }
    all &= c.report();
  }
  {
    Criterion c(5, "reduction consistency, 100 points, n = 2, 3, 4");
    for (std::size_t n : {2u, 3u, 4u})
      for (const char* tag : {"red1", "red2", "F14", "F15", "F25"}) c.entry("reduction", n, tag, 1e-10, 100);
    all &= c.report();
  }
  {
    Criterion c(6, "flow projection over z in [0, 0.5] with 2000 steps, isospectral drift, n = 2, 3");
    for (std::size_t n : {2u, 3u}) {
      c.expect(suite("hierarchy", n).report.config.steps == 2000, "steps differ from 2000");
      c.entry("hierarchy", n, "F26:projection", 1e-6, 1);
      c.entry("hierarchy", n, "isospectral", 1e-8, 1);
    }
    all &= c.report();
  }
  {
    Criterion c(7, "Sutherland identity with the frozen sign, 100 canonical points, n = 2, 3");
    for (std::size_t n : {2u, 3u}) {
      c.entry("hierarchy", n, "I7", 1e-12, 100);
      c.entry("hierarchy", n, "I7:sign", 0.0, 100);
    }
    all &= c.report();
  }
  {
    Criterion c(8, "real forms: reality, conjugation identities, slice closure, n = 2, 3");
    for (std::size_t n : {2u, 3u}) {
      c.entry("realforms", n, "R5-R6:Im", 1e-12, 100);
      c.entry("realforms", n, "R23-R24:Re", 1e-12, 100);
      c.entry("realforms", n, "R8", 1e-12, 100);
      c.entry("realforms", n, "R22", 1e-12, 100);
      c.entry("realforms", n, "R1:closure", 1e-10, 1);
      c.entry("realforms", n, "R18:closure", 1e-10, 1);
    }
    all &= c.report();
  }
  {
    Criterion c(9, "Heisenberg transfer within radius 0.2 of the identity, 100 points, n = 2, 3");
    for (std::size_t n : {2u, 3u}) {
      c.expect(suite("heisenberg", n).report.config.radius <= 0.2, "sampling radius above 0.2");
      c.entry("heisenberg", n, "+PB1", 1e-10, 100);
      c.entry("heisenberg", n, "PBpm", 1e-5, 100);
      for (const char* tag : {"G13", "G13*", "G14", "G15"}) c.entry("heisenberg", n, tag, 1e-6, 100);
      c.entry("heisenberg", n, "G8-G9:roundtrip", 1e-10, 100);
    }
    all &= c.report();
  }
  {
    Criterion c(10, "determinism: identical seeds give byte-identical reports");
    Config a;
    a.n = 3;
    a.seed = 42;
    a.trials = 20;
    Config b = a;
    b.threads = 1;
    a.threads = 4;
    c.expect(biham::verify::dump(biham::verify::run(a)) == biham::verify::dump(biham::verify::run(b)),
             "library reports differ");
    const std::string cmd = std::string(BIHAM_CLI_PATH) + " verify --suite all --n 2 --seed 42 --trials 20 2>/dev/null";
    int s1 = 0, s2 = 0;
    const std::string o1 = capture(cmd, s1), o2 = capture(cmd, s2);
    c.expect(s1 == 0 && s2 == 0, "CLI runs failed");
    c.expect(!o1.empty() && o1 == o2, "CLI reports differ");
    all &= c.report();
  }

  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << '\n';
  return all ? 0 : 1;
}
