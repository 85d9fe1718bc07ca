#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int status;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + BIHAM_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t k = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), k);
  const int st = pclose(pipe);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("biham_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

fs::path write(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("verify jacobi for n = 2 writes an all-zero certificate") {
  const fs::path cert = scratch("cert.txt");
  const Result r = run("verify --suite jacobi --n 2 --certificate " + cert.string());
  CHECK(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["pass"] == true);
  std::ifstream in(cert);
  std::string line;
  int lines = 0, zero = 0;
  while (std::getline(in, line)) {
    ++lines;
    if (line.size() >= 4 && line.substr(line.size() - 4) == "ZERO") ++zero;
  }
  CHECK(lines == 3 * 512);
  CHECK(zero == lines);
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(run("verify --suite jacobi --n 1").status == 2);
  CHECK(run("verify --suite nosuch").status == 2);
  CHECK(run("verify --trials 0").status == 2);
  CHECK(run("verify --tol 2").status == 2);
  CHECK(run("frobnicate").status == 2);
  const fs::path init = write("diag.json", R"({"Q": [1, 2], "L": [[1, 0], [0, -1]]})");
  CHECK(run("evolve --m 1 --z-end 0.1,0 --steps 0 --initial " + init.string()).status == 2);
  CHECK(run("evolve --m 1 --z-end 0.1,0 --steps 10").status == 2);
}

TEST_CASE("verify reports are deterministic") {
  const std::string args = "verify --suite brackets --n 3 --seed 42 --trials 5";
  const Result a = run(args), b = run(args), c = run(args + " --threads 1");
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  const json j = json::parse(a.out);
  CHECK(j["seed"] == 42);
  CHECK(j["n"] == 3);
  for (const auto& e : j["entries"]) {
    CHECK(e.contains("tag"));
    CHECK(e.contains("max_residual"));
    CHECK(e.contains("trials"));
  }
}

TEST_CASE("configuration precedence is flag over environment over file") {
  const fs::path cfg = write("cfg.json", R"({"trials": 2, "seed": 9, "suite": "brackets", "n": 2})");
  const std::string base = "verify --config " + cfg.string();
  const json file_only = json::parse(run(base).out);
  CHECK(file_only["trials"] == 2);
  CHECK(file_only["seed"] == 9);
  const json env = json::parse(run(base, "BIHAM_TRIALS=3").out);
  CHECK(env["trials"] == 3);
  CHECK(env["seed"] == 9);
  const json flag = json::parse(run(base + " --trials 4", "BIHAM_TRIALS=3").out);
  CHECK(flag["trials"] == 4);
  const json env_cfg = json::parse(run("verify", "BIHAM_CONFIG=" + cfg.string()).out);
  CHECK(env_cfg["seed"] == 9);
}

TEST_CASE("text format") {
  const Result r = run("verify --suite jacobi --n 2 --format text");
  CHECK(r.status == 0);
  CHECK(r.out.find("E9:jacobi") != std::string::npos);
}

TEST_CASE("evolve with diagonal L keeps L frozen") {
  const fs::path init = write("diag2.json", R"({"Q": [1, 2], "L": [[1, 0], [0, -1]]})");
  const fs::path out = scratch("traj.jsonl");
  const Result r = run("evolve --m 1 --z-end 0.3,0 --steps 30 --initial " + init.string() + " --out " + out.string());
  REQUIRE(r.status == 0);
  const json summary = json::parse(r.out);
  CHECK(summary["samples"] == 31);
  CHECK(summary["invariant_drift"] == 0.0);
  std::ifstream in(out);
  std::string line, last;
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    last = line;
  }
  CHECK(lines == 31);
  const json rec = json::parse(last);
  CHECK(rec.contains("z"));
  CHECK(rec.contains("invariants"));
  CHECK(rec["Q"][0][0].get<double>() == doctest::Approx(std::exp(0.3)).epsilon(1e-14));
  CHECK(rec["L"][1][1][0] == -1.0);
  CHECK(rec["L"][0][1][0] == 0.0);
}

TEST_CASE("evolve on the hyperbolic slice reports Hermiticity drift") {
  const fs::path init =
      write("herm.json", R"({"Q": [0.5, 1.0, 2.0], "L": [[1, [0.2, 0.3], 0], [[0.2, -0.3], -1, 0.5], [0, 0.5, 0.3]]})");
  const Result r = run("evolve --m 2 --z-end 0.2,0 --steps 400 --initial " + init.string() + " --out " +
                       scratch("h.jsonl").string());
  REQUIRE(r.status == 0);
  const json summary = json::parse(r.out);
  CHECK(summary["hermiticity_drift"].get<double>() < 1e-10);
  CHECK(summary["invariant_drift"].get<double>() < 1e-8);
}

TEST_CASE("evolve reports collisions with exit 1") {
  const fs::path init = write("coll.json", R"({"Q": [1, 2], "L": [[1, 0], [0, -1]]})");
  CHECK(run("evolve --m 1 --z-end 1,0 --steps 100 --tol-reg 0.05 --initial " + init.string() + " --out " +
            scratch("c.jsonl").string())
            .status == 1);
}

TEST_CASE("reduce examples") {
  const fs::path swap = write("swap.json", R"({"g": [[2, 0], [0, 1]], "L": [[1, 2], [3, 4]]})");
  const Result r = run("reduce --point " + swap.string());
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["Q"]["entries"][0][0][0] == 1.0);
  CHECK(j["Q"]["entries"][1][1][0] == 2.0);
  CHECK(j["L"]["entries"][0][0][0] == 4.0);

  const fs::path again = write("again.json", r.out);
  const json k = json::parse(run("reduce --point " + again.string()).out);
  CHECK(k["Q"] == j["Q"]);
  CHECK(k["L"] == j["L"]);
  CHECK(k["eta"]["entries"][0][0][0] == 1.0);
  CHECK(k["eta"]["entries"][0][1][0] == 0.0);

  const fs::path id = write("id.json", R"({"g": [[1, 0], [0, 1]], "L": [[1, 2], [3, 4]]})");
  CHECK(run("reduce --point " + id.string()).status == 1);
}
