#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifndef RCUT_CLI_PATH
#error "RCUT_CLI_PATH must point at the rcut executable"
#endif

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(RCUT_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_data_line(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') return line;
  }
  return {};
}

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "rcut_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes") {
  CHECK(run("gen lps --p 5 --q 13").code == 2);
  CHECK(run("validate --graph /nonexistent/graph.txt").code == 1);
  CHECK(run("--no-such-flag").code == 2);

  const auto k33 = scratch() / "k33.txt";
  {
    std::ofstream out(k33);
    out << "graph 6 3\n";
    for (int u = 0; u < 3; ++u)
      for (int v = 3; v < 6; ++v) out << u << " " << v << "\n";
  }
  CHECK(run("validate --graph " + k33.string()).code == 2);
  CHECK(run("verify --trials 30 --no-lps").code == 0);
}

TEST_CASE("gen lps writes the graph and its sidecar") {
  const auto out = scratch() / "lps.txt";
  REQUIRE(run("gen lps --p 5 --q 29 --out " + out.string()).code == 0);
  const auto text = slurp(out);
  CHECK(text.rfind("# rcut", 0) == 0);
  CHECK(first_data_line(text) == "graph 12180 6");
  const auto side = nlohmann::json::parse(slurp(out.string() + ".json"));
  CHECK(side["schema"] == 1);
  CHECK(side["group_order"] == 12180);
  CHECK(side["degree"] == 6);

  // The file loads back and validates.
  CHECK(run("validate --graph " + out.string()).code == 0);
}

TEST_CASE("json output carries the schema and config") {
  const auto r = run("--seed 3 mix --gen petersen --alpha 0.25");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["tool"] == "rcut");
  CHECK(j.contains("config"));
  CHECK(j.contains("result"));
}

TEST_CASE("csv headers") {
  const auto evolve = run("--format csv evolve --gen petersen --T 5");
  REQUIRE(evolve.code == 0);
  CHECK(evolve.out.rfind("# rcut", 0) == 0);
  CHECK(first_data_line(evolve.out) == "t,tv,hell2,entropy,e_f,e_sqrt_f,support_size");

  const auto tree = run("--format csv tree --d 3 --T 4");
  REQUIRE(tree.code == 0);
  CHECK(first_data_line(tree.out) == "t,r,q_r");
}

TEST_CASE("output is byte-identical across thread counts") {
  const std::string args = "scan --gen random:200:3:1 --gen random:400:3:1 --starts 3";
  const auto a = run("--threads 1 " + args);
  const auto b = run("--threads 4 " + args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto c = run("--threads 1 --format csv " + args);
  const auto e = run("--threads 3 --format csv " + args);
  CHECK(c.out == e.out);
  const auto v1 = run("--threads 1 verify --trials 30 --no-lps");
  const auto v2 = run("--threads 4 verify --trials 30 --no-lps");
  CHECK(v1.out == v2.out);
}

TEST_CASE("scan plots") {
  const auto dir = scratch() / "plots";
  fs::remove_all(dir);
  REQUIRE(run("scan --gen random:100:3:1 --gen random:200:3:1 --plot-dir " + dir.string()).code == 0);
  CHECK(fs::exists(dir / "normalized_time.dat"));
  CHECK(fs::exists(dir / "normalized_time.svg"));
  CHECK(slurp(dir / "tv_profiles.svg").find("<svg") != std::string::npos);
}

}  // TEST_SUITE
