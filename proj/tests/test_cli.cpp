#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef PAUTOM_CLI
#error "PAUTOM_CLI must point at the built binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(PAUTOM_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

const std::string kExampleElement =
    R"('{"a":[2,1],"children":{"1":[1,2],"2":[0,0]}}')";

}  // namespace

TEST_CASE("count") {
  CHECK(run("count --n 1").out == "7\n");
  CHECK(run("count --n 2").out == "127\n");
  CHECK(run("count --n 3").out == "32767\n");
  const auto r = run("count --n 4 --json");
  CHECK(nlohmann::json::parse(r.out)["count"] == "2147483647");
  CHECK(run("count --n 5").out == "9223372036854775807\n");
}

TEST_CASE("enumerate streams parseable distinct elements") {
  const auto r = run("enumerate --n 2");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 127);
  std::set<std::string> uniq(lines.begin(), lines.end());
  CHECK(uniq.size() == 127);
  for (const auto& l : lines) CHECK_NOTHROW(static_cast<void>(nlohmann::json::parse(l)));
}

TEST_CASE("enumerate refuses past the cap, names the count") {
  const std::string cmd = std::string(PAUTOM_CLI) + " enumerate --n 4 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 2);
  CHECK(out.find("2147483647") != std::string::npos);
}

TEST_CASE("sample: uniform at level 1, byte-identical reruns") {
  const auto r1 = run("sample --n 1 --count 7000 --seed 0");
  const auto r2 = run("sample --n 1 --count 7000 --seed 0");
  CHECK(r1.out == r2.out);
  const auto lines = lines_of(r1.out);
  REQUIRE(lines.size() == 7001);
  const auto header = nlohmann::json::parse(lines[0]);
  CHECK(header["seed"] == 0);
  CHECK(header["mode"] == "exact");
  std::map<std::string, int> bins;
  for (std::size_t i = 1; i < lines.size(); ++i) ++bins[lines[i]];
  REQUIRE(bins.size() == 7);
  for (const auto& [_, c] : bins) {
    CHECK(c >= 850);  // binomial 1000 +- 150
    CHECK(c <= 1150);
  }
  // Worker count must not change the bytes.
  const auto r4 = run("sample --n 1 --count 7000 --seed 0 --workers 4");
  CHECK(r4.out == r1.out);
}

TEST_CASE("sampled elements parse back (round trip through the CLI)") {
  const auto r = run("sample --n 3 --count 25 --seed 1");
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 26);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto j = nlohmann::json::parse(lines[i]);
    CHECK(j.contains("a"));
    CHECK(nlohmann::json::parse(lines[i]) == j);
  }
}

TEST_CASE("spectrum reproduces the drawn 4x4 matrix and its dead spectrum") {
  const auto r = run("spectrum --n 2 --element " + kExampleElement + " --dense --eigenvalues");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "0 0 1 0");
  CHECK(lines[1] == "0 0 0 1");
  CHECK(lines[2] == "0 0 0 0");
  CHECK(lines[3] == "0 0 0 0");
  const auto j = nlohmann::json::parse(lines[4]);
  CHECK(j["n"] == 2);
  CHECK(j["zeros"] == 4);
  CHECK(j["cycles"].empty());
  REQUIRE(j["eigenvalues"].size() == 4);
  for (const auto& ev : j["eigenvalues"]) {
    CHECK(ev[0].get<double>() == 0.0);
    CHECK(ev[1].get<double>() == 0.0);
  }
}

TEST_CASE("spectrum --matrix emits the sparse row schema") {
  const auto r = run("spectrum --n 2 --element " + kExampleElement + " --matrix");
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == R"({"n":2,"rows":[3,4,0,0]})");
}

TEST_CASE("spectrum oracle mode returns four near-zero eigenvalues") {
  const auto r = run("spectrum --n 2 --element " + kExampleElement + " --mode oracle");
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["mode"] == "oracle");
  REQUIRE(j["eigenvalues"].size() == 4);
  for (const auto& ev : j["eigenvalues"]) {
    CHECK(std::abs(ev[0].get<double>()) < 1e-9);
    CHECK(std::abs(ev[1].get<double>()) < 1e-9);
  }
}

TEST_CASE("malformed element JSON fails with a path and nonzero exit") {
  const std::string cmd = std::string(PAUTOM_CLI) +
                          " spectrum --n 2 --element "
                          R"('{"a":[2,1],"children":{"1":[9,2],"2":[0,0]}}')"
                          " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 2);
  CHECK(out.find("/children/1") != std::string::npos);
}

TEST_CASE("verify succeeds and reports the erratum") {
  const auto r = run("verify --n-cap 2");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["all_pass"].get<bool>());
  bool saw_erratum = false;
  for (const auto& c : j["claims"])
    if (c["claim"] == "erratum_printed_total_rank_exponent") saw_erratum = true;
  CHECK(saw_erratum);
}

TEST_CASE("converge CSV: schema, determinism, worker independence") {
  const std::string args = "converge --n-min 2 --n-max 4 --samples 800 --seed 5";
  const auto r1 = run(args);
  const auto r2 = run(args);
  const auto r4 = run(args + " --workers 4");
  CHECK(r1.exit_code == 0);
  CHECK(r1.out == r2.out);
  CHECK(r1.out == r4.out);
  const auto lines = lines_of(r1.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0].rfind("# seed=5", 0) == 0);
  CHECK(lines[1] == "n,samples,mean_norm_ult_rank,stderr,mass_at_zero,f_id,f_re_z,f_re_z2,bound");
  CHECK(lines[2].rfind("2,800,", 0) == 0);
  CHECK(lines[4].rfind("4,800,", 0) == 0);
}
