#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("g2lab_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (work_dir() / name).string(); }

int run(const std::string& args) {
  const std::string cmd = std::string(G2LAB_CLI_PATH) + " " + args + " 2>" + path("stderr.txt");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("ambient-check passes and is byte-identical across runs") {
  CHECK(run("ambient-check --m 3 --trials 50 --seed 7 --out " + path("amb1.json")) == 0);
  CHECK(run("ambient-check --m 3 --trials 50 --seed 7 --out " + path("amb2.json")) == 0);
  const std::string a = slurp(path("amb1.json"));
  CHECK_FALSE(a.empty());
  CHECK(a == slurp(path("amb2.json")));
  const auto j = nlohmann::json::parse(a);
  CHECK(j["pass"] == true);
  CHECK(j["cases"] == 51);
}

TEST_CASE("usage errors exit 64") {
  CHECK(run("ambient-check --m 2") == 64);
  CHECK(run("ambient-check") == 64);
  CHECK(run("no-such-command") == 64);
  CHECK(run("") == 64);
  CHECK(run("type-a --m 3 --r 2.0") == 64);
  CHECK(run("type-a --m 3 --r 0.3 --tol 0") == 64);
  CHECK(run("ambient-check --m 3 --trials notanumber") == 64);
  CHECK(run("--help >/dev/null") == 0);
}

TEST_CASE("hypersurface-check with and without jitter") {
  CHECK(run("hypersurface-check --m 4 --trials 40 --seed 1 --out " + path("hs.json")) == 0);
  const auto j = nlohmann::json::parse(slurp(path("hs.json")));
  CHECK(j["details"]["singular_case"]["dim_hperp"] == 3);
  CHECK(run("hypersurface-check --m 3 --trials 10 --inject-jitter 1e-3 --out " + path("hsj.json")) == 2);
  const auto bad = nlohmann::json::parse(slurp(path("hsj.json")));
  CHECK(bad["pass"] == false);
  CHECK_FALSE(bad["details"]["failures"].empty());
}

TEST_CASE("type-a flags three distinct curvatures and writes CSV") {
  CHECK(run("type-a --m 3 --r 0.5553603 --csv " + path("spec.csv") + " --out " + path("ta.json")) == 0);
  const auto j = nlohmann::json::parse(slurp(path("ta.json")));
  CHECK(j["details"]["three_distinct"] == true);
  const std::string csv = slurp(path("spec.csv"));
  CHECK(csv.rfind("r,alpha,beta,lambda,mu,distinct_count\n", 0) == 0);
}

TEST_CASE("type-a output certifies through hopf-certify") {
  REQUIRE(run("type-a --m 3 --r 0.3 --emit-hyperpoint " + path("hp.json") + " --emit-shape " +
              path("A.json") + " --out " + path("ta3.json")) == 0);
  CHECK(run("hopf-certify --input " + path("hp.json") + " --shape " + path("A.json") + " --out " +
            path("cert.json")) == 0);
  const auto cert = nlohmann::json::parse(slurp(path("cert.json")));
  CHECK(cert["status"] == "CERTIFIED");
  CHECK(cert["failing_step"].is_null());
  CHECK(std::abs(cert["alpha"].get<double>() - std::sqrt(8.0) / std::tan(std::sqrt(8.0) * 0.3)) <= 1e-8);

  CHECK(run("hopf-certify --input " + path("hp.json") + " --shape " + path("A.json") + " --out " +
            path("cert2.json")) == 0);
  CHECK(slurp(path("cert.json")) == slurp(path("cert2.json")));
}

TEST_CASE("hopf-certify rejects the identity and malformed input") {
  REQUIRE(run("type-a --m 3 --r 0.3 --emit-hyperpoint " + path("hp_i.json") + " --out " +
              path("ta_i.json")) == 0);
  nlohmann::ordered_json id;
  id["dim"] = 11;
  auto entries = nlohmann::ordered_json::array();
  for (int i = 0; i < 11; ++i)
    for (int k = 0; k < 11; ++k) entries.push_back(i == k ? 1.0 : 0.0);
  id["entries"] = entries;
  spit(path("id.json"), id.dump());
  CHECK(run("hopf-certify --input " + path("hp_i.json") + " --shape " + path("id.json") + " --out " +
            path("cert_id.json")) == 1);
  const auto cert = nlohmann::json::parse(slurp(path("cert_id.json")));
  CHECK(cert["status"] == "STEP_FAILED");
  CHECK(cert["failing_step"] == "eq7");

  spit(path("trunc.json"), "{\"dim\": 11, \"entries\": [1.0, 0.0");
  CHECK(run("hopf-certify --input " + path("hp_i.json") + " --shape " + path("trunc.json")) == 64);
  CHECK(run("hopf-certify --input " + path("missing.json") + " --shape " + path("id.json")) == 64);

  id["dim"] = 3;
  id["entries"] = {1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0};
  spit(path("small.json"), id.dump());
  CHECK(run("hopf-certify --input " + path("hp_i.json") + " --shape " + path("small.json")) == 64);
}
