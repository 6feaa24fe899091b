#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stoch/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "stoch");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = stoch::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("stoch_cli_" + name);
  std::ofstream(path) << contents;
  return path.string();
}

}  // namespace

TEST_CASE("envelope") {
  const auto r = run({"--stable", "enumerate", "--n", "2"});
  CHECK(r.code == 0);
  const auto j = r.json();
  CHECK(j["command"] == "enumerate");
  CHECK(j["pass"] == true);
  CHECK(j["parameters"]["n"] == 2);
  CHECK(j["details"]["count"] == 5);
  CHECK(j.contains("anchor"));
  CHECK_FALSE(j.contains("elapsed_ms"));
  CHECK(run({"enumerate", "--n", "2"}).json().contains("elapsed_ms"));
}

TEST_CASE("stable output is reproducible") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"--stable", "poset", "--n", "3"}, {"--stable", "sphericity", "--n", "3"},
        {"--stable", "--jobs", "1", "sphericity", "--n", "2"}, {"--stable", "meet-join", "--n", "3"},
        {"--stable", "anodyne-classes", "--n", "4", "--kind", "vertical"}}) {
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  CHECK(run({"--stable", "sphericity", "--n", "3", "--jobs", "1"}).out ==
        run({"--stable", "sphericity", "--n", "3", "--jobs", "4"}).out);
}

TEST_CASE("enumeration variants") {
  const auto parts = run({"--stable", "enumerate", "--n", "3", "--partitions"}).json();
  CHECK(parts["details"]["count"] == 4);
  const auto shaped = run({"--stable", "enumerate", "--n", "3", "--p", "2", "--q", "2"}).json();
  CHECK(shaped["details"]["count"] == 8);
  const auto margins = run({"--stable", "enumerate", "--n", "3", "--alpha", "2,1", "--beta", "1,2"}).json();
  CHECK(margins["details"]["count"] == 2);
}

TEST_CASE("metamatrix and identities") {
  const auto m = run({"--stable", "metamatrix", "--n", "3", "--method", "enumeration"});
  CHECK(m.code == 0);
  CHECK(m.json()["details"]["matrix"] == nlohmann::json::parse(R"([["1","2","1"],["2","8","6"],["1","6","6"]])"));
  const auto csv = run({"metamatrix", "--n", "3", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out == "1,2,1\n2,8,6\n1,6,6\n");
  const auto v = run({"--stable", "verify-identities", "--n", "12"});
  CHECK(v.code == 0);
  CHECK(v.json()["pass"] == true);
  CHECK(run({"--stable", "total-positivity", "--n", "4"}).json()["pass"] == true);
  CHECK(run({"--stable", "f-vector", "--n", "3"}).json()["details"]["total"] == 33);
}

TEST_CASE("classify") {
  const auto path = temp_file("cfg.json", R"({"points":[{"re":"0","im":"1"},{"re":0,"im":-1}]})");
  const auto j = run({"--stable", "classify", "--input", path}).json();
  CHECK(j["details"]["fnf"]["label"] == "[(1,1):(1,1)]");
  CHECK(j["details"]["contingency"]["rows"] == nlohmann::json::parse("[[1,1]]"));
  const auto bad = temp_file("bad.json", R"({"points":[{"re":"x","im":"1"}]})");
  CHECK(run({"classify", "--input", bad}).code == 2);
  const auto broken = temp_file("broken.json", "{not json");
  CHECK(run({"classify", "--input", broken}).code == 2);
  CHECK(run({"classify", "--input", "/nonexistent/cfg.json"}).code == 2);
}

TEST_CASE("sheaf check") {
  const auto zero = temp_file("rep.json", R"({"n":2})");
  const auto ok = run({"--stable", "sheaf-check", "--input", zero, "--strat", "complex"});
  CHECK(ok.code == 0);
  CHECK(ok.json()["details"]["constructible"] == true);
  // a one-dimensional space at a permutation matrix with nothing above it
  const auto lonely = temp_file("lonely.json", R"({"n":2,"spaces":{"4":1}})");
  const auto fails = run({"--stable", "sheaf-check", "--input", lonely, "--strat", "fnf"});
  CHECK(fails.code == 1);
  CHECK(fails.json()["pass"] == false);
  CHECK(run({"--stable", "sheaf-check", "--input", lonely, "--strat", "cont"}).code == 0);
  const auto unknown = temp_file("unknown.json", R"({"n":2,"maps":[{"from":0,"to":4,"matrix":[]}]})");
  CHECK(run({"sheaf-check", "--input", unknown, "--strat", "fnf"}).code == 2);
  CHECK(run({"sheaf-check", "--input", zero, "--strat", "other"}).code == 2);
  const auto c = run({"--stable", "constant-sheaf", "--n", "2", "--dim", "2"}).json();
  CHECK(c["details"]["constructible"]["complex"] == true);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"enumerate"}).code == 2);
  CHECK(run({"enumerate", "--n", "0"}).code == 2);
  CHECK(run({"metamatrix", "--n", "30"}).code == 3);
  CHECK(run({"sphericity", "--n", "9"}).code == 3);
  CHECK(run({"--help"}).code == 0);
  const auto pretty = run({"--stable", "--pretty", "f-vector", "--n", "2"});
  CHECK(pretty.code == 0);
  CHECK(pretty.out.rfind("f-vector: PASS", 0) == 0);
}

TEST_CASE("installed binary") {
  const std::string cmd = std::string(STOCH_CLI_PATH) + " --stable enumerate --n 1 > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  const std::string usage = std::string(STOCH_CLI_PATH) + " enumerate --n -1 > /dev/null 2>&1";
  const int status = std::system(usage.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
