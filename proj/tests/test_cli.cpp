#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pb/cli.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::json;

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"pbtool"};
  for (const std::string& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out, err;
  const int code = pb::cli::dispatch(static_cast<int>(argv.size()),
                                     argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempFile {
 public:
  TempFile(const std::string& name, const std::string& content)
      : path_("pbtool_test_" + name) {
    std::ofstream f(path_);
    f << content;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

const char* kPhragmenA1 =
    "META\n"
    "key;value\n"
    "num_projects;4\n"
    "num_votes;5\n"
    "budget;3\n"
    "vote_type;approval\n"
    "PROJECTS\n"
    "project_id;cost\n"
    "p1;1\np2;1\np3;1\np4;1\n"
    "VOTES\n"
    "voter_id;vote\n"
    "1;p1\n"
    "2;p1,p3,p4\n"
    "3;p2,p3,p4\n"
    "4;p2,p3,p4\n"
    "5;p2,p3,p4\n";

}  // namespace

TEST_CASE("rule run on a .pb election") {
  TempFile file("a1.pb", kPhragmenA1);
  const CliResult r =
      run_cli({"rule", "run", "--rule", "phragmen", "--instance",
               file.path()});
  REQUIRE(r.code == 0);
  const Json json = Json::parse(r.out);
  CHECK(json["schema"] == "1");
  CHECK(json["command"] == "rule-run");
  CHECK(json["winners"] == Json::parse(R"([["p1","p3","p4"]])"));
}

TEST_CASE("rule run with an inline instance and profile") {
  const CliResult r = run_cli({"rule", "run", "--rule", "mes",
                               "--satisfaction", "cost", "--projects",
                               "p1:1,p2:1", "--budget", "2", "--profile",
                               "p1|p2|p1,p2|p1,p2"});
  REQUIRE(r.code == 0);
  const Json json = Json::parse(r.out);
  CHECK(json["rule"] == "mes-cost");
  CHECK(json["winners"] == Json::parse(R"([["p1"],["p2"]])"));
}

TEST_CASE("mle command reproduces the estimator outcome") {
  const CliResult r =
      run_cli({"mle", "--model", "m-napp", "--space", "all", "--projects",
               "p1:1,p2:1", "--budget", "2", "--profile", "p1|p2"});
  REQUIRE(r.code == 0);
  const Json json = Json::parse(r.out);
  CHECK(json["winners"] == Json::parse(R"([["p1","p2"]])"));
  CHECK(json["max_likelihood"]["num"] == "1");
  CHECK(json["max_likelihood"]["den"] == "16");
  CHECK(json["max_likelihood"]["decimal"] == "0.0625");
}

TEST_CASE("z-factor with the closed form and cross-check") {
  const CliResult r =
      run_cli({"z-factor", "--model", "m-app", "--projects",
               "p1:1,p2:1,p3:1", "--budget", "3", "--truth", "p1,p2"});
  REQUIRE(r.code == 0);
  const Json json = Json::parse(r.out);
  CHECK(json["z"]["num"] == "18");
  CHECK(json["z"]["den"] == "1");
  CHECK(json["cross_checked"] == true);
}

TEST_CASE("likelihood command") {
  const CliResult r = run_cli({"likelihood", "--model", "m-ncost",
                               "--projects", "p1:1,p2:1", "--budget", "2",
                               "--truth", "p1,p2", "--profile", "p1|p2"});
  REQUIRE(r.code == 0);
  const Json json = Json::parse(r.out);
  CHECK(json["likelihood"]["num"] == "1");
  CHECK(json["likelihood"]["den"] == "16");
}

TEST_CASE("empty truth is an input error for anchored models") {
  const CliResult r =
      run_cli({"z-factor", "--model", "m-napp", "--projects", "p1:1",
               "--budget", "1", "--truth", ""});
  CHECK(r.code == 3);
  CHECK(r.err.find("ground truth") != std::string::npos);
}

TEST_CASE("sampling is deterministic per seed") {
  const std::vector<std::string> args{
      "sample", "--model", "m-ncost", "--projects", "p1:1,p2:2,p3:3",
      "--budget", "3", "--truth", "p1,p2", "--agents", "5",
      "--seed", "42"};
  const CliResult a = run_cli(args);
  const CliResult b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Json json = Json::parse(a.out);
  REQUIRE(json["ballots"].size() == 5);
  for (const auto& ballot : json["ballots"]) {
    bool hits_truth = false;
    for (const auto& id : ballot) {
      hits_truth = hits_truth || id == "p1" || id == "p2";
    }
    CHECK(hits_truth);
  }
}

TEST_CASE("verify counterexamples exits 1 with four reproduced reports") {
  const CliResult r = run_cli({"verify", "counterexamples"});
  CHECK(r.code == 1);
  const Json json = Json::parse(r.out);
  CHECK(json["all_reproduced"] == true);
  CHECK(json["violations"] == 4);
  REQUIRE(json["fixtures"].size() == 4);
  for (const auto& fixture : json["fixtures"]) {
    CHECK(fixture["reproduced"] == true);
  }
}

TEST_CASE("check reinforcement on a safe rule exits 0") {
  const CliResult r =
      run_cli({"check", "reinforcement", "--rule", "util-card", "--trials",
               "200", "--seed", "7"});
  CHECK(r.code == 0);
  const Json json = Json::parse(r.out);
  CHECK(json["violations"] == 0);
  CHECK(json["trials"] == 200);
}

TEST_CASE("check reinforcement finds a phragmen violation and exits 1") {
  const CliResult r =
      run_cli({"check", "reinforcement", "--rule", "phragmen", "--trials",
               "3000", "--seed", "1", "--max-projects", "4", "--max-agents",
               "9"});
  CHECK(r.code == 1);
  const Json json = Json::parse(r.out);
  CHECK(json["violations"].get<int>() > 0);
  CHECK(json.contains("first_violation"));
}

TEST_CASE("experiment recovery emits csv") {
  const CliResult r = run_cli({"experiment", "recovery", "--model", "m-ncost",
                               "--projects", "p1:1,p2:1", "--budget", "2",
                               "--truth", "p1,p2", "--rules",
                               "mle,nash-norm-cost", "--n-grid", "1,5",
                               "--trials", "10", "--seed", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("rule,n_agents,exact_recovery,hit_rate,mean_winners\n",
                    0) == 0);
  CHECK(r.out.find("mle,1,") != std::string::npos);
  CHECK(r.out.find("nash-norm-cost,5,") != std::string::npos);
}

TEST_CASE("pb-validate accepts good files and rejects bad ones") {
  TempFile good("good.pb", kPhragmenA1);
  const CliResult ok = run_cli({"pb-validate", "--instance", good.path()});
  CHECK(ok.code == 0);
  CHECK(Json::parse(ok.out)["valid"] == true);

  std::string broken = kPhragmenA1;
  broken.replace(broken.find("approval"), 8, "ordinal");
  TempFile bad("bad.pb", broken);
  const CliResult fail = run_cli({"pb-validate", "--instance", bad.path()});
  CHECK(fail.code == 3);
  const Json diag = Json::parse(fail.err);
  CHECK(diag["code"] == "unsupported-vote-type");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli({"rule", "run", "--rule", "nope", "--projects", "p1:1",
                 "--budget", "1", "--profile", "p1"})
            .code == 2);
  CHECK(run_cli({"definitely-not-a-command"}).code == 2);
  CHECK(run_cli({"rule", "run"}).code == 2);  // --rule is required
  CHECK(run_cli({"mle", "--model", "m-app", "--space", "sideways",
                 "--projects", "p1:1", "--budget", "1", "--profile", "p1"})
            .code == 2);
}

TEST_CASE("help is available everywhere") {
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({"rule", "run", "--help"}).code == 0);
  CHECK(run_cli({"experiment", "recovery", "--help"}).code == 0);
}

TEST_CASE("the branch cap environment variable is honoured") {
  setenv("PB_EPISTEMIC_BRANCH_CAP", "1", 1);
  const CliResult r = run_cli({"rule", "run", "--rule", "phragmen",
                               "--projects", "p1:1,p2:1,p3:1", "--budget",
                               "3", "--profile", "p1,p2,p3"});
  unsetenv("PB_EPISTEMIC_BRANCH_CAP");
  CHECK(r.code == 3);
  CHECK(r.err.find("cap") != std::string::npos);
}
