#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lotos/cli/run.hpp"
#include "lotos/semantics/lts.hpp"
#include "lotos/syntax/parser.hpp"
#include "lotos/verify/bisim.hpp"
#include "oracles.hpp"

using namespace lotos;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

// Runs with the corpus as working directory so that relative paths in the
// goldens resolve.
Outcome invoke(std::vector<std::string> args) {
  struct Cwd {
    std::filesystem::path saved = std::filesystem::current_path();
    Cwd() { std::filesystem::current_path(LOTOSADL_CORPUS_DIR); }
    ~Cwd() { std::filesystem::current_path(saved); }
  } cwd;
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  auto text = read_text_file(std::string(LOTOSADL_GOLDEN_DIR) + "/" + name + ".out");
  EXPECT_TRUE(text) << name;
  return text.value_or("");
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "lotosadl-tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

struct GoldenCase {
  const char* name;
  std::vector<std::string> args;
  int code;
};

const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases{
      {"check_ok", {"check", "client_server.lot"}, 0},
      {"check_broken", {"check", "broken.lot"}, 2},
      {"lts_counts", {"lts", "multicast.lot"}, 0},
      {"lts_aut", {"lts", "client_server.lot", "-o", "-"}, 0},
      {"verify_deadlock_holds", {"verify", "client_server.lot", "--deadlock"}, 0},
      {"verify_deadlock_fails", {"verify", "deadlocked.lot", "--deadlock"}, 1},
      {"verify_safety_nohide", {"verify", "multicast.lot", "--safety", "multicast_order.mon", "--no-hide"}, 0},
      {"verify_reach_nohide", {"verify", "multicast.lot", "--no-hide", "--reach", "ter !Service3 !*"}, 0},
      {"contract_pass", {"contract", "observer.asc", "--facts", "observer.facts"}, 0},
      {"contract_c1", {"contract", "mutations/observer_duplicate_port.asc", "--facts", "observer.facts"}, 1},
      {"adl_multicast", {"adl", "multicast.adl"}, 0},
      {"json_verify", {"--format", "json", "verify", "deadlocked.lot", "--deadlock"}, 1},
      {"json_contract", {"--format", "json", "contract", "observer.asc", "--facts", "observer.facts"}, 0},
      {"json_adl", {"--format", "json", "adl", "client_server.adl"}, 0},
      {"json_check", {"--format", "json", "check", "broken.lot"}, 2},
  };
  return cases;
}

}  // namespace

TEST(Cli, GoldenOutputs) {
  for (const auto& c : golden_cases()) {
    auto r = invoke(c.args);
    EXPECT_EQ(r.code, c.code) << c.name << "\n" << r.err;
    EXPECT_EQ(r.out, golden(c.name)) << c.name;
  }
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  for (const auto& c : golden_cases()) {
    auto a = invoke(c.args), b = invoke(c.args);
    EXPECT_EQ(a.out, b.out) << c.name;
    EXPECT_EQ(a.code, b.code) << c.name;
  }
}

TEST(Cli, DiagnosticsGoToStandardError) {
  auto r = invoke({"check", "broken.lot"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(r.err, "broken.lot:4:5: error [unknown-process] unknown process 'P'\n");
}

TEST(Cli, DeadlockCounterexampleIsEmptyTrace) {
  auto r = invoke({"verify", "deadlocked.lot", "--deadlock"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("counterexample (0 step(s)): []"), std::string::npos);
}

TEST(Cli, HiddenOrderingGatesNeedNoHide) {
  auto hidden = invoke({"verify", "multicast.lot", "--reach", "ter !Service1 !*"});
  EXPECT_EQ(hidden.code, 1);
  auto open = invoke({"verify", "multicast.lot", "--no-hide", "--reach", "ter !Service1 !*"});
  EXPECT_EQ(open.code, 0);
}

TEST(Cli, ContractExitCodes) {
  EXPECT_EQ(invoke({"contract", "mutations/observer_no_external_change.asc", "--facts", "observer.facts"}).code, 1);
  EXPECT_EQ(invoke({"contract", "mutations/observer_no_notify_out.asc", "--facts", "observer.facts"}).code, 1);
  auto bad = invoke({"contract", "mutations/observer_misspelled_predicate.asc", "--facts", "observer.facts"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("[unknown-predicate]"), std::string::npos);
  EXPECT_EQ(invoke({"contract", "observer.asc", "--facts", "missing.facts"}).code, 2);
}

TEST(Cli, BudgetExceeded) {
  auto r = invoke({"lts", "multicast.lot", "--max-states", "5"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("[budget-exceeded]"), std::string::npos);
  EXPECT_EQ(invoke({"verify", "multicast.lot", "--deadlock", "--max-transitions", "3"}).code, 3);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"verify", "client_server.lot"}).code, 2);
  EXPECT_EQ(invoke({"verify", "client_server.lot", "--deadlock", "--reach", "a"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"check", "no_such_file.lot"}).code, 2);
  EXPECT_EQ(invoke({"verify", "client_server.lot", "--reach", "a !"}).code, 2);
  EXPECT_EQ(invoke({"verify", "client_server.lot", "--safety", "no_such.mon"}).code, 2);
  auto help = invoke({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("verify"), std::string::npos);
}

TEST(Cli, UnguardedRecursionIsAnError) {
  auto path = scratch("loop.lot");
  std::ofstream(path) << "specification L [a] : noexit behaviour P[a] where process P [g] : noexit := P[g] endproc endspec";
  auto r = invoke({"lts", path.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("[unguarded-recursion]"), std::string::npos);
}

TEST(Cli, AutFileOutput) {
  auto path = scratch("cs.aut");
  auto r = invoke({"lts", "client_server.lot", "-o", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "states: 4\ntransitions: 4\n");
  EXPECT_EQ(read_text_file(path.string()), golden("lts_aut"));
}

TEST(Cli, EmittedSpecificationIsBisimilar) {
  for (const char* name : {"client_server", "multicast"}) {
    auto path = scratch(std::string(name) + ".lot");
    auto r = invoke({"adl", std::string(name) + ".adl", "--emit-lot", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto emitted = syntax::parse_spec(*read_text_file(path.string()));
    ASSERT_TRUE(emitted.ok()) << name;
    auto hand = semantics::generate_lts(oracle::load(std::string(name) + ".lot"));
    EXPECT_TRUE(verify::bisim_equiv(semantics::generate_lts(*emitted), hand).holds()) << name;
  }
}

TEST(Cli, InvalidConfigurationExitsTwo) {
  auto path = scratch("coupled.adl");
  std::ofstream(path) << "configuration Bad use \"" << LOTOSADL_CORPUS_DIR << "/client_server.lot\" "
                      << "components { c = Client[invClt, terClt] s = Server[invClt, terClt] } "
                      << "connectors { k = Connector[invClt, terClt, invSrv, terSrv] } "
                      << "composition { (c |[invClt]| s) ||| k } end";
  auto r = invoke({"adl", path.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("direct-component-coupling"), std::string::npos);
}

TEST(Cli, JsonIsWellFormed) {
  for (const auto& c : golden_cases()) {
    if (c.args.front() != "--format") continue;
    auto j = nlohmann::json::parse(invoke(c.args).out);
    EXPECT_EQ(j["command"], c.args[2]) << c.name;
  }
  auto j = nlohmann::json::parse(invoke({"--format", "json", "verify", "multicast.lot", "--no-hide", "--safety",
                                      "multicast_order.mon"})
                                     .out);
  EXPECT_EQ(j["verdict"], "holds");
  EXPECT_TRUE(j["evidence"].is_null());
}
