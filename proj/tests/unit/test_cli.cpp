#include <gtest/gtest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "fairdiv/cli.hpp"
#include "fairdiv/io.hpp"
#include "fixtures.hpp"

using namespace fairdiv;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(FAIRDIV_DATA_DIR) + "/" + name; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fairdiv_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenIsDeterministicAndParses) {
  const auto a = invoke({"gen", "--model", "restricted_p2", "--agents", "5", "--goods", "9", "--seed", "3"});
  const auto b = invoke({"gen", "--model", "restricted_p2", "--agents", "5", "--goods", "9", "--seed", "3"});
  ASSERT_EQ(a.code, cli::kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto f = io::parse_instance(a.out);
  EXPECT_EQ(f.model, "restricted_p2");
  EXPECT_EQ(f.instance.num_agents(), 5u);
  ASSERT_EQ(invoke({"gen", "--model", "additive_infty1", "--agents", "4", "--goods", "6", "--out", path("g.json")}).code,
            cli::kOk);
  EXPECT_NO_THROW(io::parse_instance(io::read_file(path("g.json"))));
}

TEST_F(Cli, BadInputs) {
  EXPECT_EQ(invoke({}).code, cli::kBadInput);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kBadInput);
  EXPECT_EQ(invoke({"gen", "--model", "restricted_p2", "--agents", "0", "--goods", "3"}).code, cli::kBadInput);
  EXPECT_EQ(invoke({"gen", "--model", "nope", "--agents", "2", "--goods", "3"}).code, cli::kBadInput);
  EXPECT_EQ(invoke({"run", "--alg", "nope", "--in", data("example_4x7.json")}).code, cli::kBadInput);
  EXPECT_EQ(invoke({"run", "--alg", "pqrax", "--in", path("missing.json")}).code, cli::kBadInput);
  io::write_file(path("broken.json"), "{\n  \"values\": [[1, 2],\n}");
  const auto broken = invoke({"run", "--alg", "pqrax", "--in", path("broken.json")});
  EXPECT_EQ(broken.code, cli::kBadInput);
  EXPECT_NE(broken.err.find("line 3"), std::string::npos) << broken.err;
  EXPECT_EQ(invoke({"verify", "--in", data("example_4x7.json"), "--alloc", data("example_4x7_alloc.json"), "--check",
                 "prop:nonsense"})
                .code,
            cli::kBadInput);
  EXPECT_EQ(invoke({"--help"}).code, cli::kOk);
}

TEST_F(Cli, RunWritesCompleteAllocationAndTrace) {
  const auto r = invoke({"run", "--alg", "pqrax", "--in", data("example_4x7.json"), "--trace", path("t.jsonl")});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const Instance inst = io::parse_instance(io::read_file(data("example_4x7.json"))).instance;
  const Allocation a = io::parse_allocation(r.out, inst);
  EXPECT_TRUE(a.complete());
  EXPECT_NE(r.err.find("pre-final pool size:"), std::string::npos);
  const std::string trace = io::read_file(path("t.jsonl"));
  EXPECT_NE(trace.find("\"rule\":\"final\""), std::string::npos);
  // Same bytes on a second run.
  const auto again = invoke({"run", "--alg", "pqrax", "--in", data("example_4x7.json"), "--trace", path("t2.jsonl")});
  EXPECT_EQ(again.out, r.out);
  EXPECT_EQ(io::read_file(path("t2.jsonl")), trace);

  io::write_file(path("a.json"), r.out);
  const auto v = invoke({"verify", "--in", data("example_4x7.json"), "--alloc", path("a.json"), "--check", "efx"});
  EXPECT_EQ(v.code, cli::kOk);
  EXPECT_EQ(v.out, "PASS efx\n");
}

TEST_F(Cli, ClassMismatchExitCode) {
  const auto r = invoke({"run", "--alg", "pqrax", "--in", data("example_4x3.json")});
  EXPECT_EQ(r.code, cli::kClassMismatch);
  EXPECT_EQ(invoke({"run", "--alg", "cxxra", "--in", data("example_4x7.json")}).code, cli::kClassMismatch);
  EXPECT_EQ(invoke({"run", "--alg", "sqrt2-pq", "--in", data("example_4x3.json")}).code, cli::kOk);
}

TEST_F(Cli, VerifyReportsViolations) {
  const auto pass = invoke({"verify", "--in", data("example_4x7.json"), "--alloc", data("example_4x7_alloc.json"),
                         "--check", "prop:dagger"});
  EXPECT_EQ(pass.code, cli::kOk) << pass.out << pass.err;
  // Agent 0 holds everything it wants except g5; agent 1 gets g0..g4 of which
  // it values g3 and g4: agent 2 strongly envies agent 0.
  io::write_file(path("bad.json"), R"({"pool": [], "bundles": [[0, 1, 2, 5], [3, 4], [], [6]]})");
  const auto fail = invoke({"verify", "--in", data("example_4x7.json"), "--alloc", path("bad.json"), "--check", "efx"});
  EXPECT_EQ(fail.code, cli::kCheckFailed);
  EXPECT_EQ(fail.out.rfind("FAIL efx:", 0), 0u) << fail.out;
  EXPECT_NE(fail.out.find("agent 2 -> agent 0"), std::string::npos) << fail.out;
}

TEST_F(Cli, OracleCommands) {
  io::write_file(path("small.json"), io::serialize_instance(fairdiv::testing::make({{1, 2, 3, 4}, {4, 3, 2, 1}, {2, 2, 2, 2}})));
  const auto e = invoke({"oracle", "--in", path("small.json"), "--check", "efx-exists"});
  EXPECT_EQ(e.code, cli::kOk);
  EXPECT_EQ(e.out.rfind("EFX allocation found", 0), 0u);
  const auto n = invoke({"oracle", "--in", path("small.json"), "--check", "max-nsw"});
  EXPECT_EQ(n.code, cli::kOk);
  EXPECT_NE(n.out.find("product of non-zero factors: 64"), std::string::npos) << n.out;
  const auto r = invoke({"oracle", "--in", data("example_4x7.json"), "--check", "rank", "--alloc",
                      data("example_4x7_alloc.json")});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("agent 3: 10/9 path 2 -> 3"), std::string::npos) << r.out;
  EXPECT_EQ(invoke({"oracle", "--in", path("small.json"), "--check", "efx-exists", "--budget", "5"}).code,
            cli::kBadInput);
}

TEST_F(Cli, BenchIsDeterministicSerialAndParallel) {
  const std::vector<std::string> base{"bench", "--alg", "sqrt2-pq", "--count", "30", "--seed", "4"};
  auto serial = base;
  serial.push_back("--serial");
  const auto a = invoke(base);
  const auto b = invoke(base);
  const auto s = invoke(serial);
  ASSERT_EQ(a.code, cli::kOk) << a.out << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, s.out);
  EXPECT_NE(a.out.find("pass rate: 30/30"), std::string::npos) << a.out;
}

TEST_F(Cli, StepLimitFromEnvironment) {
  ::setenv("FAIRDIV_STEP_LIMIT", "banana", 1);
  const auto bad = invoke({"run", "--alg", "pqrax", "--in", data("example_4x7.json")});
  ::setenv("FAIRDIV_STEP_LIMIT", "0", 1);
  const auto tight = invoke({"bench", "--alg", "pqrax", "--count", "20", "--agents", "6", "--goods", "14"});
  ::unsetenv("FAIRDIV_STEP_LIMIT");
  EXPECT_EQ(bad.code, cli::kBadInput);
  EXPECT_EQ(tight.code, cli::kCheckFailed);
}
