#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "qmpsig/cli.hpp"
#include "qmpsig/serialize.hpp"

namespace qmpsig {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qmpsig_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void keygen() {
    ASSERT_EQ(run({"keygen", "--lambda", "2", "--n", "6", "--k", "2", "--seed", "1", "--out", path("keys")}), 0);
  }
  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(Cli, KeygenWritesFifteenEntries) {
  ASSERT_EQ(run({"keygen", "--lambda", "4", "--n", "6", "--k", "2", "--seed", "1", "--out", path("a")}), 0);
  const auto pk = public_key_from_json(read_json_file(path("a/public_key.json")));
  EXPECT_EQ(pk.entries.size(), 15U);
  ASSERT_EQ(run({"keygen", "--lambda", "4", "--n", "6", "--k", "2", "--seed", "1", "--out", path("b")}), 0);
  for (const char* f : {"public_key.json", "private_key.json"}) {
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
  }
}

TEST_F(Cli, InvalidParametersExitTwo) {
  EXPECT_EQ(run({"keygen", "--k", "6", "--n", "6", "--seed", "1", "--out", path("k")}), cli::kInvalidArgs);
  EXPECT_EQ(run({"keygen", "--n", "6", "--out", path("k")}), cli::kInvalidArgs);  // seed is mandatory
  EXPECT_EQ(run({"frobnicate"}), cli::kInvalidArgs);
  EXPECT_EQ(run({}), cli::kInvalidArgs);
  EXPECT_EQ(run({"--help"}), cli::kOk);
}

TEST_F(Cli, SignVerifyRoundTrip) {
  keygen();
  ASSERT_EQ(run({"sign", "--sk", path("keys/private_key.json"), "--word", "abc", "--seed", "3", "--out",
                 path("sig.json")}),
            0);
  EXPECT_EQ(run({"verify", "--pk", path("keys/public_key.json"), "--in", path("sig.json"), "--seed", "4", "--out",
                 path("verdict.json")}),
            cli::kOk);
  EXPECT_EQ(read_json_file(path("verdict.json"))["verdict"], "ACCEPT");
  EXPECT_TRUE(fs::exists(path("verdict.manifest.json")));
  EXPECT_EQ(run({"verify", "--pk", path("keys/public_key.json"), "--in", path("sig.json"), "--word", "abd", "--seed",
                 "4", "--out", path("wrong.json")}),
            cli::kReject);
  EXPECT_EQ(read_json_file(path("wrong.json"))["verdict"], "REJECT");
}

TEST_F(Cli, EmptyMessageBundleIsChallengeResponse) {
  keygen();
  ASSERT_EQ(run({"sign", "--sk", path("keys/private_key.json"), "--word", "", "--seed", "3", "--out",
                 path("sig.json")}),
            0);
  const auto bundle = bundle_from_json(read_json_file(path("sig.json")));
  const auto sk = private_key_from_json(read_json_file(path("keys/private_key.json")));
  EXPECT_TRUE(bundle.message.empty());
  EXPECT_LT((bundle.state.matrix() - respond(sk, bundle.challenge).matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST_F(Cli, SignRefusesFullRegisterChallenge) {
  keygen();
  EXPECT_EQ(run({"sign", "--sk", path("keys/private_key.json"), "--m-size", "6", "--word", "a", "--seed", "1",
                 "--out", path("s.json")}),
            cli::kInvalidArgs);
  EXPECT_NE(err_.str().find("M"), std::string::npos);
}

TEST_F(Cli, MalformedAndMissingFiles) {
  keygen();
  ASSERT_EQ(run({"sign", "--sk", path("keys/private_key.json"), "--word", "ab", "--seed", "3", "--out",
                 path("sig.json")}),
            0);
  const auto text = slurp(path("sig.json"));
  std::ofstream(path("cut.json")) << text.substr(0, text.size() / 2);
  EXPECT_EQ(run({"verify", "--pk", path("keys/public_key.json"), "--in", path("cut.json"), "--seed", "1", "--out",
                 path("v.json")}),
            cli::kMalformed);
  EXPECT_EQ(run({"verify", "--pk", path("keys/private_key.json"), "--in", path("sig.json"), "--seed", "1", "--out",
                 path("v.json")}),
            cli::kMalformed);
  EXPECT_EQ(run({"verify", "--pk", path("absent.json"), "--in", path("sig.json"), "--seed", "1", "--out",
                 path("v.json")}),
            cli::kIoFailure);
  EXPECT_EQ(run({"sign", "--sk", path("keys/private_key.json"), "--word", "ab", "--seed", "3", "--out",
                 path("missing/dir/sig.json")}),
            cli::kIoFailure);
}

TEST_F(Cli, CopyBudgetExhaustionExitsFive) {
  keygen();
  ASSERT_EQ(run({"sign", "--sk", path("keys/private_key.json"), "--word", "ab", "--seed", "3", "--out",
                 path("sig.json")}),
            0);
  EXPECT_EQ(run({"verify", "--pk", path("keys/public_key.json"), "--in", path("sig.json"), "--shots", "100000",
                 "--seed", "1", "--out", path("v.json")}),
            cli::kBudget);
}

TEST_F(Cli, AttackReportsWinRate) {
  ASSERT_EQ(run({"attack", "--strategy", "leak-full", "--trials", "3", "--seed", "1", "--out", path("leak.json")}), 0);
  EXPECT_DOUBLE_EQ(read_json_file(path("leak.json"))["win_rate"].get<double>(), 1.0);
  ASSERT_EQ(run({"attack", "--strategy", "random-state", "--trials", "3", "--seed", "1", "--out", path("rs.json")}),
            0);
  EXPECT_DOUBLE_EQ(read_json_file(path("rs.json"))["win_rate"].get<double>(), 0.0);
  EXPECT_EQ(run({"attack", "--strategy", "telepathy", "--seed", "1", "--out", path("x.json")}), cli::kInvalidArgs);
}

TEST_F(Cli, OracleExitCodes) {
  keygen();
  EXPECT_EQ(run({"oracle", "--in", path("keys/public_key.json"), "--out", path("o.json")}), cli::kOk);
  EXPECT_EQ(run({"oracle", "--bell", "3", "--out", path("b.json")}), cli::kReject);
  EXPECT_EQ(read_json_file(path("b.json"))["status"], "Infeasible");
  EXPECT_EQ(run({"oracle", "--in", path("keys/public_key.json"), "--max-iter", "2", "--out", path("u.json")}),
            cli::kUndecided);
}

TEST_F(Cli, CalibrateAtFullNoiseHasNoSeparation) {
  EXPECT_EQ(run({"calibrate", "--noise-p", "1.0", "--trials", "30", "--shots", "1000", "--seed", "1", "--out",
                 path("cal.json")}),
            cli::kNoSeparation);
  EXPECT_TRUE(read_json_file(path("cal.json"))["epsilon_star"].is_null());
  EXPECT_TRUE(fs::exists(path("cal.csv")));
}

TEST_F(Cli, SessionAndReplayAreByteIdentical) {
  ASSERT_EQ(run({"session", "--mode", "sign-verify", "--message", "hello", "--seed", "5", "--out", path("t.json")}),
            cli::kOk);
  ASSERT_EQ(run({"replay", "--manifest", path("t.manifest.json"), "--out", path("again")}), cli::kOk);
  EXPECT_EQ(slurp(path("t.json")), slurp(path("again/t.json")));
}

TEST_F(Cli, InjectivityReportsSkipCollisions) {
  EXPECT_EQ(run({"injectivity", "--max-len", "2", "--m-size", "2", "--out", path("inj.json")}), cli::kReject);
  const auto j = read_json_file(path("inj.json"));
  EXPECT_EQ(j["same_length_collisions"], 0);
  EXPECT_GT(j["cross_length_collisions"].get<int>(), 0);
}

}  // namespace
}  // namespace qmpsig
