#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "harsanyi/cli.hpp"
#include "harsanyi/lattice_io.hpp"
#include "harsanyi/manifest.hpp"
#include "harsanyi/model_io.hpp"
#include "harsanyi/scoring.hpp"

using namespace harsanyi;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "harsanyi");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_files(const fs::path& dir, const std::string& ext) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.path().extension() == ext;
  return n;
}

std::string read(const fs::path& p) { return io::read_file(p); }

// One small toy suite shared by the tests in this file.
class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    root_ = fs::temp_directory_path() / "harsanyi_cli_test";
    fs::remove_all(root_);
    const Result r = run({"gen-toy", "--out", (root_ / "toy").string(), "--variables", "8", "--epochs", "3",
                          "--pretrain-samples", "1500", "--pretrain-epochs", "8", "--test-samples", "60"});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  static void TearDownTestSuite() { fs::remove_all(root_); }
  static fs::path root_;
  fs::path toy() const { return root_ / "toy"; }
  std::string path(const std::string& rel) const { return (root_ / rel).string(); }
};
fs::path CliTest::root_;

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"no-such-command"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify", "--n-max", "abc"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"verify", "--n-max", "13"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"interactions", "--tables", "/nonexistent/dir"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST(Cli, VerifyExitCodes) {
  const Result ok = run({"verify", "--n-max", "6", "--trials", "5"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_NE(ok.out.find("PASS roundtrip"), std::string::npos);
  EXPECT_EQ(run({"verify", "--n-max", "4", "--trials", "3", "--inject-fault"}).code, cli::kExitFailure);
}

TEST_F(CliTest, GenToyRefusesExistingDirectory) {
  EXPECT_EQ(run({"gen-toy", "--out", toy().string()}).code, cli::kExitUsage);
  EXPECT_EQ(run({"gen-toy", "--out", path("bad"), "--variables", "20"}).code, cli::kExitUsage);
}

TEST_F(CliTest, ProbeScorerWithoutProbeFileIsUsageError) {
  const Result r = run({"table", "--model", (toy() / "models/pretrain.json").string(), "--dataset",
                        (toy() / "data/test.json").string(), "--scorer", "probe", "--out", path("t0")});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_FALSE(fs::exists(path("t0")));
}

TEST_F(CliTest, TableThroughDecompose) {
  const std::string test = (toy() / "data/test.json").string();
  auto table = [&](const std::string& model, const std::string& out, std::vector<std::string> extra = {}) {
    std::vector<std::string> args{"table", "--model", (toy() / model).string(), "--dataset", test,
                                  "--samples", "5", "--out", path(out)};
    args.insert(args.end(), extra.begin(), extra.end());
    const Result r = run(args);
    ASSERT_EQ(r.code, 0) << r.err;
  };
  table("models/pretrain.json", "tab/pre", {"--scorer", "probe", "--probe", (toy() / "models/probe.json").string()});
  table("models/finetune.json", "tab/fine", {"--jobs", "2"});
  table("models/random.json", "tab/rand");
  EXPECT_EQ(count_files(path("tab/fine"), ".motb"), 5u);

  // Entry at the full mask equals a standalone forward-pass score.
  const PortableModel fine = io::read_model(toy() / "models/finetune.json");
  const Dataset data = io::read_dataset(toy() / "data/test.json");
  const MaskedOutputTable t0 = io::read_table(path("tab/fine/sample_0000.motb"));
  const std::vector<double> probs = softmax(fine.forward(data.samples[0].flatten()));
  EXPECT_NEAR(t0[t0.size() - 1], logodds_from_probabilities(probs, data.samples[0].label), 1e-12);

  for (const char* which : {"pre", "fine", "rand"}) {
    const Result r = run({"interactions", "--tables", path(std::string("tab/") + which), "--out",
                          path(std::string("iv/") + which)});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(count_files(path(std::string("iv/") + which), ".hivb"), 5u);
  }
  EXPECT_TRUE(fs::exists(path("iv/fine/sparsity.csv")));

  // Re-running produces identical files.
  ASSERT_EQ(run({"interactions", "--tables", path("tab/fine"), "--out", path("iv/fine2")}).code, 0);
  EXPECT_EQ(read(path("iv/fine/manifest.json")).substr(read(path("iv/fine/manifest.json")).find("\"files\"")),
            read(path("iv/fine2/manifest.json")).substr(read(path("iv/fine2/manifest.json")).find("\"files\"")));

  const Result d = run({"decompose", "--pre", path("iv/pre"), "--fine", path("iv/fine"), "--rand",
                        path("iv/rand"), "--out", path("dec"), "--dump-subsets"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_NE(d.out.find("Ratio"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("dec/decomposition.csv")));
  EXPECT_TRUE(fs::exists(path("dec/ratio.csv")));
  EXPECT_TRUE(fs::exists(path("dec/subsets.csv")));

  // Identical vector sets: nothing discarded or new, Ratio 1.
  const Result same = run({"decompose", "--pre", path("iv/fine"), "--fine", path("iv/fine"), "--rand",
                           path("iv/fine"), "--out", path("dec_same")});
  ASSERT_EQ(same.code, 0);
  EXPECT_EQ(read(path("dec_same/ratio.csv")).rfind("ratio,defined_subsets,excluded_subsets,samples\n1,", 0), 0u);

  // Misaligned sample sets.
  fs::remove(path("iv/rand/sample_0004.hivb"));
  EXPECT_EQ(run({"decompose", "--pre", path("iv/pre"), "--fine", path("iv/fine"), "--rand", path("iv/rand"),
                 "--out", path("dec_bad")})
                .code,
            cli::kExitUsage);

  // Corrupt table magic is a failure, not a usage error.
  io::write_file(path("badtab/sample_0000.motb"), "JUNKJUNKJUNK");
  EXPECT_EQ(run({"interactions", "--tables", path("badtab"), "--out", path("iv_bad")}).code, cli::kExitFailure);
  // Tampered file covered by a manifest.
  io::write_file(path("tab/fine/sample_0001.motb"), io::encode_table(MaskedOutputTable(8, std::vector<double>(256))));
  EXPECT_EQ(run({"interactions", "--tables", path("tab/fine"), "--out", path("iv_tamper")}).code,
            cli::kExitFailure);
}

TEST_F(CliTest, TrajectoryFromEpochDirectories) {
  // Two epochs: an all-zero vector, then the final one.
  const InteractionVector final_iv(2, {1, -2, 0.5, 3});
  io::write_file(path("traj/e1/s0.hivb"), io::encode_interactions(InteractionVector(2, {0, 0, 0, 0})));
  io::write_file(path("traj/e2/s0.hivb"), io::encode_interactions(final_iv));
  const Result r = run({"trajectory", "--finetune", path("traj/e1"), path("traj/e2"), "--random", path("traj/e1"),
                        path("traj/e2"), "--svg", "chart.svg", "--out", path("traj/out")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read(path("traj/out/trajectory.csv")),
            "variant,epoch,jaccard,samples_n\nfinetune,1,0,1\nfinetune,2,1,1\nrandom,1,0,1\nrandom,2,1,1\n");
  const std::string svg = read(path("traj/out/chart.svg"));
  EXPECT_NE(svg.find("data-variant=\"finetune\""), std::string::npos);
  EXPECT_NE(svg.find("data-variant=\"random\""), std::string::npos);

  EXPECT_EQ(run({"trajectory", "--finetune", path("traj/e2"), "--out", path("traj/one")}).code, cli::kExitUsage);
}

TEST_F(CliTest, PipelineAndOutputEnv) {
  const Result r = run({"pipeline", "--toy", toy().string(), "--samples", "4", "--out", path("pl"), "--format", "jsonl"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(path("pl/decomposition.jsonl")));
  EXPECT_TRUE(fs::exists(path("pl/trajectory.svg")));
  EXPECT_NO_THROW(manifest::load(path("pl")));

  ::setenv(cli::kOutDirEnv, path("from_env").c_str(), 1);
  const Result e = run({"verify", "--n-max", "2", "--trials", "1"});
  EXPECT_EQ(e.code, 0);
  const Result t = run({"train-probe", "--model", (toy() / "models/pretrain.json").string(), "--dataset",
                        (toy() / "data/train.json").string()});
  ::unsetenv(cli::kOutDirEnv);
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_TRUE(fs::exists(path("from_env/probe.json")));
}
