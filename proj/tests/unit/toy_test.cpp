#include <gtest/gtest.h>

#include <bit>
#include <filesystem>

#include "harsanyi/error.hpp"
#include "harsanyi/lattice_io.hpp"
#include "harsanyi/manifest.hpp"
#include "harsanyi/pipeline.hpp"
#include "harsanyi/toy.hpp"

using namespace harsanyi;
namespace fs = std::filesystem;

namespace {

toy::ToyConfig small_config(std::uint64_t seed) {
  toy::ToyConfig c;
  c.seed = seed;
  c.variables = 8;
  c.pretrain_samples = 1500;
  c.pretrain_epochs = 10;
  c.test_samples = 100;
  c.finetune_epochs = 4;
  return c;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("harsanyi_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(ToyConfig, Validation) {
  toy::ToyConfig c;
  EXPECT_NO_THROW(c.validate());
  c.variables = 7;
  EXPECT_THROW(c.validate(), UsageError);
  c.variables = 13;
  EXPECT_THROW(c.validate(), UsageError);
  c = {};
  c.classes = 5;
  EXPECT_THROW(c.validate(), UsageError);
  c = {};
  c.finetune_epochs = 1;
  EXPECT_THROW(c.validate(), UsageError);
  c = {};
  EXPECT_EQ(toy::ToyConfig::from_json(c.to_json()).to_json(), c.to_json());
}

TEST(Toy, DeterministicForSeed) {
  const toy::ToySuite a = toy::generate_toy_suite(small_config(0));
  const toy::ToySuite b = toy::generate_toy_suite(small_config(0));
  EXPECT_EQ(a.pretrain, b.pretrain);
  EXPECT_EQ(a.finetune(), b.finetune());
  EXPECT_EQ(a.random(), b.random());
  EXPECT_EQ(a.probe, b.probe);
  const toy::ToySuite c = toy::generate_toy_suite(small_config(1));
  EXPECT_NE(a.finetune(), c.finetune());
}

TEST(Toy, WrittenSuiteIsByteIdenticalAndReadable) {
  const toy::ToySuite suite = toy::generate_toy_suite(small_config(0));
  const fs::path a = fresh_dir("toy_a"), b = fresh_dir("toy_b");
  toy::write_toy_suite(suite, a, false);
  toy::write_toy_suite(toy::generate_toy_suite(small_config(0)), b, false);
  EXPECT_EQ(io::read_file(a / "manifest.json"), io::read_file(b / "manifest.json"));

  const auto m = manifest::load(a);
  EXPECT_EQ(m.at("checkpoints").size(), 2u);
  EXPECT_EQ(m.at("models").size(), 3u);
  EXPECT_EQ(m.at("checkpoints").at("finetune").size(), 4u);
  EXPECT_EQ(m.at("params").at("variables"), 8);

  const toy::ToySuite back = toy::read_toy_suite(a);
  EXPECT_EQ(back.finetune(), suite.finetune());
  EXPECT_EQ(back.random_checkpoints.size(), 4u);
  EXPECT_EQ(back.probe, suite.probe);
  EXPECT_EQ(back.test.samples.size(), suite.test.samples.size());

  EXPECT_THROW(toy::write_toy_suite(suite, a, false), UsageError);
  EXPECT_NO_THROW(toy::write_toy_suite(suite, a, true));

  // Tampering with a checkpoint is caught on read.
  io::write_file(a / "checkpoints" / "finetune" / "epoch_001.json", "{}");
  EXPECT_THROW(toy::read_toy_suite(a), IntegrityError);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Toy, SharedDimensions) {
  const toy::ToySuite s = toy::generate_toy_suite(small_config(2));
  for (const PortableModel* m : {&s.finetune(), &s.random()}) {
    EXPECT_EQ(m->input_dim(), s.pretrain.input_dim());
    EXPECT_EQ(m->output_dim(), 2u);
  }
  EXPECT_EQ(s.pretrain.output_dim(), static_cast<std::size_t>(toy::kPretrainClasses));
  EXPECT_EQ(s.train.variable_count(), 8);
  EXPECT_EQ(s.probe.feature_dim, s.pretrain.feature_dim());
}

// Scenario property on the default task: fine-tuning from the pretrained
// backbone beats training from scratch at every matched epoch. Retried on a
// few seeds since it is a property of the generated data, not an identity.
TEST(Toy, FinetuneBeatsScratchAtMatchedEpochs) {
  bool held = false;
  for (std::uint64_t seed = 0; seed < 3 && !held; ++seed) {
    toy::ToyConfig c;
    c.seed = seed;
    const toy::ToySuite s = toy::generate_toy_suite(c);
    held = true;
    for (std::size_t e = 0; e < s.finetune_accuracy.size(); ++e) {
      held = held && s.finetune_accuracy[e] > s.random_accuracy[e];
    }
  }
  EXPECT_TRUE(held);
}

TEST(Toy, LinearModelIsAdditiveUnderMasking) {
  const toy::ToyConfig c = small_config(0);
  const PortableModel m = toy::random_linear_model(24, 2, 0.5, 3);
  const Dataset d = toy::sample_toy_dataset(c, 5, 1);
  const std::vector<InteractionVector> ivs =
      interactions_for(m, Scorer::model_head(), d.samples, d.effective_baseline());
  for (const InteractionVector& iv : ivs) {
    double scale = 0.0;
    for (double x : zeta_transform(iv).values()) scale = std::max(scale, std::abs(x));
    for (std::size_t s = 0; s < iv.size(); ++s) {
      if (std::popcount(s) >= 2) EXPECT_LE(std::abs(iv[s]), 1e-9 * std::max(scale, 1.0)) << s;
    }
  }
}

TEST(Toy, AnalysisShapes) {
  const toy::ToySuite s = toy::generate_toy_suite(small_config(0));
  AnalysisOptions o;
  o.samples = 3;
  o.jobs = 2;
  const ToyAnalysis a = analyze_toy_suite(s, o);
  EXPECT_EQ(a.pretrain.size(), 3u);
  EXPECT_EQ(a.finetune_epochs.size(), 4u);
  EXPECT_EQ(a.finetune_trajectory.size(), 4u);
  EXPECT_EQ(a.finetune_trajectory.back().similarity, 1.0);
  EXPECT_EQ(a.random_trajectory.back().similarity, 1.0);
  EXPECT_EQ(a.orders.n, 8);
  o.jobs = 1;
  const ToyAnalysis serial = analyze_toy_suite(s, o);
  EXPECT_EQ(serial.finetune, a.finetune);
  o.samples = 0;
  EXPECT_THROW(analyze_toy_suite(s, o), InvalidArgument);
}
