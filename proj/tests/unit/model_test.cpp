#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "harsanyi/dataset.hpp"
#include "harsanyi/error.hpp"
#include "harsanyi/lattice.hpp"
#include "harsanyi/model.hpp"
#include "harsanyi/model_io.hpp"
#include "harsanyi/scoring.hpp"

using namespace harsanyi;

namespace {

DenseLayer layer(std::size_t rows, std::size_t cols, Activation act, std::vector<double> w,
                 std::vector<double> b) {
  return DenseLayer{rows, cols, act, std::move(w), std::move(b)};
}

PortableModel random_model(std::mt19937_64& rng, std::size_t in, std::size_t hidden, std::size_t out) {
  std::normal_distribution<double> d(0.0, 0.7);
  auto fill = [&](std::size_t k) {
    std::vector<double> v(k);
    for (double& x : v) x = d(rng);
    return v;
  };
  return PortableModel(in, out,
                       {layer(hidden, in, Activation::kRelu, fill(hidden * in), fill(hidden)),
                        layer(out, hidden, Activation::kIdentity, fill(out * hidden), fill(out))});
}

// Step-by-step forward pass written independently of apply_layer.
std::vector<double> naive_forward(const PortableModel& m, std::vector<double> x) {
  for (const DenseLayer& l : m.layers()) {
    std::vector<double> y(l.rows);
    for (std::size_t r = 0; r < l.rows; ++r) {
      double acc = l.bias[r];
      for (std::size_t c = 0; c < l.cols; ++c) acc += l.weights[r * l.cols + c] * x[c];
      y[r] = l.activation == Activation::kRelu ? (acc > 0 ? acc : 0.0) : acc;
    }
    x = y;
  }
  return x;
}

double naive_logodds(const std::vector<double>& logits, int y) {
  double denom = 0.0;
  for (double z : logits) denom += std::exp(z);
  const double p = std::exp(logits[y]) / denom;
  return std::log(p / (1.0 - p));
}

Sample sample_of(std::vector<std::vector<double>> vars, int label) { return Sample{std::move(vars), label}; }

}  // namespace

TEST(Model, ValidatesShapes) {
  EXPECT_THROW(PortableModel(2, 1, {}), InvalidArgument);
  EXPECT_THROW(PortableModel(2, 1, {layer(1, 3, Activation::kIdentity, {1, 1, 1}, {0})}), InvalidArgument);
  EXPECT_THROW(PortableModel(2, 1, {layer(1, 2, Activation::kIdentity, {1}, {0})}), InvalidArgument);
  EXPECT_THROW(PortableModel(2, 1, {layer(1, 2, Activation::kIdentity, {1, 1}, {0, 0})}), InvalidArgument);
  EXPECT_THROW(PortableModel(2, 2, {layer(1, 2, Activation::kIdentity, {1, 1}, {0})}), InvalidArgument);
  EXPECT_THROW(PortableModel(2, 1, {layer(1, 2, Activation::kRelu, {1, 1}, {0})}), InvalidArgument);
  EXPECT_THROW(PortableModel(2, 1, {layer(1, 2, Activation::kIdentity, {1, NAN}, {0})}), InvalidArgument);
}

TEST(Model, ForwardMatchesIndependentComputation) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> d;
  for (int trial = 0; trial < 10; ++trial) {
    const PortableModel m = random_model(rng, 6, 9, 3);
    std::vector<double> x(6);
    for (double& v : x) v = d(rng);
    const std::vector<double> got = m.forward(x), want = naive_forward(m, x);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(got[k], want[k], 1e-12);
  }
}

TEST(Model, PenultimateFeatures) {
  const PortableModel m(2, 1,
                        {layer(2, 2, Activation::kRelu, {1, 0, 0, -1}, {0, 0}),
                         layer(1, 2, Activation::kIdentity, {1, 1}, {0})});
  EXPECT_EQ(m.penultimate_features(std::vector<double>{3, 2}), (std::vector<double>{3, 0}));
  EXPECT_EQ(m.penultimate_features(std::vector<double>{0, 0}), (std::vector<double>{0, 0}));
  EXPECT_EQ(m.feature_dim(), 2u);
  EXPECT_THROW(m.forward(std::vector<double>{1}), InvalidArgument);
  const PortableModel single(2, 1, {layer(1, 2, Activation::kIdentity, {1, 1}, {0})});
  EXPECT_THROW(single.penultimate_features(std::vector<double>{1, 1}), InvalidArgument);
}

TEST(Model, ForwardRejectsOverflow) {
  const PortableModel m(1, 1, {layer(1, 1, Activation::kRelu, {1e300}, {0}),
                               layer(1, 1, Activation::kIdentity, {1e300}, {0})});
  EXPECT_THROW(m.forward(std::vector<double>{1e10}), InvalidArgument);
}

TEST(Softmax, StableAndNormalised) {
  const std::vector<double> p = softmax(std::vector<double>{1000, 1000});
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  const std::vector<double> q = softmax(std::vector<double>{0, std::log(3.0)});
  EXPECT_NEAR(q[1], 0.75, 1e-15);
}

TEST(LogOdds, Examples) {
  EXPECT_EQ(confidence_logodds(0.5), 0.0);
  EXPECT_NEAR(confidence_logodds(0.9), 2.19722, 1e-5);
  EXPECT_NEAR(confidence_logodds(1.0), 27.631, 1e-3);
  EXPECT_NEAR(confidence_logodds(0.0), -27.631, 1e-3);
  EXPECT_DOUBLE_EQ(confidence_logodds(1.0), std::log((1 - 1e-12) / 1e-12));
}

TEST(LogOdds, FromProbabilityVector) {
  const std::vector<double> uniform(4, 0.25);
  EXPECT_NEAR(logodds_from_probabilities(uniform, 2), std::log(0.25 / 0.75), 1e-12);
  const std::vector<double> two{0.5, 0.5};
  EXPECT_EQ(logodds_from_probabilities(two, 0), 0.0);
  // p_y within 1e-10 of one: the complement sum keeps digits 1 - p_y would lose.
  const std::vector<double> sharp{3e-11, 7e-11, 1.0 - 1e-10};
  EXPECT_NEAR(logodds_from_probabilities(sharp, 2), -std::log(1e-10), 1e-9);
  // Below the clamp the complement saturates like the confidence form.
  const std::vector<double> saturated{1e-14, 1.0 - 1e-14};
  EXPECT_DOUBLE_EQ(logodds_from_probabilities(saturated, 1), confidence_logodds(1.0));
  EXPECT_THROW(logodds_from_probabilities(two, 2), InvalidArgument);
}

TEST(Dataset, Baselines) {
  const std::vector<Sample> one{sample_of({{1, 2}, {3}}, 0)};
  EXPECT_EQ(compute_baseline(one).variables, one[0].variables);
  const std::vector<Sample> sym{sample_of({{1, -2}, {3}}, 0), sample_of({{-1, 2}, {-3}}, 1)};
  for (const auto& v : compute_baseline(sym).variables) {
    for (double x : v) EXPECT_EQ(x, 0.0);
  }
  const std::vector<Sample> three{sample_of({{1}, {0}}, 0), sample_of({{2}, {3}}, 0), sample_of({{6}, {-6}}, 0)};
  const BaselineVector b = compute_baseline(three);
  EXPECT_DOUBLE_EQ(b.variables[0][0], 3.0);
  EXPECT_DOUBLE_EQ(b.variables[1][0], -1.0);
  EXPECT_THROW(compute_baseline(std::span<const Sample>{}), InvalidArgument);
}

TEST(Dataset, MaskInput) {
  const Sample s = sample_of({{1, 2}, {3}, {4, 5, 6}}, 0);
  const BaselineVector b{{{0, 0}, {-1}, {9, 9, 9}}};
  EXPECT_EQ(mask_input(s, b, SubsetMask(0b101, 3)), (std::vector<double>{1, 2, -1, 4, 5, 6}));
  EXPECT_EQ(mask_input(s, b, SubsetMask::full(3)), s.flatten());
  EXPECT_EQ(mask_input(s, b, SubsetMask::empty(3)), (std::vector<double>{0, 0, -1, 9, 9, 9}));
  EXPECT_THROW(mask_input(s, b, SubsetMask(0, 2)), InvalidArgument);
  const BaselineVector wrong{{{0}, {0}, {0, 0, 0}}};
  EXPECT_THROW(mask_input(s, wrong, SubsetMask(0, 3)), InvalidArgument);
}

TEST(Dataset, FromFlat) {
  const std::vector<std::vector<double>> x{{1, 2, 3}, {4, 5, 6}};
  const std::vector<int> y{0, 1};
  const Dataset d = Dataset::from_flat({1, 2}, x, y);
  EXPECT_EQ(d.input_dim(), 3u);
  EXPECT_EQ(d.variable_count(), 2);
  EXPECT_EQ(d.samples[1].variables[1], (std::vector<double>{5, 6}));
  EXPECT_EQ(d.effective_baseline().variables[0][0], 2.5);
  EXPECT_THROW(Dataset::from_flat({1, 1}, x, y), InvalidArgument);
}

TEST(Scoring, EmptyMaskIdentityModelGivesSoftmaxOfBias) {
  const PortableModel m(1, 2, {layer(2, 1, Activation::kIdentity, {1, 1}, {0.3, -0.4})});
  const Sample s = sample_of({{5}}, 0);
  const BaselineVector b{{{0}}};
  const std::vector<double> p = evaluate_masked(m, s, b, SubsetMask::empty(1));
  const std::vector<double> want = softmax(std::vector<double>{0.3, -0.4});
  EXPECT_DOUBLE_EQ(p[0], want[0]);
  EXPECT_DOUBLE_EQ(p[1], want[1]);
}

TEST(Scoring, TableMatchesStandaloneScores) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> d;
  const PortableModel m = random_model(rng, 4, 7, 3);
  const Sample s = sample_of({{d(rng)}, {d(rng), d(rng)}, {d(rng)}}, 2);
  const BaselineVector b{{{0.1}, {0.2, -0.3}, {0}}};
  const MaskedOutputTable t = build_masked_table(m, s, b, Scorer::model_head());
  ASSERT_EQ(t.n(), 3);
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    const std::vector<double> logits = naive_forward(m, mask_input(s, b, SubsetMask(mask, 3)));
    EXPECT_NEAR(t[mask], naive_logodds(logits, 2), 1e-9) << mask;
  }
  EXPECT_NEAR(t[7], naive_logodds(naive_forward(m, s.flatten()), 2), 1e-9);
}

TEST(Scoring, SampleEqualToBaselineGivesConstantTable) {
  std::mt19937_64 rng(22);
  const PortableModel m = random_model(rng, 3, 5, 2);
  const Sample s = sample_of({{0.5}, {1.5}, {-2}}, 1);
  const BaselineVector b{s.variables};
  const MaskedOutputTable t = build_masked_table(m, s, b, Scorer::model_head());
  for (double v : t.values()) EXPECT_EQ(v, t[0]);
}

TEST(Scoring, IgnoredVariableHasNoInteractions) {
  // Variable 0's slice has zero weight everywhere.
  const PortableModel m(3, 2,
                        {layer(3, 3, Activation::kRelu, {0, 1, -1, 0, 0.5, 2, 0, -1, 1}, {0.1, 0, 0.2}),
                         layer(2, 3, Activation::kIdentity, {1, -1, 0.5, -0.5, 1, 1}, {0, 0.1})});
  const Sample s = sample_of({{4}, {1.2}, {-0.7}}, 0);
  const BaselineVector b{{{0}, {0}, {0}}};
  const InteractionVector iv = mobius_transform(build_masked_table(m, s, b, Scorer::model_head()));
  for (std::size_t mask = 0; mask < 8; ++mask) {
    if (mask & 1) EXPECT_NEAR(iv[mask], 0.0, 1e-12) << mask;
  }
}

TEST(Scoring, ProbeHead) {
  std::mt19937_64 rng(23);
  const PortableModel m = random_model(rng, 2, 4, 2);
  ProbeClassifier probe{3, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1}, {0, 0.5, -0.5}};
  const Sample s = sample_of({{0.3}, {-1.1}}, 1);
  const BaselineVector b{{{0}, {0}}};
  const MaskedOutputTable model_t = build_masked_table(m, s, b, Scorer::model_head());
  const MaskedOutputTable probe_t = build_masked_table(m, s, b, Scorer::probe_head(probe));
  EXPECT_EQ(model_t.n(), probe_t.n());
  EXPECT_NE(model_t, probe_t);
  const std::vector<double> f = m.penultimate_features(s.flatten());
  EXPECT_NEAR(probe_t[3], naive_logodds(probe.logits(f), 1), 1e-12);

  ProbeClassifier wrong{3, 5, std::vector<double>(15, 0.0), {0, 0, 0}};
  EXPECT_THROW(build_masked_table(m, s, b, Scorer::probe_head(wrong)), InvalidArgument);
}

TEST(ModelIo, RoundTrip) {
  std::mt19937_64 rng(30);
  const PortableModel m = random_model(rng, 5, 3, 2);
  EXPECT_EQ(io::model_from_text(io::model_to_text(m)), m);
}

TEST(ModelIo, AcceptsHexFloatsAndRejectsUnknownKeys) {
  const std::string text = R"({"version":1,"input_dim":2,"output_dim":1,"layers":[
      {"rows":1,"cols":2,"activation":"identity","weights":["0x1.8p+1", "0.25"],"bias":[-1]}]})";
  const PortableModel m = io::model_from_text(text);
  EXPECT_EQ(m.layers()[0].weights, (std::vector<double>{3.0, 0.25}));
  EXPECT_THROW(io::model_from_text(R"({"version":1,"input_dim":2,"output_dim":1,"layers":[],"extra":0})"),
               FormatError);
  EXPECT_THROW(io::model_from_text(R"({"version":1,"input_dim":2,"output_dim":1})"), FormatError);
  EXPECT_THROW(io::model_from_text(R"({"version":9,"input_dim":2,"output_dim":1,"layers":[]})"), FormatError);
  EXPECT_THROW(io::model_from_text("not json"), FormatError);
  EXPECT_THROW(io::model_from_text(R"({"version":1,"input_dim":2,"output_dim":1,"layers":[
      {"rows":1,"cols":2,"activation":"identity","weights":["abc", 1],"bias":[0]}]})"),
               FormatError);
  // Structurally valid JSON with inconsistent shapes is a format error too.
  EXPECT_THROW(io::model_from_text(R"({"version":1,"input_dim":2,"output_dim":1,"layers":[
      {"rows":1,"cols":3,"activation":"identity","weights":[1,1,1],"bias":[0]}]})"),
               FormatError);
}

TEST(ModelIo, ProbeAndDataset) {
  const ProbeClassifier probe{2, 3, {1, 2, 3, 4, 5, 6}, {0.5, -0.5}};
  EXPECT_EQ(io::probe_from_text(io::probe_to_text(probe)), probe);

  const std::vector<std::vector<double>> x{{1, 2, 3}, {4, 5, 6}};
  const std::vector<int> y{0, 1};
  Dataset d = Dataset::from_flat({1, 2}, x, y);
  d.baseline = BaselineVector{{{0}, {0.5, 0.25}}};
  const Dataset back = io::dataset_from_text(io::dataset_to_text(d));
  EXPECT_EQ(back.slice_sizes, d.slice_sizes);
  ASSERT_EQ(back.samples.size(), 2u);
  EXPECT_EQ(back.samples[1].variables, d.samples[1].variables);
  EXPECT_EQ(back.samples[1].label, 1);
  ASSERT_TRUE(back.baseline.has_value());
  EXPECT_EQ(back.baseline->variables, d.baseline->variables);
  EXPECT_THROW(io::dataset_from_text(R"({"version":1,"boundaries":[1,2],"samples":[]})"), FormatError);
  EXPECT_THROW(io::dataset_from_text(R"({"version":1,"boundaries":[0,2],"samples":[{"label":0,"x":[1]}]})"),
               FormatError);
}
