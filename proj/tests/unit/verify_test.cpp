#include <gtest/gtest.h>

#include <chrono>

#include "harsanyi/error.hpp"
#include "harsanyi/verify.hpp"

using namespace harsanyi;

TEST(Verify, DefaultRunPasses) {
  const VerifyReport r = run_verification({});
  EXPECT_TRUE(r.passed()) << r.to_text();
  bool saw_roundtrip = false;
  for (const VerifyCheck& c : r.checks) {
    EXPECT_GT(c.cases, 0u) << c.name;
    if (c.name == "roundtrip") {
      saw_roundtrip = true;
      EXPECT_LE(c.max_error, 1e-9);
    }
  }
  EXPECT_TRUE(saw_roundtrip);
}

TEST(Verify, CorruptedTransformFails) {
  VerifyOptions o;
  o.n_max = 4;
  o.trials = 3;
  o.transform = [](const MaskedOutputTable& t) {
    const InteractionVector iv = mobius_transform(t);
    std::vector<double> v(iv.values().begin(), iv.values().end());
    v.back() += 0.01;
    return InteractionVector(iv.n(), v);
  };
  const VerifyReport r = run_verification(o);
  EXPECT_FALSE(r.passed());
  EXPECT_NE(r.to_text().find("FAIL"), std::string::npos);
}

TEST(Verify, SmallRunIsFast) {
  VerifyOptions o;
  o.n_max = 4;
  const auto start = std::chrono::steady_clock::now();
  EXPECT_TRUE(run_verification(o).passed());
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 1.0);
}

TEST(Verify, RejectsLargeN) {
  VerifyOptions o;
  o.n_max = 13;
  EXPECT_THROW(run_verification(o), UsageError);
  o.n_max = 0;
  EXPECT_THROW(run_verification(o), UsageError);
}
