#include "harsanyi/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <random>

#include "harsanyi/error.hpp"
#include "harsanyi/metrics.hpp"

namespace harsanyi {

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

std::string VerifyReport::to_text() const {
  std::string out;
  char buf[256];
  for (const VerifyCheck& c : checks) {
    std::snprintf(buf, sizeof buf, "%-4s %-22s max_error=%.3e tolerance=%.1e cases=%zu\n",
                  c.passed ? "PASS" : "FAIL", c.name.c_str(), c.max_error, c.tolerance, c.cases);
    out += buf;
  }
  out += passed() ? "verification passed\n" : "verification FAILED\n";
  return out;
}

namespace {

std::vector<double> random_values(std::mt19937_64& rng, std::size_t count, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<double> v(count);
  for (double& x : v) x = normal(rng);
  return v;
}

// Values with a share of exact zeros and sign conflicts, for the branchy metrics.
std::vector<double> mixed_values(std::mt19937_64& rng, std::size_t count) {
  std::uniform_int_distribution<int> kind(0, 5);
  std::normal_distribution<double> normal(0.0, 2.0);
  std::vector<double> v(count);
  for (double& x : v) x = kind(rng) == 0 ? 0.0 : normal(rng);
  return v;
}

// Exact |part + rest - total| in units of ulp(total); the sum is formed with
// an error-free two-sum so no rounding hides a miss.
double conservation_ulps(double part, double rest, double total) {
  const double s = part + rest;
  const double bb = s - part;
  const double e = (part - (s - bb)) + (rest - bb);
  const double dev = std::abs((s - total) + e);
  if (dev == 0.0) return 0.0;
  const double ulp = std::nextafter(total, INFINITY) - total;
  return dev / ulp;
}

// Some double r gives part + r == total exactly. Fails only when the exact
// remainder is a rounding tie against a total with an odd mantissa.
bool remainder_representable(double total, double part) {
  double r = total - part;
  for (int i = 0; i < 8; ++i) r = std::nextafter(r, -INFINITY);
  for (int i = 0; i < 17; ++i, r = std::nextafter(r, INFINITY)) {
    if (part + r == total) return true;
  }
  return false;
}

// Bitwise where achievable, otherwise the half-ulp distance of the unrounded sum.
double conservation_error(double part, double rest, double total) {
  if (remainder_representable(total, part)) return part + rest == total ? 0.0 : INFINITY;
  return conservation_ulps(part, rest, total);
}

class Check {
 public:
  Check(std::string name, double tolerance) { c_.name = std::move(name); c_.tolerance = tolerance; }
  void observe(double error) {
    ++c_.cases;
    c_.max_error = std::max(c_.max_error, std::isnan(error) ? INFINITY : error);
  }
  void fail() { bad_ = true; }
  VerifyCheck done() {
    c_.passed = !bad_ && c_.max_error <= c_.tolerance;
    return c_;
  }

 private:
  VerifyCheck c_;
  bool bad_ = false;
};

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
  if (options.n_max < 1 || options.n_max > kVerifyMaxVariables) {
    throw UsageError("verify n_max must lie in 1.." + std::to_string(kVerifyMaxVariables));
  }
  if (options.trials < 1) throw UsageError("verify needs at least one trial");
  const auto transform = options.transform ? options.transform
                                           : [](const MaskedOutputTable& t) { return mobius_transform(t); };
  std::mt19937_64 rng(options.seed);

  Check roundtrip("roundtrip", kRelativeTolerance);
  Check oracle("brute_force_oracle", kRelativeTolerance);
  Check linearity("linearity", kRelativeTolerance);
  Check additive("additive_null", kRelativeTolerance);
  Check conservation("conservation_ulps", 0.5);
  Check ratio_bounds("ratio_bounds", 0.0);
  Check jaccard_props("jaccard_properties", 1e-12);

  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int n = 1; n <= options.n_max; ++n) {
    const std::size_t size = lattice_size(n);
    for (int trial = 0; trial < options.trials; ++trial) {
      const MaskedOutputTable t(n, random_values(rng, size, 1.0));
      const InteractionVector iv = transform(t);
      roundtrip.observe(max_relative_error(zeta_transform(iv).values(), t.values()));
      oracle.observe(max_relative_error(iv.values(), mobius_brute(t).values()));

      const MaskedOutputTable u(n, random_values(rng, size, 1.0));
      const double a = coef(rng), b = coef(rng);
      std::vector<double> mix(size), expected(size);
      const InteractionVector iu = transform(u);
      for (std::size_t m = 0; m < size; ++m) {
        mix[m] = a * t[m] + b * u[m];
        expected[m] = a * iv[m] + b * iu[m];
      }
      linearity.observe(max_relative_error(transform(MaskedOutputTable(n, mix)).values(), expected));

      const std::vector<double> w = random_values(rng, n + 1, 1.0);
      std::vector<double> add(size);
      for (std::size_t m = 0; m < size; ++m) {
        add[m] = w[n];
        for (int j = 0; j < n; ++j) {
          if (m >> j & 1U) add[m] += w[j];
        }
      }
      const InteractionVector ia = transform(MaskedOutputTable(n, add));
      double high = 0.0, scale = 0.0;
      for (std::size_t m = 0; m < size; ++m) {
        scale = std::max(scale, std::abs(add[m]));
        if (std::popcount(m) >= 2) high = std::max(high, std::abs(ia[m]));
      }
      additive.observe(high / std::max(scale, kAbsoluteFloor));

      const InteractionVector pre(n, mixed_values(rng, size));
      const InteractionVector fine(n, mixed_values(rng, size));
      const InteractionVector rnd(n, mixed_values(rng, size));
      const KnowledgeDecomposition d = decompose(pre, fine);
      double err = 0.0;
      for (std::size_t m = 0; m < size; ++m) {
        err = std::max(err, conservation_error(d.preserve[m], d.discard[m], std::abs(pre[m])));
        err = std::max(err, conservation_error(d.preserve[m], d.new_[m], std::abs(fine[m])));
        if (d.preserve[m] < 0.0 || d.discard[m] < 0.0 || d.new_[m] < 0.0) conservation.fail();
        if (pre[m] * fine[m] <= 0.0 && d.preserve[m] != 0.0) conservation.fail();
      }
      conservation.observe(err);

      const LearnabilityRatio r = learnability_ratio(pre, fine, rnd);
      double outside = 0.0;
      for (const auto& v : r.per_subset) {
        if (v) outside = std::max({outside, -*v, *v - 1.0});
      }
      if (r.defined_count + r.excluded_count != size) ratio_bounds.fail();
      ratio_bounds.observe(outside);

      const NonNegVector x = split_nonneg(pre), y = split_nonneg(fine);
      const double jxy = jaccard(x, y);
      double jerr = std::abs(jxy - jaccard(y, x));
      if (jxy < 0.0 || jxy > 1.0) jaccard_props.fail();
      jerr = std::max(jerr, std::abs(jaccard(x, x) - 1.0));
      const bool nonzero = std::any_of(x.values.begin(), x.values.end(), [](double v) { return v > 0.0; });
      for (double s : {0.25, 0.5, 0.75}) {
        if (!nonzero) break;
        NonNegVector scaled = x;
        for (double& v : scaled.values) v *= s;
        jerr = std::max(jerr, std::abs(jaccard(scaled, x) - s));
      }
      jaccard_props.observe(jerr);
    }
  }

  VerifyReport report;
  for (Check* c : {&roundtrip, &oracle, &linearity, &additive, &conservation, &ratio_bounds, &jaccard_props}) {
    report.checks.push_back(c->done());
  }
  return report;
}

}  // namespace harsanyi
