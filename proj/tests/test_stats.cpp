#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "influx/rng.hpp"
#include "influx/stats.hpp"

using namespace influx;

TEST_SUITE_BEGIN("stats");

TEST_CASE("upsilon against high-precision references") {
  // Independently computed with 50-digit arithmetic.
  CHECK(upsilon({1.0, 2.0 / std::exp(1.0)}) ==
        doctest::Approx(2.8731273138361809414).epsilon(1e-12));
  CHECK(upsilon({0.1, 0.001 / 7115.0}) ==
        doctest::Approx(4732.2886281749648579).epsilon(1e-12));
  CHECK(upsilon1({1.0, 2.0 / std::exp(1.0)}) ==
        doctest::Approx(6.7462546276723618829).epsilon(1e-12));
  CHECK(upsilon1({0.5, 0.25}) ==
        doctest::Approx(36.847001745555723357).epsilon(1e-12));
}

TEST_CASE("guarded ceil resists sub-ulp drift") {
  CHECK(guarded_ceil(5.0) == 5);
  CHECK(guarded_ceil(5.0 + 1e-12) == 5);  // drift-sized excess is forgiven
  CHECK(guarded_ceil(5.0 + 1e-6) == 6);
  CHECK(guarded_ceil(5.2) == 6);
  CHECK(guarded_ceil(0.0) == 0);
  CHECK(guarded_ceil(-2.3) == -2);
  CHECK(guarded_ceil(6.7462546276723619) == 7);
}

TEST_CASE("top-k degree target") {
  CHECK(topk_degree_target({0.1, 0.001}, 7115) == 5207);
  CHECK(topk_degree_target({1.0 / 3.0, 0.25}, 3) == 111);
  CHECK(topk_degree_target({0.2, 0.1}, 1000) == 855);
}

TEST_CASE("top-k error bound values and the (61/15) eps cap") {
  CHECK(topk_error_bound({0.1, 0.001}, 7115) ==
        doctest::Approx(0.36379196776244747).epsilon(1e-12));
  CHECK(topk_error_bound({0.1, 0.001}, 99000) ==
        doctest::Approx(0.36377052214121480).epsilon(1e-12));
  CHECK(topk_error_bound({0.2, 0.1}, 1000) ==
        doctest::Approx(0.66741641530961259).epsilon(1e-12));
  for (double eps : {0.01, 0.05, 0.1, 0.2, 1.0 / 3.0}) {
    for (double delta : {0.25, 0.05, 1e-3, 1e-6}) {
      for (std::int64_t n : {2ll, 100ll, 7115ll, 1000000ll}) {
        double bound = topk_error_bound({eps, delta}, n);
        CHECK(bound > 0.0);
        CHECK(bound <= 61.0 / 15.0 * eps + 1e-12);
      }
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(upsilon({0.0, 0.1}), std::domain_error);
  CHECK_THROWS_AS(upsilon({0.1, 0.0}), std::domain_error);
  CHECK_THROWS_AS(upsilon({0.1, 1.0}), std::domain_error);
  CHECK_THROWS_AS(require_tracker_params({0.4, 0.1}), std::domain_error);
  CHECK_THROWS_AS(require_tracker_params({0.1, 0.3}), std::domain_error);
  CHECK_NOTHROW(require_tracker_params({1.0 / 3.0, 0.25}));
  CHECK_THROWS_AS(topk_degree_target({0.1, 0.001}, 0), std::domain_error);
  CHECK_THROWS_AS(im_targets({0.1, 0.001}, 1, 1, IMMode::practical),
                  std::domain_error);
  CHECK_THROWS_AS(im_targets({0.1, 0.001}, 10, 6, IMMode::practical),
                  std::domain_error);
  CHECK_THROWS_AS(im_targets({0.1, 0.001}, 10, 0, IMMode::practical),
                  std::domain_error);
}

TEST_CASE("practical IM sizing halves the single-pool target") {
  double es = im_half_eps();
  SizeTargets t = im_targets({es, 0.001}, 7115, 50, IMMode::practical);
  // Inner pool target 23095 (odd) must round up when halved.
  CHECK(t.d1_target == 11548);
  CHECK(t.m2_ratio == 1.0);
  // Halving never loses more than one unit against the exact half.
  SizeTargets t2 = im_targets({0.1, 0.001}, 1000, 10, IMMode::practical);
  CHECK(t2.d1_target >= 1);
  CHECK(t2.m2_ratio == 1.0);
}

TEST_CASE("theoretical IM sizing") {
  SizeTargets t = im_targets({0.3, 0.1}, 10, 2, IMMode::theoretical);
  CHECK(t.d1_target == 238);
  CHECK(t.m2_ratio == doctest::Approx(1.2295814388176222).epsilon(1e-12));

  // k_max = 1 collapses the binomial to n.
  SizeTargets one = im_targets({0.3, 0.1}, 10, 1, IMMode::theoretical);
  double expect = std::log(3.0 * 10 / (2.0 * 0.1)) / std::log(2.0 * 10 / 0.1);
  CHECK(one.m2_ratio == doctest::Approx(expect).epsilon(1e-12));

  // The ratio grows with k_max but sublinearly: doubling k_max from 50 to
  // 100 on a million vertices less than doubles it.
  SizeTargets r50 = im_targets({0.1, 0.01}, 1000000, 50, IMMode::theoretical);
  SizeTargets r100 = im_targets({0.1, 0.01}, 1000000, 100, IMMode::theoretical);
  CHECK(r50.m2_ratio == doctest::Approx(28.634095346146550).epsilon(1e-12));
  CHECK(r100.m2_ratio == doctest::Approx(53.511906113744832).epsilon(1e-12));
  double quotient = r100.m2_ratio / r50.m2_ratio;
  CHECK(quotient > 1.0);
  CHECK(quotient <= 2.0);
}

TEST_CASE("log_binomial matches exact small cases") {
  CHECK(log_binomial(10, 2) == doctest::Approx(std::log(45.0)).epsilon(1e-12));
  CHECK(log_binomial(5, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(log_binomial(5, 5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(log_binomial(3, 4), std::domain_error);
}

TEST_CASE("practical approximation factor lands on one half") {
  double es = im_half_eps();
  CHECK(es == doctest::Approx(0.080950244829576941).epsilon(1e-14));
  double inv_e = 1.0 / std::exp(1.0);
  CHECK(std::fabs(1.0 - inv_e - (2.0 - inv_e) * es - 0.5) < 1e-9);
}

TEST_CASE("stopping rule on a deterministic sampler") {
  // eps=1, delta=2/e: ceil(Upsilon_1) = 7 positives required.
  EpsDelta cfg{1.0, 2.0 / std::exp(1.0)};
  int calls = 0;
  auto alternating = [&]() { return ++calls % 2; };  // 1,0,1,0,...
  StoppingRuleResult r = stopping_rule_estimate(alternating, cfg, 1000000);
  CHECK(r.completed);
  CHECK(r.positives == 7);
  CHECK(r.draws == 13);  // positives land on draws 1,3,...,13
  CHECK(r.estimate == doctest::Approx(7.0 / 13.0));

  calls = 0;
  auto exhausted = [&]() { return ++calls <= 3 ? 1 : -1; };
  StoppingRuleResult ex = stopping_rule_estimate(exhausted, cfg, 1000000);
  CHECK_FALSE(ex.completed);
  CHECK(ex.positives == 3);
  CHECK(std::isnan(ex.estimate));

  calls = 0;
  StoppingRuleResult cap = stopping_rule_estimate(alternating, cfg, 5);
  CHECK_FALSE(cap.completed);
  CHECK(cap.draws == 5);
}

TEST_CASE("stopping rule hits its accuracy guarantee on Bernoulli draws") {
  // (eps, delta) = (0.5, 0.25): at most a quarter of the runs may miss the
  // relative-error band. Observed failures are far rarer.
  const EpsDelta cfg{0.5, 0.25};
  const double p = 0.3;
  const int trials = 10000;
  Rng rng(20240817);
  int failures = 0;
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    auto sampler = [&]() { return rng.uniform() < p ? 1 : 0; };
    StoppingRuleResult r = stopping_rule_estimate(sampler, cfg, 1 << 20);
    REQUIRE(r.completed);
    sum += r.estimate;
    if (std::fabs(r.estimate - p) > cfg.eps * p) ++failures;
  }
  CHECK(static_cast<double>(failures) / trials <= cfg.delta);
  CHECK(sum / trials == doctest::Approx(p).epsilon(0.02));
}

TEST_SUITE_END();
