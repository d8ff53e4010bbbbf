#include "influx/stats.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace influx {

namespace {

constexpr double k4em2 = 4.0 * (std::numbers::e - 2.0);
constexpr double kInvE = 1.0 / std::numbers::e;

}  // namespace

void require_eps_delta(const EpsDelta& e) {
  if (!(e.eps > 0.0)) {
    throw std::domain_error("eps must be positive, got " + std::to_string(e.eps));
  }
  if (!(e.delta > 0.0 && e.delta < 1.0)) {
    throw std::domain_error("delta must lie in (0,1), got " +
                            std::to_string(e.delta));
  }
}

void require_tracker_params(const EpsDelta& e) {
  require_eps_delta(e);
  if (e.eps > 1.0 / 3.0) {
    throw std::domain_error("tracker guarantees need eps <= 1/3, got " +
                            std::to_string(e.eps));
  }
  if (e.delta > 0.25) {
    throw std::domain_error("tracker guarantees need delta <= 1/4, got " +
                            std::to_string(e.delta));
  }
}

double upsilon(const EpsDelta& e) {
  require_eps_delta(e);
  return k4em2 * std::log(2.0 / e.delta) / (e.eps * e.eps);
}

double upsilon1(const EpsDelta& e) { return 1.0 + (1.0 + e.eps) * upsilon(e); }

std::int64_t guarded_ceil(double x) {
  return static_cast<std::int64_t>(std::ceil(x - std::fabs(x) * 1e-9));
}

std::int64_t topk_degree_target(const EpsDelta& e, std::int64_t n) {
  require_tracker_params(e);
  if (n < 1) throw std::domain_error("n must be at least 1");
  return guarded_ceil(upsilon1({e.eps, e.delta / static_cast<double>(n)}));
}

double topk_error_bound(const EpsDelta& e, std::int64_t n) {
  require_tracker_params(e);
  if (n < 1) throw std::domain_error("n must be at least 1");
  double b = k4em2 * std::log(2.0 * static_cast<double>(n) / e.delta);
  double eps = e.eps;
  double bound =
      1.0 - ((1.0 - eps * eps / b) * (1.0 - eps) * (1.0 - eps) / (1.0 + eps) -
             eps);
  return bound;
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) {
    throw std::domain_error("log_binomial needs 0 <= k <= n");
  }
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double im_half_eps() { return (0.5 - kInvE) / (2.0 - kInvE); }

SizeTargets im_targets(const EpsDelta& e, std::int64_t n, std::int64_t k_max,
                       IMMode mode) {
  require_tracker_params(e);
  if (n < 2) throw std::domain_error("im_targets needs n >= 2");
  if (k_max < 1 || 2 * k_max > n) {
    throw std::domain_error("im_targets needs 1 <= k_max <= n/2");
  }
  double nd = static_cast<double>(n);
  if (mode == IMMode::theoretical) {
    double d1 = upsilon1({e.eps, 2.0 * e.delta / (3.0 * nd)});
    double log_n_choose = log_binomial(n, k_max);
    double ratio = (std::log(3.0 / (2.0 * e.delta)) + log_n_choose) /
                   std::log(2.0 * nd / e.delta);
    return {guarded_ceil(d1), ratio};
  }
  // Practical mode: half the pool of the self-bounding single-pool scheme,
  // overall failure probability 1/n baked into the inner delta.
  double inner_eps = e.eps / (2.0 - kInvE);
  double d1 = upsilon1({inner_eps, 2.0 / (3.0 * nd * nd)});
  std::int64_t full = guarded_ceil(d1);
  std::int64_t half = full / 2 + (full % 2);  // round up on odd
  return {half, 1.0};
}

StoppingRuleResult stopping_rule_estimate(const std::function<int()>& sampler,
                                          const EpsDelta& e,
                                          std::uint64_t max_draws) {
  require_eps_delta(e);
  const auto target = static_cast<std::uint64_t>(guarded_ceil(upsilon1(e)));
  std::uint64_t draws = 0;
  std::uint64_t positives = 0;
  while (positives < target) {
    if (draws >= max_draws) {
      return {std::numeric_limits<double>::quiet_NaN(), draws, positives,
              false};
    }
    int z = sampler();
    if (z < 0) {
      return {std::numeric_limits<double>::quiet_NaN(), draws, positives,
              false};
    }
    ++draws;
    if (z > 0) ++positives;
  }
  return {static_cast<double>(target) / static_cast<double>(draws), draws,
          positives, true};
}

}  // namespace influx
