#pragma once

#include <cstdint>
#include <functional>

namespace influx {

// Accuracy/confidence pair for the stopping rule and the trackers built on it.
struct EpsDelta {
  double eps;    // relative error, > 0
  double delta;  // failure probability, in (0,1)
};

// Throws std::domain_error unless 0 < eps and 0 < delta < 1.
void require_eps_delta(const EpsDelta& e);

// Tracker guarantees additionally need eps <= 1/3 and delta <= 1/4.
void require_tracker_params(const EpsDelta& e);

// Upsilon(eps, delta) = 4(e-2) ln(2/delta) / eps^2.
double upsilon(const EpsDelta& e);

// Upsilon_1(eps, delta) = 1 + (1+eps) Upsilon(eps, delta).
double upsilon1(const EpsDelta& e);

// ceil with a 1e-9 relative guard so sub-ulp float drift cannot push a value
// that is mathematically an integer up to the next one.
std::int64_t guarded_ceil(double x);

// Degree target for a top-k tracker over n vertices: ceil(Upsilon_1(eps, delta/n)).
std::int64_t topk_degree_target(const EpsDelta& e, std::int64_t n);

// Worst-case false-positive error rate of the top-k query,
// 1 - [(1 - eps^2/B)(1-eps)^2/(1+eps) - eps] with B = 4(e-2) ln(2n/delta).
// Always at most (61/15) eps under the tracker preconditions.
double topk_error_bound(const EpsDelta& e, std::int64_t n);

enum class IMMode { practical, theoretical };

// Pool sizing for an influence-maximization tracker.
struct SizeTargets {
  std::int64_t d1_target;  // max-degree invariant for the sized pool
  double m2_ratio;         // |R2| / |R1|; 1.0 in practical mode
};

// theoretical: d1 = ceil(Upsilon_1(eps, 2 delta / (3n))),
//              ratio = ln(3 C(n,k_max) / (2 delta)) / ln(2n / delta).
// practical:   d1 = ceil(ceil(Upsilon_1(eps/(2-1/e), 2/(3n^2))) / 2), ratio = 1.
// Requires 1 <= k_max <= n/2.
SizeTargets im_targets(const EpsDelta& e, std::int64_t n, std::int64_t k_max,
                       IMMode mode);

// ln C(n,k) computed from log-gamma; never a direct factorial.
double log_binomial(std::int64_t n, std::int64_t k);

// The eps that makes the practical-mode approximation factor
// 1 - 1/e - (2 - 1/e) eps land exactly on 1/2.
double im_half_eps();

struct StoppingRuleResult {
  double estimate;          // ceil(Upsilon_1)/draws; NaN when not completed
  std::uint64_t draws;      // total draws consumed
  std::uint64_t positives;  // positives observed
  bool completed;
};

// Runs the stopping rule: draws from `sampler` until ceil(Upsilon_1(e))
// positives have been seen, then estimates the positive rate as
// ceil(Upsilon_1)/draws. `sampler` returns 1 or 0 per draw; a negative value
// signals exhaustion. Stops unfinished (completed=false, partial counts kept)
// on exhaustion or after max_draws.
StoppingRuleResult stopping_rule_estimate(const std::function<int()>& sampler,
                                          const EpsDelta& e,
                                          std::uint64_t max_draws);

}  // namespace influx
