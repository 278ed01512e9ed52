#pragma once

#include "dds/types.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <variant>

namespace dds {

// Ordered set of unit-norm poll directions (one per column).  The column
// order is the polling order; opportunistic polling accepts the first
// direction that passes the decrease test.
class PollSet {
 public:
  // Columns must be unit norm within 1e-12.
  explicit PollSet(Matrix directions,
                   std::optional<double> cosine_measure = std::nullopt);

  int dim() const { return static_cast<int>(directions_.rows()); }
  int size() const { return static_cast<int>(directions_.cols()); }
  const Matrix& directions() const { return directions_; }
  Vector direction(int idx) const { return directions_.col(idx); }

  // Known lower bound on the cosine measure (exact for canonical_pss);
  // empty for arbitrary user-supplied sets.
  std::optional<double> cosine_measure() const { return cosine_measure_; }

 private:
  Matrix directions_;
  std::optional<double> cosine_measure_;
};

// The coordinate poll set {+e_1..+e_n, -e_1..-e_n}; cosine measure 1/sqrt(n).
PollSet canonical_pss(int n);

// Monte Carlo estimate of the cosine measure: minimum over sampled unit
// vectors v of max_d d . v.  Sampling a finite subset of the sphere can
// only raise the minimum, so the estimate upper-bounds the true measure.
double cosine_measure_estimate(const PollSet& d, int samples,
                               std::uint64_t seed);

// Forcing function rho(alpha) = c * alpha^(1 + tau), 0 < tau < 1.
// Nondecreasing, and rho(alpha)/alpha -> 0 as alpha -> 0.
struct ForcingFunction {
  double c = 1e-8;
  double tau = 0.8;

  double operator()(double alpha) const;
};

// Power bound rule c / (1 + k)^tau used for adaptive stepsize clamps.
// c = 0 disables the lower clamp, c = +inf the upper one.
struct PowerBound {
  double c = 0.0;
  double tau = 0.0;

  double at(std::int64_t k) const;
};

// Predefined decaying stepsize alpha^(k) = alpha0 / (1 + k)^tau, shared by
// all agents.
struct VanishingSchedule {
  double tau = 0.6;
};

// Expansion on success, contraction on failure, clamped into
// [lower(k), upper(k)]; each agent keeps its own stepsize.
struct AdaptiveSchedule {
  double theta = 0.5;
  PowerBound lower{0.0, 0.0};
  PowerBound upper{std::numeric_limits<double>::infinity(), 0.0};
};

using StepsizeSchedule = std::variant<VanishingSchedule, AdaptiveSchedule>;

// Stepsize for iteration k+1 given the value used at iteration k.
//   Vanishing: alpha0 / (1 + k + 1)^tau, independent of success.
//   Adaptive:  success -> min(alpha/theta, upper(k));
//              failure -> max(theta*alpha, lower(k)).
double update_stepsize(const StepsizeSchedule& s, double alpha0, double alpha,
                       bool success, std::int64_t k);

// Whether the pair (schedule, forcing) satisfies the summability and
// bound-sequence requirements the convergence analysis assumes.  The
// unclamped adaptive variant (lower 0, upper inf) does not.
bool theory_compliant(const StepsizeSchedule& s, const ForcingFunction& rho);

struct PollResult {
  int direction_index = -1;
  Vector direction;
  Vector trial_point;
  double trial_value = 0.0;
};

struct PollOutcome {
  std::optional<PollResult> accepted;  // empty: every direction failed
  double baseline = 0.0;               // f(x) the comparisons used
  int evals = 0;  // evaluations performed here, baseline included when computed
};

// Opportunistic poll around x: walks the directions in order and accepts
// the first trial with f(x + alpha d) <= f(x) - rho(alpha).  A supplied
// baseline is trusted and not re-evaluated.  EvalFailure thrown by `f` is
// re-tagged with the direction index being probed.
PollOutcome poll(const std::function<double(const Vector&)>& f,
                 const Vector& x, double alpha, const PollSet& d,
                 const ForcingFunction& rho,
                 std::optional<double> baseline = std::nullopt);

}  // namespace dds
