#include "dds/searchcore.hpp"

#include "dds/rng.hpp"

#include <cmath>
#include <string>

namespace dds {

PollSet::PollSet(Matrix directions, std::optional<double> cosine_measure)
    : directions_(std::move(directions)), cosine_measure_(cosine_measure) {
  if (directions_.rows() < 1 || directions_.cols() < 1)
    throw std::invalid_argument("poll set needs at least one direction");
  for (int c = 0; c < directions_.cols(); ++c) {
    double norm = directions_.col(c).norm();
    if (std::abs(norm - 1.0) > 1e-12)
      throw InvariantViolation(
          "unit-direction",
          "poll direction " + std::to_string(c) + " has norm " +
              std::to_string(norm));
  }
}

PollSet canonical_pss(int n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  Matrix d(n, 2 * n);
  d.leftCols(n) = Matrix::Identity(n, n);
  d.rightCols(n) = -Matrix::Identity(n, n);
  return PollSet(std::move(d), 1.0 / std::sqrt(static_cast<double>(n)));
}

double cosine_measure_estimate(const PollSet& d, int samples,
                               std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  Rng rng(substream(seed, stream_tag("cosine-measure")));
  Vector v(d.dim());
  double worst = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    rng.unit_vector(v);
    double best = (d.directions().transpose() * v).maxCoeff();
    worst = std::min(worst, best);
  }
  return worst;
}

double ForcingFunction::operator()(double alpha) const {
  if (!(c > 0.0)) throw std::invalid_argument("forcing constant must be > 0");
  if (!(tau > 0.0 && tau < 1.0))
    throw std::invalid_argument("forcing exponent offset must be in (0, 1)");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  return c * std::pow(alpha, 1.0 + tau);
}

double PowerBound::at(std::int64_t k) const {
  if (c == 0.0) return 0.0;
  if (std::isinf(c)) return c;
  return c / std::pow(1.0 + static_cast<double>(k), tau);
}

double update_stepsize(const StepsizeSchedule& s, double alpha0, double alpha,
                       bool success, std::int64_t k) {
  if (!(alpha0 > 0.0)) throw std::invalid_argument("alpha0 must be positive");
  if (const auto* v = std::get_if<VanishingSchedule>(&s)) {
    return alpha0 / std::pow(2.0 + static_cast<double>(k), v->tau);
  }
  const auto& a = std::get<AdaptiveSchedule>(s);
  if (!(a.theta > 0.0 && a.theta < 1.0))
    throw std::invalid_argument("theta must be in (0, 1)");
  if (success) return std::min(alpha / a.theta, a.upper.at(k));
  return std::max(a.theta * alpha, a.lower.at(k));
}

bool theory_compliant(const StepsizeSchedule& s, const ForcingFunction& rho) {
  if (!(rho.c > 0.0 && rho.tau > 0.0 && rho.tau < 1.0)) return false;
  if (const auto* v = std::get_if<VanishingSchedule>(&s)) {
    // Square summability needs tau > 1/2; the forcing sequence along the
    // schedule must not be summable, which needs tau_rho <= 1 with
    // tau < tau_rho.
    return v->tau > 0.5 && v->tau < rho.tau && rho.tau <= 1.0;
  }
  const auto& a = std::get<AdaptiveSchedule>(s);
  if (!(a.theta > 0.0 && a.theta < 1.0)) return false;
  // The clamp sequences must be positive, finite, and decay like the
  // vanishing rule.
  auto valid = [&rho](const PowerBound& b) {
    return b.c > 0.0 && std::isfinite(b.c) && b.tau > 0.5 &&
           b.tau < rho.tau && rho.tau <= 1.0;
  };
  return valid(a.lower) && valid(a.upper) && a.lower.tau == a.upper.tau &&
         a.lower.c <= a.upper.c;
}

PollOutcome poll(const std::function<double(const Vector&)>& f,
                 const Vector& x, double alpha, const PollSet& d,
                 const ForcingFunction& rho, std::optional<double> baseline) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (x.size() != d.dim())
    throw std::invalid_argument("point and poll set dimension mismatch");
  PollOutcome out;
  if (baseline) {
    out.baseline = *baseline;
  } else {
    out.baseline = f(x);
    ++out.evals;
  }
  const double threshold = out.baseline - rho(alpha);
  for (int idx = 0; idx < d.size(); ++idx) {
    Vector trial = x + alpha * d.directions().col(idx);
    double value;
    try {
      value = f(trial);
    } catch (const EvalFailure& e) {
      throw EvalFailure(e.agent, idx, e.what());
    }
    ++out.evals;
    if (value <= threshold) {
      out.accepted = PollResult{idx, d.direction(idx), std::move(trial), value};
      return out;
    }
  }
  return out;
}

}  // namespace dds
