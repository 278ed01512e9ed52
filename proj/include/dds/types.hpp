#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace dds {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Which accounting channel an objective evaluation is charged to.  Solver
// evaluations consume the run budget; monitoring evaluations (metrics and
// diagnostics) are tracked separately and never count against it.
enum class EvalChannel { Solver, Monitor };

// A structural check on constructed data failed (mixing matrix validation,
// malformed poll sets, ...).  `check` names the violated condition.
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(std::string check, const std::string& detail)
      : std::runtime_error(check + ": " + detail), check_(std::move(check)) {}
  const std::string& check() const { return check_; }

 private:
  std::string check_;
};

// An objective evaluation produced a non-finite value.  Carries the agent
// and, when raised inside a poll loop, the offending direction index.
class EvalFailure : public std::runtime_error {
 public:
  EvalFailure(int agent, int direction, const std::string& what)
      : std::runtime_error(what), agent(agent), direction(direction) {}

  int agent;
  int direction;  // -1 when not attributable to a poll direction
};

}  // namespace dds
