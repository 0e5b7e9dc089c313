#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stpbo/linalg.hpp"

namespace stpbo {

struct Interval {
  double low;
  double high;
};

using Bounds = std::vector<Interval>;

/// Throws InvalidParameter unless bounds are nonempty with low < high.
void validate_bounds(const Bounds& bounds);
bool within_bounds(const Bounds& bounds, const Vector& x);
Vector clamp_to_bounds(const Bounds& bounds, Vector x);

// Evaluation outcomes reported by an objective.
struct Value {
  double y;
};
struct Violation {
  double xi;  // constraint violation, >= 0
};
struct NonPhysical {};
struct Crash {
  std::string reason;
};

using EvaluationOutcome = std::variant<Value, Violation, NonPhysical, Crash>;

struct PenaltySpec {
  double violation_base = 180000.0;
  double nonphysical_value = 300000.0;
  double crash_value = 400000.0;

  void validate() const;
};

/// Maps an outcome to a scalar objective: values pass through, a violation xi
/// becomes violation_base * (1 + xi), the rest map to their fixed values.
double penalty_wrap(const EvaluationOutcome& outcome, const PenaltySpec& spec);

/// (1 - x1)^2 + 100 (x2 - x1^2)^2 on [-3, 3]^2; minimum 0 at (1, 1).
double rosenbrock(const Vector& x);
Bounds rosenbrock_bounds();

/// Six-hump camel on [-3, 3] x [-2, 2].
double six_hump_camel(const Vector& x);
Bounds six_hump_camel_bounds();
/// Global minimum, attained at +-(0.08984, -0.71266).
inline constexpr double kSixHumpCamelMinimum = -1.0316284534898774;

class ExternalAdapter;

enum class ObjectiveKind { Rosenbrock, SixHumpCamel, External, Custom };

/// Evaluation interface seen by the optimization driver. Copies share any
/// underlying external process.
class ObjectiveHandle {
 public:
  using Function = std::function<EvaluationOutcome(const Vector&)>;

  static ObjectiveHandle rosenbrock(PenaltySpec policy = {});
  static ObjectiveHandle six_hump_camel(PenaltySpec policy = {});
  static ObjectiveHandle external(std::shared_ptr<ExternalAdapter> adapter, Bounds bounds,
                                  std::optional<double> known_optimum, PenaltySpec policy = {});
  static ObjectiveHandle custom(std::string name, Bounds bounds, Function fn,
                                std::optional<double> known_optimum = std::nullopt,
                                PenaltySpec policy = {});

  ObjectiveKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Bounds& bounds() const { return bounds_; }
  std::size_t dimension() const { return bounds_.size(); }
  std::optional<double> known_optimum() const { return known_optimum_; }
  const PenaltySpec& failure_policy() const { return policy_; }

  /// Copy evaluated over a sub-box of the current bounds.
  ObjectiveHandle restricted_to(Bounds bounds) const;
  ObjectiveHandle with_known_optimum(std::optional<double> known_optimum) const;

  /// Never throws on objective failure: errors become Crash outcomes.
  EvaluationOutcome evaluate_outcome(const Vector& x) const;
  /// evaluate_outcome followed by penalty_wrap.
  double evaluate(const Vector& x) const;

 private:
  ObjectiveHandle(ObjectiveKind kind, std::string name, Bounds bounds, Function fn,
                  std::optional<double> known_optimum, PenaltySpec policy);

  ObjectiveKind kind_;
  std::string name_;
  Bounds bounds_;
  Function fn_;
  std::optional<double> known_optimum_;
  PenaltySpec policy_;
};

}  // namespace stpbo
