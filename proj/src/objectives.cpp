#include "stpbo/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stpbo/errors.hpp"
#include "stpbo/external.hpp"

namespace stpbo {

void validate_bounds(const Bounds& bounds) {
  if (bounds.empty()) throw InvalidParameter("bounds must have at least one dimension");
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const auto& b = bounds[i];
    if (!std::isfinite(b.low) || !std::isfinite(b.high) || !(b.low < b.high)) {
      throw InvalidParameter("bounds dimension " + std::to_string(i) + " needs finite low < high");
    }
  }
}

bool within_bounds(const Bounds& bounds, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != bounds.size()) return false;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const double v = x(static_cast<Eigen::Index>(i));
    if (!(v >= bounds[i].low && v <= bounds[i].high)) return false;
  }
  return true;
}

Vector clamp_to_bounds(const Bounds& bounds, Vector x) {
  for (std::size_t i = 0; i < bounds.size() && i < static_cast<std::size_t>(x.size()); ++i) {
    auto& v = x(static_cast<Eigen::Index>(i));
    v = std::clamp(v, bounds[i].low, bounds[i].high);
  }
  return x;
}

void PenaltySpec::validate() const {
  if (!(crash_value > nonphysical_value && nonphysical_value > violation_base && violation_base > 0.0)) {
    throw InvalidParameter("penalties need crash_value > nonphysical_value > violation_base > 0");
  }
}

double penalty_wrap(const EvaluationOutcome& outcome, const PenaltySpec& spec) {
  struct Visitor {
    const PenaltySpec& spec;
    double operator()(const Value& v) const { return v.y; }
    double operator()(const Violation& v) const {
      if (!(v.xi >= 0.0)) throw InvalidParameter("constraint violation must be >= 0");
      return spec.violation_base * (1.0 + v.xi);
    }
    double operator()(const NonPhysical&) const { return spec.nonphysical_value; }
    double operator()(const Crash&) const { return spec.crash_value; }
  };
  return std::visit(Visitor{spec}, outcome);
}

namespace {

void require_in_bounds(const char* name, const Bounds& bounds, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != bounds.size()) {
    throw DimensionMismatch(std::string(name) + " takes a " + std::to_string(bounds.size()) +
                            "-vector");
  }
  if (!within_bounds(bounds, x)) throw OutOfBounds(std::string(name) + " evaluated outside its domain");
}

}  // namespace

Bounds rosenbrock_bounds() { return {{-3.0, 3.0}, {-3.0, 3.0}}; }

double rosenbrock(const Vector& x) {
  require_in_bounds("rosenbrock", rosenbrock_bounds(), x);
  const double a = 1.0 - x(0);
  const double b = x(1) - x(0) * x(0);
  return a * a + 100.0 * b * b;
}

Bounds six_hump_camel_bounds() { return {{-3.0, 3.0}, {-2.0, 2.0}}; }

double six_hump_camel(const Vector& x) {
  require_in_bounds("six_hump_camel", six_hump_camel_bounds(), x);
  const double x1 = x(0);
  const double x2 = x(1);
  const double x1sq = x1 * x1;
  const double x2sq = x2 * x2;
  return (4.0 - 2.1 * x1sq + x1sq * x1sq / 3.0) * x1sq + x1 * x2 + (-4.0 + 4.0 * x2sq) * x2sq;
}

ObjectiveHandle::ObjectiveHandle(ObjectiveKind kind, std::string name, Bounds bounds, Function fn,
                                 std::optional<double> known_optimum, PenaltySpec policy)
    : kind_(kind),
      name_(std::move(name)),
      bounds_(std::move(bounds)),
      fn_(std::move(fn)),
      known_optimum_(known_optimum),
      policy_(policy) {
  validate_bounds(bounds_);
  policy_.validate();
}

ObjectiveHandle ObjectiveHandle::rosenbrock(PenaltySpec policy) {
  return ObjectiveHandle(
      ObjectiveKind::Rosenbrock, "rosenbrock", rosenbrock_bounds(),
      [](const Vector& x) -> EvaluationOutcome { return Value{stpbo::rosenbrock(x)}; }, 0.0, policy);
}

ObjectiveHandle ObjectiveHandle::six_hump_camel(PenaltySpec policy) {
  return ObjectiveHandle(
      ObjectiveKind::SixHumpCamel, "six_hump_camel", six_hump_camel_bounds(),
      [](const Vector& x) -> EvaluationOutcome { return Value{stpbo::six_hump_camel(x)}; },
      kSixHumpCamelMinimum, policy);
}

ObjectiveHandle ObjectiveHandle::external(std::shared_ptr<ExternalAdapter> adapter, Bounds bounds,
                                          std::optional<double> known_optimum, PenaltySpec policy) {
  if (!adapter) throw InvalidParameter("external objective needs an adapter");
  return ObjectiveHandle(
      ObjectiveKind::External, "external", std::move(bounds),
      [adapter](const Vector& x) { return external_evaluate(*adapter, x); }, known_optimum, policy);
}

ObjectiveHandle ObjectiveHandle::custom(std::string name, Bounds bounds, Function fn,
                                        std::optional<double> known_optimum, PenaltySpec policy) {
  return ObjectiveHandle(ObjectiveKind::Custom, std::move(name), std::move(bounds), std::move(fn),
                         known_optimum, policy);
}

ObjectiveHandle ObjectiveHandle::restricted_to(Bounds bounds) const {
  validate_bounds(bounds);
  if (bounds.size() != bounds_.size()) throw DimensionMismatch("restricted bounds change the dimension");
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (bounds[i].low < bounds_[i].low || bounds[i].high > bounds_[i].high) {
      throw OutOfBounds("restricted bounds must lie within the objective's domain");
    }
  }
  ObjectiveHandle copy = *this;
  copy.bounds_ = std::move(bounds);
  return copy;
}

ObjectiveHandle ObjectiveHandle::with_known_optimum(std::optional<double> known_optimum) const {
  ObjectiveHandle copy = *this;
  copy.known_optimum_ = known_optimum;
  return copy;
}

EvaluationOutcome ObjectiveHandle::evaluate_outcome(const Vector& x) const {
  try {
    EvaluationOutcome out = fn_(x);
    if (const auto* v = std::get_if<Value>(&out); v && !std::isfinite(v->y)) {
      return Crash{"objective returned a non-finite value"};
    }
    if (const auto* v = std::get_if<Violation>(&out); v && !(v->xi >= 0.0)) {
      return Crash{"objective reported a negative constraint violation"};
    }
    return out;
  } catch (const std::exception& e) {
    return Crash{e.what()};
  }
}

double ObjectiveHandle::evaluate(const Vector& x) const {
  return penalty_wrap(evaluate_outcome(x), policy_);
}

}  // namespace stpbo
