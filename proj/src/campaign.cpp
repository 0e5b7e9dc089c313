#include "stpbo/campaign.hpp"

#include <cmath>
#include <limits>
#include <variant>

#include <spdlog/spdlog.h>

#include "stpbo/acquisition.hpp"
#include "stpbo/design.hpp"
#include "stpbo/errors.hpp"

namespace stpbo {

void CampaignConfig::validate() const {
  if (!bounds.empty()) validate_bounds(bounds);
  if (n_initial < 2) throw InvalidParameter("n_initial must be at least 2");
  if (max_evaluations && *max_evaluations < n_initial) {
    throw InvalidParameter("max_evaluations must cover the initial design");
  }
  if (renormalize_every == 0) throw InvalidParameter("renormalize_every must be positive");
  if (!(stop_tolerance >= 0.0)) throw InvalidParameter("stop_tolerance must be >= 0");
  if (grid_points_per_dim < 2) throw InvalidParameter("grid_points_per_dim must be at least 2");
  if (candidate_pool == 0) throw InvalidParameter("candidate_pool must be positive");
  process.validate();
  bandwidth_grid.validate();
}

std::string to_string(TerminalStatus status) {
  return status == TerminalStatus::ToleranceReached ? "ToleranceReached" : "BudgetExhausted";
}

Proposal propose_from_candidates(const ConditionedProcess& surrogate,
                                 const NormalizationTransform& transform, const Bounds& bounds,
                                 const std::vector<InputPoint>& candidates,
                                 const NelderMeadOptions& refine) {
  if (candidates.empty()) throw InvalidParameter("EI maximization needs at least one candidate");
  const double y_best = surrogate.data().outputs.minCoeff();

  std::vector<InputPoint> normalized;
  normalized.reserve(candidates.size());
  for (const auto& x : candidates) normalized.push_back(transform.apply_input(x));
  const auto marginals = surrogate.marginals(normalized);

  std::size_t best = 0;
  double best_ei = -1.0;
  for (std::size_t i = 0; i < marginals.size(); ++i) {
    const double ei = expected_improvement(marginals[i], y_best);
    if (ei > best_ei) {  // strict: lowest index wins ties
      best_ei = ei;
      best = i;
    }
  }

  Proposal out{candidates[best], best_ei, candidates[best], best_ei};
  if (refine.max_iterations == 0) return out;

  auto negated_ei = [&](const Vector& x) {
    return -expected_improvement(surrogate.marginal(transform.apply_input(x)), y_best);
  };
  try {
    const auto result = nelder_mead_minimize(negated_ei, out.candidate, bounds, refine);
    if (-result.value >= best_ei) {
      out.x = result.x;
      out.ei = -result.value;
    }
  } catch (const Error& e) {
    spdlog::warn("EI refinement failed, keeping best candidate: {}", e.what());
  }
  return out;
}

namespace {

std::vector<InputPoint> acquisition_candidates(const Bounds& bounds, const CampaignConfig& config,
                                               RandomStream& rng) {
  if (bounds.size() <= config.grid_max_dim) return tensor_grid(bounds, config.grid_points_per_dim);
  return latin_hypercube(config.candidate_pool, bounds, rng);
}

}  // namespace

Proposal propose_next(const ConditionedProcess& surrogate, const NormalizationTransform& transform,
                      const Bounds& bounds, const CampaignConfig& config, RandomStream& rng) {
  return propose_from_candidates(surrogate, transform, bounds,
                                 acquisition_candidates(bounds, config, rng), config.refine);
}

namespace {

// Surrogate hyperparameters in normalized space; refreshed on renormalization.
struct SurrogateState {
  NormalizationTransform transform;
  ProcessModel model;
};

SurrogateState fit_surrogate(const Dataset& raw, const CampaignConfig& config) {
  SurrogateState state{fit_normalization(raw), config.process};
  const Dataset normalized = state.transform.apply(raw);
  state.model.kernel.bandwidth = select_bandwidth(normalized, state.model, config.bandwidth_grid);
  if (config.nu_selection.enabled && state.model.family == Family::StudentT) {
    state.model.nu = select_nu(normalized, state.model, config.nu_selection.candidates,
                               config.nu_selection.min_nu);
  }
  return state;
}

std::optional<std::string> failure_reason(const EvaluationOutcome& outcome) {
  if (const auto* crash = std::get_if<Crash>(&outcome)) return "crash: " + crash->reason;
  if (std::holds_alternative<NonPhysical>(outcome)) return std::string("nonphysical");
  if (std::holds_alternative<Violation>(outcome)) return std::string("constraint violation");
  return std::nullopt;
}

}  // namespace

CampaignTrace run_campaign(const ObjectiveHandle& objective, const CampaignConfig& config) {
  config.validate();
  const Bounds bounds = config.bounds.empty() ? objective.bounds() : config.bounds;
  if (bounds.size() != objective.dimension()) {
    throw DimensionMismatch("campaign bounds do not match the objective's dimension");
  }
  RandomStream rng(config.seed);
  CampaignTrace trace;
  Dataset raw;
  raw.outputs = Vector(0);
  double y_best = std::numeric_limits<double>::infinity();

  auto record = [&](std::size_t step, const InputPoint& x, std::optional<double> bandwidth,
                    std::optional<double> scale_factor) {
    const InputPoint clamped = clamp_to_bounds(bounds, x);
    const EvaluationOutcome outcome = objective.evaluate_outcome(clamped);
    const double y = penalty_wrap(outcome, objective.failure_policy());
    auto failure = failure_reason(outcome);
    if (failure) spdlog::debug("step {}: objective failure ({}), recorded {}", step, *failure, y);
    y_best = std::min(y_best, y);
    raw.inputs.push_back(clamped);
    raw.outputs.conservativeResize(raw.outputs.size() + 1);
    raw.outputs(raw.outputs.size() - 1) = y;
    trace.records.push_back({step, clamped, y, y_best, bandwidth, scale_factor, std::move(failure)});
  };
  auto reached_tolerance = [&] {
    return config.optimum_value && y_best - *config.optimum_value <= config.stop_tolerance;
  };
  auto budget_left = [&] {
    return !config.max_evaluations || trace.records.size() < *config.max_evaluations;
  };

  for (const auto& x : latin_hypercube(config.n_initial, bounds, rng)) {
    record(0, x, std::nullopt, std::nullopt);
  }

  const std::vector<InputPoint> grid = bounds.size() <= config.grid_max_dim
                                           ? tensor_grid(bounds, config.grid_points_per_dim)
                                           : std::vector<InputPoint>{};
  std::optional<SurrogateState> state;
  for (std::size_t step = 1;; ++step) {
    if (reached_tolerance()) {
      trace.status = TerminalStatus::ToleranceReached;
      return trace;
    }
    if (step > config.max_acquisitions || !budget_left()) break;

    if (!state || (step - 1) % config.renormalize_every == 0) state = fit_surrogate(raw, config);
    const ConditionedProcess surrogate(state->model, state->transform.apply(raw));
    const Proposal proposal =
        grid.empty() ? propose_next(surrogate, state->transform, bounds, config, rng)
                     : propose_from_candidates(surrogate, state->transform, bounds, grid, config.refine);
    record(step, proposal.x, state->model.kernel.bandwidth, surrogate.scale_factor());
  }
  trace.status = TerminalStatus::BudgetExhausted;
  return trace;
}

}  // namespace stpbo
