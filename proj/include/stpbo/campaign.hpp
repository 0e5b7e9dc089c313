#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stpbo/likelihood.hpp"
#include "stpbo/nelder_mead.hpp"
#include "stpbo/normalization.hpp"
#include "stpbo/objectives.hpp"
#include "stpbo/processes.hpp"
#include "stpbo/random.hpp"

namespace stpbo {

/// Optional choice of nu by STP marginal likelihood; off by default so each
/// campaign runs with a fixed nu.
struct NuSelection {
  bool enabled = false;
  std::vector<double> candidates{2.5, 3.0, 4.0, 5.0, 7.0, 11.0, 20.0, 50.0, 100.0};
  double min_nu = 2.0;
};

struct CampaignConfig {
  Bounds bounds;  // empty means "use the objective's bounds"
  std::size_t n_initial = 20;
  /// Acquisition steps after the initial design.
  std::size_t max_acquisitions = 100;
  /// Optional cap on total evaluations, initial design included.
  std::optional<std::size_t> max_evaluations;
  std::size_t renormalize_every = 10;
  double stop_tolerance = 1e-4;
  std::optional<double> optimum_value;
  ProcessModel process;
  std::size_t grid_points_per_dim = 101;
  /// Dimensions up to this use the full EI grid; above it, an LHS candidate pool.
  std::size_t grid_max_dim = 2;
  std::size_t candidate_pool = 10000;
  BandwidthGrid bandwidth_grid;
  NelderMeadOptions refine;
  NuSelection nu_selection;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class TerminalStatus { BudgetExhausted, ToleranceReached };

std::string to_string(TerminalStatus status);

struct TraceRecord {
  /// 0 for the initial design, k for the k-th acquisition.
  std::size_t step = 0;
  InputPoint x;
  double y = 0.0;
  double y_best = 0.0;
  /// Surrogate state used to propose x; absent for initial-design rows.
  std::optional<double> bandwidth;
  std::optional<double> scale_factor;
  /// Set when the objective failed and a penalty value was recorded.
  std::optional<std::string> failure;
};

struct CampaignTrace {
  std::vector<TraceRecord> records;
  TerminalStatus status = TerminalStatus::BudgetExhausted;
};

struct Proposal {
  InputPoint x;         // raw coordinates
  double ei = 0.0;      // EI at x
  InputPoint candidate;  // best grid / pool point before refinement
  double candidate_ei = 0.0;
};

/// Maximizes EI of the surrogate (fit in normalized coordinates) over the raw
/// bounds: grid or LHS pool search, then Nelder-Mead refinement from the best
/// candidate. The refined point is kept only if its EI is at least the
/// candidate's.
Proposal propose_next(const ConditionedProcess& surrogate, const NormalizationTransform& transform,
                      const Bounds& bounds, const CampaignConfig& config, RandomStream& rng);

/// As above with a caller-supplied candidate set (raw coordinates).
Proposal propose_from_candidates(const ConditionedProcess& surrogate,
                                 const NormalizationTransform& transform, const Bounds& bounds,
                                 const std::vector<InputPoint>& candidates,
                                 const NelderMeadOptions& refine);

/// Runs one optimization campaign. Objective failures are recorded with the
/// objective's penalty value and never abort the run.
CampaignTrace run_campaign(const ObjectiveHandle& objective, const CampaignConfig& config);

}  // namespace stpbo
