#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stpbo/campaign.hpp"
#include "stpbo/external.hpp"
#include "stpbo/objectives.hpp"

namespace stpbo {

struct ObjectiveConfig {
  ObjectiveKind kind = ObjectiveKind::SixHumpCamel;
  Bounds bounds;  // required for external objectives
  std::optional<double> known_optimum;
  ExternalConfig external;
  PenaltySpec penalty;
};

struct ProcessVariant {
  std::string name;
  ProcessModel model;
};

/// One experiment: every process variant is run `repeats` times on the same
/// objective. Repeat r of every variant shares the seed derived from
/// (seed, r), hence the same initial design.
struct ExperimentConfig {
  ObjectiveConfig objective;
  std::vector<ProcessVariant> processes;
  std::size_t repeats = 20;
  CampaignConfig campaign;
  std::filesystem::path output_dir = "results";
  std::uint64_t seed = 0;

  std::uint64_t repeat_seed(std::size_t repeat) const;
  /// Campaign settings for one (variant, repeat) pair.
  CampaignConfig campaign_for(const ProcessVariant& variant, std::size_t repeat,
                              const ObjectiveHandle& objective) const;
};

/// Parses the JSON experiment schema documented in the README. Errors are
/// ConfigError naming the offending field, or the line and column of a
/// syntax error.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// A fresh handle; external objectives get their own child process.
ObjectiveHandle make_objective(const ObjectiveConfig& config);

}  // namespace stpbo
