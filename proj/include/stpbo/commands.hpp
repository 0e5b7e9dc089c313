#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "stpbo/experiment_config.hpp"
#include "stpbo/summary.hpp"

namespace stpbo {

struct RunOptions {
  std::size_t jobs = 1;
};

struct RunResult {
  std::vector<std::filesystem::path> trace_files;
  std::filesystem::path summary_file;
  bool interrupted = false;
};

/// Runs every (variant, repeat) campaign with a pool of `jobs` workers.
/// Writes <out>/traces/<variant>/run_<NNN>.csv and <out>/summary.csv. After
/// request_interrupt() no new runs start; finished traces and a summary of
/// them are still written.
RunResult cmd_run(const ExperimentConfig& config, const RunOptions& options = {});

/// Safe to call from a signal handler.
void request_interrupt();
void clear_interrupt();

struct SampleRequest {
  ProcessModel model;
  /// Per-dimension [low, high] and point count of the evaluation grid.
  Bounds grid_bounds;
  std::size_t grid_points = 200;
  std::size_t n_draws = 300;
  std::uint64_t seed = 0;
  /// When present, draws come from the posterior given this data.
  std::optional<Dataset> data;
};

/// CSV with one row per series and one column per grid point: a coordinate
/// row per dimension (x_1..x_d), then mean, mean_plus_2sd, mean_minus_2sd,
/// then one draw_<k> row per path.
void cmd_sample(const SampleRequest& request, std::ostream& out);

/// Reads observations from a CSV whose columns are x_1..x_d,y.
Dataset read_dataset_csv(const std::filesystem::path& path);

SummaryTable cmd_summarize(const std::filesystem::path& trace_dir, const SummaryOptions& options,
                           std::ostream& out);

}  // namespace stpbo
