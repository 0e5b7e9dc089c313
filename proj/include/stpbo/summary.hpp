#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stpbo/trace_io.hpp"

namespace stpbo {

struct SummaryRow {
  std::string process;
  std::size_t step;
  double q25;
  double q50;
  double q75;
};

using SummaryTable = std::vector<SummaryRow>;

struct SummaryOptions {
  /// With an optimum the statistic is log10(y_best - optimum), otherwise log10(y_best).
  std::optional<double> optimum;
  /// Lower cap applied before the logarithm.
  double floor = 1e-4;
};

/// Linear-interpolation quantile (numpy's default) of unsorted values.
double quantile(std::vector<double> values, double q);

struct ProcessRuns {
  std::string process;
  std::vector<TraceSeries> runs;
};

/// Quartiles per (process, step) for steps 0..max step over all runs. A run
/// that stopped early carries its final best-so-far forward.
SummaryTable summarize(const std::vector<ProcessRuns>& processes, const SummaryOptions& options);

/// Traces directly inside `dir` form one process named after the directory;
/// each subdirectory holding traces forms a process named after it.
/// Throws EmptyInput when no trace file is found.
std::vector<ProcessRuns> load_trace_directory(const std::filesystem::path& dir);

void write_summary_csv(std::ostream& out, const SummaryTable& table);

}  // namespace stpbo
